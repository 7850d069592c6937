#include "autg/wordproblem.hpp"

#include <algorithm>
#include <set>

namespace autg {

namespace {

// Action fingerprint: images of all vertices of the first `depth` levels,
// hashed. Distinguishes nucleus candidates as group elements.
uint64_t action_fingerprint(const Transducer& t, const GroupWord& w, int depth) {
  uint64_t h = 1469598103934665603ull;
  int d = t.alphabet();
  Vertex v;
  for (int lev = 1; lev <= depth; ++lev) {
    v.assign(lev, 0);
    while (true) {
      Vertex img = apply_word(t, w, v);
      for (uint8_t c : img) {
        h ^= c + 1;
        h *= 1099511628211ull;
      }
      int i = lev - 1;
      while (i >= 0 && v[i] == d - 1) v[i--] = 0;
      if (i < 0) break;
      ++v[i];
    }
  }
  return h;
}

}  // namespace

Nucleus compute_nucleus(const Transducer& t, int budget) {
  Nucleus nuc;
  // Deep enough to separate short words in practice; the closure-round
  // bound below re-checks that this margin was sufficient.
  nuc.dedup_depth = t.alphabet() == 2 ? 11 : 7;

  std::unordered_map<uint64_t, int> index;  // fingerprint -> member id
  auto intern = [&](const GroupWord& w) -> std::pair<int, bool> {
    uint64_t fp = action_fingerprint(t, w, nuc.dedup_depth);
    auto it = index.find(fp);
    if (it != index.end()) return {it->second, false};
    if (nuc.size() >= budget)
      throw NucleusError("nucleus budget exhausted; contraction not verified");
    int id = nuc.size();
    nuc.members.push_back(w);
    index.emplace(fp, id);
    return {id, true};
  };

  intern(GroupWord{});
  for (int g : t.generators()) {
    intern(GroupWord::generator(g, 1));
    intern(GroupWord::generator(g, -1));
  }

  // Limit set of one word: iterate level-section sets until the set
  // sequence repeats, return the union of the cycle.
  auto limit_sections = [&](const GroupWord& w) {
    std::vector<std::vector<GroupWord>> history;
    std::vector<GroupWord> cur{w};
    while (true) {
      std::vector<GroupWord> next;
      std::set<std::vector<StateCode>> seen;
      for (const GroupWord& u : cur) {
        WreathDecomposition dec = decompose(t, u);
        for (auto& c : dec.children)
          if (seen.insert(c.codes()).second) next.push_back(std::move(c));
      }
      std::sort(next.begin(), next.end());
      for (size_t j = 0; j < history.size(); ++j) {
        if (history[j] == next) {
          std::vector<GroupWord> cycle;
          for (size_t k = j; k < history.size(); ++k)
            for (const auto& u : history[k]) cycle.push_back(u);
          return cycle;
        }
      }
      history.push_back(next);
      cur = std::move(next);
      if (history.size() > 4096)
        throw NucleusError("section iteration did not stabilize");
    }
  };

  bool grew = true;
  while (grew) {
    grew = false;
    ++nuc.closure_rounds;
    int n = nuc.size();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        GroupWord prod = nuc.members[i] * nuc.members[j];
        for (const GroupWord& u : limit_sections(prod)) {
          auto [id, fresh] = intern(u);
          (void)id;
          if (fresh) grew = true;
        }
      }
    }
    if (nuc.closure_rounds > 64)
      throw NucleusError("nucleus closure did not stabilize");
  }
  if (nuc.closure_rounds + 2 > nuc.dedup_depth)
    throw NucleusError("dedup depth too shallow for this machine");

  // Child table over member ids; every member's sections must be members.
  nuc.child.assign(nuc.size(), {});
  std::vector<bool> root_trivial(nuc.size());
  for (int i = 0; i < nuc.size(); ++i) {
    WreathDecomposition dec = decompose(t, nuc.members[i]);
    root_trivial[i] = dec.root_trivial();
    for (const auto& c : dec.children) {
      uint64_t fp = action_fingerprint(t, c, nuc.dedup_depth);
      auto it = index.find(fp);
      if (it == index.end())
        throw NucleusError("nucleus not section-closed (internal error)");
      nuc.child[i].push_back(it->second);
    }
  }

  // Exact triviality on the closed table: non-trivial iff some reachable
  // member has a non-trivial root.
  nuc.trivial.assign(nuc.size(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < nuc.size(); ++i) {
      if (!nuc.trivial[i]) continue;
      bool bad = !root_trivial[i];
      for (int c : nuc.child[i])
        if (!nuc.trivial[c]) bad = true;
      if (bad) {
        nuc.trivial[i] = false;
        changed = true;
      }
    }
  }
  return nuc;
}

WordProblem::WordProblem(const Transducer& t, int nucleus_budget) : t_(&t) {
  nucleus_ = compute_nucleus(t, nucleus_budget);
  for (int i = 0; i < nucleus_->size(); ++i)
    store(nucleus_->members[i], nucleus_->trivial[i]);
}

WordProblem::WordProblem(const Transducer& t, std::nullptr_t) : t_(&t) {}

std::optional<bool> WordProblem::lookup(const GroupWord& w) const {
  const Shard& s = shards_[GroupWordHash{}(w) % kShards];
  std::lock_guard<std::mutex> lock(s.mu);
  auto it = s.map.find(w);
  if (it == s.map.end()) return std::nullopt;
  return it->second;
}

void WordProblem::store(const GroupWord& w, bool value) const {
  Shard& s = shards_[GroupWordHash{}(w) % kShards];
  std::lock_guard<std::mutex> lock(s.mu);
  s.map.emplace(w, value);
}

size_t WordProblem::memo_size() const {
  size_t n = 0;
  for (const auto& s : shards_) {
    std::lock_guard<std::mutex> lock(s.mu);
    n += s.map.size();
  }
  return n;
}

bool WordProblem::is_identity(const GroupWord& w) const {
  if (w.empty()) return true;
  if (auto hit = lookup(w)) return *hit;

  // Words with a non-trivial root permutation fail after one decomposition;
  // not worth a memo entry (bulk enumerations would flood the table).
  WreathDecomposition dec0 = decompose(*t_, w);
  if (!dec0.root_trivial()) return false;

  // DFS over iterated sections. All sections of a word have length at most
  // the word's, so the reachable set is finite.
  std::vector<GroupWord> stack;
  std::unordered_map<GroupWord, bool, GroupWordHash> visited;
  visited.emplace(w, true);
  bool good = true;
  for (auto& c : dec0.children) {
    if (c.empty() || c == w) continue;
    if (auto hit = lookup(c)) {
      if (!*hit) good = false;
      continue;
    }
    if (visited.emplace(c, true).second) stack.push_back(std::move(c));
  }
  while (!stack.empty() && good) {
    GroupWord u = std::move(stack.back());
    stack.pop_back();
    WreathDecomposition dec = decompose(*t_, u);
    if (!dec.root_trivial()) {
      good = false;
      break;
    }
    for (auto& c : dec.children) {
      if (c.empty() || visited.count(c)) continue;
      if (auto hit = lookup(c)) {
        if (!*hit) {
          good = false;
          break;
        }
        continue;  // known trivial, no need to expand
      }
      visited.emplace(c, true);
      stack.push_back(std::move(c));
    }
  }
  if (good) {
    for (const auto& [u, _] : visited) store(u, true);
    return true;
  }
  store(w, false);
  return false;
}

bool WordProblem::equal(const GroupWord& u, const GroupWord& v) const {
  return is_identity(u * v.inverse());
}

}  // namespace autg
