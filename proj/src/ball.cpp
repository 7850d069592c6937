#include "autg/ball.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace autg {

namespace {

// Fingerprint level: deep enough that distinct short elements collide only
// through the exact equal() confirmation, small enough to stay cheap.
int fingerprint_level(const Transducer& t) {
  int d = t.alphabet();
  int level = 0;
  long long size = 1;
  while (size * d <= 4096) {
    size *= d;
    ++level;
  }
  return level;
}

uint64_t perm_hash(const std::vector<uint16_t>& p) {
  uint64_t h = 1469598103934665603ull;
  for (uint16_t v : p) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<uint16_t> state_level_perm(const Transducer& t, SignedState s, int level) {
  int d = t.alphabet();
  size_t m = 1;
  for (int i = 0; i < level; ++i) m *= d;
  std::vector<uint16_t> perm(m);
  Vertex v(level);
  for (size_t idx = 0; idx < m; ++idx) {
    size_t rest = idx;
    for (int i = level - 1; i >= 0; --i) {
      v[i] = static_cast<uint8_t>(rest % d);
      rest /= d;
    }
    Vertex img = apply_state(t, s, v);
    size_t out = 0;
    for (int i = 0; i < level; ++i) out = out * d + img[i];
    perm[idx] = static_cast<uint16_t>(out);
  }
  return perm;
}

}  // namespace

std::vector<uint16_t> Ball::action_of(const GroupWord& w) const {
  const Transducer& t = wp_->machine();
  int d = t.alphabet();
  size_t m = 1;
  for (int i = 0; i < fp_level_; ++i) m *= d;
  std::vector<uint16_t> perm(m);
  Vertex v(fp_level_);
  for (size_t idx = 0; idx < m; ++idx) {
    size_t rest = idx;
    for (int i = fp_level_ - 1; i >= 0; --i) {
      v[i] = static_cast<uint8_t>(rest % d);
      rest /= d;
    }
    Vertex img = apply_word(t, w, v);
    size_t out = 0;
    for (int i = 0; i < fp_level_; ++i) out = out * d + img[i];
    perm[idx] = static_cast<uint16_t>(out);
  }
  return perm;
}

int Ball::find_by_action(const GroupWord& w, const std::vector<uint16_t>& act) const {
  auto it = buckets_.find(perm_hash(act));
  if (it == buckets_.end()) return -1;
  for (int idx : it->second) {
    if (elems_[idx].action == act && wp_->equal(elems_[idx].rep, w)) return idx;
  }
  return -1;
}

int Ball::find(const GroupWord& w) const { return find_by_action(w, action_of(w)); }

std::optional<double> Ball::minimal_length(const GroupWord& w) const {
  int idx = find(w);
  if (idx < 0) return std::nullopt;
  return elems_[idx].length;
}

Ball::Ball(const WordProblem& wp, double radius, const WeightVector& weights,
           size_t element_budget)
    : wp_(&wp), radius_(radius), weights_(weights) {
  const Transducer& t = wp.machine();
  fp_level_ = fingerprint_level(t);

  std::vector<SignedState> sg;
  std::vector<std::vector<uint16_t>> sg_perm;
  for (int g : t.generators())
    for (int sign : {1, -1}) {
      sg.push_back(SignedState{g, sign});
      sg_perm.push_back(state_level_perm(t, SignedState{g, sign}, fp_level_));
    }

  struct Entry {
    double length;
    GroupWord word;
    int parent;  // element index, -1 for the root
    int gen;     // index into sg
  };
  struct Cmp {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.length != b.length) return a.length > b.length;
      return b.word < a.word;  // lex-least first among ties
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, Cmp> queue;
  queue.push(Entry{0.0, GroupWord{}, -1, -1});

  while (!queue.empty()) {
    Entry e = queue.top();
    queue.pop();
    if (e.length > radius_ + 1e-12) break;

    std::vector<uint16_t> act;
    if (e.parent < 0) {
      act = action_of(e.word);
    } else {
      const auto& pact = elems_[e.parent].action;
      const auto& gact = sg_perm[e.gen];
      act.resize(pact.size());
      for (size_t i = 0; i < pact.size(); ++i) act[i] = gact[pact[i]];
    }
    if (find_by_action(e.word, act) >= 0) continue;  // already finalized

    int id = static_cast<int>(elems_.size());
    buckets_[perm_hash(act)].push_back(id);
    elems_.push_back(BallElement{e.word, e.length, std::move(act)});
    if (elems_.size() > element_budget)
      throw std::runtime_error("ball element budget exceeded");

    // Non-cancelling extensions keep the words reduced.
    const GroupWord& rep = elems_[id].rep;
    for (size_t g = 0; g < sg.size(); ++g) {
      if (!rep.empty()) {
        StateCode last = rep.code(rep.size() - 1);
        if (last == -sg[g].code()) continue;
      }
      double len = e.length + weights_.of(sg[g]);
      if (len > radius_ + 1e-12) continue;
      GroupWord w = rep;
      w.push(sg[g]);
      queue.push(Entry{len, std::move(w), id, static_cast<int>(g)});
    }
  }
}

ContractionReport verify_contraction(const WordProblem& wp, const Ball& ball,
                                     double eta, double C,
                                     ContractionMode mode, double tol) {
  ContractionReport rep;
  const Transducer& t = wp.machine();
  for (const BallElement& el : ball.elements()) {
    WreathDecomposition dec = decompose(t, el.rep);
    std::vector<double> child_len;
    bool certified = true;
    for (const auto& c : dec.children) {
      auto len = ball.minimal_length(c);
      if (!len) {
        certified = false;
        break;
      }
      child_len.push_back(*len);
    }
    if (!certified) {
      ++rep.skipped;
      continue;
    }
    ++rep.checked;
    double bound = eta * el.length + C;
    auto record = [&](double value) {
      double slack = value - bound;
      if (slack > rep.max_slack) {
        rep.max_slack = slack;
        rep.worst = el.rep;
      }
      if (slack > tol) ++rep.violations;
    };
    if (mode == ContractionMode::summed) {
      double sum = 0;
      for (double l : child_len) sum += l;
      record(sum);
    } else {
      for (double l : child_len) record(l);
    }
  }
  return rep;
}

double growth_exponent(int d, double eta) {
  if (d < 2 || !(eta > 0) || !(eta < 1))
    throw std::domain_error("growth_exponent: need d >= 2 and 0 < eta < 1");
  return std::log(static_cast<double>(d)) / std::log(d / eta);
}

double grigorchuk_eta() {
  // real root of X^3 + X^2 + X - 2, Newton from 0.8
  double x = 0.8;
  for (int i = 0; i < 60; ++i) {
    double f = ((x + 1) * x + 1) * x - 2;
    double df = (3 * x + 2) * x + 1;
    x -= f / df;
  }
  return x;
}

WeightVector grigorchuk_weights(const Transducer& t) {
  if (t.state_index("a") != 1 || t.state_index("d") != 4)
    throw std::invalid_argument("grigorchuk_weights: not the grigorchuk machine");
  double eta = grigorchuk_eta();
  // Linear system for (w_b, w_c, w_d) with w_a = 1:
  //   eta w_b - w_c = 1 - eta
  //   eta w_c - w_d = 1 - eta
  //   -w_b + eta w_d = -eta
  double e3 = eta * eta * eta;
  double wb = e3 / (1 - e3);
  double wc = eta * wb - (1 - eta);
  double wd = eta * wc - (1 - eta);
  WeightVector w;
  w.weight = {0.0, 1.0, wb, wc, wd};
  return w;
}

WeightVector basilica_weights(const Transducer& t) {
  if (t.state_index("a") != 1 || t.state_index("b") != 2)
    throw std::invalid_argument("basilica_weights: not the basilica machine");
  WeightVector w;
  w.weight = {0.0, 1.0, std::sqrt(2.0)};
  return w;
}

bool free_monoid_check(const WordProblem& wp, int L) {
  const Transducer& t = wp.machine();
  const auto& gens = t.generators();
  if (gens.size() < 2) throw std::invalid_argument("free_monoid_check: need 2 generators");
  SignedState g0{gens[0], 1}, g1{gens[1], 1};

  std::vector<GroupWord> words;
  words.push_back(GroupWord{});
  size_t start = 0;
  for (int len = 1; len <= L; ++len) {
    size_t end = words.size();
    for (size_t i = start; i < end; ++i)
      for (SignedState g : {g0, g1}) {
        GroupWord w = words[i];
        w.push(g);
        words.push_back(std::move(w));
      }
    start = end;
  }
  for (size_t i = 1; i < words.size(); ++i)
    for (size_t j = i + 1; j < words.size(); ++j)
      if (wp.equal(words[i], words[j])) return false;
  return true;
}

std::vector<GroupWord> torsion_check(const WordProblem& wp, const Ball& ball) {
  std::vector<GroupWord> violations;
  for (const BallElement& el : ball.elements()) {
    if (el.rep.empty()) continue;
    if (wp.is_identity(el.rep * el.rep)) violations.push_back(el.rep);
  }
  return violations;
}

bool verify_relators(const WordProblem& wp, const std::vector<std::string>& relators,
                     int pmax) {
  const Transducer& t = wp.machine();
  auto resolve = [&t](const std::string& n) {
    int q = t.state_index(n);
    return q > 0 ? q : -1;
  };
  for (const std::string& text : relators) {
    WordExpression expr = WordExpression::parse(text);
    for (long long p = 1; p <= pmax; p *= 2) {
      SymWord sw = expr.evaluate(resolve, {{"p", p}});
      GroupWord w;
      for (auto [sym, sign] : sw.letters) w.push(SignedState{sym, sign});
      if (!wp.is_identity(w)) return false;
    }
  }
  return true;
}

BranchingWitness branching_witness(const WordProblem& wp, int s, int t_state) {
  const Transducer& t = wp.machine();
  ValidationReport val = validate(t);
  if (!val.monomial)
    throw std::invalid_argument("branching_witness: machine is not monomial");
  BranchingWitness bw;
  if (s == 0 || t_state == 0) {
    bw.degenerate = true;
    bw.ok = true;
    return bw;
  }

  auto parent_of = [&](int state) {
    for (int q = 1; q < t.num_states(); ++q)
      for (int x = 0; x < t.alphabet(); ++x)
        if (t.next(q, x) == state) return q;
    throw std::invalid_argument("branching_witness: state has no parent");
  };
  auto root_order = [&](int q) {
    int n = 1;
    std::vector<int> cur(t.alphabet());
    for (int x = 0; x < t.alphabet(); ++x) cur[x] = t.output(q, x);
    auto is_id = [&] {
      for (int x = 0; x < t.alphabet(); ++x)
        if (cur[x] != x) return false;
      return true;
    };
    while (!is_id()) {
      for (int x = 0; x < t.alphabet(); ++x) cur[x] = t.output(q, cur[x]);
      ++n;
    }
    return n;
  };

  int sp = parent_of(s), tp = parent_of(t_state);
  int ns = root_order(sp), nt = root_order(tp);
  // Power the active side so its sections become constant; an inactive side
  // keeps its single non-trivial section.
  GroupWord left = GroupWord::generator(sp), right = GroupWord::generator(tp);
  if (nt > 1)
    right = right.pow(nt);
  else if (ns > 1)
    left = left.pow(ns);
  GroupWord w = left.inverse() * right.inverse() * left * right;
  bw.word = w;

  WreathDecomposition dec = decompose(t, w);
  bw.children = dec.children;
  if (!dec.root_trivial()) return bw;  // not a witness

  GroupWord target = GroupWord::generator(s).inverse() *
                     GroupWord::generator(t_state).inverse() *
                     GroupWord::generator(s) * GroupWord::generator(t_state);
  int nontrivial = -1;
  for (size_t x = 0; x < dec.children.size(); ++x) {
    if (!wp.is_identity(dec.children[x])) {
      ++bw.nontrivial_children;
      nontrivial = static_cast<int>(x);
    }
  }
  if (bw.nontrivial_children == 0) {
    bw.degenerate = true;
    bw.ok = wp.is_identity(target) || wp.is_identity(w);
    return bw;
  }
  bw.ok = bw.nontrivial_children == 1 && wp.equal(dec.children[nontrivial], target);
  return bw;
}

}  // namespace autg
