#pragma once

#include <array>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "autg/word.hpp"

namespace autg {

class NucleusError : public std::runtime_error {
public:
  explicit NucleusError(const std::string& what) : std::runtime_error(what) {}
};

// Finite section-closed core of a contracting machine: canonical words for
// the elements reached by iterating the decomposition on products of pairs
// of members. members[0] is the empty word; child[i][x] indexes members.
struct Nucleus {
  std::vector<GroupWord> members;
  std::vector<std::vector<int>> child;
  std::vector<bool> trivial;  // exact: reachability of a non-trivial root
  int closure_rounds = 0;
  int dedup_depth = 0;

  int size() const { return static_cast<int>(members.size()); }
};

// Closure algorithm: start from the generators and their inverses, and for
// every pair product follow the level-section sets until they cycle; the
// words in the cycle are added. Members are identified by their action on
// the first dedup_depth levels. Throws NucleusError when the candidate set
// exceeds the budget, which signals that contraction could not be verified.
Nucleus compute_nucleus(const Transducer& t, int budget = 5000);

// Word problem for a contracting machine. A word is trivial iff no iterated
// section carries a non-trivial root permutation; sections never grow, so
// the search runs over a finite set. Memo inserts are sharded and locked:
// concurrent queries are safe.
class WordProblem {
public:
  explicit WordProblem(const Transducer& t, int nucleus_budget = 5000);
  // Non-contracting fallback: no nucleus, memo only (still exact).
  WordProblem(const Transducer& t, std::nullptr_t);

  const Transducer& machine() const { return *t_; }
  const Nucleus* nucleus() const { return nucleus_ ? &*nucleus_ : nullptr; }

  bool is_identity(const GroupWord& w) const;
  bool equal(const GroupWord& u, const GroupWord& v) const;

  size_t memo_size() const;

private:
  static constexpr int kShards = 64;

  struct Shard {
    mutable std::mutex mu;
    std::unordered_map<GroupWord, bool, GroupWordHash> map;
  };

  std::optional<bool> lookup(const GroupWord& w) const;
  void store(const GroupWord& w, bool value) const;

  const Transducer* t_;
  std::optional<Nucleus> nucleus_;
  mutable std::array<Shard, kShards> shards_;
};

}  // namespace autg
