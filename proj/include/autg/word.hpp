#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "autg/transducer.hpp"

namespace autg {

// Freely reduced word over signed states. Kept reduced by construction:
// push() cancels adjacent inverse pairs.
class GroupWord {
public:
  GroupWord() = default;
  explicit GroupWord(std::vector<StateCode> letters);  // reduces

  static GroupWord generator(int state, int sign = 1) {
    GroupWord w;
    w.push(SignedState{state, sign});
    return w;
  }

  void push(SignedState s);
  void push_code(StateCode c);
  void append(const GroupWord& other);

  size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  StateCode code(size_t i) const { return letters_[i]; }
  SignedState at(size_t i) const { return SignedState::from_code(letters_[i]); }
  const std::vector<StateCode>& codes() const { return letters_; }

  GroupWord inverse() const;
  GroupWord pow(long long n) const;
  GroupWord conj(const GroupWord& by) const;       // by^-1 * this * by

  bool operator==(const GroupWord& o) const { return letters_ == o.letters_; }
  bool operator<(const GroupWord& o) const;        // shortlex on codes

  std::string str(const Transducer& t) const;      // e.g. "a b^-1 a"

private:
  std::vector<StateCode> letters_;
};

GroupWord operator*(const GroupWord& a, const GroupWord& b);

struct GroupWordHash {
  size_t operator()(const GroupWord& w) const;
};

// Image of the wreath decomposition: d freely reduced children plus the
// root permutation of the alphabet.
struct WreathDecomposition {
  std::vector<GroupWord> children;  // children[x], 0-based letters
  std::vector<uint8_t> root;        // root[x] = image of letter x

  bool root_trivial() const {
    for (size_t x = 0; x < root.size(); ++x)
      if (root[x] != x) return false;
    return true;
  }
  size_t child_letters() const {
    size_t n = 0;
    for (const auto& c : children) n += c.size();
    return n;
  }
};

WreathDecomposition decompose(const Transducer& t, const GroupWord& w);

// Applies a whole word to a vertex, left to right.
Vertex apply_word(const Transducer& t, const GroupWord& w, const Vertex& v);

// True iff w fixes every vertex of depth <= depth. Direct action sweep,
// no decomposition machinery; levels are scanned shallow-first so moved
// vertices exit early.
bool acts_trivially_to_depth(const Transducer& t, const GroupWord& w, int depth);

// Permutation induced on level n, vertices indexed root-first
// (first letter most significant). Degree d^n must fit the budget.
std::vector<uint32_t> level_action(const Transducer& t, const GroupWord& w, int n);

}  // namespace autg
