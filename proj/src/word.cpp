#include "autg/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace autg {

GroupWord::GroupWord(std::vector<StateCode> letters) {
  letters_.reserve(letters.size());
  for (StateCode c : letters) push_code(c);
}

void GroupWord::push(SignedState s) {
  if (s.state == 0) return;
  push_code(s.code());
}

void GroupWord::push_code(StateCode c) {
  if (c == 0) return;
  if (!letters_.empty() && letters_.back() == -c)
    letters_.pop_back();
  else
    letters_.push_back(c);
}

void GroupWord::append(const GroupWord& other) {
  for (StateCode c : other.letters_) push_code(c);
}

GroupWord GroupWord::inverse() const {
  GroupWord w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.letters_.push_back(static_cast<StateCode>(-*it));
  return w;
}

GroupWord GroupWord::pow(long long n) const {
  GroupWord base = n < 0 ? inverse() : *this;
  long long k = n < 0 ? -n : n;
  GroupWord r;
  for (long long i = 0; i < k; ++i) r.append(base);
  return r;
}

GroupWord GroupWord::conj(const GroupWord& by) const {
  GroupWord r = by.inverse();
  r.append(*this);
  r.append(by);
  return r;
}

bool GroupWord::operator<(const GroupWord& o) const {
  if (letters_.size() != o.letters_.size())
    return letters_.size() < o.letters_.size();
  // letter order: a < a^-1 < b < b^-1 < ...
  for (size_t i = 0; i < letters_.size(); ++i) {
    auto key = [](StateCode c) { return std::pair{c < 0 ? -c : c, c < 0 ? 1 : 0}; };
    auto ka = key(letters_[i]), kb = key(o.letters_[i]);
    if (ka != kb) return ka < kb;
  }
  return false;
}

std::string GroupWord::str(const Transducer& t) const {
  if (letters_.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (i) s += ' ';
    s += t.describe_signed(letters_[i]);
  }
  return s;
}

GroupWord operator*(const GroupWord& a, const GroupWord& b) {
  GroupWord r = a;
  r.append(b);
  return r;
}

size_t GroupWordHash::operator()(const GroupWord& w) const {
  // FNV-1a over the code array
  uint64_t h = 1469598103934665603ull;
  for (StateCode c : w.codes()) {
    h ^= static_cast<uint64_t>(static_cast<uint16_t>(c));
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h);
}

WreathDecomposition decompose(const Transducer& t, const GroupWord& w) {
  int d = t.alphabet();
  WreathDecomposition dec;
  dec.children.resize(d);
  dec.root.resize(d);
  std::vector<uint8_t> cur(d);
  for (int x = 0; x < d; ++x) cur[x] = static_cast<uint8_t>(x);
  for (size_t i = 0; i < w.size(); ++i) {
    SignedState s = w.at(i);
    for (int x = 0; x < d; ++x) {
      int y = cur[x];
      dec.children[x].push(t.section(s, y));
      cur[x] = static_cast<uint8_t>(t.root_image(s, y));
    }
  }
  dec.root = cur;
  return dec;
}

Vertex apply_word(const Transducer& t, const GroupWord& w, const Vertex& v) {
  Vertex image = v;
  for (size_t i = 0; i < w.size(); ++i)
    image = apply_state(t, w.at(i), image);
  return image;
}

bool acts_trivially_to_depth(const Transducer& t, const GroupWord& w, int depth) {
  if (w.empty()) return true;
  int d = t.alphabet();
  Vertex v;
  // Iterate vertices of each level in lex order via odometer.
  for (int lev = 1; lev <= depth; ++lev) {
    v.assign(lev, 0);
    while (true) {
      if (apply_word(t, w, v) != v) return false;
      int i = lev - 1;
      while (i >= 0 && v[i] == d - 1) v[i--] = 0;
      if (i < 0) break;
      ++v[i];
    }
  }
  return true;
}

std::vector<uint32_t> level_action(const Transducer& t, const GroupWord& w, int n) {
  int d = t.alphabet();
  uint64_t size = 1;
  for (int i = 0; i < n; ++i) {
    size *= static_cast<uint64_t>(d);
    if (size > (1u << 24)) throw std::runtime_error("level_action: level too large");
  }
  uint32_t m = static_cast<uint32_t>(size);
  // Compose per-letter tables: first build each generator's level action once.
  std::vector<uint32_t> perm(m), tmp(m);
  for (uint32_t i = 0; i < m; ++i) perm[i] = i;
  if (n == 0 || w.empty()) return perm;

  Vertex v(n);
  std::vector<uint32_t> letter_perm(m);
  for (size_t li = 0; li < w.size(); ++li) {
    SignedState s = w.at(li);
    // enumerate vertices in index order: index = sum v[i]*d^(n-1-i)
    for (uint32_t idx = 0; idx < m; ++idx) {
      uint32_t rest = idx;
      for (int i = n - 1; i >= 0; --i) {
        v[i] = static_cast<uint8_t>(rest % d);
        rest /= d;
      }
      Vertex img = apply_state(t, s, v);
      uint32_t out = 0;
      for (int i = 0; i < n; ++i) out = out * d + img[i];
      letter_perm[idx] = out;
    }
    for (uint32_t i = 0; i < m; ++i) tmp[i] = letter_perm[perm[i]];
    perm.swap(tmp);
  }
  return perm;
}

}  // namespace autg
