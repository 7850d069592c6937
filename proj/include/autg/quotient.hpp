#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <vector>

#include "autg/wordproblem.hpp"

namespace autg {

using BigInt = boost::multiprecision::cpp_int;
using Perm = std::vector<uint16_t>;  // image array, degree <= 65536

Perm identity_perm(int degree);
Perm compose_perm(const Perm& p, const Perm& q);  // apply p, then q
Perm invert_perm(const Perm& p);

// Permutation induced on level n by a word; vertices indexed root-first.
Perm level_permutation(const Transducer& t, const GroupWord& w, int n);

// Base-and-strong-generators chain built incrementally: Schreier generators
// are sifted until every one strips to the identity. Sifting a pending
// batch is the parallel kernel; insertions stay sequential, so the chain is
// identical for any thread count.
class StabilizerChain {
public:
  StabilizerChain(int degree, const std::vector<Perm>& generators, int threads = 0);

  BigInt order() const;
  bool contains(const Perm& p) const;
  // Adds a generator, re-closing the chain; false if it was already inside.
  bool add_generator(const Perm& p);

  int degree() const { return degree_; }
  std::vector<int> base() const;
  size_t strong_generator_count() const { return pool_.size(); }

private:
  struct Level {
    uint16_t base = 0;
    std::vector<int> gens;                        // pool indices
    std::vector<uint16_t> orbit;                  // discovery order
    std::vector<int32_t> pos;                     // point -> orbit index
    std::vector<Perm> u, uinv;                    // transversal per orbit index
    std::vector<std::pair<int, int>> pending;     // (orbit idx, gens idx)
  };

  // Strips p through levels from..; returns the residue and the level it
  // stopped at, or nullopt when p reduces to the identity.
  std::optional<std::pair<Perm, size_t>> sift(Perm p, size_t from) const;
  void insert_gen(Perm h, size_t from_level);
  void add_gen_to_level(size_t li, int pool_id);
  void close_orbit(size_t li);
  void add_orbit_point(size_t li, uint16_t point, const Perm& u);
  void complete();

  int degree_;
  int threads_;
  std::vector<Perm> pool_, pool_inv_;
  std::vector<Level> levels_;
};

// |Q_n| for the group generated by the machine's generators on level n.
BigInt group_order(const Transducer& t, int n, int threads = 0);

// Closed form 2^((2^(n+1) + floor(3n/2) - 2)/3); throws if the exponent
// fails to be an integer.
BigInt predicted_order_basilica(int n);

// Multiplicative order of the permutation induced by w on level n.
BigInt element_order(const Transducer& t, const GroupWord& w, int n);

// Index of the commutator subgroup of Q_n, via the normal closure of the
// generator commutators inside the chain.
BigInt derived_index(const Transducer& t, int n, int threads = 0);

// log2 |Q_n| / (2^n - 1).
double hausdorff_estimate(const Transducer& t, int n, int threads = 0);
double log2_big(const BigInt& x);

// Checks b^-1 a = <a^-1 b, 1> (1 2): root is the transposition, first child
// equals a^-1 b, second child trivial.
bool bsv_membership_check(const WordProblem& wp);

}  // namespace autg
