#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "autg/expr.hpp"
#include "autg/wordproblem.hpp"

namespace autg {

// Positive weight per state; inverses weigh the same as the state.
struct WeightVector {
  std::vector<double> weight;  // indexed by state, entry 0 unused

  static WeightVector unit(const Transducer& t) {
    WeightVector w;
    w.weight.assign(t.num_states(), 1.0);
    return w;
  }
  double of(SignedState s) const { return weight[s.state]; }
  double of_word(const GroupWord& w) const {
    double len = 0;
    for (size_t i = 0; i < w.size(); ++i) len += of(w.at(i));
    return len;
  }
};

// One group element of the ball: canonical shortlex-minimal representative
// among minimal-weight reduced words, its exact minimal weighted length,
// and its action on the fingerprint levels (used for dedup lookups).
struct BallElement {
  GroupWord rep;
  double length = 0;
  std::vector<uint16_t> action;  // permutation of the fingerprint level
};

class Ball {
public:
  // Dijkstra over the reduced-word tree with deduplication by action
  // fingerprint confirmed by the exact word problem.
  Ball(const WordProblem& wp, double radius, const WeightVector& weights,
       size_t element_budget = 2000000);

  const std::vector<BallElement>& elements() const { return elems_; }
  double radius() const { return radius_; }
  const WeightVector& weights() const { return weights_; }

  // Index of the element represented by w, or -1 when w's element was not
  // finalized within the radius (its minimal length is then > radius).
  int find(const GroupWord& w) const;

  // Exact minimal weighted length, when certified by this ball.
  std::optional<double> minimal_length(const GroupWord& w) const;

private:
  friend class BallBuilder;
  const WordProblem* wp_;
  double radius_;
  WeightVector weights_;
  int fp_level_ = 0;
  std::vector<BallElement> elems_;
  std::unordered_map<uint64_t, std::vector<int>> buckets_;

  std::vector<uint16_t> action_of(const GroupWord& w) const;
  int find_by_action(const GroupWord& w, const std::vector<uint16_t>& act) const;
};

struct ContractionReport {
  int checked = 0;             // elements with all child lengths certified
  int skipped = 0;             // elements with an uncertified child
  int violations = 0;
  double max_slack = -1e300;   // max over checks of |g_x| - (eta |g| + C)
  GroupWord worst;             // element attaining max_slack
  bool ok() const { return violations == 0 && checked > 0; }
};

enum class ContractionMode { per_child, summed };

// Checks eta |g| + C + tol against each child's (or the child sum's)
// certified minimal length, over every ball element.
ContractionReport verify_contraction(const WordProblem& wp, const Ball& ball,
                                     double eta, double C,
                                     ContractionMode mode, double tol = 1e-9);

// Growth exponent alpha = log d / log(d / eta) for a strongly contracting
// action with ratio eta.
double growth_exponent(int d, double eta);

// Weights making the Grigorchuk strong-contraction bound tight on the
// generators: eta is the real root of X^3+X^2+X-2, w_a = 1 and
//   eta(w_a+w_b) = w_a+w_c, eta(w_a+w_c) = w_a+w_d, eta(w_a+w_d) = w_b.
double grigorchuk_eta();
WeightVector grigorchuk_weights(const Transducer& t);
WeightVector basilica_weights(const Transducer& t);  // a = 1, b = sqrt 2

// All positive words of length <= L over the first two generators are
// pairwise distinct in the group.
bool free_monoid_check(const WordProblem& wp, int L);

// Non-trivial elements g of the ball with g^2 = 1.
std::vector<GroupWord> torsion_check(const WordProblem& wp, const Ball& ball);

// Every relator, instantiated at p in {1,2,4,...,pmax}, is trivial.
bool verify_relators(const WordProblem& wp, const std::vector<std::string>& relators,
                     int pmax);

struct BranchingWitness {
  GroupWord word;                 // the constructed commutator
  std::vector<GroupWord> children;
  int nontrivial_children = 0;
  bool degenerate = false;        // witness collapsed to the identity
  bool ok = false;                // exactly one non-trivial child, equal to [s,t]
};

// Commutator with exactly one non-trivial coordinate, containing [s,t]:
// parents s', t' of s and t are powered so that one side has constant
// sections and the other a single non-trivial one.
BranchingWitness branching_witness(const WordProblem& wp, int s, int t);

}  // namespace autg
