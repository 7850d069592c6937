#pragma once

#include <cstdint>
#include <vector>

#include "autg/wordproblem.hpp"

namespace autg {

// SplitMix64: fixed 64-bit stream, identical on every platform. Per-sample
// substreams are derived as seed ^ sample-index.
class RandomSource {
public:
  explicit RandomSource(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, n) by masked rejection; exact and deterministic.
  uint64_t bounded(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t mask = ~0ull >> __builtin_clzll((n - 1) | 1);
    uint64_t v;
    do {
      v = next() & mask;
    } while (v >= n);
    return v;
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  uint64_t state_;
};

// Uniform over freely reduced words of the given length in the free group
// on the machine's generators: first letter uniform over 2k signed choices,
// each next over the 2k-1 non-cancelling ones.
GroupWord random_reduced_word(const Transducer& t, int length, RandomSource& rng);

struct TrialStats {
  int word_length = 0;
  int samples = 0;
  double mu_hat = 0;       // mean child-length sum over word length
  double variance = 0;     // sample variance of the child-length sum
  double eta_hat = 0;      // mu(1-mu) n / variance
  double stderr_mu = 0;
  double stderr_eta = 0;
  bool degenerate = false; // variance was zero
};

// Child-length sums of `samples` random reduced words of length n; entry i
// is produced from substream seed ^ i, so the output is independent of
// scheduling. The serial variant is the reference implementation.
std::vector<int> contraction_trials(const Transducer& t, int n, int samples,
                                    uint64_t seed, int threads = 0);
std::vector<int> contraction_trials_serial(const Transducer& t, int n, int samples,
                                           uint64_t seed);

TrialStats summarize_trials(int n, const std::vector<int>& child_sums);
TrialStats estimate_contraction(const Transducer& t, int n, int samples,
                                uint64_t seed, int threads = 0);

// Binomial-model coefficient with real binomial via log-Gamma:
//   eta * C(eta n, eta m) mu^(eta m) (1-mu)^(eta (n-m)).
double c_coefficient(double m, double n, double mu, double eta);

struct AmenabilityBound {
  double min_gap = 0;     // min over the grid of h(rho) - rho
  double argmin_rho = 0;
  bool positive = false;  // gap positive on the whole grid
  double h_at_one = 0;    // equals 1 exactly
};

// Fixed-point bound h(rho) = ((1-mu) + mu rho^(1/eta))^eta evaluated on a
// uniform grid over (0,1).
AmenabilityBound amenability_bound_check(double mu, double eta, int grid_size);

struct CogrowthRow {
  int n = 0;
  unsigned long long free_words = 0;  // 2k (2k-1)^(n-1)
  unsigned long long trivial_words = 0;
};

// Exhaustive enumeration of reduced words up to length nmax, counting the
// ones that are trivial in the group.
std::vector<CogrowthRow> exact_cogrowth(const WordProblem& wp, int nmax,
                                        int threads = 0);
std::vector<CogrowthRow> exact_cogrowth_serial(const WordProblem& wp, int nmax);

}  // namespace autg
