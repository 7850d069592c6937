#include "autg/stochastic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "autg/parallel.hpp"

namespace autg {

namespace {

// Signed generator alphabet: (gens[0],+), (gens[0],-), (gens[1],+), ...
// The inverse of letter i sits at i^1.
std::vector<SignedState> signed_generators(const Transducer& t) {
  std::vector<SignedState> s;
  for (int g : t.generators()) {
    s.push_back(SignedState{g, 1});
    s.push_back(SignedState{g, -1});
  }
  return s;
}

}  // namespace

GroupWord random_reduced_word(const Transducer& t, int length, RandomSource& rng) {
  std::vector<SignedState> sg = signed_generators(t);
  size_t k2 = sg.size();
  GroupWord w;
  int prev = -1;
  for (int i = 0; i < length; ++i) {
    size_t choice;
    if (prev < 0) {
      choice = rng.bounded(k2);
    } else {
      size_t banned = static_cast<size_t>(prev ^ 1);
      choice = rng.bounded(k2 - 1);
      if (choice >= banned) ++choice;
    }
    w.push(sg[choice]);
    prev = static_cast<int>(choice);
  }
  return w;
}

namespace {

// One trial: stream a random reduced word of length n through the wreath
// decomposition, returning the total reduced child length. Children are
// kept as cancellation stacks; the word itself is never stored.
int one_trial(const Transducer& t, const std::vector<SignedState>& sg, int n,
              uint64_t substream_seed) {
  RandomSource rng(substream_seed);
  int d = t.alphabet();
  size_t k2 = sg.size();
  std::vector<std::vector<StateCode>> child(d);
  std::vector<uint8_t> cur(d);
  for (int x = 0; x < d; ++x) cur[x] = static_cast<uint8_t>(x);

  int prev = -1;
  for (int i = 0; i < n; ++i) {
    size_t choice;
    if (prev < 0) {
      choice = rng.bounded(k2);
    } else {
      size_t banned = static_cast<size_t>(prev ^ 1);
      choice = rng.bounded(k2 - 1);
      if (choice >= banned) ++choice;
    }
    prev = static_cast<int>(choice);
    SignedState s = sg[choice];
    for (int x = 0; x < d; ++x) {
      int y = cur[x];
      SignedState sec = t.section(s, y);
      if (sec.state != 0) {
        StateCode c = sec.code();
        auto& st = child[x];
        if (!st.empty() && st.back() == -c)
          st.pop_back();
        else
          st.push_back(c);
      }
      cur[x] = static_cast<uint8_t>(t.root_image(s, y));
    }
  }
  size_t m = 0;
  for (const auto& st : child) m += st.size();
  return static_cast<int>(m);
}

}  // namespace

std::vector<int> contraction_trials(const Transducer& t, int n, int samples,
                                    uint64_t seed, int threads) {
  std::vector<SignedState> sg = signed_generators(t);
  std::vector<int> out(samples);
  parallel_for(samples, threads, [&](int64_t i) {
    out[i] = one_trial(t, sg, n, seed ^ static_cast<uint64_t>(i));
  });
  return out;
}

std::vector<int> contraction_trials_serial(const Transducer& t, int n, int samples,
                                           uint64_t seed) {
  std::vector<SignedState> sg = signed_generators(t);
  std::vector<int> out(samples);
  for (int i = 0; i < samples; ++i)
    out[i] = one_trial(t, sg, n, seed ^ static_cast<uint64_t>(i));
  return out;
}

TrialStats summarize_trials(int n, const std::vector<int>& child_sums) {
  TrialStats st;
  st.word_length = n;
  st.samples = static_cast<int>(child_sums.size());
  if (st.samples == 0 || n == 0) {
    st.degenerate = true;
    return st;
  }
  // Exact integer moments make the aggregation order-independent.
  long long s1 = 0, s2 = 0;
  unsigned __int128 s3 = 0, s4 = 0;
  for (int m : child_sums) {
    long long v = m;
    s1 += v;
    s2 += v * v;
    s3 += static_cast<unsigned __int128>(v) * v * v;
    s4 += static_cast<unsigned __int128>(v) * v * v * v;
  }
  double N = st.samples;
  double mean = static_cast<double>(s1) / N;
  st.mu_hat = mean / n;
  if (st.samples < 2) {
    st.degenerate = true;
    return st;
  }
  double m2 = static_cast<double>(s2) / N - mean * mean;  // biased second moment
  st.variance = m2 * N / (N - 1);
  if (st.variance <= 0) {
    st.degenerate = true;
    return st;
  }
  st.eta_hat = st.mu_hat * (1 - st.mu_hat) * n / st.variance;
  st.stderr_mu = std::sqrt(st.variance / N) / n;

  // Delta method on eta(mu, s^2); var(s^2) comes from the fourth moment.
  double e2 = static_cast<double>(s2) / N;
  double e3 = static_cast<double>(s3) / N;
  double e4 = static_cast<double>(s4) / N;
  double mu4 = e4 - 4 * mean * e3 + 6 * mean * mean * e2 - 3 * mean * mean * mean * mean;
  double var_s2 = (mu4 - m2 * m2 * (N - 3) / (N - 1)) / N;
  if (var_s2 < 0) var_s2 = 0;
  double dmu = (1 - 2 * st.mu_hat) * n / st.variance;
  double ds2 = -st.eta_hat / st.variance;
  double var_eta = dmu * dmu * (st.variance / (N * n * n)) + ds2 * ds2 * var_s2;
  st.stderr_eta = std::sqrt(var_eta);
  return st;
}

TrialStats estimate_contraction(const Transducer& t, int n, int samples,
                                uint64_t seed, int threads) {
  return summarize_trials(n, contraction_trials(t, n, samples, seed, threads));
}

double c_coefficient(double m, double n, double mu, double eta) {
  if (!(mu > 0 && mu < 1) || !(eta > 0 && eta <= 1) || m < 0 || m > n)
    throw std::domain_error("c_coefficient: parameters out of range");
  double log_binom =
      std::lgamma(eta * n + 1) - std::lgamma(eta * m + 1) - std::lgamma(eta * (n - m) + 1);
  double log_val = std::log(eta) + log_binom + eta * m * std::log(mu) +
                   eta * (n - m) * std::log(1 - mu);
  return std::exp(log_val);
}

AmenabilityBound amenability_bound_check(double mu, double eta, int grid_size) {
  AmenabilityBound r;
  r.min_gap = std::numeric_limits<double>::infinity();
  for (int i = 1; i < grid_size; ++i) {
    double rho = static_cast<double>(i) / grid_size;
    double h = std::pow((1 - mu) + mu * std::pow(rho, 1.0 / eta), eta);
    double gap = h - rho;
    if (gap < r.min_gap) {
      r.min_gap = gap;
      r.argmin_rho = rho;
    }
  }
  r.positive = r.min_gap > 0;
  r.h_at_one = std::pow((1 - mu) + mu * 1.0, eta);
  return r;
}

namespace {

// DFS over the reduced-word tree below a fixed prefix, counting trivial
// words per length.
void cogrowth_dfs(const WordProblem& wp, const std::vector<SignedState>& sg,
                  GroupWord& w, int prev, int nmax,
                  std::vector<unsigned long long>& trivial) {
  int n = static_cast<int>(w.size());
  if (n == nmax) return;
  for (size_t c = 0; c < sg.size(); ++c) {
    if (prev >= 0 && static_cast<int>(c ^ 1) == prev) continue;
    w.push(sg[c]);
    if (wp.is_identity(w)) ++trivial[w.size()];
    cogrowth_dfs(wp, sg, w, static_cast<int>(c), nmax, trivial);
    w.push(SignedState{sg[c].state, -sg[c].sign});  // cancels the letter
  }
}

std::vector<CogrowthRow> assemble_rows(size_t k2, int nmax,
                                       const std::vector<unsigned long long>& trivial) {
  std::vector<CogrowthRow> rows;
  unsigned long long fn = 1;
  for (int n = 0; n <= nmax; ++n) {
    CogrowthRow row;
    row.n = n;
    if (n == 1)
      fn = k2;
    else if (n >= 2)
      fn *= (k2 - 1);
    row.free_words = fn;
    row.trivial_words = trivial[n];
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<CogrowthRow> exact_cogrowth(const WordProblem& wp, int nmax, int threads) {
  const Transducer& t = wp.machine();
  std::vector<SignedState> sg = signed_generators(t);
  size_t k2 = sg.size();
  std::vector<unsigned long long> trivial(nmax + 1, 0);
  trivial[0] = 1;

  if (nmax >= 1) {
    // Split the tree at depth 1: one task per first letter.
    std::vector<std::vector<unsigned long long>> partial(
        k2, std::vector<unsigned long long>(nmax + 1, 0));
    parallel_for(static_cast<int64_t>(k2), threads, [&](int64_t c) {
      GroupWord w;
      w.push(sg[c]);
      if (wp.is_identity(w)) ++partial[c][1];
      cogrowth_dfs(wp, sg, w, static_cast<int>(c), nmax, partial[c]);
    });
    for (const auto& p : partial)
      for (int n = 1; n <= nmax; ++n) trivial[n] += p[n];
  }
  return assemble_rows(k2, nmax, trivial);
}

std::vector<CogrowthRow> exact_cogrowth_serial(const WordProblem& wp, int nmax) {
  const Transducer& t = wp.machine();
  std::vector<SignedState> sg = signed_generators(t);
  std::vector<unsigned long long> trivial(nmax + 1, 0);
  trivial[0] = 1;
  GroupWord w;
  cogrowth_dfs(wp, sg, w, -1, nmax, trivial);
  return assemble_rows(sg.size(), nmax, trivial);
}

}  // namespace autg
