#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "autg/schreier.hpp"

namespace autg {

using SpectralPoint = std::array<double, 3>;  // (lambda, mu, nu)

// Averaged permutation operator (1/2k) sum over the chosen generators of
// P_s + P_s^T on the level space. Symmetric, row sums one.
Eigen::MatrixXd hecke_matrix(const SchreierGraph& g,
                             const std::vector<std::string>& labels = {});

// Ascending eigenvalues of a dense symmetric matrix. Sizes 1 and 2 are
// closed-form (exact for the level-1 graph); larger sizes use the
// selfadjoint solver with residuals below 1e-8 * ||M||.
std::vector<double> eigenvalues(const Eigen::MatrixXd& m);

// Quadratic map steering the determinant recursion:
//   (l, m, n) -> (l^2 + 2 l n - 2 m^2, l n + 2 n^2, -m^2).
SpectralPoint f_map(const SpectralPoint& p);

// Q_0 = l + 2m + 2n, Q_1 = Q_0 (l - 2m + 2n), Q_{n>=2} = Q_1 of the
// (n-1)-fold f_map iterate. Overflow surfaces as +-infinity.
double q_eval(int n, const SpectralPoint& p);

// det(l + m(a_n + a_n^T) + n(b_n + b_n^T)) with the level matrices built
// from the block recursion a_{n+1} = [[0, b_n], [1, 0]],
// b_{n+1} = [[a_n, 0], [0, 1]].
double q_det(int n, const SpectralPoint& p);

// Level matrices of that recursion (permutation matrices of a and b).
Eigen::MatrixXd recursion_matrix_a(int n);
Eigen::MatrixXd recursion_matrix_b(int n);

struct DetRecursionReport {
  int samples = 0;
  int nmax = 0;
  double max_rel_error = 0;
  bool ok = false;
};

// Compares det-defined Q_{n+1}(p) against Q_n(f_map(p)) on random points
// in [-1,1]^3 for every n <= nmax.
DetRecursionReport verify_det_recursion(int samples, int nmax, double tol,
                                        uint64_t seed = 0);

struct SpectrumCheckReport {
  int level = 0;
  std::vector<double> eigenvalues;
  double max_scaled_residual = 0;
  bool ok = false;
  bool max_is_one = false;
  bool max_simple = false;
  bool within_unit_interval = false;
};

// Every level-n Hecke eigenvalue must be a root of Q_n(., -1/4, -1/4) in
// the scaled sense |Q_1(F^(n-1)(p))| <= tol * (1 + ||F^(n-1)(p)||_inf)^2.
SpectrumCheckReport spectrum_check(const Transducer& t, int n, double tol,
                                   int threads = 0);

// Finite-level approximation of the limiting spectrum on the line
// mu = nu = -1/4: the distinct level-`depth` eigenvalues.
std::vector<double> cantor_approximation(const Transducer& t, int depth,
                                         double merge_tol = 1e-9);

std::string export_csv_spectrum(const std::vector<double>& eigs);

}  // namespace autg
