#include "autg/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "autg/parallel.hpp"
#include "autg/stochastic.hpp"

namespace autg {

Eigen::MatrixXd hecke_matrix(const SchreierGraph& g,
                             const std::vector<std::string>& labels) {
  std::vector<size_t> use;
  if (labels.empty()) {
    for (size_t l = 0; l < g.labels.size(); ++l) use.push_back(l);
  } else {
    for (const auto& name : labels) {
      auto it = std::find(g.labels.begin(), g.labels.end(), name);
      if (it == g.labels.end())
        throw std::invalid_argument("hecke_matrix: unknown label `" + name + "`");
      use.push_back(static_cast<size_t>(it - g.labels.begin()));
    }
  }
  size_t m = g.num_vertices();
  if (m > (1u << 13)) throw std::runtime_error("hecke_matrix: level too large");
  double c = 1.0 / (2.0 * use.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  for (size_t l : use)
    for (uint32_t v = 0; v < m; ++v) {
      uint32_t w = g.succ[l][v];
      h(v, w) += c;  // P_s
      h(w, v) += c;  // P_s^T = P_{s^-1}
    }
  return h;
}

std::vector<double> eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues: not square");
  size_t n = static_cast<size_t>(m.rows());
  std::vector<double> eigs;
  if (n == 1) {
    eigs = {m(0, 0)};
  } else if (n == 2) {
    // exact closed form
    double a = m(0, 0), b = m(0, 1), d = m(1, 1);
    double tr = a + d;
    double disc = std::sqrt((a - d) * (a - d) + 4 * b * b);
    eigs = {(tr - disc) / 2, (tr + disc) / 2};
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("eigenvalues: solver did not converge");
    eigs.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  }
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

SpectralPoint f_map(const SpectralPoint& p) {
  auto [l, m, n] = p;
  return {l * l + 2 * l * n - 2 * m * m, l * n + 2 * n * n, -m * m};
}

namespace {

using LongPoint = std::array<long double, 3>;

LongPoint f_map_long(const LongPoint& p) {
  auto [l, m, n] = p;
  return {l * l + 2 * l * n - 2 * m * m, l * n + 2 * n * n, -m * m};
}

long double q1_long(const LongPoint& p) {
  auto [l, m, n] = p;
  return (l + 2 * m + 2 * n) * (l - 2 * m + 2 * n);
}

}  // namespace

double q_eval(int n, const SpectralPoint& p) {
  if (n < 0) throw std::invalid_argument("q_eval: negative level");
  LongPoint q{p[0], p[1], p[2]};
  if (n == 0) return static_cast<double>(q[0] + 2 * q[1] + 2 * q[2]);
  for (int i = 0; i < n - 1; ++i) {
    q = f_map_long(q);
    if (!std::isfinite(static_cast<double>(q[0])) ||
        !std::isfinite(static_cast<double>(q[1])) ||
        !std::isfinite(static_cast<double>(q[2])))
      break;  // overflow propagates as an infinity flag
  }
  return static_cast<double>(q1_long(q));
}

Eigen::MatrixXd recursion_matrix_a(int n) {
  if (n == 0) return Eigen::MatrixXd::Ones(1, 1);
  Eigen::MatrixXd b = recursion_matrix_b(n - 1);
  long sz = b.rows();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * sz, 2 * sz);
  a.topRightCorner(sz, sz) = b;
  a.bottomLeftCorner(sz, sz) = Eigen::MatrixXd::Identity(sz, sz);
  return a;
}

Eigen::MatrixXd recursion_matrix_b(int n) {
  if (n == 0) return Eigen::MatrixXd::Ones(1, 1);
  Eigen::MatrixXd a = recursion_matrix_a(n - 1);
  long sz = a.rows();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(2 * sz, 2 * sz);
  b.topLeftCorner(sz, sz) = a;
  b.bottomRightCorner(sz, sz) = Eigen::MatrixXd::Identity(sz, sz);
  return b;
}

double q_det(int n, const SpectralPoint& p) {
  if (n > 8) throw std::invalid_argument("q_det: level too large for dense determinants");
  Eigen::MatrixXd a = recursion_matrix_a(n);
  Eigen::MatrixXd b = recursion_matrix_b(n);
  long sz = a.rows();
  Eigen::MatrixXd m = p[0] * Eigen::MatrixXd::Identity(sz, sz) +
                      p[1] * (a + a.transpose()) + p[2] * (b + b.transpose());
  return m.partialPivLu().determinant();
}

DetRecursionReport verify_det_recursion(int samples, int nmax, double tol, uint64_t seed) {
  DetRecursionReport rep;
  rep.samples = samples;
  rep.nmax = nmax;
  RandomSource rng(seed);
  for (int s = 0; s < samples; ++s) {
    SpectralPoint p{2 * rng.unit() - 1, 2 * rng.unit() - 1, 2 * rng.unit() - 1};
    SpectralPoint fp = f_map(p);
    for (int n = 0; n <= nmax; ++n) {
      double lhs = q_det(n + 1, p);
      double rhs = q_det(n, fp);
      double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
      double rel = std::abs(lhs - rhs) / scale;
      rep.max_rel_error = std::max(rep.max_rel_error, rel);
    }
  }
  rep.ok = rep.max_rel_error < tol;
  return rep;
}

SpectrumCheckReport spectrum_check(const Transducer& t, int n, double tol, int threads) {
  SpectrumCheckReport rep;
  rep.level = n;
  SchreierGraph g = schreier_graph(t, n, threads);
  rep.eigenvalues = eigenvalues(hecke_matrix(g));
  const auto& eigs = rep.eigenvalues;

  rep.within_unit_interval = true;
  for (double e : eigs)
    if (e < -1 - 1e-9 || e > 1 + 1e-9) rep.within_unit_interval = false;
  rep.max_is_one = std::abs(eigs.back() - 1.0) < 1e-9;
  rep.max_simple = eigs.size() < 2 || eigs[eigs.size() - 2] < 1.0 - 1e-9;

  rep.ok = rep.within_unit_interval && rep.max_is_one && rep.max_simple;
  for (double e : eigs) {
    double residual;
    double scale;
    if (n == 0) {
      residual = std::abs(q_eval(0, {e, -0.25, -0.25}));
      scale = 1.0;
    } else {
      LongPoint q{e, -0.25L, -0.25L};
      for (int i = 0; i < n - 1; ++i) q = f_map_long(q);
      long double norm = std::max({std::abs(q[0]), std::abs(q[1]), std::abs(q[2])});
      scale = static_cast<double>((1 + norm) * (1 + norm));
      residual = std::abs(static_cast<double>(q1_long(q)));
    }
    double scaled = residual / scale;
    rep.max_scaled_residual = std::max(rep.max_scaled_residual, scaled);
    if (scaled > tol) rep.ok = false;
  }
  return rep;
}

std::vector<double> cantor_approximation(const Transducer& t, int depth, double merge_tol) {
  if (depth > 12) throw std::invalid_argument("cantor_approximation: depth too large");
  SchreierGraph g = schreier_graph(t, depth);
  std::vector<double> eigs = eigenvalues(hecke_matrix(g));
  std::vector<double> points;
  for (double e : eigs)
    if (points.empty() || e - points.back() > merge_tol) points.push_back(e);
  return points;
}

std::string export_csv_spectrum(const std::vector<double>& eigs) {
  std::ostringstream out;
  char buf[64];
  for (double e : eigs) {
    std::snprintf(buf, sizeof buf, "%.17g", e);
    out << buf << "\n";
  }
  return out.str();
}

}  // namespace autg
