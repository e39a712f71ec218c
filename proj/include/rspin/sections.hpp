#pragma once
// Numeric lab for the explicit section basis on smooth disks, modeled on the
// upper half-plane: the xi-forms, the r-th power forms g_j whose roots give
// the sections sigma_j, boundary root extraction with the arc sign
// convention, numeric basis rank, residue sign profiles, and the cyclic
// rotation change-of-basis determinant sign.

#include <cmath>
#include <complex>
#include <random>

#include "graph.hpp"

namespace rspin {

using Complex = std::complex<double>;

struct EvaluationError : GraphError {
  using GraphError::GraphError;
};

struct DiskConfiguration {
  int r = 2;
  std::vector<double> x;    // boundary points, strictly increasing
  std::vector<Complex> z;   // internal points, Im > 0
  std::vector<int> a;       // internal twists, sum = k-1

  int k() const { return static_cast<int>(x.size()); }
  int l() const { return static_cast<int>(z.size()); }

  void check() const {
    if (r < 2) throw PreconditionError("configuration: r < 2");
    for (size_t i = 1; i < x.size(); ++i)
      if (x[i] <= x[i - 1])
        throw PreconditionError("configuration: boundary points must increase strictly");
    for (const auto& zi : z)
      if (zi.imag() <= 0)
        throw PreconditionError("configuration: internal points need Im > 0");
    if (z.size() != a.size())
      throw PreconditionError("configuration: twists must match internal points");
    for (int ai : a)
      if (ai < 0 || ai > r - 1)
        throw PreconditionError("configuration: twist out of range");
    long long sum = std::accumulate(a.begin(), a.end(), 0LL);
    if (sum != k() - 1)
      throw PreconditionError("configuration: twists must sum to k-1");
  }

  double scale() const {
    double lo = x.empty() ? -1 : x.front(), hi = x.empty() ? 1 : x.back();
    for (const auto& zi : z) {
      lo = std::min(lo, zi.real());
      hi = std::max(hi, zi.real());
    }
    return std::max(hi - lo, 1.0);
  }

  // Smallest pairwise distance among all special points (and conjugates).
  std::pair<double, std::pair<int, int>> min_gap() const {
    std::vector<Complex> pts;
    for (double xi : x) pts.emplace_back(xi, 0.0);
    for (const auto& zi : z) pts.push_back(zi);
    for (const auto& zi : z) pts.push_back(std::conj(zi));
    double best = 1e300;
    std::pair<int, int> pair{-1, -1};
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j) {
        double d = std::abs(pts[i] - pts[j]);
        if (d < best) {
          best = d;
          pair = {static_cast<int>(i), static_cast<int>(j)};
        }
      }
    return {best, pair};
  }
};

// Affine renormalization onto x1 = -1, xk = 1 (a positive Mobius map).
inline DiskConfiguration normalize_config(const DiskConfiguration& c) {
  if (c.k() < 2) return c;
  double lo = c.x.front(), hi = c.x.back();
  double alpha = 2.0 / (hi - lo), beta = -1.0 - alpha * lo;
  DiskConfiguration out = c;
  for (auto& xi : out.x) xi = alpha * xi + beta;
  for (auto& zi : out.z) zi = alpha * zi + beta;
  return out;
}

namespace detail {

inline void guard_pole(const Complex& w, const Complex& p, double scale) {
  if (std::abs(w - p) < 1e-12 * scale)
    throw EvaluationError("evaluation at (or too near) a pole");
}

}  // namespace detail

// xi_{ij} coefficient: (x_j - x_i) / ((w - x_i)(w - x_j)); 1-based indices.
inline Complex xi_boundary(const DiskConfiguration& c, int i, int j, Complex w) {
  if (i < 1 || i > c.k() || j < 1 || j > c.k() || i == j)
    throw PreconditionError("xi_boundary: bad indices");
  double xi = c.x[i - 1], xj = c.x[j - 1];
  detail::guard_pole(w, xi, c.scale());
  detail::guard_pole(w, xj, c.scale());
  return (xj - xi) / ((w - xi) * (w - xj));
}

// xi_i coefficient: i(conj z - z) / ((w - z)(w - conj z)); real positive on R.
inline Complex xi_internal(const DiskConfiguration& c, int i, Complex w) {
  if (i < 1 || i > c.l()) throw PreconditionError("xi_internal: bad index");
  Complex zi = c.z[i - 1], zc = std::conj(zi);
  detail::guard_pole(w, zi, c.scale());
  detail::guard_pole(w, zc, c.scale());
  return Complex(0, 1) * (zc - zi) / ((w - zi) * (w - zc));
}

struct PowerFormSample {
  int j = 1;
  Complex at;
  Complex coefficient;
};

// Coefficient of the r-th power form of sigma_j (before root extraction),
// with the boundary order cyclically shifted by `offset`:
//   (-1)^(r+1) prod xi_i^(a_i) prod_i xi_(i,i+1)^(-1) xi_(1,1+j)^r.
inline PowerFormSample sigma_power(const DiskConfiguration& c, int j, Complex w,
                                   int offset = 0) {
  c.check();
  const int k = c.k();
  if (k < 2) throw PreconditionError("sigma_power: need k >= 2");
  if (j < 1 || j > k - 1) throw PreconditionError("sigma_power: j out of [1, k-1]");
  auto pi = [&](int i) { return ((i - 1 + offset) % k + k) % k + 1; };  // 1-based

  Complex val = c.r % 2 == 0 ? Complex(-1, 0) : Complex(1, 0);  // (-1)^(r+1)
  for (int i = 1; i <= c.l(); ++i) {
    Complex xi = xi_internal(c, i, w);
    for (int m = 0; m < c.a[i - 1]; ++m) val *= xi;
  }
  for (int i = 1; i <= k; ++i)
    val /= xi_boundary(c, pi(i), pi(i == k ? 1 : i + 1), w);
  Complex base = xi_boundary(c, pi(1), pi(1 + j), w);
  for (int m = 0; m < c.r; ++m) val *= base;
  return {j, w, val};
}

// Is real w on the (cyclic, through infinity if needed) arc from x_pi(1) to
// x_pi(1+j) in the boundary orientation?
inline bool on_distinguished_arc(const DiskConfiguration& c, int j, double w,
                                 int offset = 0) {
  const int k = c.k();
  auto pi = [&](int i) { return ((i - 1 + offset) % k + k) % k; };  // 0-based
  double a = c.x[pi(1)], b = c.x[pi(1 + j)];
  if (a < b) return w > a && w < b;
  return w > a || w < b;
}

// Real r-th-root samples h_j(w): magnitude |g_j|^(1/r), sign +1 on the arc
// from x_pi(1) to x_pi(1+j) and -1 on the complementary arc (the only sign
// flips are at the two poles, whose order r-2 is what alternation permits).
inline std::vector<double> sigma_boundary_root(const DiskConfiguration& c, int j,
                                               const std::vector<double>& samples,
                                               int offset = 0) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (double w : samples) {
    PowerFormSample s = sigma_power(c, j, Complex(w, 0), offset);
    double re = s.coefficient.real(), im = s.coefficient.imag();
    if (std::abs(im) > 1e-9 * std::max(1.0, std::abs(re)))
      throw EvaluationError("power form not real on the boundary (configuration error)");
    int sign = on_distinguished_arc(c, j, w, offset) ? 1 : -1;
    if (c.r % 2 == 1) {
      // odd r: the real root is unique; its sign must match the arc rule
      if (re != 0 && (re > 0) != (sign > 0))
        throw EvaluationError("sign propagation inconsistency at w=" + std::to_string(w));
    } else if (re < -1e-9 * std::max(1.0, std::abs(re))) {
      throw EvaluationError("even r: power form negative on the boundary at w=" +
                            std::to_string(w));
    }
    out.push_back(sign * std::pow(std::abs(re), 1.0 / c.r));
  }
  return out;
}

namespace detail {

// Deterministic boundary sample points staying clear of the markings.
inline std::vector<double> boundary_samples(const DiskConfiguration& c, int n,
                                            unsigned seed) {
  std::mt19937 rng(seed);
  double lo = c.x.front() - 0.7 * c.scale(), hi = c.x.back() + 0.7 * c.scale();
  std::uniform_real_distribution<double> dist(lo, hi);
  double clearance = 0.02 * c.scale();
  std::vector<double> out;
  while (static_cast<int>(out.size()) < n) {
    double w = dist(rng);
    bool ok = true;
    for (double xi : c.x)
      if (std::abs(w - xi) < clearance) ok = false;
    if (ok) out.push_back(w);
  }
  return out;
}

// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> m) {
  const int n = static_cast<int>(m.size());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += m[i][j] * m[i][j];
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(m[p][q]) < 1e-300) continue;
        double theta = (m[q][q] - m[p][p]) / (2 * m[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1));
        double cs = 1 / std::sqrt(t * t + 1), sn = t * cs;
        for (int i = 0; i < n; ++i) {
          double mip = m[i][p], miq = m[i][q];
          m[i][p] = cs * mip - sn * miq;
          m[i][q] = sn * mip + cs * miq;
        }
        for (int i = 0; i < n; ++i) {
          double mpi = m[p][i], mqi = m[q][i];
          m[p][i] = cs * mpi - sn * mqi;
          m[q][i] = sn * mpi + cs * mqi;
        }
      }
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = m[i][i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

// Sign of the determinant by Gaussian elimination with partial pivoting.
inline int det_sign(std::vector<std::vector<double>> m, double tol) {
  const int n = static_cast<int>(m.size());
  int sign = 1;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int row = col + 1; row < n; ++row)
      if (std::abs(m[row][col]) > std::abs(m[piv][col])) piv = row;
    if (std::abs(m[piv][col]) < tol) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      sign = -sign;
    }
    if (m[col][col] < 0) sign = -sign;
    for (int row = col + 1; row < n; ++row) {
      double f = m[row][col] / m[col][col];
      for (int cc = col; cc < n; ++cc) m[row][cc] -= f * m[col][cc];
    }
  }
  return sign;
}

}  // namespace detail

struct BasisRankReport {
  int rank = 0;
  double condition = 0;  // largest / smallest singular value
  double smallest_sv = 0;
  double largest_sv = 0;
};

inline BasisRankReport basis_rank(const DiskConfiguration& raw, int n_samples,
                                  unsigned seed = 1) {
  raw.check();
  const int k = raw.k();
  if (k < 2) return {0, 0, 0, 0};  // empty basis
  if (n_samples < 3 * (k - 1))
    throw PreconditionError("basis_rank: need n_samples >= 3(k-1)");
  DiskConfiguration c = normalize_config(raw);
  auto [gap, pair] = c.min_gap();
  if (gap < 1e-6 * c.scale())
    throw PreconditionError("basis_rank: degenerate configuration, points " +
                            std::to_string(pair.first) + " and " +
                            std::to_string(pair.second) + " collide");

  auto samples = detail::boundary_samples(c, n_samples, seed);
  std::vector<std::vector<double>> H(k - 1);
  for (int j = 1; j <= k - 1; ++j) {
    H[j - 1] = sigma_boundary_root(c, j, samples);
    double norm = 0;
    for (double v : H[j - 1]) norm += v * v;
    norm = std::sqrt(norm);
    if (norm > 0)
      for (double& v : H[j - 1]) v /= norm;
  }
  std::vector<std::vector<double>> G(k - 1, std::vector<double>(k - 1, 0.0));
  for (int i = 0; i < k - 1; ++i)
    for (int j = 0; j < k - 1; ++j)
      for (int m = 0; m < n_samples; ++m) G[i][j] += H[i][m] * H[j][m];
  auto eig = detail::symmetric_eigenvalues(G);
  BasisRankReport rep;
  rep.largest_sv = std::sqrt(std::max(eig.back(), 0.0));
  rep.smallest_sv = std::sqrt(std::max(eig.front(), 0.0));
  for (double e : eig)
    if (std::sqrt(std::max(e, 0.0)) > 1e-8 * rep.largest_sv) ++rep.rank;
  rep.condition = rep.smallest_sv > 0 ? rep.largest_sv / rep.smallest_sv : 0;
  return rep;
}

struct ResidueProfile {
  int sign_at_x1 = 0;
  int sign_at_x1j = 0;
};

// Leading-coefficient signs of h_j at its two poles, estimated along a
// shrinking offset ladder; approach each pole from just past it in the
// boundary orientation (inside the distinguished arc at x_pi(1), on the
// complementary arc at x_pi(1+j)).
inline ResidueProfile residue_profile(const DiskConfiguration& raw, int j) {
  raw.check();
  DiskConfiguration c = normalize_config(raw);
  const int k = c.k();
  if (k < 2) throw PreconditionError("residue_profile: need k >= 2");
  if (j < 1 || j > k - 1) throw PreconditionError("residue_profile: j out of range");
  double gap = c.min_gap().first;
  double a = c.x[0], b = c.x[j];

  auto estimate = [&](double pole) {
    double expo = static_cast<double>(c.r - 2) / c.r;
    int sign = 0;
    double prev = 0;
    int step = 0;
    for (double e : {1e-2, 1e-3, 1e-4}) {
      double eps = e * gap;
      double h = sigma_boundary_root(c, j, {pole + eps})[0];
      double lead = h * std::pow(eps, expo);
      int s = h > 0 ? 1 : h < 0 ? -1 : 0;
      if (step == 0) sign = s;
      else if (s != sign)
        throw EvaluationError("residue sign estimate unstable across the ladder");
      if (step > 0 && c.r > 2 &&
          std::abs(lead - prev) > 0.5 * std::max(std::abs(lead), std::abs(prev)))
        throw EvaluationError("residue magnitude estimate did not converge");
      prev = lead;
      ++step;
    }
    return sign;
  };

  ResidueProfile prof;
  prof.sign_at_x1 = estimate(a);
  prof.sign_at_x1j = estimate(b);
  if (prof.sign_at_x1 * prof.sign_at_x1j != -1)
    throw std::logic_error("residue_profile: pole signs do not multiply to -1");
  return prof;
}

// Sign of the determinant of the change of basis from (sigma_j) to the basis
// for the boundary order cyclically shifted by h.
inline int rotation_determinant_sign(const DiskConfiguration& raw, int h = 1,
                                     unsigned seed = 7) {
  raw.check();
  DiskConfiguration c = normalize_config(raw);
  const int k = c.k();
  if (k < 2) throw PreconditionError("rotation_determinant_sign: need k >= 2");
  const int n = std::max(4 * (k - 1), 8);
  auto samples = detail::boundary_samples(c, n, seed);

  auto matrix_for = [&](int offset) {
    std::vector<std::vector<double>> M(k - 1);
    for (int j = 1; j <= k - 1; ++j) M[j - 1] = sigma_boundary_root(c, j, samples, offset);
    return M;
  };
  auto A = matrix_for(0), B = matrix_for(((h % k) + k) % k);

  // change of basis M with B = M A, via normal equations M = B A^T (A A^T)^-1
  const int d = k - 1;
  std::vector<std::vector<double>> AAt(d, std::vector<double>(d, 0.0));
  std::vector<std::vector<double>> BAt(d, std::vector<double>(d, 0.0));
  for (int i = 0; i < d; ++i)
    for (int j2 = 0; j2 < d; ++j2)
      for (int m = 0; m < n; ++m) {
        AAt[i][j2] += A[i][m] * A[j2][m];
        BAt[i][j2] += B[i][m] * A[j2][m];
      }
  // det(M) = det(BAt) / det(AAt); only signs are needed, and det(AAt) > 0
  double norm = 0;
  for (int i = 0; i < d; ++i)
    for (int j2 = 0; j2 < d; ++j2) norm = std::max(norm, std::abs(BAt[i][j2]));
  int s_b = detail::det_sign(BAt, 1e-10 * std::max(norm, 1.0));
  int s_a = detail::det_sign(AAt, 1e-12);
  if (s_b == 0 || s_a == 0)
    throw EvaluationError("rotation_determinant_sign: ill-conditioned matrices");
  return s_b * s_a;
}

}  // namespace rspin
