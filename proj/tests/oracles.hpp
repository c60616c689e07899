#pragma once

// Reference computations used only by the tests. Nothing here calls into
// chshseq; matrices are plain row-major std::complex arrays so that every
// expected value comes from a route independent of the library.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

using C = std::complex<double>;

struct Mat {
  std::size_t n = 0;
  std::vector<C> v;

  explicit Mat(std::size_t dim = 0) : n(dim), v(dim * dim, 0.0) {}
  C& operator()(std::size_t r, std::size_t c) { return v[r * n + c]; }
  C operator()(std::size_t r, std::size_t c) const { return v[r * n + c]; }
};

using Vec = std::vector<C>;

inline Mat identity(std::size_t n) {
  Mat m(n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = 1.0;
  return m;
}

inline Mat mul(const Mat& a, const Mat& b) {
  Mat out(a.n);
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t k = 0; k < a.n; ++k)
      for (std::size_t j = 0; j < a.n; ++j) out(i, j) += a(i, k) * b(k, j);
  return out;
}

inline Mat add(const Mat& a, const Mat& b, double sb = 1.0) {
  Mat out(a.n);
  for (std::size_t k = 0; k < a.v.size(); ++k) out.v[k] = a.v[k] + sb * b.v[k];
  return out;
}

inline Mat scale(const Mat& a, C s) {
  Mat out(a.n);
  for (std::size_t k = 0; k < a.v.size(); ++k) out.v[k] = s * a.v[k];
  return out;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.n * b.n);
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = 0; j < a.n; ++j)
      for (std::size_t k = 0; k < b.n; ++k)
        for (std::size_t l = 0; l < b.n; ++l) out(i * b.n + k, j * b.n + l) = a(i, j) * b(k, l);
  return out;
}

inline Vec matvec(const Mat& m, const Vec& x) {
  Vec out(m.n, 0.0);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) out[i] += m(i, j) * x[j];
  return out;
}

inline C inner(const Vec& a, const Vec& b) {
  C s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

inline double max_abs(const Mat& m) {
  double out = 0.0;
  for (const auto& x : m.v) out = std::max(out, std::abs(x));
  return out;
}

inline Mat sx() {
  Mat m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}
inline Mat sy() {
  Mat m(2);
  m(0, 1) = C(0, -1);
  m(1, 0) = C(0, 1);
  return m;
}
inline Mat sz() {
  Mat m(2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

/// sigma . n written out component by component.
inline Mat spin(double theta, double phi) {
  return add(add(scale(sx(), std::sin(theta) * std::cos(phi)), scale(sy(), std::sin(theta) * std::sin(phi))),
             scale(sz(), std::cos(theta)));
}

/// (I + s A)/2 for a dichotomic A.
inline Mat projector(const Mat& a, int s) { return scale(add(identity(a.n), a, s), 0.5); }

/// Born rule on psi, then explicit collapse, then Born rule again:
/// probability of outcome P followed by outcome Q.
inline double measure_then_measure(const Vec& psi, const Mat& p, const Mat& q) {
  const Vec after_p = matvec(p, psi);
  const double p1 = inner(psi, matvec(p, psi)).real();
  if (p1 <= 0.0) return 0.0;
  Vec collapsed(after_p.size());
  for (std::size_t k = 0; k < after_p.size(); ++k) collapsed[k] = after_p[k] / std::sqrt(p1);
  const double p2 = inner(collapsed, matvec(q, collapsed)).real();
  return p1 * p2;
}

/// Mixed sequential joint distribution over cells ++, +-, -+, -- by
/// enumerating both orders.
inline std::vector<double> mixed_distribution(const Vec& psi, const Mat& a, const Mat& b) {
  std::vector<double> out;
  for (int i : {1, -1}) {
    for (int j : {1, -1}) {
      const auto pa = projector(a, i);
      const auto pb = projector(b, j);
      out.push_back(0.5 * (measure_then_measure(psi, pa, pb) + measure_then_measure(psi, pb, pa)));
    }
  }
  return out;
}

inline double correlation(const Vec& psi, const Mat& a, const Mat& b) {
  const auto d = mixed_distribution(psi, a, b);
  return d[0] - d[1] - d[2] + d[3];
}

/// exp(M) by scaling and squaring of a Taylor series.
inline Mat expm(const Mat& m) {
  int squarings = 0;
  double norm = max_abs(m) * static_cast<double>(m.n);
  while (norm > 0.25) {
    norm /= 2;
    ++squarings;
  }
  const Mat scaled = scale(m, std::ldexp(1.0, -squarings));
  Mat term = identity(m.n);
  Mat sum = identity(m.n);
  for (int k = 1; k < 30; ++k) {
    term = scale(mul(term, scaled), 1.0 / k);
    sum = add(sum, term);
  }
  for (int s = 0; s < squarings; ++s) sum = mul(sum, sum);
  return sum;
}

/// Eigenvalues of a 2x2 Hermitian matrix from its characteristic polynomial.
inline std::pair<double, double> eig2(const Mat& m) {
  const double t = (m(0, 0) + m(1, 1)).real();
  const double d = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
  const double disc = std::sqrt(std::max(0.0, t * t / 4 - d));
  return {t / 2 - disc, t / 2 + disc};
}

/// Largest eigenvalue of a Hermitian matrix by power iteration on m + shift I.
inline double lambda_max(const Mat& m, double shift, int iterations = 20000) {
  const Mat shifted = add(m, identity(m.n), shift);
  Vec x(m.n);
  for (std::size_t k = 0; k < m.n; ++k) x[k] = C(1.0 + 0.1 * k, 0.05 * k);
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vec y = matvec(shifted, x);
    const double nrm = std::sqrt(inner(y, y).real());
    for (auto& c : y) c /= nrm;
    lambda = inner(y, matvec(shifted, y)).real();
    x = std::move(y);
  }
  return lambda - shift;
}

/// Singlet correlation of sigma(theta_a) (x) sigma(theta_b), both in the xz plane.
inline double singlet_correlation(double theta_a, double theta_b) { return -std::cos(theta_a - theta_b); }

inline Vec singlet() { return {0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0}; }

}  // namespace oracle
