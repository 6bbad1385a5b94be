#pragma once

#include "trace_atlas/int_polynomial.hpp"
#include "trace_atlas/root_finding.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace trace_atlas {

namespace detail {

inline zint binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  zint r = 1;
  for (int i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

// sigma_m = (-1)^m a_{n-m} / a_n (0 when the coefficient is absent).
inline zrat sigma(const IntPolynomial& p, int m) {
  int n = p.degree();
  zrat v = make_rat(p.coeff(n - m), p.leading());
  return (m & 1) ? -v : v;
}

}  // namespace detail

// S_m = sigma_m / C(n, m), exact.
inline zrat symmetric_mean(const IntPolynomial& p, int m) {
  int n = p.degree();
  if (n < 1) throw std::domain_error("symmetric_mean requires degree >= 1");
  if (m < 1 || m > n) throw std::domain_error("symmetric_mean requires 1 <= m <= degree");
  return detail::sigma(p, m) / zrat(detail::binomial(n, m));
}

// (1/n) p_m with the power sums p_m from Newton's identities, exact.
inline zrat power_sum_mean(const IntPolynomial& p, int m) {
  int n = p.degree();
  if (n < 1) throw std::domain_error("power_sum_mean requires degree >= 1");
  if (m < 1) throw std::domain_error("power_sum_mean requires m >= 1");
  std::vector<zrat> ps(static_cast<std::size_t>(m) + 1);
  for (int j = 1; j <= m; ++j) {
    zrat acc = 0;
    int top = std::min(j - 1, n);
    for (int i = 1; i <= top; ++i) {
      zrat term = detail::sigma(p, i) * ps[static_cast<std::size_t>(j - i)];
      acc += (i & 1) ? term : -term;
    }
    if (j <= n) {
      zrat term = zrat(j) * detail::sigma(p, j);
      acc += (j & 1) ? term : -term;
    }
    ps[static_cast<std::size_t>(j)] = acc;
  }
  return ps[static_cast<std::size_t>(m)] / n;
}

// ((S_1), (S_2)^{1/2}, ..., (S_n)^{1/n}) for a tuple of nonnegative reals,
// computed from the values themselves.  Weakly decreasing by construction
// (float-level violations are clamped); constant tuples give a flat chain.
inline std::vector<double> maclaurin_chain(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 1) throw std::domain_error("maclaurin_chain requires at least one value");
  for (double v : values)
    if (!(v >= 0)) throw std::domain_error("maclaurin_chain requires nonnegative values");
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = std::min(i + 1, n); k >= 1; --k) e[k] += values[i] * e[k - 1];
  std::vector<double> chain(n);
  double binom = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    binom = binom * double(n - k + 1) / double(k);
    double sk = e[k] / binom;
    chain[k - 1] = sk <= 0 ? 0.0 : std::pow(sk, 1.0 / double(k));
    if (k >= 2 && chain[k - 1] > chain[k - 2]) chain[k - 1] = chain[k - 2];
  }
  return chain;
}

// (1/n) sum phi(x_k).  phi is declared convex increasing by the caller; a
// sampled Jensen check runs in debug builds only.
inline double convex_mean(const std::vector<double>& values,
                          const std::function<double(double)>& phi) {
  if (values.empty()) throw std::domain_error("convex_mean requires a nonempty tuple");
  double acc = 0, mean = 0;
  for (double v : values) {
    acc += phi(v);
    mean += v;
  }
  acc /= double(values.size());
  mean /= double(values.size());
#ifndef NDEBUG
  // Jensen: phi(mean) <= mean of phi, up to float slack.
  if (phi(mean) > acc + 1e-9 * (1 + std::fabs(acc)))
    throw std::logic_error("convex_mean: declared-convex phi failed a Jensen sample");
#endif
  return acc;
}

struct SectorBound {
  double lhs = 0;   // arithmetic mean of root real parts
  double rhs = 0;   // cos(gamma) * (|a_0| / |a_n|)^{1/n}
  double slack = 0; // float + root-radius allowance used by the comparison
  bool holds = false;
};

// Lower bound on the mean trace for roots confined to |Arg z| <= gamma.
// Root disks may touch the sector boundary within their own certification
// radius; disks clearly outside are a precondition violation.
inline SectorBound sector_mean_bound(const IntPolynomial& p, const RootMultiset& rm,
                                     double gamma) {
  int n = p.degree();
  if (n < 1) throw std::domain_error("sector_mean_bound requires degree >= 1");
  if (p.coeff(0) == 0) throw std::domain_error("sector_mean_bound requires a_0 != 0");
  if (!(gamma > 0 && gamma < std::acos(-1.0) / 2))
    throw std::domain_error("sector_mean_bound requires gamma in (0, pi/2)");
  double slack = 0;
  for (std::size_t i = 0; i < rm.roots.size(); ++i) {
    const auto& z = rm.roots[i];
    double r = rm.radii[i];
    double mod = std::abs(z);
    if (!(mod > r)) throw std::domain_error("sector_mean_bound: root disk reaches the origin");
    double phi = std::fabs(std::atan2(z.imag(), z.real()));
    double half = std::asin(std::min(1.0, r / mod));
    if (phi - half > gamma + 1e-12)
      throw std::domain_error("sector_mean_bound: roots outside the sector");
    slack += r;
  }
  SectorBound out;
  if (rm.source == p && !rm.roots.empty()) {
    out.lhs = zrat(detail::sigma(p, 1) / n).convert_to<double>();
  } else {
    double acc = 0;
    for (const auto& z : rm.roots) acc += z.real();
    out.lhs = acc / double(rm.roots.size());
  }
  double ratio =
      std::fabs(zrat(p.coeff(0), p.leading()).convert_to<double>());
  out.rhs = std::cos(gamma) * std::pow(ratio, 1.0 / double(n));
  slack = slack / double(n) + 1e-10 * (1 + std::fabs(out.rhs));
  out.slack = slack;
  out.holds = out.lhs >= out.rhs - slack;
  return out;
}

// Exact coefficient means plus float Maclaurin chain for reporting.
struct MeansReport {
  int degree = 0;
  std::vector<std::pair<int, zrat>> symmetric;  // requested (m, S_m)
  zrat arithmetic_mean;                         // S_1
  std::vector<std::pair<int, zrat>> power_sum;  // requested (m, p_m / n)
  std::vector<double> maclaurin;                // (S_m)^{1/m}, m = 1..n (NaN if S_m < 0)
};

inline MeansReport means_report(const IntPolynomial& p, const std::vector<int>& ms) {
  int n = p.degree();
  if (n < 1) throw std::domain_error("means_report requires degree >= 1");
  MeansReport rep;
  rep.degree = n;
  rep.arithmetic_mean = symmetric_mean(p, 1);
  for (int m : ms) {
    if (m < 1) throw std::domain_error("means_report requires mean orders >= 1");
    if (m <= n) rep.symmetric.emplace_back(m, symmetric_mean(p, m));
    rep.power_sum.emplace_back(m, power_sum_mean(p, m));
  }
  rep.maclaurin.resize(static_cast<std::size_t>(n));
  for (int m = 1; m <= n; ++m) {
    zrat sm = symmetric_mean(p, m);
    double v = sm.convert_to<double>();
    rep.maclaurin[static_cast<std::size_t>(m - 1)] =
        v < 0 ? std::numeric_limits<double>::quiet_NaN() : std::pow(v, 1.0 / double(m));
  }
  return rep;
}

}  // namespace trace_atlas
