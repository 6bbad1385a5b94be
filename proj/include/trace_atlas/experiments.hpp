#pragma once

#include "trace_atlas/int_polynomial.hpp"
#include "trace_atlas/means.hpp"
#include "trace_atlas/potential.hpp"
#include "trace_atlas/root_finding.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace trace_atlas {

// Root multiset -> probability measure with equal weights 1/n.
inline CountingMeasure counting_measure(const RootMultiset& rm) {
  if (rm.roots.empty()) throw std::domain_error("counting_measure requires at least one root");
  CountingMeasure mu;
  const double w = 1.0 / double(rm.roots.size());
  for (const auto& z : rm.roots) mu.atoms.push_back({z, w});
  mu.total_mass = 1.0;
  mu.source = rm.source;
  return mu;
}

// CDF of the equilibrium measure of a real interval (arcsine law).
inline double arcsine_cdf(const CompactSetModel& set, double x) {
  if (set.kind != CompactSetModel::Kind::interval)
    throw std::domain_error("arcsine_cdf requires an interval model");
  double u = (set.a + set.b - 2.0 * x) / (set.b - set.a);
  u = std::clamp(u, -1.0, 1.0);
  return std::acos(u) / std::acos(-1.0);
}

struct WeakStarReport {
  int atom_count = 0;
  double ks = 0;                              // sup-distance of CDFs
  std::array<double, 4> moment_gap{};         // m = 1..4
  double R = 0;                               // window radius (filled by callers)
  double mass_R = 0;                          // measure of |z| <= R (filled by callers)
};

// Kolmogorov-Smirnov distance between an atomic measure on the line and the
// equilibrium measure of an interval, plus the first four moment gaps.
// Exact coefficient power sums are used for the moments whenever the measure
// remembers its source polynomial.
inline WeakStarReport weakstar_distance(const CountingMeasure& mu, const CompactSetModel& set) {
  if (set.kind != CompactSetModel::Kind::interval)
    throw std::domain_error("weakstar_distance requires an interval model");
  if (mu.atoms.empty()) throw std::domain_error("weakstar_distance requires atoms");
  std::vector<std::pair<double, double>> xs;  // (location, weight)
  for (const auto& a : mu.atoms) {
    if (std::fabs(a.z.imag()) > 1e-9)
      throw std::domain_error("weakstar_distance: non-real atom");
    xs.emplace_back(a.z.real(), a.w);
  }
  std::sort(xs.begin(), xs.end());
  WeakStarReport rep;
  rep.atom_count = static_cast<int>(xs.size());
  double total = 0;
  for (const auto& [x, w] : xs) total += w;
  double cum = 0, ks = std::fabs(1.0 - total);
  for (std::size_t i = 0; i < xs.size();) {
    std::size_t j = i;
    double jump = 0;
    while (j < xs.size() && xs[j].first == xs[i].first) jump += xs[j++].second;
    double F = arcsine_cdf(set, xs[i].first);
    ks = std::max({ks, std::fabs(F - cum), std::fabs(F - (cum + jump))});
    cum += jump;
    i = j;
  }
  rep.ks = ks;
  const bool exact = mu.source.degree() >= 1 &&
                     mu.source.degree() == static_cast<int>(mu.atoms.size());
  for (int m = 1; m <= 4; ++m) {
    double mom;
    if (exact) {
      mom = power_sum_mean(mu.source, m).convert_to<double>();
    } else {
      mom = 0;
      for (const auto& [x, w] : xs) mom += w * std::pow(x, m);
      if (total > 0) mom /= total;
    }
    rep.moment_gap[static_cast<std::size_t>(m - 1)] =
        std::fabs(mom - equilibrium_moment(set, m));
  }
  return rep;
}

// z^p - p! .
inline IntPolynomial escaping_family(int p) {
  if (p < 2) throw std::domain_error("escaping_family requires p >= 2");
  zint fact = 1;
  for (int i = 2; i <= p; ++i) fact *= i;
  std::vector<zint> c(static_cast<std::size_t>(p) + 1);
  c[0] = -fact;
  c[static_cast<std::size_t>(p)] = 1;
  return IntPolynomial(std::move(c));
}

// Replace each atom by floor(w * L) points of weight 1/L spread on a small
// circle around it, preserving conjugate symmetry exactly: a real atom gets
// the symmetric angle set pi(2i+1)/k, and a conjugate pair gets angles
// 2 pi i / k upstairs with the mirror images downstairs.  The circle radius
// is 2^{-20} (1 + |z|), shrunk to a quarter of the nearest-atom distance.
// Atoms too light to earn a point are dropped (mass deficit < atoms / L).
inline CountingMeasure discretize_measure(const CountingMeasure& mu, long L) {
  if (L < 1) throw std::domain_error("discretize_measure requires L >= 1");
  if (mu.atoms.empty()) return {};  // zero measure discretizes to itself
  const double tol = 1e-9;
  const std::size_t n = mu.atoms.size();
  std::vector<int> partner(n, -1);  // index of conjugate partner; -2 = treat as real
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = mu.atoms[i];
    if (std::fabs(a.z.imag()) <= tol) {
      partner[i] = -2;
      continue;
    }
    if (partner[i] >= 0) continue;
    if (a.z.imag() < 0) continue;  // matched from the upper twin
    bool found = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || partner[j] != -1) continue;
      const auto& b = mu.atoms[j];
      if (b.z.imag() >= -tol) continue;
      if (std::abs(std::conj(a.z) - b.z) <= tol && std::fabs(a.w - b.w) <= 1e-12) {
        partner[i] = static_cast<int>(j);
        partner[j] = static_cast<int>(i);
        found = true;
        break;
      }
    }
    if (!found)
      throw std::domain_error("discretize_measure: atom list is not conjugate-symmetric");
  }
  for (std::size_t i = 0; i < n; ++i)
    if (partner[i] == -1 && mu.atoms[i].z.imag() < 0)
      throw std::domain_error("discretize_measure: atom list is not conjugate-symmetric");

  std::vector<double> neardist(n, 1e300);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = std::abs(mu.atoms[i].z - mu.atoms[j].z);
      if (d == 0.0)
        throw std::domain_error("discretize_measure: coincident atoms");
      neardist[i] = std::min(neardist[i], d);
      neardist[j] = std::min(neardist[j], d);
    }

  const double pi = std::acos(-1.0);
  CountingMeasure out;
  auto ring_radius = [&](std::size_t i) {
    double rho = std::exp2(-20.0) * (1.0 + std::abs(mu.atoms[i].z));
    if (n > 1) rho = std::min(rho, 0.25 * neardist[i]);
    return rho;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = mu.atoms[i];
    if (partner[i] >= 0 && a.z.imag() < 0) continue;  // emitted with the upper twin
    long k = static_cast<long>(std::floor(a.w * double(L) * (1.0 + 4e-16)));
    if (k < 1) continue;
    double rho = ring_radius(i);
    if (partner[i] == -2) {
      std::complex<double> c{a.z.real(), 0.0};
      for (long q = 0; q < k; ++q) {
        long m = 2 * q + 1;
        if (m > k) break;  // mirrors of earlier points
        double th = pi * double(m) / double(k);
        std::complex<double> pt =
            c + rho * std::complex<double>(std::cos(th), std::sin(th));
        if (m == k) {
          out.atoms.push_back({{c.real() - rho, 0.0}, 1.0 / double(L)});
        } else {
          out.atoms.push_back({pt, 1.0 / double(L)});
          out.atoms.push_back({std::conj(pt), 1.0 / double(L)});
        }
      }
    } else {
      for (long q = 0; q < k; ++q) {
        double th = 2.0 * pi * double(q) / double(k);
        std::complex<double> d = rho * std::complex<double>(std::cos(th), std::sin(th));
        out.atoms.push_back({a.z + d, 1.0 / double(L)});
        out.atoms.push_back({std::conj(a.z + d), 1.0 / double(L)});
      }
    }
  }
  for (const auto& a : out.atoms) out.total_mass += a.w;
  return out;
}

}  // namespace trace_atlas
