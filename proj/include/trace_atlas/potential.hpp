#pragma once

#include "trace_atlas/int_polynomial.hpp"
#include "trace_atlas/parallel.hpp"
#include "trace_atlas/root_finding.hpp"

#include <cctype>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trace_atlas {

// Closed disk or closed real interval, the two compact sets the toolkit
// models.  Capacity: r for a disk, (b - a)/4 for an interval.
struct CompactSetModel {
  enum class Kind { disk, interval };
  Kind kind = Kind::disk;
  std::complex<double> center{0, 0};
  double radius = 1;
  double a = 0, b = 0;

  static CompactSetModel make_disk(std::complex<double> c, double r) {
    if (!(r > 0)) throw std::domain_error("disk radius must be positive");
    CompactSetModel s;
    s.kind = Kind::disk;
    s.center = c;
    s.radius = r;
    return s;
  }
  static CompactSetModel make_interval(double a, double b) {
    if (!(a < b)) throw std::domain_error("interval needs a < b");
    CompactSetModel s;
    s.kind = Kind::interval;
    s.a = a;
    s.b = b;
    return s;
  }
  double capacity() const {
    return kind == Kind::disk ? radius : (b - a) / 4.0;
  }
  std::string str() const {
    std::ostringstream os;
    if (kind == Kind::disk)
      os << "disk:" << center.real() << ',' << center.imag() << ',' << radius;
    else
      os << "interval:" << a << ',' << b;
    return os.str();
  }
};

// "disk:cx,cy,r" or "interval:a,b".
inline CompactSetModel parse_set_model(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("set model needs the form disk:cx,cy,r or interval:a,b");
  std::string head = text.substr(0, colon);
  std::vector<double> nums;
  {
    std::string rest = text.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      auto comma = rest.find(',', pos);
      std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                                    : comma - pos);
      std::size_t used = 0;
      double v;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("set model: bad number '" + tok + "'");
      }
      while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
      if (used != tok.size()) throw std::invalid_argument("set model: bad number '" + tok + "'");
      nums.push_back(v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (head == "disk") {
    if (nums.size() != 3) throw std::invalid_argument("disk model needs cx,cy,r");
    return CompactSetModel::make_disk({nums[0], nums[1]}, nums[2]);
  }
  if (head == "interval") {
    if (nums.size() != 2) throw std::invalid_argument("interval model needs a,b");
    return CompactSetModel::make_interval(nums[0], nums[1]);
  }
  throw std::invalid_argument("unknown set model '" + head + "'");
}

// Green function with pole at infinity.  Zero on the set, positive outside,
// log|z| - log(capacity) + o(1) at infinity.
inline double green(const CompactSetModel& set, std::complex<double> z) {
  if (set.kind == CompactSetModel::Kind::disk) {
    double d = std::abs(z - set.center);
    return d <= set.radius ? 0.0 : std::log(d / set.radius);
  }
  // Map [a,b] to [-1,1]; the principal square roots pick |w + sqrt(w^2-1)| >= 1.
  std::complex<double> w = (2.0 * z - (set.a + set.b)) / (set.b - set.a);
  std::complex<double> val = w + std::sqrt(w - 1.0) * std::sqrt(w + 1.0);
  double g = std::log(std::abs(val));
  return g > 0 ? g : 0.0;
}

struct Measured {
  double value = 0;
  double error = 0;
};

namespace detail {

// log2 |v| for v != 0, accurate to ~1 ulp even when v overflows double.
inline double log2_zint(const zint& v) {
  zint a = abs(v);
  unsigned long bits = msb(a);
  if (bits <= 52) return std::log2(a.convert_to<double>());
  zint top = a >> (bits - 52);
  return std::log2(top.convert_to<double>()) + double(bits - 52);
}

struct MahlerLog {
  double log2_value = 0;
  double log2_error = 0;  // additive error bound on log2_value
};

inline MahlerLog mahler_log(const IntPolynomial& p, const RootMultiset& rm) {
  if (p.degree() < 1) throw std::domain_error("mahler requires degree >= 1");
  if (rm.roots.size() != static_cast<std::size_t>(p.degree()))
    throw std::domain_error("mahler: root count does not match the degree");
  MahlerLog out;
  out.log2_value = log2_zint(p.leading());
  const double inv_ln2 = 1.0 / std::log(2.0);
  for (std::size_t i = 0; i < rm.roots.size(); ++i) {
    double mod = std::abs(rm.roots[i]);
    double r = rm.radii[i];
    if (mod + r <= 1.0) continue;           // certainly inside the unit disk
    if (mod - r >= 1.0) {                   // certainly outside
      out.log2_value += std::log(mod) * inv_ln2;
      out.log2_error += (r / std::max(mod - r, 1e-300)) * inv_ln2 + 4e-16;
    } else {                                // disk straddles the unit circle
      out.log2_error += std::log1p(std::max(0.0, mod + r - 1.0)) * inv_ln2 + 4e-16;
    }
  }
  return out;
}

}  // namespace detail

// M(P) = |a_n| * prod max(1, |alpha_k|), with the error bar propagated from
// the certified root radii.
inline Measured mahler(const IntPolynomial& p, const RootMultiset& rm) {
  auto ml = detail::mahler_log(p, rm);
  Measured out;
  out.value = std::exp2(ml.log2_value);
  out.error = out.value * (std::exp2(ml.log2_error) - 1.0);
  return out;
}

// M_E(P) = |a_n| * exp(sum g_E(alpha_k)).  E must have capacity 1 unless the
// caller opts out of the check.  Root disks certified inside E contribute an
// exact zero, so polynomials with all roots on E report exactly |a_n|.
inline Measured generalized_mahler(const IntPolynomial& p, const RootMultiset& rm,
                                   const CompactSetModel& set,
                                   bool require_capacity_one = true) {
  if (p.degree() < 1) throw std::domain_error("generalized_mahler requires degree >= 1");
  if (rm.roots.size() != static_cast<std::size_t>(p.degree()))
    throw std::domain_error("generalized_mahler: root count does not match the degree");
  if (require_capacity_one && std::fabs(set.capacity() - 1.0) > 1e-9)
    throw std::domain_error("generalized_mahler requires a capacity-one set (got capacity " +
                            std::to_string(set.capacity()) + ")");
  double sum_g = 0, err_g = 0;
  for (std::size_t i = 0; i < rm.roots.size(); ++i) {
    const std::complex<double> z = rm.roots[i];
    const double r = rm.radii[i];
    if (set.kind == CompactSetModel::Kind::disk) {
      double d = std::abs(z - set.center);
      if (d + r <= set.radius) continue;          // inside: exact zero
      if (d - r > set.radius) {
        sum_g += std::log((d) / set.radius);
        err_g += r / (d - r);
      } else {
        err_g += std::log((d + r) / set.radius);  // straddle: value in [0, err]
      }
    } else {
      bool real_atom = z.imag() == 0.0;
      if (real_atom && z.real() - r >= set.a && z.real() + r <= set.b)
        continue;                                  // inside: exact zero
      double g0 = green(set, z);
      bool straddle = real_atom && z.real() + r > set.a && z.real() - r < set.b;
      if (straddle) {
        double reach = std::max(green(set, {set.a - r, 0.0}), green(set, {set.b + r, 0.0}));
        err_g += reach;
      } else {
        sum_g += g0;
        double spread = 0;
        const std::complex<double> probes[4] = {{r, 0}, {-r, 0}, {0, r}, {0, -r}};
        for (auto dz : probes)
          spread = std::max(spread, std::fabs(green(set, z + dz) - g0));
        err_g += spread * 1.2 + 4e-16 * (1 + std::fabs(g0));
      }
    }
  }
  const double log2e = std::log2(std::exp(1.0));
  double lg2 = detail::log2_zint(p.leading()) + sum_g * log2e;
  Measured out;
  out.value = std::exp2(lg2);
  out.error = out.value * (std::exp(err_g) - 1.0);
  return out;
}

// m-th moment of the equilibrium measure.  Interval: arcsine law, closed form
// via (1/pi) int_0^pi cos^k = C(k, k/2) / 2^k.  Disk: uniform on the circle,
// Re(c^m).  For [0, 4] the result is the central binomial C(2m, m), exactly.
inline double equilibrium_moment(const CompactSetModel& set, int m) {
  if (m < 0) throw std::domain_error("equilibrium_moment requires m >= 0");
  if (m == 0) return 1.0;
  if (set.kind == CompactSetModel::Kind::disk) {
    std::complex<double> acc{1, 0};
    for (int i = 0; i < m; ++i) acc *= set.center;
    return acc.real();
  }
  const double c = (set.a + set.b) / 2.0, h = (set.b - set.a) / 2.0;
  double total = 0;
  for (int k = 0; k <= m; k += 2) {
    // C(m,k) * c^{m-k} * h^k * C(k, k/2) / 2^k
    double term = 1;
    for (int i = 0; i < k; ++i) term = term * double(m - i) / double(i + 1);
    term *= std::pow(c, m - k) * std::pow(h, k);
    double cb = 1;
    for (int i = 0; i < k / 2; ++i) cb = cb * double(k - i) / double(i + 1);
    term *= cb / std::exp2(double(k));
    total += term;
  }
  return total;
}

// Finite positive measure given by weighted atoms.  `source` is the
// polynomial whose roots the atoms are, when known (degree -1 otherwise);
// exact-coefficient paths use it instead of the float locations.
struct CountingMeasure {
  struct Atom {
    std::complex<double> z;
    double w = 0;
  };
  std::vector<Atom> atoms;
  double total_mass = 0;
  IntPolynomial source;
};

inline double logplus_mass(const CountingMeasure& mu) {
  double acc = 0;
  for (const auto& a : mu.atoms) {
    double mod = std::abs(a.z);
    if (mod > 1.0) acc += a.w * std::log(mod);
  }
  return acc;
}

inline double measure_mass_in_disk(const CountingMeasure& mu, double R) {
  double acc = 0;
  for (const auto& a : mu.atoms)
    if (std::abs(a.z) <= R) acc += a.w;
  return acc;
}

// Pair energy sum_{j<k} 2 w_j w_k (-log|z_j - z_k|) over atoms inside the
// closed disk of radius R.  Atoms within 1e-9 of the cutoff circle are
// rejected (the truncation would be unstable); coincident atoms are rejected
// (the energy is +infinity).  Block-parallel with a sequential merge, so the
// result is bit-identical for every thread count.
inline double discrete_energy(const CountingMeasure& mu, double R) {
  if (!(R > 0)) throw std::domain_error("discrete_energy requires R > 0");
  std::vector<CountingMeasure::Atom> in;
  in.reserve(mu.atoms.size());
  for (const auto& a : mu.atoms) {
    double mod = std::abs(a.z);
    if (std::fabs(mod - R) <= 1e-9)
      throw std::domain_error("discrete_energy: atom on the cutoff circle |z| = R");
    if (mod < R) in.push_back(a);
  }
  const std::size_t n = in.size();
  if (n < 2) return 0.0;
  auto partials = map_blocks<double>(n, 16, [&](std::size_t j0, std::size_t j1) {
    double acc = 0;
    for (std::size_t j = j0; j < j1; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        double d = std::abs(in[j].z - in[k].z);
        if (d == 0.0)
          throw std::domain_error("discrete_energy: coincident atoms give infinite energy");
        acc += 2.0 * in[j].w * in[k].w * (-std::log(d));
      }
    return acc;
  });
  double total = 0;
  for (double v : partials) total += v;
  return total;
}

// First-order bound on how far the pair energy of the root counting measure
// can move when every root is perturbed within its certification radius.
inline double discrete_energy_error(const RootMultiset& rm, double R) {
  if (!(R > 0)) throw std::domain_error("discrete_energy_error requires R > 0");
  std::vector<std::size_t> in;
  for (std::size_t i = 0; i < rm.roots.size(); ++i)
    if (std::abs(rm.roots[i]) < R) in.push_back(i);
  const double n = double(rm.roots.size());
  if (n < 1 || in.size() < 2) return 0.0;
  double acc = 0;
  for (std::size_t a = 0; a < in.size(); ++a)
    for (std::size_t b = a + 1; b < in.size(); ++b) {
      std::size_t j = in[a], k = in[b];
      double d = std::abs(rm.roots[j] - rm.roots[k]);
      double rr = rm.radii[j] + rm.radii[k];
      double gap = std::max(d - rr, 1e-300);
      acc += (2.0 / (n * n)) * (rr / gap + 4e-16 * (1 + std::fabs(std::log(d))));
    }
  return acc;
}

struct EnergySandwich {
  double height = 0;    // H = max over members of M(P)^{1/deg P}
  double tau = 0;       // root mass of the last member inside |z| <= R
  double energy = 0;    // truncated pair energy of the last member
  double lower = 0;     // -log 2 - 2 tau log H
  double upper = 0;     // (1 - tau) log 4 + 2 log H
  bool holds = false;
};

// Energy bounds for a family with uniformly bounded Mahler height.  The
// bracket is evaluated on the last (largest-degree) member.
inline EnergySandwich energy_sandwich(
    const std::vector<std::pair<IntPolynomial, RootMultiset>>& members, double R) {
  if (members.empty()) throw std::domain_error("energy_sandwich requires at least one member");
  if (!(R > 1)) throw std::domain_error("energy_sandwich requires R > 1");
  EnergySandwich out;
  double max_lg2 = 0;
  for (const auto& [p, rm] : members) {
    auto ml = detail::mahler_log(p, rm);
    max_lg2 = std::max(max_lg2, (ml.log2_value + ml.log2_error) / double(p.degree()));
  }
  out.height = std::exp2(max_lg2);
  const double logH = max_lg2 * std::log(2.0);

  const auto& [lp, lrm] = members.back();
  const double n = double(lp.degree());
  CountingMeasure mu;
  for (std::size_t i = 0; i < lrm.roots.size(); ++i)
    mu.atoms.push_back({lrm.roots[i], 1.0 / n});
  mu.total_mass = 1.0;
  out.tau = measure_mass_in_disk(mu, R);
  out.energy = discrete_energy(mu, R);
  out.lower = -std::log(2.0) - 2.0 * out.tau * logH;
  out.upper = (1.0 - out.tau) * std::log(4.0) + 2.0 * logH;
  out.holds = out.lower - 1e-9 <= out.energy && out.energy <= out.upper + 1e-9;
  return out;
}

}  // namespace trace_atlas
