#pragma once

#include "trace_atlas/int_polynomial.hpp"
#include "trace_atlas/sturm.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trace_atlas {

// Certified complex roots of an integer polynomial.  Real roots carry an
// exactly-zero imaginary part; non-real roots come in exactly conjugate
// (re, +/-im) pairs.  Every true root of `source` lies within `radii[k]`
// of `roots[k]`, one root per entry counted with multiplicity.
struct RootMultiset {
  std::vector<std::complex<double>> roots;  // sorted by (re, im) ascending
  std::vector<double> radii;
  IntPolynomial source;
};

struct convergence_error : std::runtime_error {
  double achieved_radius;
  explicit convergence_error(double r)
      : std::runtime_error("root certification failed; achieved radius " + std::to_string(r)),
        achieved_radius(r) {}
};

namespace detail {

// value = mant * 2^ex with mant in [1,2); poor man's extended-exponent double
// for magnitude bookkeeping (no rounding guarantees needed, only ~1e-12).
struct dfloat {
  double mant = 0;
  long ex = 0;

  static dfloat from(double v) {
    if (v == 0) return {};
    int e;
    double m = std::frexp(std::fabs(v), &e);
    return {m * 2, e - 1};
  }
  double log2val() const { return mant == 0 ? -1e300 : std::log2(mant) + double(ex); }
  double to_double() const {
    if (mant == 0) return 0;
    if (ex > 1020) return 1e308 * 10;  // +inf
    if (ex < -1060) return 0;
    return std::ldexp(mant, int(ex));
  }
};

inline dfloat dmul(dfloat a, dfloat b) {
  if (a.mant == 0 || b.mant == 0) return {};
  dfloat r{a.mant * b.mant, a.ex + b.ex};
  if (r.mant >= 2) {
    r.mant *= 0.5;
    r.ex += 1;
  }
  return r;
}

inline dfloat dadd(dfloat a, dfloat b) {
  if (a.mant == 0) return b;
  if (b.mant == 0) return a;
  if (b.ex > a.ex) std::swap(a, b);
  long d = a.ex - b.ex;
  dfloat r{a.mant + (d > 60 ? 0.0 : std::ldexp(b.mant, -int(d))), a.ex};
  while (r.mant >= 2) {
    r.mant *= 0.5;
    r.ex += 1;
  }
  return r;
}

inline double lg2abs(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return -1e300;
  long e;
  double m = mpfr_get_d_2exp(&e, x, MPFR_RNDN);
  return std::log2(std::fabs(m)) + double(e);
}

// Fixed-precision mpfr workspace vector (mpfr_t is an array type and does
// not sit well in std::vector directly).
class mp_vec {
 public:
  mp_vec() = default;
  mp_vec(std::size_t n, mpfr_prec_t prec) { init(n, prec); }
  ~mp_vec() { clear(); }
  mp_vec(const mp_vec&) = delete;
  mp_vec& operator=(const mp_vec&) = delete;

  void init(std::size_t n, mpfr_prec_t prec) {
    clear();
    s_.resize(n);
    for (auto& x : s_) mpfr_init2(&x, prec);
  }
  void clear() {
    for (auto& x : s_) mpfr_clear(&x);
    s_.clear();
  }
  mpfr_ptr operator[](std::size_t i) { return &s_[i]; }
  mpfr_srcptr operator[](std::size_t i) const { return &s_[i]; }
  std::size_t size() const { return s_.size(); }

 private:
  std::vector<__mpfr_struct> s_;
};

struct aberth_result {
  std::vector<std::complex<double>> z;
  std::vector<double> radius;   // certified Weierstrass radius per point
  bool converged = false;
};

// Simultaneous-iteration kernel on a squarefree integer polynomial with
// nonzero constant term.  Deterministic: Newton-polygon starting moduli,
// near-axis alternating angles, Gauss-Seidel sweeps, one thread.
inline aberth_result aberth_certified(const std::vector<zint>& coeff, mpfr_prec_t prec,
                                      double eps_freeze, int max_sweeps) {
  const int n = int(coeff.size()) - 1;
  aberth_result out;
  out.z.resize(n);
  out.radius.assign(n, 1e300);

  mp_vec a(n + 1, prec);
  std::vector<dfloat> aabs(n + 1);
  for (int k = 0; k <= n; ++k) {
    mpfr_set_str(a[k], coeff[k].str().c_str(), 10, MPFR_RNDN);  // exact: msb << prec
    if (coeff[k] == 0) {
      aabs[k] = {};
    } else {
      aabs[k] = {1.9999, long(msb(abs(coeff[k])))};
      double d = std::fabs(mpfr_get_d(a[k], MPFR_RNDN));
      if (d > 0 && d < 1e300) aabs[k] = dfloat::from(d);
    }
  }

  // Newton polygon: upper convex hull of (k, log2 |a_k|).
  std::vector<double> lg(n + 1);
  for (int k = 0; k <= n; ++k)
    lg[k] = coeff[k] == 0 ? -1e300 : double(msb(abs(coeff[k])));
  std::vector<int> hull;
  for (int k = 0; k <= n; ++k) {
    if (lg[k] < -1e200) continue;
    while (hull.size() >= 2) {
      int i = hull[hull.size() - 2], j = hull.back();
      if ((lg[j] - lg[i]) * (k - j) <= (lg[k] - lg[j]) * (j - i))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(k);
  }

  mp_vec zr(n, prec), zi(n, prec);
  {
    int idx = 0;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
      int k1 = hull[h], k2 = hull[h + 1];
      int m = k2 - k1;
      double r = std::exp2((lg[k1] - lg[k2]) / m);
      for (int i = 0; i < m; ++i, ++idx) {
        double th = (idx % 2 ? -1 : 1) * (0.10 + 0.017 * (idx % 5));
        mpfr_set_d(zr[idx], r * std::cos(th), MPFR_RNDN);
        mpfr_set_d(zi[idx], r * std::sin(th), MPFR_RNDN);
      }
    }
  }

  mp_vec w(16, prec);
  mpfr_ptr pr = w[0], pi = w[1], dr = w[2], di = w[3], t1 = w[4], t2 = w[5], t3 = w[6],
           t4 = w[7], den = w[8], c1 = w[9], c2 = w[10], sr = w[11], si = w[12];

  std::vector<std::complex<double>> zd(n);
  auto sync = [&](int i) {
    zd[i] = {mpfr_get_d(zr[i], MPFR_RNDN), mpfr_get_d(zi[i], MPFR_RNDN)};
  };
  for (int i = 0; i < n; ++i) sync(i);

  const double log2floor = -double(prec) + std::log2(4.0 * std::max(n, 2));
  std::vector<char> done(n, 0);
  bool all_done = false;
  for (int sweep = 0; sweep < max_sweeps && !all_done; ++sweep) {
    int ndone = 0;
    for (int i = 0; i < n; ++i) {
      if (done[i]) {
        ++ndone;
        continue;
      }
      // Horner chains for P, P' at full precision; magnitude chain alongside.
      mpfr_set(pr, a[n], MPFR_RNDN);
      mpfr_set_ui(pi, 0, MPFR_RNDN);
      mpfr_set_ui(dr, 0, MPFR_RNDN);
      mpfr_set_ui(di, 0, MPFR_RNDN);
      dfloat az = dfloat::from(std::abs(zd[i]));
      dfloat s = aabs[n];
      for (int k = n - 1; k >= 0; --k) {
        mpfr_mul(t1, dr, zr[i], MPFR_RNDN);
        mpfr_mul(t2, di, zi[i], MPFR_RNDN);
        mpfr_mul(t3, dr, zi[i], MPFR_RNDN);
        mpfr_mul(t4, di, zr[i], MPFR_RNDN);
        mpfr_sub(dr, t1, t2, MPFR_RNDN);
        mpfr_add(dr, dr, pr, MPFR_RNDN);
        mpfr_add(di, t3, t4, MPFR_RNDN);
        mpfr_add(di, di, pi, MPFR_RNDN);
        mpfr_mul(t1, pr, zr[i], MPFR_RNDN);
        mpfr_mul(t2, pi, zi[i], MPFR_RNDN);
        mpfr_mul(t3, pr, zi[i], MPFR_RNDN);
        mpfr_mul(t4, pi, zr[i], MPFR_RNDN);
        mpfr_sub(pr, t1, t2, MPFR_RNDN);
        mpfr_add(pr, pr, a[k], MPFR_RNDN);
        mpfr_add(pi, t3, t4, MPFR_RNDN);
        s = dadd(dmul(s, az), aabs[k]);
      }
      // Converged when |P| sits at the evaluation noise floor.
      double lp = std::max(lg2abs(pr), lg2abs(pi));
      if (lp <= s.log2val() + log2floor) {
        done[i] = 1;
        continue;
      }
      // N = P / P'
      mpfr_mul(t1, dr, dr, MPFR_RNDN);
      mpfr_mul(t2, di, di, MPFR_RNDN);
      mpfr_add(den, t1, t2, MPFR_RNDN);
      if (mpfr_zero_p(den)) {  // saddle hit; nudge off-axis
        mpfr_add_d(zi[i], zi[i], 0.25 + 0.5 * std::abs(zd[i]), MPFR_RNDN);
        sync(i);
        continue;
      }
      mpfr_mul(t1, pr, dr, MPFR_RNDN);
      mpfr_mul(t2, pi, di, MPFR_RNDN);
      mpfr_add(t1, t1, t2, MPFR_RNDN);
      mpfr_div(c1, t1, den, MPFR_RNDN);
      mpfr_mul(t1, pi, dr, MPFR_RNDN);
      mpfr_mul(t2, pr, di, MPFR_RNDN);
      mpfr_sub(t1, t1, t2, MPFR_RNDN);
      mpfr_div(c2, t1, den, MPFR_RNDN);
      // Repulsion sum in double; exact fallback only if a pair collapses
      // below double range.
      std::complex<double> S = 0;
      bool fallback = false;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        std::complex<double> d = zd[i] - zd[j];
        double m2 = std::norm(d);
        if (!(m2 > 1e-280)) {
          fallback = true;
          break;
        }
        S += std::conj(d) / m2;
      }
      if (fallback) {
        mpfr_set_ui(sr, 0, MPFR_RNDN);
        mpfr_set_ui(si, 0, MPFR_RNDN);
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          mpfr_sub(t1, zr[i], zr[j], MPFR_RNDN);
          mpfr_sub(t2, zi[i], zi[j], MPFR_RNDN);
          mpfr_mul(t3, t1, t1, MPFR_RNDN);
          mpfr_mul(t4, t2, t2, MPFR_RNDN);
          mpfr_add(den, t3, t4, MPFR_RNDN);
          if (mpfr_zero_p(den)) continue;
          mpfr_div(t1, t1, den, MPFR_RNDN);
          mpfr_div(t2, t2, den, MPFR_RNDN);
          mpfr_add(sr, sr, t1, MPFR_RNDN);
          mpfr_sub(si, si, t2, MPFR_RNDN);
        }
        S = {mpfr_get_d(sr, MPFR_RNDN), mpfr_get_d(si, MPFR_RNDN)};
      }
      // corr = N / (1 - N*S); the damping factor needs only a few digits.
      std::complex<double> Nd = {mpfr_get_d(c1, MPFR_RNDN), mpfr_get_d(c2, MPFR_RNDN)};
      std::complex<double> q = 1.0 - Nd * S;
      double qn = std::norm(q);
      std::complex<double> qinv = qn > 1e-280 ? std::conj(q) / qn : std::complex<double>(1, 0);
      mpfr_mul_d(t1, c1, qinv.real(), MPFR_RNDN);
      mpfr_mul_d(t2, c2, qinv.imag(), MPFR_RNDN);
      mpfr_sub(t1, t1, t2, MPFR_RNDN);
      mpfr_mul_d(t3, c1, qinv.imag(), MPFR_RNDN);
      mpfr_mul_d(t4, c2, qinv.real(), MPFR_RNDN);
      mpfr_add(t3, t3, t4, MPFR_RNDN);
      mpfr_sub(zr[i], zr[i], t1, MPFR_RNDN);
      mpfr_sub(zi[i], zi[i], t3, MPFR_RNDN);
      sync(i);
      double cmag = std::hypot(mpfr_get_d(t1, MPFR_RNDN), mpfr_get_d(t3, MPFR_RNDN));
      if (cmag <= eps_freeze * std::max(1.0, std::abs(zd[i]))) done[i] = 1;
    }
    all_done = ndone == n;
  }

  // Certification pass: Weierstrass disks r_i = n |P(z_i)| / (|a_n| prod |z_i - z_j|),
  // with |P(z_i)| floored at the evaluation noise and a small multiplicative pad.
  double lgan = lg2abs(a[n]);
  for (int i = 0; i < n; ++i) {
    mpfr_set(pr, a[n], MPFR_RNDN);
    mpfr_set_ui(pi, 0, MPFR_RNDN);
    dfloat az = dfloat::from(std::abs(zd[i]));
    dfloat s = aabs[n];
    for (int k = n - 1; k >= 0; --k) {
      mpfr_mul(t1, pr, zr[i], MPFR_RNDN);
      mpfr_mul(t2, pi, zi[i], MPFR_RNDN);
      mpfr_mul(t3, pr, zi[i], MPFR_RNDN);
      mpfr_mul(t4, pi, zr[i], MPFR_RNDN);
      mpfr_sub(pr, t1, t2, MPFR_RNDN);
      mpfr_add(pr, pr, a[k], MPFR_RNDN);
      mpfr_add(pi, t3, t4, MPFR_RNDN);
      s = dadd(dmul(s, az), aabs[k]);
    }
    double lprod = 0;
    bool coincident = false;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      mpfr_sub(t1, zr[i], zr[j], MPFR_RNDN);
      mpfr_sub(t2, zi[i], zi[j], MPFR_RNDN);
      mpfr_mul(t3, t1, t1, MPFR_RNDN);
      mpfr_mul(t4, t2, t2, MPFR_RNDN);
      mpfr_add(den, t3, t4, MPFR_RNDN);
      if (mpfr_zero_p(den)) {
        coincident = true;
        break;
      }
      lprod += 0.5 * lg2abs(den);
    }
    if (coincident) {
      out.radius[i] = 1e300;
      continue;
    }
    mpfr_mul(t1, pr, pr, MPFR_RNDN);
    mpfr_mul(t2, pi, pi, MPFR_RNDN);
    mpfr_add(t1, t1, t2, MPFR_RNDN);
    double lp = mpfr_zero_p(t1) ? -1e300 : 0.5 * lg2abs(t1);
    double lnoise = s.log2val() - double(prec) + std::log2(8.0 * std::max(n, 2));
    double lrad = std::log2(double(n)) + std::max(lp, lnoise) - lprod - lgan + 0.05;
    out.radius[i] = lrad > 1000 ? 1e300 : std::exp2(lrad);
    out.z[i] = zd[i];
  }
  out.converged = all_done;
  return out;
}

struct classified_roots {
  std::vector<double> reals;                      // centers, radii parallel
  std::vector<double> real_radii;
  std::vector<std::complex<double>> upper;        // one per conjugate pair, im > 0
  std::vector<double> pair_radii;
  bool ok = false;                                // certification + classification succeeded
};

// Disjointness + mirror-disk real/non-real classification of certified disks.
inline classified_roots classify_disks(const aberth_result& res, double eps) {
  classified_roots cl;
  const int n = int(res.z.size());
  for (int i = 0; i < n; ++i)
    if (!(res.radius[i] <= eps)) return cl;
  auto pad = [](double d) { return d * 1.0000001 + 1e-290; };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double dist = std::abs(res.z[i] - res.z[j]) * (1 - 1e-13);
      if (!(dist > pad(res.radius[i] + res.radius[j]))) return cl;
    }
  std::vector<int> kind(n, 0);  // 1 real, 2 upper, 3 lower
  for (int i = 0; i < n; ++i) {
    double im = res.z[i].imag(), r = res.radius[i];
    if (std::fabs(im) > pad(r)) {
      kind[i] = im > 0 ? 2 : 3;
      continue;
    }
    std::complex<double> mirror = std::conj(res.z[i]);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double dist = std::abs(mirror - res.z[j]) * (1 - 1e-13);
      if (!(dist > pad(res.radius[i] + res.radius[j]))) return cl;  // ambiguous
    }
    kind[i] = 1;
  }
  // Pair upper/lower via mirror containment; must match one-to-one.
  std::vector<int> partner(n, -1);
  for (int i = 0; i < n; ++i) {
    if (kind[i] != 2) continue;
    std::complex<double> mirror = std::conj(res.z[i]);
    int hit = -1;
    for (int j = 0; j < n; ++j) {
      if (kind[j] != 3) continue;
      double dist = std::abs(mirror - res.z[j]) * (1 - 1e-13);
      if (!(dist > pad(res.radius[i] + res.radius[j]))) {
        if (hit >= 0) return cl;
        hit = j;
      }
    }
    if (hit < 0 || partner[hit] >= 0) return cl;
    partner[hit] = i;
    cl.upper.push_back({res.z[i].real(), std::fabs(res.z[i].imag())});
    cl.pair_radii.push_back(std::max(res.radius[i], res.radius[hit]) * (1 + 1e-12) + 1e-300);
  }
  for (int i = 0; i < n; ++i) {
    if (kind[i] == 3 && partner[i] < 0) return cl;
    if (kind[i] == 1) {
      cl.reals.push_back(res.z[i].real());
      cl.real_radii.push_back(res.radius[i] + std::fabs(res.z[i].imag()) + 1e-300);
    }
  }
  cl.ok = true;
  return cl;
}

// Exact rational-to-double with certified rounding radius.
inline std::pair<double, double> to_double_certified(const zrat& v) {
  double d = v.convert_to<double>();
  zrat err = v - zrat(d);
  if (err < 0) err = -err;
  double e = err.convert_to<double>() * 1.0000001 + 5e-324;
  return {d, e};
}

inline void roots_of_squarefree(const IntPolynomial& p, double eps,
                                std::vector<std::complex<double>>& roots,
                                std::vector<double>& radii) {
  IntPolynomial q = primitive_part(p);
  if (q.coeff(0) == 0) {  // squarefree => simple root at 0
    std::vector<zint> c(q.coeffs().begin() + 1, q.coeffs().end());
    roots.push_back({0.0, 0.0});
    radii.push_back(0.0);
    q = IntPolynomial(std::move(c));
  }
  const int n = q.degree();
  if (n <= 0) return;
  if (n == 1) {
    auto [d, e] = to_double_certified(detail::make_rat(-q.coeff(0), q.coeff(1)));
    roots.push_back({d, 0.0});
    radii.push_back(e);
    return;
  }

  // Working precision from the coefficient sizes at the root scale.  The max
  // root modulus is estimated binomially: |a_{n-k}/a_n| <= C(n,k) R^k when
  // all roots lie in |z| <= R, so max_k (|a_{n-k}|/(|a_n| C(n,k)))^{1/k}
  // never overshoots R (the raw polygon edge |a_{n-1}/a_n| reads the whole
  // trace and can be off by a factor of n for real-rooted input).  An
  // underestimate only costs a retry at doubled precision below.
  double rmax = 1.0;
  {
    const double ln = double(msb(abs(q.leading())));
    double lgc = 0;  // log2 C(n,k), built incrementally
    for (int k = 1; k <= n; ++k) {
      lgc += std::log2(double(n - k + 1)) - std::log2(double(k));
      if (q.coeff(n - k) == 0) continue;
      double l = double(msb(abs(q.coeff(n - k))));
      rmax = std::max(rmax, std::exp2((l - ln - lgc) / k));
    }
  }
  double cond = 0;
  for (int k = 0; k <= n; ++k) {
    if (q.coeff(k) == 0) continue;
    cond = std::max(cond, double(msb(abs(q.coeff(k)))) + k * std::log2(2.0 * rmax));
  }
  cond += 9;

  mpfr_prec_t prec = std::max<mpfr_prec_t>(mpfr_prec_t(cond) + 45, 128);
  const double eps_freeze = eps / (16.0 * n);
  double achieved = 1e300;
  for (int attempt = 0; attempt < 7; ++attempt, prec *= 2) {
    aberth_result res = aberth_certified(q.coeffs(), prec, eps_freeze, 2500);
    achieved = 0;
    for (double r : res.radius) achieved = std::max(achieved, r);
    classified_roots cl = classify_disks(res, eps);
    if (!cl.ok) continue;
    if (q.degree() <= 64) {  // exact real-count reconciliation
      zrat b(cauchy_root_bound(q));
      if (sturm_count(q, -b, b) != int(cl.reals.size())) continue;
    }
    for (std::size_t i = 0; i < cl.reals.size(); ++i) {
      roots.push_back({cl.reals[i], 0.0});
      radii.push_back(cl.real_radii[i]);
    }
    for (std::size_t i = 0; i < cl.upper.size(); ++i) {
      roots.push_back(cl.upper[i]);
      radii.push_back(cl.pair_radii[i]);
      roots.push_back(std::conj(cl.upper[i]));
      radii.push_back(cl.pair_radii[i]);
    }
    return;
  }
  throw convergence_error(achieved);
}

// Exact division p / d (caller guarantees divisibility over Z).
inline IntPolynomial divide_exact(const IntPolynomial& p, const IntPolynomial& d) {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  std::vector<zrat> r(p.coeffs().size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = p.coeffs()[k];
  int dp = p.degree(), dd = d.degree();
  std::vector<zrat> qv(std::size_t(std::max(dp - dd + 1, 0)), zrat(0));
  for (int k = dp; k >= dd; --k) {
    zrat c = r[std::size_t(k)] / d.leading();
    qv[std::size_t(k - dd)] = c;
    if (c != 0)
      for (int j = 0; j <= dd; ++j) r[std::size_t(k - dd + j)] -= c * d.coeff(j);
  }
  for (const auto& rem : r)
    if (rem != 0) throw std::logic_error("divide_exact: nonzero remainder");
  std::vector<zint> out(qv.size());
  for (std::size_t k = 0; k < qv.size(); ++k) {
    if (boost::multiprecision::denominator(qv[k]) != 1)
      throw std::logic_error("divide_exact: non-integer quotient");
    out[k] = boost::multiprecision::numerator(qv[k]);
  }
  return IntPolynomial(std::move(out));
}

}  // namespace detail

// All complex roots of P with certified per-root error radii <= eps.
// Multiple roots are handled by exact squarefree decomposition, so the
// iteration itself only ever sees simple roots.
inline RootMultiset all_roots(const IntPolynomial& p, double eps) {
  if (p.degree() < 1) throw std::domain_error("all_roots requires degree >= 1");
  if (!(eps > 0)) throw std::domain_error("all_roots requires eps > 0");
  std::vector<std::complex<double>> roots;
  std::vector<double> radii;
  IntPolynomial work = p;
  while (work.degree() >= 1) {
    IntPolynomial g = gcd(work, work.derivative());
    if (g.degree() == 0) {
      detail::roots_of_squarefree(work, eps, roots, radii);
      break;
    }
    detail::roots_of_squarefree(detail::divide_exact(work, g), eps, roots, radii);
    work = std::move(g);
  }
  std::vector<std::size_t> order(roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (roots[a].real() != roots[b].real()) return roots[a].real() < roots[b].real();
    return roots[a].imag() < roots[b].imag();
  });
  RootMultiset out;
  out.source = p;
  out.roots.reserve(roots.size());
  out.radii.reserve(roots.size());
  for (std::size_t i : order) {
    out.roots.push_back(roots[i]);
    out.radii.push_back(radii[i]);
  }
  return out;
}

// Default accuracy tier: 1e-12 up to degree 64, 1e-9 above.
inline RootMultiset all_roots(const IntPolynomial& p) {
  return all_roots(p, p.degree() <= 64 ? 1e-12 : 1e-9);
}

// Does every certified root disk lie inside the closed sector |Arg z| <= gamma?
// Returns false only when some disk lies entirely outside; a disk straddling
// the boundary raises a precision error naming the root index.
inline bool in_sector(const RootMultiset& rm, double gamma) {
  if (!(gamma > 0 && gamma < std::acos(-1.0) / 2))
    throw std::domain_error("in_sector requires gamma in (0, pi/2)");
  int straddler = -1;
  bool all_inside = true;
  for (std::size_t i = 0; i < rm.roots.size(); ++i) {
    const auto& z = rm.roots[i];
    double r = rm.radii[i];
    double mod = std::abs(z);
    if (!(mod > r * (1 + 1e-12))) {  // disk reaches the apex
      if (straddler < 0) straddler = int(i);
      all_inside = false;
      continue;
    }
    double phi = std::fabs(std::atan2(z.imag(), z.real()));
    double half = std::asin(std::min(1.0, r / mod)) + 4e-16 * (1 + phi);
    if (phi + half <= gamma) continue;  // certainly inside
    all_inside = false;
    if (phi - half > gamma) return false;  // certainly outside
    if (straddler < 0) straddler = int(i);
  }
  if (all_inside) return true;
  throw std::domain_error("in_sector: insufficient precision, root disk " +
                          std::to_string(straddler) + " straddles the sector boundary");
}

// Upper bound on |P(w) - P(z)| over the disk |w - z| <= r, via the derivative
// ceiling sum k |a_k| (|z| + r)^(k-1) times r; used by residual-invariant
// checks (add |P(z)| to bound |P| itself).
inline double residual_ceiling(const IntPolynomial& p, std::complex<double> z, double r) {
  using detail::dadd;
  using detail::dfloat;
  using detail::dmul;
  dfloat R = dfloat::from(std::abs(z) + r);
  dfloat acc{}, pw{1.0, 0};
  for (int k = 1; k <= p.degree(); ++k) {
    // pw = (|z|+r)^{k-1}
    dfloat term = dmul(pw, dfloat::from(double(k) *
                                        std::fabs(p.coeff(k).convert_to<double>())));
    if (p.coeff(k) != 0 && term.mant == 0)
      term = dmul(pw, dfloat{1.9999, long(msb(abs(p.coeff(k)))) + long(std::log2(double(k))) + 1});
    acc = dadd(acc, term);
    pw = dmul(pw, R);
  }
  return dmul(acc, dfloat::from(r)).to_double();
}

}  // namespace trace_atlas
