#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trace_atlas {

using zint = boost::multiprecision::cpp_int;
using zrat = boost::multiprecision::cpp_rational;

// Dense integer polynomial, coefficients stored degree-ascending
// (coeffs()[k] = a_k).  The zero polynomial (empty vector, degree() == -1)
// only appears as an intermediate value in gcd/resultant chains;
// parse_polynomial and the generators never produce it.
class IntPolynomial {
 public:
  IntPolynomial() = default;

  explicit IntPolynomial(std::vector<zint> coeffs) : c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  IntPolynomial(std::initializer_list<long> v) {
    for (long x : v) c_.emplace_back(x);
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  const zint& coeff(int k) const {
    static const zint zero = 0;
    if (k < 0 || k > degree()) return zero;
    return c_[static_cast<std::size_t>(k)];
  }

  const std::vector<zint>& coeffs() const { return c_; }

  const zint& leading() const {
    if (c_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
    return c_.back();
  }

  bool monic() const { return !c_.empty() && c_.back() == 1; }

  zint eval(const zint& x) const {
    zint acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  zrat eval(const zrat& x) const {
    zrat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  IntPolynomial derivative() const {
    if (degree() < 1) return IntPolynomial{};
    std::vector<zint> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
    return IntPolynomial(std::move(d));
  }

  std::string str() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (k) os << ',';
      os << c_[k];
    }
    if (c_.empty()) os << '0';
    return os.str();
  }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.c_ == b.c_;
  }

 private:
  std::vector<zint> c_;
};

inline IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<zint> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(int(k)) + b.coeff(int(k));
  return IntPolynomial(std::move(c));
}

inline IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<zint> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(int(k)) - b.coeff(int(k));
  return IntPolynomial(std::move(c));
}

inline IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return IntPolynomial{};
  std::vector<zint> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return IntPolynomial(std::move(c));
}

inline IntPolynomial operator*(const zint& s, const IntPolynomial& p) {
  if (s == 0) return IntPolynomial{};
  std::vector<zint> c(p.coeffs());
  for (auto& x : c) x *= s;
  return IntPolynomial(std::move(c));
}

// --- parsing ------------------------------------------------------------

inline IntPolynomial parse_polynomial(const std::string& text) {
  std::vector<zint> coeffs;
  std::string tok;
  std::istringstream in(text);
  bool any = false;
  while (std::getline(in, tok, ',')) {
    any = true;
    std::size_t b = tok.find_first_not_of(" \t");
    std::size_t e = tok.find_last_not_of(" \t");
    std::string t = (b == std::string::npos) ? "" : tok.substr(b, e - b + 1);
    bool ok = !t.empty();
    for (std::size_t i = 0; ok && i < t.size(); ++i) {
      char ch = t[i];
      if (i == 0 && (ch == '-' || ch == '+')) {
        ok = t.size() > 1;
        continue;
      }
      if (ch < '0' || ch > '9') ok = false;
    }
    if (!ok)
      throw std::invalid_argument("polynomial parse error: bad token '" + tok + "'");
    if (t[0] == '+') t.erase(0, 1);  // cpp_int's parser rejects an explicit plus
    coeffs.emplace_back(t);
  }
  if (!any) throw std::invalid_argument("polynomial parse error: empty input");
  IntPolynomial p(std::move(coeffs));
  if (p.is_zero())
    throw std::invalid_argument("polynomial parse error: all coefficients are zero");
  return p;
}

// --- exact helper arithmetic -------------------------------------------

inline zint content(const IntPolynomial& p) {
  zint g = 0;
  for (const auto& c : p.coeffs()) g = boost::multiprecision::gcd(g, c);
  return g;  // 0 for the zero polynomial
}

inline IntPolynomial primitive_part(const IntPolynomial& p) {
  zint g = content(p);
  if (g == 0 || g == 1) return p;
  std::vector<zint> c(p.coeffs());
  for (auto& x : c) x /= g;
  return IntPolynomial(std::move(c));
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a  mod  b, all exact.
inline IntPolynomial prem(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero polynomial");
  int da = a.degree(), db = b.degree();
  if (da < db) return a;
  const zint& c = b.leading();
  std::vector<zint> r(a.coeffs());
  for (int k = da; k >= db; --k) {
    zint lead = r[static_cast<std::size_t>(k)];
    for (auto& x : r) x *= c;
    if (lead != 0) {
      for (int j = 0; j < db; ++j)
        r[static_cast<std::size_t>(k - db + j)] -= lead * b.coeffs()[static_cast<std::size_t>(j)];
    }
    r[static_cast<std::size_t>(k)] = 0;
  }
  return IntPolynomial(std::move(r));
}

// Primitive PRS gcd, result primitive with positive leading coefficient.
inline IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial f = primitive_part(a), g = primitive_part(b);
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  if (f.degree() < g.degree()) std::swap(f, g);
  while (!g.is_zero()) {
    IntPolynomial r = primitive_part(prem(f, g));
    f = std::move(g);
    g = std::move(r);
  }
  if (f.leading() < 0) f = zint(-1) * f;
  return f;
}

inline bool is_squarefree(const IntPolynomial& p) {
  if (p.degree() < 1) throw std::domain_error("is_squarefree requires degree >= 1");
  return gcd(p, p.derivative()).degree() == 0;
}

// --- resultant / discriminant ------------------------------------------

namespace detail {

// cpp_rational's two-argument constructor rejects negative denominators
// instead of normalizing the sign; every ratio whose denominator can be
// negative has to go through here.
inline zrat make_rat(const zint& num, const zint& den) {
  return den < 0 ? zrat(-num, -den) : zrat(num, den);
}

inline zrat ratpow(const zint& base, long e) {
  if (e == 0) return zrat(1);
  zint p = 1, b = base;
  long n = e < 0 ? -e : e;
  for (long i = 0; i < n; ++i) p *= b;
  return e > 0 ? zrat(p) : make_rat(zint(1), p);
}

}  // namespace detail

// Resultant via a primitive PRS with an exact rational scalar carried along:
//   res(A,B) = (-1)^{ab} res(B,A)
//   res(B, cX) = c^{deg B} res(B, X)
//   lc(B)^{d+1} A = Q B + R  =>  res(B, A) = lc(B)^{deg A - deg R - (d+1) deg B} res(B, R)
inline zint resultant(const IntPolynomial& A0, const IntPolynomial& B0) {
  if (A0.is_zero() || B0.is_zero()) return 0;
  IntPolynomial A = A0, B = B0;
  int sign = 1;
  zrat scalar = 1;
  if (A.degree() < B.degree()) {
    if ((A.degree() & 1) && (B.degree() & 1)) sign = -sign;
    std::swap(A, B);
  }
  while (true) {
    int a = A.degree(), b = B.degree();
    if (b == 0) {
      zrat res = scalar * detail::ratpow(B.coeff(0), a) * sign;
      if (boost::multiprecision::denominator(res) != 1)
        throw std::logic_error("resultant: non-integer result");
      return boost::multiprecision::numerator(res);
    }
    IntPolynomial R = prem(A, B);
    if (R.is_zero()) return 0;
    zint k = content(R);
    IntPolynomial Rp = primitive_part(R);
    int r = Rp.degree();
    if ((a & 1) && (b & 1)) sign = -sign;
    scalar *= detail::ratpow(B.leading(), long(a) - r - long(a - b + 1) * b);
    scalar *= detail::ratpow(k, b);
    A = std::move(B);
    B = std::move(Rp);
  }
}

// Discriminant with the fixed sign convention
//   disc(P) = (-1)^{n(n-1)/2} res(P, P') / a_n.
inline zint discriminant(const IntPolynomial& p) {
  int n = p.degree();
  if (n < 2) throw std::domain_error("discriminant requires degree >= 2");
  zint res = resultant(p, p.derivative());
  zrat d = detail::make_rat(res, p.leading());
  if ((n * (n - 1) / 2) & 1) d = -d;
  if (boost::multiprecision::denominator(d) != 1)
    throw std::logic_error("discriminant: non-integer result");
  return boost::multiprecision::numerator(d);
}

// --- Chebyshev family for [0,4] ----------------------------------------

// t_0 = 2, t_1 = x-2, t_{n+1} = (x-2) t_n - t_{n-1}; monic, all roots in (0,4).
inline IntPolynomial chebyshev_shifted(int n) {
  if (n < 1) throw std::domain_error("chebyshev_shifted requires n >= 1");
  IntPolynomial tprev{2}, t{-2, 1};
  const IntPolynomial xm2{-2, 1};
  for (int k = 1; k < n; ++k) {
    IntPolynomial next = xm2 * t - tprev;
    tprev = std::move(t);
    t = std::move(next);
  }
  return t;
}

// Exact Cauchy root bound 1 + max_k |a_k| / |a_n|; every root has modulus < this.
inline zrat cauchy_root_bound(const IntPolynomial& p) {
  if (p.degree() < 1) throw std::domain_error("cauchy_root_bound requires degree >= 1");
  zint m = 0;
  for (int k = 0; k < p.degree(); ++k)
    m = std::max(m, zint(abs(p.coeff(k))));
  zint an = boost::multiprecision::abs(p.leading());
  return 1 + zrat(m, an);
}

}  // namespace trace_atlas
