#pragma once

#include "trace_atlas/int_polynomial.hpp"

#include <stdexcept>
#include <vector>

namespace trace_atlas {

namespace detail {

// Sturm chain with primitive-PRS size control.  The pseudo-remainder
// multiplier lc(B)^(d+1) may be negative, which would wreck the sign
// structure; compensate so every step multiplies by a positive scalar only.
inline std::vector<IntPolynomial> sturm_chain(const IntPolynomial& p) {
  std::vector<IntPolynomial> chain;
  chain.push_back(p);
  chain.push_back(p.derivative());
  while (!chain.back().is_zero() && chain.back().degree() >= 0) {
    const IntPolynomial& a = chain[chain.size() - 2];
    const IntPolynomial& b = chain.back();
    if (b.degree() == 0) break;
    IntPolynomial r = prem(a, b);
    if (b.leading() < 0 && ((a.degree() - b.degree() + 1) & 1)) r = zint(-1) * r;
    if (r.is_zero()) break;
    chain.push_back(zint(-1) * primitive_part(r));
  }
  return chain;
}

inline int sign_of(const zrat& v) { return v == 0 ? 0 : (v < 0 ? -1 : 1); }

inline int sign_variations(const std::vector<IntPolynomial>& chain, const zrat& x) {
  int count = 0, prev = 0;
  for (const auto& q : chain) {
    if (q.is_zero()) continue;
    int s = sign_of(q.eval(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

}  // namespace detail

// Exact number of real roots of squarefree P in (lo, hi].  Endpoints that
// are themselves roots are rejected so (lo, hi] and (lo, hi) coincide.
inline int sturm_count(const IntPolynomial& p, const zrat& lo, const zrat& hi) {
  if (p.degree() < 1) throw std::domain_error("sturm_count requires degree >= 1");
  if (!(lo < hi)) throw std::domain_error("sturm_count requires lo < hi");
  if (p.eval(lo) == 0)
    throw std::domain_error("sturm_count: endpoint lo is a root; perturb the endpoint");
  if (p.eval(hi) == 0)
    throw std::domain_error("sturm_count: endpoint hi is a root; perturb the endpoint");
  auto chain = detail::sturm_chain(p);
  return detail::sign_variations(chain, lo) - detail::sign_variations(chain, hi);
}

// All roots real and in R_+ = [0, infinity).  A simple root exactly at 0
// (a_0 = 0) is allowed per that convention and handled by dividing out z.
inline bool is_totally_positive(const IntPolynomial& p) {
  if (p.degree() < 1) throw std::domain_error("is_totally_positive requires degree >= 1");
  if (!is_squarefree(p))
    throw std::domain_error("is_totally_positive requires a squarefree polynomial");
  IntPolynomial q = p;
  if (q.coeff(0) == 0) {
    std::vector<zint> c(q.coeffs().begin() + 1, q.coeffs().end());
    q = IntPolynomial(std::move(c));  // squarefree => at most one root at 0
  }
  if (q.degree() == 0) return true;  // p was c*x
  zrat bound(cauchy_root_bound(q));
  return sturm_count(q, 0, bound) == q.degree();
}

}  // namespace trace_atlas
