#pragma once

#include "trace_atlas/int_polynomial.hpp"
#include "trace_atlas/means.hpp"
#include "trace_atlas/parallel.hpp"
#include "trace_atlas/sturm.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace trace_atlas {

struct ExtremalRecord {
  IntPolynomial poly;
  int degree = 0;
  zint trace = 0;
  std::vector<std::pair<int, zrat>> means;  // (m, S_m) for m = 1..degree
  bool certified = false;                   // Sturm totally positive + squarefree
  bool rational_root = false;               // reducible over Q witness found
};

namespace detail {

inline zrat pow_rat(const zrat& x, int e) {
  zrat r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

inline bool has_positive_integer_root(const IntPolynomial& p) {
  // monic with a_0 != 0: any rational root is an integer dividing |a_0|.
  zint a0 = abs(p.coeff(0));
  for (zint d = 1; d * d <= a0; ++d) {
    if (a0 % d != 0) continue;
    if (p.eval(d) == 0 || p.eval(zint(a0 / d)) == 0) return true;
  }
  return false;
}

// DFS over e_{k}..e_{n} for fixed earlier choices.  Bounds: Maclaurin upper
// e_k <= C(n,k)(T/n)^k, chain lower e_k >= C(n,k) (S_k >= S_n^{k/n} >= 1),
// and the consecutive test S_k^{k-1} <= S_{k-1}^k.
inline void search_leafwards(int n, const zint& T, std::vector<zint>& e, int k,
                             std::vector<ExtremalRecord>& out) {
  if (k > n) {
    std::vector<zint> c(static_cast<std::size_t>(n) + 1);
    c[static_cast<std::size_t>(n)] = 1;
    for (int j = 1; j <= n; ++j)
      c[static_cast<std::size_t>(n - j)] = (j & 1) ? -e[static_cast<std::size_t>(j)]
                                                   : e[static_cast<std::size_t>(j)];
    IntPolynomial p(std::move(c));
    if (!is_squarefree(p)) return;
    if (!is_totally_positive(p)) return;
    ExtremalRecord rec;
    rec.degree = n;
    rec.trace = T;
    rec.certified = true;
    rec.rational_root = has_positive_integer_root(p);
    for (int m = 1; m <= n; ++m) rec.means.emplace_back(m, symmetric_mean(p, m));
    rec.poly = std::move(p);
    out.push_back(std::move(rec));
    return;
  }
  zint nk = binomial(n, k);
  // largest e with e * n^k <= C(n,k) * T^k
  zint npow = 1, tpow = 1;
  for (int i = 0; i < k; ++i) {
    npow *= n;
    tpow *= T;
  }
  zint hi = nk * tpow / npow;
  zrat sk_prev = k == 2 ? zrat(T, n) : zrat(e[static_cast<std::size_t>(k - 1)], binomial(n, k - 1));
  for (zint v = nk; v <= hi; ++v) {
    zrat sk(v, nk);
    if (detail::pow_rat(sk, k - 1) > detail::pow_rat(sk_prev, k)) break;  // chain violated
    e[static_cast<std::size_t>(k)] = v;
    search_leafwards(n, T, e, k + 1, out);
  }
}

}  // namespace detail

// Every monic squarefree integer polynomial of degree n whose roots are all
// positive reals and whose trace is at most trace_max, sorted by trace then
// by the elementary-symmetric vector (e_1, ..., e_n) lexicographically.
inline std::vector<ExtremalRecord> enumerate_totally_positive(int n, long trace_max) {
  if (n < 1 || n > 8) throw std::domain_error("enumerate_totally_positive supports 1 <= n <= 8");
  if (trace_max < n) return {};

  // Work items partitioned by (trace, e_2) prefix; block-mapped, then merged
  // in item order so the output order never depends on the thread count.
  struct Item {
    zint T, e2;  // e2 < 0 when the degree has no e_2 slot
  };
  std::vector<Item> items;
  for (zint T = n; T <= trace_max; ++T) {
    if (n == 1) {
      items.push_back({T, -1});
      continue;
    }
    zint nk = detail::binomial(n, 2);
    zint hi = nk * T * T / (zint(n) * n);
    for (zint e2 = nk; e2 <= hi; ++e2) {
      // consecutive chain test at k = 2
      zrat s2(e2, nk), s1(T, n);
      if (s2 > s1 * s1) break;
      items.push_back({T, e2});
    }
  }
  auto chunks = map_blocks<std::vector<ExtremalRecord>>(
      items.size(), 1, [&](std::size_t b0, std::size_t) {
        const Item& it = items[b0];
        std::vector<ExtremalRecord> local;
        std::vector<zint> e(static_cast<std::size_t>(n) + 1);
        e[1] = it.T;
        if (n == 1) {
          detail::search_leafwards(n, it.T, e, 2, local);
        } else {
          e[2] = it.e2;
          detail::search_leafwards(n, it.T, e, 3, local);
        }
        return local;
      });
  std::vector<ExtremalRecord> out;
  for (auto& ch : chunks)
    for (auto& rec : ch) out.push_back(std::move(rec));
  return out;
}

// Record minimizing S_m over the certified enumeration at the given budget.
// Candidates with a detected rational root are listed by the enumeration but
// excluded here: a linear factor (x - a) lets the remaining factor realize a
// strictly smaller mean, so such records are not extremal witnesses.
inline ExtremalRecord minimal_symmetric_mean(int n, int m, long trace_budget) {
  if (m < 1 || m > n) throw std::domain_error("minimal_symmetric_mean requires 1 <= m <= n");
  auto records = enumerate_totally_positive(n, trace_budget);
  const ExtremalRecord* best = nullptr;
  for (const auto& rec : records) {
    if (n >= 2 && rec.rational_root) continue;
    const zrat& sm = rec.means[static_cast<std::size_t>(m - 1)].second;
    if (!best || sm < best->means[static_cast<std::size_t>(m - 1)].second) best = &rec;
  }
  if (!best) throw std::domain_error("minimal_symmetric_mean: no candidates within the budget");
  return *best;
}

}  // namespace trace_atlas
