#pragma once

// dim H_2(G; F_p) from the normalized bar complex, used as an independent
// check on the multiplier engine through universal coefficients:
//
//   dim H_2(G; F_p) = rank_p M(G) + dim_p (G/G' (x) F_p) = (s + t) + d.
//
// B_n has basis [g_1|...|g_n] over non-identity elements, and
//   d2[g|h]   = [h] - [gh] + [g]
//   d3[g|h|m] = [h|m] - [gh|m] + [g|hm] - [g|h]
// with any cell containing the identity read as zero.
//
// Two routes compute rank d3. The dense route feeds every d3 row into an
// echelon basis over B2. The sparse route first eliminates the columns [g|x],
// x outside a generating set S, using the rows d3[g|x'|s] along a BFS tree of
// the Cayley graph (x = x's); what remains lives on the (|G|-1)|S| columns
// [g|s], further projected onto Ker d2, which is small enough to reduce all
// (|G|-1)^3 rows exactly.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "schur/errors.hpp"
#include "schur/fplin.hpp"
#include "schur/multiplier.hpp"
#include "schur/presentation.hpp"

namespace schur {

struct BarHomologyReport {
  long long group_order = 0;
  long long dim_B2 = 0;
  long long dim_B3 = 0;
  long long rank_d2 = 0;
  long long rank_d3 = 0;
  long long h2_dim = 0;

  friend bool operator==(const BarHomologyReport&, const BarHomologyReport&) = default;
};

struct OracleOptions {
  static constexpr long long kDefaultCap = 128;
  static constexpr long long kHardMax = 256;
  long long cap = kDefaultCap;
  int jobs = 1;
};

/// Multiplication table of the group of a presentation, elements indexed by the
/// mixed-radix encoding sum a_i p^i + sum z_l p^{d+l}; index 0 is the identity.
class GroupTable {
public:
  explicit GroupTable(const Presentation& P) : P_(P) {
    long long n = 1;
    for (int i = 0; i < P.order_exponent(); ++i)
      n *= P.p();
    n_ = static_cast<int>(n);
    std::vector<Element> elems;
    elems.reserve(static_cast<std::size_t>(n_));
    for (int x = 0; x < n_; ++x)
      elems.push_back(decode(x));
    mul_.resize(static_cast<std::size_t>(n_) * n_);
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y)
        mul_[static_cast<std::size_t>(x) * n_ + y] = encode(elem_mul(P, elems[x], elems[y]));
  }

  int order() const { return n_; }
  int mul(int x, int y) const { return mul_[static_cast<std::size_t>(x) * n_ + y]; }

  Element decode(int x) const {
    Element e = identity(P_);
    for (int i = 0; i < P_.d(); ++i, x /= P_.p())
      e.a.set(i, x % P_.p());
    for (int l = 0; l < P_.k(); ++l, x /= P_.p())
      e.z.set(l, x % P_.p());
    return e;
  }

  int encode(const Element& e) const {
    int x = 0;
    for (int l = P_.k() - 1; l >= 0; --l)
      x = x * P_.p() + e.z[l];
    for (int i = P_.d() - 1; i >= 0; --i)
      x = x * P_.p() + e.a[i];
    return x;
  }

private:
  Presentation P_;
  int n_ = 0;
  std::vector<int> mul_;
};

namespace detail {

inline long long group_order_checked(const Presentation& P, const OracleOptions& opt) {
  if (opt.cap > OracleOptions::kHardMax)
    throw BudgetExceeded("oracle cap " + std::to_string(opt.cap) + " exceeds the hard maximum " +
                         std::to_string(OracleOptions::kHardMax));
  long long n = 1;
  for (int i = 0; i < P.order_exponent(); ++i) {
    n *= P.p();
    if (n > opt.cap)
      throw BudgetExceeded("group order p^" + std::to_string(P.order_exponent()) + " exceeds the cap " +
                           std::to_string(opt.cap));
  }
  return n;
}

/// Dense scratch vector with a list of touched positions.
struct SparseAccumulator {
  std::vector<int> value;
  std::vector<int> touched;

  explicit SparseAccumulator(std::size_t n) : value(n, 0) {}

  void add(int idx, int coef) {
    if (value[idx] == 0)
      touched.push_back(idx);
    value[idx] += coef;
  }

  bool all_zero_mod(int p) const {
    return std::all_of(touched.begin(), touched.end(), [&](int i) { return value[i] % p == 0; });
  }

  void clear() {
    for (int i : touched)
      value[i] = 0;
    touched.clear();
  }
};

/// d2 o d3 on the cell [g|h|m]; throws if nonzero.
inline void check_d2_d3(const GroupTable& G, int g, int h, int m, int p, SparseAccumulator& acc) {
  auto d2 = [&](int a, int b, int sign) {
    if (a == 0 || b == 0)
      return;
    acc.add(b, sign);
    const int ab = G.mul(a, b);
    if (ab != 0)
      acc.add(ab, -sign);
    acc.add(a, sign);
  };
  d2(h, m, 1);
  d2(G.mul(g, h), m, -1);
  d2(g, G.mul(h, m), 1);
  d2(g, h, -1);
  const bool ok = acc.all_zero_mod(p);
  acc.clear();
  if (!ok)
    throw Error("internal: d2 o d3 != 0 on [" + std::to_string(g) + "|" + std::to_string(h) + "|" +
                std::to_string(m) + "]");
}

inline long long rank_d2(const GroupTable& G, Modulus mod) {
  const int n = G.order();
  EchelonBasis eb(mod, static_cast<std::size_t>(n - 1));
  std::vector<Residue> v(static_cast<std::size_t>(n - 1), 0);
  std::vector<int> touched;
  for (int g = 1; g < n && !eb.full(); ++g)
    for (int h = 1; h < n && !eb.full(); ++h) {
      touched.clear();
      auto add = [&](int x, int c) {
        if (x == 0)
          return;
        v[x - 1] = mod.reduce(v[x - 1] + c);
        touched.push_back(x - 1);
      };
      add(h, 1);
      add(G.mul(g, h), -1);
      add(g, 1);
      eb.insert_sparse(v, touched);
    }
  return static_cast<long long>(eb.rank());
}

} // namespace detail

/// Dense route: echelon basis over all of B2. Intended for |G| <= 64.
inline BarHomologyReport h2_dim_mod_p_dense(const Presentation& P, OracleOptions opt = {}) {
  opt.cap = std::min<long long>(opt.cap, 64);
  const long long n = detail::group_order_checked(P, opt);
  const GroupTable G(P);
  const Modulus mod = P.modulus();
  const int p = P.p();
  const int N1 = static_cast<int>(n - 1);
  BarHomologyReport rep;
  rep.group_order = n;
  rep.dim_B2 = static_cast<long long>(N1) * N1;
  rep.dim_B3 = rep.dim_B2 * N1;
  rep.rank_d2 = detail::rank_d2(G, mod);

  EchelonBasis eb(mod, static_cast<std::size_t>(rep.dim_B2));
  std::vector<Residue> v(static_cast<std::size_t>(rep.dim_B2), 0);
  std::vector<int> touched;
  detail::SparseAccumulator acc(static_cast<std::size_t>(n));
  auto cell = [&](int a, int b) { return (a - 1) * N1 + (b - 1); };
  for (int g = 1; g <= N1; ++g)
    for (int h = 1; h <= N1; ++h)
      for (int m = 1; m <= N1; ++m) {
        detail::check_d2_d3(G, g, h, m, p, acc);
        touched.clear();
        auto add = [&](int a, int b, int c) {
          if (a == 0 || b == 0)
            return;
          const int idx = cell(a, b);
          v[idx] = mod.reduce(v[idx] + c);
          touched.push_back(idx);
        };
        add(h, m, 1);
        add(G.mul(g, h), m, -1);
        add(g, G.mul(h, m), 1);
        add(g, h, -1);
        eb.insert_sparse(v, touched);
      }
  rep.rank_d3 = static_cast<long long>(eb.rank());
  rep.h2_dim = rep.dim_B2 - rep.rank_d2 - rep.rank_d3;
  return rep;
}

/// Sparse route (BFS-tree elimination, projection onto Ker d2).
inline BarHomologyReport h2_dim_mod_p(const Presentation& P, OracleOptions opt = {}) {
  const long long n = detail::group_order_checked(P, opt);
  const GroupTable G(P);
  const Modulus mod = P.modulus();
  const int p = P.p();
  const int N1 = static_cast<int>(n - 1);
  BarHomologyReport rep;
  rep.group_order = n;
  rep.dim_B2 = static_cast<long long>(N1) * N1;
  rep.dim_B3 = rep.dim_B2 * N1;
  if (n == 1)
    return rep;

  // generating set: the g_i, plus central basis vectors while needed
  std::vector<int> S;
  for (int i = 0; i < P.d(); ++i) {
    Element e = identity(P);
    e.a.set(i, 1);
    S.push_back(G.encode(e));
  }
  std::vector<int> parent, pgen, order;
  auto bfs = [&] {
    parent.assign(static_cast<std::size_t>(n), -1);
    pgen.assign(static_cast<std::size_t>(n), -1);
    order.assign(1, 0);
    parent[0] = 0;
    for (std::size_t q = 0; q < order.size(); ++q)
      for (std::size_t si = 0; si < S.size(); ++si) {
        const int y = G.mul(order[q], S[si]);
        if (parent[y] < 0) {
          parent[y] = order[q];
          pgen[y] = static_cast<int>(si);
          order.push_back(y);
        }
      }
    return static_cast<long long>(order.size()) == n;
  };
  for (int l = 0; !bfs(); ++l) {
    Element e = identity(P);
    e.z.set(l, 1);
    S.push_back(G.encode(e));
  }
  const int nS = static_cast<int>(S.size());
  std::vector<int> gen_index(static_cast<std::size_t>(n), -1);
  for (int si = 0; si < nS; ++si)
    gen_index[S[si]] = si;

  // d2 restricted to the columns [g|s]; its pivot columns are projected out
  const int nQ = N1 * nS;
  auto qcol = [&](int g, int si) { return (g - 1) * nS + si; };
  std::vector<int> proj(static_cast<std::size_t>(nQ), 0);
  {
    std::vector<Vector> rowsA(static_cast<std::size_t>(N1), Vector(mod, static_cast<std::size_t>(nQ)));
    for (int g = 1; g <= N1; ++g)
      for (int si = 0; si < nS; ++si) {
        const int s = S[si];
        const int q = qcol(g, si);
        auto add = [&](int x, int c) {
          if (x != 0)
            rowsA[x - 1].set(q, rowsA[x - 1][q] + c);
        };
        add(s, 1);
        add(G.mul(g, s), -1);
        add(g, 1);
      }
    const Subspace A = Subspace::span(mod, static_cast<std::size_t>(nQ), rowsA);
    rep.rank_d2 = static_cast<long long>(A.dim());
    for (int c : A.pivots())
      proj[c] = -1;
    int next = 0;
    for (int& c : proj)
      if (c == 0)
        c = next++;
  }
  const int nproj = nQ - static_cast<int>(rep.rank_d2);
  if (rep.rank_d2 != detail::rank_d2(G, mod))
    throw Error("internal: d2 rank on the generator columns differs from the full rank");

  // expansions of every column [g|x] in projected coordinates
  using Entry = std::pair<int, Residue>;
  std::vector<std::vector<Entry>> expansion(static_cast<std::size_t>(N1) * N1);
  auto col = [&](int g, int x) { return static_cast<std::size_t>(g - 1) * N1 + (x - 1); };
  {
    detail::SparseAccumulator acc(static_cast<std::size_t>(nproj));
    auto addq = [&](int g, int si, int c) {
      if (g == 0)
        return;
      const int pr = proj[qcol(g, si)];
      if (pr >= 0)
        acc.add(pr, c);
    };
    auto emit = [&] {
      std::vector<Entry> out;
      std::sort(acc.touched.begin(), acc.touched.end());
      acc.touched.erase(std::unique(acc.touched.begin(), acc.touched.end()), acc.touched.end());
      for (int i : acc.touched) {
        const Residue r = mod.reduce(acc.value[i]);
        if (r != 0)
          out.emplace_back(i, r);
      }
      acc.clear();
      return out;
    };
    for (std::size_t oi = 1; oi < order.size(); ++oi) {
      const int x = order[oi];
      for (int g = 1; g <= N1; ++g) {
        if (gen_index[x] >= 0) {
          addq(g, gen_index[x], 1);
        } else {
          // [g|x] = [g|x'] + [gx'|s] - [x'|s]  with x = x' s
          const int xp = parent[x];
          const int si = pgen[x];
          for (const Entry& e : expansion[col(g, xp)])
            acc.add(e.first, e.second);
          addq(G.mul(g, xp), si, 1);
          addq(xp, si, -1);
        }
        expansion[col(g, x)] = emit();
      }
    }
  }
  const long long tree_rows = static_cast<long long>(N1) * (N1 - nS);

  // reduce every d3 row; workers take interleaved slices of g
  const int jobs = std::max(1, opt.jobs);
  std::vector<EchelonBasis> partial(static_cast<std::size_t>(jobs), EchelonBasis(mod, static_cast<std::size_t>(nproj)));
  std::vector<std::string> failures(static_cast<std::size_t>(jobs));
  auto work = [&](int w) {
    try {
      EchelonBasis& eb = partial[static_cast<std::size_t>(w)];
      std::vector<Residue> v(static_cast<std::size_t>(nproj), 0);
      detail::SparseAccumulator acc(static_cast<std::size_t>(nproj));
      detail::SparseAccumulator check(static_cast<std::size_t>(n));
      auto add_cell = [&](int a, int b, int sign) {
        if (a == 0 || b == 0)
          return;
        for (const Entry& e : expansion[col(a, b)])
          acc.add(e.first, sign * e.second);
      };
      for (int g = 1 + w; g <= N1; g += jobs)
        for (int h = 1; h <= N1; ++h) {
          const int gh = G.mul(g, h);
          for (int m = 1; m <= N1; ++m) {
            detail::check_d2_d3(G, g, h, m, p, check);
            if (eb.full())
              continue;
            const int hm = G.mul(h, m);
            add_cell(h, m, 1);
            add_cell(gh, m, -1);
            add_cell(g, hm, 1);
            add_cell(g, h, -1);
            for (int i : acc.touched)
              v[i] = mod.reduce(acc.value[i]);
            eb.insert_sparse(v, acc.touched);
            acc.clear();
          }
        }
    } catch (const std::exception& e) {
      failures[static_cast<std::size_t>(w)] = e.what();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < jobs; ++w)
      threads.emplace_back(work, w);
    for (std::thread& t : threads)
      t.join();
  }
  for (const std::string& f : failures)
    if (!f.empty())
      throw Error(f);
  EchelonBasis merged(mod, static_cast<std::size_t>(nproj));
  for (const EchelonBasis& eb : partial)
    for (const Vector& row : eb.sorted_rows())
      merged.insert(row);

  rep.rank_d3 = tree_rows + static_cast<long long>(merged.rank());
  rep.h2_dim = rep.dim_B2 - rep.rank_d2 - rep.rank_d3;
  if (rep.h2_dim < 0)
    throw Error("internal: negative H_2 dimension");
  return rep;
}

struct CrossCheckResult {
  BarHomologyReport report;
  MultiplierInvariants invariants;
  long long expected_h2 = 0; // s + t + d
  bool ok = false;
};

inline CrossCheckResult cross_check(const Presentation& P, OracleOptions opt = {}) {
  CrossCheckResult res;
  res.invariants = multiplier_invariants(P);
  res.report = h2_dim_mod_p(P, opt);
  res.expected_h2 = res.invariants.s + res.invariants.t + P.d();
  res.ok = res.report.h2_dim == res.expected_h2;
  return res;
}

} // namespace schur
