#pragma once

// Named groups and a recognizer for the small quotients that show up when a
// rank-2 special group is divided by a central subgroup of order p.

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "schur/errors.hpp"
#include "schur/fplin.hpp"
#include "schur/presentation.hpp"

namespace schur {

// ---------------------------------------------------------------------------
// Isomorphism types

/// Z_p^(n)
struct ElementaryAbelian {
  int n = 0;
  friend bool operator==(const ElementaryAbelian&, const ElementaryAbelian&) = default;
};

/// Z_{p^2} x Z_p^(a)
struct Zp2TimesElem {
  int a = 0;
  friend bool operator==(const Zp2TimesElem&, const Zp2TimesElem&) = default;
};

/// ES_{p^e}(p^{2m+1}) x Z_p^(a) for odd p, e in {1, 2}.
struct ESodd {
  int exponent = 1;
  int m = 1;
  int a = 0;
  friend bool operator==(const ESodd&, const ESodd&) = default;
};

/// Extraspecial 2-group of order 2^{2m+1} with the given Arf invariant, times
/// Z_2^(a). For m = 1, arf 0 is D8 and arf 1 is Q8.
struct ES2 {
  int arf = 0;
  int m = 1;
  int a = 0;
  friend bool operator==(const ES2&, const ES2&) = default;
};

struct OtherType {
  std::string description;
  friend bool operator==(const OtherType&, const OtherType&) = default;
};

using IsoType = std::variant<ElementaryAbelian, Zp2TimesElem, ESodd, ES2, OtherType>;

inline std::string describe(const IsoType& t) {
  struct Visitor {
    std::string operator()(const ElementaryAbelian& e) const { return "Z_p^(" + std::to_string(e.n) + ")"; }
    std::string operator()(const Zp2TimesElem& e) const {
      return "Z_{p^2} x Z_p^(" + std::to_string(e.a) + ")";
    }
    std::string operator()(const ESodd& e) const {
      return std::string(e.exponent == 1 ? "ES_p" : "ES_{p^2}") + "(p^" + std::to_string(2 * e.m + 1) +
             ") x Z_p^(" + std::to_string(e.a) + ")";
    }
    std::string operator()(const ES2& e) const {
      std::string core;
      if (e.m == 1)
        core = e.arf == 0 ? "D8" : "Q8";
      else
        core = "ES(2^" + std::to_string(2 * e.m + 1) + ", arf " + std::to_string(e.arf) + ")";
      return core + " x Z_2^(" + std::to_string(e.a) + ")";
    }
    std::string operator()(const OtherType& e) const { return "Other(" + e.description + ")"; }
  };
  return std::visit(Visitor{}, t);
}

// ---------------------------------------------------------------------------
// Quadratic forms over F_2

/// Arf invariant of a nondegenerate quadratic form on F_2^{2m}, given as a
/// callable on bit masks: 0 when the form takes the value 0 on a strict
/// majority of vectors, 1 otherwise.
template <class Form>
int arf_by_count(int dim, Form&& q) {
  long long zeros = 0;
  const long long total = 1LL << dim;
  for (long long mask = 0; mask < total; ++mask)
    if (q(static_cast<unsigned long long>(mask)) == 0)
      ++zeros;
  return zeros > total / 2 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Named groups

/// Smallest g >= 2 that is not a square mod p.
inline int nonresidue(int p) {
  Modulus mod(p);
  if (p == 2)
    throw ValidationError("no quadratic non-residue modulo 2");
  for (int g = 2; g < p; ++g) {
    bool square = false;
    for (int x = 1; x < p && !square; ++x)
      square = (x * x) % p == g;
    if (!square)
      return g;
  }
  throw Error("internal: no non-residue found");
}

namespace catalog {

namespace detail {
inline Modulus odd_prime(int p, std::string_view name) {
  Modulus mod(p);
  if (p == 2)
    throw ValidationError(std::string(name) + " requires an odd prime");
  return mod;
}

inline Vector w(Modulus mod, std::initializer_list<long long> xs) { return Vector::from_ints(mod, xs); }
} // namespace detail

inline Presentation q8() {
  Modulus mod(2);
  Presentation P(mod, 2, 1);
  P.set_comm(0, 1, detail::w(mod, {1}));
  P.set_power(0, detail::w(mod, {1}));
  P.set_power(1, detail::w(mod, {1}));
  return P;
}

inline Presentation d8() {
  Modulus mod(2);
  Presentation P(mod, 2, 1);
  P.set_comm(0, 1, detail::w(mod, {1}));
  P.set_power(0, detail::w(mod, {1})); // rotation squares to the centre
  return P;
}

/// ES_{p^e}(p^{2m+1}): hyperbolic pairs (g_{2i-1}, g_{2i}) with commutator z;
/// for e = 2 the first generator has p-th power z.
inline Presentation es_odd(int p, int m, int exponent) {
  Modulus mod = detail::odd_prime(p, "es_odd");
  if (m < 1 || (exponent != 1 && exponent != 2))
    throw ValidationError("es_odd needs m >= 1 and exponent 1 (p) or 2 (p^2)");
  Presentation P(mod, 2 * m, 1);
  for (int i = 0; i < m; ++i)
    P.set_comm(2 * i, 2 * i + 1, detail::w(mod, {1}));
  if (exponent == 2)
    P.set_power(0, detail::w(mod, {1}));
  return P;
}

/// Extraspecial 2-group of order 2^{2m+1}; arf 1 makes the first pair elliptic.
inline Presentation es2(int m, int arf) {
  Modulus mod(2);
  if (m < 1 || (arf != 0 && arf != 1))
    throw ValidationError("es2 needs m >= 1 and arf in {0, 1}");
  Presentation P(mod, 2 * m, 1);
  for (int i = 0; i < m; ++i)
    P.set_comm(2 * i, 2 * i + 1, detail::w(mod, {1}));
  if (arf == 1) {
    P.set_power(0, detail::w(mod, {1}));
    P.set_power(1, detail::w(mod, {1}));
  }
  return P;
}

inline Presentation elem_abelian(int p, int n) {
  if (n < 0)
    throw ValidationError("elem_abelian needs n >= 0");
  return Presentation(Modulus(p), n, 0);
}

/// Phi_4(1^5) on generators (alpha, alpha_1, alpha_2) with [alpha_i, alpha] = beta_i.
inline Presentation phi4_1_5(int p) {
  Modulus mod = detail::odd_prime(p, "phi4_1_5");
  Presentation P(mod, 3, 2);
  P.set_comm(1, 0, detail::w(mod, {1, 0}));
  P.set_comm(2, 0, detail::w(mod, {0, 1}));
  return P;
}

/// Phi_12(1^6) = ES_p(p^3) x ES_p(p^3).
inline Presentation phi12_1_6(int p) {
  detail::odd_prime(p, "phi12_1_6");
  return direct_product(es_odd(p, 1, 1), es_odd(p, 1, 1));
}

/// Phi_13(1^6): [a1, a2] = b1, [a1, a3] = b2, [a2, a4] = b2.
inline Presentation phi13_1_6(int p) {
  Modulus mod = detail::odd_prime(p, "phi13_1_6");
  Presentation P(mod, 4, 2);
  P.set_comm(0, 1, detail::w(mod, {1, 0}));
  P.set_comm(0, 2, detail::w(mod, {0, 1}));
  P.set_comm(1, 3, detail::w(mod, {0, 1}));
  return P;
}

/// Phi_15(1^6): [a1, a2] = [a3, a4] = b1, [a1, a3] = b2, [a2, a4] = b2^g with g
/// a non-residue.
inline Presentation phi15_1_6(int p) {
  Modulus mod = detail::odd_prime(p, "phi15_1_6");
  const int g = nonresidue(p);
  Presentation P(mod, 4, 2);
  P.set_comm(0, 1, detail::w(mod, {1, 0}));
  P.set_comm(0, 2, detail::w(mod, {0, 1}));
  P.set_comm(2, 3, detail::w(mod, {1, 0}));
  P.set_comm(1, 3, detail::w(mod, {0, g}));
  return P;
}

/// [x2, x1] = [x5, x3] = c1, [x3, x1] = [x5, x4] = c2, exponent p.
inline Presentation t_group(int p) {
  Modulus mod = detail::odd_prime(p, "t_group");
  Presentation P(mod, 5, 2);
  P.set_comm(1, 0, detail::w(mod, {1, 0}));
  P.set_comm(4, 2, detail::w(mod, {1, 0}));
  P.set_comm(2, 0, detail::w(mod, {0, 1}));
  P.set_comm(4, 3, detail::w(mod, {0, 1}));
  return P;
}

} // namespace catalog

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"q8",       "d8",        "es_odd",    "es2",
                                                 "elem_abelian", "phi4_1_5", "phi12_1_6", "phi13_1_6",
                                                 "phi15_1_6", "t_group"};
  return names;
}

/// Builds a named group from positional integer arguments:
///   q8 [2], d8 [2], es2 [2] m arf, es_odd p m exponent, elem_abelian p n,
///   phi4_1_5 p, phi12_1_6 p, phi13_1_6 p, phi15_1_6 p, t_group p.
/// A leading 2 for the p = 2 names is accepted and dropped.
inline Presentation make_named(std::string_view name, std::vector<int> args) {
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw ValidationError("catalog group '" + std::string(name) + "' takes " + std::to_string(n) +
                            " parameter(s), got " + std::to_string(args.size()));
  };
  const bool two_only = name == "q8" || name == "d8" || name == "es2";
  if (two_only && !args.empty() && args.size() == (name == "es2" ? 3u : 1u)) {
    if (args.front() != 2)
      throw ValidationError("catalog group '" + std::string(name) + "' exists only for p = 2");
    args.erase(args.begin());
  }
  if (name == "q8") {
    need(0);
    return catalog::q8();
  }
  if (name == "d8") {
    need(0);
    return catalog::d8();
  }
  if (name == "es2") {
    need(2);
    return catalog::es2(args[0], args[1]);
  }
  if (name == "es_odd") {
    need(3);
    return catalog::es_odd(args[0], args[1], args[2]);
  }
  if (name == "elem_abelian") {
    need(2);
    return catalog::elem_abelian(args[0], args[1]);
  }
  need(1);
  if (name == "phi4_1_5")
    return catalog::phi4_1_5(args[0]);
  if (name == "phi12_1_6")
    return catalog::phi12_1_6(args[0]);
  if (name == "phi13_1_6")
    return catalog::phi13_1_6(args[0]);
  if (name == "phi15_1_6")
    return catalog::phi15_1_6(args[0]);
  if (name == "t_group")
    return catalog::t_group(args[0]);
  throw ValidationError("unknown catalog group '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Recognition of quotients with k <= 1

inline IsoType recognize(const Presentation& P) {
  if (P.k() >= 2)
    throw Unsupported("recognize handles k <= 1, got k = " + std::to_string(P.k()));
  const int p = P.p();
  const bool abelian = commutator_span(P).dim() == 0;
  const Subspace gp = power_span(P);
  if (abelian) {
    if (gp.dim() == 0)
      return ElementaryAbelian{P.d() + P.k()};
    return Zp2TimesElem{P.d() - 1};
  }
  const Subspace rad = common_radical(P);
  const int m = (P.d() - static_cast<int>(rad.dim())) / 2;
  const int a = static_cast<int>(rad.dim());
  // f is additive on the radical, so vanishing on a basis suffices
  bool f_vanishes_on_rad = true;
  for (const Vector& v : rad.basis())
    f_vanishes_on_rad = f_vanishes_on_rad && eval_f(P, v).is_zero();

  if (p != 2) {
    if (gp.dim() == 0)
      return ESodd{1, m, a};
    if (f_vanishes_on_rad)
      return ESodd{2, m, a};
    return OtherType{"p-th powers meet the centre outside G'"};
  }
  if (!f_vanishes_on_rad)
    return OtherType{"squares meet the centre outside G'"};
  // complement of rad spanned by the non-pivot unit vectors
  std::vector<int> comp;
  {
    std::vector<bool> piv(static_cast<std::size_t>(P.d()), false);
    for (int c : rad.pivots())
      piv[c] = true;
    for (int i = 0; i < P.d(); ++i)
      if (!piv[i])
        comp.push_back(i);
  }
  const int arf = arf_by_count(static_cast<int>(comp.size()), [&](unsigned long long mask) {
    Vector v = P.zero_v();
    for (std::size_t b = 0; b < comp.size(); ++b)
      if ((mask >> b) & 1U)
        v.set(comp[b], 1);
    return eval_f(P, v)[0];
  });
  return ES2{arf, m, a};
}

// ---------------------------------------------------------------------------
// Pencils of alternating forms on F_p^4

enum class PencilType { degenerate, split, square, irreducible };

inline std::string_view to_string(PencilType t) {
  switch (t) {
  case PencilType::degenerate:
    return "degenerate";
  case PencilType::split:
    return "split";
  case PencilType::square:
    return "square";
  case PencilType::irreducible:
    return "irreducible";
  }
  return "?";
}

/// Type of the binary quadratic form Pf(x B_1 + y B_2) = a12 a34 - a13 a24 + a14 a23,
/// where B_l is the l-th coordinate of the commutator map. A GL(4) x GL(2)
/// invariant of the pencil; requires d = 4, k = 2.
inline PencilType pencil_type(const Presentation& P) {
  if (P.d() != 4 || P.k() != 2)
    throw Unsupported("pencil type needs d = 4 and k = 2");
  const Modulus& mod = P.modulus();
  // Pf as a quadratic in (x, y): entry (i, j) is x c_ij[0] + y c_ij[1]
  auto term = [&](int i, int j, int m, int n) {
    const Vector& u = P.comm(i, j);
    const Vector& v = P.comm(m, n);
    return std::array<long long, 3>{static_cast<long long>(u[0]) * v[0],
                                    static_cast<long long>(u[0]) * v[1] + static_cast<long long>(u[1]) * v[0],
                                    static_cast<long long>(u[1]) * v[1]};
  };
  const auto t1 = term(0, 1, 2, 3);
  const auto t2 = term(0, 2, 1, 3);
  const auto t3 = term(0, 3, 1, 2);
  const Residue a = mod.reduce(t1[0] - t2[0] + t3[0]);
  const Residue b = mod.reduce(t1[1] - t2[1] + t3[1]);
  const Residue c = mod.reduce(t1[2] - t2[2] + t3[2]);
  if (a == 0 && b == 0 && c == 0)
    return PencilType::degenerate;
  const int p = P.p();
  if (p == 2) {
    if (b == 0)
      return PencilType::square;
    // roots among (1:0), (0:1), (1:1)
    const bool root = a == 0 || c == 0 || mod.reduce(a + b + c) == 0;
    return root ? PencilType::split : PencilType::irreducible;
  }
  const Residue disc = mod.reduce(static_cast<long long>(b) * b - 4LL * a * c);
  if (disc == 0)
    return PencilType::square;
  for (int x = 1; x < p; ++x)
    if (mod.reduce(static_cast<long long>(x) * x) == disc)
      return PencilType::split;
  return PencilType::irreducible;
}

} // namespace schur
