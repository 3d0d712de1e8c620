#pragma once

// Class-2 p-groups with elementary abelian central part, given by structure
// constants.
//
// Generators g_1..g_d of V = F_p^d and a central subgroup W = F_p^k with
//   [g_i, g_j] = z^{c_ij}   (i < j, convention [x,y] = x^-1 y^-1 x y)
//   g_i^p      = z^{f_i}
// Elements are normal forms g_1^{a_1} ... g_d^{a_d} z^w. Indices are 0-based
// in code and 1-based in the JSON file format.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "schur/errors.hpp"
#include "schur/fplin.hpp"

namespace schur {

class Presentation {
public:
  static constexpr int kMaxRank = 24; // d + k guard

  Presentation(Modulus mod, int d, int k) : mod_(mod), d_(d), k_(k) {
    if (d < 0 || k < 0)
      throw ValidationError("negative generator count");
    if (d + k > kMaxRank)
      throw ValidationError("d + k = " + std::to_string(d + k) + " exceeds " +
                            std::to_string(kMaxRank));
    comm_.assign(pair_count(d), Vector(mod, static_cast<std::size_t>(k)));
    pow_.assign(static_cast<std::size_t>(d), Vector(mod, static_cast<std::size_t>(k)));
  }

  static std::size_t pair_count(int d) { return d > 1 ? static_cast<std::size_t>(d) * (d - 1) / 2 : 0; }

  /// Position of the pair (i, j), i < j, in lexicographic order.
  static std::size_t pair_index(int i, int j, int d) {
    return static_cast<std::size_t>(i) * (2 * d - i - 1) / 2 + static_cast<std::size_t>(j - i - 1);
  }

  const Modulus& modulus() const { return mod_; }
  int p() const { return mod_.value(); }
  int d() const { return d_; }
  int k() const { return k_; }
  /// log_p |G|
  int order_exponent() const { return d_ + k_; }

  const Vector& comm(int i, int j) const {
    check_pair(i, j);
    return comm_[pair_index(i, j, d_)];
  }

  /// Sets [g_i, g_j]. For i > j the value is stored as c_ji = -value.
  void set_comm(int i, int j, const Vector& value) {
    check_w(value);
    if (i > j) {
      set_comm(j, i, value.scaled(mod_.neg(1)));
      return;
    }
    check_pair(i, j);
    comm_[pair_index(i, j, d_)] = value;
  }

  const Vector& power(int i) const { return pow_.at(static_cast<std::size_t>(i)); }

  void set_power(int i, const Vector& value) {
    check_w(value);
    pow_.at(static_cast<std::size_t>(i)) = value;
  }

  /// C(e_i, e_j) for any ordered pair.
  Vector basis_commutator(int i, int j) const {
    if (i == j)
      return Vector(mod_, static_cast<std::size_t>(k_));
    if (i < j)
      return comm(i, j);
    return comm(j, i).scaled(mod_.neg(1));
  }

  Vector zero_v() const { return Vector(mod_, static_cast<std::size_t>(d_)); }
  Vector zero_w() const { return Vector(mod_, static_cast<std::size_t>(k_)); }

  friend bool operator==(const Presentation&, const Presentation&) = default;

private:
  void check_pair(int i, int j) const {
    if (i < 0 || j >= d_ || i >= j)
      throw ValidationError("invalid generator pair (" + std::to_string(i + 1) + ", " +
                            std::to_string(j + 1) + ")");
  }
  void check_w(const Vector& w) const {
    if (!(w.modulus() == mod_) || w.size() != static_cast<std::size_t>(k_))
      throw DimensionMismatch("structure constant must have length k = " + std::to_string(k_));
  }

  Modulus mod_;
  int d_;
  int k_;
  std::vector<Vector> comm_;
  std::vector<Vector> pow_;
};

namespace detail {
inline void check_v(const Presentation& P, const Vector& v) {
  if (!(v.modulus() == P.modulus()) || v.size() != static_cast<std::size_t>(P.d()))
    throw DimensionMismatch("vector in V must have length d = " + std::to_string(P.d()));
}
} // namespace detail

/// C(u, v) = sum_{i<j} (u_i v_j - u_j v_i) c_ij.
inline Vector commutator(const Presentation& P, const Vector& u, const Vector& v) {
  detail::check_v(P, u);
  detail::check_v(P, v);
  const Modulus& m = P.modulus();
  Vector out = P.zero_w();
  for (int i = 0; i < P.d(); ++i)
    for (int j = i + 1; j < P.d(); ++j) {
      const Residue coef = m.sub(m.mul(u[i], v[j]), m.mul(u[j], v[i]));
      out.axpy(coef, P.comm(i, j));
    }
  return out;
}

/// The p-th power map f : V -> W. Linear for odd p; for p = 2 it is the
/// quadratic map with polar form C.
inline Vector eval_f(const Presentation& P, const Vector& v) {
  detail::check_v(P, v);
  const Modulus& m = P.modulus();
  Vector out = P.zero_w();
  for (int i = 0; i < P.d(); ++i)
    out.axpy(v[i], P.power(i));
  if (P.p() == 2)
    for (int i = 0; i < P.d(); ++i)
      for (int j = i + 1; j < P.d(); ++j)
        out.axpy(m.mul(v[i], v[j]), P.comm(i, j));
  return out;
}

struct Element {
  Vector a; // exponents of g_1..g_d
  Vector z; // central part

  friend bool operator==(const Element&, const Element&) = default;
};

inline Element identity(const Presentation& P) { return {P.zero_v(), P.zero_w()}; }

inline Element elem_mul(const Presentation& P, const Element& x, const Element& y) {
  detail::check_v(P, x.a);
  detail::check_v(P, y.a);
  x.z.check_compatible(P.zero_w());
  y.z.check_compatible(P.zero_w());
  const Modulus& m = P.modulus();
  const int p = P.p();
  Element out{P.zero_v(), x.z + y.z};
  // moving g_j^{b_j} left past g_i^{a_i} (i > j) picks up [g_i, g_j]^{a_i b_j}
  for (int i = 0; i < P.d(); ++i)
    for (int j = 0; j < i; ++j) {
      const Residue coef = m.mul(x.a[i], y.a[j]);
      if (coef != 0)
        out.z.axpy(coef, P.basis_commutator(i, j));
    }
  for (int i = 0; i < P.d(); ++i) {
    const int s = x.a[i] + y.a[i];
    out.a.set(i, s);
    if (s >= p)
      out.z += P.power(i);
  }
  return out;
}

inline Element elem_pow(const Presentation& P, const Element& x, long long n) {
  if (n < 0)
    throw ValidationError("negative exponent");
  Element acc = identity(P);
  for (long long i = 0; i < n; ++i)
    acc = elem_mul(P, acc, x);
  return acc;
}

/// Span of {C(u, v)}, i.e. G' inside W.
inline Subspace commutator_span(const Presentation& P) {
  std::vector<Vector> rows;
  for (int i = 0; i < P.d(); ++i)
    for (int j = i + 1; j < P.d(); ++j)
      rows.push_back(P.comm(i, j));
  return Subspace::span(P.modulus(), static_cast<std::size_t>(P.k()), rows);
}

/// {v in V : C(v, .) = 0}.
inline Subspace common_radical(const Presentation& P) {
  // rows indexed by (j, l): v -> C(v, e_j)_l = sum_i v_i C(e_i, e_j)_l
  std::vector<Vector> rows;
  for (int j = 0; j < P.d(); ++j)
    for (int l = 0; l < P.k(); ++l) {
      Vector row = P.zero_v();
      for (int i = 0; i < P.d(); ++i)
        row.set(i, P.basis_commutator(i, j)[l]);
      rows.push_back(std::move(row));
    }
  return kernel(P.modulus(), static_cast<std::size_t>(P.d()), rows);
}

/// Span of {f(v) : v in V}, i.e. G^p inside W.
///
/// The image span of a map of degree <= 2 is spanned by its values on e_i and
/// e_i + e_j, which covers the quadratic p = 2 case.
inline Subspace power_span(const Presentation& P) {
  std::vector<Vector> rows;
  for (int i = 0; i < P.d(); ++i) {
    Vector ei = Vector::unit(P.modulus(), P.d(), i);
    rows.push_back(eval_f(P, ei));
    if (P.p() == 2)
      for (int j = i + 1; j < P.d(); ++j) {
        Vector eij = ei;
        eij.set(j, 1);
        rows.push_back(eval_f(P, eij));
      }
  }
  return Subspace::span(P.modulus(), static_cast<std::size_t>(P.k()), rows);
}

struct PresentationDiagnostics {
  int commutator_rank = 0;
  int common_radical_dim = 0;
  int r = 0; // dim G^p
  bool is_special_rank2 = false;
  /// Z(G) = G' = W (any rank k).
  bool is_special = false;

  friend bool operator==(const PresentationDiagnostics&, const PresentationDiagnostics&) = default;
};

inline PresentationDiagnostics validate(const Presentation& P) {
  PresentationDiagnostics diag;
  const Subspace gp = power_span(P);
  const Subspace cs = commutator_span(P);
  diag.commutator_rank = static_cast<int>(cs.dim());
  diag.common_radical_dim = static_cast<int>(common_radical(P).dim());
  diag.r = static_cast<int>(gp.dim());
  diag.is_special = diag.commutator_rank == P.k() && diag.common_radical_dim == 0 && P.k() > 0;
  diag.is_special_rank2 = P.k() == 2 && diag.commutator_rank == 2 && diag.common_radical_dim == 0;
  // polarization puts every C(u, v) = f(u+v) - f(u) - f(v) into G^2
  if (P.p() == 2 && !gp.contains(cs))
    throw Error("internal: p = 2 power span does not contain the commutator span");
  return diag;
}

/// Projection W -> W/Z onto the coordinates that are not pivots of Z.
class QuotientMap {
public:
  explicit QuotientMap(Subspace Z) : Z_(std::move(Z)) {
    std::vector<bool> piv(Z_.ambient_dim(), false);
    for (int c : Z_.pivots())
      piv[c] = true;
    for (std::size_t c = 0; c < Z_.ambient_dim(); ++c)
      if (!piv[c])
        keep_.push_back(static_cast<int>(c));
  }

  std::size_t target_dim() const { return keep_.size(); }

  Vector operator()(const Vector& w) const {
    Vector red = Z_.reduce(w);
    Vector out(w.modulus(), keep_.size());
    for (std::size_t i = 0; i < keep_.size(); ++i)
      out.set(i, red[keep_[i]]);
    return out;
  }

private:
  Subspace Z_;
  std::vector<int> keep_;
};

inline Presentation central_quotient(const Presentation& P, const Subspace& Z) {
  if (!(Z.modulus() == P.modulus()) || Z.ambient_dim() != static_cast<std::size_t>(P.k()))
    throw DimensionMismatch("central subgroup must live in W = F_p^" + std::to_string(P.k()));
  QuotientMap proj(Z);
  Presentation Q(P.modulus(), P.d(), static_cast<int>(proj.target_dim()));
  for (int i = 0; i < P.d(); ++i) {
    for (int j = i + 1; j < P.d(); ++j)
      Q.set_comm(i, j, proj(P.comm(i, j)));
    Q.set_power(i, proj(P.power(i)));
  }
  return Q;
}

inline Presentation direct_product(const Presentation& A, const Presentation& B) {
  if (!(A.modulus() == B.modulus()))
    throw ValidationError("direct product of presentations over different primes");
  Presentation P(A.modulus(), A.d() + B.d(), A.k() + B.k());
  auto embed = [&](const Vector& w, int offset) {
    Vector out = P.zero_w();
    for (std::size_t l = 0; l < w.size(); ++l)
      out.set(offset + l, w[l]);
    return out;
  };
  for (int i = 0; i < A.d(); ++i) {
    for (int j = i + 1; j < A.d(); ++j)
      P.set_comm(i, j, embed(A.comm(i, j), 0));
    P.set_power(i, embed(A.power(i), 0));
  }
  for (int i = 0; i < B.d(); ++i) {
    for (int j = i + 1; j < B.d(); ++j)
      P.set_comm(A.d() + i, A.d() + j, embed(B.comm(i, j), A.k()));
    P.set_power(A.d() + i, embed(B.power(i), A.k()));
  }
  return P;
}

/// Change of generators: S[i] is the image of e_i in V and T[l] the image of
/// the l-th central basis vector. Returns the presentation with
/// C'(u, v) = T C(S u, S v) and f' = T f S.
inline Presentation transform(const Presentation& P, const std::vector<Vector>& S,
                              const std::vector<Vector>& T) {
  if (S.size() != static_cast<std::size_t>(P.d()) || T.size() != static_cast<std::size_t>(P.k()))
    throw DimensionMismatch("transform matrices have the wrong shape");
  auto apply_T = [&](const Vector& w) {
    Vector out = P.zero_w();
    for (int l = 0; l < P.k(); ++l)
      out.axpy(w[l], T[l]);
    return out;
  };
  Presentation Q(P.modulus(), P.d(), P.k());
  for (int i = 0; i < P.d(); ++i) {
    for (int j = i + 1; j < P.d(); ++j)
      Q.set_comm(i, j, apply_T(commutator(P, S[i], S[j])));
    Q.set_power(i, apply_T(eval_f(P, S[i])));
  }
  return Q;
}

} // namespace schur
