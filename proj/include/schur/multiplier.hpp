#pragma once

// Schur multiplier of a class-2 group with elementary abelian G/G' through the
// Blackburn-Evens description:
//
//   V = G/G', W = G', X = X1 + X2 inside V (x) W,
//   N = (V (x) W) / X,  M / N = Ker(rho : /\^2 V -> W),
//   and the p-th power map of M factors through sigma : Ker rho -> N.
//
// M is abelian of exponent dividing p^2 with M^p = sigma(Ker rho), hence
// M = (Z_{p^2})^s x (Z_p)^t with s = dim sigma(Ker rho).
//
// Tensors use the global layout (i, l) -> i * k + l.

#include <cstddef>
#include <string>
#include <vector>

#include "schur/errors.hpp"
#include "schur/fplin.hpp"
#include "schur/presentation.hpp"

namespace schur {

struct MultiplierInvariants {
  int dim_X1 = 0;
  int dim_X2 = 0;
  int dim_X = 0;
  int dim_kerRho = 0;
  int dim_N = 0;
  int s = 0; // Z_{p^2} factors
  int t = 0; // Z_p factors
  int order_exponent = 0;
  bool elementary_abelian = true;

  friend bool operator==(const MultiplierInvariants&, const MultiplierInvariants&) = default;
};

struct EpicenterReport {
  Subspace epicenter;
  bool capable = false;
};

struct GaneaRecord {
  int lhs_exponent = 0;
  int rhs_exponent = 0;
  int im_lambda_dim = 0;

  friend bool operator==(const GaneaRecord&, const GaneaRecord&) = default;
};

inline Vector tensor(const Vector& v, const Vector& w) {
  const std::size_t k = w.size();
  Vector out(v.modulus(), v.size() * k);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0)
      continue;
    for (std::size_t l = 0; l < k; ++l)
      out.set(i * k + l, v.modulus().mul(v[i], w[l]));
  }
  return out;
}

/// Basis-indexed e_i (x) w.
inline Vector tensor_unit(const Presentation& P, int i, const Vector& w) {
  Vector out(P.modulus(), static_cast<std::size_t>(P.d() * P.k()));
  for (int l = 0; l < P.k(); ++l)
    out.set(static_cast<std::size_t>(i * P.k() + l), w[l]);
  return out;
}

/// Requires W = G' (commutator_rank = k); every quotient of a special group by
/// a central subgroup keeps this property.
inline void require_w_is_derived(const Presentation& P) {
  if (static_cast<int>(commutator_span(P).dim()) != P.k())
    throw ValidationError("the commutators must span W (G' = W); got commutator rank " +
                          std::to_string(commutator_span(P).dim()) + " < k = " + std::to_string(P.k()));
}

inline Subspace x1_subspace(const Presentation& P) {
  const std::size_t dk = static_cast<std::size_t>(P.d() * P.k());
  EchelonBasis eb(P.modulus(), dk);
  for (int i = 0; i < P.d(); ++i)
    for (int j = i + 1; j < P.d(); ++j)
      for (int m = j + 1; m < P.d(); ++m) {
        Vector jac = tensor_unit(P, i, P.basis_commutator(j, m));
        jac += tensor_unit(P, j, P.basis_commutator(m, i));
        jac += tensor_unit(P, m, P.basis_commutator(i, j));
        eb.insert(jac);
      }
  return Subspace::from_echelon(eb);
}

/// Span of {v (x) f(v) : v in V}.
///
/// Odd p: f is linear, so v (x) f(v) is quadratic in v and its image is spanned
/// by the diagonal terms and the polarizations e_i (x) f(e_j) + e_j (x) f(e_i).
/// p = 2: v (x) f(v) is cubic; all 2^d vectors are used for d <= 16, and for
/// larger d the vectors of weight <= 3, which span the same space.
inline Subspace x2_subspace(const Presentation& P) {
  const std::size_t dk = static_cast<std::size_t>(P.d() * P.k());
  EchelonBasis eb(P.modulus(), dk);
  const int d = P.d();
  if (P.p() != 2) {
    std::vector<Vector> fe;
    for (int i = 0; i < d; ++i)
      fe.push_back(P.power(i));
    for (int i = 0; i < d; ++i) {
      eb.insert(tensor_unit(P, i, fe[i]));
      for (int j = i + 1; j < d; ++j)
        eb.insert(tensor_unit(P, i, fe[j]) + tensor_unit(P, j, fe[i]));
    }
    return Subspace::from_echelon(eb);
  }
  auto add_mask = [&](unsigned long mask) {
    Vector v = P.zero_v();
    for (int i = 0; i < d; ++i)
      if ((mask >> i) & 1UL)
        v.set(i, 1);
    eb.insert(tensor(v, eval_f(P, v)));
  };
  if (d <= 16) {
    for (unsigned long mask = 1; mask < (1UL << d) && !eb.full(); ++mask)
      add_mask(mask);
  } else {
    for (int a = 0; a < d; ++a) {
      add_mask(1UL << a);
      for (int b = a + 1; b < d; ++b) {
        add_mask((1UL << a) | (1UL << b));
        for (int c = b + 1; c < d; ++c)
          add_mask((1UL << a) | (1UL << b) | (1UL << c));
      }
    }
  }
  return Subspace::from_echelon(eb);
}

/// Kernel of rho : /\^2 V -> W, e_i /\ e_j -> c_ij, in the basis of pairs i < j.
inline Subspace rho_kernel(const Presentation& P) {
  const std::size_t pairs = Presentation::pair_count(P.d());
  std::vector<Vector> rows;
  for (int l = 0; l < P.k(); ++l) {
    Vector row(P.modulus(), pairs);
    for (int i = 0; i < P.d(); ++i)
      for (int j = i + 1; j < P.d(); ++j)
        row.set(Presentation::pair_index(i, j, P.d()), P.comm(i, j)[l]);
    rows.push_back(std::move(row));
  }
  return kernel(P.modulus(), pairs, rows);
}

/// All subspaces of X and their derived data for one presentation.
class BlackburnEvens {
public:
  explicit BlackburnEvens(const Presentation& P)
      : P_((require_w_is_derived(P), P)), X1_(x1_subspace(P)), X2_(x2_subspace(P)), X_(sum(X1_, X2_)), ker_rho_(rho_kernel(P)) {}

  const Presentation& presentation() const { return P_; }
  const Subspace& X1() const { return X1_; }
  const Subspace& X2() const { return X2_; }
  const Subspace& X() const { return X_; }
  const Subspace& kernel_rho() const { return ker_rho_; }

  /// sigma~(u, v) = u (x) f(v) + binom(p, 2) v (x) C(u, v), before reduction mod X.
  Vector sigma_lift(const Vector& u, const Vector& v) const {
    Vector out = tensor(u, eval_f(P_, v));
    const Residue b = P_.modulus().binom_p_2();
    if (b != 0)
      out.axpy(b, tensor(v, commutator(P_, u, v)));
    return out;
  }

  /// sigma~ extended linearly from the basis e_i /\ e_j to /\^2 V.
  Vector sigma_on_wedge(const Vector& wedge) const {
    const int d = P_.d();
    Vector out(P_.modulus(), static_cast<std::size_t>(d * P_.k()));
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        const Residue c = wedge[Presentation::pair_index(i, j, d)];
        if (c != 0)
          out.axpy(c, sigma_lift(Vector::unit(P_.modulus(), d, i), Vector::unit(P_.modulus(), d, j)));
      }
    return out;
  }

  MultiplierInvariants invariants() const {
    MultiplierInvariants inv;
    const int dk = P_.d() * P_.k();
    inv.dim_X1 = static_cast<int>(X1_.dim());
    inv.dim_X2 = static_cast<int>(X2_.dim());
    inv.dim_X = static_cast<int>(X_.dim());
    inv.dim_kerRho = static_cast<int>(ker_rho_.dim());
    inv.dim_N = dk - inv.dim_X;
    EchelonBasis image(P_.modulus(), static_cast<std::size_t>(dk));
    for (const Vector& x : X_.basis())
      image.insert(x);
    for (const Vector& b : ker_rho_.basis())
      image.insert(sigma_on_wedge(b));
    inv.s = static_cast<int>(image.rank()) - inv.dim_X;
    inv.order_exponent = inv.dim_kerRho + inv.dim_N;
    inv.t = inv.order_exponent - 2 * inv.s;
    inv.elementary_abelian = inv.s == 0;
    return inv;
  }

private:
  Presentation P_;
  Subspace X1_;
  Subspace X2_;
  Subspace X_;
  Subspace ker_rho_;
};

inline Subspace x_subspace(const Presentation& P) { return sum(x1_subspace(P), x2_subspace(P)); }

inline MultiplierInvariants multiplier_invariants(const Presentation& P) {
  return BlackburnEvens(P).invariants();
}

/// Abelian invariants of M(G): s copies of p^2 followed by t copies of p.
inline std::vector<long long> abelian_invariants(const MultiplierInvariants& inv, int p) {
  std::vector<long long> out(static_cast<std::size_t>(inv.s), static_cast<long long>(p) * p);
  out.insert(out.end(), static_cast<std::size_t>(inv.t), p);
  return out;
}

inline void require_special_rank2(const Presentation& P) {
  const PresentationDiagnostics diag = validate(P);
  if (!diag.is_special_rank2)
    throw NotSpecial("group is not special of rank 2 (commutator rank " +
                     std::to_string(diag.commutator_rank) + ", radical dim " +
                     std::to_string(diag.common_radical_dim) + ", k = " + std::to_string(P.k()) + ")");
}

/// log_p |M(G)| from the order formula for special groups of rank 2:
/// d(d-1)/2 - 2 + 2d - dim X.
inline int eq1_order(const Presentation& P, const Subspace& X) {
  require_special_rank2(P);
  const int d = P.d();
  return d * (d - 1) / 2 - 2 + 2 * d - static_cast<int>(X.dim());
}

inline int eq1_order(const Presentation& P) { return eq1_order(P, x_subspace(P)); }

/// Z*(G) = {w in W : e_i (x) w in X for every i}; requires Z(G) = G' = W.
inline EpicenterReport epicenter(const Presentation& P, const Subspace& X) {
  if (!validate(P).is_special)
    throw NotSpecial("epicenter requires a special group (Z(G) = G' = W)");
  const int d = P.d();
  const int k = P.k();
  const std::size_t dk = static_cast<std::size_t>(d * k);
  // columns: image of e_l under w -> (e_i (x) w mod X)_i
  std::vector<Vector> cols;
  for (int l = 0; l < k; ++l) {
    Vector col(P.modulus(), static_cast<std::size_t>(d) * dk);
    const Vector el = Vector::unit(P.modulus(), static_cast<std::size_t>(k), static_cast<std::size_t>(l));
    for (int i = 0; i < d; ++i) {
      const Vector red = X.reduce(tensor_unit(P, i, el));
      for (std::size_t c = 0; c < dk; ++c)
        col.set(static_cast<std::size_t>(i) * dk + c, red[c]);
    }
    cols.push_back(std::move(col));
  }
  std::vector<Vector> rows;
  for (std::size_t r = 0; r < static_cast<std::size_t>(d) * dk; ++r) {
    Vector row(P.modulus(), static_cast<std::size_t>(k));
    bool nonzero = false;
    for (int l = 0; l < k; ++l) {
      row.set(static_cast<std::size_t>(l), cols[l][r]);
      nonzero = nonzero || cols[l][r] != 0;
    }
    if (nonzero)
      rows.push_back(std::move(row));
  }
  Subspace epi = kernel(P.modulus(), static_cast<std::size_t>(k), rows);
  const bool capable = epi.dim() == 0;
  return {std::move(epi), capable};
}

inline EpicenterReport epicenter(const Presentation& P) { return epicenter(P, x_subspace(P)); }

/// Both sides of |M(G)| / |Im lambda_Z| = |M(G/Z)| / |G' n Z| as exponents of p,
/// with Ker lambda_Z = X n (V (x) Z). quotient_inv are the invariants of G/Z.
inline GaneaRecord ganea_check(const Presentation& P, const Subspace& Z, const MultiplierInvariants& inv,
                               const Subspace& X, const MultiplierInvariants& quotient_inv) {
  if (!(Z.modulus() == P.modulus()) || Z.ambient_dim() != static_cast<std::size_t>(P.k()))
    throw DimensionMismatch("central subgroup must be a subspace of W = F_p^" + std::to_string(P.k()));
  const std::size_t dk = static_cast<std::size_t>(P.d() * P.k());
  std::vector<Vector> vz;
  for (int i = 0; i < P.d(); ++i)
    for (const Vector& z : Z.basis())
      vz.push_back(tensor_unit(P, i, z));
  const Subspace VZ = Subspace::span(P.modulus(), dk, vz);
  const int ker_dim = static_cast<int>(intersect(X, VZ).dim());
  GaneaRecord rec;
  rec.im_lambda_dim = P.d() * static_cast<int>(Z.dim()) - ker_dim;
  rec.lhs_exponent = inv.order_exponent - rec.im_lambda_dim;
  const int derived_meet = static_cast<int>(intersect(commutator_span(P), Z).dim());
  rec.rhs_exponent = quotient_inv.order_exponent - derived_meet;
  return rec;
}

inline GaneaRecord ganea_check(const Presentation& P, const Subspace& Z, const MultiplierInvariants& inv,
                               const Subspace& X) {
  if (!(Z.modulus() == P.modulus()) || Z.ambient_dim() != static_cast<std::size_t>(P.k()))
    throw DimensionMismatch("central subgroup must be a subspace of W = F_p^" + std::to_string(P.k()));
  return ganea_check(P, Z, inv, X, multiplier_invariants(central_quotient(P, Z)));
}

inline GaneaRecord ganea_check(const Presentation& P, const Subspace& Z) {
  BlackburnEvens be(P);
  return ganea_check(P, Z, be.invariants(), be.X());
}

/// Every subspace of F_p^k, enumerated through reduced row-echelon forms.
inline std::vector<Subspace> all_subspaces(Modulus mod, int k) {
  std::vector<Subspace> out;
  const int p = mod.value();
  for (unsigned pivmask = 0; pivmask < (1U << k); ++pivmask) {
    std::vector<int> piv;
    for (int c = 0; c < k; ++c)
      if ((pivmask >> c) & 1U)
        piv.push_back(c);
    // free slots: row r, column c > piv[r], c not a pivot
    std::vector<std::pair<int, int>> slots;
    for (std::size_t r = 0; r < piv.size(); ++r)
      for (int c = piv[r] + 1; c < k; ++c)
        if (!((pivmask >> c) & 1U))
          slots.emplace_back(static_cast<int>(r), c);
    long long combos = 1;
    for (std::size_t s = 0; s < slots.size(); ++s)
      combos *= p;
    for (long long code = 0; code < combos; ++code) {
      std::vector<Vector> rows(piv.size(), Vector(mod, static_cast<std::size_t>(k)));
      for (std::size_t r = 0; r < piv.size(); ++r)
        rows[r].set(piv[r], 1);
      long long rest = code;
      for (const auto& [r, c] : slots) {
        rows[r].set(c, rest % p);
        rest /= p;
      }
      out.push_back(Subspace::span(mod, static_cast<std::size_t>(k), rows));
    }
  }
  return out;
}

/// Order-p subgroups (lines) of F_p^k; p + 1 of them when k = 2.
inline std::vector<Subspace> all_lines(Modulus mod, int k) {
  std::vector<Subspace> out;
  for (Subspace& s : all_subspaces(mod, k))
    if (s.dim() == 1)
      out.push_back(std::move(s));
  return out;
}

} // namespace schur
