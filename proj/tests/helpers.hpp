#pragma once

#include <random>
#include <vector>

#include "schur/fplin.hpp"
#include "schur/presentation.hpp"

namespace schur::testing {

inline Vector random_vector(std::mt19937_64& rng, Modulus mod, std::size_t n) {
  std::uniform_int_distribution<int> dist(0, mod.value() - 1);
  Vector v(mod, n);
  for (std::size_t i = 0; i < n; ++i)
    v.set(i, dist(rng));
  return v;
}

inline std::vector<Vector> random_rows(std::mt19937_64& rng, Modulus mod, std::size_t n, std::size_t count) {
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < count; ++i)
    rows.push_back(random_vector(rng, mod, n));
  return rows;
}

/// Images of e_1..e_n under a uniformly random invertible matrix.
inline std::vector<Vector> random_invertible(std::mt19937_64& rng, Modulus mod, int n) {
  for (;;) {
    auto rows = random_rows(rng, mod, static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    if (Subspace::span(mod, static_cast<std::size_t>(n), rows).dim() == static_cast<std::size_t>(n))
      return rows;
  }
}

/// Random structure constants; nothing about the result is guaranteed.
inline Presentation random_presentation(std::mt19937_64& rng, Modulus mod, int d, int k) {
  Presentation P(mod, d, k);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j)
      P.set_comm(i, j, random_vector(rng, mod, static_cast<std::size_t>(k)));
    P.set_power(i, random_vector(rng, mod, static_cast<std::size_t>(k)));
  }
  return P;
}

/// Random presentation whose commutators span W.
inline Presentation random_derived_full(std::mt19937_64& rng, Modulus mod, int d, int k) {
  for (;;) {
    Presentation P = random_presentation(rng, mod, d, k);
    if (commutator_span(P).dim() == static_cast<std::size_t>(k))
      return P;
  }
}

/// Random special presentation of rank k.
inline Presentation random_special(std::mt19937_64& rng, Modulus mod, int d, int k) {
  for (;;) {
    Presentation P = random_derived_full(rng, mod, d, k);
    if (validate(P).is_special)
      return P;
  }
}

inline Element random_element(std::mt19937_64& rng, const Presentation& P) {
  return {random_vector(rng, P.modulus(), static_cast<std::size_t>(P.d())),
          random_vector(rng, P.modulus(), static_cast<std::size_t>(P.k()))};
}

/// Every vector of F_p^n (p^n must be small).
inline std::vector<Vector> all_vectors(Modulus mod, std::size_t n) {
  std::vector<Vector> out;
  long long total = 1;
  for (std::size_t i = 0; i < n; ++i)
    total *= mod.value();
  for (long long x = 0; x < total; ++x) {
    Vector v(mod, n);
    long long y = x;
    for (std::size_t i = 0; i < n; ++i, y /= mod.value())
      v.set(i, y % mod.value());
    out.push_back(std::move(v));
  }
  return out;
}

/// Every combination sum c_i rows_i, for brute-force membership.
inline std::vector<Vector> all_combinations(Modulus mod, std::size_t n, const std::vector<Vector>& rows) {
  std::vector<Vector> out;
  for (const Vector& c : all_vectors(mod, rows.size())) {
    Vector v(mod, n);
    for (std::size_t i = 0; i < rows.size(); ++i)
      v.axpy(c[i], rows[i]);
    out.push_back(std::move(v));
  }
  return out;
}

} // namespace schur::testing
