#pragma once

// Exact linear algebra over prime fields F_p with p <= 97.
//
// Residues are stored as canonical representatives in [0, p) and every
// operation reduces eagerly. Subspaces are held in reduced row-echelon form,
// so two equal subspaces always compare equal element-wise.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "schur/errors.hpp"

namespace schur {

using Residue = std::uint8_t;

class Modulus {
public:
  static constexpr int kMaxPrime = 97;

  explicit Modulus(int p) : p_(p) {
    if (p < 2 || p > kMaxPrime || !is_prime(p))
      throw ValidationError("modulus must be a prime in [2, 97], got " + std::to_string(p));
  }

  static constexpr bool is_prime(int n) {
    if (n < 2)
      return false;
    for (int q = 2; q * q <= n; ++q)
      if (n % q == 0)
        return false;
    return true;
  }

  int value() const { return p_; }

  Residue reduce(long long x) const {
    long long r = x % p_;
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const { return static_cast<Residue>((a + b) % p_); }
  Residue sub(Residue a, Residue b) const { return static_cast<Residue>((a + p_ - b) % p_); }
  Residue neg(Residue a) const { return static_cast<Residue>((p_ - a) % p_); }
  Residue mul(Residue a, Residue b) const { return static_cast<Residue>((a * b) % p_); }

  Residue inv(Residue a) const {
    if (a == 0)
      throw Error("inverse of zero residue");
    // extended Euclid on small integers
    int t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      int q = r / new_r;
      t = std::exchange(new_t, t - q * new_t);
      r = std::exchange(new_r, r - q * new_r);
    }
    return reduce(t);
  }

  /// binom(p, 2) reduced mod p: 1 for p = 2, 0 otherwise.
  Residue binom_p_2() const { return reduce(static_cast<long long>(p_) * (p_ - 1) / 2); }

  friend bool operator==(const Modulus&, const Modulus&) = default;

private:
  int p_;
};

class Vector {
public:
  Vector(Modulus mod, std::size_t n) : mod_(mod), coords_(n, 0) {}

  Vector(Modulus mod, std::vector<Residue> coords) : mod_(mod), coords_(std::move(coords)) {
    for (Residue r : coords_)
      if (r >= mod_.value())
        throw ValidationError("coordinate " + std::to_string(r) + " not reduced mod " +
                              std::to_string(mod_.value()));
  }

  /// Builds a vector from arbitrary integers, reducing each mod p.
  static Vector from_ints(Modulus mod, std::initializer_list<long long> xs) {
    Vector v(mod, xs.size());
    std::size_t i = 0;
    for (long long x : xs)
      v.coords_[i++] = mod.reduce(x);
    return v;
  }

  static Vector unit(Modulus mod, std::size_t n, std::size_t i) {
    Vector v(mod, n);
    v.coords_.at(i) = 1;
    return v;
  }

  const Modulus& modulus() const { return mod_; }
  std::size_t size() const { return coords_.size(); }
  Residue operator[](std::size_t i) const { return coords_[i]; }
  void set(std::size_t i, long long x) { coords_.at(i) = mod_.reduce(x); }
  std::span<const Residue> coords() const { return coords_; }
  std::span<Residue> mutable_coords() { return coords_; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](Residue r) { return r == 0; });
  }

  /// this += a * x
  Vector& axpy(Residue a, const Vector& x) {
    check_compatible(x);
    if (a == 0)
      return *this;
    const int p = mod_.value();
    for (std::size_t i = 0; i < coords_.size(); ++i)
      coords_[i] = static_cast<Residue>((coords_[i] + a * x.coords_[i]) % p);
    return *this;
  }

  Vector& operator+=(const Vector& x) { return axpy(1, x); }
  Vector& operator-=(const Vector& x) { return axpy(mod_.neg(1), x); }

  Vector scaled(Residue a) const {
    Vector out(mod_, coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i)
      out.coords_[i] = mod_.mul(a, coords_[i]);
    return out;
  }

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }

  friend bool operator==(const Vector& a, const Vector& b) {
    return a.mod_ == b.mod_ && a.coords_ == b.coords_;
  }
  friend std::strong_ordering operator<=>(const Vector& a, const Vector& b) {
    if (auto c = a.mod_.value() <=> b.mod_.value(); c != 0)
      return c;
    return a.coords_ <=> b.coords_;
  }

  void check_compatible(const Vector& x) const {
    if (!(x.mod_ == mod_) || x.size() != size())
      throw DimensionMismatch("vector shape mismatch: length " + std::to_string(size()) +
                              " vs " + std::to_string(x.size()));
  }

private:
  Modulus mod_;
  std::vector<Residue> coords_;
};

/// Incrementally maintained reduced row-echelon basis.
///
/// Rows are kept fully reduced (zero in every other pivot column), so reducing
/// an incoming vector needs one pass over the pivot columns it touches, and
/// the remaining work is confined to the free columns.
class EchelonBasis {
public:
  EchelonBasis(Modulus mod, std::size_t n)
      : mod_(mod), n_(n), row_of_col_(n, -1), free_cols_(n), scratch_(n, 0) {
    for (std::size_t i = 0; i < n; ++i)
      free_cols_[i] = static_cast<int>(i);
  }

  const Modulus& modulus() const { return mod_; }
  std::size_t ambient_dim() const { return n_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return free_cols_.empty(); }

  bool insert(const Vector& v) {
    if (!(v.modulus() == mod_) || v.size() != n_)
      throw DimensionMismatch("row of length " + std::to_string(v.size()) +
                              " inserted into ambient dimension " + std::to_string(n_));
    std::copy(v.coords().begin(), v.coords().end(), scratch_.begin());
    return insert_dense(scratch_);
  }

  /// Inserts a dense row in place. `v` is left zeroed.
  bool insert_dense(std::span<Residue> v) {
    const int p = mod_.value();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const int c = pivots_[r];
      if (v[c] != 0) {
        eliminate(v, r, v[c], p);
        v[c] = 0;
      }
    }
    return finish(v);
  }

  /// Inserts a row that is zero outside `touched` (indices may repeat).
  /// `v` is left zeroed.
  bool insert_sparse(std::span<Residue> v, std::span<const int> touched) {
    const int p = mod_.value();
    for (int c : touched) {
      const int r = row_of_col_[c];
      if (r >= 0 && v[c] != 0) {
        eliminate(v, static_cast<std::size_t>(r), v[c], p);
        v[c] = 0;
      }
    }
    return finish(v);
  }

  /// Rows sorted by pivot column, i.e. the canonical RREF basis.
  std::vector<Vector> sorted_rows() const {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
    std::vector<Vector> out;
    out.reserve(rows_.size());
    for (std::size_t i : order)
      out.emplace_back(mod_, rows_[i]);
    return out;
  }

  std::vector<int> sorted_pivots() const {
    std::vector<int> piv = pivots_;
    std::sort(piv.begin(), piv.end());
    return piv;
  }

private:
  void eliminate(std::span<Residue> v, std::size_t r, Residue a, int p) {
    const Residue na = static_cast<Residue>(p - a);
    const std::vector<Residue>& row = rows_[r];
    for (int f : free_cols_)
      v[f] = static_cast<Residue>((v[f] + na * row[f]) % p);
  }

  bool finish(std::span<Residue> v) {
    const int p = mod_.value();
    auto lead = std::find_if(free_cols_.begin(), free_cols_.end(), [&](int f) { return v[f] != 0; });
    if (lead == free_cols_.end())
      return false;
    const int f0 = *lead;
    const Residue s = mod_.inv(v[f0]);
    std::vector<Residue> row(n_, 0);
    for (int f : free_cols_) {
      row[f] = mod_.mul(s, v[f]);
      v[f] = 0;
    }
    for (std::vector<Residue>& other : rows_) {
      const Residue b = other[f0];
      if (b == 0)
        continue;
      const Residue nb = static_cast<Residue>(p - b);
      for (int f : free_cols_)
        other[f] = static_cast<Residue>((other[f] + nb * row[f]) % p);
    }
    free_cols_.erase(lead);
    row_of_col_[f0] = static_cast<int>(rows_.size());
    pivots_.push_back(f0);
    rows_.push_back(std::move(row));
    return true;
  }

  Modulus mod_;
  std::size_t n_;
  std::vector<std::vector<Residue>> rows_;
  std::vector<int> pivots_;
  std::vector<int> row_of_col_;
  std::vector<int> free_cols_;
  std::vector<Residue> scratch_;
};

/// A subspace of F_p^n held by its reduced row-echelon basis.
class Subspace {
public:
  Subspace(Modulus mod, std::size_t ambient) : mod_(mod), n_(ambient) {}

  static Subspace span(Modulus mod, std::size_t ambient, const std::vector<Vector>& rows) {
    EchelonBasis eb(mod, ambient);
    for (const Vector& r : rows)
      eb.insert(r);
    return from_echelon(eb);
  }

  static Subspace from_echelon(const EchelonBasis& eb) {
    Subspace s(eb.modulus(), eb.ambient_dim());
    s.rows_ = eb.sorted_rows();
    s.pivots_ = eb.sorted_pivots();
    return s;
  }

  static Subspace whole(Modulus mod, std::size_t n) {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i)
      rows.push_back(Vector::unit(mod, n, i));
    return span(mod, n, rows);
  }

  const Modulus& modulus() const { return mod_; }
  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vector>& basis() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  /// Canonical representative of v + S (zero in every pivot column).
  Vector reduce(Vector v) const {
    check(v);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Residue a = v[pivots_[r]];
      if (a != 0)
        v.axpy(mod_.neg(a), rows_[r]);
    }
    return v;
  }

  bool contains(const Vector& v) const { return reduce(v).is_zero(); }

  bool contains(const Subspace& other) const {
    check_same_ambient(other);
    return std::all_of(other.rows_.begin(), other.rows_.end(),
                       [&](const Vector& v) { return contains(v); });
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.mod_ == b.mod_ && a.n_ == b.n_ && a.rows_ == b.rows_;
  }

  void check_same_ambient(const Subspace& other) const {
    if (!(other.mod_ == mod_) || other.n_ != n_)
      throw DimensionMismatch("subspace ambient mismatch: " + std::to_string(n_) + " vs " +
                              std::to_string(other.n_));
  }

private:
  void check(const Vector& v) const {
    if (!(v.modulus() == mod_) || v.size() != n_)
      throw DimensionMismatch("vector of length " + std::to_string(v.size()) +
                              " against ambient dimension " + std::to_string(n_));
  }

  Modulus mod_;
  std::size_t n_;
  std::vector<Vector> rows_;
  std::vector<int> pivots_;
};

struct RrefResult {
  Subspace space;
  std::size_t rank;
};

inline RrefResult rref(Modulus mod, std::size_t ambient, const std::vector<Vector>& rows) {
  Subspace s = Subspace::span(mod, ambient, rows);
  const std::size_t r = s.dim();
  return {std::move(s), r};
}

inline bool member(const Vector& v, const Subspace& s) { return s.contains(v); }

inline Subspace sum(const Subspace& a, const Subspace& b) {
  a.check_same_ambient(b);
  EchelonBasis eb(a.modulus(), a.ambient_dim());
  for (const Vector& v : a.basis())
    eb.insert(v);
  for (const Vector& v : b.basis())
    eb.insert(v);
  return Subspace::from_echelon(eb);
}

/// Intersection by the Zassenhaus construction: reduce the rows [a|a] and [b|0];
/// rows with vanishing left half span the intersection in the right half.
inline Subspace intersect(const Subspace& a, const Subspace& b) {
  a.check_same_ambient(b);
  const Modulus mod = a.modulus();
  const std::size_t n = a.ambient_dim();
  EchelonBasis eb(mod, 2 * n);
  Vector row(mod, 2 * n);
  for (const Vector& v : a.basis()) {
    for (std::size_t i = 0; i < n; ++i) {
      row.set(i, v[i]);
      row.set(n + i, v[i]);
    }
    eb.insert(row);
  }
  for (const Vector& v : b.basis()) {
    for (std::size_t i = 0; i < n; ++i) {
      row.set(i, v[i]);
      row.set(n + i, 0);
    }
    eb.insert(row);
  }
  std::vector<Vector> out;
  std::vector<Vector> rows = eb.sorted_rows();
  std::vector<int> piv = eb.sorted_pivots();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (piv[r] < static_cast<int>(n))
      continue;
    Vector w(mod, n);
    for (std::size_t i = 0; i < n; ++i)
      w.set(i, rows[r][n + i]);
    out.push_back(std::move(w));
  }
  return Subspace::span(mod, n, out);
}

/// {v in F_p^ncols : M v = 0} for the matrix with the given rows.
inline Subspace kernel(Modulus mod, std::size_t ncols, const std::vector<Vector>& rows) {
  for (const Vector& r : rows)
    if (r.size() != ncols || !(r.modulus() == mod))
      throw DimensionMismatch("matrix row of length " + std::to_string(r.size()) +
                              ", expected " + std::to_string(ncols));
  Subspace echelon = Subspace::span(mod, ncols, rows);
  std::vector<bool> is_pivot(ncols, false);
  for (int c : echelon.pivots())
    is_pivot[c] = true;
  std::vector<Vector> gens;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f])
      continue;
    Vector v(mod, ncols);
    v.set(f, 1);
    for (std::size_t r = 0; r < echelon.dim(); ++r)
      v.set(echelon.pivots()[r], -static_cast<long long>(echelon.basis()[r][f]));
    gens.push_back(std::move(v));
  }
  return Subspace::span(mod, ncols, gens);
}

} // namespace schur
