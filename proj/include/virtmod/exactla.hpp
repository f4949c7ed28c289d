#pragma once

// Dense exact linear algebra over prime fields F_p.
//
// Vectors are column vectors; a Matrix of shape (r x c) maps F_p^c -> F_p^r.
// Subspaces are stored by the rows of their reduced row-echelon basis, which
// is unique, so RREF equality is subspace equality.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace virtmod::exactla {

using Elem = std::uint32_t;
using Vector = std::vector<Elem>;

class Field {
 public:
  /// Throws InputError unless p is a prime in [2, 2^16).
  explicit Field(std::uint32_t p = 2);

  std::uint32_t p() const { return p_; }

  Elem reduce(std::int64_t x) const {
    auto r = x % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }
  Elem add(Elem a, Elem b) const { return static_cast<Elem>((a + b) % p_); }
  Elem sub(Elem a, Elem b) const { return static_cast<Elem>((a + p_ - b) % p_); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Elem inv(Elem a) const;  // throws MathError on zero
  Elem pow(Elem a, std::uint64_t e) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t n);

class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols);

  static Matrix zero(Field f, std::size_t rows, std::size_t cols) { return {f, rows, cols}; }
  static Matrix identity(Field f, std::size_t n);
  /// Entries are reduced mod p; all rows must have `cols` entries.
  static Matrix from_rows(Field f, const std::vector<std::vector<std::int64_t>>& rows,
                          std::size_t cols);
  static Matrix from_vectors(Field f, const std::vector<Vector>& rows, std::size_t cols);
  static Matrix column(Field f, const Vector& v);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Elem> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  Vector row_vector(std::size_t r) const;
  Vector column_vector(std::size_t c) const;
  const std::vector<Elem>& data() const { return data_; }

  Matrix transpose() const;
  Matrix scaled(Elem s) const;
  bool is_zero() const;
  bool is_identity() const;

  Vector apply(std::span<const Elem> v) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Stack rows of `a` above rows of `b` (column counts must agree).
  static Matrix vstack(const Matrix& a, const Matrix& b);
  static Matrix hstack(const Matrix& a, const Matrix& b);

  std::string str() const;

 private:
  Field field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

struct RrefResult {
  Matrix form;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(Field f, std::size_t ambient);
  static Subspace full(Field f, std::size_t ambient);
  /// Row span of `rows`.
  static Subspace span(const Matrix& rows);
  static Subspace span(Field f, std::size_t ambient, const std::vector<Vector>& vectors);

  const Field& field() const { return basis_.field(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_dim(); }

  /// RREF basis, one basis vector per row.
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vector basis_vector(std::size_t i) const { return basis_.row_vector(i); }
  std::vector<Vector> basis_vectors() const;

  /// x minus its components along the basis, indexed by pivot coordinates;
  /// zero exactly when x lies in the subspace.
  Vector reduce(std::span<const Elem> x) const;
  /// Matrix of `reduce`.
  Matrix reducer() const;
  bool contains(std::span<const Elem> x) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of x (which must lie in the subspace) in the RREF basis.
  Vector coordinates(std::span<const Elem> x) const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }
  /// Canonical total order: by ambient, dimension, then RREF entries.
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

 private:
  explicit Subspace(RrefResult r);
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Null space {x : m x = 0}.
Subspace kernel(const Matrix& m);
/// Column space of m.
Subspace image(const Matrix& m);
/// m(s) for a subspace s of the source.
Subspace image(const Matrix& m, const Subspace& s);
/// {x : m x in t}.
Subspace preimage(const Matrix& m, const Subspace& t);

struct SumIntersect {
  Subspace sum;
  Subspace meet;
};
/// Throws InputError on ambient mismatch.
SumIntersect sum_intersect(const Subspace& a, const Subspace& b);
Subspace operator+(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

/// Basis of a complement of `sub` inside `whole`, made of reduced vectors
/// (zero at the pivot coordinates of `sub`), itself in RREF.
Subspace complement_in(const Subspace& whole, const Subspace& sub);

struct AffineSolution {
  Vector particular;
  Subspace homogeneous;
};
/// Full solution set of A x = b; nullopt when inconsistent.
std::optional<AffineSolution> solve_affine(const Matrix& a, const Vector& b);

/// Inverse of a square matrix, nullopt if singular.
std::optional<Matrix> inverse(const Matrix& m);

}  // namespace virtmod::exactla
