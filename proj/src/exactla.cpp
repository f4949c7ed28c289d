#include "virtmod/exactla.hpp"

#include <algorithm>
#include <sstream>

#include "virtmod/error.hpp"

namespace virtmod::exactla {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field(std::uint32_t p) : p_(p) {
  if (p >= (1u << 16) || !is_prime(p))
    throw InputError("field modulus " + std::to_string(p) + " is not a prime below 2^16");
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem result = 1 % p_;
  Elem base = a % p_;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Elem Field::inv(Elem a) const {
  if (a % p_ == 0) throw MathError("inverse of zero in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

// ---------------------------------------------------------------------------

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<std::vector<std::int64_t>>& rows,
                         std::size_t cols) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw InputError("matrix row " + std::to_string(r) + " has " +
                       std::to_string(rows[r].size()) + " entries, expected " +
                       std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = f.reduce(rows[r][c]);
  }
  return m;
}

Matrix Matrix::from_vectors(Field f, const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InputError("vector length mismatch");
    std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<long>(r * cols));
  }
  return m;
}

Matrix Matrix::column(Field f, const Vector& v) {
  Matrix m(f, v.size(), 1);
  std::copy(v.begin(), v.end(), m.data_.begin());
  return m;
}

Vector Matrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return {s.begin(), s.end()};
}

Vector Matrix::column_vector(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::scaled(Elem s) const {
  Matrix m = *this;
  for (auto& x : m.data_) x = field_.mul(x, s);
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Elem x) { return x == 0; });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1u : 0u)) return false;
  return true;
}

Vector Matrix::apply(std::span<const Elem> v) const {
  if (v.size() != cols_) throw InputError("matrix-vector shape mismatch");
  Vector out(rows_, 0);
  const std::uint64_t p = field_.p();
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc += static_cast<std::uint64_t>((*this)(r, c)) * v[c];
      if (acc >= (1ull << 62)) acc %= p;
    }
    out[r] = static_cast<Elem>(acc % p);
  }
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_ || !(a.field_ == b.field_))
    throw InputError("matrix product shape mismatch: " + std::to_string(a.rows_) + "x" +
                     std::to_string(a.cols_) + " * " + std::to_string(b.rows_) + "x" +
                     std::to_string(b.cols_));
  Matrix out(a.field_, a.rows_, b.cols_);
  const std::uint64_t p = a.field_.p();
  std::vector<std::uint64_t> acc(b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::uint64_t x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        acc[j] += x * b(k, j);
        if (acc[j] >= (1ull << 62)) acc[j] %= p;
      }
    }
    for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = static_cast<Elem>(acc[j] % p);
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix sum shape mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i)
    out.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix difference shape mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i)
    out.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
  return out;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.cols_) throw InputError("vstack column mismatch");
  Matrix out(a.field_, a.rows_ + b.rows_, a.cols_);
  std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(), out.data_.begin() + static_cast<long>(a.data_.size()));
  return out;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_) throw InputError("hstack row mismatch");
  Matrix out(a.field_, a.rows_, a.cols_ + b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t c = 0; c < a.cols_; ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols_; ++c) out(r, a.cols_ + c) = b(r, c);
  }
  return out;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------

RrefResult rref(const Matrix& m) {
  const Field& f = m.field();
  Matrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && a(sel, col) == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(sel, c), a(row, c));
    const Elem inv = f.inv(a(row, col));
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) = f.mul(a(row, c), inv);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      const Elem factor = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c)
        a(r, c) = f.sub(a(r, c), f.mul(factor, a(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), row, std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

// ---------------------------------------------------------------------------

Subspace::Subspace(RrefResult r) : pivots_(std::move(r.pivots)) {
  Matrix basis(r.form.field(), r.rank, r.form.cols());
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t c = 0; c < r.form.cols(); ++c) basis(i, c) = r.form(i, c);
  basis_ = std::move(basis);
}

Subspace Subspace::zero(Field f, std::size_t ambient) {
  return Subspace(RrefResult{Matrix(f, 0, ambient), 0, {}});
}

Subspace Subspace::full(Field f, std::size_t ambient) {
  return span(Matrix::identity(f, ambient));
}

Subspace Subspace::span(const Matrix& rows) { return Subspace(rref(rows)); }

Subspace Subspace::span(Field f, std::size_t ambient, const std::vector<Vector>& vectors) {
  return span(Matrix::from_vectors(f, vectors, ambient));
}

std::vector<Vector> Subspace::basis_vectors() const {
  std::vector<Vector> out;
  out.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row_vector(i));
  return out;
}

Vector Subspace::reduce(std::span<const Elem> x) const {
  if (x.size() != ambient_dim()) throw InputError("vector/subspace ambient mismatch");
  const Field& f = field();
  Vector y(x.begin(), x.end());
  for (std::size_t i = 0; i < dim(); ++i) {
    const Elem c = y[pivots_[i]];
    if (c == 0) continue;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = f.sub(y[k], f.mul(c, basis_(i, k)));
  }
  return y;
}

Matrix Subspace::reducer() const {
  const std::size_t n = ambient_dim();
  Matrix r = Matrix::identity(field(), n);
  const Field& f = field();
  // reduce(x) = x - sum_i x[piv_i] * b_i
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t k = 0; k < n; ++k)
      r(k, pivots_[i]) = f.sub(r(k, pivots_[i]), basis_(i, k));
  return r;
}

bool Subspace::contains(std::span<const Elem> x) const {
  auto y = reduce(x);
  return std::all_of(y.begin(), y.end(), [](Elem e) { return e == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim() != ambient_dim()) throw InputError("subspace ambient mismatch");
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

Vector Subspace::coordinates(std::span<const Elem> x) const {
  Vector c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = x[pivots_[i]];
  return c;
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
  if (auto c = a.ambient_dim() <=> b.ambient_dim(); c != 0) return c;
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  const auto& x = a.basis_.data();
  const auto& y = b.basis_.data();
  return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
}

// ---------------------------------------------------------------------------

Subspace kernel(const Matrix& m) {
  const Field& f = m.field();
  auto r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = f.neg(r.form(i, free));
    basis.push_back(std::move(v));
  }
  return Subspace::span(f, n, basis);
}

Subspace image(const Matrix& m) { return Subspace::span(m.transpose()); }

Subspace image(const Matrix& m, const Subspace& s) {
  if (m.cols() != s.ambient_dim()) throw InputError("image: shape mismatch");
  if (s.dim() == 0) return Subspace::zero(m.field(), m.rows());
  return Subspace::span((m * s.basis().transpose()).transpose());
}

Subspace preimage(const Matrix& m, const Subspace& t) {
  if (m.rows() != t.ambient_dim()) throw InputError("preimage: shape mismatch");
  return kernel(t.reducer() * m);
}

SumIntersect sum_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw InputError("sum_intersect: ambient dimensions " + std::to_string(a.ambient_dim()) +
                     " and " + std::to_string(b.ambient_dim()) + " differ");
  const Field& f = a.field();
  Subspace sum = Subspace::span(Matrix::vstack(a.basis(), b.basis()));
  if (a.dim() == 0 || b.dim() == 0) return {sum, Subspace::zero(f, a.ambient_dim())};
  // Solve lambda * A = mu * B: kernel of [A^T | -B^T].
  Matrix sys = Matrix::hstack(a.basis().transpose(), b.basis().transpose().scaled(f.neg(1)));
  Subspace k = kernel(sys);
  std::vector<Vector> meet;
  for (std::size_t i = 0; i < k.dim(); ++i) {
    Vector lam(k.basis().row(i).begin(), k.basis().row(i).begin() + static_cast<long>(a.dim()));
    Vector v(a.ambient_dim(), 0);
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (lam[j] == 0) continue;
      for (std::size_t c = 0; c < v.size(); ++c) v[c] = f.add(v[c], f.mul(lam[j], a.basis()(j, c)));
    }
    meet.push_back(std::move(v));
  }
  return {std::move(sum), Subspace::span(f, a.ambient_dim(), meet)};
}

Subspace operator+(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("subspace sum: ambient mismatch");
  return Subspace::span(Matrix::vstack(a.basis(), b.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) { return sum_intersect(a, b).meet; }

Subspace complement_in(const Subspace& whole, const Subspace& sub) {
  std::vector<Vector> reduced;
  for (std::size_t i = 0; i < whole.dim(); ++i) reduced.push_back(sub.reduce(whole.basis().row(i)));
  return Subspace::span(whole.field(), whole.ambient_dim(), reduced);
}

std::optional<AffineSolution> solve_affine(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw InputError("solve_affine: right-hand side length mismatch");
  const Field& f = a.field();
  Matrix aug = Matrix::hstack(a, Matrix::column(f, b));
  auto r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == a.cols()) return std::nullopt;
  Vector x(a.cols(), 0);
  for (std::size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.form(i, a.cols());
  return AffineSolution{std::move(x), kernel(a)};
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  auto r = rref(Matrix::hstack(m, Matrix::identity(m.field(), n)));
  if (r.rank < n || (n > 0 && r.pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.form(i, n + j);
  return inv;
}

}  // namespace virtmod::exactla
