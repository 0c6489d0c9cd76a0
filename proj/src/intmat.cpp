#include "norm1lat/intmat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace norm1lat {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows.begin()->size() : 0;
  IntMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("ragged matrix literal");
    std::size_t j = 0;
    for (long long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

IntMatrix IntMatrix::permutation(std::span<const int> images) {
  IntMatrix m(images.size(), images.size());
  for (std::size_t j = 0; j < images.size(); ++j) m(static_cast<std::size_t>(images[j]), j) = 1;
  return m;
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void IntMatrix::set_column(std::size_t j, std::span<const Integer> v) {
  if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("matrix block out of range");
  IntMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    auto crow = c.row(i);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik.is_zero()) continue;
      auto brow = b.row(k);
      if (aik.is_one()) {
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!brow[j].is_zero()) crow[j] += brow[j];
      } else {
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!brow[j].is_zero()) crow[j].add_mul(aik, brow[j]);
      }
    }
  }
  return c;
}

IntVector operator*(const IntMatrix& a, std::span<const Integer> v) {
  if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
  IntVector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (!a(i, k).is_zero() && !v[k].is_zero()) out[i].add_mul(a(i, k), v[k]);
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c = a;
  c += b;
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference dimension mismatch");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
  return c;
}

IntMatrix& IntMatrix::operator+=(const IntMatrix& b) {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix sum dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!b.data_[k].is_zero()) data_[k] += b.data_[k];
  return *this;
}

IntMatrix IntMatrix::scaled(const Integer& c) const {
  IntMatrix m = *this;
  for (auto& v : m.data_) v *= c;
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v.is_zero(); });
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != Integer(i == j ? 1 : 0)) return false;
  return true;
}

bool IntMatrix::is_permutation_matrix() const {
  if (rows_ != cols_) return false;
  std::vector<int> row_hits(rows_, 0);
  for (std::size_t j = 0; j < cols_; ++j) {
    int ones = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Integer& v = (*this)(i, j);
      if (v.is_zero()) continue;
      if (!v.is_one()) return false;
      ++ones;
      ++row_hits[i];
    }
    if (ones != 1) return false;
  }
  return std::all_of(row_hits.begin(), row_hits.end(), [](int h) { return h == 1; });
}

std::vector<int> IntMatrix::permutation_images() const {
  if (!is_permutation_matrix()) throw std::invalid_argument("not a permutation matrix");
  std::vector<int> img(cols_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i)
      if (!(*this)(i, j).is_zero()) img[j] = static_cast<int>(i);
  return img;
}

std::size_t IntMatrix::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(data_.begin(), data_.end(), [](const Integer& v) { return !v.is_zero(); }));
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
    os << "]\n";
  }
  return os.str();
}

IntMatrix hstack(std::span<const IntMatrix> parts, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw std::invalid_argument("hstack row mismatch");
    cols += p.cols();
  }
  IntMatrix m(rows, cols);
  std::size_t c0 = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < p.cols(); ++j) m(i, c0 + j) = p(i, j);
    c0 += p.cols();
  }
  return m;
}

IntMatrix vstack(std::span<const IntMatrix> parts, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw std::invalid_argument("vstack column mismatch");
    rows += p.rows();
  }
  IntMatrix m(rows, cols);
  std::size_t r0 = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j) m(r0 + i, j) = p(i, j);
    r0 += p.rows();
  }
  return m;
}

IntMatrix block_diagonal(std::span<const IntMatrix> blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  IntMatrix m(r, c);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(r0 + i, c0 + j) = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return m;
}

// ---------------------------------------------------------------------------
// AbelianInvariants

AbelianInvariants AbelianInvariants::from_cyclic_orders(std::span<const Integer> orders) {
  AbelianInvariants inv;
  std::vector<Integer> finite;
  for (const auto& o : orders) {
    if (o.is_zero())
      ++inv.free_rank;
    else
      finite.push_back(abs(o));
  }
  for (auto& d : smith_invariants(IntMatrix::diagonal(finite)))
    if (compare(d, Integer(1)) > 0) inv.divisors.push_back(std::move(d));
  return inv;
}

Integer AbelianInvariants::order() const {
  if (free_rank != 0) throw std::domain_error("order of an infinite abelian group");
  Integer o = 1;
  for (const auto& d : divisors) o *= d;
  return o;
}

AbelianInvariants AbelianInvariants::operator+(const AbelianInvariants& o) const {
  std::vector<Integer> all = divisors;
  all.insert(all.end(), o.divisors.begin(), o.divisors.end());
  AbelianInvariants r = from_cyclic_orders(all);
  r.free_rank = free_rank + o.free_rank;
  return r;
}

std::string AbelianInvariants::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank) {
    os << "Z";
    if (free_rank > 1) os << '^' << free_rank;
    first = false;
  }
  for (const auto& d : divisors) {
    os << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct Pos {
  std::size_t i, j;
};

// Smallest nonzero |A(i,j)| with i, j >= t; ties: lowest row, then column.
std::optional<Pos> min_pivot(const IntMatrix& a, std::size_t t) {
  std::optional<Pos> best;
  for (std::size_t i = t; i < a.rows(); ++i) {
    auto row = a.row(i);
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (row[j].is_zero()) continue;
      if (!best || abs_less(row[j], a(best->i, best->j))) {
        best = Pos{i, j};
        if (row[j].is_unit()) return best;
      }
    }
  }
  return best;
}

// row_dst -= q * row_src over columns [from, cols).
void row_sub(IntMatrix& a, std::size_t dst, std::size_t src, const Integer& q, std::size_t from = 0) {
  auto d = a.row(dst);
  auto s = a.row(src);
  for (std::size_t j = from; j < a.cols(); ++j)
    if (!s[j].is_zero()) d[j].sub_mul(q, s[j]);
}

// col_dst -= q * col_src over rows [from, rows).
void col_sub(IntMatrix& a, std::size_t dst, std::size_t src, const Integer& q, std::size_t from = 0) {
  for (std::size_t i = from; i < a.rows(); ++i) {
    const Integer& s = a(i, src);
    if (!s.is_zero()) a(i, dst).sub_mul(q, s);
  }
}

template <bool Track>
std::vector<Integer> smith_core(IntMatrix& a, IntMatrix* left, IntMatrix* right) {
  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t limit = std::min(m, n);
  std::size_t t = 0;
  for (; t < limit; ++t) {
    auto piv = min_pivot(a, t);
    if (!piv) break;
    a.swap_rows(t, piv->i);
    a.swap_cols(t, piv->j);
    if constexpr (Track) {
      left->swap_rows(t, piv->i);
      right->swap_cols(t, piv->j);
    }
    for (;;) {
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t).is_zero()) continue;
        Integer q = a(i, t) / a(t, t);
        row_sub(a, i, t, q, t);
        if constexpr (Track) row_sub(*left, i, t, q);
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j).is_zero()) continue;
        Integer q = a(t, j) / a(t, t);
        col_sub(a, j, t, q, t);
        if constexpr (Track) col_sub(*right, j, t, q);
      }
      std::optional<Pos> rem;
      for (std::size_t i = t + 1; i < m; ++i)
        if (!a(i, t).is_zero() && (!rem || abs_less(a(i, t), a(rem->i, rem->j)))) rem = Pos{i, t};
      for (std::size_t j = t + 1; j < n; ++j)
        if (!a(t, j).is_zero() && (!rem || abs_less(a(t, j), a(rem->i, rem->j)))) rem = Pos{t, j};
      if (rem) {
        if (rem->j == t) {
          a.swap_rows(t, rem->i);
          if constexpr (Track) left->swap_rows(t, rem->i);
        } else {
          a.swap_cols(t, rem->j);
          if constexpr (Track) right->swap_cols(t, rem->j);
        }
        continue;
      }
      if (a(t, t).is_unit()) break;
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < m && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!a(i, j).is_zero() && !(a(i, j) % a(t, t)).is_zero()) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      row_sub(a, t, *bad_row, Integer(-1), t);
      if constexpr (Track) row_sub(*left, t, *bad_row, Integer(-1));
    }
    if (a(t, t).sign() < 0) {
      for (auto& v : a.row(t)) v.negate();
      if constexpr (Track)
        for (auto& v : left->row(t)) v.negate();
    }
  }
  std::vector<Integer> d(limit);
  for (std::size_t i = 0; i < t; ++i) d[i] = a(i, i);
  return d;
}

// Row echelon form by unimodular row operations, optionally tracking the
// transform. Returns the rank (number of pivot rows).
std::size_t echelon(IntMatrix& a, IntMatrix* transform) {
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t p = 0;
  for (std::size_t c = 0; c < n && p < m; ++c) {
    bool found = false;
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = p; i < m; ++i)
        if (!a(i, c).is_zero() && (!best || abs_less(a(i, c), a(*best, c)))) best = i;
      if (!best) break;
      found = true;
      a.swap_rows(p, *best);
      if (transform) transform->swap_rows(p, *best);
      bool residue = false;
      for (std::size_t i = p + 1; i < m; ++i) {
        if (a(i, c).is_zero()) continue;
        Integer q = a(i, c) / a(p, c);
        row_sub(a, i, p, q, c);
        if (transform) row_sub(*transform, i, p, q);
        if (!a(i, c).is_zero()) residue = true;
      }
      if (!residue) break;
    }
    if (found) ++p;
  }
  return p;
}

}  // namespace

std::size_t SmithForm::rank() const {
  return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](const Integer& v) { return !v.is_zero(); }));
}

SmithForm smith_normal_form(const IntMatrix& a) {
  SmithForm s;
  IntMatrix work = a;
  s.left = IntMatrix::identity(a.rows());
  s.right = IntMatrix::identity(a.cols());
  s.d = smith_core<true>(work, &s.left, &s.right);
  return s;
}

std::vector<Integer> smith_invariants(IntMatrix a) { return smith_core<false>(a, nullptr, nullptr); }

std::size_t rank(const IntMatrix& a) {
  IntMatrix w = a;
  return echelon(w, nullptr);
}

IntMatrix hermite_rows(IntMatrix a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t p = 0;
  for (std::size_t c = 0; c < n && p < m; ++c) {
    bool found = false;
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = p; i < m; ++i)
        if (!a(i, c).is_zero() && (!best || abs_less(a(i, c), a(*best, c)))) best = i;
      if (!best) break;
      found = true;
      a.swap_rows(p, *best);
      bool residue = false;
      for (std::size_t i = p + 1; i < m; ++i) {
        if (a(i, c).is_zero()) continue;
        Integer q = a(i, c) / a(p, c);
        row_sub(a, i, p, q, c);
        if (!a(i, c).is_zero()) residue = true;
      }
      if (!residue) break;
    }
    if (!found) continue;
    if (a(p, c).sign() < 0)
      for (auto& v : a.row(p)) v.negate();
    for (std::size_t r = 0; r < p; ++r) {
      if (a(r, c).is_zero()) continue;
      Integer q = floor_div(a(r, c), a(p, c));
      if (!q.is_zero()) row_sub(a, r, p, q, c);
    }
    ++p;
  }
  return a.block(0, 0, p, n);
}

IntMatrix canonical_column_basis(const IntMatrix& a) { return hermite_rows(a.transpose()).transpose(); }

IntMatrix kernel_basis(const IntMatrix& a) {
  const std::size_t n = a.cols();
  IntMatrix b = a.transpose();
  IntMatrix u = IntMatrix::identity(n);
  std::size_t r = echelon(b, &u);
  if (r == n) return IntMatrix(n, 0);
  IntMatrix k = u.block(r, 0, n - r, n);
  return hermite_rows(std::move(k)).transpose();
}

IntMatrix kernel_of_stack(std::span<const IntMatrix> blocks, std::size_t cols) {
  IntMatrix k = IntMatrix::identity(cols);
  for (const auto& blk : blocks) {
    if (blk.cols() != cols) throw std::invalid_argument("kernel_of_stack column mismatch");
    if (k.cols() == 0) break;
    IntMatrix sub = kernel_basis(blk * k);
    if (sub.cols() == k.cols()) continue;
    k = canonical_column_basis(k * sub);
  }
  return k;
}

AbelianInvariants cokernel_invariants(const IntMatrix& a) {
  AbelianInvariants inv;
  std::size_t rk = 0;
  for (auto& d : smith_invariants(a)) {
    if (d.is_zero()) continue;
    ++rk;
    if (compare(d, Integer(1)) > 0) inv.divisors.push_back(std::move(d));
  }
  inv.free_rank = a.rows() - rk;
  return inv;
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t i = k + 1;
      while (i < n && m(i, k).is_zero()) ++i;
      if (i == n) return 0;
      m.swap_rows(k, i);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k);
        v.sub_mul(m(i, k), m(k, j));
        m(i, j) = v / prev;
      }
    }
    prev = m(k, k);
  }
  Integer d = m(n - 1, n - 1);
  if (sign < 0) d.negate();
  return d;
}

std::optional<IntMatrix> solve_matrix(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve dimension mismatch");
  SmithForm s = smith_normal_form(a);
  IntMatrix y = s.left * b;
  const std::size_t rk = s.rank();
  IntMatrix z(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (i < rk) {
        if (!(y(i, j) % s.d[i]).is_zero()) return std::nullopt;
        z(i, j) = y(i, j) / s.d[i];
      } else if (!y(i, j).is_zero()) {
        return std::nullopt;
      }
    }
  }
  return s.right * z;
}

std::optional<IntVector> solve(const IntMatrix& a, std::span<const Integer> b) {
  IntMatrix bm(b.size(), 1);
  bm.set_column(0, b);
  auto x = solve_matrix(a, bm);
  if (!x) return std::nullopt;
  return x->column(0);
}

bool is_unimodular(const IntMatrix& a) {
  if (a.rows() != a.cols()) return false;
  auto d = smith_invariants(a);
  return std::all_of(d.begin(), d.end(), [](const Integer& v) { return v.is_one(); });
}

bool is_saturated_basis(const IntMatrix& k) {
  if (k.cols() > k.rows()) return false;
  auto d = smith_invariants(k);
  return std::all_of(d.begin(), d.end(), [](const Integer& v) { return v.is_one(); });
}

IntMatrix left_inverse(const IntMatrix& k) {
  // Canonical kernel bases usually contain the identity on some rows; then
  // picking those rows is a left inverse and stays sparse.
  std::vector<std::optional<std::size_t>> unit_row(k.cols());
  std::size_t found = 0;
  for (std::size_t i = 0; i < k.rows() && found < k.cols(); ++i) {
    auto row = k.row(i);
    std::optional<std::size_t> col;
    bool unit = true;
    for (std::size_t j = 0; j < k.cols() && unit; ++j) {
      if (row[j].is_zero()) continue;
      if (col || !row[j].is_one()) unit = false;
      col = j;
    }
    if (unit && col && !unit_row[*col]) {
      unit_row[*col] = i;
      ++found;
    }
  }
  if (found == k.cols()) {
    IntMatrix x(k.cols(), k.rows());
    for (std::size_t j = 0; j < k.cols(); ++j) x(j, *unit_row[j]) = 1;
    return x;
  }
  SmithForm s = smith_normal_form(k);
  for (const auto& v : s.d)
    if (!v.is_one()) throw std::domain_error("left_inverse: columns are not a saturated basis");
  return s.right * s.left.block(0, 0, k.cols(), k.rows());
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::domain_error("unimodular_inverse: matrix is not square");
  SmithForm s = smith_normal_form(a);
  for (const auto& v : s.d)
    if (!v.is_one()) throw std::domain_error("unimodular_inverse: matrix is not unimodular");
  return s.right * s.left;
}

}  // namespace norm1lat
