#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "norm1lat/integer.hpp"

namespace norm1lat {

using IntVector = std::vector<Integer>;

// Dense row-major matrix over Z.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);
  static IntMatrix diagonal(std::span<const Integer> d);
  // Permutation matrix sending basis vector j to basis vector images[j].
  static IntMatrix permutation(std::span<const int> images);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<Integer> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Integer> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  IntVector column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const Integer> v);

  IntMatrix transpose() const;
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  IntMatrix columns(std::size_t c0, std::size_t nc) const { return block(0, c0, rows_, nc); }
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  // Skips zero entries of the left factor, so sparse left operands are cheap.
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, std::span<const Integer> v);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  IntMatrix& operator+=(const IntMatrix& b);
  IntMatrix scaled(const Integer& c) const;
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  bool is_zero() const;
  bool is_identity() const;
  // Exactly one entry 1 in each row and column, zeros elsewhere.
  bool is_permutation_matrix() const;
  // For a permutation matrix: images[j] = row index of the 1 in column j.
  std::vector<int> permutation_images() const;
  std::size_t nonzero_count() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix hstack(std::span<const IntMatrix> parts, std::size_t rows);
IntMatrix vstack(std::span<const IntMatrix> parts, std::size_t cols);
IntMatrix block_diagonal(std::span<const IntMatrix> blocks);

// Finite abelian group (plus free part) in invariant-factor form.
struct AbelianInvariants {
  std::vector<Integer> divisors;  // each >= 2, each dividing the next
  std::size_t free_rank = 0;

  static AbelianInvariants from_cyclic_orders(std::span<const Integer> orders);
  bool is_trivial() const { return divisors.empty() && free_rank == 0; }
  bool is_finite() const { return free_rank == 0; }
  Integer order() const;  // product of divisors; precondition is_finite()
  AbelianInvariants operator+(const AbelianInvariants& o) const;  // direct sum
  std::string to_string() const;
  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

struct SmithForm {
  std::vector<Integer> d;  // length min(rows, cols); nonzero entries first
  IntMatrix left;          // unimodular, rows x rows
  IntMatrix right;         // unimodular, cols x cols
  std::size_t rank() const;
};

// left * A * right = diag(d). Pivot: smallest nonzero absolute value in the
// active block, ties broken by lowest row then lowest column.
SmithForm smith_normal_form(const IntMatrix& a);
// Diagonal of the Smith form without accumulating transforms.
std::vector<Integer> smith_invariants(IntMatrix a);

std::size_t rank(const IntMatrix& a);

// Row Hermite normal form of the row lattice: zero rows dropped, positive
// pivots, entries above each pivot reduced into [0, pivot).
IntMatrix hermite_rows(IntMatrix a);
// Canonical basis (columns) for the lattice spanned by the columns of a.
IntMatrix canonical_column_basis(const IntMatrix& a);

// Saturated Z-basis of {v : A v = 0}, as columns in canonical Hermite form.
IntMatrix kernel_basis(const IntMatrix& a);
// Kernel of the vertical stack of the given blocks (all with the same column
// count), computed incrementally to keep the working matrices small.
IntMatrix kernel_of_stack(std::span<const IntMatrix> blocks, std::size_t cols);

AbelianInvariants cokernel_invariants(const IntMatrix& a);

Integer determinant(const IntMatrix& a);

std::optional<IntVector> solve(const IntMatrix& a, std::span<const Integer> b);
// Solves A X = B column by column with one Smith form.
std::optional<IntMatrix> solve_matrix(const IntMatrix& a, const IntMatrix& b);

bool is_unimodular(const IntMatrix& a);
// Columns span a pure (saturated) sublattice of full column rank.
bool is_saturated_basis(const IntMatrix& k);
// X with X K = I; throws if K is not a saturated basis.
IntMatrix left_inverse(const IntMatrix& k);
// Throws std::domain_error unless |det| = 1.
IntMatrix unimodular_inverse(const IntMatrix& a);

}  // namespace norm1lat
