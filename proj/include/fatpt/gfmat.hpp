#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fatpt/field.hpp"

namespace fatpt {

/// Row-major dense matrix over GF(p). Entries are kept fully reduced.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, std::uint64_t modulus = kDefaultPrime);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t modulus() const { return modulus_; }

  std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::uint64_t value);

  std::span<std::uint32_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const std::uint32_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  /// Appends a row of already-reduced values; length must equal cols().
  void append_row(std::span<const std::uint32_t> values);

  std::span<const std::uint32_t> entries() const { return data_; }

 private:
  friend std::size_t rank_in_place(DenseMatrix& m, int threads);

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint64_t modulus_ = kDefaultPrime;
  std::vector<std::uint32_t> data_;
};

/// Integer matrix, used for lifted interpolation matrices and the exact oracle.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> entries;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0) {}

  std::int64_t& operator()(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

DenseMatrix reduce_mod(const IntMatrix& m, std::uint64_t p);

/// Lift of a GF(p) matrix to integers in [0, p).
IntMatrix lift(const DenseMatrix& m);

/// Gaussian elimination with first-nonzero pivoting; destroys m.
/// threads <= 0 uses the runtime default. The result does not depend on threads.
std::size_t rank_in_place(DenseMatrix& m, int threads = 0);

/// Rank over GF(p).
std::size_t rank(DenseMatrix m, int threads = 0);

/// Exact rank over Q by fraction-free (Bareiss) elimination on big integers.
std::size_t rational_rank(const IntMatrix& m);

}  // namespace fatpt
