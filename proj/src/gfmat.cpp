#include "fatpt/gfmat.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include <gmpxx.h>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fatpt {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::uint64_t modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), data_(rows * cols, 0) {
  PrimeField{modulus};
}

void DenseMatrix::set(std::size_t r, std::size_t c, std::uint64_t value) {
  data_[r * cols_ + c] = static_cast<std::uint32_t>(value % modulus_);
}

void DenseMatrix::append_row(std::span<const std::uint32_t> values) {
  if (values.size() != cols_) throw std::invalid_argument("append_row: length mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

DenseMatrix reduce_mod(const IntMatrix& m, std::uint64_t p) {
  PrimeField f(p);
  DenseMatrix out(m.rows, m.cols, p);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c) out.set(r, c, f.from_int(m(r, c)));
  return out;
}

IntMatrix lift(const DenseMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m.at(r, c);
  return out;
}

namespace {

// Below this many multiply-adds per pivot step the parallel region costs more than it saves.
constexpr std::size_t kParallelWork = 1 << 16;

}  // namespace

std::size_t rank_in_place(DenseMatrix& m, int threads) {
  const PrimeField f(m.modulus_);
  const std::uint64_t p = f.modulus();
  const std::size_t rows = m.rows_;
  const std::size_t cols = m.cols_;
  std::uint32_t* a = m.data_.data();

#ifdef _OPENMP
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
#endif

  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) std::swap_ranges(a + piv * cols, a + (piv + 1) * cols, a + rank * cols);

    const std::uint32_t* prow = a + rank * cols;
    const std::uint64_t pinv = f.inv(prow[c]);
    const auto below = static_cast<std::ptrdiff_t>(rows - rank - 1);
    const std::size_t width = cols - c - 1;

    auto eliminate = [&](std::ptrdiff_t k) {
      std::uint32_t* r = a + (rank + 1 + static_cast<std::size_t>(k)) * cols;
      if (r[c] == 0) return;
      const std::uint64_t g = p - f.mul(r[c], pinv);
      r[c] = 0;
      for (std::size_t j = c + 1; j < cols; ++j) {
        r[j] = static_cast<std::uint32_t>(f.reduce(r[j] + g * prow[j]));
      }
    };

#ifdef _OPENMP
    if (nthreads > 1 && static_cast<std::size_t>(below) * width >= kParallelWork) {
#pragma omp parallel for num_threads(nthreads) schedule(static)
      for (std::ptrdiff_t k = 0; k < below; ++k) eliminate(k);
    } else {
      for (std::ptrdiff_t k = 0; k < below; ++k) eliminate(k);
    }
#else
    (void)width;
    for (std::ptrdiff_t k = 0; k < below; ++k) eliminate(k);
#endif
    ++rank;
  }
  return rank;
}

std::size_t rank(DenseMatrix m, int threads) { return rank_in_place(m, threads); }

std::size_t rational_rank(const IntMatrix& m) {
  const std::size_t rows = m.rows;
  const std::size_t cols = m.cols;
  std::vector<mpz_class> a(rows * cols);
  for (std::size_t i = 0; i < rows * cols; ++i) a[i] = static_cast<long>(m.entries[i]);

  auto at = [&](std::size_t r, std::size_t c) -> mpz_class& { return a[r * cols + c]; };

  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(piv, j), at(rank, j));

    const mpz_class pivot = at(rank, c);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const mpz_class lead = at(i, c);
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class t = pivot * at(i, j) - lead * at(rank, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        at(i, j) = std::move(t);
      }
      at(i, c) = 0;
    }
    prev = pivot;
    ++rank;
  }
  return rank;
}

}  // namespace fatpt
