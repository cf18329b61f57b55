#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "fatpt/certificate.hpp"
#include "fatpt/field.hpp"
#include "fatpt/gfmat.hpp"
#include "fatpt/linsys.hpp"

namespace fatpt {

class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Exponents = std::array<std::int64_t, 3>;

/// Degree-d monomials x^i y^j z^k, ordered by descending i then descending j.
/// Empty for d < 0.
std::vector<Exponents> monomial_basis(std::int64_t d);

/// Smooth short Weierstrass cubic y^2 z = x^3 + a x z^2 + b z^3.
struct WeierstrassCubic {
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  friend bool operator==(const WeierstrassCubic&, const WeierstrassCubic&) = default;
};

struct SamplePoint {
  std::array<std::uint64_t, 3> coords{};  // projective (x : y : z)
  Placement tag = Placement::Generic;

  friend bool operator==(const SamplePoint&, const SamplePoint&) = default;
};

struct PointConfig {
  std::uint64_t prime = kDefaultPrime;
  std::optional<WeierstrassCubic> cubic;
  std::vector<SamplePoint> points;
  std::uint64_t seed = 0;

  friend bool operator==(const PointConfig&, const PointConfig&) = default;
};

/// Attempts allowed per point (and for the curve) before SamplingError.
inline constexpr int kSamplingRetries = 64;

/// One point per tag, in order. Deterministic in (tags, p, seed).
PointConfig sample_config(std::span<const Placement> tags, std::uint64_t p, std::uint64_t seed);

/// n_cubic on-cubic points followed by n_generic generic points.
PointConfig sample_config(std::size_t n_generic, std::size_t n_cubic, std::uint64_t p, std::uint64_t seed);

bool on_curve(const WeierstrassCubic& c, const SamplePoint& pt, const PrimeField& f);

/// Hasse-derivative vanishing conditions of order < m at pt on degree-d forms:
/// m(m+1)/2 rows over monomial_basis(d).
std::vector<std::vector<std::uint32_t>> condition_rows(const SamplePoint& pt, std::int64_t m, std::int64_t d,
                                                       const PrimeField& f);

/// Interpolation matrix of effective_part(s) at cfg.
DenseMatrix build_matrix(const FatPointSystem& s, const PointConfig& cfg);

RankReport h0_at_sample(const FatPointSystem& s, const PointConfig& cfg, int threads = 0);

/// Seed used for trial number `trial` of a run seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

struct CertifyOptions {
  std::size_t trials = 3;
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t seed = 0;
  int threads = 0;
};

/// Decides speciality of s with sampled points of the tagged placements.
/// Full rank at a sample is a certificate; rank deficits are only ever "suspected".
Certificate certify(const FatPointSystem& s, const CertifyOptions& opts = {});

}  // namespace fatpt
