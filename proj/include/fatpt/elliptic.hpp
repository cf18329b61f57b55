#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/rational.hpp>

#include "fatpt/certificate.hpp"
#include "fatpt/interp.hpp"
#include "fatpt/linsys.hpp"

namespace fatpt {

using Rational = boost::rational<std::int64_t>;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The reduction is undefined for fewer than ten points moved onto the cubic.
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The Euler-characteristic hypothesis (or integrality of mu) fails.
class InapplicableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMinCubicPoints = 10;

/// 1 + (2mn - 6d)/(n - 9): the upper root of the chi gap for d; m^n.
Rational mu_bound(std::int64_t d, std::int64_t n, std::int64_t m);

inline bool is_integral(const Rational& r) { return r.denominator() == 1; }

/// Largest integer not above r.
std::int64_t floor_of(const Rational& r);

/// chi of the twisted homogeneous system on the rational component minus chi of d; m^n:
/// mu(n - 9 - 6d + 2mn - mu(n - 9)) / 2.
std::int64_t chi_gap(std::int64_t d, std::int64_t n, std::int64_t m, std::int64_t mu);

/// One twist-and-restrict step: the first k points go onto the cubic, the degree drops by 3mu
/// and their multiplicities by mu.
struct ReductionPlan {
  FatPointSystem original;
  std::size_t k = 0;
  std::int64_t mu = 0;
  FatPointSystem reduced;
  std::int64_t chi_original = 0;
  std::int64_t chi_reduced = 0;
  std::int64_t chi_S = 0;  // chi on the ruled component, read off the additivity identity
  bool hypothesis = false;  // chi_reduced >= chi_original
};

ReductionPlan reduce(const FatPointSystem& s, std::size_t k, std::int64_t mu);

/// chi_S = chi_original - chi_reduced, and chi_S <= 0 whenever the hypothesis holds.
bool chi_identity_check(const ReductionPlan& plan);

/// D ~ mu C0 + b'f on a ruled surface over an elliptic curve with invariant e.
struct RuledSurfaceDivisor {
  std::int64_t mu = 0;
  std::int64_t b_prime = 0;
  std::int64_t e = 0;
};

/// (mu + 1)(b' - mu e / 2).
Rational ruled_chi(const RuledSurfaceDivisor& D);

/// Evaluates a (possibly on-cubic) system; normally certify with fixed options.
using Backend = std::function<Certificate(const FatPointSystem&)>;

Backend sampling_backend(CertifyOptions opts);

/// Upper bound on generic h^0 of plan.original by h^0 of plan.reduced.
/// Throws InapplicableError unless plan.hypothesis holds.
Certificate theorem_upper_bound(const ReductionPlan& plan, const Backend& backend);

/// Homogeneous d; m^n with mu = mu_bound a positive integer: nonspeciality of the reduced
/// system transfers to the original. Otherwise returns inconclusive carrying the reduced h^0 bound.
Certificate corollary_nonspecial(std::int64_t d, std::int64_t n, std::int64_t m, const Backend& backend);

struct BoundSearch {
  std::optional<Certificate> best;
  std::vector<std::int64_t> tried;    // mu values evaluated
  std::vector<std::int64_t> skipped;  // admissible mu whose reduced matrix exceeded the cap
};

/// Smallest theorem bound over every admissible integral mu (k = n), skipping reduced
/// systems whose interpolation matrix has more than max_entries entries.
BoundSearch best_upper_bound(const FatPointSystem& s, const Backend& backend, std::int64_t max_entries);

/// Rows times columns of the interpolation matrix of effective_part(s); 0 when d < 0.
std::int64_t matrix_entries(const FatPointSystem& s);

}  // namespace fatpt
