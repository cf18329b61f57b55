#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace fatpt {

/// Default modulus: the Mersenne prime 2^31 - 1.
inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;

/// Moduli must fit in 31 bits so that a + b*c stays below 2^63.
inline constexpr std::uint64_t kMaxModulus = (1ULL << 31) - 1;

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidModulus : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Arithmetic modulo an odd prime p < 2^31 with Barrett reduction.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p = kDefaultPrime);

  std::uint64_t modulus() const { return p_; }

  std::uint64_t reduce(std::uint64_t x) const {
    const auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett_) >> 64);
    std::uint64_t r = x - q * p_;
    while (r >= p_) r -= p_;
    return r;
  }

  std::uint64_t from_int(std::int64_t v) const {
    const auto p = static_cast<std::int64_t>(p_);
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return static_cast<std::uint64_t>(r);
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return reduce(a * b); }

  std::uint64_t pow(std::uint64_t base, std::uint64_t exp) const;

  /// Throws DivisionByZero when a == 0 mod p.
  std::uint64_t inv(std::uint64_t a) const;

  /// Legendre symbol: 0, 1 or -1.
  int legendre(std::uint64_t a) const;

  /// Tonelli-Shanks square root; nullopt for non-residues.
  std::optional<std::uint64_t> sqrt(std::uint64_t a) const;

 private:
  std::uint64_t p_;
  std::uint64_t barrett_;
};

/// A single residue together with its modulus.
struct FieldElement {
  std::uint64_t value = 0;
  std::uint64_t modulus = kDefaultPrime;

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

FieldElement make_element(std::int64_t v, std::uint64_t p);

FieldElement field_inverse(FieldElement a);

}  // namespace fatpt
