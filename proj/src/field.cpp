#include "fatpt/field.hpp"

#include <array>
#include <string>

namespace fatpt {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mulmod64(r, b, m);
    b = mulmod64(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto q : kBases) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : kBases) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p), barrett_(0) {
  if (p < 3 || p > kMaxModulus || !is_prime(p)) {
    throw InvalidModulus("modulus must be an odd prime below 2^31, got " + std::to_string(p));
  }
  barrett_ = ~std::uint64_t{0} / p;
}

std::uint64_t PrimeField::pow(std::uint64_t base, std::uint64_t exp) const {
  std::uint64_t r = 1;
  base = reduce(base);
  while (exp > 0) {
    if (exp & 1) r = mul(r, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  a = reduce(a);
  if (a == 0) throw DivisionByZero("inverse of zero modulo " + std::to_string(p_));
  // Extended Euclid on signed values; p < 2^31 so nothing overflows.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  return from_int(t);
}

int PrimeField::legendre(std::uint64_t a) const {
  a = reduce(a);
  if (a == 0) return 0;
  return pow(a, (p_ - 1) / 2) == 1 ? 1 : -1;
}

std::optional<std::uint64_t> PrimeField::sqrt(std::uint64_t a) const {
  a = reduce(a);
  if (a == 0) return 0;
  if (legendre(a) != 1) return std::nullopt;

  if (p_ % 4 == 3) return pow(a, (p_ + 1) / 4);

  // p - 1 = q * 2^s with q odd
  std::uint64_t q = p_ - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (legendre(z) != -1) ++z;

  unsigned m = s;
  std::uint64_t c = pow(z, q);
  std::uint64_t t = pow(a, q);
  std::uint64_t r = pow(a, (q + 1) / 2);
  while (t != 1) {
    unsigned i = 0;
    std::uint64_t t2 = t;
    while (t2 != 1) {
      t2 = mul(t2, t2);
      ++i;
    }
    std::uint64_t b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = mul(b, b);
    m = i;
    c = mul(b, b);
    t = mul(t, c);
    r = mul(r, b);
  }
  return r;
}

FieldElement make_element(std::int64_t v, std::uint64_t p) {
  PrimeField f(p);
  return {f.from_int(v), p};
}

FieldElement field_inverse(FieldElement a) {
  PrimeField f(a.modulus);
  return {f.inv(a.value), a.modulus};
}

}  // namespace fatpt
