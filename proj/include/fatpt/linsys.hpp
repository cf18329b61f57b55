#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fatpt {

/// Where a point sits when the system is sampled.
enum class Placement : std::uint8_t { Generic, OnCubic };

std::string to_string(Placement p);
Placement placement_from_string(const std::string& s);

class ArityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The class dH - sum m_i E_i on a blow-up of the plane, with a placement tag per point.
/// Degree and multiplicities may be negative after twisting.
struct FatPointSystem {
  std::int64_t d = 0;
  std::vector<std::int64_t> mults;
  std::vector<Placement> tags;

  FatPointSystem() = default;
  FatPointSystem(std::int64_t degree, std::vector<std::int64_t> m,
                 Placement placement = Placement::Generic);
  FatPointSystem(std::int64_t degree, std::vector<std::int64_t> m, std::vector<Placement> t);

  static FatPointSystem homogeneous(std::int64_t degree, std::size_t n, std::int64_t m,
                                    Placement placement = Placement::Generic);

  std::size_t size() const { return mults.size(); }
  bool is_homogeneous() const;
  bool all_tagged(Placement p) const;

  friend bool operator==(const FatPointSystem&, const FatPointSystem&) = default;
};

/// "d; m1,m2,..." with homogeneous runs collapsed to "m^k".
std::string describe(const FatPointSystem& s);

struct SystemInvariants {
  std::int64_t chi = 0;
  std::int64_t v = 0;
  std::int64_t conditions = 0;
  std::int64_t monomials = 0;
};

/// Number of degree-d monomials in three variables; 0 for d < 0.
std::int64_t monomial_count(std::int64_t d);

/// d(d+3)/2 + 1 - sum m_i(m_i+1)/2 over every entry, negative ones included.
std::int64_t chi(const FatPointSystem& s);

std::int64_t expected_dim(const FatPointSystem& s);

/// sum of m_i(m_i+1)/2 over entries with m_i >= 1.
std::int64_t conditions_count(const FatPointSystem& s);

SystemInvariants invariants(const FatPointSystem& s);

/// Drops negative multiplicities (they are fixed exceptional components).
FatPointSystem effective_part(const FatPointSystem& s);

/// Quadratic transformation centred at the three largest multiplicities
/// (stable descending order). Positions of the points are preserved.
FatPointSystem cremona(const FatPointSystem& s);

struct StandardForm {
  FatPointSystem system;
  std::size_t steps = 0;
};

/// Iterates cremona on the descending-sorted system until d >= m1+m2+m3,
/// or the degree or some multiplicity turns negative.
StandardForm cremona_standardize(const FatPointSystem& s);

}  // namespace fatpt
