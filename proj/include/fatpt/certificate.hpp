#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fatpt/linsys.hpp"

namespace fatpt {

inline constexpr const char* kCertificateSchema = "fatpt.certificate/1";

struct RankReport {
  std::int64_t monomials = 0;
  std::int64_t conditions = 0;
  std::int64_t rank = 0;
  std::int64_t h0_sample = 0;
  bool full_rank = false;

  friend bool operator==(const RankReport&, const RankReport&) = default;
};

enum class Verdict { NonspecialCertified, SpecialExact, SpecialSuspected, Inconclusive, UpperBound };

enum class Method {
  DirectGeneric,
  DirectOnCubic,
  FixedComponent,  // exact arithmetic, no sampling needed
  DegenerationNonspecial,
  DegenerationBound,
};

std::string to_string(Verdict v);
std::string to_string(Method m);
Verdict verdict_from_string(const std::string& s);
Method method_from_string(const std::string& s);

/// Decided verdicts map to exit code 0.
bool is_decided(Verdict v);

struct Evidence {
  std::uint64_t prime = 0;
  std::uint64_t seed = 0;
  RankReport report;

  friend bool operator==(const Evidence&, const Evidence&) = default;
};

/// Summary of the twisted system used by the degeneration methods.
struct ReductionEvidence {
  std::int64_t mu = 0;
  std::size_t k = 0;
  FatPointSystem reduced;
  std::int64_t chi_original = 0;
  std::int64_t chi_reduced = 0;
  std::int64_t chi_S = 0;
  Verdict reduced_verdict = Verdict::Inconclusive;
  std::optional<std::int64_t> reduced_h0;

  friend bool operator==(const ReductionEvidence&, const ReductionEvidence&) = default;
};

struct Certificate {
  FatPointSystem system;
  Verdict verdict = Verdict::Inconclusive;
  Method method = Method::DirectGeneric;
  std::int64_t chi = 0;
  std::optional<std::int64_t> h0;        // exact generic h^0, when known
  std::optional<std::int64_t> h1;        // exact, or h0_sample - chi for suspected speciality
  std::optional<std::int64_t> h0_bound;  // upper bound on generic h^0
  std::vector<Evidence> evidence;
  std::optional<ReductionEvidence> reduction;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

nlohmann::json to_json(const FatPointSystem& s);
FatPointSystem system_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

}  // namespace fatpt
