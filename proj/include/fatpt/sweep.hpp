#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fatpt/certificate.hpp"
#include "fatpt/elliptic.hpp"
#include "fatpt/field.hpp"
#include "fatpt/store.hpp"

namespace fatpt {

inline constexpr std::int64_t kDefaultMaxMatrixEntries = 4'000'000;
inline constexpr const char* kThreadsEnv = "FATPT_THREADS";

struct RunConfig {
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t seed = 0;
  std::size_t trials = 3;
  int threads = 0;  // 0: FATPT_THREADS, else hardware concurrency
  std::int64_t max_matrix_entries = kDefaultMaxMatrixEntries;

  CertifyOptions certify_options() const { return {trials, prime, seed, threads}; }
};

/// Throws ConfigError unless the prime is valid and exceeds max_degree.
void validate(const RunConfig& cfg, std::int64_t max_degree);

/// Thread budget after applying the environment fallback; always >= 1.
int resolve_threads(int requested);

/// Fields of RunConfig that influence results (threads excluded).
nlohmann::json config_json(const RunConfig& cfg);

/// Multiplicity tokens: "4x10", "3,3,2", "4x10,2", "-1x12". Tokens concatenate.
std::vector<std::int64_t> parse_mults(const std::vector<std::string>& tokens);

/// Inclusive integer range: "7", "7:12" or "7..12". lo > hi means empty.
struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
};
IntRange parse_range(const std::string& text);

struct SweepRow {
  std::int64_t d = 0;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t v = 0;
  std::optional<Rational> mu;
  bool integral = false;
  std::optional<Certificate> certificate;
  std::optional<std::string> error;
  bool reused = false;

  /// Verdict name, "skipped" or "error".
  std::string verdict() const;
  /// Exact h^0, "<=B" for a bound, empty when unknown.
  std::string h0_text() const;
};

/// Degeneration route when mu is a positive integer, direct sampling under the matrix cap otherwise
/// or when the degeneration route is inconclusive.
SweepRow sweep_item(std::int64_t d, std::int64_t n, std::int64_t m, const RunConfig& cfg, int rank_threads);

struct SweepStats {
  std::size_t computed = 0;
  std::size_t reused = 0;
};

/// Rows in input order (d outermost, then n, then m). Items run concurrently; the store,
/// when given, is consulted first and appended to in input order.
std::vector<SweepRow> run_sweep(IntRange d, IntRange n, IntRange m, const RunConfig& cfg,
                                CertificateStore* store, SweepStats* stats = nullptr);

std::string sweep_csv(const std::vector<SweepRow>& rows);

std::string to_string(const Rational& r);

}  // namespace fatpt
