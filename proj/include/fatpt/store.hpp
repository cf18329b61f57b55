#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "fatpt/certificate.hpp"

namespace fatpt {

inline constexpr const char* kStoreRecordSchema = "fatpt.store-record/1";
inline constexpr const char* kToolVersion = "0.1.0";

/// One line of the newline-delimited JSON store.
struct StoreRecord {
  std::string key;
  std::string command;
  nlohmann::json input;
  std::optional<Certificate> certificate;
  std::optional<std::string> error;
  std::string created_at;
  std::string tool_version = kToolVersion;

  friend bool operator==(const StoreRecord&, const StoreRecord&) = default;
};

nlohmann::json to_json(const StoreRecord& r);
StoreRecord store_record_from_json(const nlohmann::json& j);

/// FNV-1a over the compact dump of {command, input}, as 16 hex digits.
std::string content_key(const std::string& command, const nlohmann::json& input);

/// Current UTC time, ISO 8601 with seconds.
std::string utc_timestamp();

/// Append-only certificate store. Lookups are by content key; the first record for a key wins.
class CertificateStore {
 public:
  explicit CertificateStore(std::filesystem::path path);

  const StoreRecord* find(const std::string& key) const;

  /// Appends unless the key is already present. Returns false on a duplicate.
  bool append(const StoreRecord& r);

  std::size_t size() const { return records_.size(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::map<std::string, StoreRecord> records_;
};

}  // namespace fatpt
