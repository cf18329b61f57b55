#include "fatpt/store.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace fatpt {

using nlohmann::json;

json to_json(const StoreRecord& r) {
  return {{"schema", kStoreRecordSchema},
          {"key", r.key},
          {"command", r.command},
          {"input", r.input},
          {"certificate", r.certificate ? to_json(*r.certificate) : json(nullptr)},
          {"error", r.error ? json(*r.error) : json(nullptr)},
          {"created_at", r.created_at},
          {"tool_version", r.tool_version}};
}

StoreRecord store_record_from_json(const json& j) {
  if (j.at("schema").get<std::string>() != kStoreRecordSchema)
    throw std::invalid_argument("unsupported store record schema");
  StoreRecord r;
  r.key = j.at("key").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.input = j.at("input");
  if (!j.at("certificate").is_null()) r.certificate = certificate_from_json(j.at("certificate"));
  if (!j.at("error").is_null()) r.error = j.at("error").get<std::string>();
  r.created_at = j.at("created_at").get<std::string>();
  r.tool_version = j.at("tool_version").get<std::string>();
  return r;
}

std::string content_key(const std::string& command, const json& input) {
  const std::string text = json{{"command", command}, {"input", input}}.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

CertificateStore::CertificateStore(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      auto rec = store_record_from_json(json::parse(line));
      records_.emplace(rec.key, std::move(rec));
    } catch (const std::exception& e) {
      throw std::runtime_error(path_.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

const StoreRecord* CertificateStore::find(const std::string& key) const {
  auto it = records_.find(key);
  return it == records_.end() ? nullptr : &it->second;
}

bool CertificateStore::append(const StoreRecord& r) {
  if (records_.count(r.key)) return false;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot open store " + path_.string());
  out << to_json(r).dump() << '\n';
  out.flush();
  records_.emplace(r.key, r);
  return true;
}

}  // namespace fatpt
