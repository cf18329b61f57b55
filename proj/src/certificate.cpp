#include "fatpt/certificate.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace fatpt {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Verdict, const char*>, 5> kVerdictNames{{
    {Verdict::NonspecialCertified, "nonspecial-certified"},
    {Verdict::SpecialExact, "special-exact"},
    {Verdict::SpecialSuspected, "special-suspected"},
    {Verdict::Inconclusive, "inconclusive"},
    {Verdict::UpperBound, "upper-bound"},
}};

constexpr std::array<std::pair<Method, const char*>, 5> kMethodNames{{
    {Method::DirectGeneric, "direct-generic"},
    {Method::DirectOnCubic, "direct-on-cubic"},
    {Method::FixedComponent, "fixed-component"},
    {Method::DegenerationNonspecial, "degeneration-nonspecial"},
    {Method::DegenerationBound, "degeneration-bound"},
}};

// 64-bit quantities travel as decimal strings so JSON consumers limited to doubles stay exact.
std::string u64_str(std::uint64_t v) { return std::to_string(v); }
std::uint64_t u64_parse(const json& j) { return std::stoull(j.get<std::string>()); }

json optional_int(const std::optional<std::int64_t>& v) { return v ? json(*v) : json(nullptr); }
std::optional<std::int64_t> optional_int(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::int64_t>();
}

}  // namespace

std::string to_string(Verdict v) {
  for (auto [k, name] : kVerdictNames)
    if (k == v) return name;
  throw std::logic_error("unknown verdict");
}

std::string to_string(Method m) {
  for (auto [k, name] : kMethodNames)
    if (k == m) return name;
  throw std::logic_error("unknown method");
}

Verdict verdict_from_string(const std::string& s) {
  for (auto [k, name] : kVerdictNames)
    if (s == name) return k;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

Method method_from_string(const std::string& s) {
  for (auto [k, name] : kMethodNames)
    if (s == name) return k;
  throw std::invalid_argument("unknown method '" + s + "'");
}

bool is_decided(Verdict v) { return v == Verdict::NonspecialCertified || v == Verdict::SpecialExact; }

json to_json(const FatPointSystem& s) {
  json tags = json::array();
  for (auto t : s.tags) tags.push_back(to_string(t));
  return {{"d", s.d}, {"mults", s.mults}, {"tags", tags}};
}

FatPointSystem system_from_json(const json& j) {
  auto mults = j.at("mults").get<std::vector<std::int64_t>>();
  std::vector<Placement> tags;
  if (j.contains("tags")) {
    for (const auto& t : j.at("tags")) tags.push_back(placement_from_string(t.get<std::string>()));
  } else {
    tags.assign(mults.size(), Placement::Generic);
  }
  return FatPointSystem(j.at("d").get<std::int64_t>(), std::move(mults), std::move(tags));
}

json to_json(const Certificate& c) {
  json evidence = json::array();
  for (const auto& e : c.evidence) {
    evidence.push_back({{"prime", u64_str(e.prime)},
                        {"seed", u64_str(e.seed)},
                        {"monomials", e.report.monomials},
                        {"conditions", e.report.conditions},
                        {"rank", e.report.rank},
                        {"h0_sample", e.report.h0_sample},
                        {"full_rank", e.report.full_rank}});
  }
  json reduction = nullptr;
  if (c.reduction) {
    const auto& r = *c.reduction;
    reduction = {{"mu", r.mu},
                 {"k", r.k},
                 {"reduced", to_json(r.reduced)},
                 {"chi_original", r.chi_original},
                 {"chi_reduced", r.chi_reduced},
                 {"chi_S", r.chi_S},
                 {"reduced_verdict", to_string(r.reduced_verdict)},
                 {"reduced_h0", optional_int(r.reduced_h0)}};
  }
  return {{"schema", kCertificateSchema},
          {"system", to_json(c.system)},
          {"verdict", to_string(c.verdict)},
          {"method", to_string(c.method)},
          {"chi", c.chi},
          {"h0", optional_int(c.h0)},
          {"h1", optional_int(c.h1)},
          {"h0_bound", optional_int(c.h0_bound)},
          {"evidence", evidence},
          {"reduction", reduction}};
}

Certificate certificate_from_json(const json& j) {
  if (j.at("schema").get<std::string>() != kCertificateSchema)
    throw std::invalid_argument("unsupported certificate schema");
  Certificate c;
  c.system = system_from_json(j.at("system"));
  c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  c.method = method_from_string(j.at("method").get<std::string>());
  c.chi = j.at("chi").get<std::int64_t>();
  c.h0 = optional_int(j.at("h0"));
  c.h1 = optional_int(j.at("h1"));
  c.h0_bound = optional_int(j.at("h0_bound"));
  for (const auto& e : j.at("evidence")) {
    Evidence ev;
    ev.prime = u64_parse(e.at("prime"));
    ev.seed = u64_parse(e.at("seed"));
    ev.report.monomials = e.at("monomials").get<std::int64_t>();
    ev.report.conditions = e.at("conditions").get<std::int64_t>();
    ev.report.rank = e.at("rank").get<std::int64_t>();
    ev.report.h0_sample = e.at("h0_sample").get<std::int64_t>();
    ev.report.full_rank = e.at("full_rank").get<bool>();
    c.evidence.push_back(ev);
  }
  if (const auto& r = j.at("reduction"); !r.is_null()) {
    ReductionEvidence re;
    re.mu = r.at("mu").get<std::int64_t>();
    re.k = r.at("k").get<std::size_t>();
    re.reduced = system_from_json(r.at("reduced"));
    re.chi_original = r.at("chi_original").get<std::int64_t>();
    re.chi_reduced = r.at("chi_reduced").get<std::int64_t>();
    re.chi_S = r.at("chi_S").get<std::int64_t>();
    re.reduced_verdict = verdict_from_string(r.at("reduced_verdict").get<std::string>());
    re.reduced_h0 = optional_int(r.at("reduced_h0"));
    c.reduction = std::move(re);
  }
  return c;
}

}  // namespace fatpt
