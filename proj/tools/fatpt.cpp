// fatpt: dimensions of plane-curve linear systems with assigned multiple points.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fatpt/certificate.hpp"
#include "fatpt/elliptic.hpp"
#include "fatpt/interp.hpp"
#include "fatpt/linsys.hpp"
#include "fatpt/store.hpp"
#include "fatpt/sweep.hpp"

namespace {

using nlohmann::json;
using namespace fatpt;

constexpr int kExitDecided = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUndecided = 2;

struct Globals {
  RunConfig run;
  std::string store_path = "fatpt-store.ndjson";
  bool no_store = false;
  std::string format = "table";
};

std::unique_ptr<CertificateStore> open_store(const Globals& g) {
  if (g.no_store || g.store_path.empty()) return nullptr;
  return std::make_unique<CertificateStore>(g.store_path);
}

std::string opt_text(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : "-"; }

void print_certificate(const Certificate& c, const std::string& format) {
  if (format == "json") {
    std::cout << to_json(c).dump(2) << '\n';
    return;
  }
  if (format == "csv") {
    std::cout << "system,verdict,method,chi,h0,h1,h0_bound\n"
              << '"' << describe(c.system) << "\"," << to_string(c.verdict) << ',' << to_string(c.method) << ','
              << c.chi << ',' << (c.h0 ? std::to_string(*c.h0) : "") << ',' << (c.h1 ? std::to_string(*c.h1) : "")
              << ',' << (c.h0_bound ? std::to_string(*c.h0_bound) : "") << '\n';
    return;
  }
  std::cout << "system     " << describe(c.system) << '\n'
            << "verdict    " << to_string(c.verdict) << '\n'
            << "method     " << to_string(c.method) << '\n'
            << "chi        " << c.chi << '\n'
            << "h0         " << opt_text(c.h0) << '\n'
            << "h1         " << opt_text(c.h1) << '\n'
            << "h0 bound   " << opt_text(c.h0_bound) << '\n';
  if (c.reduction) {
    const auto& r = *c.reduction;
    std::cout << "reduced    " << describe(r.reduced) << "  (mu = " << r.mu << ", k = " << r.k << ", "
              << to_string(r.reduced_verdict) << ")\n";
  }
  for (const auto& e : c.evidence) {
    std::cout << "trial      seed " << e.seed << ": rank " << e.report.rank << " of " << e.report.conditions << "x"
              << e.report.monomials << ", h0 " << e.report.h0_sample << (e.report.full_rank ? " (full rank)" : "")
              << '\n';
  }
}

FatPointSystem read_system_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  return system_from_json(json::parse(in));
}

int cmd_expdim(const Globals& g, std::int64_t d, const std::vector<std::string>& mults) {
  const FatPointSystem s(d, parse_mults(mults));
  const auto inv = invariants(s);
  if (g.format == "json") {
    std::cout << json{{"system", to_json(s)},
                      {"chi", inv.chi},
                      {"v", inv.v},
                      {"monomials", inv.monomials},
                      {"conditions", inv.conditions}}
                     .dump(2)
              << '\n';
  } else if (g.format == "csv") {
    std::cout << "system,chi,v,monomials,conditions\n"
              << '"' << describe(s) << "\"," << inv.chi << ',' << inv.v << ',' << inv.monomials << ','
              << inv.conditions << '\n';
  } else {
    std::cout << "system      " << describe(s) << '\n'
              << "chi         " << inv.chi << '\n'
              << "v           " << inv.v << '\n'
              << "monomials   " << inv.monomials << '\n'
              << "conditions  " << inv.conditions << '\n';
  }
  return kExitDecided;
}

int cmd_certify(const Globals& g, std::optional<std::int64_t> d, const std::vector<std::string>& mults,
                const std::string& placement, const std::string& input) {
  FatPointSystem s;
  if (!input.empty()) {
    s = read_system_json(input);
  } else {
    if (!d) throw ConfigError("certify needs a degree or --input");
    s = FatPointSystem(*d, parse_mults(mults), placement_from_string(placement));
  }
  validate(g.run, s.d);

  auto run = g.run;
  run.threads = resolve_threads(run.threads);
  const json key_input = {{"system", to_json(s)}, {"config", config_json(g.run)}};
  const auto key = content_key("certify", key_input);
  auto store = open_store(g);

  Certificate cert;
  if (const StoreRecord* rec = store ? store->find(key) : nullptr; rec && rec->certificate) {
    cert = *rec->certificate;
  } else {
    cert = certify(s, run.certify_options());
    if (store) store->append({key, "certify", key_input, cert, std::nullopt, utc_timestamp()});
  }
  print_certificate(cert, g.format);
  return is_decided(cert.verdict) ? kExitDecided : kExitUndecided;
}

int cmd_reduce(const Globals& g, std::int64_t d, std::int64_t n, std::int64_t m, std::optional<std::int64_t> mu_opt,
               std::optional<std::size_t> k_opt) {
  const auto bound = mu_bound(d, n, m);
  const bool integral = is_integral(bound) && bound.numerator() > 0;
  const std::int64_t mu = mu_opt ? *mu_opt : std::max<std::int64_t>(floor_of(bound), 0);
  const auto k = k_opt ? *k_opt : static_cast<std::size_t>(n);
  const auto plan = reduce(FatPointSystem::homogeneous(d, static_cast<std::size_t>(n), m), k, mu);
  validate(g.run, std::max(plan.original.d, plan.reduced.d));

  auto run = g.run;
  run.threads = resolve_threads(run.threads);
  std::optional<Certificate> reduced_cert;
  if (plan.reduced.d >= -2 && matrix_entries(plan.reduced) <= run.max_matrix_entries)
    reduced_cert = certify(plan.reduced, run.certify_options());
  const bool special = reduced_cert && (reduced_cert->verdict == Verdict::SpecialExact ||
                                        reduced_cert->verdict == Verdict::SpecialSuspected);

  if (g.format == "json") {
    std::cout << json{{"mu", mu},
                      {"mu_bound", to_string(bound)},
                      {"integral", integral},
                      {"k", k},
                      {"original", to_json(plan.original)},
                      {"reduced", to_json(plan.reduced)},
                      {"chi_original", plan.chi_original},
                      {"chi_reduced", plan.chi_reduced},
                      {"chi_S", plan.chi_S},
                      {"hypothesis", plan.hypothesis},
                      {"identity_holds", chi_identity_check(plan)},
                      {"reduced_certificate", reduced_cert ? to_json(*reduced_cert) : json(nullptr)}}
                     .dump(2)
              << '\n';
  } else if (g.format == "csv") {
    std::cout << "d,n,m,mu,mu_bound,integral,reduced,chi_original,chi_reduced,chi_S,hypothesis,reduced_verdict\n"
              << d << ',' << n << ',' << m << ',' << mu << ',' << to_string(bound) << ',' << (integral ? "yes" : "no")
              << ",\"" << describe(plan.reduced) << "\"," << plan.chi_original << ',' << plan.chi_reduced << ','
              << plan.chi_S << ',' << (plan.hypothesis ? "yes" : "no") << ','
              << (reduced_cert ? to_string(reduced_cert->verdict) : "") << '\n';
  } else {
    std::cout << "original      " << describe(plan.original) << '\n'
              << "mu bound      " << to_string(bound) << (integral ? " (positive integer)" : "") << '\n'
              << "mu            " << mu << (mu_opt ? " (given)" : "") << '\n'
              << "k             " << k << '\n'
              << "reduced       " << describe(plan.reduced) << '\n'
              << "chi original  " << plan.chi_original << '\n'
              << "chi reduced   " << plan.chi_reduced << '\n'
              << "chi S         " << plan.chi_S << '\n'
              << "hypothesis    " << (plan.hypothesis ? "holds" : "fails") << '\n';
    if (reduced_cert)
      std::cout << "reduced h0    " << opt_text(reduced_cert->h0 ? reduced_cert->h0 : reduced_cert->h0_bound) << " ("
                << to_string(reduced_cert->verdict) << ")\n";
  }
  if (special) std::cerr << "warning: reduced system is special\n";
  return kExitDecided;
}

int cmd_bound(const Globals& g, std::int64_t d, std::int64_t n, std::int64_t m) {
  const auto s = FatPointSystem::homogeneous(d, static_cast<std::size_t>(n), m);
  validate(g.run, d);
  auto run = g.run;
  run.threads = resolve_threads(run.threads);

  const json key_input = {{"system", to_json(s)}, {"config", config_json(g.run)}};
  const auto key = content_key("bound", key_input);
  auto store = open_store(g);

  std::optional<Certificate> best;
  if (const StoreRecord* rec = store ? store->find(key) : nullptr) {
    best = rec->certificate;
  } else {
    auto search = best_upper_bound(s, sampling_backend(run.certify_options()), run.max_matrix_entries);
    best = search.best;
    if (store) store->append({key, "bound", key_input, best, std::nullopt, utc_timestamp()});
  }

  if (!best) {
    if (g.format == "json")
      std::cout << json{{"system", to_json(s)}, {"h0_bound", nullptr}}.dump(2) << '\n';
    else
      std::cout << "unbounded by this method\n";
    return kExitUndecided;
  }
  if (g.format == "table") {
    std::cout << "h0 bound   " << *best->h0_bound << '\n';
    print_certificate(*best, g.format);
  } else {
    print_certificate(*best, g.format);
  }
  return kExitDecided;
}

int cmd_sweep(const Globals& g, const std::string& dr, const std::string& nr, const std::string& mr) {
  const auto d = parse_range(dr), n = parse_range(nr), m = parse_range(mr);
  validate(g.run, d.hi);
  auto store = open_store(g);
  SweepStats stats;
  const auto rows = run_sweep(d, n, m, g.run, store.get(), &stats);

  if (g.format == "json") {
    json out = json::array();
    for (const auto& r : rows) {
      out.push_back({{"d", r.d},
                     {"n", r.n},
                     {"m", r.m},
                     {"v", r.v},
                     {"mu", r.mu ? json(to_string(*r.mu)) : json(nullptr)},
                     {"integral", r.integral},
                     {"verdict", r.verdict()},
                     {"h0", r.h0_text()},
                     {"error", r.error ? json(*r.error) : json(nullptr)},
                     {"certificate", r.certificate ? to_json(*r.certificate) : json(nullptr)}});
    }
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << sweep_csv(rows);
  }
  std::cerr << "computed " << stats.computed << ", reused " << stats.reused << '\n';
  return kExitDecided;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimensions of plane-curve linear systems with assigned multiple points"};
  app.require_subcommand(1);
  Globals g;

  app.add_option("--prime", g.run.prime, "Odd prime modulus below 2^31")->capture_default_str();
  app.add_option("--seed", g.run.seed, "64-bit sampling seed")->capture_default_str();
  app.add_option("--trials", g.run.trials, "Sampling trials per certification")->capture_default_str();
  app.add_option("--threads", g.run.threads, std::string("Thread budget (default: $") + kThreadsEnv + " or all cores)");
  app.add_option("--store", g.store_path, "Newline-delimited JSON certificate store")->capture_default_str();
  app.add_flag("--no-store", g.no_store, "Do not read or write the store");
  app.add_option("--max-matrix-entries", g.run.max_matrix_entries, "Cap for direct interpolation matrices")
      ->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();

  std::int64_t d = 0, n = 0, m = 0;
  std::optional<std::int64_t> d_opt, mu;
  std::optional<std::size_t> k;
  std::vector<std::string> mults;
  std::string placement = "generic", input, dr, nr, mr;

  auto* expdim = app.add_subcommand("expdim", "Euler characteristic and expected dimension");
  expdim->add_option("d", d, "Degree")->required();
  expdim->add_option("mults", mults, "Multiplicities, e.g. 4x10 or 3,3,2 (use -- before negative values)");

  auto* cert = app.add_subcommand("certify", "Certify (non)speciality by interpolation at sampled points");
  cert->add_option("d", d_opt, "Degree");
  cert->add_option("mults", mults, "Multiplicities");
  cert->add_option("--placement", placement, "Point placement")
      ->check(CLI::IsMember({"generic", "cubic", "on-cubic"}))
      ->capture_default_str();
  cert->add_option("--input", input, "JSON system with per-point tags");

  auto* red = app.add_subcommand("reduce", "Twist by mu and restrict to the rational component");
  red->add_option("d", d)->required();
  red->add_option("n", n)->required();
  red->add_option("m", m)->required();
  red->add_option("--mu", mu, "Twist (default: floor of the mu bound)");
  red->add_option("-k", k, "Points moved onto the cubic (default: all)");

  auto* bnd = app.add_subcommand("bound", "Best h0 upper bound over admissible mu");
  bnd->add_option("d", d)->required();
  bnd->add_option("n", n)->required();
  bnd->add_option("m", m)->required();

  auto* sw = app.add_subcommand("sweep", "Batch over ranges of d, n, m (e.g. 10:40 10 3:12)");
  sw->add_option("d-range", dr)->required();
  sw->add_option("n-range", nr)->required();
  sw->add_option("m-range", mr)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*expdim) return cmd_expdim(g, d, mults);
    if (*cert) return cmd_certify(g, d_opt, mults, placement, input);
    if (*red) return cmd_reduce(g, d, n, m, mu, k);
    if (*bnd) return cmd_bound(g, d, n, m);
    if (*sw) return cmd_sweep(g, dr, nr, mr);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConstructionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUndecided;
  }
  return kExitUsage;
}
