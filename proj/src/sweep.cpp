#include "fatpt/sweep.hpp"

#include <atomic>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "fatpt/interp.hpp"

namespace fatpt {

using nlohmann::json;

void validate(const RunConfig& cfg, std::int64_t max_degree) {
  try {
    PrimeField{cfg.prime};
  } catch (const InvalidModulus& e) {
    throw ConfigError(e.what());
  }
  if (max_degree >= 0 && cfg.prime <= static_cast<std::uint64_t>(max_degree))
    throw ConfigError("prime must exceed every degree in the workload");
  if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
  if (cfg.max_matrix_entries < 0) throw ConfigError("matrix cap must be nonnegative");
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv(kThreadsEnv)) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const auto hw = static_cast<int>(std::thread::hardware_concurrency());
  return hw > 0 ? hw : 1;
}

json config_json(const RunConfig& cfg) {
  return {{"prime", std::to_string(cfg.prime)},
          {"seed", std::to_string(cfg.seed)},
          {"trials", cfg.trials},
          {"max_matrix_entries", cfg.max_matrix_entries}};
}

namespace {

std::int64_t parse_int(const std::string& s) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError("not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw ConfigError("not an integer: '" + s + "'");
  return v;
}

}  // namespace

std::vector<std::int64_t> parse_mults(const std::vector<std::string>& tokens) {
  std::vector<std::int64_t> out;
  for (const auto& token : tokens) {
    std::stringstream ss(token);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      if (piece.empty()) continue;
      const auto x = piece.find_first_of("xX");
      if (x == std::string::npos) {
        out.push_back(parse_int(piece));
        continue;
      }
      const auto value = parse_int(piece.substr(0, x));
      const auto count = parse_int(piece.substr(x + 1));
      if (count < 0) throw ConfigError("negative repeat count in '" + piece + "'");
      out.insert(out.end(), static_cast<std::size_t>(count), value);
    }
  }
  return out;
}

IntRange parse_range(const std::string& text) {
  auto split = [&](std::size_t at, std::size_t len) {
    return IntRange{parse_int(text.substr(0, at)), parse_int(text.substr(at + len))};
  };
  if (auto p = text.find(".."); p != std::string::npos) return split(p, 2);
  if (auto p = text.find(':', 1); p != std::string::npos) return split(p, 1);
  const auto v = parse_int(text);
  return {v, v};
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string SweepRow::verdict() const {
  if (error) return "error";
  if (!certificate) return "skipped";
  return to_string(certificate->verdict);
}

std::string SweepRow::h0_text() const {
  if (!certificate) return "";
  if (certificate->h0) return std::to_string(*certificate->h0);
  if (certificate->h0_bound) return "<=" + std::to_string(*certificate->h0_bound);
  return "";
}

namespace {

void fill_arithmetic(SweepRow& row) {
  row.v = expected_dim(FatPointSystem::homogeneous(row.d, static_cast<std::size_t>(std::max<std::int64_t>(row.n, 0)), row.m));
  if (row.n >= 10) {
    row.mu = mu_bound(row.d, row.n, row.m);
    row.integral = is_integral(*row.mu) && row.mu->numerator() > 0;
  }
}

}  // namespace

SweepRow sweep_item(std::int64_t d, std::int64_t n, std::int64_t m, const RunConfig& cfg, int rank_threads) {
  SweepRow row;
  row.d = d;
  row.n = n;
  row.m = m;
  try {
    if (n < 0) throw ConfigError("negative point count");
    fill_arithmetic(row);
    auto opts = cfg.certify_options();
    opts.threads = rank_threads;
    const auto backend = sampling_backend(opts);
    const auto sys = FatPointSystem::homogeneous(d, static_cast<std::size_t>(n), m);

    std::optional<Certificate> degeneration;
    if (row.integral) {
      degeneration = corollary_nonspecial(d, n, m, backend);
      if (degeneration->verdict == Verdict::NonspecialCertified) {
        row.certificate = std::move(degeneration);
        return row;
      }
    }
    if (d >= -2 && matrix_entries(sys) <= cfg.max_matrix_entries) {
      auto direct = certify(sys, opts);
      if (is_decided(direct.verdict) || !degeneration) {
        row.certificate = std::move(direct);
        return row;
      }
    }
    row.certificate = std::move(degeneration);
  } catch (const std::exception& e) {
    row.certificate.reset();
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> run_sweep(IntRange d, IntRange n, IntRange m, const RunConfig& cfg, CertificateStore* store,
                                SweepStats* stats) {
  struct Item {
    std::int64_t d, n, m;
    std::string key;
  };
  std::vector<Item> items;
  for (auto di = d.lo; di <= d.hi; ++di)
    for (auto ni = n.lo; ni <= n.hi; ++ni)
      for (auto mi = m.lo; mi <= m.hi; ++mi) {
        json input = {{"d", di}, {"n", ni}, {"m", mi}, {"config", config_json(cfg)}};
        items.push_back({di, ni, mi, content_key("sweep-item", input)});
      }

  std::vector<SweepRow> rows(items.size());
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const StoreRecord* rec = store ? store->find(items[i].key) : nullptr;
    if (!rec) {
      todo.push_back(i);
      continue;
    }
    auto& row = rows[i];
    row.d = items[i].d;
    row.n = items[i].n;
    row.m = items[i].m;
    try {
      fill_arithmetic(row);
    } catch (const std::exception&) {
    }
    row.certificate = rec->certificate;
    row.error = rec->error;
    row.reused = true;
  }

  const int budget = resolve_threads(cfg.threads);
  const int workers = std::max(1, std::min<int>(budget, static_cast<int>(todo.size())));
  const int rank_threads = workers > 1 ? 1 : budget;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t = next++; t < todo.size(); t = next++) {
      const auto& it = items[todo[t]];
      rows[todo[t]] = sweep_item(it.d, it.n, it.m, cfg, rank_threads);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }

  if (store) {
    for (auto i : todo) {
      StoreRecord rec;
      rec.key = items[i].key;
      rec.command = "sweep-item";
      rec.input = {{"d", items[i].d}, {"n", items[i].n}, {"m", items[i].m}, {"config", config_json(cfg)}};
      rec.certificate = rows[i].certificate;
      rec.error = rows[i].error;
      rec.created_at = utc_timestamp();
      store->append(rec);
    }
  }
  if (stats) *stats = {todo.size(), items.size() - todo.size()};
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "d,n,m,v,mu,integral,verdict,h0\n";
  for (const auto& r : rows) {
    os << r.d << ',' << r.n << ',' << r.m << ',' << r.v << ',' << (r.mu ? to_string(*r.mu) : "") << ','
       << (r.integral ? "yes" : "no") << ',' << r.verdict() << ',' << r.h0_text() << '\n';
  }
  return os.str();
}

}  // namespace fatpt
