#include "fatpt/interp.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

namespace fatpt {

std::vector<Exponents> monomial_basis(std::int64_t d) {
  std::vector<Exponents> basis;
  if (d < 0) return basis;
  basis.reserve(static_cast<std::size_t>(monomial_count(d)));
  for (std::int64_t i = d; i >= 0; --i)
    for (std::int64_t j = d - i; j >= 0; --j) basis.push_back({i, j, d - i - j});
  return basis;
}

namespace {

/// Uniform residue in [0, p) by rejection; independent of the standard library's distributions.
std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t p) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % p);
  for (;;) {
    const std::uint64_t x = gen();
    if (x < limit) return x % p;
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

bool smooth(const WeierstrassCubic& c, const PrimeField& f) {
  const auto disc = f.add(f.mul(4, f.mul(c.a, f.mul(c.a, c.a))), f.mul(27, f.mul(c.b, c.b)));
  return disc != 0;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial)));
}

bool on_curve(const WeierstrassCubic& c, const SamplePoint& pt, const PrimeField& f) {
  const auto [x, y, z] = pt.coords;
  const auto lhs = f.mul(f.mul(y, y), z);
  const auto z2 = f.mul(z, z);
  const auto rhs = f.add(f.add(f.mul(x, f.mul(x, x)), f.mul(c.a, f.mul(x, z2))), f.mul(c.b, f.mul(z2, z)));
  return lhs == rhs;
}

PointConfig sample_config(std::span<const Placement> tags, std::uint64_t p, std::uint64_t seed) {
  const PrimeField f(p);
  std::mt19937_64 gen(seed);
  PointConfig cfg;
  cfg.prime = p;
  cfg.seed = seed;

  const bool need_cubic = std::find(tags.begin(), tags.end(), Placement::OnCubic) != tags.end();
  if (need_cubic) {
    for (int attempt = 0;; ++attempt) {
      if (attempt == kSamplingRetries) throw SamplingError("no smooth cubic found");
      WeierstrassCubic c{uniform_below(gen, p), uniform_below(gen, p)};
      if (smooth(c, f)) {
        cfg.cubic = c;
        break;
      }
    }
  }

  // Every sampled point has z = 1, so (x, y) identifies it.
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (const auto tag : tags) {
    bool placed = false;
    for (int attempt = 0; attempt < kSamplingRetries && !placed; ++attempt) {
      const std::uint64_t x = uniform_below(gen, p);
      std::uint64_t y = 0;
      if (tag == Placement::OnCubic) {
        const auto rhs = f.add(f.add(f.mul(x, f.mul(x, x)), f.mul(cfg.cubic->a, x)), cfg.cubic->b);
        const auto root = f.sqrt(rhs);
        if (!root) continue;
        y = (gen() & 1) ? f.neg(*root) : *root;
      } else {
        y = uniform_below(gen, p);
      }
      if (!seen.emplace(x, y).second) continue;
      cfg.points.push_back({{x, y, 1}, tag});
      placed = true;
    }
    if (!placed) throw SamplingError("point sampling exhausted its retry budget");
  }
  return cfg;
}

PointConfig sample_config(std::size_t n_generic, std::size_t n_cubic, std::uint64_t p, std::uint64_t seed) {
  std::vector<Placement> tags(n_cubic, Placement::OnCubic);
  tags.insert(tags.end(), n_generic, Placement::Generic);
  return sample_config(tags, p, seed);
}

std::vector<std::vector<std::uint32_t>> condition_rows(const SamplePoint& pt, std::int64_t m, std::int64_t d,
                                                       const PrimeField& f) {
  if (d < 0) throw ConfigError("condition rows need a nonnegative degree");
  if (f.modulus() <= static_cast<std::uint64_t>(d))
    throw ConfigError("prime " + std::to_string(f.modulus()) + " must exceed the degree " + std::to_string(d));
  std::vector<std::vector<std::uint32_t>> rows;
  if (m <= 0) return rows;

  // Dehomogenize at a nonzero coordinate, preferring z.
  int chart = 2;
  while (chart >= 0 && f.reduce(pt.coords[static_cast<std::size_t>(chart)]) == 0) --chart;
  if (chart < 0) throw ConfigError("point (0:0:0) is not projective");
  const auto scale = f.inv(pt.coords[static_cast<std::size_t>(chart)]);
  std::array<std::size_t, 2> affine{};
  for (std::size_t i = 0, k = 0; i < 3; ++i)
    if (static_cast<int>(i) != chart) affine[k++] = i;
  const std::uint64_t u = f.mul(pt.coords[affine[0]], scale);
  const std::uint64_t v = f.mul(pt.coords[affine[1]], scale);

  const auto n = static_cast<std::size_t>(d) + 1;
  std::vector<std::uint64_t> upow(n, 1), vpow(n, 1);
  for (std::size_t k = 1; k < n; ++k) {
    upow[k] = f.mul(upow[k - 1], u);
    vpow[k] = f.mul(vpow[k - 1], v);
  }
  std::vector<std::vector<std::uint64_t>> binom(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    binom[a][0] = 1;
    for (std::size_t b = 1; b <= a; ++b) binom[a][b] = f.add(binom[a - 1][b - 1], b < a ? binom[a - 1][b] : 0);
  }

  const auto basis = monomial_basis(d);
  for (std::int64_t order = 0; order < m; ++order) {
    for (std::int64_t alpha = order; alpha >= 0; --alpha) {
      const std::int64_t beta = order - alpha;
      std::vector<std::uint32_t> row(basis.size(), 0);
      for (std::size_t c = 0; c < basis.size(); ++c) {
        const auto eu = basis[c][affine[0]];
        const auto ev = basis[c][affine[1]];
        if (eu < alpha || ev < beta) continue;
        const auto coeff = f.mul(binom[static_cast<std::size_t>(eu)][static_cast<std::size_t>(alpha)],
                                 binom[static_cast<std::size_t>(ev)][static_cast<std::size_t>(beta)]);
        row[c] = static_cast<std::uint32_t>(
            f.mul(coeff, f.mul(upow[static_cast<std::size_t>(eu - alpha)], vpow[static_cast<std::size_t>(ev - beta)])));
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

DenseMatrix build_matrix(const FatPointSystem& s, const PointConfig& cfg) {
  if (cfg.points.size() != s.size()) throw ConfigError("point count does not match the system");
  for (std::size_t i = 0; i < s.size(); ++i)
    if (cfg.points[i].tag != s.tags[i]) throw ConfigError("placement tag mismatch at point " + std::to_string(i));
  const auto eff = effective_part(s);
  if (eff.d < 0) throw ConfigError("interpolation matrix needs a nonnegative degree");

  const PrimeField f(cfg.prime);
  const auto cols = static_cast<std::size_t>(monomial_count(eff.d));
  DenseMatrix mat(0, cols, cfg.prime);
  for (std::size_t i = 0; i < eff.size(); ++i) {
    for (const auto& row : condition_rows(cfg.points[i], eff.mults[i], eff.d, f)) mat.append_row(row);
  }
  return mat;
}

RankReport h0_at_sample(const FatPointSystem& s, const PointConfig& cfg, int threads) {
  auto mat = build_matrix(s, cfg);
  RankReport r;
  r.monomials = static_cast<std::int64_t>(mat.cols());
  r.conditions = static_cast<std::int64_t>(mat.rows());
  r.rank = static_cast<std::int64_t>(rank_in_place(mat, threads));
  r.h0_sample = r.monomials - r.rank;
  r.full_rank = r.rank == std::min(r.monomials, r.conditions);
  return r;
}

namespace {

void settle_exact(Certificate& c, std::int64_t h0) {
  c.h0 = h0;
  c.h0_bound = h0;
  c.h1 = h0 - c.chi;
  c.verdict = (h0 > 0 && *c.h1 > 0) ? Verdict::SpecialExact : Verdict::NonspecialCertified;
}

}  // namespace

Certificate certify(const FatPointSystem& s, const CertifyOptions& opts) {
  // h^1 = h^0 - chi is only valid while h^2 vanishes.
  if (s.d < -2) throw ConfigError("certify requires d >= -2");
  if (opts.trials < 1) throw ConfigError("certify requires at least one trial");

  Certificate c;
  c.system = s;
  c.chi = chi(s);
  c.method = s.all_tagged(Placement::Generic) ? Method::DirectGeneric : Method::DirectOnCubic;

  const auto eff = effective_part(s);
  if (s.d < 0) {
    c.method = Method::FixedComponent;
    settle_exact(c, 0);
    return c;
  }
  if (conditions_count(eff) == 0) {
    c.method = Method::FixedComponent;
    settle_exact(c, monomial_count(s.d));
    return c;
  }

  for (std::size_t t = 0; t < opts.trials; ++t) {
    const auto seed = trial_seed(opts.seed, t);
    const auto cfg = sample_config(s.tags, opts.prime, seed);
    const auto report = h0_at_sample(s, cfg, opts.threads);
    c.evidence.push_back({opts.prime, seed, report});
    if (report.full_rank) {
      settle_exact(c, report.h0_sample);
      return c;
    }
  }

  std::int64_t best = c.evidence.front().report.h0_sample;
  for (const auto& e : c.evidence) best = std::min(best, e.report.h0_sample);
  c.h0_bound = best;
  const bool agree = std::all_of(c.evidence.begin(), c.evidence.end(),
                                 [&](const Evidence& e) { return e.report.h0_sample == best; });
  if (agree && c.evidence.size() >= 3) {
    c.verdict = Verdict::SpecialSuspected;
    c.h1 = best - c.chi;
  } else {
    c.verdict = Verdict::Inconclusive;
  }
  return c;
}

}  // namespace fatpt
