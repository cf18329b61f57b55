#include <doctest.h>

#include <algorithm>
#include <set>

#include "fatpt/interp.hpp"
#include "generators.hpp"

using namespace fatpt;
using fatpt::testing::Gen;

namespace {

FatPointSystem homog(std::int64_t d, std::size_t n, std::int64_t m, Placement p = Placement::Generic) {
  return FatPointSystem::homogeneous(d, n, m, p);
}

std::size_t rows_rank(const std::vector<std::vector<std::uint32_t>>& rows, std::size_t cols) {
  DenseMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return rank(m);
}

}  // namespace

TEST_CASE("monomial_basis sizes and order") {
  CHECK(monomial_basis(1).size() == 3);
  CHECK(monomial_basis(4).size() == 15);
  CHECK(monomial_basis(13).size() == 105);
  CHECK(monomial_basis(-1).empty());
  const auto b2 = monomial_basis(2);
  const std::vector<Exponents> expected{{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
  CHECK(b2 == expected);
  for (std::int64_t d = 0; d <= 200; ++d) {
    const auto b = monomial_basis(d);
    REQUIRE(static_cast<std::int64_t>(b.size()) == (d + 1) * (d + 2) / 2);
    REQUIRE(static_cast<std::int64_t>(b.size()) == monomial_count(d));
  }
  const auto b7 = monomial_basis(7);
  CHECK(std::set<Exponents>(b7.begin(), b7.end()).size() == b7.size());
  CHECK(std::all_of(b7.begin(), b7.end(), [](const Exponents& e) { return e[0] + e[1] + e[2] == 7; }));
}

TEST_CASE("sample_config: generic and on-cubic points") {
  const auto g3 = sample_config(3, 0, kDefaultPrime, 11);
  CHECK(g3.points.size() == 3);
  CHECK_FALSE(g3.cubic.has_value());
  CHECK(std::all_of(g3.points.begin(), g3.points.end(), [](auto& p) { return p.tag == Placement::Generic; }));

  const PrimeField f;
  const auto c10 = sample_config(0, 10, kDefaultPrime, 12);
  REQUIRE(c10.cubic.has_value());
  CHECK(c10.points.size() == 10);
  for (const auto& p : c10.points) {
    CHECK(p.tag == Placement::OnCubic);
    CHECK(on_curve(*c10.cubic, p, f));
  }
  const auto a = c10.cubic->a, b = c10.cubic->b;
  CHECK(f.add(f.mul(4, f.mul(a, f.mul(a, a))), f.mul(27, f.mul(b, b))) != 0);
}

TEST_CASE("sample_config is deterministic and distinct") {
  const std::vector<Placement> tags{Placement::OnCubic, Placement::Generic, Placement::OnCubic, Placement::Generic};
  CHECK(sample_config(tags, kDefaultPrime, 99) == sample_config(tags, kDefaultPrime, 99));
  CHECK_FALSE(sample_config(tags, kDefaultPrime, 99) == sample_config(tags, kDefaultPrime, 100));
  for (std::uint64_t p : {101ULL, 998244353ULL, 1000003ULL}) {
    const PrimeField f(p);
    const auto cfg = sample_config(12, 12, p, 5);
    std::set<std::array<std::uint64_t, 3>> seen;
    for (const auto& pt : cfg.points) {
      seen.insert(pt.coords);
      if (pt.tag == Placement::OnCubic) CHECK(on_curve(*cfg.cubic, pt, f));
    }
    CHECK(seen.size() == cfg.points.size());
  }
}

TEST_CASE("sample_config exhausts its retry budget on a tiny field") {
  // A cubic over GF(5) has at most 10 affine points.
  CHECK_THROWS_AS(sample_config(0, 40, 5, 1), SamplingError);
}

TEST_CASE("condition_rows: evaluation and first derivatives") {
  const PrimeField f(101);
  const SamplePoint p{{3, 5, 1}, Placement::Generic};
  const auto one = condition_rows(p, 1, 2, f);
  REQUIRE(one.size() == 1);
  // x^2, xy, xz, y^2, yz, z^2 at (3, 5, 1)
  const std::vector<std::uint32_t> eval{9, 15, 3, 25, 5, 1};
  CHECK(one[0] == eval);

  const auto two = condition_rows(p, 2, 2, f);
  REQUIRE(two.size() == 3);
  // d/dx: 2x, y, 1, 0, 0, 0 ; d/dy: 0, x, 0, 2y, 1, 0
  const std::vector<std::uint32_t> dx{6, 5, 1, 0, 0, 0}, dy{0, 3, 0, 10, 1, 0};
  CHECK(two[1] == dx);
  CHECK(two[2] == dy);
  CHECK(condition_rows(p, 0, 2, f).empty());
  CHECK(condition_rows(p, 4, 6, f).size() == 10);
}

TEST_CASE("condition_rows: d = 2, m = 2 at a generic point has rank 3 (rational oracle)") {
  const auto cfg = sample_config(1, 0, kDefaultPrime, 3);
  const PrimeField f;
  const auto rows = condition_rows(cfg.points[0], 2, 2, f);
  DenseMatrix m(0, 6);
  for (const auto& r : rows) m.append_row(r);
  CHECK(rational_rank(lift(m)) == 3);
  CHECK(rank(m) == 3);
}

TEST_CASE("condition_rows at a point at infinity uses another chart") {
  const PrimeField f(101);
  const SamplePoint inf{{1, 0, 0}, Placement::Generic};
  const auto rows = condition_rows(inf, 2, 2, f);
  REQUIRE(rows.size() == 3);
  // Doubly vanishing conics at (1:0:0) kill exactly the x^2, xy, xz coefficients.
  DenseMatrix m(0, 6);
  for (const auto& r : rows) m.append_row(r);
  CHECK(rank(m) == 3);
  for (const auto& r : rows) CHECK(std::all_of(r.begin() + 3, r.end(), [](auto v) { return v == 0; }));

  // A projectively rescaled point gives the same row space.
  const SamplePoint p{{3, 5, 1}, Placement::Generic}, q{{6, 10, 2}, Placement::Generic};
  auto both = condition_rows(p, 3, 5, f);
  const auto rq = condition_rows(q, 3, 5, f);
  CHECK(rows_rank(both, 21) == 6);
  both.insert(both.end(), rq.begin(), rq.end());
  CHECK(rows_rank(both, 21) == 6);
}

TEST_CASE("condition_rows rejects p <= d") {
  const PrimeField f(7);
  CHECK_THROWS_AS(condition_rows({{1, 2, 1}, Placement::Generic}, 2, 7, f), ConfigError);
  CHECK_NOTHROW(condition_rows({{1, 2, 1}, Placement::Generic}, 2, 6, f));
}

TEST_CASE("build_matrix shapes") {
  const auto quartics = homog(4, 10, 1, Placement::OnCubic);
  const auto m = build_matrix(quartics, sample_config(quartics.tags, kDefaultPrime, 1));
  CHECK(m.rows() == 10);
  CHECK(m.cols() == 15);

  const auto empty = homog(6, 4, 0);
  const auto e = build_matrix(empty, sample_config(empty.tags, kDefaultPrime, 1));
  CHECK(e.rows() == 0);
  CHECK(e.cols() == 28);
  CHECK(rank(e) == 0);

  const auto big = homog(57, 10, 18);
  const auto b = build_matrix(big, sample_config(big.tags, kDefaultPrime, 1));
  CHECK(b.rows() == 1710);
  CHECK(b.cols() == 1711);
}

TEST_CASE("build_matrix rejects mismatched tags and negative degree") {
  const auto s = homog(4, 3, 1);
  CHECK_THROWS_AS(build_matrix(s, sample_config(0, 3, kDefaultPrime, 1)), ConfigError);
  CHECK_THROWS_AS(build_matrix(s, sample_config(2, 0, kDefaultPrime, 1)), ConfigError);
  const auto neg = homog(-1, 3, 1);
  CHECK_THROWS_AS(build_matrix(neg, sample_config(3, 0, kDefaultPrime, 1)), ConfigError);
}

TEST_CASE("h0_at_sample examples") {
  const auto quartics = homog(4, 10, 1, Placement::OnCubic);
  const auto r = h0_at_sample(quartics, sample_config(quartics.tags, kDefaultPrime, 21));
  CHECK(r.rank == 10);
  CHECK(r.h0_sample == 5);
  CHECK(r.full_rank);

  const auto free = homog(3, 10, 0);
  CHECK(h0_at_sample(free, sample_config(free.tags, kDefaultPrime, 1)).h0_sample == 10);

  const auto orig = homog(13, 10, 4);
  const auto o = h0_at_sample(orig, sample_config(orig.tags, kDefaultPrime, 2));
  CHECK(o.h0_sample == 5);
  CHECK(o.full_rank);
}

TEST_CASE("ten points on a cubic fail to impose independent conditions on cubics") {
  const auto cubics = homog(3, 10, 1, Placement::OnCubic);
  const auto r = h0_at_sample(cubics, sample_config(cubics.tags, kDefaultPrime, 8));
  CHECK(r.h0_sample == 1);
  CHECK_FALSE(r.full_rank);
}

TEST_CASE("certify: fixed-component cases") {
  const auto ex3 = certify(homog(-1, 10, -1, Placement::OnCubic));
  CHECK(ex3.verdict == Verdict::NonspecialCertified);
  CHECK(ex3.h0 == 0);
  CHECK(ex3.chi == 0);
  CHECK(ex3.method == Method::FixedComponent);

  const auto ex5 = certify(homog(3, 10, -2, Placement::OnCubic));
  CHECK(ex5.verdict == Verdict::SpecialExact);
  CHECK(ex5.h0 == 10);
  CHECK(ex5.h1 == 10);

  const auto ex4 = certify(homog(0, 10, -1, Placement::OnCubic));
  CHECK(ex4.verdict == Verdict::NonspecialCertified);
  CHECK(ex4.h0 == 1);
  CHECK(ex4.h1 == 0);

  const auto free = certify(homog(3, 10, 0));
  CHECK(free.verdict == Verdict::NonspecialCertified);
  CHECK(free.h0 == 10);
}

TEST_CASE("certify: sampled cases") {
  const auto ok = certify(homog(4, 10, 1, Placement::OnCubic), {3, kDefaultPrime, 1, 0});
  CHECK(ok.verdict == Verdict::NonspecialCertified);
  CHECK(ok.method == Method::DirectOnCubic);
  CHECK(ok.h0 == 5);
  CHECK(ok.evidence.size() == 1);
  CHECK(ok.evidence[0].report.full_rank);

  // The doubled conic through five points: h0 = 1 although chi = 0.
  const auto conic = certify(homog(4, 5, 2));
  CHECK(conic.verdict == Verdict::SpecialSuspected);
  CHECK(conic.evidence.size() == 3);
  CHECK(conic.h0_bound == 1);
  CHECK(conic.h1 == 1);
  CHECK_FALSE(conic.h0.has_value());

  const auto single = certify(homog(4, 5, 2), {1, kDefaultPrime, 0, 0});
  CHECK(single.verdict == Verdict::Inconclusive);
  CHECK(single.h0_bound == 1);

  // A (-2) multiplicity is a doubled fixed exceptional curve: exact speciality.
  const auto mixed = certify(FatPointSystem(3, {2, -2}));
  CHECK(mixed.chi == 6);
  CHECK(mixed.verdict == Verdict::SpecialExact);
  CHECK(mixed.h0 == 7);
  CHECK(mixed.h1 == 1);
}

TEST_CASE("certify preconditions") {
  CHECK_THROWS_AS(certify(FatPointSystem(-3, {})), ConfigError);
  CHECK_THROWS_AS(certify(homog(4, 2, 1), {0, kDefaultPrime, 0, 0}), ConfigError);
}

TEST_CASE("certify is deterministic") {
  const auto s = homog(9, 10, 3, Placement::OnCubic);
  const auto a = to_json(certify(s, {3, kDefaultPrime, 77, 0})).dump();
  const auto b = to_json(certify(s, {3, kDefaultPrime, 77, 1})).dump();
  CHECK(a == b);
}

// Schoolbook elimination with % and Fermat inverses, sharing no code with the library.
std::size_t naive_rank_mod(IntMatrix a, std::uint64_t p) {
  auto md = [p](std::int64_t x) { return static_cast<std::uint64_t>(((x % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) % static_cast<std::int64_t>(p)); };
  auto inv = [p](std::uint64_t x) {
    std::uint64_t r = 1, e = p - 2;
    for (; e; e >>= 1, x = x * x % p)
      if (e & 1) r = r * x % p;
    return r;
  };
  std::vector<std::vector<std::uint64_t>> m(a.rows, std::vector<std::uint64_t>(a.cols));
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) m[i][j] = md(a(i, j));
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
    std::size_t piv = r;
    while (piv < a.rows && m[piv][c] == 0) ++piv;
    if (piv == a.rows) continue;
    std::swap(m[piv], m[r]);
    const auto iv = inv(m[r][c]);
    for (std::size_t i = r + 1; i < a.rows; ++i) {
      const auto f = m[i][c] * iv % p;
      for (std::size_t j = c; j < a.cols; ++j) m[i][j] = (m[i][j] + (p - f) * m[r][j]) % p;
    }
    ++r;
  }
  return r;
}

TEST_CASE("property: interpolation matrix ranks agree with an independent elimination") {
  Gen g(31337);
  int checked = 0;
  while (checked < 120) {
    const auto d = g.between(1, 9);
    const auto n = static_cast<std::size_t>(g.between(1, 8));
    std::vector<Placement> tags(n);
    for (auto& t : tags) t = g.between(0, 1) ? Placement::OnCubic : Placement::Generic;
    const FatPointSystem s(d, g.mults(n, -1, 4), tags);
    if (conditions_count(s) > 60 || conditions_count(s) == 0) continue;
    const auto cfg = sample_config(tags, kDefaultPrime, static_cast<std::uint64_t>(checked));
    const auto m = build_matrix(s, cfg);
    REQUIRE(static_cast<std::int64_t>(m.rows()) == conditions_count(effective_part(s)));
    const auto r = rank(m);
    REQUIRE(r == naive_rank_mod(lift(m), kDefaultPrime));
    REQUIRE(r <= rational_rank(lift(m)));
    ++checked;
  }
}

TEST_CASE("property: sampled h0 is at least max(chi, 0)") {
  Gen g(4242);
  for (int t = 0; t < 120; ++t) {
    const auto d = g.between(0, 12);
    const auto n = static_cast<std::size_t>(g.between(1, 11));
    const FatPointSystem s(d, g.mults(n, -2, 5), g.between(0, 1) ? Placement::OnCubic : Placement::Generic);
    const auto r = h0_at_sample(s, sample_config(s.tags, kDefaultPrime, static_cast<std::uint64_t>(t)));
    REQUIRE(r.h0_sample >= std::max<std::int64_t>(chi(s), 0));
    REQUIRE(r.conditions == conditions_count(s));
  }
}

TEST_CASE("property: on-cubic h0 dominates generic h0 per seed") {
  const std::vector<std::pair<std::int64_t, std::int64_t>> cases{{3, 1}, {6, 2}, {13, 4}, {9, 3}, {7, 2}};
  for (const auto& [d, m] : cases) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto gen = homog(d, 10, m, Placement::Generic);
      const auto cub = homog(d, 10, m, Placement::OnCubic);
      const auto hg = h0_at_sample(gen, sample_config(gen.tags, kDefaultPrime, seed)).h0_sample;
      const auto hc = h0_at_sample(cub, sample_config(cub.tags, kDefaultPrime, seed)).h0_sample;
      REQUIRE(hc >= hg);
    }
  }
  // Strict for 3; 1^10: the cubic itself survives.
  const auto cub = homog(3, 10, 1, Placement::OnCubic);
  CHECK(h0_at_sample(cub, sample_config(cub.tags, kDefaultPrime, 4)).h0_sample == 1);
}
