#include "fatpt/linsys.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

namespace fatpt {

std::string to_string(Placement p) { return p == Placement::Generic ? "generic" : "on-cubic"; }

Placement placement_from_string(const std::string& s) {
  if (s == "generic") return Placement::Generic;
  if (s == "on-cubic" || s == "cubic") return Placement::OnCubic;
  throw ConfigError("unknown placement '" + s + "'");
}

FatPointSystem::FatPointSystem(std::int64_t degree, std::vector<std::int64_t> m, Placement placement)
    : d(degree), mults(std::move(m)), tags(mults.size(), placement) {}

FatPointSystem::FatPointSystem(std::int64_t degree, std::vector<std::int64_t> m, std::vector<Placement> t)
    : d(degree), mults(std::move(m)), tags(std::move(t)) {
  if (tags.size() != mults.size()) throw ArityError("one placement tag per multiplicity required");
}

FatPointSystem FatPointSystem::homogeneous(std::int64_t degree, std::size_t n, std::int64_t m,
                                           Placement placement) {
  return FatPointSystem(degree, std::vector<std::int64_t>(n, m), placement);
}

bool FatPointSystem::is_homogeneous() const {
  return std::adjacent_find(mults.begin(), mults.end(), std::not_equal_to<>()) == mults.end();
}

bool FatPointSystem::all_tagged(Placement p) const {
  return std::all_of(tags.begin(), tags.end(), [p](Placement t) { return t == p; });
}

std::string describe(const FatPointSystem& s) {
  std::ostringstream os;
  os << s.d;
  if (s.mults.empty()) return os.str();
  os << ';';
  for (std::size_t i = 0; i < s.mults.size();) {
    std::size_t j = i;
    while (j < s.mults.size() && s.mults[j] == s.mults[i] && s.tags[j] == s.tags[i]) ++j;
    os << ' ' << s.mults[i];
    if (j - i > 1) os << '^' << (j - i);
    if (s.tags[i] == Placement::OnCubic) os << "(C)";
    i = j;
  }
  return os.str();
}

namespace {

std::int64_t triangular(std::int64_t m) { return m * (m + 1) / 2; }

}  // namespace

std::int64_t monomial_count(std::int64_t d) { return d < 0 ? 0 : (d + 1) * (d + 2) / 2; }

std::int64_t chi(const FatPointSystem& s) {
  std::int64_t c = s.d * (s.d + 3) / 2 + 1;
  for (auto m : s.mults) c -= triangular(m);
  return c;
}

std::int64_t expected_dim(const FatPointSystem& s) { return chi(s) - 1; }

std::int64_t conditions_count(const FatPointSystem& s) {
  std::int64_t c = 0;
  for (auto m : s.mults)
    if (m >= 1) c += triangular(m);
  return c;
}

SystemInvariants invariants(const FatPointSystem& s) {
  const auto x = chi(s);
  return {x, x - 1, conditions_count(s), monomial_count(s.d)};
}

FatPointSystem effective_part(const FatPointSystem& s) {
  FatPointSystem out = s;
  for (auto& m : out.mults) m = std::max<std::int64_t>(m, 0);
  return out;
}

namespace {

std::array<std::size_t, 3> top_three(const FatPointSystem& s) {
  std::vector<std::size_t> idx(s.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return s.mults[a] > s.mults[b]; });
  return {idx[0], idx[1], idx[2]};
}

void require_cremona_domain(const FatPointSystem& s) {
  if (s.size() < 3) throw ArityError("cremona needs at least three points");
  if (!s.all_tagged(Placement::Generic)) throw ConfigError("cremona centres must be generic points");
}

}  // namespace

FatPointSystem cremona(const FatPointSystem& s) {
  require_cremona_domain(s);
  const auto [i, j, k] = top_three(s);
  const std::int64_t a = s.mults[i], b = s.mults[j], c = s.mults[k];
  FatPointSystem out = s;
  out.d = 2 * s.d - a - b - c;
  out.mults[i] = s.d - b - c;
  out.mults[j] = s.d - a - c;
  out.mults[k] = s.d - a - b;
  return out;
}

StandardForm cremona_standardize(const FatPointSystem& s) {
  require_cremona_domain(s);
  StandardForm sf{s, 0};
  auto& cur = sf.system;
  for (;;) {
    if (cur.d < 0) break;
    if (std::any_of(cur.mults.begin(), cur.mults.end(), [](std::int64_t m) { return m < 0; })) break;
    const auto [i, j, k] = top_three(cur);
    if (cur.d >= cur.mults[i] + cur.mults[j] + cur.mults[k]) break;
    // d strictly decreases here, and the loop stops once d < 0.
    cur = cremona(cur);
    ++sf.steps;
  }
  return sf;
}

}  // namespace fatpt
