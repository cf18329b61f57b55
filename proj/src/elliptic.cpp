#include "fatpt/elliptic.hpp"

#include <string>
#include <utility>

namespace fatpt {

Rational mu_bound(std::int64_t d, std::int64_t n, std::int64_t m) {
  if (n <= 9) throw DomainError("mu bound needs n >= 10, got n = " + std::to_string(n));
  return Rational(1) + Rational(2 * m * n - 6 * d, n - 9);
}

std::int64_t floor_of(const Rational& r) {
  auto q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

std::int64_t chi_gap(std::int64_t d, std::int64_t n, std::int64_t m, std::int64_t mu) {
  if (n <= 9) throw DomainError("chi gap needs n >= 10");
  const std::int64_t twice = mu * (n - 9 - 6 * d + 2 * m * n - mu * (n - 9));
  return twice / 2;
}

ReductionPlan reduce(const FatPointSystem& s, std::size_t k, std::int64_t mu) {
  if (k < kMinCubicPoints)
    throw ConstructionError("at least " + std::to_string(kMinCubicPoints) + " points must go onto the cubic");
  if (k > s.size()) throw ConstructionError("k exceeds the number of points");
  if (mu < 0) throw DomainError("twist mu must be nonnegative");
  if (!s.all_tagged(Placement::Generic)) throw ConfigError("reduce expects a system of generic points");

  ReductionPlan plan;
  plan.original = s;
  plan.k = k;
  plan.mu = mu;
  plan.reduced = s;
  plan.reduced.d = s.d - 3 * mu;
  for (std::size_t i = 0; i < k; ++i) {
    plan.reduced.mults[i] -= mu;
    plan.reduced.tags[i] = Placement::OnCubic;
  }
  plan.chi_original = chi(plan.original);
  plan.chi_reduced = chi(plan.reduced);
  plan.chi_S = plan.chi_original - plan.chi_reduced;
  plan.hypothesis = plan.chi_reduced >= plan.chi_original;
  return plan;
}

bool chi_identity_check(const ReductionPlan& plan) {
  if (plan.chi_original != chi(plan.original)) return false;
  if (plan.chi_reduced != chi(plan.reduced)) return false;
  if (plan.chi_S != plan.chi_original - plan.chi_reduced) return false;
  if (plan.hypothesis != (plan.chi_reduced >= plan.chi_original)) return false;
  return !plan.hypothesis || plan.chi_S <= 0;
}

Rational ruled_chi(const RuledSurfaceDivisor& D) {
  return Rational(D.mu + 1) * (Rational(D.b_prime) - Rational(D.mu * D.e, 2));
}

Backend sampling_backend(CertifyOptions opts) {
  return [opts](const FatPointSystem& s) { return certify(s, opts); };
}

std::int64_t matrix_entries(const FatPointSystem& s) {
  if (s.d < 0) return 0;
  const auto eff = effective_part(s);
  return conditions_count(eff) * monomial_count(eff.d);
}

namespace {

ReductionEvidence summarize(const ReductionPlan& plan) {
  ReductionEvidence r;
  r.mu = plan.mu;
  r.k = plan.k;
  r.reduced = plan.reduced;
  r.chi_original = plan.chi_original;
  r.chi_reduced = plan.chi_reduced;
  r.chi_S = plan.chi_S;
  return r;
}

/// Certificate of the reduced system; below degree -2 there are no sections and h^1 is not read off chi.
Certificate evaluate_reduced(const ReductionPlan& plan, const Backend& backend) {
  if (plan.reduced.d >= -2) return backend(plan.reduced);
  Certificate c;
  c.system = plan.reduced;
  c.chi = plan.chi_reduced;
  c.method = Method::FixedComponent;
  c.verdict = Verdict::Inconclusive;
  c.h0 = 0;
  c.h0_bound = 0;
  return c;
}

std::optional<std::int64_t> best_h0(const Certificate& c) { return c.h0 ? c.h0 : c.h0_bound; }

}  // namespace

Certificate theorem_upper_bound(const ReductionPlan& plan, const Backend& backend) {
  if (!plan.hypothesis)
    throw InapplicableError("chi of the reduced system (" + std::to_string(plan.chi_reduced) +
                            ") is below chi of the original (" + std::to_string(plan.chi_original) + ")");
  const auto red = evaluate_reduced(plan, backend);

  Certificate c;
  c.system = plan.original;
  c.verdict = Verdict::UpperBound;
  c.method = Method::DegenerationBound;
  c.chi = plan.chi_original;
  c.h0_bound = best_h0(red);
  c.evidence = red.evidence;
  auto r = summarize(plan);
  r.reduced_verdict = red.verdict;
  r.reduced_h0 = red.h0;
  c.reduction = std::move(r);
  return c;
}

Certificate corollary_nonspecial(std::int64_t d, std::int64_t n, std::int64_t m, const Backend& backend) {
  const auto bound = mu_bound(d, n, m);
  if (!is_integral(bound) || bound.numerator() <= 0)
    throw InapplicableError("mu bound is not a positive integer");
  const auto mu = bound.numerator();

  const auto plan = reduce(FatPointSystem::homogeneous(d, static_cast<std::size_t>(n), m), static_cast<std::size_t>(n), mu);
  const auto gap = chi_gap(d, n, m, mu);
  if (gap != 0 || gap != plan.chi_reduced - plan.chi_original)
    throw std::logic_error("chi gap at the integral bound must vanish");

  const auto red = evaluate_reduced(plan, backend);

  Certificate c;
  c.system = plan.original;
  c.method = Method::DegenerationNonspecial;
  c.chi = plan.chi_original;
  c.evidence = red.evidence;
  auto r = summarize(plan);
  r.reduced_verdict = red.verdict;
  r.reduced_h0 = red.h0;
  c.reduction = std::move(r);

  if (red.verdict == Verdict::NonspecialCertified && red.h0) {
    // h^0 of the original is squeezed between chi and h^0 of the reduced system, which agree.
    c.verdict = Verdict::NonspecialCertified;
    c.h0 = red.h0;
    c.h0_bound = red.h0;
    c.h1 = *red.h0 - c.chi;
  } else {
    c.verdict = Verdict::Inconclusive;
    c.h0_bound = best_h0(red);
  }
  return c;
}

BoundSearch best_upper_bound(const FatPointSystem& s, const Backend& backend, std::int64_t max_entries) {
  BoundSearch out;
  const auto k = s.size();
  // The chi gap is a downward parabola in mu vanishing at 0, so admissible mu form an interval.
  for (std::int64_t mu = 0;; ++mu) {
    const auto plan = reduce(s, k, mu);
    if (!plan.hypothesis) break;
    if (plan.reduced.d >= 0 && matrix_entries(plan.reduced) > max_entries) {
      out.skipped.push_back(mu);
      continue;
    }
    out.tried.push_back(mu);
    auto cert = theorem_upper_bound(plan, backend);
    if (!out.best || *cert.h0_bound <= *out.best->h0_bound) out.best = std::move(cert);
  }
  return out;
}

}  // namespace fatpt
