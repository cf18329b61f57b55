#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "fatpt/certificate.hpp"
#include "fatpt/elliptic.hpp"
#include "fatpt/gfmat.hpp"
#include "fatpt/interp.hpp"
#include "fatpt/linsys.hpp"

namespace py = pybind11;
using namespace fatpt;

namespace {

// Certificates cross the boundary as plain dicts with the documented JSON schema.
py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

FatPointSystem make_system(std::int64_t d, std::vector<std::int64_t> mults, const std::string& placement) {
  return FatPointSystem(d, std::move(mults), placement_from_string(placement));
}

DenseMatrix to_dense(const std::vector<std::vector<std::int64_t>>& rows, std::uint64_t p) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return reduce_mod(m, p);
}

IntMatrix to_int(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

py::object fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(r.numerator(), r.denominator());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dimensions of plane-curve linear systems with assigned multiple points";
  m.attr("DEFAULT_PRIME") = kDefaultPrime;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConstructionError>(m, "ConstructionError", PyExc_ValueError);
  py::register_exception<InapplicableError>(m, "InapplicableError", PyExc_RuntimeError);

  m.def(
      "chi", [](std::int64_t d, std::vector<std::int64_t> mults) { return chi(FatPointSystem(d, std::move(mults))); },
      py::arg("d"), py::arg("mults") = std::vector<std::int64_t>{});
  m.def(
      "expected_dim",
      [](std::int64_t d, std::vector<std::int64_t> mults) { return expected_dim(FatPointSystem(d, std::move(mults))); },
      py::arg("d"), py::arg("mults") = std::vector<std::int64_t>{});
  m.def(
      "conditions_count",
      [](std::int64_t d, std::vector<std::int64_t> mults) {
        return conditions_count(FatPointSystem(d, std::move(mults)));
      },
      py::arg("d"), py::arg("mults"));
  m.def(
      "cremona_standardize",
      [](std::int64_t d, std::vector<std::int64_t> mults) {
        const auto sf = cremona_standardize(FatPointSystem(d, std::move(mults)));
        return py::make_tuple(sf.system.d, sf.system.mults, sf.steps);
      },
      py::arg("d"), py::arg("mults"), "Returns (d, mults, steps).");

  m.def(
      "mu_bound", [](std::int64_t d, std::int64_t n, std::int64_t mult) { return fraction(mu_bound(d, n, mult)); },
      py::arg("d"), py::arg("n"), py::arg("m"));
  m.def("chi_gap", &chi_gap, py::arg("d"), py::arg("n"), py::arg("m"), py::arg("mu"));
  m.def(
      "ruled_chi",
      [](std::int64_t mu, std::int64_t b_prime, std::int64_t e) { return fraction(ruled_chi({mu, b_prime, e})); },
      py::arg("mu"), py::arg("b_prime"), py::arg("e"));

  m.def(
      "reduce",
      [](std::int64_t d, std::vector<std::int64_t> mults, std::int64_t mu, std::optional<std::size_t> k) {
        const FatPointSystem s(d, std::move(mults));
        const auto plan = reduce(s, k.value_or(s.size()), mu);
        py::dict out;
        out["mu"] = plan.mu;
        out["k"] = plan.k;
        out["original"] = to_python(to_json(plan.original));
        out["reduced"] = to_python(to_json(plan.reduced));
        out["chi_original"] = plan.chi_original;
        out["chi_reduced"] = plan.chi_reduced;
        out["chi_S"] = plan.chi_S;
        out["hypothesis"] = plan.hypothesis;
        out["identity_holds"] = chi_identity_check(plan);
        return out;
      },
      py::arg("d"), py::arg("mults"), py::arg("mu"), py::arg("k") = py::none());

  m.def(
      "certify",
      [](std::int64_t d, std::vector<std::int64_t> mults, const std::string& placement, std::size_t trials,
         std::uint64_t prime, std::uint64_t seed, int threads) {
        const auto s = make_system(d, std::move(mults), placement);
        Certificate c;
        {
          py::gil_scoped_release release;
          c = certify(s, {trials, prime, seed, threads});
        }
        return to_python(to_json(c));
      },
      py::arg("d"), py::arg("mults"), py::arg("placement") = "generic", py::arg("trials") = 3,
      py::arg("prime") = kDefaultPrime, py::arg("seed") = 0, py::arg("threads") = 0);

  m.def(
      "corollary_nonspecial",
      [](std::int64_t d, std::int64_t n, std::int64_t mult, std::size_t trials, std::uint64_t prime,
         std::uint64_t seed) {
        return to_python(to_json(corollary_nonspecial(d, n, mult, sampling_backend({trials, prime, seed, 0}))));
      },
      py::arg("d"), py::arg("n"), py::arg("m"), py::arg("trials") = 3, py::arg("prime") = kDefaultPrime,
      py::arg("seed") = 0);

  m.def(
      "upper_bound",
      [](std::int64_t d, std::int64_t n, std::int64_t mult, std::int64_t max_entries, std::size_t trials,
         std::uint64_t prime, std::uint64_t seed) -> py::object {
        const auto s = FatPointSystem::homogeneous(d, static_cast<std::size_t>(n), mult);
        const auto search = best_upper_bound(s, sampling_backend({trials, prime, seed, 0}), max_entries);
        if (!search.best) return py::none();
        return to_python(to_json(*search.best));
      },
      py::arg("d"), py::arg("n"), py::arg("m"), py::arg("max_entries") = 4'000'000, py::arg("trials") = 3,
      py::arg("prime") = kDefaultPrime, py::arg("seed") = 0);

  m.def(
      "rank",
      [](const std::vector<std::vector<std::int64_t>>& rows, std::uint64_t prime) {
        return rank(to_dense(rows, prime));
      },
      py::arg("rows"), py::arg("prime") = kDefaultPrime);
  m.def(
      "rational_rank", [](const std::vector<std::vector<std::int64_t>>& rows) { return rational_rank(to_int(rows)); },
      py::arg("rows"));
}
