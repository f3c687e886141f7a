#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "unitfrac/bounds.hpp"
#include "unitfrac/census.hpp"
#include "unitfrac/cli.hpp"
#include "unitfrac/errors.hpp"
#include "unitfrac/montecarlo.hpp"
#include "unitfrac/numerics.hpp"

namespace py = pybind11;
using namespace unitfrac;

namespace {

py::int_ to_py(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

py::dict census_dict(const CensusResult& r) {
  py::dict d;
  d["n"] = r.n;
  d["count_le_one"] = to_py(r.count_le_one);
  d["count_eq_one"] = to_py(r.count_eq_one);
  d["method"] = std::string(to_string(r.method));
  d["elapsed_seconds"] = r.elapsed_seconds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact counts and Chernoff bounds for subsets of {1..n} with reciprocal sum <= 1";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_OverflowError);

  m.def("harmonic_exact", [](unsigned n) {
    const Rational h = harmonic_exact(n);
    return py::make_tuple(to_py(h.numerator()), to_py(h.denominator()));
  }, py::arg("n"), "H_n as (numerator, denominator)");
  m.def("harmonic_float", &harmonic_float, py::arg("n"));
  m.def("lcm_upto", [](unsigned n) { return to_py(lcm_upto(n)); }, py::arg("n"));

  m.def("count_bruteforce", [](unsigned n, unsigned threads) {
    return census_dict(count_bruteforce(n, {threads}));
  }, py::arg("n"), py::arg("threads") = 1);
  m.def("count_mitm", [](unsigned n, unsigned threads) {
    return census_dict(count_mitm(n, {threads}));
  }, py::arg("n"), py::arg("threads") = 1);
  m.def("count_signwalk", [](unsigned n, unsigned threads) {
    return census_dict(count_signwalk(n, {threads}));
  }, py::arg("n"), py::arg("threads") = 1);
  m.def("trivial_lower_bound", [](unsigned n) { return to_py(trivial_lower_bound(n)); }, py::arg("n"));

  py::enum_<BoundVariant>(m, "BoundVariant")
      .value("ExactCosh", BoundVariant::ExactCosh)
      .value("Lemma", BoundVariant::Lemma)
      .value("Optimized", BoundVariant::Optimized);

  py::class_<ChernoffParams>(m, "ChernoffParams")
      .def(py::init<>())
      .def(py::init([](unsigned n, double t, unsigned mm, double x) { return ChernoffParams{n, t, mm, x}; }),
           py::arg("n"), py::arg("t"), py::arg("m"), py::arg("x"))
      .def_readwrite("n", &ChernoffParams::n)
      .def_readwrite("t", &ChernoffParams::t)
      .def_readwrite("m", &ChernoffParams::m)
      .def_readwrite("x", &ChernoffParams::x)
      .def("__repr__", [](const ChernoffParams& p) {
        std::ostringstream s;
        s << "ChernoffParams(n=" << p.n << ", t=" << p.t << ", m=" << p.m << ", x=" << p.x << ")";
        return s.str();
      });

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("params", &BoundReport::params)
      .def_readonly("variant", &BoundReport::variant)
      .def_readonly("log2_prob_bound", &BoundReport::log2_prob_bound)
      .def_readonly("log2_count_bound", &BoundReport::log2_count_bound)
      .def_readonly("bits_per_n", &BoundReport::bits_per_n);

  m.def("cosh_product_log", &cosh_product_log, py::arg("n"), py::arg("x"));
  m.def("lemma_product_log", py::overload_cast<unsigned, unsigned, double>(&lemma_product_log),
        py::arg("n"), py::arg("m"), py::arg("x"));
  m.def("tail_bound_log2", py::overload_cast<const ChernoffParams&, BoundVariant>(&tail_bound_log2),
        py::arg("params"), py::arg("variant"));
  m.def("canonical_params", py::overload_cast<unsigned, unsigned>(&canonical_params), py::arg("n"), py::arg("m"));
  m.def("optimized_bound_log2", py::overload_cast<unsigned, unsigned>(&optimized_bound_log2), py::arg("n"),
        py::arg("m"));
  m.def("best_finite_bound", &best_finite_bound, py::arg("n"));
  m.def("rate_function", &rate_function, py::arg("c"));
  m.def("bits_per_n_asymptotic", &bits_per_n_asymptotic, py::arg("f_value"));

  py::class_<RateMinimum>(m, "RateMinimum")
      .def_readonly("c_star", &RateMinimum::c_star)
      .def_readonly("f_star", &RateMinimum::f_star)
      .def_readonly("bracket_lo", &RateMinimum::bracket_lo)
      .def_readonly("bracket_hi", &RateMinimum::bracket_hi)
      .def_readonly("unimodal", &RateMinimum::unimodal);
  m.def("minimize_rate", &minimize_rate, py::arg("lo") = 1e-4, py::arg("hi") = 0.124, py::arg("tol") = 1e-10);

  m.def("threshold_report", [](unsigned n_max, unsigned threads) {
    const ThresholdReport r = threshold_report(n_max, threads);
    std::vector<std::pair<unsigned, double>> rows;
    for (const auto& row : r.rows) rows.emplace_back(row.n, row.bits_per_n);
    return py::make_tuple(rows, r.crossing_n);
  }, py::arg("n_max"), py::arg("threads") = 1, "([(n, bits_per_n)], crossing_n)");

  py::class_<McEstimate>(m, "McEstimate")
      .def_readonly("n", &McEstimate::n)
      .def_readonly("t", &McEstimate::t)
      .def_readonly("trials", &McEstimate::trials)
      .def_readonly("hits", &McEstimate::hits)
      .def_readonly("p_hat", &McEstimate::p_hat)
      .def_readonly("ci_halfwidth", &McEstimate::ci_halfwidth)
      .def_readonly("seed", &McEstimate::seed);
  m.def("estimate_tail", &estimate_tail, py::arg("n"), py::arg("t"), py::arg("trials"), py::arg("seed"),
        py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("moment_check", [](unsigned n, std::uint64_t trials, std::uint64_t seed) {
    const Moments mo = moment_check(n, trials, seed);
    return py::make_tuple(mo.mean, mo.variance);
  }, py::arg("n"), py::arg("trials"), py::arg("seed"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int status = cli::main(args, out, err);
    return py::make_tuple(status, out.str(), err.str());
  }, py::arg("args"), "Runs the command-line interface; returns (status, stdout, stderr)");
}
