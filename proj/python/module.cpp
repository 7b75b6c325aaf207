#include <cmath>
#include <limits>
#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jcrev/analytic.hpp"
#include "jcrev/density.hpp"
#include "jcrev/dynamics.hpp"
#include "jcrev/entanglement.hpp"
#include "jcrev/error.hpp"
#include "jcrev/fock.hpp"
#include "jcrev/scan.hpp"
#include "jcrev/series_io.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace jcrev;

namespace {

using CArray = py::array_t<std::complex<double>>;

CArray to_numpy(const linalg::Matrix4& m) {
  CArray out({4, 4});
  auto v = out.mutable_unchecked<2>();
  for (py::ssize_t r = 0; r < 4; ++r)
    for (py::ssize_t c = 0; c < 4; ++c) v(r, c) = m(r, c);
  return out;
}

linalg::Matrix4 from_numpy(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != 4 || a.shape(1) != 4) throw std::invalid_argument("expected a 4x4 matrix");
  auto v = a.unchecked<2>();
  linalg::Matrix4 m;
  for (py::ssize_t r = 0; r < 4; ++r)
    for (py::ssize_t c = 0; c < 4; ++c) m(r, c) = v(r, c);
  return m;
}

linalg::Matrix4 reduced_density(double alpha, double tau, double tail_tol) {
  const auto field = fock::truncated_coherent_state(alpha, tail_tol);
  return density::partial_trace(dynamics::evolve_joint(field, field, tau)).rho;
}

py::dict series_columns(const scan::ConcurrenceSeries& s) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  const auto n = static_cast<py::ssize_t>(s.rows.size());
  const auto column = [&](auto get) {
    py::array_t<double> out(n);
    auto v = out.mutable_unchecked<1>();
    for (py::ssize_t i = 0; i < n; ++i) {
      const std::optional<double> x = get(s.rows[static_cast<std::size_t>(i)]);
      v(i) = x.value_or(nan);
    }
    return out;
  };
  py::dict d;
  d["tau"] = column([](const scan::ScanRow& r) { return std::optional<double>(r.tau); });
  d["C_exact"] = column([](const scan::ScanRow& r) { return r.c_exact; });
  d["C_xproj"] = column([](const scan::ScanRow& r) { return r.c_xproj; });
  d["C_series"] = column([](const scan::ScanRow& r) { return r.c_series; });
  d["C_analytic"] = column([](const scan::ScanRow& r) { return r.c_analytic; });
  d["abs_z"] = column([](const scan::ScanRow& r) { return r.abs_z; });
  d["a"] = column([](const scan::ScanRow& r) { return r.a; });
  d["d"] = column([](const scan::ScanRow& r) { return r.d; });
  d["max_offx"] = column([](const scan::ScanRow& r) { return r.max_offx; });
  d["trace_err"] = column([](const scan::ScanRow& r) { return r.trace_err; });
  d["branch_w_minus"] = column([](const scan::ScanRow& r) { return r.branch_w_minus; });
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-cavity Jaynes-Cummings entanglement simulator";
  m.attr("__version__") = JCREV_VERSION;
  m.attr("CSV_HEADER") = std::string(io::kCsvHeader);

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<InvalidState>(m, "InvalidState", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);

  m.def("choose_truncation", &fock::choose_truncation, "alpha"_a, "tail_tol"_a = fock::kDefaultTailTolerance,
        "Smallest n_max whose discarded Poisson tail is below tail_tol.");
  m.def(
      "coherent_coefficients",
      [](double alpha, int n_max, bool renormalize) {
        const auto c = fock::coherent_coefficients(alpha, n_max, renormalize);
        return py::array_t<double>(static_cast<py::ssize_t>(c.coeffs.size()), c.coeffs.data());
      },
      "alpha"_a, "n_max"_a, "renormalize"_a = true);

  m.def("reduced_density", [](double alpha, double tau, double tail_tol) {
        return to_numpy(reduced_density(alpha, tau, tail_tol));
      },
      "alpha"_a, "tau"_a, "tail_tol"_a = fock::kDefaultTailTolerance,
      "Two-atom density matrix in the (ee, eg, ge, gg) basis after tracing out both fields.");

  py::class_<density::XState>(m, "XState")
      .def_readonly("a", &density::XState::a)
      .def_readonly("b", &density::XState::b)
      .def_readonly("c", &density::XState::c)
      .def_readonly("d", &density::XState::d)
      .def_readonly("z", &density::XState::z)
      .def_readonly("w", &density::XState::w)
      .def_readonly("max_off_x", &density::XState::max_off_x);
  m.def("x_project", [](const CArray& rho) { return density::x_project({from_numpy(rho), 0.0}); }, "rho"_a);

  m.def(
      "series_elements",
      [](double alpha, double tau, int n_max) {
        const auto s = density::x_elements_series(alpha, tau, n_max);
        return py::make_tuple(s.z, s.a, s.d);
      },
      "alpha"_a, "tau"_a, "n_max"_a, "(z, a, d) from the photon-number double sums.");

  m.def("concurrence_x", [](const density::XState& x) { return entanglement::concurrence_x(x).value; }, "x"_a);
  m.def("concurrence_wootters",
        [](const CArray& rho) { return entanglement::concurrence_wootters(from_numpy(rho)).value; }, "rho"_a);

  m.def("saddle_integral", &analytic::saddle_integral, "tau"_a, "alpha"_a);
  m.def(
      "q_of_t", [](double tau, double alpha, int k_window) { return analytic::q_of_t(tau, {alpha, k_window}); },
      "tau"_a, "alpha"_a, "k_window"_a = 2);
  m.def(
      "analytic_concurrence",
      [](double tau, double alpha, int k_window) { return analytic::analytic_concurrence(tau, {alpha, k_window}); },
      "tau"_a, "alpha"_a, "k_window"_a = 2);
  m.def("revival_center", &analytic::revival_center, "k"_a, "alpha"_a);
  m.def("peak_height", [](int k, double alpha) { return analytic::peak_height(k, alpha).value; }, "k"_a, "alpha"_a);

  py::class_<scan::ConcurrenceSeries>(m, "Series")
      .def_property_readonly("alpha", [](const scan::ConcurrenceSeries& s) { return s.meta.alpha; })
      .def_property_readonly("n_max", [](const scan::ConcurrenceSeries& s) { return s.meta.n_max; })
      .def_property_readonly("tail_mass", [](const scan::ConcurrenceSeries& s) { return s.meta.tail_mass; })
      .def("__len__", [](const scan::ConcurrenceSeries& s) { return s.rows.size(); })
      .def("columns", &series_columns, "Dict of numpy columns; absent values are NaN.")
      .def("to_csv",
           [](const scan::ConcurrenceSeries& s) {
             std::ostringstream os;
             io::write_csv(os, s);
             return os.str();
           })
      .def("to_json", [](const scan::ConcurrenceSeries& s) { return io::series_to_json(s).dump(); })
      .def(
          "report_json",
          [](const scan::ConcurrenceSeries& s, const std::string& column, double threshold) {
            scan::PeakOptions o;
            o.column = scan::parse_method(column);
            o.threshold = threshold;
            return io::report_to_json(scan::detect_peaks(s, o)).dump();
          },
          "column"_a = "exact", "threshold"_a = 0.05);

  m.def(
      "run_scan",
      [](double alpha, double tau_start, double tau_end, int steps, const std::string& methods, double tail_tol,
         int k_window, int workers) {
        scan::ScanConfig c;
        c.alpha = alpha;
        c.tau_start = tau_start;
        c.tau_end = tau_end;
        c.steps = steps;
        c.methods = scan::MethodSet::parse(methods);
        c.tail_tolerance = tail_tol;
        c.k_window = k_window;
        c.workers = workers;
        py::gil_scoped_release release;
        return scan::run_scan(c);
      },
      "alpha"_a, "tau_start"_a = 0.0, "tau_end"_a = 200.0, "steps"_a = 4001,
      "methods"_a = "exact,xproj,series,analytic", "tail_tol"_a = fock::kDefaultTailTolerance, "k_window"_a = 2,
      "workers"_a = 1);

  m.def(
      "read_csv",
      [](const std::string& text, double alpha) {
        std::istringstream is(text);
        auto s = io::read_csv(is);
        s.meta.alpha = alpha;
        return s;
      },
      "text"_a, "alpha"_a, "Parse scan CSV text; alpha is needed for revival detection.");
}
