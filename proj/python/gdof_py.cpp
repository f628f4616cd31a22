#include "gdof/closed_form.hpp"
#include "gdof/deterministic.hpp"
#include "gdof/errors.hpp"
#include "gdof/high_snr.hpp"
#include "gdof/hk_achievable.hpp"
#include "gdof/outer_bounds.hpp"
#include "gdof/sweep.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

namespace py = pybind11;

namespace {

gdof::SystemConfig config(int M, int N, double a1, double a2) { return {M, N, a1, a2}; }

}  // namespace

PYBIND11_MODULE(_gdof, m) {
    m.doc() = "GDOF of the 3-user partially asymmetric MIMO interference channel";

    auto domain = py::register_exception<gdof::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<gdof::BoundaryError>(m, "BoundaryError", domain.ptr());
    py::register_exception<gdof::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<gdof::GdofResult>(m, "GdofResult")
        .def_readonly("value", &gdof::GdofResult::value)
        .def_property_readonly("regime", [](const gdof::GdofResult& r) { return std::string(gdof::to_string(r.regime)); })
        .def_readonly("active_term", &gdof::GdofResult::active_term)
        .def_readonly("face_id", &gdof::GdofResult::face_id)
        .def("__repr__", [](const gdof::GdofResult& r) {
            std::ostringstream os;
            os << "GdofResult(value=" << r.value << ", regime=" << gdof::to_string(r.regime)
               << ", active_term=" << r.active_term << ", face_id=" << r.face_id << ")";
            return os.str();
        });

    m.def("gdof", [](int M, int N, double a1, double a2) { return gdof::gdof(config(M, N, a1, a2)); },
          py::arg("M"), py::arg("N"), py::arg("alpha1"), py::arg("alpha2"),
          "Closed-form per-user GDOF with the attaining face.");

    m.def("predicted_prelog",
          [](int r, int N, std::array<double, 3> exps) {
              const gdof::PrelogSpec spec{r, N, exps};
              spec.validate();
              return gdof::predicted_prelog(spec);
          },
          py::arg("r"), py::arg("N"), py::arg("exps"));

    m.def("achievable_rate",
          [](int M, int N, double a1, double a2, double rho, std::uint64_t seed) {
              const auto ch = gdof::generate_channel(config(M, N, a1, a2), seed);
              return gdof::achievable_sym_rate(ch, rho);
          },
          py::arg("M"), py::arg("N"), py::arg("alpha1"), py::arg("alpha2"), py::arg("rho"), py::arg("seed") = 0,
          "Per-user symmetric rate of the rate-splitting scheme on one channel draw.");

    m.def("outer_bound",
          [](int M, int N, double a1, double a2, double rho, std::uint64_t seed) {
              const auto c = config(M, N, a1, a2);
              const auto ch = gdof::generate_channel(c, seed);
              const auto ev = gdof::min_outer_proxy(ch, rho);
              py::dict per;
              const auto catalog = gdof::recipe_catalog(c);
              for (std::size_t k = 0; k < catalog.size(); ++k) per[py::str(catalog[k].label)] = ev.per_recipe[k];
              return py::make_tuple(ev.value, catalog[ev.argmin].label, per);
          },
          py::arg("M"), py::arg("N"), py::arg("alpha1"), py::arg("alpha2"), py::arg("rho"), py::arg("seed") = 0,
          "(min proxy on R1+R2+R3, active recipe label, per-recipe values).");

    m.def("det_capacity",
          [](int M, int N, double a1, double a2, int levels, std::uint64_t seed) {
              const auto model = gdof::build_shift_channel(config(M, N, a1, a2), levels, seed);
              const auto cap = gdof::det_sym_capacity(model);
              return py::make_tuple(cap.value, cap.labels[cap.argmin]);
          },
          py::arg("M"), py::arg("N"), py::arg("alpha1"), py::arg("alpha2"), py::arg("levels"), py::arg("seed") = 0,
          "(symmetric capacity in bits, attaining term) of the level deterministic model.");

    m.def("sweep",
          [](int M, int N, double step, double max, std::optional<double> a1, std::optional<double> a2) {
              gdof::SweepOptions opt;
              opt.M = M;
              opt.N = N;
              opt.step = step;
              opt.max = max;
              opt.alpha1 = a1;
              opt.alpha2 = a2;
              std::ostringstream os;
              gdof::write_csv(os, gdof::run_sweep(opt), true);
              return os.str();
          },
          py::arg("M") = 1, py::arg("N") = 2, py::arg("step") = 0.05, py::arg("max") = 2.0,
          py::arg("alpha1") = py::none(), py::arg("alpha2") = py::none(),
          "Grid sweep as CSV text.");
}
