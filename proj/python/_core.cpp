#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dmom/arith.hpp"
#include "dmom/characters.hpp"
#include "dmom/errors.hpp"
#include "dmom/kernels.hpp"
#include "dmom/lfunc.hpp"
#include "dmom/mainterms.hpp"
#include "dmom/moments.hpp"
#include "dmom/report.hpp"
#include "dmom/verify.hpp"

namespace py = pybind11;
using namespace dmom;

namespace {

Parity parity_arg(const std::string& s) { return parse_parity(s); }

std::vector<cplx> l_values_at(u64 q, cplx s) { return l_values(*character_group(q), s); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Second moments of primitive Dirichlet L-functions";

    auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PoleError>(m, "PoleError", domain.ptr());
    py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

    m.def("euler_phi", py::overload_cast<u64>(&euler_phi));
    m.def("phi_star", &phi_star);
    m.def("mobius", &mobius);
    m.def("divisors", py::overload_cast<u64>(&divisors));

    m.def("hurwitz_zeta", [](cplx s, double a) { return hurwitz_zeta(s, a); }, py::arg("s"), py::arg("a"));
    m.def("riemann_zeta", [](cplx s) { return riemann_zeta(s); }, py::arg("s"));
    m.def("l_values", &l_values_at, py::arg("q"), py::arg("s"),
          "L(s, chi) for every character mod q, in character-group index order");

    py::class_<MomentValue>(m, "MomentValue")
        .def_readonly("q", &MomentValue::q)
        .def_readonly("alpha", &MomentValue::alpha)
        .def_readonly("beta", &MomentValue::beta)
        .def_property_readonly("parity", [](const MomentValue& v) { return to_string(v.parity); })
        .def_readonly("value", &MomentValue::value)
        .def_readonly("character_count", &MomentValue::character_count)
        .def_readonly("est_numeric_error", &MomentValue::est_numeric_error);

    m.def("moment", [](u64 q, cplx a, cplx b, const std::string& parity) { return shifted_moment(q, a, b, parity_arg(parity)); },
          py::arg("q"), py::arg("alpha") = cplx(0), py::arg("beta") = cplx(0), py::arg("parity") = "even");
    m.def("moment_all_characters", [](u64 q) { return moment_all_characters(q); }, py::arg("q"));
    m.def("t_recover", [](u64 k) { return t_recover(k); }, py::arg("k"));
    m.def("t_series", [](u64 k, double cutoff) { return t_series(k, cutoff).value; }, py::arg("k"), py::arg("cutoff") = 0.0);
    m.def("twisted_moment", [](u64 p, i64 h) { return twisted_moment(p, h); }, py::arg("p"), py::arg("h"));

    m.def("main_even", &main_even, py::arg("q"), py::arg("alpha"), py::arg("beta"));
    m.def("main_even_limit", &main_even_limit, py::arg("q"), py::arg("alpha"), py::arg("beta"));
    m.def("secondary_even", [](u64 q, cplx a, cplx b) { return secondary_even(q, a, b); }, py::arg("q"),
          py::arg("alpha"), py::arg("beta"));
    m.def("corollary6_secondary", [](u64 q) { return corollary6_secondary(q); }, py::arg("q"));
    m.def("even_main", &even_main, py::arg("q"));
    m.def("odd_main", &odd_main, py::arg("q"));
    m.def("odd_secondary", [](u64 q) { return odd_secondary(q); }, py::arg("q"));
    m.def("allprim_main", &allprim_main, py::arg("q"));
    m.def("allprim_secondary", [](u64 q) { return allprim_secondary(q); }, py::arg("q"));
    m.def("hb_main", &hb_main, py::arg("k"));
    m.attr("HB_A") = hb_A();
    m.attr("HB_B") = hb_B();
    m.def("thm10_rhs", &thm10_rhs, py::arg("p"), py::arg("h"), py::arg("s_hp"));
    m.def("error_budget", &error_budget, py::arg("q"), py::arg("D"), py::arg("eps") = 0.05);

    m.def("kernel_K", [](cplx x, cplx a, cplx b) { return kernel_K(x, a, b); }, py::arg("x"), py::arg("alpha"),
          py::arg("beta"));
    m.def("hb_kernel_K", [](cplx x) { return hb_kernel_K(x); }, py::arg("x"));
    m.def("script_k_combined", &script_k_combined, py::arg("delta"), py::arg("alpha"), py::arg("beta"));

    py::class_<MomentRow>(m, "MomentRow")
        .def_readonly("q", &MomentRow::q)
        .def_property_readonly("parity", [](const MomentRow& r) { return to_string(r.parity); })
        .def_readonly("alpha", &MomentRow::alpha)
        .def_readonly("beta", &MomentRow::beta)
        .def_readonly("lhs", &MomentRow::lhs)
        .def_readonly("main", &MomentRow::main)
        .def_readonly("secondary", &MomentRow::secondary)
        .def_readonly("residual", &MomentRow::residual)
        .def_readonly("residual_norm", &MomentRow::residual_norm)
        .def_readonly("residual_norm_d", &MomentRow::residual_norm_d)
        .def_readonly("divisor_count", &MomentRow::divisor_count)
        .def_readonly("D", &MomentRow::D)
        .def_readonly("error_budget", &MomentRow::error_budget)
        .def_readonly("near_sqrt_divisors", &MomentRow::near_sqrt_divisors);

    m.def("residual_row",
          [](u64 q, cplx a, cplx b, const std::string& parity, double D) { return residual_row(q, a, b, parity_arg(parity), D); },
          py::arg("q"), py::arg("alpha") = cplx(0), py::arg("beta") = cplx(0), py::arg("parity") = "even",
          py::arg("D") = 0.0);
    m.def(
        "sweep",
        [](std::vector<u64> qs, cplx a, cplx b, const std::string& parity, int threads) {
            SweepOptions o;
            o.alpha = a;
            o.beta = b;
            o.parity = parity_arg(parity);
            o.threads = threads;
            py::gil_scoped_release release;
            return sweep(std::move(qs), o);
        },
        py::arg("moduli"), py::arg("alpha") = cplx(0), py::arg("beta") = cplx(0), py::arg("parity") = "even",
        py::arg("threads") = 1);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("slope", &FitResult::slope)
        .def_readonly("intercept", &FitResult::intercept)
        .def_readonly("r_squared", &FitResult::r_squared)
        .def_readonly("n_points", &FitResult::n_points);
    m.def("fit_error_exponent", &fit_error_exponent, py::arg("rows"), py::arg("q_min") = 0);
    m.def("fit_power_law", &fit_power_law, py::arg("x"), py::arg("y"));

    m.def(
        "hb_expansion_probe",
        [](std::vector<u64> ks) {
            const auto p = hb_expansion_probe(ks.empty() ? default_hb_grid() : ks);
            py::dict d;
            d["c0"] = p.c0;
            d["c0_spread"] = p.c0_spread;
            d["c0_stable"] = p.c0_stable;
            d["law"] = p.law;
            d["decay_slope"] = p.decay.slope;
            py::list rows;
            for (const auto& r : p.rows) rows.append(py::make_tuple(r.k, r.t_recover, r.hb_main, r.remainder));
            d["rows"] = rows;
            return d;
        },
        py::arg("ks") = std::vector<u64>{});
    m.def(
        "reciprocity_probe",
        [](const std::vector<std::pair<u64, u64>>& pairs) {
            py::list out;
            for (const auto& r : reciprocity_probe(pairs)) {
                py::dict d;
                d["h"] = r.h;
                d["p"] = r.p;
                d["S_p_h"] = r.s_ph;
                d["S_h_minus_p"] = r.s_hp;
                d["rhs"] = r.rhs;
                d["residual"] = r.residual;
                d["bound_scale"] = r.bound_scale;
                d["ratio"] = r.ratio;
                out.append(d);
            }
            return out;
        },
        py::arg("pairs"));
    m.def("kernel_probe", [] {
        py::list out;
        for (const auto& c : kernel_probe()) out.append(py::make_tuple(c.name, c.diff, c.ok));
        return out;
    });
    m.attr("__version__") = version_string();
}
