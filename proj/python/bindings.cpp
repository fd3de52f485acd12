#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "secrecy/analytic.hpp"
#include "secrecy/config_file.hpp"
#include "secrecy/errors.hpp"
#include "secrecy/montecarlo.hpp"
#include "secrecy/params.hpp"
#include "secrecy/specfun.hpp"
#include "secrecy/sweep.hpp"

namespace py = pybind11;
using namespace secrecy;

namespace {

SchemeKind scheme_from(const std::string& name) {
    const auto s = parse_scheme(name);
    if (!s) {
        throw ValidationError("unknown scheme '" + name + "'");
    }
    return *s;
}

py::dict estimate_dict(const SopEstimate& e) {
    py::dict d;
    d["estimate"] = e.estimate;
    d["std_error"] = e.std_error;
    d["trials"] = e.trials;
    d["outages"] = e.outages;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Secrecy outage probability of backhaul-limited cognitive small cells";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<MeanPowersDb>(m, "MeanPowersDb")
        .def(py::init<>())
        .def_readwrite("tr", &MeanPowersDb::tr)
        .def_readwrite("td", &MeanPowersDb::td)
        .def_readwrite("sd", &MeanPowersDb::sd)
        .def_readwrite("sr", &MeanPowersDb::sr)
        .def_readwrite("te", &MeanPowersDb::te)
        .def_readwrite("se", &MeanPowersDb::se);

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init<>())
        .def_readwrite("n_transmitters", &SystemConfig::n_transmitters)
        .def_readwrite("backhaul_prob", &SystemConfig::backhaul_prob)
        .def_readwrite("primary_outage_threshold", &SystemConfig::primary_outage_threshold)
        .def_readwrite("primary_rate_threshold", &SystemConfig::primary_rate_threshold)
        .def_readwrite("secrecy_rate_threshold", &SystemConfig::secrecy_rate_threshold)
        .def_readwrite("gamma_t_db", &SystemConfig::gamma_t_db)
        .def_readwrite("mean_power_db", &SystemConfig::mean_power_db)
        .def("set", [](SystemConfig& c, const std::string& key, const std::string& value) {
            apply_setting(c, key, value);
        });

    py::class_<DerivedParams>(m, "DerivedParams")
        .def_readonly("lambda_tr", &DerivedParams::lambda_tr)
        .def_readonly("lambda_td", &DerivedParams::lambda_td)
        .def_readonly("lambda_sd", &DerivedParams::lambda_sd)
        .def_readonly("lambda_sr", &DerivedParams::lambda_sr)
        .def_readonly("lambda_te", &DerivedParams::lambda_te)
        .def_readonly("lambda_se", &DerivedParams::lambda_se)
        .def_readonly("gamma_t", &DerivedParams::gamma_t)
        .def_readonly("gamma_0", &DerivedParams::gamma_0)
        .def_readonly("rho", &DerivedParams::rho)
        .def_readonly("xi", &DerivedParams::xi)
        .def_readonly("gamma_s", &DerivedParams::gamma_s);

    py::class_<AsymptoticParams>(m, "AsymptoticParams")
        .def_readonly("gamma_0", &AsymptoticParams::gamma_0)
        .def_readonly("rho", &AsymptoticParams::rho)
        .def_readonly("xi", &AsymptoticParams::xi);

    m.def("load_config", [](const std::string& path) { return load_config(path); });
    m.def("derive", &derive);
    m.def("derive_asymptotic", &derive_asymptotic);
    m.def("xi_asymptotic", &xi_asymptotic);

    m.def("ei_neg", &specfun::ei_neg);
    m.def("ei_neg_scaled", &specfun::ei_neg_scaled);
    m.def("hyp2f1_n", &specfun::hyp2f1_n, py::arg("n"), py::arg("z"));

    m.def("cdf_gamma_tr", &analytic::cdf_gamma_tr, py::arg("x"), py::arg("params"));
    m.def("cdf_gamma_sd_sts", &analytic::cdf_gamma_sd_sts, py::arg("x"), py::arg("params"), py::arg("n_tx"),
          py::arg("s"));
    m.def("cdf_gamma_se", &analytic::cdf_gamma_se, py::arg("x"), py::arg("params"));
    m.def("pdf_gamma_se", &analytic::pdf_gamma_se, py::arg("x"), py::arg("params"));

    m.def("sop_sts", [](const SystemConfig& c) { return analytic::sop_sts(derive(c), c.n_transmitters,
                                                                          c.backhaul_prob).value; });
    m.def(
        "sop_ots",
        [](const SystemConfig& c, double rel_tol) {
            const auto p = derive(c);
            py::gil_scoped_release release;
            return analytic::sop_ots(p, c.n_transmitters, c.backhaul_prob, rel_tol).value;
        },
        py::arg("config"), py::arg("rel_tol") = analytic::kDefaultOtsRelTol);
    m.def("sop_sts_asymptotic", [](const SystemConfig& c) {
        return analytic::sop_sts_asymptotic(derive_asymptotic(c), c.n_transmitters, c.backhaul_prob).value;
    });
    m.def("sop_ots_asymptotic", [](const SystemConfig& c) {
        return analytic::sop_ots_asymptotic(derive_asymptotic(c), c.n_transmitters, c.backhaul_prob).value;
    });

    m.def(
        "simulate_sop",
        [](const SystemConfig& c, const std::string& scheme, std::uint64_t trials, std::uint64_t seed,
           unsigned workers) {
            const SchemeKind k = scheme_from(scheme);
            SopEstimate e;
            {
                py::gil_scoped_release release;
                e = simulate_sop(c, k, trials, seed, workers);
            }
            return estimate_dict(e);
        },
        py::arg("config"), py::arg("scheme"), py::arg("trials"), py::arg("seed") = 1, py::arg("workers") = 1);

    m.def(
        "sweep_csv",
        [](const std::string& axis, const std::vector<double>& values, const SystemConfig& fixed,
           const std::vector<std::string>& schemes, const std::vector<std::string>& methods, std::uint64_t trials,
           std::uint64_t seed, unsigned workers, double rel_tol) {
            sweep::SweepSpec spec;
            const auto a = sweep::parse_axis(axis);
            if (!a) throw ValidationError("unknown axis '" + axis + "'");
            spec.axis = *a;
            spec.axis_values = values;
            spec.fixed = fixed;
            for (const auto& s : schemes) spec.schemes.push_back(scheme_from(s));
            for (const auto& name : methods) {
                const auto method = sweep::parse_method(name);
                if (!method) throw ValidationError("unknown method '" + name + "'");
                spec.methods.push_back(*method);
            }
            spec.trials = trials;
            spec.seed = seed;
            spec.workers = workers;
            spec.rel_tol = rel_tol;
            py::gil_scoped_release release;
            return sweep::format_csv(sweep::run_sweep(spec));
        },
        py::arg("axis"), py::arg("values"), py::arg("config"), py::arg("schemes"), py::arg("methods"),
        py::arg("trials") = 1'000'000, py::arg("seed") = 1, py::arg("workers") = 1, py::arg("rel_tol") = 1e-8);
}
