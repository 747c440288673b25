#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "contagion/bond.hpp"
#include "contagion/cds.hpp"
#include "contagion/config.hpp"
#include "contagion/mc.hpp"
#include "contagion/model.hpp"
#include "contagion/special_functions.hpp"
#include "contagion/survival.hpp"

namespace py = pybind11;
using namespace contagion;

PYBIND11_MODULE(_contagion, m) {
    m.doc() = "Two-firm structural credit model: joint first-passage survival, "
              "contagion bond yields and basket CDS spreads";

    py::register_exception<convergence_error>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<degenerate_model_error>(m, "DegenerateModelError", PyExc_ValueError);

    py::class_<FirmParams>(m, "FirmParams")
        .def(py::init([](double v0, double sigma, double q, double gamma, double face) {
                 return FirmParams{v0, sigma, q, gamma, face};
             }),
             py::arg("v0"), py::arg("sigma"), py::arg("q") = 0.0, py::arg("gamma") = 0.03,
             py::arg("face") = 100.0)
        .def_readwrite("v0", &FirmParams::v0)
        .def_readwrite("sigma", &FirmParams::sigma)
        .def_readwrite("q", &FirmParams::q)
        .def_readwrite("gamma", &FirmParams::gamma)
        .def_readwrite("face", &FirmParams::face)
        .def("log_barrier", &FirmParams::log_barrier, py::arg("horizon"));

    py::class_<PairModel>(m, "PairModel")
        .def(py::init([](FirmParams f1, FirmParams f2, double rho, double rf, double horizon) {
                 return PairModel{f1, f2, rho, rf, horizon};
             }),
             py::arg("firm1"), py::arg("firm2"), py::arg("rho"), py::arg("rf"),
             py::arg("horizon"))
        .def_readwrite("firm1", &PairModel::firm1)
        .def_readwrite("firm2", &PairModel::firm2)
        .def_readwrite("rho", &PairModel::rho)
        .def_readwrite("rf", &PairModel::rf)
        .def_readwrite("horizon", &PairModel::horizon);

    py::class_<PolarTransform>(m, "PolarTransform")
        .def_readonly("a1", &PolarTransform::a1)
        .def_readonly("a2", &PolarTransform::a2)
        .def_readonly("b", &PolarTransform::b)
        .def_readonly("beta", &PolarTransform::beta)
        .def_readonly("r0", &PolarTransform::r0)
        .def_readonly("theta0", &PolarTransform::theta0)
        .def("amplitude", &PolarTransform::amplitude, py::arg("theta"));

    py::enum_<GridKind>(m, "GridKind")
        .value("tensor", GridKind::tensor)
        .value("sparse", GridKind::sparse);

    py::class_<NumericsConfig>(m, "NumericsConfig")
        .def(py::init<>())
        .def_readwrite("series_tol", &NumericsConfig::series_tol)
        .def_readwrite("n_max", &NumericsConfig::n_max)
        .def_readwrite("theta_nodes", &NumericsConfig::theta_nodes)
        .def_readwrite("r_nodes", &NumericsConfig::r_nodes)
        .def_readwrite("inner_nodes", &NumericsConfig::inner_nodes)
        .def_readwrite("grid_kind", &NumericsConfig::grid_kind)
        .def_readwrite("sparse_level", &NumericsConfig::sparse_level)
        .def_readwrite("time_nodes", &NumericsConfig::time_nodes);

    py::class_<bond::BondContract>(m, "BondContract")
        .def(py::init([](double face, double maturity, double writedown) {
                 return bond::BondContract{face, maturity, writedown};
             }),
             py::arg("face") = 100.0, py::arg("maturity") = 5.0, py::arg("writedown") = 0.7)
        .def_readwrite("face", &bond::BondContract::face)
        .def_readwrite("maturity", &bond::BondContract::maturity)
        .def_readwrite("writedown", &bond::BondContract::writedown);

    py::enum_<cds::Flavor>(m, "Flavor")
        .value("first", cds::Flavor::first)
        .value("second", cds::Flavor::second)
        .value("second_contagion", cds::Flavor::second_contagion)
        .value("counterparty_homogeneous", cds::Flavor::counterparty_homogeneous);

    py::class_<cds::CdsContract>(m, "CdsContract")
        .def(py::init([](double notional, double maturity, double recovery, cds::Flavor flavor) {
                 return cds::CdsContract{notional, maturity, recovery, flavor};
             }),
             py::arg("notional") = 100.0, py::arg("maturity") = 5.0, py::arg("recovery") = 0.5,
             py::arg("flavor") = cds::Flavor::first)
        .def_readwrite("notional", &cds::CdsContract::notional)
        .def_readwrite("maturity", &cds::CdsContract::maturity)
        .def_readwrite("recovery", &cds::CdsContract::recovery)
        .def_readwrite("flavor", &cds::CdsContract::flavor);

    py::class_<mc::McConfig>(m, "McConfig")
        .def(py::init<>())
        .def_readwrite("paths", &mc::McConfig::paths)
        .def_readwrite("steps_per_year", &mc::McConfig::steps_per_year)
        .def_readwrite("seed", &mc::McConfig::seed)
        .def_readwrite("bridge", &mc::McConfig::bridge)
        .def_readwrite("antithetic", &mc::McConfig::antithetic);

    py::class_<mc::McEstimate>(m, "McEstimate")
        .def_readonly("mean", &mc::McEstimate::mean)
        .def_readonly("std_error", &mc::McEstimate::std_error)
        .def_readonly("paths", &mc::McEstimate::paths)
        .def("__repr__", [](const mc::McEstimate& e) {
            return "McEstimate(mean=" + std::to_string(e.mean) +
                   ", std_error=" + std::to_string(e.std_error) + ")";
        });

    py::class_<mc::CdsLegsEstimate>(m, "CdsLegsEstimate")
        .def_readonly("premium", &mc::CdsLegsEstimate::premium)
        .def_readonly("protection", &mc::CdsLegsEstimate::protection)
        .def_readonly("spread", &mc::CdsLegsEstimate::spread);

    py::class_<mc::BasketLegsEstimate>(m, "BasketLegsEstimate")
        .def_readonly("first", &mc::BasketLegsEstimate::first)
        .def_readonly("second", &mc::BasketLegsEstimate::second)
        .def_readonly("counterparty", &mc::BasketLegsEstimate::counterparty)
        .def_readonly("protection_ref1", &mc::BasketLegsEstimate::protection_ref1)
        .def_readonly("protection_ref2", &mc::BasketLegsEstimate::protection_ref2)
        .def_readonly("protection_first", &mc::BasketLegsEstimate::protection_first);

    m.def("bessel_i_scaled", &sf::bessel_i_scaled, py::arg("nu"), py::arg("x"));
    m.def("bessel_i_integral_form", &sf::bessel_i_integral_form, py::arg("nu"), py::arg("x"),
          py::arg("cos_nodes") = 64);

    m.def("polar_transform", &survival::polar_transform, py::arg("model"));
    m.def("joint_survival", &survival::joint_survival, py::arg("model"), py::arg("t"),
          py::arg("cfg") = NumericsConfig{});
    m.def("joint_survival_zero_drift", &survival::joint_survival_zero_drift, py::arg("model"),
          py::arg("t"), py::arg("cfg") = NumericsConfig{});
    m.def("marginal_survival", &survival::marginal_survival, py::arg("firm"), py::arg("rf"),
          py::arg("horizon"), py::arg("t"));
    m.def("restricted_exp_moment", &survival::restricted_exp_moment, py::arg("model"),
          py::arg("t"), py::arg("epsilon"), py::arg("lowerA"), py::arg("upperB"),
          py::arg("cfg") = NumericsConfig{});

    m.def("discounted_maturity_payment", &bond::discounted_maturity_payment, py::arg("model"),
          py::arg("bond"), py::arg("cfg") = NumericsConfig{});
    m.def("discounted_default_payment", &bond::discounted_default_payment, py::arg("model"),
          py::arg("bond"), py::arg("cfg") = NumericsConfig{});
    m.def("bond_yield", &bond::bond_yield, py::arg("model"), py::arg("bond"),
          py::arg("cfg") = NumericsConfig{});
    m.def("single_firm_yield", &bond::single_firm_yield, py::arg("firm"), py::arg("rf"),
          py::arg("bond"), py::arg("cfg") = NumericsConfig{});
    m.def("writedown_consistent", &bond::writedown_consistent, py::arg("model"), py::arg("bond"));

    m.def("first_to_default_spread", &cds::first_to_default_spread, py::arg("model"),
          py::arg("cds"), py::arg("cfg") = NumericsConfig{});
    m.def("second_to_default_spread", &cds::second_to_default_spread, py::arg("model"),
          py::arg("cds"), py::arg("cfg") = NumericsConfig{});
    m.def("second_to_default_spread_contagion", &cds::second_to_default_spread_contagion,
          py::arg("model"), py::arg("cds"), py::arg("cfg") = NumericsConfig{});
    m.def("counterparty_cds_spread_homogeneous", &cds::counterparty_cds_spread_homogeneous,
          py::arg("model"), py::arg("cds"), py::arg("cfg") = NumericsConfig{});

    m.def("estimate_joint_survival", &mc::estimate_joint_survival, py::arg("model"), py::arg("t"),
          py::arg("mc"));
    m.def("estimate_bond_price", &mc::estimate_bond_price, py::arg("model"), py::arg("bond"),
          py::arg("mc"));
    m.def("estimate_basket_cds_legs", &mc::estimate_basket_cds_legs, py::arg("model"),
          py::arg("notional"), py::arg("recovery"), py::arg("mc"));
    m.def("estimate_cds_legs", &mc::estimate_cds_legs, py::arg("model"), py::arg("cds"),
          py::arg("mc"));

    m.def("run_config", [](const std::string& text) {
        return config::run(config::parse_config(text));
    }, py::arg("text"), "Parse a flat key=value config and return the CSV document");
}
