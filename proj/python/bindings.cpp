#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coag/io.hpp"
#include "coag/kernels.hpp"
#include "coag/lattice.hpp"
#include "coag/reference.hpp"
#include "coag/spectral.hpp"
#include "coag/version.hpp"
#include "coag/wavesim.hpp"

namespace py = pybind11;
using namespace coag;

PYBIND11_MODULE(_core, m) {
    m.doc() = "numerical laboratory for homogeneity-one coagulation dynamics";
    m.attr("__version__") = version;

    auto exc_base = py::register_exception<Error>(m, "Error");
    py::register_exception<DomainError>(m, "DomainError", exc_base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", exc_base.ptr());

    // ---- shared parameter blocks ----
    py::class_<quad::Params>(m, "QuadParams")
        .def(py::init<>())
        .def_readwrite("abs_tol", &quad::Params::abs_tol)
        .def_readwrite("rel_tol", &quad::Params::rel_tol)
        .def_readwrite("max_depth", &quad::Params::max_depth)
        .def_readwrite("panels", &quad::Params::panels);

    // ---- kernels ----
    py::enum_<KernelVariant>(m, "KernelVariant")
        .value("AlphaFamily", KernelVariant::AlphaFamily)
        .value("Additive", KernelVariant::Additive)
        .value("Diagonal", KernelVariant::Diagonal)
        .value("NearDiagonal", KernelVariant::NearDiagonal);
    py::enum_<NormMode>(m, "NormMode")
        .value("SimplexUnit", NormMode::SimplexUnit)
        .value("AUnit", NormMode::AUnit);
    py::enum_<Classification>(m, "Classification")
        .value("ClassI", Classification::ClassI)
        .value("ClassII", Classification::ClassII);

    py::class_<EtaDensity>(m, "EtaDensity")
        .def_static("uniform", &EtaDensity::uniform, py::arg("eps"))
        .def_static("atoms", &EtaDensity::atoms, py::arg("s_weight"))
        .def_readonly("is_uniform", &EtaDensity::is_uniform)
        .def_readonly("eps", &EtaDensity::eps)
        .def_readonly("atom_list", &EtaDensity::atom_list)
        .def("support_radius", &EtaDensity::support_radius);

    py::class_<KernelSpec>(m, "KernelSpec")
        .def_static("alpha_family", &KernelSpec::alpha_family, py::arg("alpha"),
                    py::arg("norm"))
        .def_static("additive", &KernelSpec::additive)
        .def_static("diagonal", &KernelSpec::diagonal)
        .def_static("near_diagonal", &KernelSpec::near_diagonal, py::arg("eta"))
        .def("eval", &KernelSpec::eval, py::arg("x"), py::arg("y"))
        .def("kx1", &KernelSpec::kx1, py::arg("x"))
        .def("classify", &KernelSpec::classify)
        .def("variant", &KernelSpec::variant)
        .def("norm", &KernelSpec::norm)
        .def("alpha", &KernelSpec::alpha)
        .def("norm_constant", &KernelSpec::norm_constant)
        .def("eta", &KernelSpec::eta);

    m.def("normalization_constant", &normalization_constant, py::arg("alpha"),
          py::arg("mode"));

    py::class_<BurgersConstant>(m, "BurgersConstant")
        .def_readonly("divergent", &BurgersConstant::divergent)
        .def_readonly("value", &BurgersConstant::value)
        .def_readonly("error_bound", &BurgersConstant::error_bound);
    m.def("burgers_constant", &burgers_constant, py::arg("kernel"),
          py::arg("params") = quad::Params{});

    py::class_<WeightTables>(m, "WeightTables")
        .def_readonly("eps", &WeightTables::eps)
        .def_readonly("R", &WeightTables::R)
        .def_readonly("w_gain", &WeightTables::w_gain)
        .def_readonly("w_loss", &WeightTables::w_loss)
        .def_readonly("y_hat", &WeightTables::y_hat)
        .def_readonly("w_b", &WeightTables::w_b)
        .def_readonly("w_c", &WeightTables::w_c);
    m.def("build_weight_tables", &build_weight_tables, py::arg("kernel"), py::arg("eps"),
          py::arg("R"));

    // ---- spectral ----
    m.def("m_alpha_closed", &spectral::m_alpha_closed, py::arg("alpha"), py::arg("k"));
    m.def("m_alpha_closed_derivative", &spectral::m_alpha_closed_derivative,
          py::arg("alpha"), py::arg("k"));

    py::class_<spectral::MQuadResult>(m, "MQuadResult")
        .def_readonly("value", &spectral::MQuadResult::value)
        .def_readonly("truncation_bound", &spectral::MQuadResult::truncation_bound);
    m.def("m_quadrature", &spectral::m_quadrature, py::arg("kernel"), py::arg("k"),
          py::arg("params") = quad::Params{});

    py::class_<spectral::ScanResult>(m, "ScanResult")
        .def_readonly("stable", &spectral::ScanResult::stable)
        .def_readonly("max_re", &spectral::ScanResult::max_re)
        .def_readonly("argmax_k", &spectral::ScanResult::argmax_k);
    m.def("stability_scan", &spectral::stability_scan, py::arg("alpha"),
          py::arg("k_max") = 40.0, py::arg("dk") = 0.01);

    py::class_<spectral::Root>(m, "Root")
        .def_readonly("k", &spectral::Root::k)
        .def_readonly("residual", &spectral::Root::residual)
        .def_readonly("dominant", &spectral::Root::dominant);
    py::class_<spectral::RootSearchOptions>(m, "RootSearchOptions")
        .def(py::init<>())
        .def_readwrite("re_min", &spectral::RootSearchOptions::re_min)
        .def_readwrite("re_max", &spectral::RootSearchOptions::re_max)
        .def_readwrite("im_min", &spectral::RootSearchOptions::im_min)
        .def_readwrite("im_max", &spectral::RootSearchOptions::im_max)
        .def_readwrite("seed_step", &spectral::RootSearchOptions::seed_step)
        .def_readwrite("accept_residual", &spectral::RootSearchOptions::accept_residual)
        .def_readwrite("dedup_tol", &spectral::RootSearchOptions::dedup_tol)
        .def_readwrite("max_newton", &spectral::RootSearchOptions::max_newton);
    m.def("dispersion_roots", &spectral::dispersion_roots, py::arg("alpha"),
          py::arg("options") = spectral::RootSearchOptions{});

    m.def("near_diagonal_w", &spectral::near_diagonal_w, py::arg("k"), py::arg("s"));
    m.def("near_diagonal_m", &spectral::near_diagonal_m, py::arg("eta"), py::arg("k"),
          py::arg("params") = quad::Params{});
    m.def("to_sim_wavenumber", &spectral::to_sim_wavenumber, py::arg("k_natural"));
    m.def("to_sim_growth_rate", &spectral::to_sim_growth_rate, py::arg("re_m"));

    // ---- lattice ----
    py::class_<lattice::LatticeState>(m, "LatticeState")
        .def(py::init<>())
        .def_readwrite("j_min", &lattice::LatticeState::j_min)
        .def_readwrite("left_constant", &lattice::LatticeState::left_constant)
        .def_readwrite("u", &lattice::LatticeState::u)
        .def_readwrite("t", &lattice::LatticeState::t)
        .def_readwrite("w0", &lattice::LatticeState::w0)
        .def_readwrite("mass0", &lattice::LatticeState::mass0)
        .def("j_max", &lattice::LatticeState::j_max);

    py::class_<lattice::IntegrateOptions>(m, "IntegrateOptions")
        .def(py::init<>())
        .def_readwrite("tol", &lattice::IntegrateOptions::tol)
        .def_readwrite("auto_grow", &lattice::IntegrateOptions::auto_grow)
        .def_readwrite("max_sites", &lattice::IntegrateOptions::max_sites)
        .def_readwrite("grow_threshold", &lattice::IntegrateOptions::grow_threshold);

    m.def("make_box", &lattice::make_box, py::arg("mass"), py::arg("width") = 5,
          py::arg("j_start") = 0, py::arg("window") = 64);
    m.def("make_riemann", &lattice::make_riemann, py::arg("c_left"),
          py::arg("window") = 64);
    m.def("from_samples", &lattice::from_samples, py::arg("j_min"),
          py::arg("left_constant"), py::arg("u"));
    m.def("integrate_to", &lattice::integrate_to, py::arg("state"), py::arg("t_end"),
          py::arg("options") = lattice::IntegrateOptions{});
    m.def("mass", &lattice::mass, py::arg("state"));
    m.def("entropy_gap",
          py::overload_cast<const lattice::LatticeState&, double>(&lattice::entropy_gap),
          py::arg("state"), py::arg("w0"));
    m.def("entropy_gap",
          py::overload_cast<const lattice::LatticeState&>(&lattice::entropy_gap),
          py::arg("state"));
    m.def("decay_ratio", &lattice::decay_ratio, py::arg("state"));
    m.def("nwave_error", &lattice::nwave_error, py::arg("state"), py::arg("mass"));
    m.def("front_position",
          py::overload_cast<const lattice::LatticeState&, double>(&lattice::front_position),
          py::arg("state"), py::arg("level"));
    m.def("riemann_front_speed", &lattice::riemann_front_speed, py::arg("c_left"),
          py::arg("t1"), py::arg("t2"),
          py::arg("options") = lattice::IntegrateOptions{});

    py::class_<lattice::FiberMassProfile>(m, "FiberMassProfile")
        .def_static("constant", &lattice::FiberMassProfile::constant, py::arg("mass"))
        .def_static("sampled", &lattice::FiberMassProfile::sampled, py::arg("values"))
        .def("__call__", &lattice::FiberMassProfile::operator(), py::arg("theta"));
    m.def("fiber_compose", &lattice::fiber_compose, py::arg("profile"), py::arg("t"),
          py::arg("X"));

    // ---- wave simulation ----
    py::enum_<wavesim::InitKind>(m, "InitKind")
        .value("Riemann", wavesim::InitKind::Riemann)
        .value("Bump", wavesim::InitKind::Bump)
        .value("File", wavesim::InitKind::File);

    py::class_<wavesim::SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("alpha", &wavesim::SimConfig::alpha)
        .def_readwrite("eps", &wavesim::SimConfig::eps)
        .def_readwrite("L", &wavesim::SimConfig::L)
        .def_readwrite("R", &wavesim::SimConfig::R)
        .def_readwrite("tau", &wavesim::SimConfig::tau)
        .def_readwrite("t_end", &wavesim::SimConfig::t_end)
        .def_readwrite("snap_dt", &wavesim::SimConfig::snap_dt)
        .def_readwrite("init", &wavesim::SimConfig::init)
        .def_readwrite("c_minus", &wavesim::SimConfig::c_minus)
        .def_readwrite("riemann_x0", &wavesim::SimConfig::riemann_x0)
        .def_readwrite("ramp_width", &wavesim::SimConfig::ramp_width)
        .def_readwrite("bump_mass", &wavesim::SimConfig::bump_mass)
        .def_readwrite("bump_center", &wavesim::SimConfig::bump_center)
        .def_readwrite("bump_width", &wavesim::SimConfig::bump_width)
        .def_readwrite("init_values", &wavesim::SimConfig::init_values)
        .def_readwrite("blowup_factor", &wavesim::SimConfig::blowup_factor)
        .def_readwrite("negativity_tol", &wavesim::SimConfig::negativity_tol);

    py::class_<wavesim::FieldState>(m, "FieldState")
        .def(py::init<>())
        .def_readwrite("eps", &wavesim::FieldState::eps)
        .def_readwrite("c_minus", &wavesim::FieldState::c_minus)
        .def_readwrite("c_plus", &wavesim::FieldState::c_plus)
        .def_readwrite("t", &wavesim::FieldState::t)
        .def_readwrite("u", &wavesim::FieldState::u);

    py::class_<wavesim::Snapshot>(m, "Snapshot")
        .def_readonly("t", &wavesim::Snapshot::t)
        .def_readonly("u", &wavesim::Snapshot::u);

    py::class_<wavesim::SimResult>(m, "SimResult")
        .def_readonly("cfg", &wavesim::SimResult::cfg)
        .def_readonly("tau", &wavesim::SimResult::tau)
        .def_readonly("tau_max", &wavesim::SimResult::tau_max)
        .def_readonly("a_simplex", &wavesim::SimResult::a_simplex)
        .def_readonly("snapshots", &wavesim::SimResult::snapshots)
        .def_readonly("mass_series", &wavesim::SimResult::mass_series);

    m.def("stability_cap", &wavesim::stability_cap, py::arg("eps"), py::arg("a_simplex"),
          py::arg("max_u"));
    m.def("make_initial", &wavesim::make_initial, py::arg("config"));
    m.def("rhs", &wavesim::rhs, py::arg("state"), py::arg("tables"),
          py::arg("threads") = 1);
    m.def("simulate", &wavesim::simulate, py::arg("config"), py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("front_position",
          py::overload_cast<const wavesim::FieldState&, double>(&wavesim::front_position),
          py::arg("state"), py::arg("level"));

    py::class_<wavesim::WaveProfile>(m, "WaveProfile")
        .def(py::init<>())
        .def_readwrite("g", &wavesim::WaveProfile::g)
        .def_readwrite("limit_minus", &wavesim::WaveProfile::limit_minus)
        .def_readwrite("limit_plus", &wavesim::WaveProfile::limit_plus);
    py::class_<wavesim::TwOptions>(m, "TwOptions")
        .def(py::init<>())
        .def_readwrite("y_min_arg", &wavesim::TwOptions::y_min_arg)
        .def_readwrite("z_max_arg", &wavesim::TwOptions::z_max_arg)
        .def_readwrite("quad", &wavesim::TwOptions::quad);
    m.def("traveling_wave_residual", &wavesim::traveling_wave_residual,
          py::arg("profile"), py::arg("kernel"), py::arg("b"), py::arg("test_points"),
          py::arg("options") = wavesim::TwOptions{});

    // ---- reference profiles ----
    m.def("nwave", &ref::nwave, py::arg("x"), py::arg("M"));
    m.def("additive_g1", &ref::additive_g1, py::arg("X"));
    m.def("additive_g_rho", &ref::additive_g_rho, py::arg("X"), py::arg("rho"),
          py::arg("n_terms") = 60);
    py::class_<ref::GRhoDetail>(m, "GRhoDetail")
        .def_readonly("value", &ref::GRhoDetail::value)
        .def_readonly("last_term", &ref::GRhoDetail::last_term)
        .def_readonly("peak_term", &ref::GRhoDetail::peak_term)
        .def_readonly("terms_used", &ref::GRhoDetail::terms_used);
    m.def("additive_g_rho_detail", &ref::additive_g_rho_detail, py::arg("X"),
          py::arg("rho"), py::arg("n_terms") = 60);
    m.def("g_rho_left_coefficient", &ref::g_rho_left_coefficient, py::arg("rho"));
    m.def("g_rho_right_coefficient", &ref::g_rho_right_coefficient, py::arg("rho"));
    m.def("series_window_max_x", &ref::series_window_max_x, py::arg("rho"),
          py::arg("n_terms") = 60);
    m.def("rho_to_b", &ref::rho_to_b, py::arg("rho"), py::arg("k0") = 1.0);
    m.def("selfsim_to_wave", &ref::selfsim_to_wave, py::arg("samples"));
    m.def("wave_to_selfsim", &ref::wave_to_selfsim, py::arg("samples"));
    m.def("oscillation_count", &ref::oscillation_count, py::arg("u"), py::arg("baseline"),
          py::arg("floor_gate"));
}
