#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coag/io.hpp"
#include "coag/kernels.hpp"
#include "coag/lattice.hpp"
#include "coag/reference.hpp"
#include "coag/spectral.hpp"
#include "coag/version.hpp"
#include "coag/wavesim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// --out semantics: empty -> primary table on stdout; *.csv / *.json -> that
// single file; anything else -> directory holding the per-subcommand files
// plus manifest.json.
enum class SinkKind { Stdout, File, Dir };

SinkKind sink_kind(const std::string& out) {
    if (out.empty()) return SinkKind::Stdout;
    auto ext = fs::path(out).extension().string();
    if (ext == ".csv" || ext == ".json") return SinkKind::File;
    return SinkKind::Dir;
}

void emit_table(const std::string& out, const std::string& default_name,
                const std::string& header, const std::vector<std::vector<double>>& rows) {
    switch (sink_kind(out)) {
        case SinkKind::Stdout: {
            std::cout << header << '\n';
            for (const auto& r : rows) {
                for (std::size_t i = 0; i < r.size(); ++i)
                    std::cout << (i ? "," : "") << coag::io::format_double(r[i]);
                std::cout << '\n';
            }
            break;
        }
        case SinkKind::File: {
            fs::path p(out);
            if (p.has_parent_path()) fs::create_directories(p.parent_path());
            coag::io::write_csv(p, header, rows);
            break;
        }
        case SinkKind::Dir: {
            fs::create_directories(out);
            coag::io::write_csv(fs::path(out) / default_name, header, rows);
            break;
        }
    }
}

void emit_json(const std::string& out, const std::string& default_name, const json& j) {
    switch (sink_kind(out)) {
        case SinkKind::Stdout:
            std::cout << j.dump(2) << '\n';
            break;
        case SinkKind::File: {
            fs::path p(out);
            if (p.has_parent_path()) fs::create_directories(p.parent_path());
            std::ofstream f(p);
            if (!f) throw coag::Error("cannot open " + out);
            f << j.dump(2) << '\n';
            break;
        }
        case SinkKind::Dir: {
            fs::create_directories(out);
            std::ofstream f(fs::path(out) / default_name);
            if (!f) throw coag::Error("cannot open " + out + "/" + default_name);
            f << j.dump(2) << '\n';
            break;
        }
    }
}

std::string error_kind(const coag::Error& e) {
    if (dynamic_cast<const coag::DistributionalKernel*>(&e)) return "DistributionalKernel";
    if (dynamic_cast<const coag::PoleError*>(&e)) return "PoleError";
    if (dynamic_cast<const coag::QuadratureNotConverged*>(&e)) return "QuadratureNotConverged";
    if (dynamic_cast<const coag::NoRootFound*>(&e)) return "NoRootFound";
    if (dynamic_cast<const coag::SeriesDiverged*>(&e)) return "SeriesDiverged";
    if (dynamic_cast<const coag::NegativeValue*>(&e)) return "NegativeValue";
    if (dynamic_cast<const coag::WindowTooSmall*>(&e)) return "WindowTooSmall";
    if (dynamic_cast<const coag::FrontNotFound*>(&e)) return "FrontNotFound";
    if (dynamic_cast<const coag::BlowUp*>(&e)) return "BlowUp";
    if (dynamic_cast<const coag::NegativityBreach*>(&e)) return "NegativityBreach";
    if (dynamic_cast<const coag::DomainError*>(&e)) return "DomainError";
    if (dynamic_cast<const coag::NumericalError*>(&e)) return "NumericalError";
    return "Error";
}

struct RunContext {
    std::string subcommand;
    std::string out;
    json params = json::object();
    json kernel = json::object();
    json diagnostics = json::object();
    json error = json::object();
};

struct SimulateFlags {
    double alpha = 8.0, eps = 0.05, L = 40.0, R = 25.0;
    double tau = 0.0, t_end = 4.0, snap = 1.0;
    std::string init = "riemann";
    double c_minus = 1.0, x0 = 4.0, ramp_width = 0.0;
    double bump_mass = 1.0, bump_center = 8.0, bump_width = 2.0;
    std::string file;
};

struct LatticeFlags {
    std::string init = "box";
    double mass = 1.0;
    int width = 5, j_start = 0;
    double c_left = 1.0, left_constant = 0.0;
    double t_end = 10.0, snap = 1.0, tol = 1e-10;
    std::size_t window = 64;
    std::string file;
};

struct SpectrumFlags {
    double alpha = 0.0, k_max = 40.0, dk = 0.01;
    std::string method = "closed", norm = "aunit";
};

struct RootsFlags {
    double alpha = 0.0;
    coag::spectral::RootSearchOptions opts;
};

struct ReferenceFlags {
    std::string profile;
    double rho = 0.5, mass = 1.0;
    int n_terms = 60;
    double x_min = std::numeric_limits<double>::quiet_NaN();
    double x_max = std::numeric_limits<double>::quiet_NaN();
    double dx = 0.05;
};

struct CompareFlags {
    std::string run;
    double nwave_mass = 1.0;
};

void run_simulate(RunContext& ctx, const SimulateFlags& f, int threads) {
    using namespace coag;
    wavesim::SimConfig cfg;
    cfg.alpha = f.alpha;
    cfg.eps = f.eps;
    cfg.L = f.L;
    cfg.R = f.R;
    cfg.tau = f.tau;
    cfg.t_end = f.t_end;
    cfg.snap_dt = f.snap;
    cfg.c_minus = f.c_minus;
    cfg.riemann_x0 = f.x0;
    cfg.ramp_width = f.ramp_width;
    cfg.bump_mass = f.bump_mass;
    cfg.bump_center = f.bump_center;
    cfg.bump_width = f.bump_width;
    if (f.init == "riemann") cfg.init = wavesim::InitKind::Riemann;
    else if (f.init == "bump") cfg.init = wavesim::InitKind::Bump;
    else if (f.init == "file") cfg.init = wavesim::InitKind::File;
    else throw DomainError("simulate: unknown init '" + f.init + "'");
    if (cfg.init == wavesim::InitKind::File) {
        if (f.file.empty()) throw DomainError("simulate: --init file requires --file");
        for (const auto& row : io::read_csv(f.file)) {
            if (row.empty()) throw DomainError("simulate: empty row in " + f.file);
            cfg.init_values.push_back(row.back());
        }
    }

    ctx.params = {{"alpha", f.alpha},       {"eps", f.eps},
                  {"L", f.L},               {"R", f.R},
                  {"tau", f.tau},           {"t_end", f.t_end},
                  {"snap", f.snap},         {"init", f.init},
                  {"c_minus", f.c_minus},   {"x0", f.x0},
                  {"ramp_width", f.ramp_width}, {"bump_mass", f.bump_mass},
                  {"bump_center", f.bump_center}, {"bump_width", f.bump_width},
                  {"file", f.file},         {"threads", threads}};
    ctx.kernel = {{"variant", "alpha"}, {"alpha", f.alpha}, {"norm", "simplex"}};

    auto res = wavesim::simulate(cfg, threads);

    std::vector<std::vector<double>> rows;
    for (const auto& snap : res.snapshots)
        for (std::size_t i = 0; i < snap.u.size(); ++i)
            rows.push_back({snap.t, static_cast<double>(i) * cfg.eps, snap.u[i]});
    emit_table(ctx.out, "snapshots.csv", "t,X,u", rows);

    if (sink_kind(ctx.out) == SinkKind::Dir) {
        std::vector<std::vector<double>> mass_rows;
        for (const auto& [t, m] : res.mass_series) mass_rows.push_back({t, m});
        coag::io::write_csv(fs::path(ctx.out) / "mass.csv", "t,mass", mass_rows);
    }

    double drift = 0.0;
    for (const auto& [t, m] : res.mass_series)
        drift = std::max(drift, std::abs(m - res.mass_series.front().second));
    ctx.diagnostics = {{"tau", res.tau},
                       {"tau_max", res.tau_max},
                       {"a_simplex", res.a_simplex},
                       {"window_mass_drift", drift},
                       {"snapshots", res.snapshots.size()}};
}

void run_lattice(RunContext& ctx, const LatticeFlags& f) {
    using namespace coag;
    lattice::LatticeState s;
    if (f.init == "box") {
        s = lattice::make_box(f.mass, f.width, f.j_start, f.window);
    } else if (f.init == "riemann") {
        s = lattice::make_riemann(f.c_left, f.window);
    } else if (f.init == "file") {
        if (f.file.empty()) throw DomainError("lattice: --init file requires --file");
        auto rows = io::read_csv(f.file);
        if (rows.empty()) throw DomainError("lattice: no sites in " + f.file);
        int j_min = static_cast<int>(std::llround(rows.front().front()));
        std::vector<double> u;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() < 2 ||
                std::llround(rows[r].front()) != j_min + static_cast<long long>(r))
                throw DomainError("lattice: file must list consecutive sites j,u");
            u.push_back(rows[r].back());
        }
        s = lattice::from_samples(j_min, f.left_constant, std::move(u));
    } else {
        throw DomainError("lattice: unknown init '" + f.init + "'");
    }
    if (!(f.snap > 0.0) || !(f.t_end >= 0.0))
        throw DomainError("lattice: requires snap > 0 and t_end >= 0");

    ctx.params = {{"init", f.init},     {"mass", f.mass},   {"width", f.width},
                  {"j_start", f.j_start}, {"c_left", f.c_left},
                  {"left_constant", f.left_constant},       {"t_end", f.t_end},
                  {"snap", f.snap},     {"tol", f.tol},     {"window", f.window},
                  {"file", f.file}};
    ctx.kernel = {{"variant", "diagonal"}};

    lattice::IntegrateOptions opts;
    opts.tol = f.tol;

    std::vector<std::vector<double>> snap_rows, diag_rows;
    auto record = [&]() {
        for (std::size_t i = 0; i < s.u.size(); ++i)
            snap_rows.push_back({s.t, static_cast<double>(s.j_min + static_cast<int>(i)), s.u[i]});
        diag_rows.push_back({s.t, lattice::mass(s), lattice::entropy_gap(s),
                             lattice::decay_ratio(s)});
    };
    record();
    for (int k = 1; k * f.snap < f.t_end - 1e-12; ++k) {
        lattice::integrate_to(s, k * f.snap, opts);
        record();
    }
    if (f.t_end > 0.0) {
        lattice::integrate_to(s, f.t_end, opts);
        record();
    }

    emit_table(ctx.out, "snapshots.csv", "t,j,u", snap_rows);
    if (sink_kind(ctx.out) == SinkKind::Dir)
        coag::io::write_csv(fs::path(ctx.out) / "diagnostics.csv",
                            "t,mass,entropy_gap,decay_ratio", diag_rows);

    ctx.diagnostics = {{"mass_drift", std::abs(lattice::mass(s) - s.mass0)},
                       {"entropy_gap", lattice::entropy_gap(s)},
                       {"w0", s.w0},
                       {"sites", s.u.size()},
                       {"snapshots", diag_rows.size()}};
}

void run_spectrum(RunContext& ctx, const SpectrumFlags& f) {
    using namespace coag;
    if (!(f.k_max > 0.0) || !(f.dk > 0.0))
        throw DomainError("spectrum: requires k-max > 0 and dk > 0");

    ctx.params = {{"alpha", f.alpha}, {"k_max", f.k_max}, {"dk", f.dk},
                  {"method", f.method}, {"norm", f.norm}};

    std::vector<std::vector<double>> rows;
    if (f.method == "closed") {
        ctx.kernel = {{"variant", "alpha"}, {"alpha", f.alpha}, {"norm", "aunit"}};
        for (int i = 0;; ++i) {
            double k = i * f.dk;
            if (k > f.k_max + 1e-12) break;
            auto m = spectral::m_alpha_closed(f.alpha, {k, 0.0});
            rows.push_back({k, m.real(), m.imag()});
        }
        auto sr = spectral::stability_scan(f.alpha, f.k_max, f.dk);
        ctx.diagnostics = {{"max_re", sr.max_re},
                           {"argmax_k", sr.argmax_k},
                           {"verdict", sr.stable ? "Stable" : "Unstable"}};
    } else if (f.method == "quadrature") {
        NormMode nm;
        if (f.norm == "aunit") nm = NormMode::AUnit;
        else if (f.norm == "simplex") nm = NormMode::SimplexUnit;
        else throw DomainError("spectrum: unknown norm '" + f.norm + "'");
        ctx.kernel = {{"variant", "alpha"}, {"alpha", f.alpha}, {"norm", f.norm}};
        KernelSpec kern = KernelSpec::alpha_family(f.alpha, nm);
        double max_re = -std::numeric_limits<double>::infinity(), argmax = 0.0, max_trunc = 0.0;
        for (int i = 0;; ++i) {
            double k = i * f.dk;
            if (k > f.k_max + 1e-12) break;
            auto r = spectral::m_quadrature(kern, k);
            rows.push_back({k, r.value.real(), r.value.imag()});
            max_trunc = std::max(max_trunc, r.truncation_bound);
            if (r.value.real() > max_re) {
                max_re = r.value.real();
                argmax = k;
            }
        }
        ctx.diagnostics = {{"max_re", max_re},
                           {"argmax_k", argmax},
                           {"max_truncation_bound", max_trunc},
                           {"verdict", max_re <= 1e-10 ? "Stable" : "Unstable"}};
    } else {
        throw DomainError("spectrum: unknown method '" + f.method + "'");
    }
    emit_table(ctx.out, "spectrum.csv", "k,reM,imM", rows);
}

void run_roots(RunContext& ctx, const RootsFlags& f) {
    using namespace coag;
    ctx.params = {{"alpha", f.alpha},
                  {"re_min", f.opts.re_min},
                  {"re_max", f.opts.re_max},
                  {"im_min", f.opts.im_min},
                  {"im_max", f.opts.im_max},
                  {"seed_step", f.opts.seed_step},
                  {"accept_residual", f.opts.accept_residual}};
    ctx.kernel = {{"variant", "alpha"}, {"alpha", f.alpha}, {"norm", "aunit"}};

    auto roots = spectral::dispersion_roots(f.alpha, f.opts);
    json out = {{"alpha", f.alpha}, {"roots", json::array()}};
    double max_residual = 0.0;
    for (const auto& r : roots) {
        out["roots"].push_back({{"re", r.k.real()},
                                {"im", r.k.imag()},
                                {"residual", r.residual},
                                {"dominant", r.dominant}});
        max_residual = std::max(max_residual, r.residual);
        if (r.dominant)
            ctx.diagnostics["dominant"] = {{"re", r.k.real()}, {"im", r.k.imag()}};
    }
    ctx.diagnostics["n_roots"] = roots.size();
    ctx.diagnostics["max_residual"] = max_residual;
    emit_json(ctx.out, "roots.json", out);
}

void run_reference(RunContext& ctx, const ReferenceFlags& f) {
    using namespace coag;
    double x_min = f.x_min, x_max = f.x_max;
    std::string header;
    std::vector<std::vector<double>> rows;
    if (f.profile == "g1") {
        if (std::isnan(x_min)) x_min = -15.0;
        if (std::isnan(x_max)) x_max = 6.0;
        header = "X,G";
    } else if (f.profile == "grho") {
        if (!(f.rho > 0.0) || !(f.rho < 1.0))
            throw DomainError("reference: grho requires rho in (0,1)");
        if (std::isnan(x_min)) x_min = -15.0;
        if (std::isnan(x_max)) x_max = 1.0;
        header = "X,G";
    } else if (f.profile == "nwave") {
        if (!(f.mass >= 0.0)) throw DomainError("reference: nwave requires mass >= 0");
        if (std::isnan(x_min)) x_min = 0.0;
        if (std::isnan(x_max)) x_max = 2.0 * std::sqrt(f.mass) + 0.5;
        header = "x,N";
    } else {
        throw DomainError("reference: unknown profile '" + f.profile + "'");
    }
    if (!(f.dx > 0.0) || !(x_max >= x_min))
        throw DomainError("reference: requires dx > 0 and x-max >= x-min");

    ctx.params = {{"profile", f.profile}, {"rho", f.rho},   {"mass", f.mass},
                  {"n_terms", f.n_terms}, {"x_min", x_min}, {"x_max", x_max},
                  {"dx", f.dx}};

    for (int i = 0;; ++i) {
        double x = x_min + i * f.dx;
        if (x > x_max + 1e-12) break;
        double v = 0.0;
        if (f.profile == "g1") v = ref::additive_g1(x);
        else if (f.profile == "grho") v = ref::additive_g_rho(x, f.rho, f.n_terms);
        else v = ref::nwave(x, f.mass);
        rows.push_back({x, v});
    }
    emit_table(ctx.out, "profile.csv", header, rows);

    ctx.diagnostics = {{"samples", rows.size()}};
    if (f.profile == "grho")
        ctx.diagnostics["series_window_max_x"] = ref::series_window_max_x(f.rho, f.n_terms);
}

void run_compare(RunContext& ctx, const CompareFlags& f) {
    using namespace coag;
    const fs::path dir(f.run);
    std::ifstream min_file(dir / "manifest.json");
    if (!min_file) throw DomainError("compare: no manifest.json under " + f.run);
    json man;
    try {
        min_file >> man;
    } catch (const std::exception& e) {
        throw DomainError(std::string("compare: bad manifest: ") + e.what());
    }
    const std::string sub = man.value("subcommand", "");

    ctx.params = {{"run", f.run}, {"nwave_mass", f.nwave_mass}, {"run_subcommand", sub}};

    std::string header;
    auto raw = io::read_csv(dir / "snapshots.csv", &header);
    struct Snap {
        double t = 0.0;
        std::vector<double> coord, u;
    };
    std::vector<Snap> snaps;
    for (const auto& r : raw) {
        if (r.size() < 3) throw DomainError("compare: snapshots.csv needs 3 columns");
        if (snaps.empty() || r[0] != snaps.back().t) snaps.push_back({r[0], {}, {}});
        snaps.back().coord.push_back(r[1]);
        snaps.back().u.push_back(r[2]);
    }
    if (snaps.empty()) throw DomainError("compare: no snapshots in " + f.run);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::vector<double>> out_rows;
    double final_error = nan;
    if (sub == "simulate") {
        const double eps = man.at("parameters").at("eps").get<double>();
        const double len = man.at("parameters").at("L").get<double>();
        const double a = man.at("diagnostics").at("a_simplex").get<double>();
        const double ln2 = std::log(2.0);
        const double rate = a / (ln2 * ln2); // front-speed constant of the base-2 scheme
        for (const auto& sn : snaps) {
            double t_eff = rate * sn.t;
            double err = nan;
            if (t_eff > 0.0) {
                double acc = 0.0;
                double rt = std::sqrt(t_eff);
                for (std::size_t i = 0; i < sn.u.size(); ++i)
                    acc += std::abs(sn.u[i] - ref::nwave(sn.coord[i] / rt, f.nwave_mass) / rt);
                acc *= eps;
                // N-wave mass sitting beyond the simulated domain
                if (2.0 * std::sqrt(f.nwave_mass * t_eff) > len)
                    acc += f.nwave_mass - len * len / (4.0 * t_eff);
                err = acc;
            }
            std::cout << "t=" << io::format_double(sn.t)
                      << " t_eff=" << io::format_double(t_eff)
                      << " nwave_error=" << io::format_double(err) << '\n';
            out_rows.push_back({sn.t, t_eff, err});
            final_error = err;
        }
        if (sink_kind(ctx.out) != SinkKind::Stdout)
            emit_table(ctx.out, "compare.csv", "t,t_eff,error", out_rows);
    } else if (sub == "lattice") {
        for (const auto& sn : snaps) {
            double err = nan;
            if (sn.t > 0.0) {
                lattice::LatticeState st;
                st.j_min = static_cast<int>(std::llround(sn.coord.front()));
                st.u = sn.u;
                st.t = sn.t;
                err = lattice::nwave_error(st, f.nwave_mass);
            }
            std::cout << "t=" << io::format_double(sn.t)
                      << " nwave_error=" << io::format_double(err) << '\n';
            out_rows.push_back({sn.t, err});
            final_error = err;
        }
        if (sink_kind(ctx.out) != SinkKind::Stdout)
            emit_table(ctx.out, "compare.csv", "t,error", out_rows);
    } else {
        throw DomainError("compare: run directory was not produced by simulate or lattice");
    }
    ctx.diagnostics = {{"snapshots", out_rows.size()}, {"final_error", final_error}};
}

// Resolve --config into extra tokens inserted right after the subcommand so
// explicit flags, parsed later, win under the take-last policy.
std::vector<std::string> with_config_defaults(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string cfg_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) cfg_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) cfg_path = args[i].substr(9);
    }
    if (cfg_path.empty()) return args;

    std::ifstream in(cfg_path);
    if (!in) throw coag::DomainError("cannot open config file " + cfg_path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw coag::DomainError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object())
        throw coag::DomainError("config must be a JSON object of flag/value pairs");

    std::vector<std::string> extra;
    for (const auto& [key, val] : j.items()) {
        extra.push_back("--" + key);
        if (val.is_string()) extra.push_back(val.get<std::string>());
        else if (val.is_boolean()) extra.push_back(val.get<bool>() ? "true" : "false");
        else if (val.is_number_integer()) extra.push_back(std::to_string(val.get<long long>()));
        else if (val.is_number()) extra.push_back(coag::io::format_double(val.get<double>()));
        else throw coag::DomainError("config value for '" + key + "' must be a scalar");
    }

    static const std::set<std::string> subs = {"simulate", "lattice",  "spectrum",
                                               "roots",    "reference", "compare"};
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (subs.count(args[i])) {
            args.insert(args.begin() + i + 1, extra.begin(), extra.end());
            return args;
        }
    }
    throw coag::DomainError("--config requires a subcommand");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for homogeneity-one coagulation dynamics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", coag::version);

    std::string out, config;
    int threads = 0;
    app.add_option("--out", out,
                   "output file (.csv/.json) or directory (adds manifest.json)")
        ->take_last();
    app.add_option("--threads", threads, "worker threads, 0 = all hardware threads")
        ->envname("COAG_THREADS")
        ->take_last();
    app.add_option("--config", config, "JSON file of default flag values; explicit flags win")
        ->take_last();

    SimulateFlags simf;
    auto* sim = app.add_subcommand("simulate", "explicit scheme for the collision dynamics");
    sim->fallthrough();
    sim->add_option("--alpha", simf.alpha, "kernel exponent")->take_last();
    sim->add_option("--eps", simf.eps, "grid spacing")->take_last();
    sim->add_option("--L", simf.L, "domain length")->take_last();
    sim->add_option("--R", simf.R, "interaction radius")->take_last();
    sim->add_option("--tau", simf.tau, "time step, 0 = half the stability cap")->take_last();
    sim->add_option("--t-end", simf.t_end, "final time")->take_last();
    sim->add_option("--snap", simf.snap, "snapshot cadence")->take_last();
    sim->add_option("--init", simf.init, "riemann | bump | file")
        ->check(CLI::IsMember({"riemann", "bump", "file"}))
        ->take_last();
    sim->add_option("--c-minus", simf.c_minus, "left plateau height")->take_last();
    sim->add_option("--x0", simf.x0, "ramp start")->take_last();
    sim->add_option("--ramp-width", simf.ramp_width, "ramp width, 0 = 5 eps")->take_last();
    sim->add_option("--bump-mass", simf.bump_mass)->take_last();
    sim->add_option("--bump-center", simf.bump_center)->take_last();
    sim->add_option("--bump-width", simf.bump_width)->take_last();
    sim->add_option("--file", simf.file, "CSV of initial samples (last column = u)")->take_last();

    LatticeFlags latf;
    auto* lat = app.add_subcommand("lattice", "diagonal-kernel lattice dynamics");
    lat->fallthrough();
    lat->add_option("--init", latf.init, "box | riemann | file")
        ->check(CLI::IsMember({"box", "riemann", "file"}))
        ->take_last();
    lat->add_option("--mass", latf.mass, "box mass")->take_last();
    lat->add_option("--width", latf.width, "box width in sites")->take_last();
    lat->add_option("--j-start", latf.j_start, "box start site")->take_last();
    lat->add_option("--c-left", latf.c_left, "riemann left state")->take_last();
    lat->add_option("--left-constant", latf.left_constant, "left state for file data")->take_last();
    lat->add_option("--t-end", latf.t_end, "final time")->take_last();
    lat->add_option("--snap", latf.snap, "snapshot cadence")->take_last();
    lat->add_option("--tol", latf.tol, "integrator tolerance")->take_last();
    lat->add_option("--window", latf.window, "initial window size in sites")->take_last();
    lat->add_option("--file", latf.file, "CSV of initial sites j,u")->take_last();

    SpectrumFlags spef;
    auto* spe = app.add_subcommand("spectrum", "growth rate M(k) of the constant wave");
    spe->fallthrough();
    spe->add_option("--alpha", spef.alpha, "kernel exponent")->required()->take_last();
    spe->add_option("--k-max", spef.k_max)->take_last();
    spe->add_option("--dk", spef.dk)->take_last();
    spe->add_option("--method", spef.method, "closed | quadrature")
        ->check(CLI::IsMember({"closed", "quadrature"}))
        ->take_last();
    spe->add_option("--norm", spef.norm, "aunit | simplex (quadrature only)")
        ->check(CLI::IsMember({"aunit", "simplex"}))
        ->take_last();

    RootsFlags roof;
    auto* roo = app.add_subcommand("roots", "dispersion-relation roots in the lower half plane");
    roo->fallthrough();
    roo->add_option("--alpha", roof.alpha, "kernel exponent")->required()->take_last();
    roo->add_option("--re-min", roof.opts.re_min)->take_last();
    roo->add_option("--re-max", roof.opts.re_max)->take_last();
    roo->add_option("--im-min", roof.opts.im_min)->take_last();
    roo->add_option("--im-max", roof.opts.im_max)->take_last();
    roo->add_option("--seed-step", roof.opts.seed_step)->take_last();
    roo->add_option("--accept-residual", roof.opts.accept_residual)->take_last();

    ReferenceFlags reff;
    auto* ref_cmd = app.add_subcommand("reference", "closed-form comparison profiles");
    ref_cmd->fallthrough();
    ref_cmd->add_option("--profile", reff.profile, "g1 | grho | nwave")
        ->required()
        ->check(CLI::IsMember({"g1", "grho", "nwave"}))
        ->take_last();
    ref_cmd->add_option("--rho", reff.rho, "tail exponent, grho only")->take_last();
    ref_cmd->add_option("--n-terms", reff.n_terms, "series truncation, grho only")->take_last();
    ref_cmd->add_option("--mass", reff.mass, "nwave mass")->take_last();
    ref_cmd->add_option("--x-min", reff.x_min)->take_last();
    ref_cmd->add_option("--x-max", reff.x_max)->take_last();
    ref_cmd->add_option("--dx", reff.dx)->take_last();

    CompareFlags cmpf;
    auto* cmp = app.add_subcommand("compare", "N-wave error of a recorded run");
    cmp->fallthrough();
    cmp->add_option("--run", cmpf.run, "directory of a simulate or lattice run")
        ->required()
        ->take_last();
    cmp->add_option("--nwave-mass", cmpf.nwave_mass, "mass of the comparison N-wave")
        ->required()
        ->take_last();

    std::vector<std::string> args;
    try {
        args = with_config_defaults(argc, argv);
    } catch (const coag::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    std::vector<const char*> cargs;
    cargs.push_back(argv[0]);
    for (const auto& s : args) cargs.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    RunContext ctx;
    ctx.out = out;
    const int n_threads =
        threads > 0 ? threads
                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const auto t0 = std::chrono::steady_clock::now();
    int code = 0;
    try {
        if (app.got_subcommand(sim)) {
            ctx.subcommand = "simulate";
            run_simulate(ctx, simf, n_threads);
        } else if (app.got_subcommand(lat)) {
            ctx.subcommand = "lattice";
            run_lattice(ctx, latf);
        } else if (app.got_subcommand(spe)) {
            ctx.subcommand = "spectrum";
            run_spectrum(ctx, spef);
        } else if (app.got_subcommand(roo)) {
            ctx.subcommand = "roots";
            run_roots(ctx, roof);
        } else if (app.got_subcommand(ref_cmd)) {
            ctx.subcommand = "reference";
            run_reference(ctx, reff);
        } else if (app.got_subcommand(cmp)) {
            ctx.subcommand = "compare";
            run_compare(ctx, cmpf);
        }
    } catch (const coag::Error& e) {
        code = dynamic_cast<const coag::DomainError*>(&e) ? 2 : 3;
        std::cerr << "error: " << e.what() << '\n';
        ctx.error = {{"type", error_kind(e)}, {"message", e.what()}};
    } catch (const std::exception& e) {
        code = 3;
        std::cerr << "error: " << e.what() << '\n';
        ctx.error = {{"type", "Unexpected"}, {"message", e.what()}};
    }

    if (sink_kind(ctx.out) == SinkKind::Dir && !ctx.subcommand.empty()) {
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        json man = {{"subcommand", ctx.subcommand}, {"version", coag::version},
                    {"parameters", ctx.params},     {"diagnostics", ctx.diagnostics},
                    {"wall_time_seconds", wall},    {"exit_code", code}};
        if (!ctx.kernel.empty()) man["kernel"] = ctx.kernel;
        if (!ctx.error.empty()) man["error"] = ctx.error;
        try {
            fs::create_directories(ctx.out);
            std::ofstream f(fs::path(ctx.out) / "manifest.json");
            f << man.dump(2) << '\n';
        } catch (const std::exception& e) {
            std::cerr << "error: manifest write failed: " << e.what() << '\n';
            if (code == 0) code = 3;
        }
    }
    return code;
}
