// resonance-atlas — command-line front end: locate resonances, sweep
// parameters, solve the critical coupling, emit the discrete-sector data,
// and run the regression suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "ratlas/continuation.hpp"
#include "ratlas/discrete.hpp"
#include "ratlas/hydrogen.hpp"
#include "ratlas/io.hpp"
#include "ratlas/parallel.hpp"
#include "ratlas/rootfind.hpp"
#include "ratlas/selftest.hpp"

namespace {

using nlohmann::json;
using namespace ratlas;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct GlobalOpts {
    std::string out_dir;
    bool as_json = false;
    bool quiet = false;
};

void emit(const GlobalOpts& g, const std::string& human, const json& report,
          const std::string& file_stem) {
    if (!g.quiet) {
        if (g.as_json)
            std::cout << report.dump(2) << "\n";
        else
            std::cout << human;
    }
    if (!g.out_dir.empty())
        io::write_file_atomic(g.out_dir + "/" + file_stem + ".json",
                              report.dump(2) + "\n");
}

json zero_to_json(const RootResult& r) {
    return json{{"re", r.zeta.real()},
                {"im", r.zeta.imag()},
                {"sheet", to_string(r.sheet)},
                {"label", to_string(r.label)},
                {"iterations", r.iterations},
                {"residual", r.residual}};
}

CouplingFamily family_from_name(const std::string& name, int n) {
    if (name == "lorentzian") return CouplingFamily::lorentzian_squared();
    if (name == "simplepole") return CouplingFamily::simple_pole();
    if (name == "hydrogen") return CouplingFamily::hydrogen_circular(n);
    throw DomainError("unknown family: " + name);
}

int cmd_find(const GlobalOpts& g, const std::string& family_name, int n,
             double kappa, double mu, double delta, bool classify_zeros) {
    json report{{"version", io::kVersion}};
    std::string human;

    if (family_name == "hydrogen") {
        const auto t = hydrogen::transition(n);
        const auto [zs, zns] = hydrogen::hydrogen_resonances(n);
        report["inputs"] = {{"family", "hydrogen"}, {"n", n},
                            {"kappa_n", t.kappa_n}, {"mu_n", t.mu_n}};
        report["outputs"] = {{"zeros", json::array({zero_to_json(zs),
                                                    zero_to_json(zns)})}};
        report["residuals"] = json::array({zs.residual, zns.residual});
        human = "standard:    " + io::format_double(zs.zeta.real()) + " " +
                io::format_double(zs.zeta.imag()) + "i\nnonstandard: " +
                io::format_double(zns.zeta.real()) + " " +
                io::format_double(zns.zeta.imag()) + "i\n";
        emit(g, human, report, "find");
        return kExitOk;
    }

    const auto fam = family_from_name(family_name, n);
    const auto p = make_params(kappa, mu, delta);
    auto zeros = rootfind::find_all(p, fam);
    if (classify_zeros) {
        for (auto& z : zeros)
            if (z.sheet == Sheet::Second)
                z.label = continuation::classify(p, fam, z);
    }
    report["inputs"] = {{"family", family_name}, {"kappa", kappa},
                        {"mu", mu}, {"delta", delta}};
    json jz = json::array();
    json jr = json::array();
    for (const auto& z : zeros) {
        jz.push_back(zero_to_json(z));
        jr.push_back(z.residual);
    }
    report["outputs"] = {{"zeros", jz}};
    report["residuals"] = jr;
    for (const auto& z : zeros)
        human += io::format_double(z.zeta.real()) + " " +
                 io::format_double(z.zeta.imag()) + "i  [" +
                 to_string(z.sheet) + ", " + to_string(z.label) + "]\n";
    if (zeros.empty()) human = "no zeros found\n";
    emit(g, human, report, "find");
    return kExitOk;
}

int cmd_sweep(const GlobalOpts& g, const std::string& vary_name, double to,
              int steps, double kappa, double mu, double delta,
              std::optional<double> seed_re, std::optional<double> seed_im,
              const std::string& stem, bool svg) {
    VaryParam vary;
    if (vary_name == "kappa") vary = VaryParam::Kappa;
    else if (vary_name == "mu") vary = VaryParam::Mu;
    else if (vary_name == "delta") vary = VaryParam::Delta;
    else throw DomainError("sweep: --vary must be kappa|mu|delta");

    const auto fam = CouplingFamily::lorentzian_squared();
    const auto p = make_params(kappa, mu, delta);

    std::vector<ComplexEnergy> seeds;
    if (seed_re) {
        seeds.push_back({*seed_re, seed_im.value_or(-1e-4)});
    } else {
        for (const auto& z : rootfind::find_all(p, fam))
            if (z.sheet == Sheet::Second) seeds.push_back(z.zeta);
        if (seeds.empty()) throw NoConvergence("sweep: no starting zeros");
    }

    continuation::TrackOptions to_opts;
    to_opts.partial_on_loss = true;
    to_opts.eval.cut_guard = 1e-15;

    json report{{"version", io::kVersion},
                {"inputs", {{"vary", vary_name}, {"to", to}, {"steps", steps},
                            {"kappa", kappa}, {"mu", mu}, {"delta", delta}}}};
    json branches = json::array();
    const std::string dir = g.out_dir.empty() ? std::string(".") : g.out_dir;

    bool lost = false;
    std::string human;
    std::vector<std::vector<std::pair<double, double>>> svg_branches;
    for (std::size_t b = 0; b < seeds.size(); ++b) {
        const auto traj = continuation::track(p, fam, vary, to, steps,
                                              seeds[b], to_opts);
        const std::string fname =
            dir + "/" + stem + ".branch" + std::to_string(b) + ".csv";
        io::write_file_atomic(fname,
                              io::trajectory_csv(traj, static_cast<int>(b)));
        json jb{{"file", fname},
                {"samples", traj.samples.size()},
                {"end_re", traj.samples.back().root.zeta.real()},
                {"end_im", traj.samples.back().root.zeta.imag()}};
        if (traj.lost_at) {
            jb["tracking_lost_at"] = *traj.lost_at;
            lost = true;
        }
        branches.push_back(jb);
        human += "branch " + std::to_string(b) + ": " +
                 std::to_string(traj.samples.size()) + " samples -> " + fname +
                 (traj.lost_at ? "  (tracking lost at " +
                                     io::format_double(*traj.lost_at) + ")"
                               : std::string()) +
                 "\n";
        std::vector<std::pair<double, double>> pts;
        for (const auto& s : traj.samples)
            pts.push_back({s.root.zeta.real(), s.root.zeta.imag()});
        svg_branches.push_back(std::move(pts));
    }
    if (svg)
        io::write_file_atomic(dir + "/" + stem + ".svg",
                              io::svg_polylines(svg_branches));
    report["outputs"] = {{"branches", branches}};
    report["residuals"] = json::array();
    emit(g, human, report, stem);
    return lost ? kExitNumeric : kExitOk;
}

int cmd_critical(const GlobalOpts& g, double mu) {
    const auto fam = CouplingFamily::lorentzian_squared();
    const auto ep = continuation::critical_coupling(mu, fam);
    const bool verified = std::abs(mu - 0.01) < 1e-12;
    json report{
        {"version", io::kVersion},
        {"inputs", {{"mu", mu}}},
        {"outputs",
         {{"kappa_c", ep.kappa_c},
          {"delta_c", ep.delta_c},
          {"kappa_c_over_mu", ep.kappa_c / mu},
          {"zeta_c_re", ep.zeta_c.real()},
          {"zeta_c_im", ep.zeta_c.imag()},
          {"reference", verified ? "reference value available" : "unverified"}}},
        {"residuals", {{"f", ep.condition_residuals.first},
                       {"df", ep.condition_residuals.second}}}};
    const std::string human =
        "kappa_c = " + io::format_double(ep.kappa_c) +
        "  (kappa_c/mu = " + io::format_double(ep.kappa_c / mu) +
        ")\ndelta_c = " + io::format_double(ep.delta_c) + "\nzeta_c  = " +
        io::format_double(ep.zeta_c.real()) + " " +
        io::format_double(ep.zeta_c.imag()) + "i\n" +
        (verified ? "" : "note: no reference value for this mu\n");
    emit(g, human, report, "critical");
    return kExitOk;
}

int cmd_discrete(const GlobalOpts& g, double kappa, double mu, double dmin,
                 double dmax, int steps, bool dressed) {
    const std::string dir = g.out_dir.empty() ? std::string(".") : g.out_dir;
    json report{{"version", io::kVersion},
                {"inputs", {{"kappa", kappa}, {"mu", mu}, {"delta_min", dmin},
                            {"delta_max", dmax}, {"steps", steps}}}};
    std::string human;
    if (dressed) {
        std::vector<std::array<double, 3>> rows;
        for (int i = 0; i < steps; ++i) {
            const double d = dmin + (dmax - dmin) * i / (steps - 1.0);
            const auto pr = discrete::dressed_eigenvalues(1, kappa, d);
            rows.push_back({d, pr.zeta_minus, pr.zeta_plus});
        }
        const std::string fname = dir + "/dressed.csv";
        io::write_file_atomic(fname, io::dressed_csv(rows));
        report["outputs"] = {{"file", fname}, {"rows", rows.size()}};
        human = "dressed pair -> " + fname + "\n";
    } else {
        const auto rows = discrete::eigencurves(kappa, mu, {dmin, dmax}, steps);
        const std::string fname = dir + "/discrete.csv";
        io::write_file_atomic(fname, io::eigencurves_csv(rows));
        double gap = discrete::min_gap(kappa, mu, {dmin, dmax}, steps);
        report["outputs"] = {{"file", fname},
                             {"rows", rows.size()},
                             {"min_adjacent_gap", gap}};
        human = "eigenvalue curves -> " + fname +
                "  (min adjacent gap = " + io::format_double(gap) + ")\n";
    }
    report["residuals"] = json::array();
    emit(g, human, report, "discrete");
    return kExitOk;
}

int cmd_hydrogen(const GlobalOpts& g, int n) {
    const auto t = hydrogen::transition(n);
    const auto [zs, zns] = hydrogen::hydrogen_resonances(n);
    const double tau1 = hydrogen::lifetime_seconds(zs.zeta, t, 1);
    const double tau2 = hydrogen::lifetime_seconds(zs.zeta, t, 2);
    json report{
        {"version", io::kVersion},
        {"inputs", {{"n", n}}},
        {"outputs",
         {{"kappa_n", t.kappa_n},
          {"mu_n", t.mu_n},
          {"D_n", t.D_n},
          {"alpha_n", t.alpha_n},
          {"beta_n", t.beta_n},
          {"level_spacing_eV", t.level_spacing_eV},
          {"standard", zero_to_json(zs)},
          {"nonstandard", zero_to_json(zns)},
          {"lifetime_1ch_s", tau1},
          {"lifetime_2ch_s", tau2}}},
        {"residuals", {{"standard", zs.residual}, {"nonstandard", zns.residual}}}};
    std::string human =
        "transition " + std::to_string(n) + " -> " + std::to_string(n - 1) +
        "\n  kappa_n = " + io::format_double(t.kappa_n) +
        "\n  mu_n    = " + io::format_double(t.mu_n) +
        "\n  standard zero    = " + io::format_double(zs.zeta.real()) + " " +
        io::format_double(zs.zeta.imag()) + "i\n  nonstandard zero = " +
        io::format_double(zns.zeta.real()) + " " +
        io::format_double(zns.zeta.imag()) + "i\n  lifetime (2 pol) = " +
        io::format_double(tau2) + " s\n";
    emit(g, human, report, "hydrogen");
    return kExitOk;
}

int cmd_selftest(const GlobalOpts& g, int tamper, int only) {
    selftest::Options so;
    so.tamper_criterion = tamper;
    so.only_criterion = only;
    json jcrit = json::array();
    bool all_pass = true;
    auto progress = [&](const selftest::CriterionResult& r) {
        if (!g.quiet && !g.as_json) {
            std::printf("[%d/9] %s  %s\n      %s\n", r.id,
                        r.pass ? "PASS" : "FAIL", r.name.c_str(),
                        r.detail.c_str());
            std::fflush(stdout);
        }
    };
    const auto results = selftest::run_acceptance(so, progress);
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        jcrit.push_back({{"id", r.id},
                         {"name", r.name},
                         {"pass", r.pass},
                         {"detail", r.detail}});
    }
    json report{{"version", io::kVersion},
                {"inputs", {{"tamper", tamper}}},
                {"outputs", {{"criteria", jcrit}, {"all_pass", all_pass}}},
                {"residuals", json::array()}};
    std::string human = all_pass ? "all criteria passed\n"
                                 : "SOME CRITERIA FAILED\n";
    emit(g, human, report, "selftest");
    return all_pass ? kExitOk : kExitNumeric;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"resonance-atlas: resonances of a two-level system coupled "
                 "to a continuum"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.set_config("--config", "", "key = value config file with per-command "
                                   "sections");

    GlobalOpts g;
    app.add_option("--out", g.out_dir, "directory for output files")
        ->expected(1);
    app.add_flag("--json", g.as_json, "machine-readable stdout");
    app.add_flag("--quiet", g.quiet, "suppress stdout");

    // find
    auto* find = app.add_subcommand("find", "locate resonance zeros");
    std::string f_family = "lorentzian";
    int f_n = 2;
    double f_kappa = 0.1, f_mu = 0.01, f_delta = 0.25;
    bool f_noclassify = false;
    find->add_option("--family", f_family, "lorentzian|simplepole|hydrogen");
    find->add_option("--n", f_n, "hydrogen transition index");
    find->add_option("--kappa", f_kappa, "coupling");
    find->add_option("--mu", f_mu, "half-width");
    find->add_option("--delta", f_delta, "detuning");
    find->add_flag("--no-classify", f_noclassify, "skip kappa->0 labels");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "track zeros along a parameter");
    std::string s_vary = "mu", s_stem = "sweep";
    double s_to = 1.0, s_kappa = 0.1, s_mu = 0.01, s_delta = 0.25;
    int s_steps = 100;
    bool s_svg = false;
    std::optional<double> s_seed_re, s_seed_im;
    sweep->add_option("--vary", s_vary, "kappa|mu|delta")->required();
    sweep->add_option("--to", s_to, "final parameter value")->required();
    sweep->add_option("--steps", s_steps, "nominal step count");
    sweep->add_option("--kappa", s_kappa, "starting coupling");
    sweep->add_option("--mu", s_mu, "starting half-width");
    sweep->add_option("--delta", s_delta, "starting detuning");
    sweep->add_option("--seed-re", s_seed_re, "track one branch from this seed");
    sweep->add_option("--seed-im", s_seed_im, "seed imaginary part");
    sweep->add_option("--stem", s_stem, "output file stem");
    sweep->add_flag("--svg", s_svg, "also write a polyline plot");

    // critical
    auto* critical = app.add_subcommand("critical", "weak/strong boundary");
    double c_mu = 0.01;
    critical->add_option("--mu", c_mu, "half-width")->required();

    // discrete
    auto* disc = app.add_subcommand("discrete", "3-mode and dressed data");
    double d_kappa = 0.1, d_mu = 0.01, d_dmin = -0.5, d_dmax = 0.5;
    int d_steps = 200;
    bool d_dressed = false;
    disc->add_option("--kappa", d_kappa, "coupling");
    disc->add_option("--mu", d_mu, "half-width");
    disc->add_option("--delta-min", d_dmin, "grid start");
    disc->add_option("--delta-max", d_dmax, "grid end");
    disc->add_option("--steps", d_steps, "grid points");
    disc->add_flag("--dressed", d_dressed, "emit the dressed pair instead");

    // hydrogen
    auto* hyd = app.add_subcommand("hydrogen", "circular-transition numbers");
    int h_n = 2;
    hyd->add_option("--n", h_n, "upper principal quantum number");

    // selftest
    auto* st = app.add_subcommand("selftest", "run the acceptance criteria");
    int st_tamper = 0, st_only = 0;
    st->add_option("--tamper", st_tamper, "tighten criterion K to force a "
                                          "reported failure (test mode)")
        ->group("");
    st->add_option("--only", st_only, "run a single criterion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (find->parsed())
            return cmd_find(g, f_family, f_n, f_kappa, f_mu, f_delta,
                            !f_noclassify);
        if (sweep->parsed())
            return cmd_sweep(g, s_vary, s_to, s_steps, s_kappa, s_mu, s_delta,
                             s_seed_re, s_seed_im, s_stem, s_svg);
        if (critical->parsed()) return cmd_critical(g, c_mu);
        if (disc->parsed())
            return cmd_discrete(g, d_kappa, d_mu, d_dmin, d_dmax, d_steps,
                                d_dressed);
        if (hyd->parsed()) return cmd_hydrogen(g, h_n);
        if (st->parsed()) return cmd_selftest(g, st_tamper, st_only);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
