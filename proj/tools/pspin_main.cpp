// Command-line surface for the p-spin laboratory: AT checks, Parisi
// functional evaluation, k-RSB optimization, Hopf-Lax bounds, counterexample
// search, finite-N Monte Carlo, and (beta, h) phase-diagram scans.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "pspin/errors.hpp"
#include "pspin/finite_n.hpp"
#include "pspin/hopflax.hpp"
#include "pspin/json_io.hpp"
#include "pspin/mixture.hpp"
#include "pspin/parisi.hpp"
#include "pspin/quad.hpp"
#include "pspin/rs_at.hpp"
#include "pspin/scan.hpp"

namespace {

using pspin::json;

struct Settings {
    pspin::RootScanOptions root{};
    pspin::MinimizeOptions minimize{};
    pspin::KrsbOptions krsb{};
    pspin::BoundOptions bound{};
    pspin::PDEGrid pde{};
    double rs_gap_tol = 1e-6;
    double cert_margin = 1e-3;
    double beta_c_width = 1e-3;
    int k_max = 1;
    int threads = 1;
    std::uint64_t seed = 7;
    int quad_order = 60;
};

template <typename T>
void maybe(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j[key].get<T>();
}

void apply_tolerances(const json& tol, Settings& s) {
    maybe(tol, "quad_order", s.quad_order);
    maybe(tol, "grid_points", s.root.grid_points);
    maybe(tol, "grid_points", s.minimize.grid_points);
    maybe(tol, "root_bisect_tol", s.root.bisect_tol);
    maybe(tol, "root_tangent_tol", s.root.tangent_tol);
    maybe(tol, "root_sep", s.root.root_sep);
    maybe(tol, "min_value_tol", s.minimize.value_tol);
    maybe(tol, "min_sep_tol", s.minimize.sep_tol);
    maybe(tol, "golden_tol", s.minimize.golden_tol);
    maybe(tol, "nm_starts", s.krsb.starts);
    maybe(tol, "nm_value_tol", s.krsb.value_tol);
    maybe(tol, "nm_param_tol", s.krsb.param_tol);
    maybe(tol, "nm_max_evals", s.krsb.max_evals);
    maybe(tol, "atom_merge_tol", s.krsb.merge_tol);
    maybe(tol, "rs_gap_tol", s.rs_gap_tol);
    maybe(tol, "cert_margin", s.cert_margin);
    maybe(tol, "beta_c_width", s.beta_c_width);
    maybe(tol, "l_min", s.bound.l_min);
    maybe(tol, "l_max", s.bound.l_max);
    maybe(tol, "l_points", s.bound.l_points);
    maybe(tol, "pde_x_max", s.pde.x_max);
    maybe(tol, "pde_nx", s.pde.nx);
    maybe(tol, "pde_nr", s.pde.nr);
    maybe(tol, "pde_cfl", s.pde.cfl);
    s.root.quad_order = s.quad_order;
    s.minimize.quad_order = s.quad_order;
    s.krsb.quad_order = s.quad_order;
    s.bound.quad_order = s.quad_order;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw pspin::PreconditionError("cannot open output file " + out_path);
        out << text;
    }
}

std::vector<double> parse_grid(const std::string& csv) {
    std::vector<double> vals;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            vals.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) vals.push_back(std::stod(cur));
    return vals;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixed p-spin laboratory: Parisi functional, AT criterion, "
                 "Hopf-Lax bounds, finite-N oracle"};
    app.require_subcommand(1);
    // --h is a model option everywhere, so help lives on --help alone
    app.set_help_flag("--help", "print help");

    std::string config_path, out_path;
    Settings set;
    app.add_option("--config", config_path, "JSON config {model, params, scan, tolerances, seed}");
    app.add_option("--out", out_path, "write result to this file (csv or json)");
    app.add_option("--threads", set.threads, "worker pool width");
    app.add_option("--seed", set.seed, "base seed for optimizer starts / MC");

    std::string spec_str = "sk";
    double beta = 1.0, h = 0.0;
    auto add_model_opts = [&](CLI::App* cmd, bool with_h = true) {
        cmd->set_help_flag("--help", "print help");
        cmd->add_option("--spec", spec_str, "mixture: sk, sk+p4c5, pure-p4, JSON, or file");
        cmd->add_option("--beta", beta, "inverse temperature");
        if (with_h) cmd->add_option("--h", h, "external field");
    };

    auto* at_check = app.add_subcommand("at-check", "Q*, alpha, and the AT verdict");
    add_model_opts(at_check);

    auto* parisi_eval = app.add_subcommand("parisi-eval", "Parisi functional of a measure");
    add_model_opts(parisi_eval);
    std::string measure_str = R"({"atoms": [[0.0, 1.0]]})";
    parisi_eval->add_option("--measure", measure_str, "RSBMeasure JSON or file");
    bool with_pde = false;
    parisi_eval->add_flag("--pde", with_pde, "also run the PDE oracle");

    auto* rsb_opt = app.add_subcommand("rsb-optimize", "best (k+1)-atom measure");
    add_model_opts(rsb_opt);
    int k = 1;
    rsb_opt->add_option("--k", k, "RSB depth (atoms = k+1)");

    auto* hopflax_cmd = app.add_subcommand("hopflax", "Hopf-Lax upper bound at h = 0");
    add_model_opts(hopflax_cmd, false);
    double l_point = -1.0;
    hopflax_cmd->add_option("--l", l_point, "evaluate at a single l instead of optimizing");

    auto* counter = app.add_subcommand("counterexample", "Theorem-1 witness search");
    double ce_beta = 0.9;
    int ce_p = 4;
    std::string c_grid_str = "5,10,20,40,80";
    counter->add_option("--beta", ce_beta, "inverse temperature in (0,1)");
    counter->add_option("--p", ce_p, "even p >= 4");
    counter->add_option("--c-grid", c_grid_str, "increasing C grid, comma-separated");

    auto* beta_c = app.add_subcommand("beta-c", "bisect the RS/non-RS boundary in beta");
    add_model_opts(beta_c);
    double beta_lo = 0.05, beta_hi = 0.9;
    beta_c->add_option("--beta-lo", beta_lo, "RS end of the bracket");
    beta_c->add_option("--beta-hi", beta_hi, "non-RS end of the bracket");
    beta_c->add_option("--k-max", set.k_max, "RSB depth for the verdict");

    auto* finite_n = app.add_subcommand("finite-n", "exact-enumeration disorder MC");
    add_model_opts(finite_n);
    int n_spins = 12, n_samples = 200;
    finite_n->add_option("--n", n_spins, "system size (<= 16)");
    finite_n->add_option("--samples", n_samples, "disorder samples");

    auto* phase = app.add_subcommand("phase-diagram", "PhaseCell grid over (beta, h)");
    phase->add_option("--spec", spec_str, "mixture spec");
    double beta_min = 0.2, beta_max = 1.4, h_min = 0.0, h_max = 0.0;
    int n_beta = 13, n_h = 1;
    phase->add_option("--beta-min", beta_min);
    phase->add_option("--beta-max", beta_max);
    phase->add_option("--n-beta", n_beta);
    phase->add_option("--h-min", h_min);
    phase->add_option("--h-max", h_max);
    phase->add_option("--n-h", n_h);
    phase->add_option("--k-max", set.k_max, "RSB depth per cell");

    for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        std::optional<json> config;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw pspin::PreconditionError("cannot read config " + config_path);
            json j;
            in >> j;
            config = j;
            if (j.contains("tolerances")) apply_tolerances(j["tolerances"], set);
            if (j.contains("seed")) set.seed = j["seed"].get<std::uint64_t>();
            if (j.contains("model") && j["model"].contains("spec"))
                spec_str = j["model"]["spec"].get<std::string>();
            if (j.contains("model") && j["model"].contains("terms"))
                spec_str = j["model"].dump();
            if (j.contains("params")) {
                maybe(j["params"], "beta", beta);
                maybe(j["params"], "h", h);
            }
            if (j.contains("scan")) {
                const auto& sc = j["scan"];
                maybe(sc, "beta_min", beta_min);
                maybe(sc, "beta_max", beta_max);
                maybe(sc, "n_beta", n_beta);
                maybe(sc, "h_min", h_min);
                maybe(sc, "h_max", h_max);
                maybe(sc, "n_h", n_h);
                maybe(sc, "k_max", set.k_max);
            }
        }
        set.krsb.seed = set.seed;
        set.krsb.threads = set.threads;

        if (at_check->parsed()) {
            const auto spec = pspin::parse_spec_string(spec_str);
            const pspin::CouplingParams params{beta, h};
            emit(pspin::to_json(pspin::alpha_report(spec, params, set.root, set.minimize))
                     .dump(2),
                 out_path);
        } else if (parisi_eval->parsed()) {
            const auto spec = pspin::parse_spec_string(spec_str);
            const pspin::CouplingParams params{beta, h};
            if (measure_str.empty())
                throw pspin::PreconditionError("empty --measure");
            json mj = measure_str.front() == '{' ? json::parse(measure_str) : [&] {
                std::ifstream in(measure_str);
                if (!in)
                    throw pspin::PreconditionError("cannot read measure " + measure_str);
                json j;
                in >> j;
                return j;
            }();
            const auto measure = pspin::measure_from_json(mj);
            json out{{"value", pspin::parisi_value(measure, spec, params, set.quad_order)}};
            if (with_pde) {
                const auto sol = pspin::parisi_pde_detail(measure, spec, params, set.pde);
                out["pde_value"] = sol.value;
                out["pde_max_abs_slope"] = sol.max_abs_slope;
            }
            emit(out.dump(2), out_path);
        } else if (rsb_opt->parsed()) {
            const auto spec = pspin::parse_spec_string(spec_str);
            const pspin::CouplingParams params{beta, h};
            const auto res = pspin::optimize_krsb(k, spec, params, set.krsb);
            json atoms = json::array();
            for (size_t i = 0; i < res.atoms.size(); ++i)
                atoms.push_back({res.atoms[i], res.weights[i]});
            emit(json{{"k", k}, {"value", res.value}, {"measure", {{"atoms", atoms}}}}.dump(2),
                 out_path);
        } else if (hopflax_cmd->parsed()) {
            const auto spec = pspin::parse_spec_string(spec_str);
            const pspin::CouplingParams params{beta, 0.0};
            if (l_point >= 0.0) {
                emit(json{{"l", l_point},
                          {"bound", pspin::hopflax_bound(spec, params, l_point,
                                                         set.quad_order)}}
                         .dump(2),
                     out_path);
            } else {
                emit(pspin::to_json(pspin::best_bound(spec, params, set.bound)).dump(2),
                     out_path);
            }
        } else if (counter->parsed()) {
            pspin::CounterexampleOptions co;
            co.cert_margin = set.cert_margin;
            co.k_max = set.k_max;
            co.krsb = set.krsb;
            co.rs_gap_tol = set.rs_gap_tol;
            co.bound = set.bound;
            co.root = set.root;
            co.minimize = set.minimize;
            const auto res =
                pspin::counterexample_search(ce_beta, ce_p, parse_grid(c_grid_str), co);
            emit(pspin::to_json(res).dump(2), out_path);
        } else if (beta_c->parsed()) {
            const auto spec = pspin::parse_spec_string(spec_str);
            pspin::BetaCOptions bo;
            bo.width = set.beta_c_width;
            bo.k_max = set.k_max;
            bo.krsb = set.krsb;
            bo.rs_gap_tol = set.rs_gap_tol;
            const double bc = pspin::beta_c_bisect(spec, h, beta_lo, beta_hi, bo);
            emit(json{{"beta_c", bc}, {"width", bo.width}}.dump(2), out_path);
        } else if (finite_n->parsed()) {
            const auto spec = pspin::parse_spec_string(spec_str);
            const pspin::CouplingParams params{beta, h};
            emit(pspin::to_json(
                     pspin::free_energy_mc(spec, params, n_spins, n_samples, set.seed))
                     .dump(2),
                 out_path);
        } else if (phase->parsed()) {
            const auto spec = pspin::parse_spec_string(spec_str);
            pspin::ScanOptions so;
            so.k_max = set.k_max;
            so.seed = set.seed;
            so.threads = set.threads;
            so.rs_gap_tol = set.rs_gap_tol;
            so.krsb = set.krsb;
            so.krsb.threads = 1;  // cells are the parallel unit
            so.root = set.root;
            so.minimize = set.minimize;
            const auto cells = pspin::phase_grid(spec, beta_min, beta_max, n_beta, h_min,
                                                 h_max, n_h, so);
            const bool csv = out_path.empty() || out_path.ends_with(".csv");
            if (csv) {
                emit(pspin::phase_csv(cells), out_path);
            } else {
                json arr = json::array();
                for (const auto& c : cells) arr.push_back(pspin::to_json(c));
                emit(arr.dump(2), out_path);
            }
        }
        return 0;
    } catch (const pspin::PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return 2;
    } catch (const pspin::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
