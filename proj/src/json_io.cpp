#include "pspin/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <regex>

#include "pspin/errors.hpp"

namespace pspin {

json to_json(const MixtureSpec& spec) {
    json terms = json::array();
    for (const auto& t : spec.terms()) terms.push_back({t.degree, t.coeff});
    return json{{"terms", terms}};
}

MixtureSpec mixture_from_json(const json& j) {
    if (!j.contains("terms") || !j["terms"].is_array())
        throw PreconditionError("mixture JSON must contain a \"terms\" array");
    std::vector<MixtureTerm> terms;
    for (const auto& t : j["terms"])
        terms.push_back({t.at(0).get<int>(), t.at(1).get<double>()});
    return MixtureSpec(std::move(terms));
}

MixtureSpec parse_spec_string(const std::string& text) {
    if (text == "sk") return MixtureSpec::sk();
    static const std::regex skp(R"(sk\+p(\d+)c([0-9.eE+-]+))");
    static const std::regex pure(R"(pure-p(\d+)(?:c([0-9.eE+-]+))?)");
    std::smatch m;
    if (std::regex_match(text, m, skp))
        return MixtureSpec::sk_plus_p(std::stoi(m[1]), std::stod(m[2]));
    if (std::regex_match(text, m, pure))
        return MixtureSpec::pure_p(std::stoi(m[1]), m[2].matched ? std::stod(m[2]) : 1.0);
    if (!text.empty() && text.front() == '{')
        return mixture_from_json(json::parse(text));
    std::ifstream in(text);
    if (!in)
        throw PreconditionError("unrecognized spec \"" + text +
                                "\" (not a shorthand, inline JSON, or readable file)");
    json j;
    in >> j;
    return mixture_from_json(j);
}

json to_json(const RSBMeasure& measure) {
    json atoms = json::array();
    for (size_t i = 0; i < measure.size(); ++i)
        atoms.push_back({measure.atoms()[i], measure.weights()[i]});
    return json{{"atoms", atoms}};
}

RSBMeasure measure_from_json(const json& j) {
    if (!j.contains("atoms") || !j["atoms"].is_array())
        throw PreconditionError("measure JSON must contain an \"atoms\" array");
    std::vector<double> atoms, weights;
    for (const auto& a : j["atoms"]) {
        atoms.push_back(a.at(0).get<double>());
        weights.push_back(a.at(1).get<double>());
    }
    return RSBMeasure(std::move(atoms), std::move(weights));
}

json to_json(const ATReport& rep) {
    json roots = json::array();
    for (const auto& r : rep.roots) roots.push_back({{"q", r.q}, {"alpha", r.alpha}});
    return json{{"roots", roots},
                {"alpha_min", rep.alpha_min},
                {"at_member", rep.at_member},
                {"rs_minimizers", rep.rs_minimizers},
                {"alpha_at_rs_min", rep.alpha_at_rs_min}};
}

json to_json(const BoundReport& rep) {
    json grid = json::array();
    for (const auto& [l, b] : rep.l_grid) grid.push_back({l, b});
    return json{{"t", rep.t},           {"l_grid", grid},
                {"best_l", rep.best_l}, {"best_bound", rep.best_bound},
                {"rs_value", rep.rs_value}, {"margin", rep.margin}};
}

json to_json(const GapReport& rep) {
    json atoms = json::array();
    for (size_t i = 0; i < rep.best_atoms.size(); ++i)
        atoms.push_back({rep.best_atoms[i], rep.best_weights[i]});
    return json{{"rs_value", rep.rs_value},
                {"krsb_value", rep.krsb_value},
                {"gap", rep.gap},
                {"rs_member", rep.rs_member},
                {"values_by_k", rep.values_by_k},
                {"best_measure", {{"atoms", atoms}}}};
}

json to_json(const MCEstimate& est) {
    return json{{"mean", est.mean},
                {"stderr", est.stderr_},
                {"n", est.n_spins},
                {"samples", est.n_samples}};
}

json to_json(const CounterexampleResult& res) {
    json j{{"found", res.found},
           {"beta", res.beta},
           {"p", res.p},
           {"best_margin_seen", res.best_margin_seen}};
    if (res.found) {
        j["c_min"] = res.c_min;
        j["certificate"] = to_json(res.certificate);
        j["at_report"] = to_json(res.at_report);
        j["gap_report"] = to_json(res.gap_report);
    }
    return j;
}

json to_json(const PhaseCell& cell) {
    json j{{"beta", cell.beta},
           {"h", cell.h},
           {"alpha_min", cell.alpha_min},
           {"at_member", cell.at_member},
           {"rs_value", cell.rs_value},
           {"krsb_value", cell.krsb_value},
           {"gap", cell.gap},
           {"rs_member", cell.rs_member},
           {"alpha_at_rs_min", cell.alpha_at_rs_min},
           {"rs_min_unique", cell.rs_min_unique},
           {"witness", cell.witness},
           {"inclusion_ok", cell.inclusion_ok}};
    if (!cell.error.empty()) j["error"] = cell.error;
    return j;
}

}  // namespace pspin
