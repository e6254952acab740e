#include "pspin/hopflax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pspin/errors.hpp"
#include "pspin/quad.hpp"

namespace pspin {

double enriched_f1(double l, int quad_order) {
    if (!(l >= 0.0)) throw PreconditionError("enriched_f1: l must be >= 0");
    const double e = expect_affine(quad_order, [](double x) { return log_cosh(x); },
                                   std::sqrt(2.0 * l), 0.0);
    const double v = l - e;
    if (v < -1e-12)
        throw NumericError("enriched_f1: value " + std::to_string(v) +
                           " violates the Jensen lower bound");
    return v;
}

double hopflax_bound(const MixtureSpec& spec, const CouplingParams& params, double l,
                     int quad_order) {
    const double t = params.t();
    if (!(t > 0.0)) throw PreconditionError("hopflax_bound: requires beta > 0");
    if (!(l >= 0.0)) throw PreconditionError("hopflax_bound: l must be >= 0");
    return t * spec.eval(1.0) - enriched_f1(l, quad_order) + t * conjugate(spec, l / t).value;
}

BoundReport best_bound(const MixtureSpec& spec, const CouplingParams& params,
                       const BoundOptions& opts) {
    const double t = params.t();
    if (!(t > 0.0)) throw PreconditionError("best_bound: requires beta > 0");

    BoundReport rep;
    rep.t = t;
    rep.rs_value = t * spec.eval(1.0);

    auto bound = [&](double l) { return hopflax_bound(spec, params, l, opts.quad_order); };

    rep.l_grid.emplace_back(0.0, bound(0.0));
    const double lr = std::log(opts.l_max / opts.l_min);
    for (int i = 0; i < opts.l_points; ++i) {
        const double l =
            opts.l_min * std::exp(lr * static_cast<double>(i) / (opts.l_points - 1));
        rep.l_grid.emplace_back(l, bound(l));
    }

    size_t best = 0;
    for (size_t i = 1; i < rep.l_grid.size(); ++i)
        if (rep.l_grid[i].second < rep.l_grid[best].second) best = i;
    rep.best_l = rep.l_grid[best].first;
    rep.best_bound = rep.l_grid[best].second;

    // golden-section refinement around the grid minimum
    const double inv_phi = 0.6180339887498948482;
    double a = rep.l_grid[best > 0 ? best - 1 : 0].first;
    double b = rep.l_grid[std::min(best + 1, rep.l_grid.size() - 1)].first;
    if (b > a) {
        double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
        double f1 = bound(x1), f2 = bound(x2);
        while (b - a > 1e-12 * std::max(1.0, b)) {
            if (f1 <= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = bound(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = bound(x2);
            }
        }
        const double xm = 0.5 * (a + b);
        const double fm = bound(xm);
        if (fm < rep.best_bound) {
            rep.best_bound = fm;
            rep.best_l = xm;
        }
    }
    rep.margin = rep.rs_value - rep.best_bound;
    return rep;
}

CounterexampleResult counterexample_search(double beta, int p,
                                           const std::vector<double>& c_grid,
                                           const CounterexampleOptions& opts) {
    if (!(beta > 0.0 && beta < 1.0))
        throw PreconditionError("counterexample_search: beta must lie in (0, 1)");
    if (p < 4 || p % 2 != 0)
        throw PreconditionError("counterexample_search: p must be an even integer >= 4");
    if (c_grid.empty() || !std::is_sorted(c_grid.begin(), c_grid.end()))
        throw PreconditionError("counterexample_search: c_grid must be increasing");

    CounterexampleResult res;
    res.beta = beta;
    res.p = p;
    res.best_margin_seen = -std::numeric_limits<double>::infinity();
    const CouplingParams params{beta, 0.0};
    for (double c : c_grid) {
        const auto spec = MixtureSpec::sk_plus_p(p, c);
        const auto rep = best_bound(spec, params, opts.bound);
        res.best_margin_seen = std::max(res.best_margin_seen, rep.margin);
        if (rep.margin > opts.cert_margin) {
            res.found = true;
            res.c_min = c;
            res.certificate = rep;
            res.at_report = alpha_report(spec, params, opts.root, opts.minimize);
            res.gap_report = rs_gap(spec, params, opts.k_max, opts.krsb, opts.rs_gap_tol);
            return res;
        }
    }
    return res;
}

double beta_c_bisect(const MixtureSpec& spec, double h, double beta_lo, double beta_hi,
                     const BetaCOptions& opts) {
    if (!(beta_lo >= 0.0 && beta_hi > beta_lo))
        throw PreconditionError("beta_c_bisect: need 0 <= beta_lo < beta_hi");
    auto is_rs = [&](double beta) {
        const CouplingParams params{beta, h};
        return rs_gap(spec, params, opts.k_max, opts.krsb, opts.rs_gap_tol).rs_member;
    };
    if (!is_rs(beta_lo))
        throw PreconditionError("beta_c_bisect: bracket invalid, beta_lo is not RS");
    if (is_rs(beta_hi))
        throw PreconditionError("beta_c_bisect: bracket invalid, beta_hi is RS");
    double lo = beta_lo, hi = beta_hi;
    while (hi - lo > opts.width) {
        const double mid = 0.5 * (lo + hi);
        if (is_rs(mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace pspin
