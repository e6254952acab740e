#ifndef PSPIN_HOPFLAX_HPP
#define PSPIN_HOPFLAX_HPP

#include <utility>
#include <vector>

#include "pspin/mixture.hpp"
#include "pspin/parisi.hpp"
#include "pspin/rs_at.hpp"

namespace pspin {

// Hopf-Lax upper-bound evaluation at h = 0.
struct BoundReport {
    double t = 0.0;                                // beta^2 / 2
    std::vector<std::pair<double, double>> l_grid; // (l, bound) pairs
    double best_l = 0.0;
    double best_bound = 0.0;
    double rs_value = 0.0;  // t * xi0(1)
    double margin = 0.0;    // rs_value - best_bound; > 0 certifies non-RS
};

struct BoundOptions {
    double l_min = 1e-6;
    double l_max = 10.0;
    int l_points = 200;  // log-spaced grid (l = 0 is always prepended)
    int quad_order = 60;
};

// Enriched free energy at beta = 0: F1(0,l) = -E log cosh(sqrt(2l) z) + l.
double enriched_f1(double l, int quad_order = 60);

// t xi0(1) - F1(0,l) + t xi0*(l/t); at l = 0 this is exactly the RS value.
double hopflax_bound(const MixtureSpec& spec, const CouplingParams& params, double l,
                     int quad_order = 60);

// Minimize the bound over l >= 0 on a log-spaced grid with golden-section
// refinement.
BoundReport best_bound(const MixtureSpec& spec, const CouplingParams& params,
                       const BoundOptions& opts = {});

struct CounterexampleOptions {
    double cert_margin = 1e-3;
    int k_max = 1;
    KrsbOptions krsb{};
    double rs_gap_tol = 1e-6;
    BoundOptions bound{};
    RootScanOptions root{};
    MinimizeOptions minimize{};
};

// Theorem-1 witness search: the smallest C in the grid whose Hopf-Lax margin
// certifies non-RS, together with the AT verdict and the k-RSB gap report
// for the certified model.
struct CounterexampleResult {
    bool found = false;
    double c_min = 0.0;
    double beta = 0.0;
    int p = 0;
    double best_margin_seen = 0.0;
    BoundReport certificate;
    ATReport at_report;
    GapReport gap_report;
};

CounterexampleResult counterexample_search(double beta, int p,
                                           const std::vector<double>& c_grid,
                                           const CounterexampleOptions& opts = {});

struct BetaCOptions {
    double width = 1e-3;  // final bracket width
    int k_max = 1;
    KrsbOptions krsb{};
    double rs_gap_tol = 1e-6;
};

// Bisection estimate of beta_c = sup{beta : (beta, 0) in RS} using the
// rs_gap verdict.  The supplied bracket must satisfy rs_gap(beta_lo) = RS
// and rs_gap(beta_hi) = non-RS.
double beta_c_bisect(const MixtureSpec& spec, double h, double beta_lo, double beta_hi,
                     const BetaCOptions& opts = {});

}  // namespace pspin

#endif
