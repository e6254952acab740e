#ifndef PSPIN_RS_AT_HPP
#define PSPIN_RS_AT_HPP

#include <vector>

#include "pspin/mixture.hpp"

namespace pspin {

// Knobs for the fixed-point root scan of phi(q) = E tanh^2(sqrt(xi'(q))Z + h) - q.
struct RootScanOptions {
    int grid_points = 2001;
    double bisect_tol = 1e-10;   // |phi| target for sign-change roots
    double tangent_tol = 1e-8;   // |phi| threshold for tangential roots
    double root_sep = 1e-6;      // duplicate-root separation
    int quad_order = 60;
};

// Knobs for the global minimization of q -> f_rs(q).
struct MinimizeOptions {
    int grid_points = 2001;
    double value_tol = 1e-9;   // candidates within this of the best survive
    double sep_tol = 1e-4;     // minimizer separation for uniqueness
    double golden_tol = 1e-9;  // bracket width target of the refinement
    int quad_order = 60;
};

struct RootAlpha {
    double q;
    double alpha;
};

// Q*(beta, h) with per-root AT statistics and the AT verdict, plus the
// Remark-1 variant evaluated at the RS minimizers.
struct ATReport {
    std::vector<RootAlpha> roots;
    double alpha_min = 0.0;
    bool at_member = false;
    std::vector<double> rs_minimizers;
    double alpha_at_rs_min = 0.0;
};

struct RSMinimum {
    std::vector<double> minimizers;
    double value = 0.0;
    bool unique = false;
};

// Replica-symmetric functional
//   f_rs(q) = E log cosh(beta sqrt(xi0'(q)) Z + h)
//           + (beta^2/2) (xi0(1) - xi0(q) - (1-q) xi0'(q)).
double f_rs(const MixtureSpec& spec, const CouplingParams& params, double q,
            int quad_order = 60);

// Global minimum of f_rs over [0,1]: dense grid plus golden-section
// refinement around every competitive local minimum.
RSMinimum rs_minimize(const MixtureSpec& spec, const CouplingParams& params,
                      const MinimizeOptions& opts = {});

// phi(q) = E tanh^2(sqrt(xi'(q)) Z + h) - q.
double qstar_residual(const MixtureSpec& spec, const CouplingParams& params, double q,
                      int quad_order = 60);

// All fixed points of the RS self-consistency equation on [0,1].
std::vector<double> qstar_set(const MixtureSpec& spec, const CouplingParams& params,
                              const RootScanOptions& opts = {});

// alpha(q, beta, h) = beta^2 xi0''(q) E sech^4(beta sqrt(xi0'(q)) Z + h).
double alpha_at(const MixtureSpec& spec, const CouplingParams& params, double q,
                int quad_order = 60);

// Assembles Q*, per-root alpha, alpha(beta,h) = min, the AT verdict, and
// alpha at the RS minimizers.
ATReport alpha_report(const MixtureSpec& spec, const CouplingParams& params,
                      const RootScanOptions& root_opts = {},
                      const MinimizeOptions& min_opts = {});

// Second q-derivative of f_rs by Richardson-extrapolated finite differences
// (one-sided at the boundaries).
double f_rs_d2(const MixtureSpec& spec, const CouplingParams& params, double q,
               int quad_order = 60);

}  // namespace pspin

#endif
