#ifndef PSPIN_NELDER_MEAD_HPP
#define PSPIN_NELDER_MEAD_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace pspin {

struct NelderMeadOptions {
    double value_tol = 1e-10;  // simplex value spread
    double param_tol = 1e-8;   // simplex coordinate spread
    int max_evals = 0;         // 0 -> 400 * dim + 400
    double init_step = 0.5;    // initial simplex edge
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int evals = 0;
    bool converged = false;
};

// Standard downhill simplex (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2).  Deterministic for a given start.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> x0,
                                    const NelderMeadOptions& opts = {}) {
    const size_t dim = x0.size();
    const int max_evals =
        opts.max_evals > 0 ? opts.max_evals : static_cast<int>(400 * dim + 400);
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        const double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::max();
    };

    std::vector<std::vector<double>> pts(dim + 1, x0);
    std::vector<double> vals(dim + 1);
    for (size_t i = 0; i < dim; ++i) pts[i + 1][i] += opts.init_step;
    for (size_t i = 0; i <= dim; ++i) vals[i] = eval(pts[i]);

    std::vector<size_t> order(dim + 1);
    auto sort_order = [&] {
        for (size_t i = 0; i <= dim; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](size_t a, size_t b) { return vals[a] < vals[b]; });
    };

    NelderMeadResult res;
    std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);
    while (true) {
        sort_order();
        const size_t best = order[0], worst = order[dim], second_worst = order[dim - 1];

        double vspread = vals[worst] - vals[best];
        double pspread = 0.0;
        for (size_t i = 0; i <= dim; ++i)
            for (size_t d = 0; d < dim; ++d)
                pspread = std::max(pspread, std::fabs(pts[i][d] - pts[best][d]));
        if ((vspread <= opts.value_tol && pspread <= opts.param_tol) || evals >= max_evals) {
            res.x = pts[best];
            res.value = vals[best];
            res.evals = evals;
            res.converged = evals < max_evals;
            return res;
        }

        for (size_t d = 0; d < dim; ++d) {
            double s = 0.0;
            for (size_t i = 0; i <= dim; ++i)
                if (i != worst) s += pts[i][d];
            centroid[d] = s / static_cast<double>(dim);
        }
        for (size_t d = 0; d < dim; ++d) xr[d] = centroid[d] + (centroid[d] - pts[worst][d]);
        const double vr = eval(xr);

        if (vr < vals[best]) {
            for (size_t d = 0; d < dim; ++d)
                xe[d] = centroid[d] + 2.0 * (centroid[d] - pts[worst][d]);
            const double ve = eval(xe);
            if (ve < vr) {
                pts[worst] = xe;
                vals[worst] = ve;
            } else {
                pts[worst] = xr;
                vals[worst] = vr;
            }
        } else if (vr < vals[second_worst]) {
            pts[worst] = xr;
            vals[worst] = vr;
        } else {
            const bool outside = vr < vals[worst];
            if (outside) {
                for (size_t d = 0; d < dim; ++d)
                    xc[d] = centroid[d] + 0.5 * (xr[d] - centroid[d]);
            } else {
                for (size_t d = 0; d < dim; ++d)
                    xc[d] = centroid[d] - 0.5 * (centroid[d] - pts[worst][d]);
            }
            const double vc = eval(xc);
            if (vc < std::min(vr, vals[worst])) {
                pts[worst] = xc;
                vals[worst] = vc;
            } else {
                // shrink toward the best vertex
                for (size_t i = 0; i <= dim; ++i) {
                    if (i == best) continue;
                    for (size_t d = 0; d < dim; ++d)
                        pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
                    vals[i] = eval(pts[i]);
                }
            }
        }
    }
}

}  // namespace pspin

#endif
