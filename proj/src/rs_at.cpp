#include "pspin/rs_at.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pspin/errors.hpp"
#include "pspin/quad.hpp"

namespace pspin {

namespace {

double sech2(double x) {
    const double c = std::cosh(x);
    return 1.0 / (c * c);
}

// Golden-section minimization; returns the midpoint of the final bracket.
template <typename F>
std::pair<double, double> golden_min(F&& f, double a, double b, double xtol) {
    const double inv_phi = 0.6180339887498948482;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

}  // namespace

double f_rs(const MixtureSpec& spec, const CouplingParams& params, double q,
            int quad_order) {
    if (q < 0.0 || q > 1.0) throw PreconditionError("f_rs: q must lie in [0, 1]");
    const double b2 = params.beta * params.beta;
    const double scale = params.beta * std::sqrt(spec.d1(q));
    const double e = expect_affine(quad_order, [](double x) { return log_cosh(x); },
                                   scale, params.h);
    return e + 0.5 * b2 * (spec.eval(1.0) - spec.eval(q) - (1.0 - q) * spec.d1(q));
}

RSMinimum rs_minimize(const MixtureSpec& spec, const CouplingParams& params,
                      const MinimizeOptions& opts) {
    validate(params);
    const int n = opts.grid_points;
    std::vector<double> qs(n), vals(n);
    for (int i = 0; i < n; ++i) {
        qs[i] = static_cast<double>(i) / (n - 1);
        vals[i] = f_rs(spec, params, qs[i], opts.quad_order);
    }
    auto f = [&](double q) { return f_rs(spec, params, q, opts.quad_order); };

    // candidates: every grid-local minimum refined over its bracket
    std::vector<std::pair<double, double>> cand;
    for (int i = 0; i < n; ++i) {
        const bool left_ok = (i == 0) || vals[i] <= vals[i - 1];
        const bool right_ok = (i == n - 1) || vals[i] <= vals[i + 1];
        if (!(left_ok && right_ok)) continue;
        const double lo = qs[std::max(i - 1, 0)];
        const double hi = qs[std::min(i + 1, n - 1)];
        cand.push_back(golden_min(f, lo, hi, opts.golden_tol));
        cand.emplace_back(qs[i], vals[i]);
    }

    double best = cand.front().second;
    for (const auto& c : cand) best = std::min(best, c.second);

    std::vector<std::pair<double, double>> keep;
    for (const auto& c : cand)
        if (c.second <= best + opts.value_tol) keep.push_back(c);
    std::sort(keep.begin(), keep.end());

    // cluster by separation tolerance; each cluster is represented by its
    // best point (ties resolved toward smaller q)
    RSMinimum out;
    out.value = best;
    size_t i = 0;
    while (i < keep.size()) {
        size_t j = i;
        double bq = keep[i].first, bv = keep[i].second;
        while (j + 1 < keep.size() && keep[j + 1].first - keep[j].first <= opts.sep_tol) {
            ++j;
            if (keep[j].second < bv) {
                bv = keep[j].second;
                bq = keep[j].first;
            }
        }
        out.minimizers.push_back(bq);
        i = j + 1;
    }
    out.unique = out.minimizers.size() == 1;
    return out;
}

double qstar_residual(const MixtureSpec& spec, const CouplingParams& params, double q,
                      int quad_order) {
    if (q < 0.0 || q > 1.0) throw PreconditionError("qstar_residual: q must lie in [0, 1]");
    const double scale = params.beta * std::sqrt(spec.d1(q));
    const double t2 = expect_affine(quad_order,
                                    [](double x) {
                                        const double t = std::tanh(x);
                                        return t * t;
                                    },
                                    scale, params.h);
    return t2 - q;
}

std::vector<double> qstar_set(const MixtureSpec& spec, const CouplingParams& params,
                              const RootScanOptions& opts) {
    validate(params);
    const int n = opts.grid_points;
    std::vector<double> qs(n), ph(n);
    for (int i = 0; i < n; ++i) {
        qs[i] = static_cast<double>(i) / (n - 1);
        ph[i] = qstar_residual(spec, params, qs[i], opts.quad_order);
    }
    auto phi = [&](double q) { return qstar_residual(spec, params, q, opts.quad_order); };

    std::vector<double> roots;

    // sign-change roots by bisection
    for (int i = 0; i + 1 < n; ++i) {
        if (ph[i] == 0.0) continue;  // grid-exact roots handled below
        if (ph[i] * ph[i + 1] >= 0.0) continue;
        double lo = qs[i], hi = qs[i + 1];
        double flo = ph[i];
        double mid = 0.5 * (lo + hi);
        for (int it = 0; it < 200; ++it) {
            mid = 0.5 * (lo + hi);
            const double fm = phi(mid);
            if (std::fabs(fm) <= opts.bisect_tol || hi - lo < 1e-15) break;
            if ((flo > 0.0) == (fm > 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        roots.push_back(mid);
    }

    // tangential (or grid-exact) roots: local minima of |phi| below the
    // tangential threshold, refined by golden section on |phi|
    auto abs_phi = [&](double q) { return std::fabs(phi(q)); };
    for (int i = 0; i < n; ++i) {
        const double a = std::fabs(ph[i]);
        const bool left_ok = (i == 0) || a <= std::fabs(ph[i - 1]);
        const bool right_ok = (i == n - 1) || a <= std::fabs(ph[i + 1]);
        if (!(left_ok && right_ok)) continue;
        double q = qs[i], v = a;
        if (i > 0 && i < n - 1) {
            auto [rq, rv] = golden_min(abs_phi, qs[i - 1], qs[i + 1], 1e-12);
            if (rv < v) {
                q = rq;
                v = rv;
            }
        }
        if (v < opts.tangent_tol) roots.push_back(q);
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots) {
        if (!out.empty() && r - out.back() <= opts.root_sep) {
            // keep whichever satisfies the equation better
            if (std::fabs(phi(r)) < std::fabs(phi(out.back()))) out.back() = r;
        } else {
            out.push_back(r);
        }
    }
    return out;
}

double alpha_at(const MixtureSpec& spec, const CouplingParams& params, double q,
                int quad_order) {
    if (q < 0.0 || q > 1.0) throw PreconditionError("alpha_at: q must lie in [0, 1]");
    const double pre = params.beta * params.beta * spec.d2(q);
    if (pre == 0.0) return 0.0;
    const double scale = params.beta * std::sqrt(spec.d1(q));
    const double s4 = expect_affine(quad_order,
                                    [](double x) {
                                        const double s = sech2(x);
                                        return s * s;
                                    },
                                    scale, params.h);
    return pre * s4;
}

ATReport alpha_report(const MixtureSpec& spec, const CouplingParams& params,
                      const RootScanOptions& root_opts, const MinimizeOptions& min_opts) {
    ATReport rep;
    const auto roots = qstar_set(spec, params, root_opts);
    rep.alpha_min = std::numeric_limits<double>::infinity();
    for (double q : roots) {
        const double a = alpha_at(spec, params, q, root_opts.quad_order);
        rep.roots.push_back({q, a});
        rep.alpha_min = std::min(rep.alpha_min, a);
    }
    rep.at_member = rep.alpha_min <= 1.0;

    const auto rsm = rs_minimize(spec, params, min_opts);
    rep.rs_minimizers = rsm.minimizers;
    rep.alpha_at_rs_min = std::numeric_limits<double>::infinity();
    for (double q : rsm.minimizers)
        rep.alpha_at_rs_min =
            std::min(rep.alpha_at_rs_min, alpha_at(spec, params, q, root_opts.quad_order));
    return rep;
}

double f_rs_d2(const MixtureSpec& spec, const CouplingParams& params, double q,
               int quad_order) {
    if (q < 0.0 || q > 1.0) throw PreconditionError("f_rs_d2: q must lie in [0, 1]");
    auto f = [&](double x) { return f_rs(spec, params, x, quad_order); };
    const double d0 = 1e-4;
    auto second_diff = [&](double d) {
        if (q - d < 0.0) {
            // one-sided (right) second difference at the lower boundary
            return (2.0 * f(q) - 5.0 * f(q + d) + 4.0 * f(q + 2 * d) - f(q + 3 * d)) /
                   (d * d);
        }
        if (q + d > 1.0) {
            return (2.0 * f(q) - 5.0 * f(q - d) + 4.0 * f(q - 2 * d) - f(q - 3 * d)) /
                   (d * d);
        }
        return (f(q + d) - 2.0 * f(q) + f(q - d)) / (d * d);
    };
    const double coarse = second_diff(d0);
    const double fine = second_diff(0.5 * d0);
    return (4.0 * fine - coarse) / 3.0;
}

}  // namespace pspin
