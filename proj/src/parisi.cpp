#include "pspin/parisi.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <thread>

#include "pspin/errors.hpp"
#include "pspin/nelder_mead.hpp"
#include "pspin/quad.hpp"

namespace pspin {

RSBMeasure::RSBMeasure(std::vector<double> atoms, std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
    if (atoms_.empty() || atoms_.size() != weights_.size())
        throw PreconditionError("RSBMeasure: need K >= 1 atoms with matching weights");
    double total = 0.0;
    for (size_t i = 0; i < atoms_.size(); ++i) {
        if (!(atoms_[i] >= 0.0 && atoms_[i] <= 1.0))
            throw PreconditionError("RSBMeasure: atoms must lie in [0, 1]");
        if (i > 0 && !(atoms_[i] > atoms_[i - 1]))
            throw PreconditionError("RSBMeasure: atoms must be strictly increasing");
        if (!(weights_[i] > 0.0))
            throw PreconditionError("RSBMeasure: weights must be positive");
        total += weights_[i];
    }
    if (std::fabs(total - 1.0) > 1e-9)
        throw PreconditionError("RSBMeasure: weights must sum to 1");
    for (double& w : weights_) w /= total;
}

std::vector<double> RSBMeasure::cdf_levels() const {
    std::vector<double> m(weights_.size());
    double acc = 0.0;
    for (size_t i = 0; i < weights_.size(); ++i) {
        acc += weights_[i];
        m[i] = acc;
    }
    return m;
}

namespace {

// Partition of [0,1] induced by the atoms, with the constant level
// mu([0,s]) on each segment.
struct Segment {
    double a, b;  // [a, b]
    double m;     // mu([0,s]) for s in [a, b)
};

std::vector<Segment> segments_of(const RSBMeasure& mu) {
    std::vector<double> pts{0.0, 1.0};
    pts.insert(pts.end(), mu.atoms().begin(), mu.atoms().end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<Segment> segs;
    for (size_t j = 0; j + 1 < pts.size(); ++j) {
        double level = 0.0;
        for (size_t i = 0; i < mu.size(); ++i)
            if (mu.atoms()[i] <= pts[j]) level += mu.weights()[i];
        segs.push_back({pts[j], pts[j + 1], level});
    }
    return segs;
}

// Quadrature order for a level whose integrand grows like exp(m sqrt(v) |z|)
// (the recursion kernels are 1-Lipschitz).  The base order is enough until
// the exponential rate approaches the node range.
int level_order(double m, double sqrt_v, int base) {
    const double rate = std::min(m, 1.0) * sqrt_v;
    if (rate <= 6.0) return base;
    const int need = static_cast<int>(0.5 * (rate + 8.0) * (rate + 8.0)) + 1;
    return std::clamp(need, base, 200);
}

// The exact atomic-measure recursion.  The innermost segment always carries
// level m = 1 where the step X -> log E_z exp(X(x + z sqrt(v))) acting on
// log cosh is a Gaussian identity, E cosh(x + g) = e^{v/2} cosh(x); it is
// applied in closed form as the constant shift v/2.  Remaining levels use
// tensorized Gauss-Hermite, with the m -> 0 limit handled by the
// mean-centered expm1 form so that vanishing weights stay stable.
class LevelEvaluator {
  public:
    LevelEvaluator(const RSBMeasure& mu, const MixtureSpec& spec,
                   const CouplingParams& params, int base_order) {
        const double b2 = params.beta * params.beta;
        const auto segs = segments_of(mu);
        for (const auto& s : segs) {
            penalty_ += 0.5 * s.m * (theta(spec, params, s.b) - theta(spec, params, s.a));
            const double v = b2 * (spec.d1(s.b) - spec.d1(s.a));
            if (v > 0.0) levels_.push_back({s.m, std::sqrt(v), nullptr});
        }
        if (!levels_.empty() && std::fabs(levels_.back().m - 1.0) <= 1e-9) {
            shift_ = 0.5 * levels_.back().sqrt_v * levels_.back().sqrt_v;
            levels_.pop_back();
        }
        // The cost is the product of the level orders, so deep cascades
        // (k >= 3) drop to a cheaper base.  The order is a function of the
        // post-merge measure alone, which keeps warm-started cascade values
        // exactly reproducible.
        int base = base_order;
        if (levels_.size() == 4)
            base = std::min(base, 32);
        else if (levels_.size() >= 5)
            base = std::min(base, 24);
        for (auto& L : levels_)
            L.rule = &gauss_hermite(level_order(L.m, L.sqrt_v, base));
        scratch_.resize(levels_.size());
        for (size_t j = 0; j < levels_.size(); ++j)
            scratch_[j].resize(levels_[j].rule->order);
    }

    double penalty() const { return penalty_; }

    double value_at(double x) { return eval(0, x); }

  private:
    struct Level {
        double m, sqrt_v;
        const GaussianRule* rule;
    };

    double eval(size_t j, double x) {
        if (j == levels_.size()) return shift_ + log_cosh(x);
        const Level& L = levels_[j];
        const auto& nodes = L.rule->nodes;
        const auto& w = L.rule->weights;
        const int n = L.rule->order;
        auto& X = scratch_[j];
        for (int i = 0; i < n; ++i) X[i] = eval(j + 1, x + L.sqrt_v * nodes[i]);

        if (L.m == 0.0) {
            double mean = 0.0;
            for (int i = 0; i < n; ++i) mean += w[i] * X[i];
            return mean;
        }
        double mean = 0.0;
        for (int i = 0; i < n; ++i) mean += w[i] * X[i];
        double spread = 0.0;
        for (int i = 0; i < n; ++i)
            spread = std::max(spread, std::fabs(L.m * (X[i] - mean)));
        if (spread > 30.0) {
            double mx = X[0];
            for (int i = 1; i < n; ++i) mx = std::max(mx, X[i]);
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += w[i] * std::exp(L.m * (X[i] - mx));
            return mx + std::log(s) / L.m;
        }
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += w[i] * std::expm1(L.m * (X[i] - mean));
        return mean + std::log1p(s) / L.m;
    }

    std::vector<Level> levels_;
    double shift_ = 0.0;
    double penalty_ = 0.0;
    std::vector<std::vector<double>> scratch_;
};

}  // namespace

double parisi_value(const RSBMeasure& measure, const MixtureSpec& spec,
                    const CouplingParams& params, int quad_order) {
    validate(params);
    LevelEvaluator ev(measure, spec, params, quad_order);
    const double u = ev.value_at(params.h);
    if (!std::isfinite(u))
        throw NumericError("parisi_value: recursion produced a non-finite value");
    return u - ev.penalty();
}

PDESolution parisi_pde_detail(const RSBMeasure& measure, const MixtureSpec& spec,
                              const CouplingParams& params, const PDEGrid& grid) {
    validate(params);
    const double b2 = params.beta * params.beta;
    const double required = 3.0 * (std::sqrt(b2 * spec.d1(1.0)) + std::fabs(params.h)) + 8.0;
    const double xm = grid.x_max == 0.0 ? required : grid.x_max;
    if (xm < required)
        throw PreconditionError("PDEGrid: x_max below 3(sqrt(xi'(1)) + |h|) + 8");
    if (grid.nx < 64 || grid.nr < 64)
        throw PreconditionError("PDEGrid: nx and nr must be >= 64");

    const int nx = grid.nx;
    const double dx = 2.0 * xm / (nx - 1);
    std::vector<double> u(nx), lap(nx), gx(nx);
    for (int i = 0; i < nx; ++i) u[i] = log_cosh(-xm + i * dx);

    PDESolution sol;
    const auto segs = segments_of(measure);
    for (size_t j = segs.size(); j-- > 0;) {
        const auto& s = segs[j];
        if (s.b <= s.a) continue;
        const double c_max = 0.5 * b2 * spec.d2(s.b);  // xi0'' increasing on [0,1]
        if (c_max <= 0.0) continue;
        const double dt_cfl = grid.cfl * dx * dx / c_max;
        const double dt_macro = 1.0 / grid.nr;
        const long nsub =
            static_cast<long>(std::ceil((s.b - s.a) / std::min(dt_cfl, dt_macro)));
        if (sol.substeps + nsub > grid.max_substeps)
            throw NumericError("parisi_pde: CFL substep cap exceeded");
        const double dt = (s.b - s.a) / static_cast<double>(nsub);
        for (long step = 0; step < nsub; ++step) {
            const double r_mid = s.b - (static_cast<double>(step) + 0.5) * dt;
            const double c = 0.5 * b2 * spec.d2(r_mid);
            // asymptotic slope |u_x| -> 1 fixes the ghost values
            const double gl = u[0] + dx, gr = u[nx - 1] + dx;
            for (int i = 0; i < nx; ++i) {
                const double um = i == 0 ? gl : u[i - 1];
                const double up = i == nx - 1 ? gr : u[i + 1];
                lap[i] = (up - 2.0 * u[i] + um) / (dx * dx);
                gx[i] = (up - um) / (2.0 * dx);
            }
            double mslope = 0.0;
            for (int i = 0; i < nx; ++i) {
                u[i] += dt * c * (lap[i] + s.m * gx[i] * gx[i]);
                mslope = std::max(mslope, std::fabs(gx[i]));
            }
            sol.max_abs_slope = std::max(sol.max_abs_slope, mslope);
            if (!std::isfinite(u[nx / 2]))
                throw NumericError("parisi_pde: solution became non-finite");
        }
        sol.substeps += nsub;
    }

    const double pos = (params.h + xm) / dx;
    const int i0 = std::clamp(static_cast<int>(pos), 0, nx - 2);
    const double frac = pos - i0;
    double value = u[i0] * (1.0 - frac) + u[i0 + 1] * frac;
    for (const auto& s : segs)
        value -= 0.5 * s.m * (theta(spec, params, s.b) - theta(spec, params, s.a));
    sol.value = value;
    return sol;
}

double parisi_pde_solve(const RSBMeasure& measure, const MixtureSpec& spec,
                        const CouplingParams& params, const PDEGrid& grid) {
    return parisi_pde_detail(measure, spec, params, grid).value;
}

namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

double logit(double q) {
    q = std::clamp(q, 1e-15, 1.0 - 1e-15);
    return std::log(q / (1.0 - q));
}

// theta in R^{2K} -> measure: positions through the logistic map (sorted,
// collided atoms merged), weights through softmax.
void decode_measure(const std::vector<double>& th, int K, double merge_tol,
                    std::vector<double>& atoms, std::vector<double>& weights) {
    std::vector<std::pair<double, double>> pw(K);
    double wmax = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < K; ++i) wmax = std::max(wmax, th[K + i]);
    double z = 0.0;
    for (int i = 0; i < K; ++i) {
        pw[i].first = 1.0 / (1.0 + std::exp(-th[i]));
        pw[i].second = std::exp(th[K + i] - wmax);
        z += pw[i].second;
    }
    for (auto& p : pw) p.second /= z;
    std::sort(pw.begin(), pw.end());
    atoms.clear();
    weights.clear();
    for (const auto& p : pw) {
        if (!atoms.empty() && p.first - atoms.back() < merge_tol)
            weights.back() += p.second;
        else {
            atoms.push_back(p.first);
            weights.push_back(p.second);
        }
    }
}

}  // namespace

KrsbResult optimize_krsb(int k, const MixtureSpec& spec, const CouplingParams& params,
                         const KrsbOptions& opts, const RSBMeasure* warm) {
    if (k < 0 || k > 4)
        throw PreconditionError("optimize_krsb: k must lie in [0, 4] (desk scale)");
    validate(params);
    const int K = k + 1;
    const int dim = 2 * K;

    MinimizeOptions mopts;
    mopts.quad_order = opts.quad_order;
    const auto rs = rs_minimize(spec, params, mopts);
    const double q_rs = rs.minimizers.front();

    auto objective = [&](const std::vector<double>& th) {
        std::vector<double> atoms, weights;
        decode_measure(th, K, opts.merge_tol, atoms, weights);
        return parisi_value(RSBMeasure(std::move(atoms), std::move(weights)), spec, params,
                            opts.quad_order);
    };

    std::vector<std::vector<double>> starts;
    {
        // RS minimizer as a degenerate initialization
        std::vector<double> s(dim, 0.0);
        for (int i = 0; i < K; ++i) s[i] = logit(q_rs);
        starts.push_back(s);
    }
    if (warm != nullptr) {
        std::vector<double> s(dim, 0.0);
        const auto& wa = warm->atoms();
        const auto& ww = warm->weights();
        const int J = static_cast<int>(wa.size());
        for (int i = 0; i < K; ++i) {
            const int j = std::min(i, J - 1);
            s[i] = logit(wa[j]);
            s[K + i] = (i < J) ? std::log(ww[j]) : std::log(ww[J - 1]) - 45.0;
        }
        starts.push_back(s);
    }
    {
        // ladder template
        std::vector<double> s(dim, 0.0);
        for (int i = 0; i < K; ++i) s[i] = logit((i + 1.0) / (K + 1.0));
        starts.push_back(s);
    }
    for (double top : {0.5, 0.9, 0.97}) {
        // RS minimizer plus one distant atom
        std::vector<double> s(dim, 0.0);
        for (int i = 0; i < K; ++i) s[i] = logit(i + 1 == K ? top : q_rs);
        starts.push_back(s);
    }
    const int total = std::max(opts.starts, 8);
    std::uint64_t st = opts.seed;
    while (static_cast<int>(starts.size()) < total) {
        std::vector<double> s(dim);
        for (int i = 0; i < K; ++i) s[i] = -4.0 + 8.0 * uniform01(st);
        for (int i = K; i < dim; ++i) s[i] = -2.0 + 4.0 * uniform01(st);
        starts.push_back(s);
    }

    NelderMeadOptions nm;
    nm.value_tol = opts.value_tol;
    nm.param_tol = opts.param_tol;
    nm.max_evals = opts.max_evals;

    std::vector<NelderMeadResult> results(starts.size());
    if (opts.threads > 1) {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (size_t i = next.fetch_add(1); i < starts.size(); i = next.fetch_add(1))
                results[i] = nelder_mead(objective, starts[i], nm);
        };
        std::vector<std::thread> pool;
        const int nthreads = std::min<int>(opts.threads, static_cast<int>(starts.size()));
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    } else {
        for (size_t i = 0; i < starts.size(); ++i)
            results[i] = nelder_mead(objective, starts[i], nm);
    }

    size_t best = 0;
    for (size_t i = 1; i < results.size(); ++i)
        if (results[i].value < results[best].value) best = i;

    KrsbResult out;
    decode_measure(results[best].x, K, opts.merge_tol, out.atoms, out.weights);
    out.value = results[best].value;
    return out;
}

GapReport rs_gap(const MixtureSpec& spec, const CouplingParams& params, int k_max,
                 const KrsbOptions& opts, double rs_gap_tol) {
    if (k_max < 0 || k_max > 4)
        throw PreconditionError("rs_gap: k_max must lie in [0, 4]");
    MinimizeOptions mopts;
    mopts.quad_order = opts.quad_order;
    const auto rs = rs_minimize(spec, params, mopts);

    GapReport rep;
    rep.rs_value = rs.value;
    rep.krsb_value = std::numeric_limits<double>::infinity();
    std::unique_ptr<RSBMeasure> warm;
    for (int k = 0; k <= k_max; ++k) {
        KrsbOptions o = opts;
        o.seed = opts.seed + static_cast<std::uint64_t>(k) * 0x9E3779B97F4A7C15ULL;
        const auto r = optimize_krsb(k, spec, params, o, warm.get());
        rep.values_by_k.push_back(r.value);
        if (r.value < rep.krsb_value) {
            rep.krsb_value = r.value;
            rep.best_atoms = r.atoms;
            rep.best_weights = r.weights;
        }
        warm = std::make_unique<RSBMeasure>(rep.best_atoms, rep.best_weights);
    }
    rep.gap = rep.rs_value - rep.krsb_value;
    rep.rs_member = rep.gap <= rs_gap_tol;
    return rep;
}

}  // namespace pspin
