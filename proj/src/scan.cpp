#include "pspin/scan.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <thread>

#include "pspin/errors.hpp"

namespace pspin {

namespace {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

PhaseCell compute_cell(const MixtureSpec& spec, double beta, double h,
                       const ScanOptions& opts, std::uint64_t cell_seed) {
    PhaseCell cell;
    cell.beta = beta;
    cell.h = h;
    try {
        const CouplingParams params{beta, h};
        const auto at = alpha_report(spec, params, opts.root, opts.minimize);
        cell.alpha_min = at.alpha_min;
        cell.at_member = at.at_member;
        cell.alpha_at_rs_min = at.alpha_at_rs_min;
        cell.rs_min_unique = at.rs_minimizers.size() == 1;

        KrsbOptions ko = opts.krsb;
        ko.seed = cell_seed;
        const auto gap = rs_gap(spec, params, opts.k_max, ko, opts.rs_gap_tol);
        cell.rs_value = gap.rs_value;
        cell.krsb_value = gap.krsb_value;
        cell.gap = gap.gap;
        cell.rs_member = gap.rs_member;
        for (size_t k = 1; k < gap.values_by_k.size(); ++k)
            cell.k_monotone_violation = std::max(
                cell.k_monotone_violation, gap.values_by_k[k] - gap.values_by_k[k - 1]);

        cell.witness = cell.at_member && !cell.rs_member;
        cell.inclusion_ok = !(cell.rs_member && !cell.at_member);
    } catch (const std::exception& e) {
        cell.error = e.what();
        cell.alpha_min = cell.rs_value = cell.krsb_value = cell.gap =
            cell.alpha_at_rs_min = std::numeric_limits<double>::quiet_NaN();
        cell.at_member = cell.rs_member = cell.witness = cell.rs_min_unique = false;
        cell.inclusion_ok = true;
    }
    return cell;
}

}  // namespace

std::vector<PhaseCell> phase_grid(const MixtureSpec& spec, double beta_min,
                                  double beta_max, int n_beta, double h_min,
                                  double h_max, int n_h, const ScanOptions& opts) {
    if (n_beta < 1 || n_h < 1)
        throw PreconditionError("phase_grid: grid must have at least one point per axis");
    if (beta_min > beta_max || h_min > h_max)
        throw PreconditionError("phase_grid: empty range");
    if ((n_beta > 1 && beta_min == beta_max) || (n_h > 1 && h_min == h_max))
        throw PreconditionError("phase_grid: degenerate range with more than one point");
    if ((n_beta == 1 && beta_min != beta_max) || (n_h == 1 && h_min != h_max))
        throw PreconditionError("phase_grid: single-point axis requires min == max");

    std::vector<std::pair<double, double>> points;
    points.reserve(static_cast<size_t>(n_beta) * n_h);
    for (int i = 0; i < n_beta; ++i) {
        const double beta =
            n_beta == 1 ? beta_min
                        : beta_min + (beta_max - beta_min) * i / double(n_beta - 1);
        for (int j = 0; j < n_h; ++j) {
            const double h =
                n_h == 1 ? h_min : h_min + (h_max - h_min) * j / double(n_h - 1);
            points.emplace_back(beta, h);
        }
    }

    std::vector<PhaseCell> cells(points.size());
    auto run_cell = [&](size_t i) {
        cells[i] = compute_cell(spec, points[i].first, points[i].second, opts,
                                mix_seed(opts.seed, i));
    };
    if (opts.threads > 1) {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1))
                run_cell(i);
        };
        std::vector<std::thread> pool;
        const int nthreads = std::min<size_t>(opts.threads, points.size());
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    } else {
        for (size_t i = 0; i < points.size(); ++i) run_cell(i);
    }
    return cells;
}

std::string phase_csv(const std::vector<PhaseCell>& cells) {
    std::string out =
        "beta,h,alpha_min,at_member,rs_value,krsb_value,gap,rs_member,"
        "alpha_at_rs_min,rs_min_unique,witness\n";
    char buf[64];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.12g%c", v, sep);
        out += buf;
    };
    for (const auto& c : cells) {
        put(c.beta, ',');
        put(c.h, ',');
        put(c.alpha_min, ',');
        out += c.at_member ? "1," : "0,";
        put(c.rs_value, ',');
        put(c.krsb_value, ',');
        put(c.gap, ',');
        out += c.rs_member ? "1," : "0,";
        put(c.alpha_at_rs_min, ',');
        out += c.rs_min_unique ? "1," : "0,";
        out += c.witness ? "1\n" : "0\n";
    }
    return out;
}

}  // namespace pspin
