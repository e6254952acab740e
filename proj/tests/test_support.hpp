#ifndef PSPIN_TEST_SUPPORT_HPP
#define PSPIN_TEST_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <functional>

// Independent oracles for the test suite.  These deliberately avoid the
// library's quadrature and solvers.

namespace testsupport {

// E[f(Z)] by dense trapezoid integration of f against the Gaussian density
// over [-xmax, xmax].
inline double trapezoid_gaussian(const std::function<double(double)>& f, double xmax,
                                 long n) {
    const double dx = 2.0 * xmax / static_cast<double>(n);
    const double norm = 0.3989422804014326779399460599343819;  // 1/sqrt(2 pi)
    double acc = 0.0;
    for (long i = 0; i <= n; ++i) {
        const double x = -xmax + dx * static_cast<double>(i);
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        acc += w * f(x) * norm * std::exp(-0.5 * x * x);
    }
    return acc * dx;
}

// sup of f over [lo, hi] by dense grid search.
inline double grid_search_max(const std::function<double(double)>& f, double lo,
                              double hi, long n) {
    double best = f(lo);
    for (long i = 1; i <= n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
        best = std::max(best, f(x));
    }
    return best;
}

// Deterministic uniform stream for property tests.
struct Uniform {
    std::uint64_t state;
    explicit Uniform(std::uint64_t seed) : state(seed) {}
    double operator()() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }
    double in(double lo, double hi) { return lo + (hi - lo) * (*this)(); }
};

}  // namespace testsupport

#endif
