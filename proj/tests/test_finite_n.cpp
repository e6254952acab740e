#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pspin/errors.hpp"
#include "pspin/finite_n.hpp"
#include "pspin/parisi.hpp"
#include "pspin/rs_at.hpp"

using namespace pspin;

namespace {

// sample covariance of (H(c1), H(c2)) across disorder replicas, with the
// Gaussian standard error of the estimate
struct CovEstimate {
    double cov;
    double se;
};

CovEstimate covariance(const MixtureSpec& spec, int n, std::uint32_t c1, std::uint32_t c2,
                       int reps, std::uint64_t seed) {
    double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
    for (int r = 0; r < reps; ++r) {
        const auto sample = sample_hamiltonian(spec, n, seed + 1000003ULL * r);
        const double x = sample.energies[c1];
        const double y = sample.energies[c2];
        sx += x;
        sy += y;
        sxy += x * y;
        sxx += x * x;
        syy += y * y;
    }
    const double mx = sx / reps, my = sy / reps;
    const double cov = sxy / reps - mx * my;
    const double vx = sxx / reps - mx * mx;
    const double vy = syy / reps - my * my;
    return {cov, std::sqrt((vx * vy + cov * cov) / reps)};
}

double overlap(std::uint32_t c1, std::uint32_t c2, int n) {
    int dot = 0;
    for (int i = 0; i < n; ++i) {
        const int s1 = (c1 >> i) & 1 ? -1 : 1;
        const int s2 = (c2 >> i) & 1 ? -1 : 1;
        dot += s1 * s2;
    }
    return static_cast<double>(dot) / n;
}

}  // namespace

TEST_CASE("covariance identity E[H(s1)H(s2)] = N xi0(overlap)") {
    const std::vector<MixtureSpec> specs{MixtureSpec::sk(), MixtureSpec::pure_p(4),
                                         MixtureSpec::sk_plus_p(4, 2.0)};
    for (const auto& spec : specs) {
        for (int n : {2, 4}) {
            const std::uint32_t all_up = 0;
            const std::uint32_t half = (1u << (n / 2)) - 1;  // half the spins down
            for (auto [a, b] : {std::pair<std::uint32_t, std::uint32_t>{all_up, all_up},
                                {all_up, half},
                                {all_up, (1u << n) - 1}}) {
                const auto est = covariance(spec, n, a, b, 30000, 77);
                const double want = n * spec.eval(overlap(a, b, n));
                CHECK(std::fabs(est.cov - want) <= 3.0 * est.se);
            }
        }
    }
}

TEST_CASE("zero-overlap configurations decorrelate (N=2)") {
    // (+1,+1) against (+1,-1): overlap 0, so the covariance must vanish
    const auto est = covariance(MixtureSpec::sk(), 2, 0b00, 0b10, 30000, 5);
    CHECK(std::fabs(est.cov) <= 3.0 * est.se);
}

TEST_CASE("fixed seed reproduces the sample exactly") {
    const auto a = sample_hamiltonian(MixtureSpec::sk_plus_p(4, 2.0), 6, 123);
    const auto b = sample_hamiltonian(MixtureSpec::sk_plus_p(4, 2.0), 6, 123);
    REQUIRE(a.energies.size() == b.energies.size());
    for (size_t i = 0; i < a.energies.size(); ++i) CHECK(a.energies[i] == b.energies[i]);
    const auto c = sample_hamiltonian(MixtureSpec::sk_plus_p(4, 2.0), 6, 124);
    CHECK(a.energies[0] != c.energies[0]);
}

TEST_CASE("beta=0 free energy is log cosh(h) with zero error") {
    for (double h : {0.0, 0.4, 1.5}) {
        const auto est = free_energy_mc(MixtureSpec::sk(), {0.0, h}, 8, 20, 2024);
        CHECK(std::fabs(est.mean - std::log(std::cosh(h))) <= 1e-12);
        CHECK(est.stderr_ <= 1e-15);
    }
}

TEST_CASE("free energy is monotone in beta (convexity, with MC slack)") {
    const std::uint64_t seed = 31337;
    double prev_mean = -1.0, prev_se = 0.0;
    for (double beta : {0.2, 0.5, 0.8}) {
        const auto est = free_energy_mc(MixtureSpec::sk(), {beta, 0.0}, 10, 120, seed);
        if (prev_mean >= 0.0) CHECK(est.mean >= prev_mean - 3.0 * (est.stderr_ + prev_se));
        prev_mean = est.mean;
        prev_se = est.stderr_;
    }
}

TEST_CASE("finite-N mean brackets the RS value from below (SK, beta=0.5)") {
    const auto est = free_energy_mc(MixtureSpec::sk(), {0.5, 0.0}, 10, 100, 5);
    CHECK(est.mean <= 0.0625 + 3.0 * est.stderr_);
}

TEST_CASE("certified model: finite-N mean tracks the k-RSB value, not the RS one") {
    const auto spec = MixtureSpec::sk_plus_p(4, 5.0);
    const CouplingParams p{0.9, 0.0};
    const auto est = free_energy_mc(spec, p, 10, 60, 5);
    const auto rs = rs_minimize(spec, p);
    const auto k1 = optimize_krsb(1, spec, p);
    CHECK(est.mean <= rs.value + 3.0 * est.stderr_);
    CHECK(std::fabs(est.mean - k1.value) < std::fabs(est.mean - rs.value));
}

TEST_CASE("size limits") {
    CHECK_THROWS_AS(sample_hamiltonian(MixtureSpec::sk(), 1, 0), PreconditionError);
    CHECK_THROWS_AS(sample_hamiltonian(MixtureSpec::sk(), 17, 0), PreconditionError);
    CHECK_THROWS_AS(free_energy_mc(MixtureSpec::sk(), {1.0, 0.0}, 8, 0, 0),
                    PreconditionError);
}
