#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pspin/errors.hpp"
#include "pspin/parisi.hpp"
#include "pspin/rs_at.hpp"

using namespace pspin;

TEST_CASE("RSBMeasure validation and cdf") {
    CHECK_THROWS_AS(RSBMeasure({}, {}), PreconditionError);
    CHECK_THROWS_AS(RSBMeasure({0.5, 0.5}, {0.5, 0.5}), PreconditionError);
    CHECK_THROWS_AS(RSBMeasure({0.5, 0.2}, {0.5, 0.5}), PreconditionError);
    CHECK_THROWS_AS(RSBMeasure({0.2, 0.5}, {0.5, 0.4}), PreconditionError);
    CHECK_THROWS_AS(RSBMeasure({-0.1}, {1.0}), PreconditionError);
    CHECK_THROWS_AS(RSBMeasure({0.2}, {-1.0}), PreconditionError);
    const RSBMeasure mu({0.2, 0.6}, {0.3, 0.7});
    const auto m = mu.cdf_levels();
    CHECK(m[0] == doctest::Approx(0.3));
    CHECK(m[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("Dirac at the origin gives the annealed value at h=0") {
    for (const auto& spec : {MixtureSpec::sk(), MixtureSpec::sk_plus_p(4, 2.0),
                             MixtureSpec::pure_p(4)}) {
        for (double beta : {0.5, 1.0, 2.0}) {
            const CouplingParams p{beta, 0.0};
            CHECK(parisi_value(RSBMeasure::dirac(0.0), spec, p) ==
                  doctest::Approx(p.t() * spec.eval(1.0)).epsilon(1e-13));
        }
    }
}

TEST_CASE("RS consistency: Dirac values equal f_rs across the grid") {
    double worst = 0.0;
    for (const auto& spec : {MixtureSpec::sk(), MixtureSpec::sk_plus_p(4, 2.0),
                             MixtureSpec::pure_p(4)}) {
        for (double beta : {0.3, 1.0, 2.0}) {
            for (double h : {0.0, 0.3, 1.0}) {
                const CouplingParams p{beta, h};
                for (int i = 0; i <= 9; ++i) {
                    const double q = 0.1 * i;
                    worst = std::max(worst,
                                     std::fabs(parisi_value(RSBMeasure::dirac(q), spec, p) -
                                               f_rs(spec, p, q)));
                }
            }
        }
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("PDE oracle: closed cases") {
    const auto sk = MixtureSpec::sk();
    CHECK(std::fabs(parisi_pde_solve(RSBMeasure::dirac(0.0), sk, {1.0, 0.0}) - 0.25) <=
          5e-4);
    const CouplingParams p{2.0, 0.3};
    CHECK(std::fabs(parisi_pde_solve(RSBMeasure::dirac(0.5), sk, p) - f_rs(sk, p, 0.5)) <=
          5e-4);
}

TEST_CASE("PDE oracle: two-atom measure, refinement, slope bound") {
    const auto sk = MixtureSpec::sk();
    const CouplingParams p{1.6, 0.0};
    const RSBMeasure mu({0.0, 0.6}, {0.4, 0.6});
    const double rec = parisi_value(mu, sk, p);
    const auto coarse = parisi_pde_detail(mu, sk, p);
    CHECK(std::fabs(coarse.value - rec) <= 5e-4);
    CHECK(coarse.max_abs_slope <= 1.0 + 5e-3);
    PDEGrid fine;
    fine.nx = 2049;
    fine.nr = 512;
    const auto refined = parisi_pde_detail(mu, sk, p, fine);
    CHECK(std::fabs(refined.value - rec) <= 0.5 * std::fabs(coarse.value - rec) + 1e-12);
}

TEST_CASE("PDE grid validation and substep cap") {
    const auto sk = MixtureSpec::sk();
    PDEGrid bad;
    bad.nx = 32;
    CHECK_THROWS_AS(parisi_pde_solve(RSBMeasure::dirac(0.0), sk, {1.0, 0.0}, bad),
                    PreconditionError);
    PDEGrid small_box;
    small_box.x_max = 2.0;
    CHECK_THROWS_AS(parisi_pde_solve(RSBMeasure::dirac(0.0), sk, {1.0, 0.0}, small_box),
                    PreconditionError);
    PDEGrid capped;
    capped.max_substeps = 10;
    CHECK_THROWS_AS(parisi_pde_solve(RSBMeasure::dirac(0.0), sk, {1.0, 0.0}, capped),
                    NumericError);
}

TEST_CASE("degenerate second atom converges to the one-atom value") {
    const auto sk = MixtureSpec::sk();
    const CouplingParams p{1.4, 0.2};
    const double one = parisi_value(RSBMeasure::dirac(0.3), sk, p);
    const double two =
        parisi_value(RSBMeasure({0.3, 0.8}, {1.0 - 1e-6, 1e-6}), sk, p);
    CHECK(std::fabs(one - two) <= 1e-5);
}

TEST_CASE("optimize_krsb: k=0 reduces to rs_minimize") {
    for (const auto& spec : {MixtureSpec::sk(), MixtureSpec::sk_plus_p(4, 2.0)}) {
        const CouplingParams p{1.1, 0.25};
        const auto rs = rs_minimize(spec, p);
        const auto k0 = optimize_krsb(0, spec, p);
        CHECK(std::fabs(k0.value - rs.value) <= 1e-7);
    }
}

TEST_CASE("optimize_krsb: high-temperature SK gains nothing from k=1") {
    const auto rs = rs_minimize(MixtureSpec::sk(), {0.5, 0.0});
    const auto k1 = optimize_krsb(1, MixtureSpec::sk(), {0.5, 0.0});
    CHECK(rs.value - k1.value <= 1e-7);
    CHECK(k1.value <= rs.value + 1e-10);
}

TEST_CASE("optimize_krsb: the certified model breaks symmetry at beta=0.9") {
    const auto spec = MixtureSpec::sk_plus_p(4, 5.0);
    const CouplingParams p{0.9, 0.0};
    const auto rs = rs_minimize(spec, p);
    const auto k1 = optimize_krsb(1, spec, p);
    CHECK(k1.value < rs.value - 1e-4);
}

TEST_CASE("optimize_krsb: k out of range") {
    CHECK_THROWS_AS(optimize_krsb(5, MixtureSpec::sk(), {1.0, 0.0}), PreconditionError);
    CHECK_THROWS_AS(optimize_krsb(-1, MixtureSpec::sk(), {1.0, 0.0}), PreconditionError);
}

TEST_CASE("rs_gap: verdicts and exact beta=0 degeneracy") {
    const auto high_t = rs_gap(MixtureSpec::sk(), {0.3, 0.1}, 2);
    CHECK(high_t.rs_member);
    CHECK(high_t.gap <= 1e-6);
    CHECK(high_t.gap >= -1e-10);

    const auto frozen = rs_gap(MixtureSpec::sk(), {0.0, 0.4}, 1);
    CHECK(frozen.gap == 0.0);

    const auto broken = rs_gap(MixtureSpec::sk_plus_p(4, 5.0), {0.9, 0.0}, 1);
    CHECK_FALSE(broken.rs_member);
    CHECK(broken.gap > 1e-4);
}

TEST_CASE("rs_gap: values are monotone in k under the cascade") {
    KrsbOptions ko;
    ko.threads = 2;
    const auto rep = rs_gap(MixtureSpec::sk(), {1.2, 0.0}, 2, ko);
    REQUIRE(rep.values_by_k.size() == 3);
    CHECK(rep.values_by_k[1] <= rep.values_by_k[0] + 1e-10);
    CHECK(rep.values_by_k[2] <= rep.values_by_k[1] + 1e-10);
    CHECK(rep.gap > 1e-6);  // SK at beta=1.2 is not replica symmetric
}
