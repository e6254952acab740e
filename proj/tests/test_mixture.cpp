#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pspin/errors.hpp"
#include "pspin/mixture.hpp"
#include "test_support.hpp"

using namespace pspin;

TEST_CASE("SK calculus") {
    const auto sk = MixtureSpec::sk();
    CHECK(sk.eval(1.0) == doctest::Approx(0.5));
    CHECK(sk.d1(1.0) == doctest::Approx(1.0));
    CHECK(sk.d2(1.0) == doctest::Approx(1.0));
    CHECK(sk.d3(1.0) == 0.0);
    CHECK(sk.eval(0.0) == 0.0);
    CHECK(sk.d1(0.0) == 0.0);
}

TEST_CASE("counterexample model arithmetic") {
    const auto spec = MixtureSpec::sk_plus_p(4, 2.0);  // (Cr)^4/4 with C=2 -> 4 r^4
    CHECK(spec.eval(0.5) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(spec.eval(0.0) == 0.0);
    CHECK(spec.d1(0.0) == 0.0);
    CHECK(spec.d2(0.0) == doctest::Approx(1.0));
    CHECK(spec.d1(1.0) == doctest::Approx(17.0));
    CHECK(MixtureSpec::pure_p(4, 2.0).d3(0.5) == doctest::Approx(48.0));
}

TEST_CASE("theta closed form") {
    const auto sk = MixtureSpec::sk();
    CHECK(theta(sk, {1.0, 0.0}, 1.0) == doctest::Approx(0.5));
    CHECK(theta(sk, {1.0, 0.0}, 0.0) == 0.0);
    CHECK(theta(MixtureSpec::pure_p(3), {2.0, 0.0}, 0.0) == 0.0);
    const auto ce = MixtureSpec::sk_plus_p(4, 2.0);
    CHECK(theta(ce, {1.0, 0.0}, 1.0) == doctest::Approx(12.5).epsilon(1e-14));
    // non-decreasing on [0, 1]
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double t = theta(ce, {1.3, 0.0}, i / 100.0);
        CHECK(t >= prev - 1e-14);
        prev = t;
    }
}

TEST_CASE("conjugate closed cases") {
    const auto sk = MixtureSpec::sk();
    const auto c2 = conjugate(sk, 2.0);
    CHECK(c2.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(c2.argmax == doctest::Approx(2.0).epsilon(1e-12));
    const auto c0 = conjugate(sk, 0.0);
    CHECK(c0.value == 0.0);
    CHECK(c0.argmax == 0.0);
}

TEST_CASE("pure quartic conjugate against a grid-search oracle") {
    const auto spec = MixtureSpec::pure_p(4, 2.0);  // 4 r^4
    const auto c = conjugate(spec, 1.0);
    // closed form (3/4) (1/2)^{4/3}; argmax solves 16 r^3 = 1
    const double closed = 0.75 * std::pow(0.5, 4.0 / 3.0);
    CHECK(c.value == doctest::Approx(closed).epsilon(1e-12));
    CHECK(c.argmax == doctest::Approx(std::pow(1.0 / 16.0, 1.0 / 3.0)).epsilon(1e-10));
    const double oracle = testsupport::grid_search_max(
        [&](double r) { return r - spec.eval(r); }, 0.0, 2.0, 2000000);
    CHECK(c.value == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("Fenchel-Young and conjugate consistency") {
    for (const auto& spec : {MixtureSpec::sk(), MixtureSpec::sk_plus_p(4, 2.0),
                             MixtureSpec::pure_p(4)}) {
        testsupport::Uniform rng(42);
        const double a_hi = spec.d1(4.0);
        for (int i = 0; i < 200; ++i) {
            const double r = rng.in(0.0, 4.0);
            const double a = rng.in(0.0, a_hi);
            const auto c = conjugate(spec, a);
            CHECK(a * r <= spec.eval(r) + c.value + 1e-10);
        }
        for (int i = 0; i <= 40; ++i) {
            const double r = 4.0 * i / 40.0;
            const double a = spec.d1(r);
            const auto c = conjugate(spec, a);
            // equality at the maximizer
            const double want = r * a - spec.eval(r);
            CHECK(std::fabs(c.value - want) <= 1e-8 * std::max(1.0, std::fabs(want)));
            CHECK(std::fabs(a * c.argmax - spec.eval(c.argmax) - want) <= 1e-8);
        }
    }
}

TEST_CASE("monotone calculus on the positive axis") {
    for (const auto& spec : {MixtureSpec::sk(), MixtureSpec::sk_plus_p(4, 3.0),
                             MixtureSpec::pure_p(6)}) {
        double e = 0.0, d = 0.0, dd = -1.0;
        for (int i = 0; i <= 200; ++i) {
            const double r = 5.0 * i / 200.0;
            CHECK(spec.eval(r) >= e);
            CHECK(spec.d1(r) >= d);
            CHECK(spec.d2(r) >= dd);
            e = spec.eval(r);
            d = spec.d1(r);
            dd = spec.d2(r);
        }
    }
}

TEST_CASE("Step-2 domination of the conjugate") {
    const int p = 4;
    const double C = 5.0;
    const auto spec = MixtureSpec::sk_plus_p(p, C);
    for (int i = 0; i <= 100; ++i) {
        const double a = 50.0 * i / 100.0;
        const double bound = (p - 1.0) / p * std::pow(a / C, p / (p - 1.0));
        CHECK(conjugate(spec, a).value <= bound + 1e-12);
    }
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(MixtureSpec({}), PreconditionError);
    CHECK_THROWS_AS(MixtureSpec({{1, 0.5}}), PreconditionError);
    CHECK_THROWS_AS(MixtureSpec({{2, -0.5}}), PreconditionError);
    CHECK_THROWS_AS(MixtureSpec({{4, 0.5}, {2, 0.5}}), PreconditionError);
    CHECK_THROWS_AS(MixtureSpec({{2, 0.0}}), PreconditionError);
    CHECK_THROWS_AS(conjugate(MixtureSpec::sk(), -1.0), PreconditionError);
    CHECK_THROWS_AS(validate(CouplingParams{-1.0, 0.0}), PreconditionError);
    const CouplingParams p{3.0, 0.1};
    CHECK(p.t() == 4.5);
}
