#include "pspin/mixture.hpp"

#include <cmath>
#include <string>

#include "pspin/errors.hpp"

namespace pspin {

MixtureSpec::MixtureSpec(std::vector<MixtureTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty())
        throw PreconditionError("MixtureSpec: at least one term required");
    int prev = 1;
    bool any_positive = false;
    for (const auto& t : terms_) {
        if (t.degree < 2)
            throw PreconditionError("MixtureSpec: degree must be >= 2, got " +
                                    std::to_string(t.degree));
        if (t.degree <= prev)
            throw PreconditionError("MixtureSpec: degrees must be strictly increasing");
        if (!(t.coeff >= 0.0))
            throw PreconditionError("MixtureSpec: coefficients must be non-negative");
        if (t.coeff > 0.0) any_positive = true;
        prev = t.degree;
    }
    if (!any_positive)
        throw PreconditionError("MixtureSpec: at least one coefficient must be positive");
    dense_.assign(static_cast<size_t>(terms_.back().degree) + 1, 0.0);
    for (const auto& t : terms_) dense_[static_cast<size_t>(t.degree)] = t.coeff;
}

namespace {
// Horner evaluation of the k-th derivative of the dense polynomial.
double horner_deriv(const std::vector<double>& c, double r, int k) {
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg < k) return 0.0;
    double acc = 0.0;
    for (int j = deg; j >= k; --j) {
        double fac = 1.0;
        for (int i = 0; i < k; ++i) fac *= static_cast<double>(j - i);
        acc = acc * r + fac * c[static_cast<size_t>(j)];
    }
    return acc;
}
}  // namespace

double MixtureSpec::eval(double r) const { return horner_deriv(dense_, r, 0); }
double MixtureSpec::d1(double r) const { return horner_deriv(dense_, r, 1); }
double MixtureSpec::d2(double r) const { return horner_deriv(dense_, r, 2); }
double MixtureSpec::d3(double r) const { return horner_deriv(dense_, r, 3); }

MixtureSpec MixtureSpec::sk() { return MixtureSpec({{2, 0.5}}); }

MixtureSpec MixtureSpec::sk_plus_p(int p, double c) {
    return MixtureSpec({{2, 0.5}, {p, std::pow(c, p) / p}});
}

MixtureSpec MixtureSpec::pure_p(int p, double c) {
    return MixtureSpec({{p, std::pow(c, p) / p}});
}

void validate(const CouplingParams& params) {
    if (!(params.beta >= 0.0))
        throw PreconditionError("CouplingParams: beta must be >= 0");
    if (!std::isfinite(params.h))
        throw PreconditionError("CouplingParams: h must be finite");
}

double theta(const MixtureSpec& spec, const CouplingParams& params, double q) {
    if (q < 0.0 || q > 1.0)
        throw PreconditionError("theta: q must lie in [0, 1]");
    return params.beta * params.beta * (q * spec.d1(q) - spec.eval(q));
}

ConjugateResult conjugate(const MixtureSpec& spec, double a) {
    if (!(a >= 0.0)) throw PreconditionError("conjugate: a must be >= 0");
    if (a == 0.0) return {0.0, 0.0};

    // Bracket the root of xi0'(r) = a; xi0' is increasing from 0.
    double hi = 1.0;
    int grow = 0;
    while (spec.d1(hi) < a) {
        hi *= 2.0;
        if (++grow > 1100)
            throw SolverFailure("conjugate: bracket growth failed", 0.0, hi);
    }
    double lo = 0.0;
    double r = 0.5 * hi;
    // |xi0'(r) - a| tolerance is relative for large a: the absolute 1e-12
    // target is below double resolution once a exceeds ~1e4.
    const double tol = 1e-12 * std::max(1.0, a);
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
        const double f = spec.d1(r) - a;
        if (std::fabs(f) <= tol) {
            converged = true;
            break;
        }
        if (f > 0.0)
            hi = r;
        else
            lo = r;
        const double df = spec.d2(r);
        double next = (df > 0.0) ? r - f / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == r) {
            converged = true;  // bracket exhausted at double resolution
            break;
        }
        r = next;
    }
    if (!converged) throw SolverFailure("conjugate: Newton did not converge", lo, hi);
    return {a * r - spec.eval(r), r};
}

}  // namespace pspin
