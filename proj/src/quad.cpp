#include "pspin/quad.hpp"

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "pspin/errors.hpp"

namespace pspin {

namespace {

// Orthonormal probabilists' Hermite values p_0..p_n at x, plus the
// derivative of p_n (which is sqrt(n) p_{n-1}).
void hermite_column(int n, double x, double& pn, double& dpn, double& christoffel) {
    double pm = 0.0, p = 1.0;  // p_{-1}, p_0
    christoffel = 1.0;         // sum of p_k^2 for k < n
    for (int k = 0; k < n; ++k) {
        const double pk1 = (x * p - std::sqrt(static_cast<double>(k)) * pm) /
                           std::sqrt(static_cast<double>(k + 1));
        pm = p;
        p = pk1;
        if (k + 1 < n) christoffel += p * p;
    }
    pn = p;
    dpn = std::sqrt(static_cast<double>(n)) * pm;
}

// Golub-Welsch on the Jacobi matrix of the probabilists' Hermite
// polynomials (zero diagonal, off-diagonal sqrt(k)), followed by Newton
// polishing of the nodes and Christoffel weights: the raw eigenvector
// weights only carry absolute accuracy, which ruins the tiny tail weights.
GaussianRule build_rule(int n) {
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = std::sqrt(static_cast<double>(k));
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericError("gauss_hermite: eigen-decomposition failed");

    GaussianRule rule;
    rule.order = n;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = es.eigenvalues()(i);
        double pn, dpn, chr;
        for (int it = 0; it < 4; ++it) {
            hermite_column(n, x, pn, dpn, chr);
            const double step = pn / dpn;
            x -= step;
            if (std::fabs(step) < 1e-15 * (1.0 + std::fabs(x))) break;
        }
        hermite_column(n, x, pn, dpn, chr);
        rule.nodes[i] = x;
        rule.weights[i] = 1.0 / chr;
    }
    // Eigenvalues come out sorted; enforce exact +/- symmetry of the nodes
    // and unit mass of the weights.
    for (int i = 0; i < n / 2; ++i) {
        const int j = n - 1 - i;
        const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        rule.nodes[i] = -x;
        rule.nodes[j] = x;
        const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.weights[i] = w;
        rule.weights[j] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    double mass = 0.0;
    for (double w : rule.weights) mass += w;
    for (double& w : rule.weights) w /= mass;
    return rule;
}

}  // namespace

const GaussianRule& gauss_hermite(int n) {
    if (n < 1 || n > 200)
        throw PreconditionError("gauss_hermite: order must be in [1, 200], got " +
                                std::to_string(n));
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussianRule>> cache;
    std::scoped_lock lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussianRule>(build_rule(n));
    return *slot;
}

double expect(const GaussianRule& rule, const std::function<double(double)>& f) {
    double acc = 0.0;
    for (int i = 0; i < rule.order; ++i) {
        const double v = f(rule.nodes[i]);
        if (!std::isfinite(v))
            throw NumericError("expect: non-finite integrand at node " +
                               std::to_string(i) + " (x = " +
                               std::to_string(rule.nodes[i]) + ")");
        acc += rule.weights[i] * v;
    }
    return acc;
}

double expect(int order, const std::function<double(double)>& f) {
    return expect(gauss_hermite(order), f);
}

double expect_affine(const GaussianRule& rule, const std::function<double(double)>& f,
                     double scale, double shift) {
    if (scale == 0.0) {
        const double v = f(shift);
        if (!std::isfinite(v))
            throw NumericError("expect_affine: non-finite integrand at x = " +
                               std::to_string(shift));
        return v;
    }
    return expect(rule, [&](double z) { return f(shift + scale * z); });
}

double expect_affine(int order, const std::function<double(double)>& f,
                     double scale, double shift) {
    return expect_affine(gauss_hermite(order), f, scale, shift);
}

}  // namespace pspin
