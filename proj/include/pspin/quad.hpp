#ifndef PSPIN_QUAD_HPP
#define PSPIN_QUAD_HPP

#include <cmath>
#include <functional>
#include <vector>

namespace pspin {

// Gauss-Hermite rule in probabilists' normalization: sum_i w_i f(x_i)
// equals E[f(Z)] exactly for polynomials f of degree <= 2n-1, Z ~ N(0,1).
struct GaussianRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Build (and cache) the rule of a given order.  1 <= n <= 200.
const GaussianRule& gauss_hermite(int n);

// E[f(Z)] by quadrature.  Throws NumericError naming the node if f is
// non-finite there.
double expect(const GaussianRule& rule, const std::function<double(double)>& f);
double expect(int order, const std::function<double(double)>& f);

// E[f(scale*Z + shift)].  scale == 0 collapses to f(shift) exactly, which
// keeps degenerate-Gaussian cases (beta = 0, xi'(0) = 0) free of quadrature
// round-off.
double expect_affine(const GaussianRule& rule, const std::function<double(double)>& f,
                     double scale, double shift);
double expect_affine(int order, const std::function<double(double)>& f,
                     double scale, double shift);

// log cosh(x) without overflow.
inline double log_cosh(double x) {
    const double ax = std::fabs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - 0.6931471805599453094172321214581766;
}

}  // namespace pspin

#endif
