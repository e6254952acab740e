#ifndef PSPIN_MIXTURE_HPP
#define PSPIN_MIXTURE_HPP

#include <vector>

namespace pspin {

struct MixtureTerm {
    int degree;    // p >= 2
    double coeff;  // beta_p >= 0
};

// A mixed p-spin coupling function xi0(r) = sum_p beta_p r^p with finitely
// many non-negative coefficients and every degree >= 2, so xi0(0) = 0 and
// xi0'(0) = 0 hold exactly.
class MixtureSpec {
  public:
    explicit MixtureSpec(std::vector<MixtureTerm> terms);

    double eval(double r) const;  // xi0(r)
    double d1(double r) const;    // xi0'(r)
    double d2(double r) const;    // xi0''(r)
    double d3(double r) const;    // xi0'''(r)

    const std::vector<MixtureTerm>& terms() const { return terms_; }
    int max_degree() const { return terms_.back().degree; }

    static MixtureSpec sk();                             // {(2, 1/2)}
    static MixtureSpec sk_plus_p(int p, double c);       // {(2, 1/2), (p, C^p/p)}
    static MixtureSpec pure_p(int p, double c = 1.0);    // {(p, C^p/p)}

  private:
    std::vector<MixtureTerm> terms_;
    // Dense coefficient table c[k] of r^k for Horner evaluation.
    std::vector<double> dense_;
};

// Inverse temperature and external field; t = beta^2/2.
struct CouplingParams {
    double beta = 1.0;
    double h = 0.0;
    double t() const { return 0.5 * beta * beta; }
};

void validate(const CouplingParams& params);

// theta(q) = q xi'(q) - xi(q) with xi = beta^2 xi0; the closed form of the
// penalty integral int_a^b xi''(s) s ds = theta(b) - theta(a).
double theta(const MixtureSpec& spec, const CouplingParams& params, double q);

struct ConjugateResult {
    double value;   // xi0*(a)
    double argmax;  // maximizing r >= 0
};

// Convex conjugate xi0*(a) = sup_{r>=0} (a r - xi0(r)), a >= 0.  For a > 0
// the maximizer is the unique root of xi0'(r) = a, found by safeguarded
// Newton with a geometrically grown bracket.
ConjugateResult conjugate(const MixtureSpec& spec, double a);

}  // namespace pspin

#endif
