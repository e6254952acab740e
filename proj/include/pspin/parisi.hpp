#ifndef PSPIN_PARISI_HPP
#define PSPIN_PARISI_HPP

#include <cstdint>
#include <vector>

#include "pspin/mixture.hpp"
#include "pspin/rs_at.hpp"

namespace pspin {

// Atomic probability measure on [0,1]: candidate Parisi measure.  Atoms are
// strictly increasing, weights positive and normalized to unit mass.
class RSBMeasure {
  public:
    RSBMeasure(std::vector<double> atoms, std::vector<double> weights);

    const std::vector<double>& atoms() const { return atoms_; }
    const std::vector<double>& weights() const { return weights_; }
    // CDF levels m_i = sum_{j<=i} w_j, so mu([0,s]) = m_i for s in [q_i, q_{i+1}).
    std::vector<double> cdf_levels() const;
    size_t size() const { return atoms_.size(); }

    static RSBMeasure dirac(double q) { return RSBMeasure({q}, {1.0}); }

  private:
    std::vector<double> atoms_;
    std::vector<double> weights_;
};

// Finite-difference grid for the Parisi PDE.  x_max == 0 requests the
// default 3 (sqrt(xi'(1)) + |h|) + 8.
struct PDEGrid {
    double x_max = 0.0;
    int nx = 1025;
    int nr = 256;
    double cfl = 0.4;
    long max_substeps = 20000000;
};

// Parisi functional for an atomic measure via the exact finite-RSB
// recursion: u(0,h) minus the theta-closed-form penalty.
double parisi_value(const RSBMeasure& measure, const MixtureSpec& spec,
                    const CouplingParams& params, int quad_order = 60);

struct PDESolution {
    double value = 0.0;
    double max_abs_slope = 0.0;  // max |du/dx| seen during the march
    long substeps = 0;
};

// Independent oracle: backward finite-difference solve of the Parisi PDE in
// the standard form du/dr + (xi''(r)/2)[u_xx + mu([0,r]) u_x^2] = 0.
PDESolution parisi_pde_detail(const RSBMeasure& measure, const MixtureSpec& spec,
                              const CouplingParams& params, const PDEGrid& grid = {});
double parisi_pde_solve(const RSBMeasure& measure, const MixtureSpec& spec,
                        const CouplingParams& params, const PDEGrid& grid = {});

struct KrsbOptions {
    int starts = 8;          // multi-start count (minimum 8)
    std::uint64_t seed = 1;  // start-generation seed
    double value_tol = 1e-10;
    double param_tol = 1e-8;
    int max_evals = 0;          // 0 -> Nelder-Mead default
    double merge_tol = 1e-9;    // atom-collision merge distance
    int quad_order = 60;
    int threads = 1;            // parallel starts
};

struct KrsbResult {
    std::vector<double> atoms;
    std::vector<double> weights;
    double value = 0.0;
};

// Best (k+1)-atom measure by multi-start Nelder-Mead over a reparameterized
// unconstrained vector (positions through a sorted logistic map, weights
// through softmax).  warm, when given, is embedded as an extra start whose
// value is reproduced exactly.
KrsbResult optimize_krsb(int k, const MixtureSpec& spec, const CouplingParams& params,
                         const KrsbOptions& opts = {}, const RSBMeasure* warm = nullptr);

struct GapReport {
    double rs_value = 0.0;              // rs_minimize minimum
    double krsb_value = 0.0;            // best over k <= k_max
    double gap = 0.0;                   // rs_value - krsb_value
    bool rs_member = false;             // gap <= rs_gap_tol
    std::vector<double> values_by_k;    // optimize_krsb value per k
    std::vector<double> best_atoms;
    std::vector<double> best_weights;
};

// RS-membership decision proxy at finite k: cascade of optimize_krsb runs
// warm-started from the previous depth.
GapReport rs_gap(const MixtureSpec& spec, const CouplingParams& params, int k_max,
                 const KrsbOptions& opts = {}, double rs_gap_tol = 1e-6);

}  // namespace pspin

#endif
