#ifndef PSPIN_SCAN_HPP
#define PSPIN_SCAN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pspin/hopflax.hpp"
#include "pspin/mixture.hpp"
#include "pspin/parisi.hpp"
#include "pspin/rs_at.hpp"

namespace pspin {

// One (beta, h) grid point.  A cell where the AT condition holds while the
// k-RSB proxy rejects replica symmetry witnesses Theorem 1.
struct PhaseCell {
    double beta = 0.0;
    double h = 0.0;
    double alpha_min = 0.0;
    bool at_member = false;
    double rs_value = 0.0;
    double krsb_value = 0.0;
    double gap = 0.0;
    bool rs_member = false;
    double alpha_at_rs_min = 0.0;
    bool rs_min_unique = false;
    bool witness = false;        // at_member && !rs_member
    bool inclusion_ok = true;    // !(rs_member && !at_member)
    double k_monotone_violation = 0.0;  // max increase of value_by_k along k
    std::string error;           // per-cell failure, empty when clean
};

struct ScanOptions {
    int k_max = 1;
    std::uint64_t seed = 7;
    int threads = 1;
    double rs_gap_tol = 1e-6;
    KrsbOptions krsb{};
    RootScanOptions root{};
    MinimizeOptions minimize{};
};

// Grid scanner; cells are computed independently (optionally by a worker
// pool) and returned in deterministic row-major (beta outer, h inner)
// order.  Per-cell failures are recorded in the cell, never thrown.
std::vector<PhaseCell> phase_grid(const MixtureSpec& spec, double beta_min,
                                  double beta_max, int n_beta, double h_min,
                                  double h_max, int n_h, const ScanOptions& opts = {});

// Fixed-column CSV: beta,h,alpha_min,at_member,rs_value,krsb_value,gap,
// rs_member,alpha_at_rs_min,rs_min_unique,witness.  Booleans as 0/1, reals
// with 12 significant digits; byte-identical across reruns.
std::string phase_csv(const std::vector<PhaseCell>& cells);

}  // namespace pspin

#endif
