#ifndef PSPIN_FINITE_N_HPP
#define PSPIN_FINITE_N_HPP

#include <cstdint>
#include <vector>

#include "pspin/mixture.hpp"

namespace pspin {

// One disorder realization: the Hamiltonian on all 2^N configurations, in
// energy units of N so that E[H(s1) H(s2)] = N xi0(overlap).
struct DisorderSample {
    int n_spins = 0;
    std::uint64_t seed = 0;
    std::vector<double> energies;  // indexed by the spin bitmask
};

// Exact Gaussian sampling of the mixed p-spin Hamiltonian: per term,
// i.i.d. standard normals over all p-index tuples, streamed in blocks
// (the full tensor is never stored).  Deterministic given the seed.
DisorderSample sample_hamiltonian(const MixtureSpec& spec, int n_spins,
                                  std::uint64_t seed);

struct MCEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    int n_spins = 0;
    int n_samples = 0;
};

// F_N by exact log-sum over the 2^N states per disorder sample, averaged
// over independent samples.
MCEstimate free_energy_mc(const MixtureSpec& spec, const CouplingParams& params,
                          int n_spins, int n_disorder, std::uint64_t seed);

}  // namespace pspin

#endif
