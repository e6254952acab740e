#include "pspin/finite_n.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pspin/errors.hpp"

namespace pspin {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t& state) {
    // (0, 1]: never 0, so log() below is safe
    return (static_cast<double>(splitmix64(state) >> 11) + 1.0) * 0x1.0p-53;
}

// Box-Muller; implementation-independent determinism.
struct Gaussian {
    std::uint64_t state;
    bool have = false;
    double spare = 0.0;
    explicit Gaussian(std::uint64_t seed) : state(seed) {}
    double operator()() {
        if (have) {
            have = false;
            return spare;
        }
        const double u1 = uniform01(state);
        const double u2 = uniform01(state);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare = r * std::sin(a);
        have = true;
        return r * std::cos(a);
    }
};

}  // namespace

DisorderSample sample_hamiltonian(const MixtureSpec& spec, int n_spins,
                                  std::uint64_t seed) {
    if (n_spins < 2 || n_spins > 16)
        throw PreconditionError("sample_hamiltonian: N must lie in [2, 16]");
    const int n = n_spins;
    const std::uint32_t n_conf = 1u << n;

    DisorderSample out;
    out.n_spins = n;
    out.seed = seed;
    out.energies.assign(n_conf, 0.0);

    Gaussian rng(seed);
    std::vector<std::uint32_t> masks;
    std::vector<double> draws;
    constexpr std::size_t block = 4096;

    for (const auto& term : spec.terms()) {
        if (term.coeff == 0.0) continue;
        const int p = term.degree;
        const double scale =
            std::sqrt(term.coeff) * std::pow(static_cast<double>(n), 0.5 * (1 - p));
        // stream all n^p ordered index tuples; an index toggles the parity
        // mask once per occurrence, so the spin product is (-1)^|c & mask|
        std::vector<int> idx(p, 0);
        bool done = false;
        while (!done) {
            masks.clear();
            draws.clear();
            while (!done && masks.size() < block) {
                std::uint32_t mask = 0;
                for (int j = 0; j < p; ++j) mask ^= 1u << idx[j];
                masks.push_back(mask);
                draws.push_back(rng());
                int j = p - 1;
                while (j >= 0 && ++idx[j] == n) idx[j--] = 0;
                done = j < 0;
            }
            for (std::uint32_t c = 0; c < n_conf; ++c) {
                double acc = 0.0;
                for (std::size_t b = 0; b < masks.size(); ++b) {
                    const int par = std::popcount(c & masks[b]) & 1;
                    acc += par ? -draws[b] : draws[b];
                }
                out.energies[c] += scale * acc;
            }
        }
    }
    return out;
}

MCEstimate free_energy_mc(const MixtureSpec& spec, const CouplingParams& params,
                          int n_spins, int n_disorder, std::uint64_t seed) {
    validate(params);
    if (n_disorder < 1)
        throw PreconditionError("free_energy_mc: need at least one disorder sample");
    const int n = n_spins;
    const std::uint32_t n_conf = 1u << n;

    std::vector<double> values(n_disorder);
    for (int s = 0; s < n_disorder; ++s) {
        std::uint64_t stream = seed;
        std::uint64_t sub = splitmix64(stream) ^ (0x9E3779B97F4A7C15ULL * (s + 1));
        const auto sample = sample_hamiltonian(spec, n, sub);
        double mx = -std::numeric_limits<double>::infinity();
        for (std::uint32_t c = 0; c < n_conf; ++c) {
            const int up = n - 2 * std::popcount(c);
            const double e = params.beta * sample.energies[c] + params.h * up;
            if (e > mx) mx = e;
        }
        double z = 0.0;
        for (std::uint32_t c = 0; c < n_conf; ++c) {
            const int up = n - 2 * std::popcount(c);
            z += std::exp(params.beta * sample.energies[c] + params.h * up - mx);
        }
        values[s] = (mx + std::log(z) - n * std::log(2.0)) / n;
    }
    MCEstimate est;
    est.n_spins = n;
    est.n_samples = n_disorder;
    double sum = 0.0;
    for (double v : values) sum += v;
    est.mean = sum / n_disorder;
    if (n_disorder > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - est.mean) * (v - est.mean);
        est.stderr_ = std::sqrt(ss / (n_disorder - 1) / n_disorder);
    }
    return est;
}

}  // namespace pspin
