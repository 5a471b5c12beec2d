#pragma once

#include <cstdint>
#include <vector>

#include "kdcoh/coherence.hpp"
#include "kdcoh/qstate.hpp"

namespace kdcoh {

// Shot-noise model for direct KD-entry estimation. Each real and imaginary
// component of an entry acquires independent zero-mean Gaussian noise of
// standard deviation 1/(2*sqrt(N)) — the worst-case binomial width when a
// +-1-bounded observable is averaged over N shots. `exact` disables the
// noise (the infinite-shot limit), useful for plumbing checks.
struct SamplingModel {
    enum class Noise { gaussian_surrogate, exact };

    long shots_per_entry = 1000;
    Noise noise = Noise::gaussian_surrogate;
    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument if shots < 1
    double entry_std() const;
};

// SPSA gain schedules a_k = a/(k+1+stability)^0.602, c_k = c/(k+1)^0.101.
struct SPSAGains {
    double a = 0.2;
    double c = 0.1;
    double stability = 30.0;
};

struct EstimationTrace {
    struct Step {
        BasisParams params;
        double value = 0.0;  // noisy objective at params
    };
    // Step 0 is the start point; one entry per SPSA update thereafter.
    std::vector<Step> iterations;
    double final_value = 0.0;    // value of the last logged iterate
    BasisParams final_params;    // wrapped coordinates of the last iterate
    double exact_reference = 0.0;  // noiseless multi-start optimum (desk-scale only)
    long long total_shots = 0;     // shots_per_entry * d^2 * objective evaluations
    // Upper bound on the positive bias of the noisy objective: folding |.|
    // over noise inflates near-zero entries by at most the complex noise
    // std sqrt(2)/(2 sqrt(N)) each, d^2 entries total.
    double bias_bound = 0.0;
};

// One noisy draw of q[a][b]. Deterministic per (model.seed, a, b,
// eval_counter); distinct counters give independent draws of the same entry.
Cx sample_kd_entry(const DensityOperator& rho, const OrthonormalBasis& A,
                   const OrthonormalBasis& B, int a, int b, const SamplingModel& model,
                   std::uint64_t eval_counter = 0);

// Sum of moduli of one noisy draw of the full table, minus 1, floored at 0.
// Positively biased near zero entries (see EstimationTrace::bias_bound);
// with noise disabled it equals objective_ncl exactly.
double noisy_objective(const DensityOperator& rho, const OrthonormalBasis& A,
                       const BasisParams& params, const SamplingModel& model,
                       std::uint64_t eval_counter = 0);

// Hybrid loop: probe cfg.starts seeded uniform points with one noisy
// evaluation each, then run cfg.max_iterations SPSA updates of
// noisy_objective from the best probe. Classical randomness (probe points,
// perturbation signs) derives from cfg.seed; measurement noise derives
// from model.seed. Same seeds => identical trace.
EstimationTrace variational_estimate(const DensityOperator& rho, const OrthonormalBasis& A,
                                     const OptimizerConfig& cfg, const SamplingModel& model,
                                     const SPSAGains& gains = {});

}  // namespace kdcoh
