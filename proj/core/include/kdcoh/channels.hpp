#pragma once

#include <utility>
#include <vector>

#include "kdcoh/kdq.hpp"
#include "kdcoh/qstate.hpp"

namespace kdcoh {

// Mixture of basis permutations controlled by a classical ancilla: with
// probability probs[e], relabel the incoherent basis by perms[e].
struct CIPSpec {
    std::vector<double> probs;
    std::vector<std::vector<int>> perms;
    void validate(int dim) const;  // throws std::invalid_argument
};

// p * rho + (1-p) * sum_a P_a rho P_a: convex blend with the fully
// dephased state in basis A.
DensityOperator dephase_mix(const DensityOperator& rho, const OrthonormalBasis& A, double p);

// KD table summed over partition blocks of the first index, with the
// functionals of the coarse table.
struct CoarseKD {
    Matrix table;  // blocks x d
    FunctionalReport functionals;
};
CoarseKD coarse_grain_kd(const DensityOperator& rho, const OrthonormalBasis& A,
                         const PartitionSpec& part, const OrthonormalBasis& B);

// Joint unitary relabeling (U rho U^dag, {U|a>}).
std::pair<DensityOperator, OrthonormalBasis> conjugate(const DensityOperator& rho,
                                                       const OrthonormalBasis& A,
                                                       const Matrix& U);

// Controlled incoherent-permutation channel, Kraus closed form
// sum_e probs[e] P_e rho P_e^dag.
DensityOperator phi_cip(const DensityOperator& rho, const CIPSpec& spec);

// Same channel realized literally through its dilation: adjoin a diagonal
// ancilla, apply U = sum_e P_e (x) |e><e|, trace the ancilla out. Kept as a
// cross-check for the closed form.
DensityOperator phi_cip_dilation(const DensityOperator& rho, const CIPSpec& spec);

}  // namespace kdcoh
