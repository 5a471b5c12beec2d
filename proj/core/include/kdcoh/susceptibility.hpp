#pragma once

#include "kdcoh/qstate.hpp"

namespace kdcoh {

// A state and its parameter derivative at the working point: drho must be
// Hermitian and traceless (both within kValidationTol).
struct StateDerivativePair {
    StateDerivativePair(DensityOperator rho0_in, Matrix drho_in);
    DensityOperator rho0;
    Matrix drho;
};

// Symmetric logarithmic derivative L solving (L rho + rho L)/2 = drho.
// Components connecting eigenvalue pairs with p_i + p_j below the support
// cutoff are set to zero (minimal-norm convention for rank-deficient rho0);
// residual records the Frobenius norm of the defining-relation mismatch.
struct SLDResult {
    Matrix L;
    bool support_cutoff_used = false;
    double residual = 0.0;
};

struct BoundCheck {
    double value = 0.0;   // |chi| / (centered ||A|| * ||L||)
    double bound = 0.0;   // coherence_value + 1
    bool vacuous = false; // a denominator norm fell below kSingularEps
    bool holds = false;
};

SLDResult sld(const StateDerivativePair& pair, double support_eps = 1e-12);

// Linear response of observable A_op: chi = Re Tr(A_op L rho0).
double static_susceptibility(const Matrix& A_op, const StateDerivativePair& pair);

// Evaluate chi three independent ways (operator trace; eigenvalue-weighted
// sum over the KD table of the A_op/L eigenbases; the same sum with A_op
// eigenvalues centered by Tr(A_op rho0)) and return the largest pairwise
// discrepancy.
double kd_decomposition_check(const Matrix& A_op, const StateDerivativePair& pair);

// |chi| normalized by the centered operator norm of A_op and the norm of L
// never exceeds (coherence of rho0 w.r.t. A_op's eigenbasis) + 1.
BoundCheck normalized_bound_check(const Matrix& A_op, const StateDerivativePair& pair,
                                  double coherence_value, double slack = 1e-6);

// Quantum Fisher information Tr(L^2 rho0).
double qfi(const StateDerivativePair& pair);

// Derivative of the conjugation family e^{-i t H} rho0 e^{i t H} at t = 0:
// exactly -i[H, rho0], and by central finite differences with step h.
Matrix commutator_derivative(const Matrix& H, const DensityOperator& rho0);
Matrix finite_difference_drho(const Matrix& H, const DensityOperator& rho0, double h = 1e-5);

// Largest absolute eigenvalue of a Hermitian matrix.
double operator_norm(const Matrix& herm);

// Orthonormal eigenbasis of a Hermitian matrix (ascending eigenvalues),
// exposed because susceptibility decompositions feed eigenbases into KD
// tables.
std::pair<Eigen::VectorXd, Matrix> hermitian_eigs(const Matrix& herm);

}  // namespace kdcoh
