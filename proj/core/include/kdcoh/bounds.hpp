#pragma once

#include "kdcoh/coherence.hpp"
#include "kdcoh/qstate.hpp"

namespace kdcoh {

// Upper-bound chain for an optimized nonclassicality value: the l1-norm,
// the sqrt-probability measurement uncertainty, the purity bound
// sqrt(d Tr rho^2) - 1, and the dimensional ceiling sqrt(d) - 1.
struct BoundReport {
    double c_value = 0.0;
    double l1 = 0.0;
    double measurement_uncertainty = 0.0;
    double purity_bound = 0.0;
    double dim_bound = 0.0;
    double slack = 0.0;
    bool all_satisfied = false;
};

// sum_a sqrt(<a|rho|a>) - 1; equals half the Tsallis-1/2 entropy of the
// outcome distribution, and never exceeds sqrt(d) - 1.
double measurement_uncertainty(const DensityOperator& rho, const OrthonormalBasis& A);

// sqrt(d * Tr rho^2) - 1.
double purity_bound(const DensityOperator& rho);

// Check the optimizer value against every bound. The report must have been
// produced for exactly this (rho, A) pair in ncl mode; that provenance is
// verified by re-evaluating the objective at report.best_params.
BoundReport verify_bounds(const DensityOperator& rho, const OrthonormalBasis& A,
                          const OptimizationReport& report, double slack = 1e-6);

}  // namespace kdcoh
