#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kdcoh/kdq.hpp"
#include "kdcoh/qstate.hpp"

namespace kdcoh {

enum class Quantity { ncl, nre };
enum class SearchMode { full, product };

struct OptimizerConfig {
    int starts = 32;
    int max_iterations = 2000;
    double function_tolerance = 1e-8;
    std::uint64_t seed = 0;
    SearchMode mode = SearchMode::full;
    // Experimental escape hatch: permit a full-chart search even when the
    // incoherent basis is declared product (normally a usage error).
    bool force_full_chart = false;
};

struct OptimizationReport {
    double value = 0.0;
    BasisParams best_params;
    OrthonormalBasis best_basis;
    bool converged = false;
    long evaluations = 0;
    std::vector<double> per_start_values;
};

// l1-norm of coherence: sum of off-diagonal moduli of rho in basis A.
double c_l1(const DensityOperator& rho, const OrthonormalBasis& A);

// Objectives as plain functions of chart coordinates (exactly the composed
// kd_distribution -> functionals pipeline).
double objective_ncl(const DensityOperator& rho, const OrthonormalBasis& A,
                     const BasisParams& p);
double objective_nre(const DensityOperator& rho, const OrthonormalBasis& A,
                     const BasisParams& p);

// Multi-start Nelder-Mead ascent of the chosen functional over the second
// basis. cfg.starts independent searches from seeded uniform start points;
// the report keeps the max, ties broken by lowest start index; bit-identical
// for a fixed seed whether starts run serially or in parallel.
OptimizationReport optimize_coherence(const DensityOperator& rho, const OrthonormalBasis& A,
                                      Quantity quantity, const OptimizerConfig& cfg);

// Same search machinery over an arbitrary functional of the second basis
// (columns passed uncanonicalized; KD entries do not depend on column
// phases). Used for coarse-grained objectives and experiments.
OptimizationReport optimize_basis(int dim, const OptimizerConfig& cfg,
                                  const std::function<double(const Matrix&)>& objective);

// Brute-force ground truth at d = 2: max over the (alpha, beta) grid with
// grid_n points per axis covering [0,pi] x [0,2pi).
double grid_oracle_qubit(const DensityOperator& rho, const OrthonormalBasis& A,
                         Quantity quantity, int grid_n);

// Canonical wrap of chart coordinates (full chart: each angle mod 2pi;
// product chart: alpha folded into [0,pi] with beta += pi, beta mod 2pi).
BasisParams wrap_params(BasisParams p);

}  // namespace kdcoh
