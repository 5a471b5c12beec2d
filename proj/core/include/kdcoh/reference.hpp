#pragma once

#include "kdcoh/coherence.hpp"
#include "kdcoh/qstate.hpp"

// Built-in reference cases with known exact optima: the single-qubit |+>
// state and two maximally coherent two-qubit states (one with a complex KD
// table, one with a real table containing negative entries). Consumed by
// the CLI `examples` command and the verification suite.
namespace kdcoh::reference {

DensityOperator plus_state();                 // |+><+|
DensityOperator two_qubit_complex_state();    // (|00> - i|01> - i|10> + i|11>)/2
DensityOperator two_qubit_real_state();       // (|00> + |01> + |10> - |11>)/2

// KD table of |+><+| over computational x {|y_+>, |y_->}:
// [[(1+i)/4, (1-i)/4], [(1-i)/4, (1+i)/4]].
Matrix plus_circular_table();

// Product-chart coordinates attaining the two-qubit optima (value 1).
BasisParams complex_optimal_params();  // alpha_k = pi/2, beta_k = 3pi/4
BasisParams real_optimal_params();     // alpha_k = pi/2, beta_k = 0

// Exact KD tables at those optima. The complex table has constant modulus
// 1/8; its corner-block entries are (+-1 +- i)/(8 sqrt 2), commonly quoted
// rounded to 221/2500 = 0.0884 per component. The real table is the +-1/8
// sign pattern with a negative diagonal-corner entry in each row.
Matrix complex_optimal_table();
Matrix real_optimal_table();
inline constexpr double kComplexCornerRounded = 221.0 / 2500.0;

// Distance between product-chart coordinates modulo the per-qubit column
// swap (alpha, beta) ~ (pi - alpha, beta + pi): the largest wrapped
// per-angle deviation after choosing the best orbit representative per
// qubit.
double product_angle_distance(const BasisParams& got, const BasisParams& target);

// Minimum of the nonclassicality objective along the straight parameter
// path from `from` to `to` (steps+1 evaluations).
double path_min_objective(const DensityOperator& rho, const OrthonormalBasis& A,
                          const BasisParams& from, const BasisParams& to, int steps = 100);

// Best connectivity certificate between two-qubit product coordinates:
// the largest over candidate paths (straight, and the two axis-aligned
// two-leg paths moving one qubit's angles at a time) of the path's minimum
// objective, after aligning `from` to the orbit representative nearest
// `target`. A result close to the optimal value certifies that `from` and
// `target` sit on one connected optimal ridge.
double ridge_path_min(const DensityOperator& rho, const OrthonormalBasis& A,
                      const BasisParams& from, const BasisParams& target, int steps = 100);

}  // namespace kdcoh::reference
