#pragma once

#include "kdcoh/qstate.hpp"

namespace kdcoh {

// Complex quasiprobability table q[a][b] = <b|a><a|rho|b> over a pair of
// orthonormal bases. Construction checks normalization and that both
// marginals reproduce the Born probabilities of the generating state.
class KDDistribution {
public:
    KDDistribution(const DensityOperator& rho, const OrthonormalBasis& A,
                   const OrthonormalBasis& B);

    int dim() const { return static_cast<int>(table_.rows()); }
    const Matrix& table() const { return table_; }

private:
    Matrix table_;
};

// The three nonclassicality functionals of a table. Tiny negative results
// (>= -1e-10, pure float rounding) are clamped to 0.
struct FunctionalReport {
    double ncl = 0.0;  // sum |q| - 1
    double neg = 0.0;  // sum |Re q| - 1
    double nre = 0.0;  // sum |Im q|
};

KDDistribution kd_distribution(const DensityOperator& rho, const OrthonormalBasis& A,
                               const OrthonormalBasis& B);

FunctionalReport functionals(const KDDistribution& kd);
// Overload for raw tables (coarse-grained or sampled ones share the formulas).
FunctionalReport functionals(const Matrix& table);

// Inverse map rho = sum_{a,b} q[a][b] |a><b| / <b|a>. Requires every
// overlap <a|b> to exceed kSingularEps in magnitude.
DensityOperator reconstruct_state(const KDDistribution& kd, const OrthonormalBasis& A,
                                  const OrthonormalBasis& B);

// Smallest |<a|b>| over all pairs; reconstruction error scales with its inverse.
double min_overlap(const OrthonormalBasis& A, const OrthonormalBasis& B);

}  // namespace kdcoh
