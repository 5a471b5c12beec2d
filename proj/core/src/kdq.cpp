#include "kdcoh/kdq.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kdcoh {

namespace {

// q(a,b) = <b|a><a|rho|b> for all pairs, written as an elementwise product
// of the overlap matrix and rho's mixed-basis representation.
Matrix kd_table(const DensityOperator& rho, const OrthonormalBasis& A,
                const OrthonormalBasis& B) {
    const Matrix overlaps = A.columns().adjoint() * B.columns();          // <a|b>
    const Matrix mixed = A.columns().adjoint() * rho.matrix() * B.columns();  // <a|rho|b>
    return overlaps.conjugate().cwiseProduct(mixed);
}

}  // namespace

KDDistribution::KDDistribution(const DensityOperator& rho, const OrthonormalBasis& A,
                               const OrthonormalBasis& B) {
    if (rho.dim() != A.dim() || rho.dim() != B.dim())
        throw std::invalid_argument("kd_distribution requires equal dimensions");
    table_ = kd_table(rho, A, B);

    const double norm_err = std::abs(table_.sum() - Cx(1.0, 0.0));
    if (norm_err > kValidationTol)
        throw std::invalid_argument("KD table normalization off by " +
                                    std::to_string(norm_err));
    const int d = dim();
    double marg_err = 0.0;
    for (int b = 0; b < d; ++b) {
        const Cx born = B.column(b).dot(rho.matrix() * B.column(b));
        marg_err = std::max(marg_err, std::abs(table_.col(b).sum() - born));
    }
    for (int a = 0; a < d; ++a) {
        const Cx born = A.column(a).dot(rho.matrix() * A.column(a));
        marg_err = std::max(marg_err, std::abs(table_.row(a).sum() - born));
    }
    if (marg_err > kValidationTol)
        throw std::invalid_argument("KD table marginals deviate from Born probabilities by " +
                                    std::to_string(marg_err));
}

KDDistribution kd_distribution(const DensityOperator& rho, const OrthonormalBasis& A,
                               const OrthonormalBasis& B) {
    return KDDistribution(rho, A, B);
}

FunctionalReport functionals(const Matrix& table) {
    double abs_sum = 0.0, re_sum = 0.0, im_sum = 0.0;
    for (int i = 0; i < table.rows(); ++i)
        for (int j = 0; j < table.cols(); ++j) {
            const Cx q = table(i, j);
            abs_sum += std::abs(q);
            re_sum += std::abs(q.real());
            im_sum += std::abs(q.imag());
        }
    auto clamp = [](double v) {
        if (v < -kValidationTol)
            throw std::logic_error("functional below the rounding floor: " + std::to_string(v));
        return std::max(v, 0.0);
    };
    return FunctionalReport{clamp(abs_sum - 1.0), clamp(re_sum - 1.0), clamp(im_sum)};
}

FunctionalReport functionals(const KDDistribution& kd) { return functionals(kd.table()); }

double min_overlap(const OrthonormalBasis& A, const OrthonormalBasis& B) {
    return (A.columns().adjoint() * B.columns()).cwiseAbs().minCoeff();
}

DensityOperator reconstruct_state(const KDDistribution& kd, const OrthonormalBasis& A,
                                  const OrthonormalBasis& B) {
    const int d = kd.dim();
    if (A.dim() != d || B.dim() != d)
        throw std::invalid_argument("reconstruct_state requires matching dimensions");
    const Matrix overlaps = A.columns().adjoint() * B.columns();  // <a|b>
    const double smallest = overlaps.cwiseAbs().minCoeff();
    if (smallest <= kSingularEps)
        throw std::domain_error("reconstruction undefined: basis overlap magnitude " +
                                std::to_string(smallest) + " is singular");
    Matrix rho = Matrix::Zero(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            // <b|a> = conj(<a|b>); q/<b|a> restores <a|rho|b>
            const Cx coeff = kd.table()(a, b) / std::conj(overlaps(a, b));
            rho.noalias() += coeff * (A.column(a) * B.column(b).adjoint());
        }
    rho = 0.5 * (rho + rho.adjoint().eval());  // shave float asymmetry
    return DensityOperator(std::move(rho));
}

}  // namespace kdcoh
