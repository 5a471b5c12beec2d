#include "kdcoh/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kdcoh {

void CIPSpec::validate(int dim) const {
    if (probs.empty() || probs.size() != perms.size())
        throw std::invalid_argument("CIPSpec needs one probability per permutation");
    double total = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw std::invalid_argument("CIPSpec probabilities must be nonnegative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("CIPSpec probabilities sum to " + std::to_string(total));
    for (const auto& perm : perms) {
        if (static_cast<int>(perm.size()) != dim)
            throw std::invalid_argument("CIPSpec permutation length must equal dim");
        std::vector<char> seen(dim, 0);
        for (int v : perm) {
            if (v < 0 || v >= dim || seen[v])
                throw std::invalid_argument("CIPSpec permutations must be bijections");
            seen[v] = 1;
        }
    }
}

DensityOperator dephase_mix(const DensityOperator& rho, const OrthonormalBasis& A, double p) {
    if (rho.dim() != A.dim())
        throw std::invalid_argument("dephase_mix requires equal dimensions");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("dephase_mix weight must lie in [0,1]");
    const int d = rho.dim();
    Matrix dephased = Matrix::Zero(d, d);
    for (int a = 0; a < d; ++a) {
        const Vector col = A.column(a);
        const Cx pop = col.dot(rho.matrix() * col);  // <a|rho|a>
        dephased.noalias() += pop * (col * col.adjoint());
    }
    return DensityOperator(p * rho.matrix() + (1.0 - p) * dephased, rho.subsystem_dims());
}

CoarseKD coarse_grain_kd(const DensityOperator& rho, const OrthonormalBasis& A,
                         const PartitionSpec& part, const OrthonormalBasis& B) {
    part.validate(rho.dim());
    const KDDistribution fine = kd_distribution(rho, A, B);
    Matrix coarse = Matrix::Zero(static_cast<int>(part.blocks.size()), rho.dim());
    for (int blk = 0; blk < static_cast<int>(part.blocks.size()); ++blk)
        for (int a : part.blocks[blk]) coarse.row(blk) += fine.table().row(a);
    CoarseKD out;
    out.functionals = functionals(coarse);
    out.table = std::move(coarse);
    return out;
}

std::pair<DensityOperator, OrthonormalBasis> conjugate(const DensityOperator& rho,
                                                       const OrthonormalBasis& A,
                                                       const Matrix& U) {
    if (U.rows() != rho.dim() || U.cols() != rho.dim())
        throw std::invalid_argument("conjugate requires a dim x dim unitary");
    const double unit_err =
        (U.adjoint() * U - Matrix::Identity(rho.dim(), rho.dim())).cwiseAbs().maxCoeff();
    if (unit_err > kValidationTol)
        throw std::invalid_argument("conjugate: matrix is not unitary (deviation " +
                                    std::to_string(unit_err) + ")");
    return {DensityOperator(U * rho.matrix() * U.adjoint(), rho.subsystem_dims()),
            OrthonormalBasis(U * A.columns(), A.subsystem_dims())};
}

namespace {

Matrix permutation_matrix(const std::vector<int>& perm) {
    const int d = static_cast<int>(perm.size());
    Matrix p = Matrix::Zero(d, d);
    for (int a = 0; a < d; ++a) p(perm[a], a) = 1.0;  // |a> -> |perm[a]>
    return p;
}

}  // namespace

DensityOperator phi_cip(const DensityOperator& rho, const CIPSpec& spec) {
    spec.validate(rho.dim());
    const int d = rho.dim();
    Matrix out = Matrix::Zero(d, d);
    for (std::size_t e = 0; e < spec.probs.size(); ++e) {
        const Matrix p = permutation_matrix(spec.perms[e]);
        out.noalias() += spec.probs[e] * (p * rho.matrix() * p.adjoint());
    }
    return DensityOperator(std::move(out), rho.subsystem_dims());
}

DensityOperator phi_cip_dilation(const DensityOperator& rho, const CIPSpec& spec) {
    spec.validate(rho.dim());
    const int d = rho.dim();
    const int m = static_cast<int>(spec.probs.size());

    // U = sum_e P_e (x) |e><e| on system (x) ancilla, ancilla diagonal in probs.
    Matrix u = Matrix::Zero(d * m, d * m);
    for (int e = 0; e < m; ++e) {
        const Matrix p = permutation_matrix(spec.perms[e]);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) u(i * m + e, j * m + e) = p(i, j);
    }
    Matrix joint = Matrix::Zero(d * m, d * m);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int e = 0; e < m; ++e)
                joint(i * m + e, j * m + e) = rho.matrix()(i, j) * spec.probs[e];

    const Matrix evolved = u * joint * u.adjoint();
    Matrix out = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int e = 0; e < m; ++e) out(i, j) += evolved(i * m + e, j * m + e);
    return DensityOperator(std::move(out), rho.subsystem_dims());
}

}  // namespace kdcoh
