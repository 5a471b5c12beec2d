#include "kdcoh/susceptibility.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "kdcoh/kdq.hpp"

namespace kdcoh {

namespace {

void require_hermitian(const Matrix& m, const char* what) {
    if (m.rows() != m.cols())
        throw std::invalid_argument(std::string(what) + " must be square");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kValidationTol)
        throw std::invalid_argument(std::string(what) + " must be Hermitian");
}

}  // namespace

StateDerivativePair::StateDerivativePair(DensityOperator rho0_in, Matrix drho_in)
    : rho0(std::move(rho0_in)), drho(std::move(drho_in)) {
    if (drho.rows() != rho0.dim() || drho.cols() != rho0.dim())
        throw std::invalid_argument("state derivative dimension mismatch");
    require_hermitian(drho, "state derivative");
    if (std::abs(drho.trace()) > kValidationTol)
        throw std::invalid_argument("state derivative must be traceless");
}

SLDResult sld(const StateDerivativePair& pair, double support_eps) {
    const Matrix& rho = pair.rho0.matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    const Eigen::VectorXd p = es.eigenvalues();
    const Matrix& V = es.eigenvectors();
    const Eigen::Index d = rho.rows();

    Matrix dtilde = V.adjoint() * pair.drho * V;
    Matrix ltilde = Matrix::Zero(d, d);
    bool cutoff = false;
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            const double denom = p(i) + p(j);
            if (denom <= support_eps) {
                cutoff = true;  // minimal-norm convention applied to this block
                continue;
            }
            ltilde(i, j) = 2.0 * dtilde(i, j) / denom;
        }
    }

    SLDResult out;
    out.L = V * ltilde * V.adjoint();
    out.L = Matrix(0.5 * (out.L + out.L.adjoint()));
    out.support_cutoff_used = cutoff;
    out.residual = (0.5 * (out.L * rho + rho * out.L) - pair.drho).norm();
    return out;
}

double static_susceptibility(const Matrix& A_op, const StateDerivativePair& pair) {
    require_hermitian(A_op, "observable");
    if (A_op.rows() != pair.rho0.dim())
        throw std::invalid_argument("observable dimension mismatch");
    const SLDResult s = sld(pair);
    return (A_op * s.L * pair.rho0.matrix()).trace().real();
}

std::pair<Eigen::VectorXd, Matrix> hermitian_eigs(const Matrix& herm) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    Matrix v = es.eigenvectors();
    canonicalize_columns(v);
    return {es.eigenvalues(), v};
}

double operator_norm(const Matrix& herm) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double kd_decomposition_check(const Matrix& A_op, const StateDerivativePair& pair) {
    require_hermitian(A_op, "observable");
    const SLDResult s = sld(pair);
    const Matrix& rho = pair.rho0.matrix();

    const double chi_trace = (A_op * s.L * rho).trace().real();

    auto [a_vals, a_vecs] = hermitian_eigs(A_op);
    auto [l_vals, l_vecs] = hermitian_eigs(s.L);
    OrthonormalBasis A_basis(a_vecs);
    OrthonormalBasis L_basis(l_vecs);
    KDDistribution q = kd_distribution(pair.rho0, A_basis, L_basis);

    const Eigen::Index d = rho.rows();
    double chi_kd = 0.0;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            chi_kd += a_vals(i) * l_vals(j) * q.table()(i, j).real();

    // Centering the observable eigenvalues leaves chi unchanged because
    // Tr(L rho) = Tr(drho) = 0.
    const double a_mean = (A_op * rho).trace().real();
    double chi_centered = 0.0;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            chi_centered += (a_vals(i) - a_mean) * l_vals(j) * q.table()(i, j).real();

    const double d1 = std::abs(chi_trace - chi_kd);
    const double d2 = std::abs(chi_trace - chi_centered);
    const double d3 = std::abs(chi_kd - chi_centered);
    return std::max({d1, d2, d3});
}

BoundCheck normalized_bound_check(const Matrix& A_op, const StateDerivativePair& pair,
                                  double coherence_value, double slack) {
    require_hermitian(A_op, "observable");
    const SLDResult s = sld(pair);
    const Matrix& rho = pair.rho0.matrix();

    const double a_mean = (A_op * rho).trace().real();
    const Matrix A_centered =
        A_op - a_mean * Matrix::Identity(A_op.rows(), A_op.cols());
    const double a_norm = operator_norm(A_centered);
    const double l_norm = operator_norm(s.L);

    BoundCheck out;
    out.bound = coherence_value + 1.0;
    if (a_norm < kSingularEps || l_norm < kSingularEps) {
        out.vacuous = true;
        out.value = 0.0;
        out.holds = true;
        return out;
    }
    const double chi = (A_op * s.L * rho).trace().real();
    out.value = std::abs(chi) / (a_norm * l_norm);
    out.holds = out.value <= out.bound + slack;
    return out;
}

double qfi(const StateDerivativePair& pair) {
    const SLDResult s = sld(pair);
    return (s.L * s.L * pair.rho0.matrix()).trace().real();
}

Matrix commutator_derivative(const Matrix& H, const DensityOperator& rho0) {
    require_hermitian(H, "generator");
    if (H.rows() != rho0.dim())
        throw std::invalid_argument("generator dimension mismatch");
    const Cx mi(0.0, -1.0);
    Matrix out = mi * (H * rho0.matrix() - rho0.matrix() * H);
    return Matrix(0.5 * (out + out.adjoint()));
}

Matrix finite_difference_drho(const Matrix& H, const DensityOperator& rho0, double h) {
    require_hermitian(H, "generator");
    if (H.rows() != rho0.dim())
        throw std::invalid_argument("generator dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    const Eigen::VectorXd w = es.eigenvalues();
    const Matrix& V = es.eigenvectors();
    const Eigen::Index d = H.rows();

    auto evolve = [&](double t) {
        Vector phases(d);
        for (Eigen::Index k = 0; k < d; ++k)
            phases(k) = std::exp(Cx(0.0, -t * w(k)));
        Matrix U = V * phases.asDiagonal() * V.adjoint();
        return Matrix(U * rho0.matrix() * U.adjoint());
    };

    Matrix out = (evolve(h) - evolve(-h)) / (2.0 * h);
    return Matrix(0.5 * (out + out.adjoint()));
}

}  // namespace kdcoh
