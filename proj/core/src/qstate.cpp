#include "kdcoh/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kdcoh/rng.hpp"

namespace kdcoh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_subsystem_dims(int dim, const std::vector<int>& dims) {
    if (dims.empty()) return;
    long long prod = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("subsystem dims must be positive");
        prod *= d;
    }
    if (prod != dim)
        throw std::invalid_argument("product of subsystem dims must equal dim");
}

double wrap_2pi(double x) {
    double y = std::fmod(x, kTwoPi);
    if (y < 0) y += kTwoPi;
    return y;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

DensityOperator::DensityOperator(Matrix m, std::vector<int> subsystem_dims)
    : mat_(std::move(m)), subsystem_dims_(std::move(subsystem_dims)) {
    if (mat_.rows() < 1 || mat_.rows() != mat_.cols())
        throw std::invalid_argument("density matrix must be square and nonempty");
    check_subsystem_dims(dim(), subsystem_dims_);
    const double herm = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kValidationTol)
        throw std::invalid_argument("density matrix is not Hermitian (max deviation " +
                                    std::to_string(herm) + ")");
    const double tr_err = std::abs(mat_.trace() - Cx(1.0, 0.0));
    if (tr_err > kValidationTol)
        throw std::invalid_argument("density matrix trace differs from 1 by " +
                                    std::to_string(tr_err));
    Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -kValidationTol)
        throw std::invalid_argument("density matrix has negative eigenvalue " +
                                    std::to_string(min_eig));
}

void canonicalize_columns(Matrix& m) {
    const int d = static_cast<int>(m.rows());
    for (int j = 0; j < m.cols(); ++j) {
        for (int i = 0; i < d; ++i) {
            const Cx v = m(i, j);
            if (std::abs(v) > kSingularEps) {
                m.col(j) *= std::conj(v) / std::abs(v);
                break;
            }
        }
    }
}

OrthonormalBasis::OrthonormalBasis(Matrix columns, std::vector<int> subsystem_dims)
    : cols_(std::move(columns)), subsystem_dims_(std::move(subsystem_dims)) {
    if (cols_.rows() < 1 || cols_.rows() != cols_.cols())
        throw std::invalid_argument("basis must consist of dim columns of length dim");
    check_subsystem_dims(dim(), subsystem_dims_);
    const Matrix gram = cols_.adjoint() * cols_;
    const double err = (gram - Matrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
    if (err > kValidationTol)
        throw std::invalid_argument("basis columns are not orthonormal (max Gram deviation " +
                                    std::to_string(err) + ")");
    canonicalize_columns(cols_);
}

OrthonormalBasis OrthonormalBasis::computational(int dim, std::vector<int> subsystem_dims) {
    return OrthonormalBasis(Matrix::Identity(dim, dim), std::move(subsystem_dims));
}

OrthonormalBasis OrthonormalBasis::fourier(int dim) {
    Matrix f(dim, dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
            f(j, k) = std::polar(norm, kTwoPi * j * k / dim);
    return OrthonormalBasis(std::move(f));
}

int BasisParams::qubit_count() const {
    if (!product) throw std::logic_error("qubit_count is defined for product params only");
    return static_cast<int>(angles.size()) / 2;
}

void BasisParams::validate() const {
    if (dim < 1) throw std::invalid_argument("BasisParams dim must be positive");
    if (product) {
        if (angles.size() % 2 != 0)
            throw std::invalid_argument("product params need (alpha, beta) pairs");
        const int n = static_cast<int>(angles.size()) / 2;
        if (n < 1 || (1 << n) != dim)
            throw std::invalid_argument("product params require dim = 2^n with n angle pairs");
    } else {
        if (static_cast<int>(angles.size()) != full_count(dim))
            throw std::invalid_argument("full-chart params require d(d-1) angles, got " +
                                        std::to_string(angles.size()));
    }
}

void PartitionSpec::validate(int dim) const {
    if (blocks.empty()) throw std::invalid_argument("partition must have at least one block");
    std::vector<char> seen(dim, 0);
    for (const auto& block : blocks) {
        if (block.empty()) throw std::invalid_argument("partition blocks must be nonempty");
        for (int idx : block) {
            if (idx < 0 || idx >= dim)
                throw std::invalid_argument("partition index out of range");
            if (seen[idx]) throw std::invalid_argument("partition blocks must be disjoint");
            seen[idx] = 1;
        }
    }
    if (!std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; }))
        throw std::invalid_argument("partition blocks must cover the full index set");
}

DensityOperator bloch_qubit(double r, double theta, double phi) {
    if (!(r >= 0.0 && r <= 1.0))
        throw std::invalid_argument("Bloch radius must lie in [0,1]");
    const double st = std::sin(theta), ct = std::cos(theta);
    Matrix m(2, 2);
    m(0, 0) = Cx(0.5 * (1.0 + r * ct), 0.0);
    m(0, 1) = 0.5 * r * Cx(st * std::cos(phi), -st * std::sin(phi));
    m(1, 0) = std::conj(m(0, 1));
    m(1, 1) = Cx(0.5 * (1.0 - r * ct), 0.0);
    return DensityOperator(std::move(m));
}

OrthonormalBasis qubit_basis(double alpha, double beta) {
    double a = wrap_2pi(alpha), b = beta;
    if (a > kPi) {               // (a, b) and (2pi - a, b + pi) give the same basis
        a = kTwoPi - a;
        b += kPi;
    }
    b = wrap_2pi(b);
    const double c = std::cos(a / 2), s = std::sin(a / 2);
    const Cx e = std::polar(1.0, b);
    Matrix m(2, 2);
    m(0, 0) = c;       m(0, 1) = s;
    m(1, 0) = s * e;   m(1, 1) = -c * e;
    return OrthonormalBasis(std::move(m));
}

namespace {

// Right-multiply M by the two-level rotation acting on columns (i, j) whose
// 2x2 block is [[cos(t/2), sin(t/2)], [sin(t/2) e^{i p}, -cos(t/2) e^{i p}]]
// (the d=2 chart block). Column-phase freedom is quotiented later.
void apply_givens_right(Matrix& m, int i, int j, double t, double p) {
    const double c = std::cos(t / 2), s = std::sin(t / 2);
    const Cx e = std::polar(1.0, p);
    const int d = static_cast<int>(m.rows());
    for (int r = 0; r < d; ++r) {
        const Cx mi = m(r, i), mj = m(r, j);
        m(r, i) = c * mi + s * e * mj;
        m(r, j) = s * mi - c * e * mj;
    }
}

Matrix raw_qubit_block(double alpha, double beta) {
    const double c = std::cos(alpha / 2), s = std::sin(alpha / 2);
    const Cx e = std::polar(1.0, beta);
    Matrix m(2, 2);
    m(0, 0) = c;       m(0, 1) = s;
    m(1, 0) = s * e;   m(1, 1) = -c * e;
    return m;
}

}  // namespace

Matrix chart_matrix(const BasisParams& p) {
    p.validate();
    if (p.product) {
        const int n = p.qubit_count();
        Matrix m = raw_qubit_block(p.angles[0], p.angles[1]);
        for (int k = 1; k < n; ++k)
            m = kron(m, raw_qubit_block(p.angles[2 * k], p.angles[2 * k + 1]));
        return m;
    }
    Matrix m = Matrix::Identity(p.dim, p.dim);
    int k = 0;
    for (int i = 0; i < p.dim; ++i)
        for (int j = i + 1; j < p.dim; ++j) {
            apply_givens_right(m, i, j, p.angles[2 * k], p.angles[2 * k + 1]);
            ++k;
        }
    return m;
}

OrthonormalBasis basis_from_params(const BasisParams& p) {
    p.validate();
    if (p.product) {
        const int n = p.qubit_count();
        OrthonormalBasis basis = qubit_basis(p.angles[0], p.angles[1]);
        for (int k = 1; k < n; ++k)
            basis = tensor(basis, qubit_basis(p.angles[2 * k], p.angles[2 * k + 1]));
        return basis;
    }
    return OrthonormalBasis(chart_matrix(p));
}

BasisParams params_for_basis(const OrthonormalBasis& B) {
    const int d = B.dim();
    BasisParams p;
    p.dim = d;
    p.angles.assign(static_cast<std::size_t>(BasisParams::full_count(d)), 0.0);
    Matrix w = B.columns();
    int k = 0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const Cx u = w(i, i), v = w(j, i);
            const double t = 2.0 * std::atan2(std::abs(v), std::abs(u));
            const double ph = wrap_2pi(std::arg(v) - std::arg(u));
            p.angles[2 * k] = t;
            p.angles[2 * k + 1] = ph;
            ++k;
            // Left-multiply by the adjoint of the chart rotation just recorded,
            // zeroing w(j, i); rows i and j mix, earlier zeros stay put.
            const double c = std::cos(t / 2), s = std::sin(t / 2);
            const Cx e = std::polar(1.0, -ph);
            for (int col = 0; col < d; ++col) {
                const Cx wi = w(i, col), wj = w(j, col);
                w(i, col) = c * wi + s * e * wj;
                w(j, col) = s * wi - c * e * wj;
            }
        }
    return p;
}

double purity(const DensityOperator& rho) {
    return (rho.matrix() * rho.matrix()).trace().real();
}

bool is_mub(const OrthonormalBasis& A, const OrthonormalBasis& B, double tol) {
    if (A.dim() != B.dim())
        throw std::invalid_argument("is_mub requires equal dimensions");
    const double target = 1.0 / std::sqrt(static_cast<double>(A.dim()));
    const Matrix overlaps = A.columns().adjoint() * B.columns();
    return (overlaps.cwiseAbs().array() - target).abs().maxCoeff() <= tol;
}

DensityOperator partial_trace(const DensityOperator& rho, int keep) {
    const auto& dims = rho.subsystem_dims();
    if (dims.size() < 2)
        throw std::invalid_argument("partial_trace needs a state with >= 2 subsystems");
    if (keep < 0 || keep >= static_cast<int>(dims.size()))
        throw std::invalid_argument("partial_trace keep index out of range");

    const int dk = dims[keep];
    int left = 1, right = 1;  // dims of the traced factors before/after `keep`
    for (int f = 0; f < keep; ++f) left *= dims[f];
    for (int f = keep + 1; f < static_cast<int>(dims.size()); ++f) right *= dims[f];

    const auto& m = rho.matrix();
    Matrix out = Matrix::Zero(dk, dk);
    for (int l = 0; l < left; ++l)
        for (int r = 0; r < right; ++r)
            for (int i = 0; i < dk; ++i)
                for (int j = 0; j < dk; ++j)
                    out(i, j) += m((l * dk + i) * right + r, (l * dk + j) * right + r);
    return DensityOperator(std::move(out));
}

DensityOperator random_density(int d, int rank, std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("dimension must be positive");
    if (rank < 1 || rank > d)
        throw std::invalid_argument("rank must lie in [1, d]");
    auto eng = make_engine(derive_seed(seed, 0x6d, static_cast<std::uint64_t>(d),
                                       static_cast<std::uint64_t>(rank)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(d, rank);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < rank; ++j)
            g(i, j) = Cx(gauss(eng), gauss(eng));
    Matrix m = g * g.adjoint();
    m /= m.trace().real();
    return DensityOperator(std::move(m));
}

Matrix random_unitary(int d, std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("dimension must be positive");
    auto eng = make_engine(derive_seed(seed, 0x75, static_cast<std::uint64_t>(d)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            g(i, j) = Cx(gauss(eng), gauss(eng));
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {       // fix phases so the distribution is Haar
        const Cx rj = r(j, j);
        q.col(j) *= (std::abs(rj) > 0) ? rj / std::abs(rj) : Cx(1.0, 0.0);
    }
    return q;
}

OrthonormalBasis random_basis(int d, std::uint64_t seed) {
    return OrthonormalBasis(random_unitary(d, seed));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
    std::vector<int> dims = a.subsystem_dims().empty()
                                ? std::vector<int>{a.dim()}
                                : a.subsystem_dims();
    if (b.subsystem_dims().empty())
        dims.push_back(b.dim());
    else
        dims.insert(dims.end(), b.subsystem_dims().begin(), b.subsystem_dims().end());
    return DensityOperator(kron(a.matrix(), b.matrix()), std::move(dims));
}

OrthonormalBasis tensor(const OrthonormalBasis& a, const OrthonormalBasis& b) {
    std::vector<int> dims = a.subsystem_dims().empty()
                                ? std::vector<int>{a.dim()}
                                : a.subsystem_dims();
    if (b.subsystem_dims().empty())
        dims.push_back(b.dim());
    else
        dims.insert(dims.end(), b.subsystem_dims().begin(), b.subsystem_dims().end());
    return OrthonormalBasis(kron(a.columns(), b.columns()), std::move(dims));
}

double basis_distance(const OrthonormalBasis& a, const OrthonormalBasis& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("basis_distance requires equal dimensions");
    double worst = 0.0;
    for (int j = 0; j < a.dim(); ++j) {
        const double ov = std::abs(a.column(j).dot(b.column(j)));
        worst = std::max(worst, std::sqrt(std::max(0.0, 1.0 - ov * ov)));
    }
    return worst;
}

Matrix matrix_in_basis(const Matrix& m, const OrthonormalBasis& A) {
    return A.columns().adjoint() * m * A.columns();
}

}  // namespace kdcoh
