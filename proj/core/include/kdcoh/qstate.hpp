#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace kdcoh {

using Cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Validation tolerance for constructor invariants (Hermiticity, trace,
// PSD floor, orthonormality).
inline constexpr double kValidationTol = 1e-10;
// Magnitude below which an entry is treated as zero during column phase
// canonicalization, and below which a basis overlap counts as singular.
inline constexpr double kSingularEps = 1e-12;

// Validated density operator: Hermitian, unit trace, positive semidefinite
// (all within kValidationTol). Optionally carries a tensor factorization
// of its Hilbert space (subsystem_dims with product == dim).
class DensityOperator {
public:
    explicit DensityOperator(Matrix m, std::vector<int> subsystem_dims = {});

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& matrix() const { return mat_; }
    const std::vector<int>& subsystem_dims() const { return subsystem_dims_; }
    bool has_subsystems() const { return !subsystem_dims_.empty(); }

private:
    Matrix mat_;
    std::vector<int> subsystem_dims_;
};

// Ordered orthonormal basis stored as matrix columns. Construction
// validates pairwise orthonormality and then canonicalizes each column's
// global phase (first entry with magnitude > kSingularEps made real and
// nonnegative) so that equal bases compare equal entrywise.
class OrthonormalBasis {
public:
    OrthonormalBasis() = default;  // empty placeholder (dim 0), e.g. in reports
    explicit OrthonormalBasis(Matrix columns, std::vector<int> subsystem_dims = {});

    static OrthonormalBasis computational(int dim, std::vector<int> subsystem_dims = {});
    static OrthonormalBasis fourier(int dim);

    int dim() const { return static_cast<int>(cols_.rows()); }
    const Matrix& columns() const { return cols_; }
    Vector column(int j) const { return cols_.col(j); }
    const std::vector<int>& subsystem_dims() const { return subsystem_dims_; }
    bool is_product() const { return subsystem_dims_.size() >= 2; }

private:
    Matrix cols_;
    std::vector<int> subsystem_dims_;
};

// Coordinates on the basis-search manifold. Two layouts:
//  - full chart: one (mixing angle, relative phase) pair per index pair
//    (i,j), i<j, in lexicographic order -> d(d-1) angles total;
//  - product chart (product == true): one (alpha_k, beta_k) pair per qubit
//    factor -> 2*n angles for an n-qubit space.
struct BasisParams {
    int dim = 0;
    std::vector<double> angles;
    bool product = false;

    static int full_count(int dim) { return dim * (dim - 1); }
    int qubit_count() const;       // product mode only
    void validate() const;         // throws std::invalid_argument on bad layout
};

// Disjoint, covering blocks of {0,...,d-1} used for coarse graining.
struct PartitionSpec {
    std::vector<std::vector<int>> blocks;
    void validate(int dim) const;  // throws std::invalid_argument
};

// Bloch-sphere qubit state with radius r and polar/azimuthal angles.
DensityOperator bloch_qubit(double r, double theta, double phi);

// Two-column qubit basis {b_+, b_-} parameterized by a mixing angle alpha
// and relative phase beta; angles wrapped into [0,pi] x [0,2pi).
OrthonormalBasis qubit_basis(double alpha, double beta);

// Realize BasisParams as a concrete basis (Givens product or per-qubit
// tensor product), phase-canonicalized. The full chart reaches every
// orthonormal basis up to per-column phases.
OrthonormalBasis basis_from_params(const BasisParams& p);

// Uncanonicalized, unvalidated chart realization of params. Equal to
// basis_from_params up to per-column phases, which no KD entry depends on;
// optimizer hot paths use this to skip construction checks.
Matrix chart_matrix(const BasisParams& p);

// Exact full-chart inversion by QR-style two-level nulling: the returned
// params realize B up to per-column phases (basis_distance 0 within float
// rounding). Witnesses that the chart covers every orthonormal basis.
BasisParams params_for_basis(const OrthonormalBasis& B);

double purity(const DensityOperator& rho);

// True iff every overlap magnitude | <a|b> | equals 1/sqrt(d) within tol.
bool is_mub(const OrthonormalBasis& A, const OrthonormalBasis& B, double tol);

// Reduced state on factor `keep` of a multipartite state.
DensityOperator partial_trace(const DensityOperator& rho, int keep);

// Rank-constrained state G G^dag / Tr(G G^dag) with G a d x rank matrix of
// seeded standard complex Gaussians. Deterministic per seed.
DensityOperator random_density(int d, int rank, std::uint64_t seed);

// Haar-distributed random unitary / basis (QR of a Ginibre matrix with the
// standard phase fix). Deterministic per seed.
Matrix random_unitary(int d, std::uint64_t seed);
OrthonormalBasis random_basis(int d, std::uint64_t seed);

// Kronecker products preserving the factor bookkeeping.
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
OrthonormalBasis tensor(const OrthonormalBasis& a, const OrthonormalBasis& b);

// Largest column-wise deviation between two bases ignoring column phases:
// max_j sqrt(1 - |<a_j|b_j>|^2). Zero iff equal up to per-column phases.
double basis_distance(const OrthonormalBasis& a, const OrthonormalBasis& b);

// Matrix of M in basis A: A^dag M A  (entry (i,j) = <a_i|M|a_j>).
Matrix matrix_in_basis(const Matrix& m, const OrthonormalBasis& A);

// Canonicalize column phases in place (shared by OrthonormalBasis and the
// optimizer's report path).
void canonicalize_columns(Matrix& m);

}  // namespace kdcoh
