// End-to-end acceptance gate. Each numbered criterion prints exactly one
// [PASS]/[FAIL] line with the achieved figures; the process exits nonzero
// if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <kdcoh/bounds.hpp>
#include <kdcoh/channels.hpp>
#include <kdcoh/coherence.hpp>
#include <kdcoh/estimator.hpp>
#include <kdcoh/kdq.hpp>
#include <kdcoh/qstate.hpp>
#include <kdcoh/reference.hpp>
#include <kdcoh/rng.hpp>
#include <kdcoh/susceptibility.hpp>

using namespace kdcoh;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRoot2 = 1.41421356237309504880;

int g_failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

OptimizerConfig cfg_full(std::uint64_t seed, int starts = 32) {
    OptimizerConfig cfg;
    cfg.starts = starts;
    cfg.seed = seed;
    return cfg;
}

OptimizerConfig cfg_product(std::uint64_t seed, int starts = 32) {
    OptimizerConfig cfg = cfg_full(seed, starts);
    cfg.mode = SearchMode::product;
    return cfg;
}

Matrix random_hermitian(int d, std::uint64_t seed) {
    std::mt19937_64 eng = make_engine(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = Cx(g(eng), g(eng));
    return 0.5 * (m + m.adjoint());
}

double off_diagonal_mass(const Matrix& m) {
    double mass = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (i != j) mass += std::abs(m(i, j));
    return mass;
}

struct EnsembleCase {
    int d = 0;
    DensityOperator rho{Matrix::Identity(2, 2) / 2.0};
    double c = 0.0;
    double l1 = 0.0;
    double mu = 0.0;
    double pb = 0.0;
};

// --- criterion 1 ------------------------------------------------------

void criterion_1() {
    Matrix got = kd_distribution(reference::plus_state(), OrthonormalBasis::computational(2),
                                 qubit_basis(kPi / 2, kPi / 2))
                     .table();
    const double err = (got - reference::plus_circular_table()).cwiseAbs().maxCoeff();
    report(1, "plus state vs circular basis table is exact", err <= 1e-12,
           "max entry error " + fmt(err));
}

// --- criterion 2 ------------------------------------------------------

void criterion_2() {
    OrthonormalBasis comp2 = OrthonormalBasis::computational(2);
    DensityOperator plus = reference::plus_state();
    OptimizationReport r = optimize_coherence(plus, comp2, Quantity::ncl, cfg_full(0));
    const double target = kRoot2 - 1;
    const double val_err = std::abs(r.value - target);
    const bool mub = is_mub(comp2, r.best_basis, 1e-3);
    const double grid = grid_oracle_qubit(plus, comp2, Quantity::ncl, 500);
    const double grid_err = std::abs(grid - target);
    report(2, "plus-state optimum, MUB witness, and grid oracle",
           val_err <= 1e-5 && mub && grid_err <= 1e-4,
           "value error " + fmt(val_err) + ", mub " + (mub ? "yes" : "no") + ", grid error " +
               fmt(grid_err));
}

// --- criterion 3 ------------------------------------------------------

void criterion_3() {
    OrthonormalBasis comp4 = OrthonormalBasis::computational(4, {2, 2});

    DensityOperator complex_state = reference::two_qubit_complex_state();
    OptimizationReport rc = optimize_coherence(complex_state, comp4, Quantity::ncl,
                                               cfg_product(0));
    const double cval_err = std::abs(rc.value - 1.0);
    const double cangle = reference::product_angle_distance(rc.best_params,
                                                            reference::complex_optimal_params());

    DensityOperator real_state = reference::two_qubit_real_state();
    OptimizationReport rr = optimize_coherence(real_state, comp4, Quantity::ncl, cfg_product(0));
    const double rval_err = std::abs(rr.value - 1.0);
    // The real state's optimal set is a ridge: accept either a direct angle
    // match or a certified objective-preserving path onto the target angles.
    const double rangle = reference::product_angle_distance(rr.best_params,
                                                            reference::real_optimal_params());
    double ridge = 1.0;
    bool real_angles_ok = rangle <= 1e-2;
    if (!real_angles_ok) {
        ridge = reference::ridge_path_min(real_state, comp4, rr.best_params,
                                          reference::real_optimal_params());
        real_angles_ok = ridge >= rr.value - 1e-4;
    }

    Matrix real_table = kd_distribution(real_state, comp4,
                                        basis_from_params(reference::real_optimal_params()))
                            .table();
    const double table_err =
        (real_table - reference::real_optimal_table()).cwiseAbs().maxCoeff();

    Matrix complex_table =
        kd_distribution(complex_state, comp4,
                        basis_from_params(reference::complex_optimal_params()))
            .table();
    // Real parts printed in the source table round 1/(8 sqrt(2)) to 0.0884.
    double repart_err = 0.0;
    const Matrix ref_table = reference::complex_optimal_table();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double expected = ref_table(i, j).real();
            if (std::abs(std::abs(expected) - 1.0 / (8 * kRoot2)) < 1e-9)
                expected = std::copysign(reference::kComplexCornerRounded, expected);
            repart_err = std::max(repart_err,
                                  std::abs(complex_table(i, j).real() - expected));
        }

    const bool ok = cval_err <= 1e-4 && cangle <= 1e-2 && rval_err <= 1e-4 && real_angles_ok &&
                    table_err <= 1e-12 && repart_err <= 1e-3;
    report(3, "two-qubit optima, angles, and tables", ok,
           "value errors " + fmt(cval_err) + "/" + fmt(rval_err) + ", angle dist " +
               fmt(cangle) + "/" + fmt(rangle) + (rangle > 1e-2 ? " (ridge min " + fmt(ridge) + ")" : "") +
               ", real table error " + fmt(table_err) + ", rounded real parts error " +
               fmt(repart_err));
}

// --- criteria 4-6 share one ensemble ---------------------------------

std::vector<EnsembleCase> build_ensemble() {
    std::vector<EnsembleCase> out;
    for (std::uint64_t s = 0; s < 200; ++s) {
        EnsembleCase ec;
        ec.d = 2 + static_cast<int>(s % 3);
        const int rank = 1 + static_cast<int>((s / 3) % ec.d);
        ec.rho = random_density(ec.d, rank, derive_seed(1000, s));
        OrthonormalBasis A = OrthonormalBasis::computational(ec.d);
        ec.c = optimize_coherence(ec.rho, A, Quantity::ncl, cfg_full(derive_seed(2000, s))).value;
        ec.l1 = c_l1(ec.rho, A);
        ec.mu = measurement_uncertainty(ec.rho, A);
        ec.pb = purity_bound(ec.rho);
        out.push_back(std::move(ec));
    }
    return out;
}

void criterion_4(const std::vector<EnsembleCase>& ensemble) {
    int violations = 0;
    double worst = -1.0;
    for (const EnsembleCase& ec : ensemble) {
        if (ec.c > ec.l1 + 1e-6) ++violations;
        worst = std::max(worst, ec.c - ec.l1);
    }
    report(4, "nonclassicality never exceeds l1 coherence on 200 states", violations == 0,
           "violations " + std::to_string(violations) + ", worst margin " + fmt(worst));
}

// Equality C = MU for a pure state requires a second basis unbiased to the
// incoherent one whose overlaps with the state are all 1/sqrt(d) (both
// Cauchy-Schwarz steps in the bound must be tight). For d = 3 such a basis
// exists iff the pairwise products of the amplitude moduli satisfy the
// triangle inequality; states with one dominant amplitude admit none.
bool equality_witness_exists(const DensityOperator& rho) {
    const int d = rho.dim();
    if (d == 2) return true;
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    Vector psi = es.eigenvectors().col(d - 1);
    std::vector<double> w(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) w[static_cast<std::size_t>(a)] = std::abs(psi(a));
    std::sort(w.begin(), w.end());
    return w[1] * w[2] <= w[0] * w[1] + w[0] * w[2] + 1e-15;
}

void criterion_5(const std::vector<EnsembleCase>& ensemble) {
    // (a) pure-state equality with the measurement uncertainty.
    double worst_gap = 0.0, worst_witnessed = 0.0;
    int witness_free = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const int d = 2 + static_cast<int>(s % 2);
        DensityOperator rho = random_density(d, 1, derive_seed(3000, s));
        OrthonormalBasis A = OrthonormalBasis::computational(d);
        const double c =
            optimize_coherence(rho, A, Quantity::ncl, cfg_full(derive_seed(3100, s), 48)).value;
        const double gap = std::abs(c - measurement_uncertainty(rho, A));
        worst_gap = std::max(worst_gap, gap);
        if (equality_witness_exists(rho))
            worst_witnessed = std::max(worst_witnessed, gap);
        else
            ++witness_free;
    }

    // (b) uncertainty bound chain on the mixed ensemble.
    int mu_violations = 0, cap_violations = 0;
    for (const EnsembleCase& ec : ensemble) {
        if (ec.c > ec.mu + 1e-6) ++mu_violations;
        if (ec.mu > std::sqrt(static_cast<double>(ec.d)) - 1 + 1e-12) ++cap_violations;
    }
    report(5, "uncertainty bound: pure equality and mixed chain",
           worst_gap <= 2e-3 && mu_violations == 0 && cap_violations == 0,
           "worst pure |C-MU| " + fmt(worst_gap) + " (" + fmt(worst_witnessed) + " over states "
               "admitting an unbiased witness basis; " + std::to_string(witness_free) +
               "/50 admit none and the gap is real), chain violations " +
               std::to_string(mu_violations) + "/" + std::to_string(cap_violations));
}

void criterion_6(const std::vector<EnsembleCase>& ensemble) {
    int violations = 0;
    for (const EnsembleCase& ec : ensemble)
        if (ec.c > ec.pb + 1e-6) ++violations;

    OrthonormalBasis comp2 = OrthonormalBasis::computational(2);
    const double c2 = optimize_coherence(reference::plus_state(), comp2, Quantity::ncl,
                                         cfg_full(11))
                          .value;
    const double sat2 = std::abs(c2 - (kRoot2 - 1));

    Vector amp(4);
    amp << 1, 1, 1, 1;
    DensityOperator max4((amp / 2.0) * (amp / 2.0).adjoint(), {2, 2});
    const double c4 = optimize_coherence(max4, OrthonormalBasis::computational(4, {2, 2}),
                                         Quantity::ncl, cfg_product(12))
                          .value;
    const double sat4 = std::abs(c4 - 1.0);

    report(6, "purity bound holds and saturates at maximal coherence",
           violations == 0 && sat2 <= 1e-4 && sat4 <= 1e-4,
           "violations " + std::to_string(violations) + ", saturation errors " + fmt(sat2) +
               "/" + fmt(sat4));
}

// --- criterion 7 ------------------------------------------------------

bool property_faithfulness(std::string& detail) {
    OrthonormalBasis comp2 = OrthonormalBasis::computational(2);
    int wrong = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const bool rotate = (s % 2) == 1;
        std::mt19937_64 eng = make_engine(derive_seed(4000, s));
        std::uniform_real_distribution<double> u(0.05, 0.45);
        const double p = u(eng);
        DensityOperator rho(Matrix(Eigen::Vector2cd(Cx(p, 0), Cx(1 - p, 0)).asDiagonal()));
        if (rotate) {
            Matrix v = random_unitary(2, derive_seed(4001, s));
            Matrix m = v * rho.matrix() * v.adjoint();
            if (off_diagonal_mass(m) < 1e-3) {
                m = qubit_basis(kPi / 3, 0.7).columns() * rho.matrix() *
                    qubit_basis(kPi / 3, 0.7).columns().adjoint();
            }
            rho = DensityOperator(m);
        }
        const double mass = off_diagonal_mass(rho.matrix());
        const double c = grid_oracle_qubit(rho, comp2, Quantity::ncl, 300);
        const bool coherent = c > 1e-8;
        if (coherent != (mass > 1e-10)) ++wrong;
    }
    detail += "faithfulness wrong " + std::to_string(wrong);
    return wrong == 0;
}

bool property_conjugation(std::string& detail) {
    OrthonormalBasis comp2 = OrthonormalBasis::computational(2);
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        DensityOperator rho = random_density(2, 1 + static_cast<int>(s % 2),
                                             derive_seed(4100, s));
        Matrix u = random_unitary(2, derive_seed(4101, s));
        auto [rho_u, a_u] = conjugate(rho, comp2, u);
        const double before =
            optimize_coherence(rho, comp2, Quantity::ncl, cfg_full(derive_seed(4102, s))).value;
        const double after =
            optimize_coherence(rho_u, a_u, Quantity::ncl, cfg_full(derive_seed(4102, s))).value;
        worst = std::max(worst, std::abs(before - after));
    }
    detail += ", conjugation gap " + fmt(worst);
    return worst <= 2e-5;
}

bool property_convexity(std::string& detail) {
    double worst_fixed = 0.0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const int d = 2 + static_cast<int>(s % 3);
        DensityOperator r1 = random_density(d, d, derive_seed(4200, s));
        DensityOperator r2 = random_density(d, 1 + static_cast<int>(s % d),
                                            derive_seed(4201, s));
        BasisParams p = params_for_basis(random_basis(d, derive_seed(4202, s)));
        std::mt19937_64 eng = make_engine(derive_seed(4203, s));
        const double lam = std::uniform_real_distribution<double>(0.0, 1.0)(eng);
        OrthonormalBasis A = OrthonormalBasis::computational(d);
        DensityOperator blend(lam * r1.matrix() + (1 - lam) * r2.matrix());
        const double excess = objective_ncl(blend, A, p) -
                              (lam * objective_ncl(r1, A, p) +
                               (1 - lam) * objective_ncl(r2, A, p));
        worst_fixed = std::max(worst_fixed, excess);
    }

    OrthonormalBasis comp2 = OrthonormalBasis::computational(2);
    double worst_opt = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        DensityOperator r1 = random_density(2, 2, derive_seed(4210, s));
        DensityOperator r2 = random_density(2, 1 + static_cast<int>(s % 2),
                                            derive_seed(4211, s));
        std::mt19937_64 eng = make_engine(derive_seed(4212, s));
        const double lam = std::uniform_real_distribution<double>(0.0, 1.0)(eng);
        DensityOperator blend(lam * r1.matrix() + (1 - lam) * r2.matrix());
        const double excess =
            grid_oracle_qubit(blend, comp2, Quantity::ncl, 500) -
            (lam * grid_oracle_qubit(r1, comp2, Quantity::ncl, 500) +
             (1 - lam) * grid_oracle_qubit(r2, comp2, Quantity::ncl, 500));
        worst_opt = std::max(worst_opt, excess);
    }
    detail += ", convexity excess " + fmt(worst_fixed) + "/" + fmt(worst_opt);
    return worst_fixed <= 1e-12 && worst_opt <= 1e-3;
}

// Optimized nonclassicality of the first qubit's coarse projectors
// {Pi_a (x) I}, searched over product second bases.
double coarse_first_qubit_optimum(const DensityOperator& rho12, std::uint64_t seed) {
    OrthonormalBasis A = OrthonormalBasis::computational(4, {2, 2});
    PartitionSpec part{{{0, 1}, {2, 3}}};
    auto objective = [&](const Matrix& cols) {
        return coarse_grain_kd(rho12, A, part, OrthonormalBasis(cols)).functionals.ncl;
    };
    return optimize_basis(4, cfg_product(seed), objective).value;
}

bool property_partial_trace(std::string& detail) {
    OrthonormalBasis comp2 = OrthonormalBasis::computational(2);
    double worst_drop = 0.0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        DensityOperator rho12(random_density(4, 1 + static_cast<int>(s % 4),
                                             derive_seed(4300, s))
                                  .matrix(),
                              {2, 2});
        const double joint = coarse_first_qubit_optimum(rho12, derive_seed(4301, s));
        const double local = optimize_coherence(partial_trace(rho12, 0), comp2, Quantity::ncl,
                                                cfg_full(derive_seed(4302, s)))
                                 .value;
        worst_drop = std::max(worst_drop, local - joint);
    }

    double worst_eq = 0.0;
    for (std::uint64_t s = 0; s < 15; ++s) {
        DensityOperator r1 = random_density(2, 1 + static_cast<int>(s % 2), derive_seed(4310, s));
        DensityOperator r2 = random_density(2, 2, derive_seed(4311, s));
        DensityOperator prod = tensor(r1, r2);
        const double joint = coarse_first_qubit_optimum(prod, derive_seed(4312, s));
        const double local = optimize_coherence(r1, comp2, Quantity::ncl,
                                                cfg_full(derive_seed(4313, s)))
                                 .value;
        worst_eq = std::max(worst_eq, std::abs(joint - local));
    }
    detail += ", partial-trace drop " + fmt(worst_drop) + " eq " + fmt(worst_eq);
    return worst_drop <= 1e-3 && worst_eq <= 1e-3;
}

bool property_dephasing(std::string& detail) {
    OrthonormalBasis comp2 = OrthonormalBasis::computational(2);
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        DensityOperator rho = random_density(2, 1 + static_cast<int>(s % 2),
                                             derive_seed(4400, s));
        const double before = grid_oracle_qubit(rho, comp2, Quantity::ncl, 300);
        for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const double after = grid_oracle_qubit(dephase_mix(rho, comp2, p), comp2,
                                                   Quantity::ncl, 300);
            worst = std::max(worst, after - before);
        }
    }
    detail += ", dephasing excess " + fmt(worst);
    return worst <= 1e-6;
}

bool property_coarse_graining(std::string& detail) {
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const int d = 3 + static_cast<int>(s % 2);
        DensityOperator rho = random_density(d, d, derive_seed(4500, s));
        OrthonormalBasis A = random_basis(d, derive_seed(4501, s));
        OrthonormalBasis B = random_basis(d, derive_seed(4502, s));
        PartitionSpec part;
        part.blocks = d == 3 ? std::vector<std::vector<int>>{{0, 2}, {1}}
                             : std::vector<std::vector<int>>{{0, 3}, {1, 2}};
        const double fine = functionals(kd_distribution(rho, A, B)).ncl;
        worst = std::max(worst, coarse_grain_kd(rho, A, part, B).functionals.ncl - fine);
    }
    detail += ", coarse excess " + fmt(worst);
    return worst <= 1e-12;
}

bool property_cip(std::string& detail) {
    OrthonormalBasis comp2 = OrthonormalBasis::computational(2);
    double worst_mono = 0.0, worst_dilation = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        std::mt19937_64 eng = make_engine(derive_seed(4600, s));
        std::uniform_real_distribution<double> u(0.1, 1.0);
        CIPSpec spec;
        const int outcomes = 1 + static_cast<int>(s % 3);
        double total = 0.0;
        spec.probs.resize(outcomes);
        for (double& p : spec.probs) total += (p = u(eng));
        for (double& p : spec.probs) p /= total;
        for (int e = 0; e < outcomes; ++e)
            spec.perms.push_back((eng() & 1) ? std::vector<int>{1, 0}
                                             : std::vector<int>{0, 1});

        DensityOperator rho = random_density(2, 2, derive_seed(4601, s));
        const double before = grid_oracle_qubit(rho, comp2, Quantity::ncl, 300);
        const double after = grid_oracle_qubit(phi_cip(rho, spec), comp2, Quantity::ncl, 300);
        worst_mono = std::max(worst_mono, after - before);
        worst_dilation =
            std::max(worst_dilation, (phi_cip(rho, spec).matrix() -
                                      phi_cip_dilation(rho, spec).matrix())
                                         .cwiseAbs()
                                         .maxCoeff());

        // d=3 dilation cross-check with nontrivial permutations.
        DensityOperator rho3 = random_density(3, 3, derive_seed(4602, s));
        CIPSpec spec3;
        spec3.probs = {0.3, 0.7};
        spec3.perms = {{1, 2, 0}, {2, 0, 1}};
        worst_dilation =
            std::max(worst_dilation, (phi_cip(rho3, spec3).matrix() -
                                      phi_cip_dilation(rho3, spec3).matrix())
                                         .cwiseAbs()
                                         .maxCoeff());
    }
    detail += ", cip excess " + fmt(worst_mono) + " dilation " + fmt(worst_dilation);
    return worst_mono <= 1e-6 && worst_dilation <= 1e-12;
}

void criterion_7() {
    std::string detail;
    const bool i = property_faithfulness(detail);
    const bool ii = property_conjugation(detail);
    const bool iii = property_convexity(detail);
    const bool iv = property_partial_trace(detail);
    const bool v = property_dephasing(detail);
    const bool vi = property_coarse_graining(detail);
    const bool vii = property_cip(detail);
    report(7, "free-operation properties (i)-(vii)", i && ii && iii && iv && v && vi && vii,
           detail);
}

// --- criterion 8 ------------------------------------------------------

void criterion_8() {
    double worst_norm = 0.0, worst_marginal = 0.0, worst_eq4 = 0.0, worst_roundtrip = 0.0;
    int reconstructed = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const int d = 2 + static_cast<int>(s % 3);
        DensityOperator rho = random_density(d, 1 + static_cast<int>((s / 3) % d),
                                             derive_seed(5000, s));
        OrthonormalBasis A = random_basis(d, derive_seed(5001, s));
        OrthonormalBasis B = random_basis(d, derive_seed(5002, s));
        KDDistribution kd = kd_distribution(rho, A, B);
        const Matrix& q = kd.table();

        worst_norm = std::max(worst_norm, std::abs(q.sum() - Cx(1, 0)));
        Matrix in_a = matrix_in_basis(rho.matrix(), A);
        Matrix in_b = matrix_in_basis(rho.matrix(), B);
        for (int a = 0; a < d; ++a)
            worst_marginal = std::max(worst_marginal, std::abs(q.row(a).sum() - in_a(a, a)));
        for (int b = 0; b < d; ++b)
            worst_marginal = std::max(worst_marginal, std::abs(q.col(b).sum() - in_b(b, b)));

        FunctionalReport f = functionals(kd);
        worst_eq4 = std::max(worst_eq4, f.ncl - (f.neg + f.nre));

        if (min_overlap(A, B) > 1e-6) {
            ++reconstructed;
            worst_roundtrip = std::max(
                worst_roundtrip,
                (reconstruct_state(kd, A, B).matrix() - rho.matrix()).cwiseAbs().maxCoeff());
        }
    }
    report(8, "table invariants on 1000 random triples",
           worst_norm <= 1e-12 && worst_marginal <= 1e-12 && worst_eq4 <= 1e-10 &&
               worst_roundtrip <= 1e-10,
           "normalization " + fmt(worst_norm) + ", marginals " + fmt(worst_marginal) +
               ", inequality excess " + fmt(worst_eq4) + ", roundtrip " + fmt(worst_roundtrip) +
               " over " + std::to_string(reconstructed) + " regular pairs");
}

// --- criterion 9 ------------------------------------------------------

void criterion_9() {
    double worst_residual = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        DensityOperator rho = random_density(3, 3, derive_seed(6000, s));
        StateDerivativePair pair(rho, commutator_derivative(random_hermitian(3,
                                                                             derive_seed(6001, s)),
                                                            rho));
        worst_residual = std::max(worst_residual, sld(pair).residual);
    }

    // Rank-deficient worked example: pure ground state driven off-diagonal.
    Matrix ground = Matrix::Zero(2, 2);
    ground(0, 0) = 1.0;
    Matrix sx(2, 2);
    sx << 0, 1, 1, 0;
    SLDResult pure = sld(StateDerivativePair(DensityOperator(ground), sx));
    const double pure_l_err = (pure.L - 2.0 * sx).cwiseAbs().maxCoeff();
    const bool pure_ok = pure_l_err <= 1e-12 && pure.residual <= 1e-12 &&
                         pure.support_cutoff_used;

    double worst_disc = 0.0;
    for (std::uint64_t s = 0; s < 30; ++s) {
        const int d = 2 + static_cast<int>(s % 2);
        DensityOperator rho = random_density(d, d, derive_seed(6100, s));
        StateDerivativePair pair(rho, commutator_derivative(random_hermitian(d,
                                                                             derive_seed(6101, s)),
                                                            rho));
        worst_disc = std::max(worst_disc,
                              kd_decomposition_check(random_hermitian(d, derive_seed(6102, s)),
                                                     pair));
    }

    int bound_failures = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        DensityOperator rho = random_density(2, 2, derive_seed(6200, s));
        StateDerivativePair pair(rho, commutator_derivative(random_hermitian(2,
                                                                             derive_seed(6201, s)),
                                                            rho));
        Matrix a = random_hermitian(2, derive_seed(6202, s));
        auto [evals, evecs] = hermitian_eigs(a);
        (void)evals;
        const double coh = optimize_coherence(rho, OrthonormalBasis(evecs), Quantity::ncl,
                                              cfg_full(derive_seed(6203, s), 16))
                               .value;
        if (!normalized_bound_check(a, pair, coh).holds) ++bound_failures;
    }

    const double qfi_pure = qfi(StateDerivativePair(DensityOperator(ground), sx));
    const double qfi_err = std::abs(qfi_pure - 4.0);

    report(9, "susceptibility: SLD, decomposition, bound, QFI",
           worst_residual <= 1e-10 && pure_ok && worst_disc <= 1e-10 && bound_failures == 0 &&
               qfi_err <= 1e-12,
           "residual " + fmt(worst_residual) + ", pure example error " + fmt(pure_l_err) +
               ", decomposition " + fmt(worst_disc) + ", bound failures " +
               std::to_string(bound_failures) + ", QFI error " + fmt(qfi_err));
}

// --- criterion 10 -----------------------------------------------------

void criterion_10() {
    DensityOperator plus = reference::plus_state();
    OrthonormalBasis comp2 = OrthonormalBasis::computational(2);
    BasisParams optimal;
    optimal.dim = 2;
    optimal.angles = {kPi / 2, kPi / 2};
    const double exact = kRoot2 - 1;

    SamplingModel m;
    m.shots_per_entry = 100000;
    m.seed = 900;
    int hits = 0;
    for (int r = 0; r < 100; ++r)
        if (std::abs(noisy_objective(plus, comp2, optimal, m, static_cast<std::uint64_t>(r)) -
                     exact) <= 0.01)
            ++hits;

    OptimizerConfig cfg = cfg_full(7);
    cfg.max_iterations = 300;
    EstimationTrace t = variational_estimate(plus, comp2, cfg, m);
    const double spsa_err = std::abs(t.final_value - exact);

    auto spread = [&](long shots, std::uint64_t seed) {
        SamplingModel sm;
        sm.shots_per_entry = shots;
        sm.seed = seed;
        double mean = 0.0, sq = 0.0;
        const int n = 1000;
        for (int r = 0; r < n; ++r) {
            const double v = noisy_objective(plus, comp2, optimal, sm,
                                             static_cast<std::uint64_t>(r));
            mean += v;
            sq += v * v;
        }
        mean /= n;
        return std::sqrt((sq / n - mean * mean) * n / (n - 1.0));
    };
    const double ratio = spread(2500, 901) / spread(10000, 902);

    report(10, "shot-noise estimator accuracy and scaling",
           hits >= 95 && spsa_err <= 0.02 && ratio >= 1.8 && ratio <= 2.2,
           "hits " + std::to_string(hits) + "/100, SPSA error " + fmt(spsa_err) +
               ", spread ratio " + fmt(ratio));
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();

    criterion_1();
    criterion_2();
    criterion_3();
    std::vector<EnsembleCase> ensemble = build_ensemble();
    criterion_4(ensemble);
    criterion_5(ensemble);
    criterion_6(ensemble);
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d/10 criteria passed in %.1fs\n", 10 - g_failures, secs);
    return g_failures == 0 ? 0 : 1;
}
