#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <kdcoh/coherence.hpp>
#include <kdcoh/reference.hpp>
#include <kdcoh/rng.hpp>

#include "test_util.hpp"

using namespace kdcoh;
using namespace kdcoh::test;

namespace {

BasisParams qubit_params(double alpha, double beta) {
    BasisParams p;
    p.dim = 2;
    p.angles = {alpha, beta};
    return p;
}

OptimizerConfig fast_cfg(std::uint64_t seed = 0, int starts = 16) {
    OptimizerConfig cfg;
    cfg.starts = starts;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("c_l1 sums off-diagonal moduli") {
    OrthonormalBasis comp2 = OrthonormalBasis::computational(2);
    CHECK(c_l1(bloch_qubit(1, kPi / 2, 0), comp2) == doctest::Approx(1.0).epsilon(1e-12));

    Vector amp(4);
    amp << 1, 1, 1, 1;
    CHECK(c_l1(ket_state(amp), OrthonormalBasis::computational(4)) ==
          doctest::Approx(3.0).epsilon(1e-12));

    CHECK(c_l1(diag_state(0.3), comp2) == 0.0);
    CHECK_THROWS_AS(c_l1(diag_state(0.3), OrthonormalBasis::computational(3)),
                    std::invalid_argument);
}

TEST_CASE("objective_ncl matches the composed table pipeline") {
    OrthonormalBasis comp2 = OrthonormalBasis::computational(2);
    CHECK(objective_ncl(diag_state(0.4), comp2, qubit_params(1.1, 2.2)) <= 1e-12);
    CHECK(objective_ncl(reference::plus_state(), comp2, qubit_params(kPi / 2, kPi / 2)) ==
          doctest::Approx(kRoot2 - 1).epsilon(1e-12));

    for (std::uint64_t s = 0; s < 25; ++s) {
        const int d = 2 + static_cast<int>(s % 3);
        DensityOperator rho = random_density(d, d, derive_seed(71, s));
        OrthonormalBasis A = random_basis(d, derive_seed(72, s));
        OrthonormalBasis B = random_basis(d, derive_seed(73, s));
        BasisParams p = params_for_basis(B);
        FunctionalReport f = functionals(kd_distribution(rho, A, basis_from_params(p)));
        CHECK(std::abs(objective_ncl(rho, A, p) - f.ncl) <= 1e-14);
        CHECK(std::abs(objective_nre(rho, A, p) - f.nre) <= 1e-14);
    }
}

TEST_CASE("optimizer finds the single-qubit optima") {
    OrthonormalBasis comp2 = OrthonormalBasis::computational(2);

    OptimizationReport flat = optimize_coherence(diag_state(0.35), comp2, Quantity::ncl,
                                                 fast_cfg());
    CHECK(flat.value <= 1e-8);

    OptimizationReport plus = optimize_coherence(reference::plus_state(), comp2,
                                                 Quantity::ncl, fast_cfg());
    CHECK(std::abs(plus.value - (kRoot2 - 1)) <= 1e-5);
    CHECK(is_mub(comp2, plus.best_basis, 1e-3));
}

TEST_CASE("optimization report is internally consistent") {
    OptimizerConfig cfg = fast_cfg(5);
    DensityOperator rho = random_density(3, 3, 111);
    OrthonormalBasis A = random_basis(3, 112);
    OptimizationReport r = optimize_coherence(rho, A, Quantity::ncl, cfg);

    CHECK(static_cast<int>(r.per_start_values.size()) == cfg.starts);
    CHECK(std::abs(r.value - objective_ncl(rho, A, r.best_params)) <= 1e-12);
    double best = r.per_start_values[0];
    for (double v : r.per_start_values) best = std::max(best, v);
    CHECK(r.value == best);
    CHECK(r.evaluations > 0);
    CHECK(basis_distance(r.best_basis, basis_from_params(r.best_params)) <= 1e-10);
}

TEST_CASE("doubling the start budget never lowers the reported value") {
    DensityOperator rho = random_density(3, 2, 131);
    OrthonormalBasis A = random_basis(3, 132);
    const double v8 = optimize_coherence(rho, A, Quantity::ncl, fast_cfg(9, 8)).value;
    const double v16 = optimize_coherence(rho, A, Quantity::ncl, fast_cfg(9, 16)).value;
    CHECK(v16 >= v8 - 1e-12);
}

TEST_CASE("product-mode search recovers the two-qubit complex optimum") {
    OptimizerConfig cfg;
    cfg.mode = SearchMode::product;
    cfg.seed = 2;
    OptimizationReport r = optimize_coherence(reference::two_qubit_complex_state(),
                                              OrthonormalBasis::computational(4, {2, 2}),
                                              Quantity::ncl, cfg);
    CHECK(std::abs(r.value - 1.0) <= 1e-4);
    CHECK(reference::product_angle_distance(r.best_params,
                                            reference::complex_optimal_params()) <= 1e-2);
}

TEST_CASE("grid oracle pins the qubit ground truth") {
    OrthonormalBasis comp2 = OrthonormalBasis::computational(2);
    CHECK(std::abs(grid_oracle_qubit(reference::plus_state(), comp2, Quantity::ncl, 500) -
                   (kRoot2 - 1)) <= 1e-4);
    CHECK(grid_oracle_qubit(diag_state(0.2), comp2, Quantity::ncl, 200) <= 1e-12);
    CHECK(std::abs(grid_oracle_qubit(bloch_qubit(0.8, kPi / 2, 0), comp2, Quantity::ncl, 500) -
                   (std::sqrt(1.64) - 1)) <= 1e-4);

    CHECK_THROWS_AS(grid_oracle_qubit(random_density(3, 3, 1), OrthonormalBasis::computational(3),
                                      Quantity::ncl, 100),
                    std::invalid_argument);
    CHECK_THROWS_AS(grid_oracle_qubit(diag_state(0.5), comp2, Quantity::ncl, 1),
                    std::invalid_argument);
}

TEST_CASE("qubit optimizer agrees with the grid oracle on random states") {
    OrthonormalBasis comp2 = OrthonormalBasis::computational(2);
    for (std::uint64_t s = 0; s < 100; ++s) {
        DensityOperator rho = random_density(2, 1 + static_cast<int>(s % 2), derive_seed(81, s));
        const double opt = optimize_coherence(rho, comp2, Quantity::ncl, fast_cfg(s)).value;
        const double grid = grid_oracle_qubit(rho, comp2, Quantity::ncl, 500);
        CHECK(std::abs(opt - grid) <= 1e-3);
    }
}

TEST_CASE("optimal value is invariant under joint unitary relabeling") {
    OrthonormalBasis comp2 = OrthonormalBasis::computational(2);
    for (std::uint64_t s = 0; s < 5; ++s) {
        DensityOperator rho = random_density(2, 2, derive_seed(91, s));
        Matrix u = random_unitary(2, derive_seed(92, s));
        DensityOperator rho_u(u * rho.matrix() * u.adjoint());
        OrthonormalBasis a_u(u * comp2.columns());

        const double before = optimize_coherence(rho, comp2, Quantity::ncl, fast_cfg(s, 24)).value;
        const double after = optimize_coherence(rho_u, a_u, Quantity::ncl, fast_cfg(s, 24)).value;
        CHECK(std::abs(before - after) <= 2e-5);
    }
}

TEST_CASE("maximal nonreality equals l1 coherence for qubits") {
    OrthonormalBasis comp2 = OrthonormalBasis::computational(2);
    for (std::uint64_t s = 0; s < 20; ++s) {
        DensityOperator rho = random_density(2, 1 + static_cast<int>(s % 2), derive_seed(95, s));
        const double nre = optimize_coherence(rho, comp2, Quantity::nre, fast_cfg(s, 24)).value;
        CHECK(std::abs(nre - c_l1(rho, comp2)) <= 1e-4);
    }
}

TEST_CASE("wrap_params canonicalizes without moving the basis") {
    BasisParams p = qubit_params(-0.4, 7.0);
    BasisParams w = wrap_params(p);
    CHECK(w.angles[0] >= 0.0);
    CHECK(w.angles[0] <= kPi);
    CHECK(w.angles[1] >= 0.0);
    CHECK(w.angles[1] < 2 * kPi);

    p.product = true;
    BasisParams wp = wrap_params(p);
    CHECK(basis_distance(basis_from_params(wp), basis_from_params(p)) <= 1e-8);
}

TEST_CASE("mode and dimension errors are rejected") {
    OrthonormalBasis comp2 = OrthonormalBasis::computational(2);
    OrthonormalBasis comp4_flat = OrthonormalBasis::computational(4);
    DensityOperator pair(reference::two_qubit_real_state().matrix(), {2, 2});

    OptimizerConfig product_cfg = fast_cfg();
    product_cfg.mode = SearchMode::product;
    CHECK_THROWS_AS(optimize_coherence(pair, comp4_flat, Quantity::ncl, product_cfg),
                    std::invalid_argument);

    // State and basis both declare product structure: full-chart search is a
    // usage error unless explicitly forced.
    OrthonormalBasis comp4_prod = OrthonormalBasis::computational(4, {2, 2});
    OptimizerConfig full_cfg = fast_cfg();
    CHECK_THROWS_AS(optimize_coherence(pair, comp4_prod, Quantity::ncl, full_cfg),
                    std::invalid_argument);
    full_cfg.force_full_chart = true;
    CHECK_NOTHROW(optimize_coherence(pair, comp4_prod, Quantity::ncl, full_cfg));

    CHECK_THROWS_AS(optimize_coherence(diag_state(0.5), comp4_flat, Quantity::ncl, fast_cfg()),
                    std::invalid_argument);
}

TEST_CASE("generic basis search fits a qubit target") {
    OrthonormalBasis target = random_basis(2, 611);
    auto objective = [&](const Matrix& cols) {
        return -basis_distance(OrthonormalBasis(cols), target);
    };
    OptimizationReport r = optimize_basis(2, fast_cfg(1, 24), objective);
    CHECK(-r.value <= 1e-4);
}
