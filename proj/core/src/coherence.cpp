#include "kdcoh/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kdcoh/optim.hpp"
#include "kdcoh/parallel.hpp"
#include "kdcoh/rng.hpp"

namespace kdcoh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInitialSimplexStep = 0.35;  // radians

double table_functional(const Matrix& table, Quantity quantity) {
    double acc = 0.0;
    if (quantity == Quantity::ncl) {
        for (int i = 0; i < table.rows(); ++i)
            for (int j = 0; j < table.cols(); ++j) acc += std::abs(table(i, j));
        return acc - 1.0;
    }
    for (int i = 0; i < table.rows(); ++i)
        for (int j = 0; j < table.cols(); ++j) acc += std::abs(table(i, j).imag());
    return acc;
}

// Objective evaluated directly on raw basis columns, skipping the
// construction checks of the public pipeline (algebraically identical).
double raw_objective(const Matrix& rho_m, const Matrix& a_cols, const Matrix& b_cols,
                     Quantity quantity) {
    const Matrix overlaps = a_cols.adjoint() * b_cols;
    const Matrix mixed = a_cols.adjoint() * rho_m * b_cols;
    return table_functional(overlaps.conjugate().cwiseProduct(mixed), quantity);
}

double wrap_2pi(double x) {
    double y = std::fmod(x, kTwoPi);
    if (y < 0) y += kTwoPi;
    return y;
}

int product_qubits(const DensityOperator& rho, const OrthonormalBasis& A,
                   const OptimizerConfig& cfg) {
    if (!A.is_product())
        throw std::invalid_argument("product-mode search requires a declared product basis");
    for (int f : A.subsystem_dims())
        if (f != 2)
            throw std::invalid_argument("product-mode search supports qubit factors only");
    (void)rho;
    (void)cfg;
    return static_cast<int>(A.subsystem_dims().size());
}

}  // namespace

double c_l1(const DensityOperator& rho, const OrthonormalBasis& A) {
    if (rho.dim() != A.dim())
        throw std::invalid_argument("c_l1 requires equal dimensions");
    const Matrix in_a = matrix_in_basis(rho.matrix(), A);
    double sum = 0.0;
    for (int i = 0; i < in_a.rows(); ++i)
        for (int j = 0; j < in_a.cols(); ++j)
            if (i != j) sum += std::abs(in_a(i, j));
    return sum;
}

double objective_ncl(const DensityOperator& rho, const OrthonormalBasis& A,
                     const BasisParams& p) {
    return functionals(kd_distribution(rho, A, basis_from_params(p))).ncl;
}

double objective_nre(const DensityOperator& rho, const OrthonormalBasis& A,
                     const BasisParams& p) {
    return functionals(kd_distribution(rho, A, basis_from_params(p))).nre;
}

BasisParams wrap_params(BasisParams p) {
    if (p.product) {
        for (int k = 0; 2 * k < static_cast<int>(p.angles.size()); ++k) {
            double a = wrap_2pi(p.angles[2 * k]);
            double b = p.angles[2 * k + 1];
            if (a > kPi) {  // same per-qubit basis up to a column phase
                a = kTwoPi - a;
                b += kPi;
            }
            p.angles[2 * k] = a;
            p.angles[2 * k + 1] = wrap_2pi(b);
        }
    } else {
        // Arithmetic wrapping of a mixing angle negates its Givens block,
        // which does not commute with later rotations sharing an index, so
        // re-derive canonical in-range angles from the realized basis
        // instead (same basis up to column phases).
        p = params_for_basis(basis_from_params(p));
    }
    return p;
}

namespace {

struct MultiStartSetup {
    int dim = 0;
    int nparams = 0;
    bool product = false;
};

OptimizationReport run_multistart(const MultiStartSetup& setup, const OptimizerConfig& cfg,
                                  const std::function<double(const Matrix&)>& basis_objective) {
    if (cfg.starts < 1) throw std::invalid_argument("optimizer needs starts >= 1");
    if (cfg.function_tolerance <= 0)
        throw std::invalid_argument("optimizer tolerance must be positive");

    NMOptions nm_opts{cfg.max_iterations, cfg.function_tolerance};
    auto make_params = [&](const std::vector<double>& angles) {
        BasisParams p;
        p.dim = setup.dim;
        p.angles = angles;
        p.product = setup.product;
        return p;
    };
    auto objective_at = [&](const std::vector<double>& angles) {
        return basis_objective(chart_matrix(make_params(angles)));
    };

    std::vector<NMResult> results(cfg.starts);
    parallel_for(cfg.starts, [&](int s) {
        auto eng = make_engine(derive_seed(cfg.seed, static_cast<std::uint64_t>(s)));
        std::uniform_real_distribution<double> mix(0.0, kPi);
        std::uniform_real_distribution<double> phase(0.0, kTwoPi);
        std::vector<double> x0(setup.nparams);
        for (int k = 0; k < setup.nparams; ++k)
            x0[k] = (k % 2 == 0) ? mix(eng) : phase(eng);
        results[s] = nelder_mead([&](const std::vector<double>& x) { return -objective_at(x); },
                                 x0, kInitialSimplexStep, nm_opts);
    });

    OptimizationReport report;
    report.per_start_values.resize(cfg.starts);
    int best_start = 0;
    for (int s = 0; s < cfg.starts; ++s) {
        report.per_start_values[s] = -results[s].fmin;
        report.evaluations += results[s].evaluations;
        report.converged = report.converged || results[s].converged;
        if (report.per_start_values[s] > report.per_start_values[best_start]) best_start = s;
    }
    report.value = report.per_start_values[best_start];
    report.best_params = wrap_params(make_params(results[best_start].x));
    report.best_basis = basis_from_params(report.best_params);
    return report;
}

}  // namespace

OptimizationReport optimize_basis(int dim, const OptimizerConfig& cfg,
                                  const std::function<double(const Matrix&)>& objective) {
    MultiStartSetup setup;
    setup.dim = dim;
    setup.product = (cfg.mode == SearchMode::product);
    if (setup.product) {
        int n = 0;
        while ((1 << n) < dim) ++n;
        if ((1 << n) != dim)
            throw std::invalid_argument("product-mode search requires dim = 2^n");
        setup.nparams = 2 * n;
    } else {
        setup.nparams = BasisParams::full_count(dim);
    }
    return run_multistart(setup, cfg, objective);
}

OptimizationReport optimize_coherence(const DensityOperator& rho, const OrthonormalBasis& A,
                                      Quantity quantity, const OptimizerConfig& cfg) {
    if (rho.dim() != A.dim())
        throw std::invalid_argument("optimize_coherence requires equal dimensions");

    MultiStartSetup setup;
    setup.dim = rho.dim();
    if (cfg.mode == SearchMode::product) {
        setup.product = true;
        setup.nparams = 2 * product_qubits(rho, A, cfg);
    } else {
        if (rho.has_subsystems() && A.is_product() && !cfg.force_full_chart)
            throw std::invalid_argument(
                "declared product problem requires product mode (or force_full_chart)");
        setup.product = false;
        setup.nparams = BasisParams::full_count(setup.dim);
    }

    const Matrix& rho_m = rho.matrix();
    const Matrix& a_cols = A.columns();
    return run_multistart(setup, cfg, [&, quantity](const Matrix& b_cols) {
        return raw_objective(rho_m, a_cols, b_cols, quantity);
    });
}

double grid_oracle_qubit(const DensityOperator& rho, const OrthonormalBasis& A,
                         Quantity quantity, int grid_n) {
    if (rho.dim() != 2 || A.dim() != 2)
        throw std::invalid_argument("grid_oracle_qubit is defined for dimension 2 only");
    if (grid_n < 2) throw std::invalid_argument("grid_oracle_qubit needs grid_n >= 2");

    const Matrix& rho_m = rho.matrix();
    const Matrix& a_cols = A.columns();
    std::vector<double> row_max(grid_n, -1.0);
    parallel_for(grid_n, [&](int i) {
        const double alpha = kPi * i / (grid_n - 1);
        const double c = std::cos(alpha / 2), s = std::sin(alpha / 2);
        double best = -1.0;
        Matrix b(2, 2);
        for (int j = 0; j < grid_n; ++j) {
            const Cx e = std::polar(1.0, kTwoPi * j / grid_n);
            b(0, 0) = c;     b(0, 1) = s;
            b(1, 0) = s * e; b(1, 1) = -c * e;
            best = std::max(best, raw_objective(rho_m, a_cols, b, quantity));
        }
        row_max[i] = best;
    });
    return *std::max_element(row_max.begin(), row_max.end());
}

}  // namespace kdcoh
