#include "kdcoh/estimator.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "kdcoh/kdq.hpp"
#include "kdcoh/rng.hpp"

namespace kdcoh {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Cx entry_noise(const SamplingModel& model, int a, int b, std::uint64_t eval_counter) {
    auto eng = make_engine(derive_seed(model.seed, static_cast<std::uint64_t>(a),
                                       static_cast<std::uint64_t>(b), eval_counter));
    std::normal_distribution<double> n(0.0, model.entry_std());
    const double re = n(eng);
    const double im = n(eng);
    return {re, im};
}

Matrix sampled_table(const Matrix& exact, const SamplingModel& model,
                     std::uint64_t eval_counter) {
    Matrix noisy = exact;
    for (int a = 0; a < exact.rows(); ++a)
        for (int b = 0; b < exact.cols(); ++b)
            noisy(a, b) += entry_noise(model, a, b, eval_counter);
    return noisy;
}

}  // namespace

void SamplingModel::validate() const {
    if (shots_per_entry < 1)
        throw std::invalid_argument("sampling model needs shots_per_entry >= 1");
}

double SamplingModel::entry_std() const {
    if (noise == Noise::exact) return 0.0;
    return 1.0 / (2.0 * std::sqrt(static_cast<double>(shots_per_entry)));
}

Cx sample_kd_entry(const DensityOperator& rho, const OrthonormalBasis& A,
                   const OrthonormalBasis& B, int a, int b, const SamplingModel& model,
                   std::uint64_t eval_counter) {
    model.validate();
    if (a < 0 || a >= A.dim() || b < 0 || b >= B.dim())
        throw std::invalid_argument("sample_kd_entry index out of range");
    const Cx exact = kd_distribution(rho, A, B).table()(a, b);
    if (model.noise == SamplingModel::Noise::exact) return exact;
    return exact + entry_noise(model, a, b, eval_counter);
}

double noisy_objective(const DensityOperator& rho, const OrthonormalBasis& A,
                       const BasisParams& params, const SamplingModel& model,
                       std::uint64_t eval_counter) {
    model.validate();
    const KDDistribution kd = kd_distribution(rho, A, basis_from_params(params));
    if (model.noise == SamplingModel::Noise::exact) return functionals(kd).ncl;
    const Matrix noisy = sampled_table(kd.table(), model, eval_counter);
    double sum = 0.0;
    for (int a = 0; a < noisy.rows(); ++a)
        for (int b = 0; b < noisy.cols(); ++b) sum += std::abs(noisy(a, b));
    return std::max(0.0, sum - 1.0);
}

EstimationTrace variational_estimate(const DensityOperator& rho, const OrthonormalBasis& A,
                                     const OptimizerConfig& cfg, const SamplingModel& model,
                                     const SPSAGains& gains) {
    model.validate();
    if (rho.dim() != A.dim())
        throw std::invalid_argument("variational_estimate requires equal dimensions");
    if (cfg.max_iterations < 1)
        throw std::invalid_argument("variational_estimate needs max_iterations >= 1");

    const int d = rho.dim();
    BasisParams theta;
    theta.dim = d;
    if (cfg.mode == SearchMode::product) {
        if (!A.is_product())
            throw std::invalid_argument("product-mode search requires a declared product basis");
        for (int f : A.subsystem_dims())
            if (f != 2)
                throw std::invalid_argument("product-mode search supports qubit factors only");
        theta.product = true;
        theta.angles.resize(2 * A.subsystem_dims().size());
    } else {
        if (rho.has_subsystems() && A.is_product() && !cfg.force_full_chart)
            throw std::invalid_argument(
                "declared product problem requires product mode (or force_full_chart)");
        theta.angles.resize(BasisParams::full_count(d));
    }
    const int n = static_cast<int>(theta.angles.size());

    if (cfg.starts < 1)
        throw std::invalid_argument("variational_estimate needs starts >= 1");

    auto eng = make_engine(derive_seed(cfg.seed, 0x5053414bULL));  // classical randomness
    std::uniform_real_distribution<double> mix(0.0, kPi);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);

    std::uint64_t counter = 0;
    auto evaluate = [&](const BasisParams& p) {
        return noisy_objective(rho, A, p, model, counter++);
    };

    // Probe cfg.starts random points (one noisy evaluation each) and begin
    // the ascent from the best; the fixed gain schedule then only has to
    // refine locally.
    double theta_value = 0.0;
    for (int s = 0; s < cfg.starts; ++s) {
        BasisParams cand = theta;
        for (int k = 0; k < n; ++k) cand.angles[k] = (k % 2 == 0) ? mix(eng) : phase(eng);
        const double v = evaluate(cand);
        if (s == 0 || v > theta_value) {
            theta = cand;
            theta_value = v;
        }
    }

    EstimationTrace trace;
    trace.iterations.push_back({theta, theta_value});

    std::bernoulli_distribution coin(0.5);
    std::vector<double> delta(n);
    for (int k = 0; k < cfg.max_iterations; ++k) {
        const double ak = gains.a / std::pow(k + 1 + gains.stability, 0.602);
        const double ck = gains.c / std::pow(k + 1, 0.101);
        for (int i = 0; i < n; ++i) delta[i] = coin(eng) ? 1.0 : -1.0;

        BasisParams plus = theta, minus = theta;
        for (int i = 0; i < n; ++i) {
            plus.angles[i] += ck * delta[i];
            minus.angles[i] -= ck * delta[i];
        }
        const double yp = evaluate(plus);
        const double ym = evaluate(minus);
        const double scale = (yp - ym) / (2.0 * ck);
        // Ascent step; 1/delta_i == delta_i for +-1 perturbations.
        for (int i = 0; i < n; ++i) theta.angles[i] += ak * scale * delta[i];

        trace.iterations.push_back({theta, evaluate(theta)});
    }

    trace.final_value = trace.iterations.back().value;
    trace.final_params = wrap_params(theta);
    trace.exact_reference = optimize_coherence(rho, A, Quantity::ncl, cfg).value;
    const long long evaluations = static_cast<long long>(counter);
    trace.total_shots = static_cast<long long>(model.shots_per_entry) *
                        static_cast<long long>(d) * static_cast<long long>(d) * evaluations;
    trace.bias_bound = static_cast<double>(d) * static_cast<double>(d) * std::sqrt(2.0) *
                       model.entry_std();
    return trace;
}

}  // namespace kdcoh
