#include "kdcoh/reference.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace kdcoh::reference {

namespace {

constexpr double kPi = std::numbers::pi;

DensityOperator pure_state(const Vector& psi, std::vector<int> subsystem_dims = {}) {
    Matrix m = psi * psi.adjoint();
    return DensityOperator(std::move(m), std::move(subsystem_dims));
}

BasisParams product_params(double alpha, double beta) {
    BasisParams p;
    p.dim = 4;
    p.product = true;
    p.angles = {alpha, beta, alpha, beta};
    return p;
}

double wrapped_gap(double x, double y) {
    const double two_pi = 2.0 * kPi;
    double d = std::fmod(std::abs(x - y), two_pi);
    return std::min(d, two_pi - d);
}

// Shift x by multiples of 2pi to the representative nearest t.
double nearest_mod_2pi(double x, double t) {
    const double two_pi = 2.0 * kPi;
    return x - two_pi * std::round((x - t) / two_pi);
}

// Rewrite product coordinates in the per-qubit orbit representative
// (direct or column-swapped) and 2pi branch closest to `target`.
BasisParams align_product_params(const BasisParams& got, const BasisParams& target) {
    BasisParams out = got;
    for (std::size_t k = 0; 2 * k < got.angles.size(); ++k) {
        const double a = got.angles[2 * k], b = got.angles[2 * k + 1];
        const double ta = target.angles[2 * k], tb = target.angles[2 * k + 1];
        const double direct = std::max(wrapped_gap(a, ta), wrapped_gap(b, tb));
        const double swapped = std::max(wrapped_gap(kPi - a, ta), wrapped_gap(b + kPi, tb));
        double ca = a, cb = b;
        if (swapped < direct) {
            ca = kPi - a;
            cb = b + kPi;
        }
        out.angles[2 * k] = nearest_mod_2pi(ca, ta);
        out.angles[2 * k + 1] = nearest_mod_2pi(cb, tb);
    }
    return out;
}

}  // namespace

DensityOperator plus_state() {
    Vector psi(2);
    psi << 1.0, 1.0;
    return pure_state(psi / std::sqrt(2.0));
}

DensityOperator two_qubit_complex_state() {
    const Cx i(0.0, 1.0);
    Vector psi(4);
    psi << 1.0, -i, -i, i;
    return pure_state(psi / 2.0, {2, 2});
}

DensityOperator two_qubit_real_state() {
    Vector psi(4);
    psi << 1.0, 1.0, 1.0, -1.0;
    return pure_state(psi / 2.0, {2, 2});
}

Matrix plus_circular_table() {
    const Cx p(0.25, 0.25), m(0.25, -0.25);
    Matrix t(2, 2);
    t << p, m, m, p;
    return t;
}

BasisParams complex_optimal_params() { return product_params(kPi / 2.0, 3.0 * kPi / 4.0); }

BasisParams real_optimal_params() { return product_params(kPi / 2.0, 0.0); }

Matrix complex_optimal_table() {
    const double v = 1.0 / (8.0 * std::sqrt(2.0));
    const double e = 0.125;
    const Cx pp = v * Cx(1.0, 1.0);    //  (1+i) v
    const Cx pm = v * Cx(1.0, -1.0);   //  (1-i) v
    Matrix t(4, 4);
    t << -pp, e, e, pp,
         e, pm, -pm, e,
         e, -pm, pm, e,
         pp, e, e, -pp;
    return t;
}

Matrix real_optimal_table() {
    Matrix t(4, 4);
    t << 1, 1, 1, -1,
         1, -1, 1, 1,
         1, 1, -1, 1,
         -1, 1, 1, 1;
    return t / 8.0;
}

double product_angle_distance(const BasisParams& got, const BasisParams& target) {
    got.validate();
    target.validate();
    if (!got.product || !target.product || got.angles.size() != target.angles.size())
        throw std::invalid_argument("product_angle_distance needs matching product params");
    double worst = 0.0;
    for (std::size_t k = 0; 2 * k < got.angles.size(); ++k) {
        const double a = got.angles[2 * k], b = got.angles[2 * k + 1];
        const double ta = target.angles[2 * k], tb = target.angles[2 * k + 1];
        const double direct = std::max(wrapped_gap(a, ta), wrapped_gap(b, tb));
        const double swapped = std::max(wrapped_gap(kPi - a, ta), wrapped_gap(b + kPi, tb));
        worst = std::max(worst, std::min(direct, swapped));
    }
    return worst;
}

double path_min_objective(const DensityOperator& rho, const OrthonormalBasis& A,
                          const BasisParams& from, const BasisParams& to, int steps) {
    if (from.angles.size() != to.angles.size() || from.product != to.product)
        throw std::invalid_argument("path_min_objective needs matching param layouts");
    if (steps < 1) throw std::invalid_argument("path_min_objective needs steps >= 1");
    double lo = std::numeric_limits<double>::infinity();
    BasisParams p = from;
    for (int s = 0; s <= steps; ++s) {
        const double t = static_cast<double>(s) / steps;
        for (std::size_t i = 0; i < p.angles.size(); ++i)
            p.angles[i] = (1.0 - t) * from.angles[i] + t * to.angles[i];
        lo = std::min(lo, objective_ncl(rho, A, p));
    }
    return lo;
}

double ridge_path_min(const DensityOperator& rho, const OrthonormalBasis& A,
                      const BasisParams& from_raw, const BasisParams& target, int steps) {
    if (!from_raw.product || !target.product ||
        from_raw.angles.size() != target.angles.size())
        throw std::invalid_argument("ridge_path_min needs matching product params");
    const BasisParams from = align_product_params(from_raw, target);

    double best = path_min_objective(rho, A, from, target, steps);
    if (from.angles.size() == 4) {
        for (int hold = 0; hold < 2; ++hold) {
            // Move everything except qubit `hold` first, then finish it.
            BasisParams corner = target;
            corner.angles[2 * hold] = from.angles[2 * hold];
            corner.angles[2 * hold + 1] = from.angles[2 * hold + 1];
            const double leg = std::min(path_min_objective(rho, A, from, corner, steps),
                                        path_min_objective(rho, A, corner, target, steps));
            best = std::max(best, leg);
        }
    }
    return best;
}

}  // namespace kdcoh::reference
