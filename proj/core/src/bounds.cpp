#include "kdcoh/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kdcoh {

double measurement_uncertainty(const DensityOperator& rho, const OrthonormalBasis& A) {
    if (rho.dim() != A.dim())
        throw std::invalid_argument("measurement_uncertainty requires equal dimensions");
    double sum = 0.0;
    for (int a = 0; a < A.dim(); ++a) {
        const double pr = std::max(0.0, A.column(a).dot(rho.matrix() * A.column(a)).real());
        sum += std::sqrt(pr);
    }
    return sum - 1.0;
}

double purity_bound(const DensityOperator& rho) {
    return std::sqrt(rho.dim() * purity(rho)) - 1.0;
}

BoundReport verify_bounds(const DensityOperator& rho, const OrthonormalBasis& A,
                          const OptimizationReport& report, double slack) {
    if (rho.dim() != A.dim())
        throw std::invalid_argument("verify_bounds requires equal dimensions");
    // Provenance: the report's value must reproduce from its own parameters
    // on this exact problem, else it belongs to a different (rho, A).
    const double replay = objective_ncl(rho, A, report.best_params);
    if (std::abs(replay - report.value) > 1e-9)
        throw std::logic_error("optimization report does not match this state/basis pair "
                               "(replayed objective differs by " +
                               std::to_string(std::abs(replay - report.value)) + ")");

    BoundReport out;
    out.c_value = report.value;
    out.l1 = c_l1(rho, A);
    out.measurement_uncertainty = measurement_uncertainty(rho, A);
    out.purity_bound = purity_bound(rho);
    out.dim_bound = std::sqrt(static_cast<double>(rho.dim())) - 1.0;
    out.slack = slack;
    out.all_satisfied = out.c_value <= out.l1 + slack &&
                        out.c_value <= out.measurement_uncertainty + slack &&
                        out.c_value <= out.purity_bound + slack &&
                        out.c_value <= out.dim_bound + slack;
    return out;
}

}  // namespace kdcoh
