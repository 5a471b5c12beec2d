#pragma once

#include <functional>
#include <vector>

namespace kdcoh {

// Plain Nelder-Mead simplex minimizer (reflection 1, expansion 2,
// contraction 1/2, shrink 1/2). Derivative-free, so it tolerates the
// |.|-kinks of quasiprobability objectives.
struct NMOptions {
    int max_iterations = 2000;
    double function_tolerance = 1e-8;  // stop when the simplex f-spread falls below
};

struct NMResult {
    std::vector<double> x;
    double fmin = 0.0;
    int iterations = 0;
    long evaluations = 0;
    bool converged = false;
};

NMResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<double>& x0, double initial_step,
                     const NMOptions& opts);

}  // namespace kdcoh
