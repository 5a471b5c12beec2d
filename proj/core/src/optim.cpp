#include "kdcoh/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kdcoh {

NMResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<double>& x0, double initial_step,
                     const NMOptions& opts) {
    const int n = static_cast<int>(x0.size());
    NMResult res;

    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (int k = 1; k <= n; ++k) simplex[k][k - 1] += initial_step;
    for (int k = 0; k <= n; ++k) fv[k] = f(simplex[k]);
    res.evaluations = n + 1;

    std::vector<int> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return fv[a] < fv[b]; });
        const int best = order[0], worst = order[n], second_worst = order[n - 1];

        if (fv[worst] - fv[best] <= opts.function_tolerance) {
            res.converged = true;
            res.iterations = iter;
            break;
        }
        res.iterations = iter + 1;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (int k = 0; k <= n; ++k) {
            if (k == worst) continue;
            for (int d = 0; d < n; ++d) centroid[d] += simplex[k][d];
        }
        for (int d = 0; d < n; ++d) centroid[d] /= n;

        for (int d = 0; d < n; ++d) xr[d] = centroid[d] + (centroid[d] - simplex[worst][d]);
        const double fr = f(xr);
        ++res.evaluations;

        if (fr < fv[best]) {
            for (int d = 0; d < n; ++d) xe[d] = centroid[d] + 2.0 * (centroid[d] - simplex[worst][d]);
            const double fe = f(xe);
            ++res.evaluations;
            if (fe < fr) {
                simplex[worst] = xe;
                fv[worst] = fe;
            } else {
                simplex[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[second_worst]) {
            simplex[worst] = xr;
            fv[worst] = fr;
        } else {
            const bool outside = fr < fv[worst];
            const auto& ref = outside ? xr : simplex[worst];
            for (int d = 0; d < n; ++d) xc[d] = centroid[d] + 0.5 * (ref[d] - centroid[d]);
            const double fc = f(xc);
            ++res.evaluations;
            if (fc < std::min(fr, fv[worst])) {
                simplex[worst] = xc;
                fv[worst] = fc;
            } else {
                for (int k = 0; k <= n; ++k) {   // shrink toward the best vertex
                    if (k == best) continue;
                    for (int d = 0; d < n; ++d)
                        simplex[k][d] = simplex[best][d] + 0.5 * (simplex[k][d] - simplex[best][d]);
                    fv[k] = f(simplex[k]);
                }
                res.evaluations += n;
            }
        }
    }

    const int arg = static_cast<int>(std::min_element(fv.begin(), fv.end()) - fv.begin());
    res.x = simplex[arg];
    res.fmin = fv[arg];
    return res;
}

}  // namespace kdcoh
