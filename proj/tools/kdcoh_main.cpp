#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kdcoh/bounds.hpp"
#include "kdcoh/channels.hpp"
#include "kdcoh/coherence.hpp"
#include "kdcoh/estimator.hpp"
#include "kdcoh/io.hpp"
#include "kdcoh/kdq.hpp"
#include "kdcoh/qstate.hpp"
#include "kdcoh/reference.hpp"
#include "kdcoh/susceptibility.hpp"

namespace {

using namespace kdcoh;
using nlohmann::json;

constexpr double kPi = std::numbers::pi;

struct GlobalOpts {
    std::uint64_t seed = 0;
    std::string out;
    int starts = 32;
    double tol = 1e-8;
    std::string format = "json";
};

std::string timestamp_line() {
    std::time_t t = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return std::string("# generated ") + buf + "\n";
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        if (content.empty() || content.back() != '\n') std::cout << '\n';
    } else {
        write_text_file(out_path, content);
    }
}

OrthonormalBasis default_basis_a(const DensityOperator& rho) {
    return OrthonormalBasis::computational(rho.dim(), rho.subsystem_dims());
}

SearchMode resolve_mode(const std::string& flag, const DensityOperator& rho,
                        const OrthonormalBasis& A) {
    if (flag == "product") return SearchMode::product;
    if (flag == "full") return SearchMode::full;
    return (rho.has_subsystems() && A.is_product()) ? SearchMode::product : SearchMode::full;
}

std::string report_csv(const OptimizationReport& r) {
    std::ostringstream ss;
    ss << timestamp_line() << "key,value\n";
    ss << "value," << format_sig(r.value) << "\n";
    ss << "converged," << (r.converged ? 1 : 0) << "\n";
    ss << "evaluations," << r.evaluations << "\n";
    for (std::size_t i = 0; i < r.best_params.angles.size(); ++i)
        ss << "angle_" << i << "," << format_sig(r.best_params.angles[i]) << "\n";
    return ss.str();
}

// ---------------------------------------------------------------- kd

struct KdArgs {
    std::string state_path, basis_a_path, basis_b_path;
};

bool run_kd(const GlobalOpts& g, const KdArgs& a) {
    DensityOperator rho = load_state(a.state_path);
    OrthonormalBasis A = a.basis_a_path.empty() ? default_basis_a(rho)
                                                : load_basis(a.basis_a_path);
    OrthonormalBasis B = a.basis_b_path.empty() ? OrthonormalBasis::fourier(rho.dim())
                                                : load_basis(a.basis_b_path);
    KDDistribution kd = kd_distribution(rho, A, B);  // validates marginals
    if (g.format == "csv") {
        std::ostringstream ss;
        ss << timestamp_line() << "a,b,re,im,abs\n";
        for (int i = 0; i < kd.dim(); ++i)
            for (int j = 0; j < kd.dim(); ++j)
                ss << i << ',' << j << ',' << format_sig(kd.table()(i, j).real()) << ','
                   << format_sig(kd.table()(i, j).imag()) << ','
                   << format_sig(std::abs(kd.table()(i, j))) << '\n';
        emit(g.out, ss.str());
    } else {
        emit(g.out, kd_to_json(kd, A, B));
    }
    return true;
}

// ---------------------------------------------------------------- coherence

struct CoherenceArgs {
    std::string state_path, basis_a_path;
    std::string quantity = "ncl";
    std::string mode = "auto";
    int iters = 2000;
    bool force_full = false;
};

bool run_coherence(const GlobalOpts& g, const CoherenceArgs& a) {
    DensityOperator rho = load_state(a.state_path);
    OrthonormalBasis A = a.basis_a_path.empty() ? default_basis_a(rho)
                                                : load_basis(a.basis_a_path);
    OptimizerConfig cfg;
    cfg.starts = g.starts;
    cfg.max_iterations = a.iters;
    cfg.function_tolerance = g.tol;
    cfg.seed = g.seed;
    cfg.mode = resolve_mode(a.mode, rho, A);
    cfg.force_full_chart = a.force_full;
    const Quantity q = (a.quantity == "nre") ? Quantity::nre : Quantity::ncl;

    OptimizationReport report = optimize_coherence(rho, A, q, cfg);
    emit(g.out, g.format == "csv" ? report_csv(report) : report_to_json(report));

    bool ok = report.value >= -1e-12;
    if (q == Quantity::ncl) ok = ok && report.value <= c_l1(rho, A) + 1e-6;
    return ok;
}

// ---------------------------------------------------------------- bounds

bool run_bounds(const GlobalOpts& g, const CoherenceArgs& a) {
    DensityOperator rho = load_state(a.state_path);
    OrthonormalBasis A = a.basis_a_path.empty() ? default_basis_a(rho)
                                                : load_basis(a.basis_a_path);
    OptimizerConfig cfg;
    cfg.starts = g.starts;
    cfg.max_iterations = a.iters;
    cfg.function_tolerance = g.tol;
    cfg.seed = g.seed;
    cfg.mode = resolve_mode(a.mode, rho, A);
    cfg.force_full_chart = a.force_full;

    OptimizationReport report = optimize_coherence(rho, A, Quantity::ncl, cfg);
    BoundReport bounds = verify_bounds(rho, A, report);
    if (g.format == "csv") {
        std::ostringstream ss;
        ss << timestamp_line() << "key,value\n"
           << "c_value," << format_sig(bounds.c_value) << "\n"
           << "l1," << format_sig(bounds.l1) << "\n"
           << "measurement_uncertainty," << format_sig(bounds.measurement_uncertainty) << "\n"
           << "purity_bound," << format_sig(bounds.purity_bound) << "\n"
           << "dim_bound," << format_sig(bounds.dim_bound) << "\n"
           << "all_satisfied," << (bounds.all_satisfied ? 1 : 0) << "\n";
        emit(g.out, ss.str());
    } else {
        emit(g.out, bound_report_to_json(bounds));
    }
    return bounds.all_satisfied;
}

// ---------------------------------------------------------------- figures

struct FigureArgs {
    std::vector<double> r_list{1.0, 0.8, 0.5, 0.0};
    int theta_points = 41;
    int grid = 200;
};

std::vector<double> theta_grid(int points) {
    std::vector<double> t(points);
    for (int i = 0; i < points; ++i) t[i] = kPi * i / (points - 1);
    return t;
}

bool run_figure1(const GlobalOpts& g, const FigureArgs& a) {
    std::vector<double> rs = a.r_list;
    std::sort(rs.begin(), rs.end());
    const std::vector<double> thetas = theta_grid(a.theta_points);
    const OrthonormalBasis A = OrthonormalBasis::computational(2);

    std::ostringstream ss;
    ss << timestamp_line() << "theta,r,C_KD_NCl,C_l1,C_KD_NRe,purity_bound\n";
    bool ok = true;
    for (double r : rs) {
        for (double theta : thetas) {
            const DensityOperator rho = bloch_qubit(r, theta, 0.0);
            const double c = grid_oracle_qubit(rho, A, Quantity::ncl, a.grid);
            const double l1 = c_l1(rho, A);
            const double nre = grid_oracle_qubit(rho, A, Quantity::nre, a.grid);
            const double pb = purity_bound(rho);
            ss << format_sig(theta) << ',' << format_sig(r) << ',' << format_sig(c) << ','
               << format_sig(l1) << ',' << format_sig(nre) << ',' << format_sig(pb) << '\n';

            ok = ok && c <= l1 + 1e-6 && c <= pb + 1e-6;
            if (std::abs(r - 1.0) < 1e-12) ok = ok && std::abs(nre - l1) <= 1e-4;
            if (theta < 1e-15) ok = ok && c <= 1e-8 && l1 <= 1e-8 && nre <= 1e-8;
            if (std::abs(r - 1.0) < 1e-12 && std::abs(theta - kPi / 2) < 1e-12)
                ok = ok && std::abs(c - (std::sqrt(2.0) - 1.0)) <= 1e-4;
        }
    }
    emit(g.out, ss.str());
    return ok;
}

bool run_figure2(const GlobalOpts& g, const FigureArgs& a) {
    std::vector<double> rs = a.r_list;
    std::sort(rs.begin(), rs.end());
    const std::vector<double> thetas = theta_grid(a.theta_points);
    const OrthonormalBasis A = OrthonormalBasis::computational(2);

    // rows[ri][ti] = {C, MU} for the monotone-trend checks across r.
    std::vector<std::vector<std::pair<double, double>>> cells(
        rs.size(), std::vector<std::pair<double, double>>(thetas.size()));

    std::ostringstream ss;
    ss << timestamp_line() << "theta,r,C_KD_NCl,MU\n";
    bool ok = true;
    for (std::size_t ri = 0; ri < rs.size(); ++ri) {
        const double r = rs[ri];
        for (std::size_t ti = 0; ti < thetas.size(); ++ti) {
            const double theta = thetas[ti];
            const DensityOperator rho = bloch_qubit(r, theta, 0.0);
            const double c = grid_oracle_qubit(rho, A, Quantity::ncl, a.grid);
            const double mu = measurement_uncertainty(rho, A);
            cells[ri][ti] = {c, mu};
            ss << format_sig(theta) << ',' << format_sig(r) << ',' << format_sig(c) << ','
               << format_sig(mu) << '\n';

            ok = ok && c <= mu + 1e-6;
            if (std::abs(r - 1.0) < 1e-12) ok = ok && std::abs(c - mu) <= 1e-4;
            if (r < 1.0 - 1e-12 && theta < 1e-15) ok = ok && c <= 1e-8 && mu > 1e-6;
        }
    }
    // Lower purity can only lower the coherence and raise the uncertainty.
    for (std::size_t ri = 0; ri + 1 < rs.size(); ++ri)
        for (std::size_t ti = 0; ti < thetas.size(); ++ti) {
            ok = ok && cells[ri][ti].first <= cells[ri + 1][ti].first + 1e-4;
            ok = ok && cells[ri][ti].second >= cells[ri + 1][ti].second - 1e-9;
        }
    emit(g.out, ss.str());
    return ok;
}

// ---------------------------------------------------------------- examples

json check_item(const std::string& name, double achieved, double tolerance) {
    return json{{"name", name},
                {"achieved", achieved},
                {"tolerance", tolerance},
                {"pass", achieved <= tolerance}};
}

bool run_examples(const GlobalOpts& g) {
    json items = json::array();
    const double sqrt2m1 = std::sqrt(2.0) - 1.0;

    // Single-qubit |+> case.
    const DensityOperator plus = reference::plus_state();
    const OrthonormalBasis comp2 = OrthonormalBasis::computational(2);
    {
        const KDDistribution kd = kd_distribution(plus, comp2, qubit_basis(kPi / 2, kPi / 2));
        const double dev = (kd.table() - reference::plus_circular_table()).cwiseAbs().maxCoeff();
        items.push_back(check_item("plus_circular_table", dev, 1e-12));
    }
    OptimizerConfig cfg;
    cfg.starts = g.starts;
    cfg.seed = g.seed;
    cfg.function_tolerance = g.tol;
    {
        const OptimizationReport rep = optimize_coherence(plus, comp2, Quantity::ncl, cfg);
        items.push_back(check_item("plus_optimum_value", std::abs(rep.value - sqrt2m1), 1e-5));

        double mub_dev = 0.0;
        const Matrix ov = comp2.columns().adjoint() * rep.best_basis.columns();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                mub_dev = std::max(mub_dev, std::abs(std::abs(ov(i, j)) - 1.0 / std::sqrt(2.0)));
        items.push_back(check_item("plus_optimum_mub", mub_dev, 1e-3));

        const double grid = grid_oracle_qubit(plus, comp2, Quantity::ncl, 200);
        items.push_back(check_item("plus_grid_oracle_agreement", std::abs(rep.value - grid), 1e-4));
    }
    items.push_back(check_item(
        "mub_witness_basis",
        is_mub(comp2, qubit_basis(kPi / 2, 3 * kPi / 4), 1e-3) ? 0.0 : 1.0, 0.5));

    // Two-qubit maximally coherent states, product-basis search.
    const OrthonormalBasis comp4 = OrthonormalBasis::computational(4, {2, 2});
    OptimizerConfig pcfg = cfg;
    pcfg.mode = SearchMode::product;

    const DensityOperator cplx = reference::two_qubit_complex_state();
    const DensityOperator real = reference::two_qubit_real_state();
    {
        const OptimizationReport rep = optimize_coherence(cplx, comp4, Quantity::ncl, pcfg);
        items.push_back(check_item("two_qubit_complex_value", std::abs(rep.value - 1.0), 1e-4));
        items.push_back(check_item(
            "two_qubit_complex_angles",
            reference::product_angle_distance(rep.best_params, reference::complex_optimal_params()),
            1e-2));
    }
    {
        const OptimizationReport rep = optimize_coherence(real, comp4, Quantity::ncl, pcfg);
        items.push_back(check_item("two_qubit_real_value", std::abs(rep.value - 1.0), 1e-4));

        // The optimum here is a connected ridge, so the reported angles may
        // sit anywhere on it; accept either closeness to the stated point or
        // a certified flat path to it.
        const BasisParams target = reference::real_optimal_params();
        const double dist = reference::product_angle_distance(rep.best_params, target);
        json item;
        if (dist <= 1e-2) {
            item = check_item("two_qubit_real_angles", dist, 1e-2);
        } else {
            const double path_min = reference::ridge_path_min(real, comp4, rep.best_params, target);
            item = check_item("two_qubit_real_angles", 1.0 - path_min, 1e-4);
            item["ridge_certified"] = true;
            item["angle_distance"] = dist;
        }
        items.push_back(item);
    }
    {
        const KDDistribution kd =
            kd_distribution(real, comp4, basis_from_params(reference::real_optimal_params()));
        const double dev = (kd.table() - reference::real_optimal_table()).cwiseAbs().maxCoeff();
        items.push_back(check_item("two_qubit_real_table", dev, 1e-12));
    }
    {
        const KDDistribution kd =
            kd_distribution(cplx, comp4, basis_from_params(reference::complex_optimal_params()));
        const Matrix expected = reference::complex_optimal_table();
        double mod_dev = 0.0, re_dev = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                mod_dev = std::max(mod_dev, std::abs(std::abs(kd.table()(i, j)) - 0.125));
                // The commonly quoted corner value rounds the exact corner
                // component to 221/2500.
                double want = expected(i, j).real();
                if (std::abs(std::abs(want) - 0.125) > 1e-9)
                    want = (want > 0 ? 1.0 : -1.0) * reference::kComplexCornerRounded;
                re_dev = std::max(re_dev, std::abs(kd.table()(i, j).real() - want));
            }
        items.push_back(check_item("two_qubit_complex_table_moduli", mod_dev, 1e-12));
        items.push_back(check_item("two_qubit_complex_table_real_parts", re_dev, 1e-3));
    }

    bool all = true;
    for (const json& it : items) all = all && it["pass"].get<bool>();
    json verdict{{"items", items}, {"all_pass", all}};
    emit(g.out, verdict.dump(2));
    return all;
}

// ---------------------------------------------------------------- susceptibility

struct SusArgs {
    std::string input_path;
};

bool run_susceptibility(const GlobalOpts& g, const SusArgs& a) {
    const SusceptibilityInput in = load_susceptibility_input(a.input_path);
    const StateDerivativePair pair(in.rho0, in.drho);
    const SLDResult s = sld(pair);

    json out;
    out["dim"] = in.rho0.dim();
    out["sld_residual"] = s.residual;
    out["support_cutoff_used"] = s.support_cutoff_used;
    out["qfi"] = qfi(pair);

    bool ok = s.support_cutoff_used || s.residual <= 1e-8;
    if (in.has_observable) {
        const double chi = static_susceptibility(in.observable, pair);
        const double disc = kd_decomposition_check(in.observable, pair);
        auto [a_vals, a_vecs] = hermitian_eigs(in.observable);
        (void)a_vals;
        OptimizerConfig cfg;
        cfg.starts = g.starts;
        cfg.seed = g.seed;
        cfg.function_tolerance = g.tol;
        const OptimizationReport rep =
            optimize_coherence(in.rho0, OrthonormalBasis(a_vecs), Quantity::ncl, cfg);
        const BoundCheck bound = normalized_bound_check(in.observable, pair, rep.value);

        out["chi"] = chi;
        out["decomposition_discrepancy"] = disc;
        out["coherence_value"] = rep.value;
        out["normalized_susceptibility"] = bound.value;
        out["bound"] = bound.bound;
        out["bound_vacuous"] = bound.vacuous;
        out["bound_holds"] = bound.holds;
        ok = ok && disc <= 1e-8 && bound.holds;
    }
    emit(g.out, out.dump(2));
    return ok;
}

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
    std::string state_path, basis_a_path;
    long shots = 100000;
    int iters = 300;
    std::string mode = "auto";
};

bool run_estimate(const GlobalOpts& g, const EstimateArgs& a) {
    DensityOperator rho = load_state(a.state_path);
    OrthonormalBasis A = a.basis_a_path.empty() ? default_basis_a(rho)
                                                : load_basis(a.basis_a_path);
    OptimizerConfig cfg;
    cfg.starts = g.starts;
    cfg.max_iterations = a.iters;
    cfg.function_tolerance = g.tol;
    cfg.seed = g.seed;
    cfg.mode = resolve_mode(a.mode, rho, A);

    SamplingModel model;
    model.shots_per_entry = a.shots;
    model.seed = g.seed;

    const EstimationTrace trace = variational_estimate(rho, A, cfg, model);

    if (!g.out.empty()) {
        std::ostringstream ss;
        ss << timestamp_line() << "iteration,value\n";
        for (std::size_t i = 0; i < trace.iterations.size(); ++i)
            ss << i << ',' << format_sig(trace.iterations[i].value) << '\n';
        write_text_file(g.out, ss.str());
    }

    json summary;
    summary["final_value"] = trace.final_value;
    summary["exact_reference"] = trace.exact_reference;
    summary["abs_difference"] = std::abs(trace.final_value - trace.exact_reference);
    summary["total_shots"] = trace.total_shots;
    summary["bias_bound"] = trace.bias_bound;
    summary["shots_per_entry"] = model.shots_per_entry;
    summary["spsa_updates"] = a.iters;
    summary["final_params"] = {{"dim", trace.final_params.dim},
                               {"product", trace.final_params.product},
                               {"angles", trace.final_params.angles}};
    std::cout << summary.dump(2) << std::endl;

    const long long evals = g.starts + 3LL * a.iters;
    const int d = rho.dim();
    bool ok = static_cast<long long>(trace.iterations.size()) == 1 + a.iters;
    ok = ok && trace.total_shots == static_cast<long long>(a.shots) * d * d * evals;
    ok = ok && trace.final_value == trace.iterations.back().value;
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kirkwood-Dirac quasiprobability and coherence toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "base RNG seed");
    app.add_option("--out", g.out, "output path (stdout when omitted)");
    app.add_option("--starts", g.starts, "optimizer restarts")->check(CLI::PositiveNumber);
    app.add_option("--tol", g.tol, "optimizer function tolerance")->check(CLI::PositiveNumber);
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));

    KdArgs kd_args;
    CLI::App* kd_cmd = app.add_subcommand("kd", "KD quasiprobability table of a state");
    kd_cmd->fallthrough();
    kd_cmd->add_option("--state", kd_args.state_path, "state JSON file")
        ->required()->check(CLI::ExistingFile);
    kd_cmd->add_option("--basis-a", kd_args.basis_a_path, "incoherent basis JSON (default computational)")
        ->check(CLI::ExistingFile);
    kd_cmd->add_option("--basis-b", kd_args.basis_b_path, "second basis JSON (default Fourier)")
        ->check(CLI::ExistingFile);

    CoherenceArgs coh_args;
    CLI::App* coh_cmd = app.add_subcommand("coherence", "optimize a KD coherence quantifier");
    coh_cmd->fallthrough();
    coh_cmd->add_option("--state", coh_args.state_path, "state JSON file")
        ->required()->check(CLI::ExistingFile);
    coh_cmd->add_option("--basis-a", coh_args.basis_a_path, "incoherent basis JSON")
        ->check(CLI::ExistingFile);
    coh_cmd->add_option("--quantity", coh_args.quantity, "ncl|nre")
        ->check(CLI::IsMember({"ncl", "nre"}));
    coh_cmd->add_option("--mode", coh_args.mode, "search chart: auto|full|product")
        ->check(CLI::IsMember({"auto", "full", "product"}));
    coh_cmd->add_option("--iters", coh_args.iters, "max optimizer iterations per start")
        ->check(CLI::PositiveNumber);
    coh_cmd->add_flag("--force-full", coh_args.force_full,
                      "allow the full chart on declared product problems");

    CoherenceArgs bounds_args;
    CLI::App* bounds_cmd = app.add_subcommand("bounds", "optimize and verify the bound chain");
    bounds_cmd->fallthrough();
    bounds_cmd->add_option("--state", bounds_args.state_path, "state JSON file")
        ->required()->check(CLI::ExistingFile);
    bounds_cmd->add_option("--basis-a", bounds_args.basis_a_path, "incoherent basis JSON")
        ->check(CLI::ExistingFile);
    bounds_cmd->add_option("--mode", bounds_args.mode, "search chart: auto|full|product")
        ->check(CLI::IsMember({"auto", "full", "product"}));
    bounds_cmd->add_option("--iters", bounds_args.iters, "max optimizer iterations per start")
        ->check(CLI::PositiveNumber);

    FigureArgs fig1_args;
    CLI::App* fig1_cmd = app.add_subcommand(
        "figure1", "qubit coherence quantifiers vs theta for several purities (CSV)");
    fig1_cmd->fallthrough();
    fig1_cmd->add_option("--r-list", fig1_args.r_list, "Bloch radii")
        ->delimiter(',')->check(CLI::Range(0.0, 1.0));
    fig1_cmd->add_option("--theta-points", fig1_args.theta_points, "grid points over [0,pi]")
        ->check(CLI::Range(2, 100000));
    fig1_cmd->add_option("--grid", fig1_args.grid, "oracle grid points per angle")
        ->check(CLI::Range(2, 100000));

    FigureArgs fig2_args;
    CLI::App* fig2_cmd = app.add_subcommand(
        "figure2", "qubit coherence vs measurement uncertainty (CSV)");
    fig2_cmd->fallthrough();
    fig2_cmd->add_option("--r-list", fig2_args.r_list, "Bloch radii")
        ->delimiter(',')->check(CLI::Range(0.0, 1.0));
    fig2_cmd->add_option("--theta-points", fig2_args.theta_points, "grid points over [0,pi]")
        ->check(CLI::Range(2, 100000));
    fig2_cmd->add_option("--grid", fig2_args.grid, "oracle grid points per angle")
        ->check(CLI::Range(2, 100000));

    CLI::App* examples_cmd =
        app.add_subcommand("examples", "recompute the built-in reference cases");
    examples_cmd->fallthrough();

    SusArgs sus_args;
    CLI::App* sus_cmd =
        app.add_subcommand("susceptibility", "SLD, susceptibility, QFI and the coherence bound");
    sus_cmd->fallthrough();
    sus_cmd->add_option("--input", sus_args.input_path, "problem JSON file")
        ->required()->check(CLI::ExistingFile);

    EstimateArgs est_args;
    CLI::App* est_cmd =
        app.add_subcommand("estimate", "shot-noise variational estimate of the coherence");
    est_cmd->fallthrough();
    est_cmd->add_option("--state", est_args.state_path, "state JSON file")
        ->required()->check(CLI::ExistingFile);
    est_cmd->add_option("--basis-a", est_args.basis_a_path, "incoherent basis JSON")
        ->check(CLI::ExistingFile);
    est_cmd->add_option("--shots", est_args.shots, "shots per table entry per evaluation")
        ->check(CLI::PositiveNumber);
    est_cmd->add_option("--iters", est_args.iters, "SPSA updates")->check(CLI::PositiveNumber);
    est_cmd->add_option("--mode", est_args.mode, "search chart: auto|full|product")
        ->check(CLI::IsMember({"auto", "full", "product"}));

    CLI11_PARSE(app, argc, argv);

    try {
        bool ok = false;
        if (kd_cmd->parsed()) ok = run_kd(g, kd_args);
        else if (coh_cmd->parsed()) ok = run_coherence(g, coh_args);
        else if (bounds_cmd->parsed()) ok = run_bounds(g, bounds_args);
        else if (fig1_cmd->parsed()) ok = run_figure1(g, fig1_args);
        else if (fig2_cmd->parsed()) ok = run_figure2(g, fig2_args);
        else if (examples_cmd->parsed()) ok = run_examples(g);
        else if (sus_cmd->parsed()) ok = run_susceptibility(g, sus_args);
        else if (est_cmd->parsed()) ok = run_estimate(g, est_args);
        return ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
