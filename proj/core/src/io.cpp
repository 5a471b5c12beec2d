#include "kdcoh/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace kdcoh {

namespace {

using nlohmann::json;

int line_of_offset(const std::string& text, std::size_t offset) {
    int line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

int line_of_key(const std::string& text, const std::string& key) {
    const std::size_t pos = text.find('"' + key + '"');
    if (pos == std::string::npos) return 1;
    return line_of_offset(text, pos);
}

[[noreturn]] void fail_at(const std::string& path, int line, const std::string& what) {
    throw std::runtime_error(path + ": line " + std::to_string(line) + ": " + what);
}

struct Doc {
    std::string path;
    std::string text;
    json j;
};

Doc parse_file(const std::string& path) {
    Doc doc;
    doc.path = path;
    doc.text = read_text_file(path);
    try {
        doc.j = json::parse(doc.text);
    } catch (const json::parse_error& e) {
        fail_at(path, line_of_offset(doc.text, e.byte > 0 ? e.byte - 1 : 0), e.what());
    }
    if (!doc.j.is_object()) fail_at(path, 1, "top-level value must be an object");
    return doc;
}

int require_dim(const Doc& doc) {
    if (!doc.j.contains("dim")) fail_at(doc.path, 1, "missing key 'dim'");
    const json& jd = doc.j["dim"];
    if (!jd.is_number_integer() || jd.get<int>() < 1)
        fail_at(doc.path, line_of_key(doc.text, "dim"), "'dim' must be a positive integer");
    return jd.get<int>();
}

Cx parse_entry(const json& je, const Doc& doc, const std::string& key) {
    if (!je.is_array() || je.size() != 2 || !je[0].is_number() || !je[1].is_number())
        fail_at(doc.path, line_of_key(doc.text, key),
                "'" + key + "' entries must be [re, im] number pairs");
    return {je[0].get<double>(), je[1].get<double>()};
}

// Nested [re,im] rows -> rows x cols matrix; `column_major` flips the
// outer index to mean column (basis files list vectors, not rows).
Matrix parse_matrix(const Doc& doc, const std::string& key, int rows, int cols,
                    bool column_major = false) {
    if (!doc.j.contains(key)) fail_at(doc.path, 1, "missing key '" + key + "'");
    const json& jm = doc.j[key];
    const int outer = column_major ? cols : rows;
    const int inner = column_major ? rows : cols;
    const int line = line_of_key(doc.text, key);
    if (!jm.is_array() || static_cast<int>(jm.size()) != outer)
        fail_at(doc.path, line,
                "'" + key + "' must be an array of " + std::to_string(outer) + " rows");
    Matrix m(rows, cols);
    for (int o = 0; o < outer; ++o) {
        const json& jrow = jm[o];
        if (!jrow.is_array() || static_cast<int>(jrow.size()) != inner)
            fail_at(doc.path, line,
                    "'" + key + "' rows must hold " + std::to_string(inner) + " entries");
        for (int i = 0; i < inner; ++i) {
            const Cx v = parse_entry(jrow[i], doc, key);
            if (column_major)
                m(i, o) = v;
            else
                m(o, i) = v;
        }
    }
    return m;
}

json matrix_to_rows(const Matrix& m, bool column_major = false) {
    json out = json::array();
    const int outer = static_cast<int>(column_major ? m.cols() : m.rows());
    const int inner = static_cast<int>(column_major ? m.rows() : m.cols());
    for (int o = 0; o < outer; ++o) {
        json row = json::array();
        for (int i = 0; i < inner; ++i) {
            const Cx v = column_major ? m(i, o) : m(o, i);
            row.push_back(json::array({v.real(), v.imag()}));
        }
        out.push_back(row);
    }
    return out;
}

json basis_object(const OrthonormalBasis& B) {
    json out;
    out["dim"] = B.dim();
    out["columns"] = matrix_to_rows(B.columns(), true);
    if (B.is_product()) out["subsystem_dims"] = B.subsystem_dims();
    return out;
}

json params_object(const BasisParams& p) {
    return json{{"dim", p.dim}, {"product", p.product}, {"angles", p.angles}};
}

}  // namespace

DensityOperator load_state(const std::string& path) {
    Doc doc = parse_file(path);
    const int d = require_dim(doc);
    Matrix m = parse_matrix(doc, "matrix", d, d);
    std::vector<int> subsystem_dims;
    if (doc.j.contains("subsystem_dims")) {
        const json& js = doc.j["subsystem_dims"];
        const int line = line_of_key(doc.text, "subsystem_dims");
        if (!js.is_array() || js.empty())
            fail_at(doc.path, line, "'subsystem_dims' must be a nonempty array");
        for (const json& f : js) {
            if (!f.is_number_integer() || f.get<int>() < 2)
                fail_at(doc.path, line, "'subsystem_dims' entries must be integers >= 2");
            subsystem_dims.push_back(f.get<int>());
        }
    }
    try {
        return DensityOperator(std::move(m), std::move(subsystem_dims));
    } catch (const std::invalid_argument& e) {
        fail_at(doc.path, line_of_key(doc.text, "matrix"), e.what());
    }
}

OrthonormalBasis load_basis(const std::string& path) {
    Doc doc = parse_file(path);
    const int d = require_dim(doc);
    Matrix cols = parse_matrix(doc, "columns", d, d, true);
    std::vector<int> subsystem_dims;
    if (doc.j.contains("subsystem_dims"))
        for (const json& f : doc.j["subsystem_dims"]) subsystem_dims.push_back(f.get<int>());
    try {
        return OrthonormalBasis(std::move(cols), std::move(subsystem_dims));
    } catch (const std::invalid_argument& e) {
        fail_at(doc.path, line_of_key(doc.text, "columns"), e.what());
    }
}

CIPSpec load_cip_spec(const std::string& path) {
    Doc doc = parse_file(path);
    CIPSpec spec;
    if (!doc.j.contains("probs")) fail_at(doc.path, 1, "missing key 'probs'");
    if (!doc.j.contains("perms")) fail_at(doc.path, 1, "missing key 'perms'");
    const json& jp = doc.j["probs"];
    if (!jp.is_array() || jp.empty())
        fail_at(doc.path, line_of_key(doc.text, "probs"), "'probs' must be a nonempty array");
    for (const json& v : jp) {
        if (!v.is_number())
            fail_at(doc.path, line_of_key(doc.text, "probs"), "'probs' entries must be numbers");
        spec.probs.push_back(v.get<double>());
    }
    const json& jperm = doc.j["perms"];
    const int line = line_of_key(doc.text, "perms");
    if (!jperm.is_array() || jperm.size() != jp.size())
        fail_at(doc.path, line, "'perms' must list one permutation per probability");
    for (const json& row : jperm) {
        if (!row.is_array()) fail_at(doc.path, line, "'perms' entries must be arrays");
        std::vector<int> perm;
        for (const json& v : row) {
            if (!v.is_number_integer())
                fail_at(doc.path, line, "'perms' entries must hold integers");
            perm.push_back(v.get<int>());
        }
        spec.perms.push_back(std::move(perm));
    }
    try {
        spec.validate(spec.perms.empty() ? 0 : static_cast<int>(spec.perms.front().size()));
    } catch (const std::invalid_argument& e) {
        fail_at(doc.path, line, e.what());
    }
    return spec;
}

SusceptibilityInput load_susceptibility_input(const std::string& path) {
    Doc doc = parse_file(path);
    const int d = require_dim(doc);

    SusceptibilityInput in{DensityOperator(Matrix::Identity(d, d) / static_cast<double>(d)),
                           Matrix::Zero(d, d)};
    {
        Matrix rho_m = parse_matrix(doc, "rho0", d, d);
        try {
            in.rho0 = DensityOperator(std::move(rho_m));
        } catch (const std::invalid_argument& e) {
            fail_at(doc.path, line_of_key(doc.text, "rho0"), e.what());
        }
    }

    const bool has_gen = doc.j.contains("generator");
    const bool has_drho = doc.j.contains("drho");
    if (has_gen == has_drho)
        fail_at(doc.path, 1, "exactly one of 'generator' or 'drho' is required");
    try {
        if (has_gen) {
            in.from_generator = true;
            in.generator = parse_matrix(doc, "generator", d, d);
            in.drho = commutator_derivative(in.generator, in.rho0);
        } else {
            in.drho = parse_matrix(doc, "drho", d, d);
            StateDerivativePair check(in.rho0, in.drho);  // validates shape/Hermiticity/trace
            (void)check;
        }
    } catch (const std::invalid_argument& e) {
        fail_at(doc.path, line_of_key(doc.text, has_gen ? "generator" : "drho"), e.what());
    }

    if (doc.j.contains("observable")) {
        in.has_observable = true;
        in.observable = parse_matrix(doc, "observable", d, d);
        if ((in.observable - in.observable.adjoint()).cwiseAbs().maxCoeff() > kValidationTol)
            fail_at(doc.path, line_of_key(doc.text, "observable"),
                    "'observable' must be Hermitian");
    }
    return in;
}

std::string state_to_json(const DensityOperator& rho) {
    json out;
    out["dim"] = rho.dim();
    out["matrix"] = matrix_to_rows(rho.matrix());
    if (rho.has_subsystems()) out["subsystem_dims"] = rho.subsystem_dims();
    return out.dump(2);
}

std::string basis_to_json(const OrthonormalBasis& B) { return basis_object(B).dump(2); }

std::string kd_to_json(const KDDistribution& kd, const OrthonormalBasis& A,
                       const OrthonormalBasis& B) {
    const FunctionalReport f = functionals(kd);
    json out;
    out["dim"] = kd.dim();
    out["table"] = matrix_to_rows(kd.table());
    out["incoherent_basis"] = basis_object(A);
    out["second_basis"] = basis_object(B);
    out["functionals"] = {{"ncl", f.ncl}, {"neg", f.neg}, {"nre", f.nre}};
    out["min_overlap"] = min_overlap(A, B);
    return out.dump(2);
}

std::string report_to_json(const OptimizationReport& r) {
    json out;
    out["value"] = r.value;
    out["best_params"] = params_object(r.best_params);
    out["best_basis"] = basis_object(r.best_basis);
    out["converged"] = r.converged;
    out["evaluations"] = r.evaluations;
    out["per_start_values"] = r.per_start_values;
    return out.dump(2);
}

std::string bound_report_to_json(const BoundReport& r) {
    json out;
    out["c_value"] = r.c_value;
    out["l1"] = r.l1;
    out["measurement_uncertainty"] = r.measurement_uncertainty;
    out["purity_bound"] = r.purity_bound;
    out["dim_bound"] = r.dim_bound;
    out["slack"] = r.slack;
    out["all_satisfied"] = r.all_satisfied;
    return out.dump(2);
}

std::string format_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << content;
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace kdcoh
