#pragma once

#include <string>

#include "kdcoh/bounds.hpp"
#include "kdcoh/channels.hpp"
#include "kdcoh/coherence.hpp"
#include "kdcoh/kdq.hpp"
#include "kdcoh/qstate.hpp"
#include "kdcoh/susceptibility.hpp"

namespace kdcoh {

// JSON loaders. All failures throw std::runtime_error whose message is
// anchored as "<path>: line <n>: <what>" — parse errors at the offending
// line, semantic errors at the line of the responsible key.
//
// State files:    {"dim": d, "matrix": [[[re,im],...],...] (row-major),
//                  "subsystem_dims": [d1,...] (optional)}
// Basis files:    {"dim": d, "columns": [[ [re,im] x d ] x d]} (columns[j][i]
//                  is component i of basis vector j)
// Channel files:  {"probs": [...], "perms": [[...],...]}
DensityOperator load_state(const std::string& path);
OrthonormalBasis load_basis(const std::string& path);
CIPSpec load_cip_spec(const std::string& path);

// Susceptibility problem: a state plus either an explicit derivative or a
// Hamiltonian generator (drho = -i[H, rho0]), with an optional observable.
// {"dim": d, "rho0": matrix, "generator"|"drho": matrix,
//  "observable": matrix (optional)}
struct SusceptibilityInput {
    DensityOperator rho0;
    Matrix drho;
    bool from_generator = false;
    Matrix generator;      // set when from_generator
    bool has_observable = false;
    Matrix observable;     // set when has_observable
};
SusceptibilityInput load_susceptibility_input(const std::string& path);

// Serializers matching the loader schemas (loaders invert them exactly).
std::string state_to_json(const DensityOperator& rho);
std::string basis_to_json(const OrthonormalBasis& B);
std::string kd_to_json(const KDDistribution& kd, const OrthonormalBasis& A,
                       const OrthonormalBasis& B);
std::string report_to_json(const OptimizationReport& r);
std::string bound_report_to_json(const BoundReport& r);

// Fixed-width scientific-ish formatting used by all CSV output: `digits`
// significant digits, '.' decimal separator.
std::string format_sig(double v, int digits = 9);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace kdcoh
