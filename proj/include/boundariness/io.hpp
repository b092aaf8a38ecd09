#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "boundariness/channels.hpp"
#include "boundariness/convex.hpp"
#include "boundariness/discrimination.hpp"
#include "boundariness/linalg.hpp"
#include "boundariness/observables.hpp"
#include "boundariness/sampling.hpp"
#include "boundariness/states.hpp"

// JSON readers throw InputError with a JSON-pointer style location, e.g.
// "/effects/1/entries/0/2: expected [re, im]".
namespace boundariness::io {

using json = nlohmann::ordered_json;

json load_json_file(const std::string& path);

/// {"dim": d, "entries": [[[re, im], ...], ...]}; real numbers are accepted
/// as entries. "dim" is optional for rectangular (Kraus) matrices.
linalg::Matrix parse_matrix(const json& j, const std::string& where = "");
linalg::HermitianMatrix parse_hermitian(const json& j, const std::string& where = "");
json matrix_to_json(const linalg::Matrix& m);
json hermitian_to_json(const linalg::HermitianMatrix& m);

/// [[re, im], ...] or {"entries": [[re, im], ...]}.
linalg::CVector parse_vector(const json& j, const std::string& where = "");
json vector_to_json(std::span<const linalg::Complex> v);

/// {"kind": "state", "dim": d, "entries": ...}
states::DensityMatrix parse_state(const json& j);
/// {"kind": "povm", "dim": d, "effects": [matrix, ...]}
observables::Povm parse_povm(const json& j);
/// {"kind": "choi", "d_in", "d_out", "matrix"} or {"kind": "kraus", "ops": [matrix, ...]}
channels::ChoiOperator parse_channel(const json& j);
/// {"ambient_dim": n, "vertices": [[...], ...]}
convex::Polytope parse_polytope(const json& j);

/// {"seed", "n_samples", "psd_tol", "bisect_depth", "grid": {name: {"min", "max", "steps", "extra"}}};
/// missing keys keep their defaults. Validated before returning.
sampling::ScanConfig parse_config(const json& j);
json config_to_json(const sampling::ScanConfig& cfg);

json certificate_to_json(const convex::DecompositionCertificate& c);
json report_to_json(const discrimination::DiscriminationReport& r);

/// 12 significant digits, '.' separator.
std::string format_number(double v);
/// "# boundariness-lab v1, cmd=<cmd>, seed=<seed>"
std::string csv_header_comment(std::string_view cmd, const sampling::ScanConfig& cfg);

}  // namespace boundariness::io
