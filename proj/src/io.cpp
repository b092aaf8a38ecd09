#include "boundariness/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "boundariness/errors.hpp"

namespace boundariness::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError((where.empty() ? std::string("/") : where) + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing key \"") + key + "\"");
  return *it;
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "non-finite number");
  return v;
}

std::size_t as_size(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

linalg::Complex as_complex(const json& j, const std::string& where) {
  if (j.is_number()) return {as_number(j, where), 0.0};
  if (!j.is_array() || j.size() != 2) fail(where, "expected [re, im]");
  return {as_number(j[0], where + "/0"), as_number(j[1], where + "/1")};
}

void check_kind(const json& j, const char* kind) {
  const json& k = field(j, "kind", "");
  if (!k.is_string() || k.get<std::string>() != kind)
    fail("/kind", fmt::format("expected \"{}\", got {}", kind, k.dump()));
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(fmt::format("{}: malformed JSON at byte {}: {}", path, e.byte, e.what()));
  }
}

linalg::Matrix parse_matrix(const json& j, const std::string& where) {
  const json& entries = field(j, "entries", where);
  const std::string ew = where + "/entries";
  if (!entries.is_array() || entries.empty()) fail(ew, "expected a non-empty array of rows");
  const std::size_t rows = entries.size();
  if (!entries[0].is_array() || entries[0].empty()) fail(ew + "/0", "expected a non-empty row");
  const std::size_t cols = entries[0].size();
  if (j.contains("dim")) {
    const std::size_t d = as_size(j["dim"], where + "/dim");
    if (d != rows || d != cols) fail(where + "/dim", fmt::format("dim {} does not match {}x{} entries", d, rows, cols));
  }
  linalg::Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rw = fmt::format("{}/{}", ew, r);
    if (!entries[r].is_array() || entries[r].size() != cols) fail(rw, fmt::format("expected a row of length {}", cols));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = as_complex(entries[r][c], fmt::format("{}/{}", rw, c));
  }
  return m;
}

linalg::HermitianMatrix parse_hermitian(const json& j, const std::string& where) {
  const linalg::Matrix m = parse_matrix(j, where);
  if (m.rows() != m.cols()) fail(where, fmt::format("expected a square matrix, got {}x{}", m.rows(), m.cols()));
  try {
    return linalg::HermitianMatrix(m);
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

json matrix_to_json(const linalg::Matrix& m) {
  json entries = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    entries.push_back(std::move(row));
  }
  json out = json::object();
  if (m.rows() == m.cols()) out["dim"] = m.rows();
  out["entries"] = std::move(entries);
  return out;
}

json hermitian_to_json(const linalg::HermitianMatrix& m) { return matrix_to_json(m.matrix()); }

linalg::CVector parse_vector(const json& j, const std::string& where) {
  const json* arr = &j;
  std::string w = where;
  if (j.is_object()) {
    arr = &field(j, "entries", where);
    w += "/entries";
  }
  if (!arr->is_array() || arr->empty()) fail(w, "expected a non-empty array of [re, im]");
  linalg::CVector v;
  for (std::size_t i = 0; i < arr->size(); ++i) v.push_back(as_complex((*arr)[i], fmt::format("{}/{}", w, i)));
  return v;
}

json vector_to_json(std::span<const linalg::Complex> v) {
  json out = json::array();
  for (const auto& z : v) out.push_back({z.real(), z.imag()});
  return out;
}

states::DensityMatrix parse_state(const json& j) {
  check_kind(j, "state");
  const linalg::HermitianMatrix m = parse_hermitian(j, "");
  try {
    return states::DensityMatrix(m);
  } catch (const InputError& e) {
    fail("", e.what());
  }
}

observables::Povm parse_povm(const json& j) {
  check_kind(j, "povm");
  const std::size_t d = as_size(field(j, "dim", ""), "/dim");
  const json& effects = field(j, "effects", "");
  if (!effects.is_array()) fail("/effects", "expected an array of matrices");
  std::vector<linalg::HermitianMatrix> out;
  for (std::size_t k = 0; k < effects.size(); ++k) {
    const std::string w = fmt::format("/effects/{}", k);
    linalg::HermitianMatrix e = parse_hermitian(effects[k], w);
    if (e.dim() != d) fail(w, fmt::format("dimension {} differs from dim {}", e.dim(), d));
    out.push_back(std::move(e));
  }
  try {
    return observables::Povm(std::move(out));
  } catch (const InputError& e) {
    fail("/effects", e.what());
  }
}

channels::ChoiOperator parse_channel(const json& j) {
  const json& kind = field(j, "kind", "");
  if (!kind.is_string()) fail("/kind", "expected a string");
  const std::string k = kind.get<std::string>();
  try {
    if (k == "choi") {
      const std::size_t d_in = as_size(field(j, "d_in", ""), "/d_in");
      const std::size_t d_out = as_size(field(j, "d_out", ""), "/d_out");
      return channels::ChoiOperator(d_in, d_out, parse_hermitian(field(j, "matrix", ""), "/matrix"));
    }
    if (k == "kraus") {
      const json& ops = field(j, "ops", "");
      if (!ops.is_array() || ops.empty()) fail("/ops", "expected a non-empty array of matrices");
      std::vector<linalg::Matrix> kraus;
      for (std::size_t n = 0; n < ops.size(); ++n) kraus.push_back(parse_matrix(ops[n], fmt::format("/ops/{}", n)));
      return channels::choi_from_kraus(kraus, kraus.front().cols(), kraus.front().rows());
    }
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (!msg.empty() && msg.front() == '/') throw;
    fail(k == "choi" ? "/matrix" : "/ops", msg);
  }
  fail("/kind", fmt::format("expected \"choi\" or \"kraus\", got \"{}\"", k));
}

convex::Polytope parse_polytope(const json& j) {
  const std::size_t n = as_size(field(j, "ambient_dim", ""), "/ambient_dim");
  const json& verts = field(j, "vertices", "");
  if (!verts.is_array() || verts.empty()) fail("/vertices", "expected a non-empty array of points");
  std::vector<convex::Vector> out;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::string w = fmt::format("/vertices/{}", i);
    if (!verts[i].is_array() || verts[i].size() != n) fail(w, fmt::format("expected {} coordinates", n));
    convex::Vector v;
    for (std::size_t c = 0; c < n; ++c) v.push_back(as_number(verts[i][c], fmt::format("{}/{}", w, c)));
    out.push_back(std::move(v));
  }
  try {
    return convex::Polytope(n, std::move(out));
  } catch (const InputError& e) {
    fail("/vertices", e.what());
  }
}

sampling::ScanConfig parse_config(const json& j) {
  if (!j.is_object()) fail("", "config must be an object");
  sampling::ScanConfig cfg;
  for (const auto& [key, value] : j.items()) {
    const std::string w = "/" + key;
    if (key == "seed") {
      if (!value.is_number_unsigned()) fail(w, "expected a non-negative integer");
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "n_samples") {
      cfg.n_samples = as_size(value, w);
    } else if (key == "psd_tol") {
      cfg.psd_tol = as_number(value, w);
    } else if (key == "bisect_depth") {
      if (!value.is_number_integer()) fail(w, "expected an integer");
      cfg.bisect_depth = value.get<int>();
    } else if (key == "grid") {
      if (!value.is_object()) fail(w, "expected an object of axes");
      for (const auto& [name, axis] : value.items()) {
        const std::string aw = w + "/" + name;
        sampling::GridAxis g;
        g.min = as_number(field(axis, "min", aw), aw + "/min");
        g.max = as_number(field(axis, "max", aw), aw + "/max");
        g.steps = as_size(field(axis, "steps", aw), aw + "/steps");
        if (axis.contains("extra")) {
          const json& ex = axis["extra"];
          if (!ex.is_array()) fail(aw + "/extra", "expected an array of numbers");
          for (std::size_t i = 0; i < ex.size(); ++i) g.extra.push_back(as_number(ex[i], fmt::format("{}/extra/{}", aw, i)));
        }
        cfg.grid[name] = std::move(g);
      }
    } else {
      fail(w, "unknown config key");
    }
  }
  try {
    cfg.validate();
  } catch (const InputError& e) {
    fail("", e.what());
  }
  return cfg;
}

json config_to_json(const sampling::ScanConfig& cfg) {
  json grid = json::object();
  for (const auto& [name, axis] : cfg.grid)
    grid[name] = {{"min", axis.min}, {"max", axis.max}, {"steps", axis.steps}, {"extra", axis.extra}};
  return {{"seed", cfg.seed},
          {"n_samples", cfg.n_samples},
          {"psd_tol", cfg.psd_tol},
          {"bisect_depth", cfg.bisect_depth},
          {"grid", std::move(grid)}};
}

json certificate_to_json(const convex::DecompositionCertificate& c) {
  return {{"t", c.t}, {"x", c.x}, {"z", c.z}, {"residual", c.residual}};
}

json report_to_json(const discrimination::DiscriminationReport& r) {
  return {{"norm", r.norm},
          {"norm_is_lower_bound", r.norm_is_lower_bound},
          {"p_error", r.p_error},
          {"boundariness_bound", r.boundariness_bound},
          {"saturated", r.saturated}};
}

std::string format_number(double v) { return fmt::format("{:.12g}", v); }

std::string csv_header_comment(std::string_view cmd, const sampling::ScanConfig& cfg) {
  return fmt::format("# boundariness-lab v1, cmd={}, seed={}, config={}", cmd, cfg.seed, config_to_json(cfg).dump());
}

}  // namespace boundariness::io
