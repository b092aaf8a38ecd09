#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "boundariness/channels.hpp"
#include "boundariness/convex.hpp"
#include "boundariness/discrimination.hpp"
#include "boundariness/errors.hpp"
#include "boundariness/io.hpp"
#include "boundariness/observables.hpp"
#include "boundariness/states.hpp"

namespace {

using namespace boundariness;
using io::json;

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitClaim = 4;

constexpr std::size_t kPovmRestarts = 64;
constexpr std::size_t kDiamondRestarts = 32;

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  sampling::ScanConfig cfg;
};

void resolve(Globals& g) {
  if (!g.config_path.empty()) g.cfg = io::parse_config(io::load_json_file(g.config_path));
  if (g.seed) g.cfg.seed = *g.seed;
  g.cfg.validate();
}

json header(const char* cmd, const Globals& g) { return {{"cmd", cmd}, {"config", io::config_to_json(g.cfg)}}; }

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot open for writing");
  return out;
}

json matrix_certificate(double t, const linalg::HermitianMatrix& x, const linalg::HermitianMatrix& z, double residual) {
  return {{"t", t}, {"x", io::hermitian_to_json(x)}, {"z", io::hermitian_to_json(z)}, {"residual", residual}};
}

json povm_json(const observables::Povm& p) {
  json effects = json::array();
  for (const auto& e : p.effects()) effects.push_back(io::hermitian_to_json(e));
  return effects;
}

void cmd_state(const Globals& g, const std::string& input) {
  const states::DensityMatrix rho = io::parse_state(io::load_json_file(input));
  const states::StateBoundariness r = states::state_boundariness(rho);
  json out = header("state", g);
  out["b"] = r.b;
  out["lower_bound_lambda_min"] = r.b;
  out["boundary"] = states::state_is_boundary(rho, g.cfg.psd_tol);
  out["method"] = "closed-form";
  out["certificate"] = matrix_certificate(r.certificate.t, r.certificate.x, r.certificate.z, r.certificate.residual);
  print(out);
}

void cmd_povm(const Globals& g, const std::string& input) {
  const observables::Povm c = io::parse_povm(io::load_json_file(input));
  const observables::PovmBoundariness r = observables::povm_boundariness(c);
  json out = header("povm", g);
  out["b"] = r.b;
  out["lower_bound_lambda_min"] = r.b;
  out["boundary"] = observables::povm_is_boundary(c, g.cfg.psd_tol);
  out["method"] = "closed-form";
  out["certificate"] = {{"t", r.b},
                        {"effect_index", r.k},
                        {"x", povm_json(r.extremal)},
                        {"z", povm_json(r.boundary)},
                        {"residual", r.residual}};
  print(out);
}

void cmd_channel(const Globals& g, const std::string& input, std::size_t samples, bool rank2) {
  const channels::ChoiOperator e = io::parse_channel(io::load_json_file(input));
  const std::size_t n = samples > 0 ? samples : g.cfg.n_samples;
  const channels::ChannelScanResult r =
      channels::channel_scan_boundariness(e, n, rank2, g.cfg.seed, g.cfg.psd_tol, g.cfg.bisect_depth);
  const double t = r.b_upper;
  const linalg::HermitianMatrix z = (1.0 / (1.0 - t)) * (e.matrix() - t * r.worst_f.matrix());
  json out = header("channel", g);
  out["b"] = r.b_upper;
  out["lower_bound_lambda_min"] = r.lambda_min;
  out["boundary"] = channels::channel_is_boundary(e, g.cfg.psd_tol);
  out["method"] = "scan-upper-bound";
  out["samples"] = rank2 ? 2 * n : n;
  out["rank2_samples"] = rank2;
  out["uncertainty"] = {{"resolution", r.resolution}, {"sampling_gap", r.sampling_gap}, {"total", r.uncertainty}};
  out["certificate"] = {{"t", t},
                        {"sample_index", r.worst_index},
                        {"x", io::hermitian_to_json(r.worst_f.matrix())},
                        {"z", io::hermitian_to_json(z)},
                        {"z_min_eigenvalue", linalg::min_eigenvalue(z)}};
  print(out);
}

void cmd_erasure_study(const Globals& g, double p_min, double p_max, std::size_t steps, const std::string& path) {
  if (!(p_min > 0.0 && p_min < p_max && p_max < 0.5))
    throw InputError(fmt::format("erasure-study: need 0 < p-min < p-max < 1/2, got [{}, {}]", p_min, p_max));
  if (steps < 2) throw InputError("erasure-study: --steps must be at least 2");
  std::vector<double> ps, b, lam, scan;
  for (std::size_t i = 0; i < steps; ++i) {
    const double p = p_min + (p_max - p_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
    const channels::ChoiOperator e = channels::erasure_choi(p);
    const channels::ChannelScanResult r =
        channels::channel_scan_boundariness(e, g.cfg.n_samples, false, g.cfg.seed, g.cfg.psd_tol, g.cfg.bisect_depth);
    ps.push_back(p);
    b.push_back(channels::erasure_boundariness(p));
    lam.push_back(r.lambda_min);
    scan.push_back(r.b_upper);
  }
  std::ostringstream csv;
  csv << io::csv_header_comment("erasure-study", g.cfg) << '\n' << "p,b,lambda_min,scan_b_upper,gap\n";
  std::size_t best = 0, nearest = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double gap = b[i] - lam[i];
    csv << fmt::format("{},{},{},{},{}\n", io::format_number(ps[i]), io::format_number(b[i]),
                       io::format_number(lam[i]), io::format_number(scan[i]), io::format_number(gap));
    if (gap > b[best] - lam[best]) best = i;
    if (std::abs(ps[i] - 0.25) < std::abs(ps[nearest] - 0.25)) nearest = i;
  }
  open_out(path) << csv.str();
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (std::abs(scan[i] - b[i]) > 1e-3)
      throw ClaimViolation(fmt::format("erasure-study: scan {} differs from p(1-p) = {} at p = {}", scan[i], b[i], ps[i]));
  if (std::abs((b[best] - lam[best]) - (b[nearest] - lam[nearest])) > 1e-12)
    throw ClaimViolation(fmt::format("erasure-study: gap is maximal at p = {}, not near 1/4", ps[best]));
}

void cmd_rank2_scan(const Globals& g, double p, const std::string& grid_path, const std::string& path) {
  sampling::ScanConfig cfg = g.cfg;
  if (!grid_path.empty()) {
    json j = io::load_json_file(grid_path);
    if (!j.contains("grid")) j = json{{"grid", j}};
    for (auto& [name, axis] : io::parse_config(json{{"grid", j["grid"]}}).grid) cfg.grid[name] = axis;
  }
  const channels::Rank2Grid grid = channels::Rank2Grid::from_config(cfg);
  std::ostringstream csv;
  csv << io::csv_header_comment("rank2-scan", cfg) << '\n';
  std::optional<ClaimViolation> breach;
  channels::Rank2ScanResult r{};
  try {
    r = channels::rank2_scan(p, grid, &csv);
  } catch (const ClaimViolation& e) {
    breach = e;
  }
  open_out(path) << csv.str();
  if (breach) throw *breach;
  json out = header("rank2-scan", g);
  out["config"] = io::config_to_json(cfg);
  out["p"] = p;
  out["n_points"] = r.n_points;
  out["min_lambda_G"] = r.min_lambda_G;
  out["argmin"] = {{"q", r.argmin.q},         {"s", r.argmin.s},         {"alpha", r.argmin.alpha},
                   {"beta", r.argmin.beta}, {"gamma", r.argmin.gamma}, {"theta", r.argmin.theta}};
  print(out);
}

void cmd_contour(const Globals& g, const std::string& shape, std::size_t resolution, const std::string& path) {
  if (resolution < 8) throw InputError("contour: --resolution must be at least 8");
  std::optional<convex::Polytope> poly;
  double lo = 0.0, hi = 1.0;
  if (shape == "triangle") {
    poly.emplace(2, std::vector<convex::Vector>{{0.0, 0.0}, {1.0, 0.0}, {0.5, 1.0}});
  } else if (shape == "square") {
    poly.emplace(2, std::vector<convex::Vector>{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
  } else if (shape == "disk") {
    lo = -1.0;
  } else {
    throw InputError("contour: --shape must be triangle, square or disk, got \"" + shape + "\"");
  }
  const convex::ConvexOracleSet disk = convex::disk_oracle(1.0);
  convex::ScanOptions opts;
  opts.n_samples = g.cfg.n_samples;
  opts.seed = g.cfg.seed;
  opts.bisect_depth = g.cfg.bisect_depth;

  std::vector<convex::Vector> pts;
  for (std::size_t iy = 0; iy < resolution; ++iy)
    for (std::size_t ix = 0; ix < resolution; ++ix) {
      const double step = (hi - lo) / static_cast<double>(resolution - 1);
      const convex::Vector y = {lo + step * static_cast<double>(ix), lo + step * static_cast<double>(iy)};
      const bool inside = poly ? poly->contains(y) : y[0] * y[0] + y[1] * y[1] <= 1.0 + 1e-12;
      if (inside) pts.push_back(y);
    }
  std::vector<double> b(pts.size());
  sampling::parallel_for(pts.size(), [&](std::size_t i) {
    b[i] = poly ? convex::boundariness_polytope(*poly, pts[i]).b : convex::remark1_scan(disk, pts[i], opts).b_upper;
  });
  std::ostringstream csv;
  csv << io::csv_header_comment("contour", g.cfg) << '\n' << "x,y,b\n";
  for (std::size_t i = 0; i < pts.size(); ++i)
    csv << fmt::format("{},{},{}\n", io::format_number(pts[i][0]), io::format_number(pts[i][1]),
                       io::format_number(b[i]));
  open_out(path) << csv.str();
}

std::vector<linalg::CVector> diamond_seeds(const channels::ChoiOperator& e) {
  // Output populations of a replacement channel give its saturating input.
  const linalg::HermitianMatrix out = linalg::partial_trace_second(e.matrix(), e.d_in());
  const double p = out(0, 0).real();
  if (p > 1e-12 && p < 1.0 - 1e-12) return {discrimination::erasure_diamond_seed(p)};
  return {};
}

void cmd_discriminate(const Globals& g, const std::string& kind, const std::string& a_path, const std::string& b_path) {
  const json ja = io::load_json_file(a_path);
  const json jb = io::load_json_file(b_path);
  json out = header("discriminate", g);
  out["kind"] = kind;
  if (kind == "state") {
    out["report"] = io::report_to_json(discrimination::state_discrimination(io::parse_state(ja), io::parse_state(jb)));
  } else if (kind == "povm") {
    out["report"] = io::report_to_json(
        discrimination::observable_discrimination(io::parse_povm(ja), io::parse_povm(jb), kPovmRestarts, g.cfg.seed));
  } else if (kind == "channel") {
    const channels::ChoiOperator e = io::parse_channel(ja);
    const channels::ChoiOperator f = io::parse_channel(jb);
    std::vector<linalg::CVector> seeds = diamond_seeds(e);
    for (auto& s : diamond_seeds(f)) seeds.push_back(std::move(s));
    const double lower = discrimination::channel_diamond_lower_bound(e, f, kDiamondRestarts, g.cfg.seed, seeds);
    // Only lambda_min is certified for channels, and b >= lambda_min.
    const double bound =
        std::max(std::max(0.0, linalg::min_eigenvalue(e.matrix())), std::max(0.0, linalg::min_eigenvalue(f.matrix())));
    discrimination::DiscriminationReport r;
    r.norm = lower;
    r.norm_is_lower_bound = true;
    r.p_error = discrimination::p_error_from_norm(lower);
    r.boundariness_bound = bound;
    r.saturated = discrimination::tightness_check(e, bound, lower, 1e-9);
    if (r.p_error < 0.5 * bound - 1e-9)
      throw ClaimViolation(fmt::format("p_error {:.12g} below half of lambda_min {:.12g}", r.p_error, bound));
    out["report"] = io::report_to_json(r);
  } else {
    throw InputError("discriminate: --kind must be state, povm or channel, got \"" + kind + "\"");
  }
  print(out);
}

void cmd_prop6_witness(const Globals& g, const std::string& input, const std::string& phi_path) {
  const channels::ChoiOperator e = io::parse_channel(io::load_json_file(input));
  const linalg::CVector phi = phi_path.empty() ? channels::maximally_entangled(e.d_in())
                                               : io::parse_vector(io::load_json_file(phi_path));
  const double t_unitary = channels::prop6_unitary_witness(e, phi);
  const std::size_t dim = e.d_in() * e.d_out();
  const std::vector<double> flat(dim, 1.0 / static_cast<double>(dim));
  const channels::ChoiOperator depolarizing(e.d_in(), e.d_out(), linalg::HermitianMatrix::diagonal(flat));
  const double t_depol = channels::prop6_nonunitary_witness(e, depolarizing);
  json out = header("prop6-witness", g);
  out["lambda_min"] = linalg::min_eigenvalue(e.matrix());
  out["phi"] = io::vector_to_json(phi);
  out["t_unitary"] = t_unitary;
  out["t_depolarizing"] = t_depol;
  out["psd_verified"] = true;
  print(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundariness of states, observables, channels and convex sets"};
  app.require_subcommand(1);
  Globals g;
  std::uint64_t seed = 0;
  app.add_option("--config", g.config_path, "JSON scan configuration")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "Override the configured seed");

  std::string input, output, phi, grid, shape, kind, a_path, b_path;
  std::size_t samples = 0, steps = 0, resolution = 0;
  bool rank2 = false;
  double p_min = 0.0, p_max = 0.0, p = 0.0;

  auto* state = app.add_subcommand("state", "Boundariness of a density matrix");
  state->add_option("-i", input, "State JSON")->required();
  auto* povm = app.add_subcommand("povm", "Boundariness of a POVM");
  povm->add_option("-i", input, "POVM JSON")->required();
  auto* channel = app.add_subcommand("channel", "Scanned upper bound on channel boundariness");
  channel->add_option("-i", input, "Channel JSON")->required();
  channel->add_option("--samples", samples, "Number of unitary samples (default: config n_samples)");
  channel->add_flag("--rank2", rank2, "Also sample rank-2 extremal qubit channels");
  auto* erasure = app.add_subcommand("erasure-study", "Erasure channel boundariness versus lambda_min");
  erasure->add_option("--p-min", p_min)->required();
  erasure->add_option("--p-max", p_max)->required();
  erasure->add_option("--steps", steps)->required();
  erasure->add_option("-o", output)->required();
  auto* rank2_scan = app.add_subcommand("rank2-scan", "lambda_G over rank-2 extremal channels");
  rank2_scan->add_option("--p", p)->required();
  rank2_scan->add_option("--grid", grid, "JSON grid axes")->check(CLI::ExistingFile);
  rank2_scan->add_option("-o", output)->required();
  auto* contour = app.add_subcommand("contour", "Boundariness over a planar shape");
  contour->add_option("--shape", shape, "triangle, square or disk")->required();
  contour->add_option("--resolution", resolution)->required();
  contour->add_option("-o", output)->required();
  auto* discriminate = app.add_subcommand("discriminate", "Minimum-error discrimination report");
  discriminate->add_option("--kind", kind, "state, povm or channel")->required();
  discriminate->add_option("-a", a_path)->required();
  discriminate->add_option("-b", b_path)->required();
  auto* witness = app.add_subcommand("prop6-witness", "Decompositions beating lambda_min for a channel");
  witness->add_option("-i", input, "Channel JSON")->required();
  witness->add_option("--phi", phi, "Maximally entangled vector JSON (default: standard one)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*seed_opt) g.seed = seed;
    resolve(g);
    if (*state) cmd_state(g, input);
    else if (*povm) cmd_povm(g, input);
    else if (*channel) cmd_channel(g, input, samples, rank2);
    else if (*erasure) cmd_erasure_study(g, p_min, p_max, steps, output);
    else if (*rank2_scan) cmd_rank2_scan(g, p, grid, output);
    else if (*contour) cmd_contour(g, shape, resolution, output);
    else if (*discriminate) cmd_discriminate(g, kind, a_path, b_path);
    else if (*witness) cmd_prop6_witness(g, input, phi);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ClaimViolation& e) {
    std::cerr << "claim violated: " << e.what() << '\n';
    return kExitClaim;
  }
  return 0;
}
