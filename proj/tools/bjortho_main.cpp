// bjortho: check | arcs | smooth | witness | numrange | bhatia-semrl
//
// Reads a JSON problem description, dispatches to the library and prints a
// deterministic single-line JSON result envelope. Exit codes: 0 success,
// 2 input/schema error, 3 structural violation (a numerical result that
// contradicts a guaranteed structure).

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bjortho/bjortho.hpp"
#include "bjortho/problem_io.hpp"

namespace {

using namespace bjortho;

struct CommandIo {
  std::string problem_path;
  std::string csv_path;
  double tol = -1.0;  // negative: use the command default
  std::size_t resolution = 720;
  std::size_t samples = 2000;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool timing = false;
};

double effective_tol(const CommandIo& io, double fallback) {
  return io.tol >= 0.0 ? io.tol : fallback;
}

const NormSpec& require_space(const Problem& p) {
  if (!p.space) throw ProblemError("problem: missing \"space\"");
  return *p.space;
}

const CVector& require_vector(const std::optional<CVector>& v, const char* name,
                              const NormSpec& space) {
  if (!v) throw ProblemError(std::string("problem: missing \"") + name + "\"");
  if (v->size() != space.dim()) {
    throw ProblemError(std::string(name) + ": expected " + std::to_string(space.dim()) +
                       " entries for this space, got " + std::to_string(v->size()));
  }
  return *v;
}

LinearOperator require_matrix(const Problem& p, const std::optional<CVector>& e, const char* name) {
  const NormSpec& space = require_space(p);
  if (space.kind() != NormSpec::Kind::hilbert) {
    throw ProblemError("matrix commands need {\"kind\":\"hilbert\",\"dim\":n} as the space");
  }
  if (!e) throw ProblemError(std::string("problem: missing \"") + name + "\"");
  std::size_t n = space.dim();
  if (e->size() != n * n) {
    throw ProblemError(std::string(name) + ": expected " + std::to_string(n * n) +
                       " row-major entries, got " + std::to_string(e->size()));
  }
  return LinearOperator::hilbert_map(n, *e);
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ProblemError("cannot write file: " + path);
  out << bytes;
}

std::string run_check(const Problem& p, const CommandIo& io, JsonObject& tolerances) {
  const NormSpec& space = require_space(p);
  const CVector& x = require_vector(p.x, "x", space);
  const CVector& y = require_vector(p.y, "y", space);
  double tol = effective_tol(io, 1e-8);
  tolerances.num("orthogonality", tol);
  JsonObject r;
  if (p.gamma) {
    Direction g = parse_direction(*p.gamma, "gamma");
    OrthogonalityVerdict v = is_dir_orthogonal(space, x, y, g, tol);
    r.str("mode", "directional");
    r.field("gamma", json_complex(g.unit()));
    r.boolean("orthogonal", v.orthogonal);
    if (v.degenerate) r.boolean("degenerate", true);
    r.num("min_value", v.min_value);
    r.num("reference_norm", v.reference_norm);
    r.num("t_star", v.t_star);
  } else {
    OrthogonalityVerdict v = is_bj_orthogonal(space, x, y, tol);
    r.str("mode", "bj");
    r.boolean("orthogonal", v.orthogonal);
    if (v.degenerate) r.boolean("degenerate", true);
    r.num("min_value", v.min_value);
    r.num("reference_norm", v.reference_norm);
    r.field("lambda_star", json_complex(v.lambda_star));
  }
  return r.str();
}

std::string run_arcs(const Problem& p, const CommandIo& io, JsonObject& tolerances) {
  const NormSpec& space = require_space(p);
  const CVector& x = require_vector(p.x, "x", space);
  const CVector& y = require_vector(p.y, "y", space);
  DirectionSetOptions opts;
  opts.tol = effective_tol(io, 1e-8);
  opts.resolution = io.resolution;
  tolerances.num("orthogonality", opts.tol);
  tolerances.num("angular", opts.angular_tol);
  tolerances.num("resolution", static_cast<double>(opts.resolution));
  ArcSet arcs = direction_set(space, x, y, opts);
  if (!io.csv_path.empty()) {
    std::string csv = "theta,is_orthogonal\n";
    for (std::size_t k = 0; k < io.resolution; ++k) {
      double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(io.resolution);
      bool member = arc_membership(arcs, Direction::from_angle(theta));
      csv += json_number(theta) + "," + (member ? "1" : "0") + "\n";
    }
    write_file(io.csv_path, csv);
  }
  return to_json(arcs);
}

std::string run_smooth(const Problem& p, const CommandIo&, JsonObject&) {
  const NormSpec& space = require_space(p);
  const CVector& x = require_vector(p.x, "x", space);
  JsonObject r;
  r.boolean("smooth", is_smooth_point(space, x));
  return r.str();
}

std::string run_witness(const Problem& p, const CommandIo& io, JsonObject& tolerances) {
  const NormSpec& space = require_space(p);
  const CVector& x = require_vector(p.x, "x", space);
  const CVector& y = require_vector(p.y, "y", space);
  if (!p.mu) throw ProblemError("problem: missing \"mu\" (unit-modulus [re, im])");
  Direction mu = parse_direction(*p.mu, "mu");
  double tol = effective_tol(io, 1e-8);
  tolerances.num("orthogonality", tol);
  std::optional<OrthogonalityPair> w = witness(space, x, y, mu, tol);
  JsonObject r;
  r.boolean("found", w.has_value());
  r.field("mu", json_complex(mu.unit()));
  if (w) {
    r.field("functional", json_cvector(w->functional.coefficients));
    JsonObject res;
    res.num("action", w->residual_action);
    res.num("re_y", w->residual_re_y);
    res.num("dual", w->residual_dual);
    r.field("residuals", res.str());
  }
  return r.str();
}

std::string run_numrange(const Problem& p, const CommandIo& io, JsonObject& tolerances) {
  LinearOperator A = require_matrix(p, p.a_entries, "A");
  tolerances.num("samples", static_cast<double>(io.samples));
  NumericalRangeSample sample = [&] {
    if (p.t_entries) {
      LinearOperator T = require_matrix(p, p.t_entries, "T");
      NormAttainmentSet att = norm_attainment_set(T);
      return restricted_numerical_range(T, A, att.vectors, io.samples, io.seed);
    }
    return classical_numerical_range(A, io.samples, io.seed);
  }();

  // canonical (sorted) point order so output bytes never depend on
  // evaluation order
  std::vector<std::size_t> order(sample.points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    Complex pa = sample.points[a], pb = sample.points[b];
    if (pa.real() != pb.real()) return pa.real() < pb.real();
    return pa.imag() < pb.imag();
  });

  if (!io.csv_path.empty()) {
    std::string csv = "re,im\n";
    for (std::size_t i : order) {
      csv += json_number(sample.points[i].real()) + "," + json_number(sample.points[i].imag()) + "\n";
    }
    write_file(io.csv_path, csv);
  }
  JsonArray pts;
  for (std::size_t i : order) pts.add(json_complex(sample.points[i]));
  JsonObject r;
  r.num("isometry_constant", sample.isometry_constant);
  r.num("n_points", static_cast<double>(sample.points.size()));
  r.field("points", pts.str());
  return r.str();
}

std::string run_bhatia(const Problem& p, const CommandIo& io, JsonObject& tolerances) {
  LinearOperator T = require_matrix(p, p.t_entries, "T");
  LinearOperator A = require_matrix(p, p.a_entries, "A");
  double tol = effective_tol(io, 1e-7);
  tolerances.num("orthogonality", tol);
  BhatiaSemrlResult res = bhatia_semrl_check(T, A, tol);
  JsonObject r;
  r.boolean("orthogonal", res.via_operator_norm);
  r.boolean("via_operator_norm", res.via_operator_norm);
  r.boolean("via_numerical_range", res.via_numerical_range);
  r.num("operator_norm", res.operator_norm_value);
  r.num("min_plane_value", res.min_plane_value);
  if (res.witness) {
    r.field("witness", json_cvector(*res.witness));
    r.field("witness_inner_product", json_complex(res.witness_inner_product));
  }
  return r.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birkhoff-James / directional orthogonality toolkit"};
  app.require_subcommand(1);

  CommandIo io;
  auto add_common = [&](CLI::App* sub, bool with_resolution, bool with_samples, bool seed_required) {
    sub->add_option("problem", io.problem_path, "problem description (JSON)")->required();
    sub->add_option("--tol", io.tol, "orthogonality tolerance (relative)");
    sub->add_option("--csv", io.csv_path, "also write CSV plot data to this path");
    if (with_resolution) sub->add_option("--resolution", io.resolution, "scan resolution (angles)");
    if (with_samples) sub->add_option("--samples", io.samples, "number of random samples");
    CLI::Option* seed = sub->add_option("--seed", io.seed, "RNG seed (pins sampled output)");
    if (seed_required) seed->required();
    sub->add_flag("--timing", io.timing, "include wall time in the envelope");
    return sub;
  };

  CLI::App* c_check = add_common(app.add_subcommand("check", "orthogonality predicates"), false, false, false);
  CLI::App* c_arcs = add_common(app.add_subcommand("arcs", "orthogonality direction set"), true, false, false);
  CLI::App* c_smooth = add_common(app.add_subcommand("smooth", "smooth-point decision"), false, false, false);
  CLI::App* c_witness = add_common(app.add_subcommand("witness", "norming-functional witness"), false, false, false);
  CLI::App* c_numrange = add_common(app.add_subcommand("numrange", "numerical range sampling"), false, true, true);
  CLI::App* c_bhatia = add_common(app.add_subcommand("bhatia-semrl", "two-route operator orthogonality"), false, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string command;
  std::string (*runner)(const Problem&, const CommandIo&, JsonObject&) = nullptr;
  if (app.got_subcommand(c_check)) { command = "check"; runner = run_check; }
  else if (app.got_subcommand(c_arcs)) { command = "arcs"; runner = run_arcs; }
  else if (app.got_subcommand(c_smooth)) { command = "smooth"; runner = run_smooth; }
  else if (app.got_subcommand(c_witness)) { command = "witness"; runner = run_witness; }
  else if (app.got_subcommand(c_numrange)) { command = "numrange"; io.seed_given = true; runner = run_numrange; }
  else if (app.got_subcommand(c_bhatia)) { command = "bhatia-semrl"; runner = run_bhatia; }

  try {
    Problem problem = load_problem_file(io.problem_path);
    JsonObject tolerances;
    auto t0 = std::chrono::steady_clock::now();
    std::string result = runner(problem, io, tolerances);
    auto t1 = std::chrono::steady_clock::now();

    JsonObject envelope;
    envelope.str("command", command);
    envelope.str("library_version", kLibraryVersion);
    envelope.str("inputs_digest", fnv1a_digest(problem.raw));
    envelope.field("tolerances", tolerances.str());
    if (io.seed_given) envelope.num("seed", static_cast<double>(io.seed));
    envelope.field("result", result);
    if (io.timing) {
      envelope.num("wall_time_ms",
                   std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    std::cout << envelope.str() << "\n";
    return 0;
  } catch (const ProblemError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const StructuralViolation& e) {
    std::cerr << "structural violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
