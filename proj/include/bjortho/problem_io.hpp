#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bjortho/spaces.hpp"
#include "bjortho/types.hpp"

namespace bjortho {

/// Input-side failures (bad schema, missing fields, malformed numbers).
class ProblemError : public std::runtime_error {
 public:
  explicit ProblemError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Problem {
  std::optional<NormSpec> space;
  std::optional<CVector> x;
  std::optional<CVector> y;
  std::optional<Complex> gamma;
  std::optional<Complex> mu;
  std::optional<CVector> t_entries;
  std::optional<CVector> a_entries;
  std::string raw;  // original file bytes, for the inputs digest
};

namespace detail {

using nlohmann::json;

inline void expect_keys(const json& obj, std::initializer_list<const char*> allowed,
                        const char* ctx) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ProblemError(std::string(ctx) + ": unknown field \"" + it.key() + "\"");
  }
}

inline double parse_real(const json& j, const char* ctx) {
  if (!j.is_number()) throw ProblemError(std::string(ctx) + ": expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw ProblemError(std::string(ctx) + ": non-finite number");
  return v;
}

inline Complex parse_complex(const json& j, const char* ctx) {
  if (!j.is_array() || j.size() != 2) {
    throw ProblemError(std::string(ctx) + ": expected a [re, im] pair");
  }
  return Complex(parse_real(j[0], ctx), parse_real(j[1], ctx));
}

inline CVector parse_cvector(const json& j, const char* ctx) {
  if (!j.is_array() || j.empty()) throw ProblemError(std::string(ctx) + ": expected a non-empty array");
  CVector v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(parse_complex(e, ctx));
  return v;
}

inline NormSpec parse_space(const json& j) {
  if (!j.is_object()) throw ProblemError("space: expected an object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw ProblemError("space: missing kind");
  std::string kind = j["kind"].get<std::string>();
  auto parse_p = [&](const json& pj) -> double {
    if (pj.is_string()) {
      if (pj.get<std::string>() == "inf") return kInfiniteExponent;
      throw ProblemError("space.p: expected a number >= 1 or \"inf\"");
    }
    return parse_real(pj, "space.p");
  };
  try {
    if (kind == "lp") {
      expect_keys(j, {"kind", "p", "dim"}, "space");
      if (!j.contains("p") || !j.contains("dim")) throw ProblemError("space: lp needs p and dim");
      return NormSpec::lp(parse_p(j["p"]), j["dim"].get<std::size_t>());
    }
    if (kind == "weighted_lp") {
      expect_keys(j, {"kind", "p", "weights"}, "space");
      if (!j.contains("p") || !j.contains("weights") || !j["weights"].is_array()) {
        throw ProblemError("space: weighted_lp needs p and weights");
      }
      std::vector<double> w;
      for (const auto& e : j["weights"]) w.push_back(parse_real(e, "space.weights"));
      return NormSpec::weighted_lp(parse_p(j["p"]), std::move(w));
    }
    if (kind == "hilbert") {
      expect_keys(j, {"kind", "dim"}, "space");
      if (!j.contains("dim")) throw ProblemError("space: hilbert needs dim");
      return NormSpec::hilbert(j["dim"].get<std::size_t>());
    }
    if (kind == "operator_norm") {
      expect_keys(j, {"kind", "domain", "codomain"}, "space");
      if (!j.contains("domain") || !j.contains("codomain")) {
        throw ProblemError("space: operator_norm needs domain and codomain");
      }
      return NormSpec::operator_norm(parse_space(j["domain"]), parse_space(j["codomain"]));
    }
  } catch (const std::invalid_argument& e) {
    throw ProblemError(std::string("space: ") + e.what());
  }
  throw ProblemError("space: unknown kind \"" + kind + "\"");
}

}  // namespace detail

inline Problem parse_problem(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ProblemError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ProblemError("problem: expected a JSON object");
  detail::expect_keys(j, {"space", "x", "y", "gamma", "mu", "T", "A"}, "problem");

  Problem p;
  p.raw = text;
  if (j.contains("space")) p.space = detail::parse_space(j["space"]);
  if (j.contains("x")) p.x = detail::parse_cvector(j["x"], "x");
  if (j.contains("y")) p.y = detail::parse_cvector(j["y"], "y");
  if (j.contains("gamma")) p.gamma = detail::parse_complex(j["gamma"], "gamma");
  if (j.contains("mu")) p.mu = detail::parse_complex(j["mu"], "mu");
  if (j.contains("T")) p.t_entries = detail::parse_cvector(j["T"], "T");
  if (j.contains("A")) p.a_entries = detail::parse_cvector(j["A"], "A");
  return p;
}

inline Problem load_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemError("cannot open problem file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

/// Unit-modulus check for direction inputs; returns the direction.
inline Direction parse_direction(Complex z, const char* name) {
  double m = std::abs(z);
  if (std::abs(m - 1.0) > 1e-9) {
    throw ProblemError(std::string(name) + ": expected |" + name + "| = 1, got modulus " +
                       std::to_string(m));
  }
  return Direction::from_complex(z);
}

}  // namespace bjortho
