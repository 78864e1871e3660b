#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "bjortho/arcs.hpp"
#include "bjortho/types.hpp"

namespace bjortho {

/// 17 significant digits: enough to round-trip any double, and a fixed
/// format keeps output byte-stable across runs.
inline std::string json_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string json_bool(bool b) { return b ? "true" : "false"; }

inline std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

inline std::string json_complex(Complex z) {
  return "[" + json_number(z.real()) + "," + json_number(z.imag()) + "]";
}

inline std::string json_cvector(const CVector& v) {
  std::string out = "[";
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j) out += ",";
    out += json_complex(v[j]);
  }
  out += "]";
  return out;
}

/// Insertion-ordered JSON object assembly; values are raw JSON fragments.
class JsonObject {
 public:
  JsonObject& field(std::string_view key, std::string raw_value) {
    parts_.push_back(json_string(key) + ":" + std::move(raw_value));
    return *this;
  }
  JsonObject& num(std::string_view key, double v) { return field(key, json_number(v)); }
  JsonObject& boolean(std::string_view key, bool v) { return field(key, json_bool(v)); }
  JsonObject& str(std::string_view key, std::string_view v) { return field(key, json_string(v)); }

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += ",";
      out += parts_[i];
    }
    out += "}";
    return out;
  }

 private:
  std::vector<std::string> parts_;
};

class JsonArray {
 public:
  JsonArray& add(std::string raw_value) {
    parts_.push_back(std::move(raw_value));
    return *this;
  }
  std::string str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += ",";
      out += parts_[i];
    }
    out += "]";
    return out;
  }

 private:
  std::vector<std::string> parts_;
};

inline std::string to_json(const ArcSet& a) {
  JsonObject o;
  if (a.kind == ArcSet::Kind::full) {
    o.str("kind", "full");
  } else {
    o.str("kind", "arcs");
    o.num("theta_start", a.theta_start);
    o.num("theta_end", a.theta_end);
  }
  if (a.degenerate_input) o.boolean("degenerate_input", true);
  return o.str();
}

/// FNV-1a over raw bytes; used to tie a result envelope to its input file.
inline std::string fnv1a_digest(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bjortho
