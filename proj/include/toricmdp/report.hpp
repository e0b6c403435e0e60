#pragma once

#include <json.hpp>
#include <string>

#include "toricmdp/linalg.hpp"

namespace toricmdp {

/// Structured report tree. JSON keeps insertion order so rendering is
/// deterministic byte-for-byte; exact scalars are rendered as decimal
/// strings ("num" or "num/den") to avoid precision loss.
using Report = nlohmann::ordered_json;

inline std::string to_string(const Int& v) { return v.str(); }

inline std::string to_string(const Rat& v) {
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

inline Report report_value(const Int& v) { return to_string(v); }
inline Report report_value(const Rat& v) { return to_string(v); }

inline Report report_value(const IntVector& v) {
  Report arr = Report::array();
  for (std::size_t i = 0; i < v.size(); ++i) arr.push_back(to_string(v[i]));
  return arr;
}

inline Report report_value(const RatVector& v) {
  Report arr = Report::array();
  for (std::size_t i = 0; i < v.size(); ++i) arr.push_back(to_string(v[i]));
  return arr;
}

inline std::string render_json(const Report& r) { return r.dump(2) + "\n"; }

inline Report parse_report(const std::string& text) { return Report::parse(text); }

namespace detail {

inline bool is_scalar_array(const Report& node) {
  if (!node.is_array()) return false;
  for (const auto& v : node)
    if (v.is_object() || v.is_array()) return false;
  return true;
}

inline std::string render_scalar(const Report& node) {
  return node.is_string() ? node.get<std::string>() : node.dump();
}

inline std::string render_inline(const Report& node) {
  if (!node.is_array()) return render_scalar(node);
  std::string out = "[";
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (i) out += ", ";
    out += render_scalar(node[i]);
  }
  return out + "]";
}

inline void render_text_node(const Report& node, const std::string& indent, std::string& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      if (value.is_object() && value.empty()) {
        out += indent + key + ": {}\n";
      } else if (value.is_object() ||
                 (value.is_array() && !value.empty() && !is_scalar_array(value))) {
        out += indent + key + ":\n";
        render_text_node(value, indent + "  ", out);
      } else {
        out += indent + key + ": " + render_inline(value) + "\n";
      }
    }
  } else if (node.is_array()) {
    for (const auto& value : node) {
      if (value.is_object() || (value.is_array() && !is_scalar_array(value))) {
        out += indent + "-\n";
        render_text_node(value, indent + "  ", out);
      } else {
        out += indent + "- " + render_inline(value) + "\n";
      }
    }
  } else {
    out += indent + render_inline(node) + "\n";
  }
}

}  // namespace detail

inline std::string render_text(const Report& r) {
  std::string out;
  detail::render_text_node(r, "", out);
  return out;
}

}  // namespace toricmdp
