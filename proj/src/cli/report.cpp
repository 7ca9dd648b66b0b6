#include <sstream>

#include "tq/cli/cli.hpp"

namespace tq::cli {

const char* const kSchemaVersion = "1";
const std::vector<std::string> kCases = {"einstein-rosen", "monopole", "reissner-nordstrom", "kerr-newman"};

Record envelope(const Record& r) {
  Record out;
  out["schema"] = "schema/report.schema.json";
  out["version"] = kSchemaVersion;
  out["record"] = r.is_null() ? Record::object() : r;
  return out;
}

namespace {

std::string scalar(const Record& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object()) {
    std::string s;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!s.empty()) s += "; ";
      s += it.key() + " = " + scalar(it.value());
    }
    return s;
  }
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : ", ") + scalar(e);
    return "[" + s + "]";
  }
  return v.dump();
}

}  // namespace

std::string render_text(const Record& r) {
  std::ostringstream out;
  bool first = true;
  for (auto it = r.begin(); it != r.end(); ++it) {
    if (!first) out << "\n";
    first = false;
    out << "[" << it.key() << "]\n";
    const Record& v = it.value();
    if ((v.is_array() || v.is_object()) && v.empty()) {
      out << "(none)\n";
    } else if (v.is_array()) {
      for (const auto& e : v) out << scalar(e) << "\n";
    } else if (v.is_object()) {
      for (auto jt = v.begin(); jt != v.end(); ++jt) out << jt.key() << " = " << scalar(jt.value()) << "\n";
    } else {
      out << scalar(v) << "\n";
    }
  }
  return out.str();
}

}  // namespace tq::cli
