#include "qgalois/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace qgalois {

void Report::add(const std::string& name, double residual, bool pass, const std::string& note) {
  checks.push_back({name, residual, pass, note});
}

void Report::add_residual(const std::string& name, double residual, const std::string& note) {
  checks.push_back({name, residual, residual < tol, note});
}

bool Report::verdict() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckEntry& c) { return c.pass; });
}

double Report::max_residual() const {
  double r = 0.0;
  for (const auto& c : checks) r = std::max(r, c.residual);
  return r;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["tool"] = tool;
  j["config"] = {{"tol", tol}, {"seed", seed}};
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e;
    e["check"] = c.name;
    e["residual"] = c.residual;
    e["verdict"] = c.pass ? "pass" : "fail";
    if (!c.note.empty()) e["note"] = c.note;
    arr.push_back(e);
  }
  j["checks"] = arr;
  j["payload"] = payload;
  j["verdict"] = verdict() ? "pass" : "fail";
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "== " << tool << " (tol " << tol << ", seed " << seed << ") ==\n";
  for (const auto& c : checks) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", c.residual);
    os << (c.pass ? "  [pass] " : "  [FAIL] ") << c.name << "  residual " << buf;
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << "\n";
  }
  if (!payload.empty()) os << "  payload: " << payload.dump() << "\n";
  os << "verdict: " << (verdict() ? "pass" : "fail") << "\n";
  return os.str();
}

}  // namespace qgalois
