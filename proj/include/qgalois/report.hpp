#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qgalois/types.hpp"

namespace qgalois {

/// One named check: residual plus pass/fail and an optional note
/// (e.g. "sampled" when a certificate was evaluated on random probes).
struct CheckEntry {
  std::string name;
  double residual = 0.0;
  bool pass = true;
  std::string note;
};

/// Flat record of the checks behind an operation, serializable to JSON/text.
struct Report {
  std::string tool;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::vector<CheckEntry> checks;
  nlohmann::json payload = nlohmann::json::object();

  void add(const std::string& name, double residual, bool pass, const std::string& note = "");
  /// residual < tol convenience form.
  void add_residual(const std::string& name, double residual, const std::string& note = "");
  bool verdict() const;
  double max_residual() const;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

}  // namespace qgalois
