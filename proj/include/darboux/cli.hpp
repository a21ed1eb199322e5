#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "darboux/darboux.hpp"
#include "darboux/spectral.hpp"

namespace darboux::cli {

enum class OutputFormat { Json, Csv };

struct RunConfig {
  std::string model = "oscillator";
  std::vector<int> levels;
  int n_max = 8;
  double x_min = -12.0;
  double x_max = 12.0;
  int points = 2401;
  OutputFormat format = OutputFormat::Json;
  std::string out;       // primary artifact path; empty = stdout
  std::string csv_out;   // transform CSV path; defaults to <out>.csv
  std::string input;     // verify: transform JSON to re-read
  std::string perturb;   // verify: rational added to V_N (negative control)
  bool parallel = false;

  spectral::Grid grid() const { return {x_min, x_max, points}; }
};

// Stable exit-code contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;

nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json poly_to_json(const Poly& p);
nlohmann::json ratfun_to_json(const RatFun& f);

/// Parses "1/1000", "-3", or a decimal such as "1e-3" (converted exactly
/// from its decimal digits).
Rational parse_rational(const std::string& text);
std::vector<int> parse_levels(const std::string& text);

nlohmann::json transform_to_json(const TransformResult& tr);

/// CSV with columns x, V0, VN, psi_<n>... for unselected n <= n_max, each psi
/// normalized to unit L2 norm. 17 significant digits.
std::string transform_csv(const TransformResult& tr, const spectral::Grid& grid, int n_max);

/// Rebuilds the transform named by a cmd_transform document and compares every
/// exact coefficient string. Returns the first mismatching field, if any.
std::optional<std::string> roundtrip_mismatch(const nlohmann::json& doc);

int cmd_transform(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command-line entry point: parses flags (and an optional --config JSON
/// file, overridden by explicit flags) and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace darboux::cli
