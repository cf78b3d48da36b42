#pragma once

#include <string>
#include <vector>

namespace fqg::suites {

/// Outcome of one acceptance suite.
struct Outcome {
  int criterion = 0;  // 1..11; 0 for suites outside the numbered list
  std::string title;
  bool passed = false;
  std::string summary;
  std::vector<std::string> details;
  double seconds = 0.0;
  /// Pinned wall-clock budget in seconds; 0 when none.
  double budget = 0.0;
};

Outcome axioms();
Outcome completeness();
Outcome kp_power_laws();
Outcome kp_independence();
Outcome sekine_characters();
Outcome character_spaces();
Outcome gelfand_space();
Outcome sekine_limits();
Outcome dual_group();
Outcome pair_independence();
Outcome properties();
Outcome character_commutativity();

constexpr int kCriterionCount = 11;

/// Runs numbered criterion 1..11; throws std::out_of_range otherwise.
Outcome run_criterion(int criterion);

/// Theorem ids accepted by run_theorem, in display order.
const std::vector<std::string>& theorem_ids();
/// Suites behind a theorem id; throws std::invalid_argument on unknown ids.
std::vector<Outcome> run_theorem(const std::string& id);

/// "PASS  3  title  summary (1.2 s)"
std::string format_line(const Outcome& o);

}  // namespace fqg::suites
