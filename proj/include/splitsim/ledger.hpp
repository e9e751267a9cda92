#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace splitsim {

/// Per-phase round accounting. `simulated_rounds` counts rounds the simulator
/// actually executed; `nominal_rounds` is the closed-form charge (constant 1)
/// for stand-in subroutines. The two are independent.
class RoundLedger {
 public:
  struct Phase {
    std::string name;
    std::int64_t simulated_rounds = 0;
    double nominal_rounds = 0.0;
    std::string formula;
  };

  void add(std::string name, std::int64_t simulated, double nominal, std::string formula = {});
  /// Appends all phases of `other`, prefixing their names.
  void append(const RoundLedger& other, const std::string& prefix = {});

  const std::vector<Phase>& phases() const noexcept { return phases_; }
  std::int64_t total_simulated() const noexcept;
  double total_nominal() const noexcept;

  nlohmann::json to_json() const;

 private:
  std::vector<Phase> phases_;
};

/// log base 2, the convention for every threshold in this library.
double log2n(double x);

/// Closed-form charge of one directed degree splitting with accuracy epsilon:
/// eps^-1 * (log eps^-1)^1.1 * log n, or with log log n for the randomized
/// variant. log eps^-1 is clamped below at 1 so that eps = 1 still charges.
double degree_split_charge(double epsilon, double n, bool randomized);

/// Iterated logarithm (base 2).
int log_star(double x);

}  // namespace splitsim
