#include "splitsim/ledger.hpp"

#include <algorithm>
#include <cmath>

#include "splitsim/error.hpp"

namespace splitsim {

void RoundLedger::add(std::string name, std::int64_t simulated, double nominal, std::string formula) {
  if (simulated < 0) throw Error(Errc::InvalidInput, "negative simulated rounds");
  phases_.push_back({std::move(name), simulated, nominal, std::move(formula)});
}

void RoundLedger::append(const RoundLedger& other, const std::string& prefix) {
  for (const auto& p : other.phases_)
    phases_.push_back({prefix.empty() ? p.name : prefix + "/" + p.name, p.simulated_rounds,
                       p.nominal_rounds, p.formula});
}

std::int64_t RoundLedger::total_simulated() const noexcept {
  std::int64_t t = 0;
  for (const auto& p : phases_) t += p.simulated_rounds;
  return t;
}

double RoundLedger::total_nominal() const noexcept {
  double t = 0;
  for (const auto& p : phases_) t += p.nominal_rounds;
  return t;
}

nlohmann::json RoundLedger::to_json() const {
  nlohmann::json phases = nlohmann::json::array();
  for (const auto& p : phases_)
    phases.push_back({{"name", p.name},
                      {"simulated_rounds", p.simulated_rounds},
                      {"nominal_rounds", p.nominal_rounds},
                      {"formula", p.formula}});
  return {{"phases", std::move(phases)},
          {"total_simulated", total_simulated()},
          {"total_nominal", total_nominal()}};
}

double log2n(double x) { return std::log2(x); }

double degree_split_charge(double epsilon, double n, bool randomized) {
  const double inv = 1.0 / epsilon;
  const double log_inv = std::max(1.0, std::log2(inv));
  const double logn = std::max(1.0, std::log2(std::max(n, 2.0)));
  const double tail = randomized ? std::max(1.0, std::log2(logn)) : logn;
  return inv * std::pow(log_inv, 1.1) * tail;
}

int log_star(double x) {
  int k = 0;
  while (x > 1.0) {
    x = std::log2(x);
    ++k;
  }
  return k;
}

}  // namespace splitsim
