#pragma once

#include <map>
#include <span>
#include <string>

#include "sdrl/planner.hpp"

namespace sdrl {

enum class ReturnMode { EnvReturn, Constant };

struct MetaConfig {
  double alpha = 0.02;      // R learning rate in (0,1]
  double beta = 0.4;        // gain learning rate in (0,1]
  double psi = 100.0;       // penalty magnitude, > 0
  double threshold = 0.9;   // success-ratio cutoff in (0,1]
  ReturnMode mode = ReturnMode::EnvReturn;
  double constant_return = -10.0;

  void check() const;
};

struct MetaUpdate {
  double delta_r = 0.0;
  double delta_rho = 0.0;
};

// R(s,g) relative values and per-(s,g) gain estimates. Gain entries exist
// only for updated pairs; the planner falls back to the RhoTable default.
class MetaTable {
 public:
  double r_value(const SymbolicState& s, const std::string& g) const;
  double max_r(const SymbolicState& s) const;  // 0 when no entries
  bool has_gain(const SymbolicState& s, const std::string& g) const;
  double gain(const SymbolicState& s, const std::string& g) const;

  void set_r(const SymbolicState& s, const std::string& g, double v);
  void set_gain(const SymbolicState& s, const std::string& g, double v);

  const std::map<SymbolicState, std::map<std::string, double>>& r_values() const {
    return r_values_;
  }
  const std::map<SymbolicState, std::map<std::string, double>>& gains() const {
    return gains_;
  }

 private:
  std::map<SymbolicState, std::map<std::string, double>> r_values_;
  std::map<SymbolicState, std::map<std::string, double>> gains_;
};

// -psi while the success ratio is below the cutoff, else the env return.
double extrinsic_reward(double ratio, double env_return, const MetaConfig& cfg);

// R-learning step for one executed subtask: R first, then the gain; the gain's
// max-terms read the post-update R table.
MetaUpdate r_update(MetaTable& m, const SymbolicState& s, const std::string& g,
                    double r_e, const SymbolicState& next, const MetaConfig& cfg);

// True iff every increment magnitude in the last sweep is below tol.
bool converged(std::span<const double> increments, double tol);

}  // namespace sdrl
