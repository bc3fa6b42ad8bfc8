#include "sdrl/meta_controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdrl {

void MetaConfig::check() const {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must be in [0,1]");
  if (!(beta >= 0.0 && beta <= 1.0))
    throw std::invalid_argument("beta must be in [0,1]");
  if (!(psi > 0.0)) throw std::invalid_argument("psi must be positive");
  if (!(threshold > 0.0 && threshold <= 1.0))
    throw std::invalid_argument("threshold must be in (0,1]");
}

double MetaTable::r_value(const SymbolicState& s, const std::string& g) const {
  auto sit = r_values_.find(s);
  if (sit == r_values_.end()) return 0.0;
  auto git = sit->second.find(g);
  return git == sit->second.end() ? 0.0 : git->second;
}

double MetaTable::max_r(const SymbolicState& s) const {
  auto sit = r_values_.find(s);
  if (sit == r_values_.end() || sit->second.empty()) return 0.0;
  double best = sit->second.begin()->second;
  for (const auto& [g, v] : sit->second) best = std::max(best, v);
  return best;
}

bool MetaTable::has_gain(const SymbolicState& s, const std::string& g) const {
  auto sit = gains_.find(s);
  return sit != gains_.end() && sit->second.contains(g);
}

double MetaTable::gain(const SymbolicState& s, const std::string& g) const {
  auto sit = gains_.find(s);
  if (sit == gains_.end()) throw std::runtime_error("no gain entry for subtask '" + g + "'");
  auto git = sit->second.find(g);
  if (git == sit->second.end())
    throw std::runtime_error("no gain entry for subtask '" + g + "'");
  return git->second;
}

void MetaTable::set_r(const SymbolicState& s, const std::string& g, double v) {
  r_values_[s][g] = v;
}

void MetaTable::set_gain(const SymbolicState& s, const std::string& g, double v) {
  gains_[s][g] = v;
}

double extrinsic_reward(double ratio, double env_return, const MetaConfig& cfg) {
  if (ratio < 0.0 || ratio > 1.0) throw std::invalid_argument("ratio must be in [0,1]");
  return ratio < cfg.threshold ? -cfg.psi : env_return;
}

MetaUpdate r_update(MetaTable& m, const SymbolicState& s, const std::string& g,
                    double r_e, const SymbolicState& next, const MetaConfig& cfg) {
  double max_next = m.max_r(next);
  double old_r = m.r_value(s, g);
  double old_gain = m.has_gain(s, g) ? m.gain(s, g) : 0.0;

  double new_r = (1.0 - cfg.alpha) * old_r + cfg.alpha * (r_e - old_gain + max_next);
  m.set_r(s, g, new_r);

  double max_here = m.max_r(s);  // post-R-update by contract
  double new_gain = (1.0 - cfg.beta) * old_gain + cfg.beta * (r_e + max_next - max_here);
  m.set_gain(s, g, new_gain);

  return {new_r - old_r, new_gain - old_gain};
}

bool converged(std::span<const double> increments, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  for (double inc : increments)
    if (std::abs(inc) >= tol) return false;
  return true;
}

}  // namespace sdrl
