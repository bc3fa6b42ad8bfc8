#include "sdrl/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>

namespace sdrl {

bool Plan::chained() const {
  for (std::size_t i = 1; i < transitions.size(); ++i)
    if (!(transitions[i - 1].to == transitions[i].from)) return false;
  return true;
}

RhoTable::RhoTable(double default_inf) : default_inf_(default_inf) {
  if (!(default_inf > 0.0))
    throw std::invalid_argument("RhoTable default must be positive");
}

double RhoTable::lookup(const SymbolicState& s, int action) const {
  auto it = facts_.find({s, action});
  return it == facts_.end() ? default_inf_ : it->second;
}

bool RhoTable::has(const SymbolicState& s, int action) const {
  return facts_.contains({s, action});
}

void RhoTable::set(const SymbolicState& s, int action, double value) {
  facts_[{s, action}] = value;
}

std::optional<SymbolicState> successor(const SymbolicState& s, int action,
                                       const ActionDescription& d) {
  for (const CausalLaw& law : d.laws)
    if (law.kind == LawKind::Nonexecutable && law.action == action &&
        body_satisfied(law.body, s))
      return std::nullopt;

  std::vector<std::int32_t> vals(d.fluents.size(), -1);
  for (const CausalLaw& law : d.laws) {
    if (law.kind != LawKind::Dynamic || law.action != action) continue;
    if (!body_satisfied(law.body, s)) continue;
    std::int32_t& slot = vals[static_cast<std::size_t>(law.head->fluent)];
    if (slot >= 0 && slot != law.head->value)
      throw std::runtime_error("inconsistent effects for action '" +
                               d.actions[static_cast<std::size_t>(action)] + "' on fluent '" +
                               d.fluents[static_cast<std::size_t>(law.head->fluent)].name +
                               "'");
    slot = law.head->value;
  }

  // Statics override the defeasible carriers: inertia fills only what no
  // applicable static law derives, defaults cover the rest.
  if (!finalize_state(d, vals, &s)) return std::nullopt;

  for (std::size_t f = 0; f < d.fluents.size(); ++f)
    if (vals[f] < 0)
      throw std::runtime_error("uncovered fluent '" + d.fluents[f].name +
                               "' in successor computation");
  SymbolicState next{std::move(vals)};
  if (!statically_closed(d, next)) return std::nullopt;
  return next;
}

std::vector<std::pair<int, SymbolicState>> successors(const SymbolicState& s,
                                                      const ActionDescription& d) {
  std::vector<std::pair<int, SymbolicState>> out;
  for (int a = 0; a < static_cast<int>(d.actions.size()); ++a)
    if (auto next = successor(s, a, d)) out.emplace_back(a, std::move(*next));
  return out;
}

double plan_quality(const Plan& p, const RhoTable& rho) {
  double q = 0.0;
  for (const SymbolicTransition& t : p.transitions) q += rho.lookup(t.from, t.action);
  return q;
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Exhaustive DFS over (state, remaining length) with memoized exact-length
// values; desk-scale state spaces keep this small.
struct PlanSearch {
  const ActionDescription& d;
  const RhoTable& rho;
  std::map<SymbolicState, std::vector<std::pair<int, SymbolicState>>> succ_cache;
  std::map<std::pair<SymbolicState, int>, double> memo;

  const std::vector<std::pair<int, SymbolicState>>& succs(const SymbolicState& s) {
    auto it = succ_cache.find(s);
    if (it == succ_cache.end()) it = succ_cache.emplace(s, successors(s, d)).first;
    return it->second;
  }

  // Best quality over plans of exactly `len` transitions from s.
  double value_exact(const SymbolicState& s, int len) {
    if (len == 0) return 0.0;
    auto key = std::make_pair(s, len);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    double best = kNegInf;
    for (const auto& [a, next] : succs(s)) {
      double sub = value_exact(next, len - 1);
      if (sub == kNegInf) continue;
      best = std::max(best, rho.lookup(s, a) + sub);
    }
    memo.emplace(key, best);
    return best;
  }
};

}  // namespace

double best_quality(const SymbolicState& initial, const ActionDescription& d,
                    const RhoTable& rho, int max_len) {
  PlanSearch search{d, rho, {}, {}};
  double best = 0.0;  // empty plan
  for (int l = 1; l <= max_len; ++l)
    best = std::max(best, search.value_exact(initial, l));
  return best;
}

std::optional<Plan> find_plan(const SymbolicState& initial, const IntrinsicGoal& goal,
                              const ActionDescription& d, const RhoTable& rho,
                              int max_len) {
  if (max_len < 0) throw std::invalid_argument("max_len must be >= 0");
  PlanSearch search{d, rho, {}, {}};
  double best = 0.0;
  int best_len = 0;
  for (int l = 1; l <= max_len; ++l) {
    double q = search.value_exact(initial, l);
    if (q > best) {
      best = q;
      best_len = l;
    }
  }
  if (!(best > goal.threshold)) return std::nullopt;

  // Shortest already favored above; now pick the lexicographically smallest
  // action sequence among plans achieving (best, best_len).
  Plan plan;
  SymbolicState s = initial;
  for (int rem = best_len; rem > 0; --rem) {
    double need = search.value_exact(s, rem);
    for (const auto& [a, next] : search.succs(s)) {
      double sub = search.value_exact(next, rem - 1);
      if (sub == kNegInf) continue;
      if (rho.lookup(s, a) + sub == need) {
        plan.transitions.push_back({s, a, next});
        s = next;
        break;
      }
    }
  }
  return plan;
}

int reachable_state_count(const SymbolicState& initial, const ActionDescription& d) {
  std::set<SymbolicState> seen{initial};
  std::vector<SymbolicState> frontier{initial};
  while (!frontier.empty()) {
    SymbolicState s = std::move(frontier.back());
    frontier.pop_back();
    for (auto& [a, next] : successors(s, d)) {
      (void)a;
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  return static_cast<int>(seen.size());
}

std::string plan_to_text(const Plan& p, const ActionDescription& d, double quality) {
  std::ostringstream out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", quality);
  out << "quality " << buf << "\n";
  out << "length " << p.size() << "\n";
  std::map<std::uint64_t, const SymbolicState*> states;
  auto hex = [](std::uint64_t h) {
    char b[32];
    std::snprintf(b, sizeof b, "%016llx", static_cast<unsigned long long>(h));
    return std::string(b);
  };
  for (const SymbolicTransition& t : p.transitions) {
    std::uint64_t hf = state_hash(t.from), ht = state_hash(t.to);
    states.emplace(hf, &t.from);
    states.emplace(ht, &t.to);
    out << "step " << hex(hf) << " " << d.actions[static_cast<std::size_t>(t.action)]
        << " " << hex(ht) << "\n";
  }
  for (const auto& [h, s] : states)
    out << "state " << hex(h) << " " << d.state_text(*s) << "\n";
  return out.str();
}

Plan plan_from_text(std::string_view text, const ActionDescription& d) {
  std::istringstream in{std::string(text)};
  std::string line;
  struct Step {
    std::string from, action, to;
  };
  std::vector<Step> steps;
  std::map<std::string, SymbolicState> states;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "quality" || kw == "length") continue;
    if (kw == "step") {
      Step s;
      if (!(ls >> s.from >> s.action >> s.to))
        throw std::runtime_error("malformed step line: " + line);
      steps.push_back(std::move(s));
    } else if (kw == "state") {
      std::string h;
      if (!(ls >> h)) throw std::runtime_error("malformed state line: " + line);
      std::string rest;
      std::getline(ls, rest);
      SymbolicState s = complete_state(d, parse_atoms(d, rest));
      char expect[32];
      std::snprintf(expect, sizeof expect, "%016llx",
                    static_cast<unsigned long long>(state_hash(s)));
      if (h != expect)
        throw std::runtime_error("state hash mismatch in plan text: " + h);
      states.emplace(h, std::move(s));
    } else {
      throw std::runtime_error("unexpected plan line: " + line);
    }
  }
  Plan plan;
  for (const Step& st : steps) {
    auto fit = states.find(st.from), tit = states.find(st.to);
    if (fit == states.end() || tit == states.end())
      throw std::runtime_error("plan step references unlisted state");
    int a = d.action_index(st.action);
    if (a < 0) throw std::runtime_error("unknown action '" + st.action + "' in plan");
    auto next = successor(fit->second, a, d);
    if (!next || !(*next == tit->second))
      throw std::runtime_error("plan step is not a valid transition: " + st.action);
    plan.transitions.push_back({fit->second, a, tit->second});
  }
  if (!plan.chained()) throw std::runtime_error("plan transitions are not chained");
  return plan;
}

}  // namespace sdrl
