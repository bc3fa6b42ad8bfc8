#include <random>
#include <set>

#include "doctest.h"
#include "sdrl/envs/taxi.hpp"
#include "sdrl/run_config.hpp"
#include "sdrl/sdrl_loop.hpp"
#include "test_util.hpp"

using namespace sdrl;

namespace {

SyntheticSpec one_edge_spec(double reward) {
  SyntheticSpec spec;
  spec.nodes = {"u", "v"};
  spec.actions = {"go"};
  spec.edges = {{0, 0, 1, reward}};
  return spec;
}

LoopConfig quiet_loop(long episodes, int max_len) {
  LoopConfig cfg;
  cfg.explore_prob = 0.0;
  cfg.episodes = episodes;
  cfg.max_plan_len = max_len;
  return cfg;
}

ControllerConfig greedy_controller() {
  ControllerConfig cfg;
  cfg.eps_start = 0.01;  // near-greedy; zero Q already picks action 0
  cfg.eps_end = 0.0;
  cfg.max_steps = 5;
  return cfg;
}

}  // namespace

TEST_CASE("single-plan domain: goal converges and the loop terminates with it") {
  SyntheticSpec spec = one_edge_spec(5.0);
  SyntheticDomain domain = make_synthetic(spec);
  MetaConfig meta;
  meta.alpha = 0.02;
  meta.beta = 0.4;
  LoopConfig cfg = quiet_loop(2000, 3);
  cfg.settle_tol = 1e-12;  // terminate only at the numeric fixed point
  SdrlLoop loop(*domain.description, *domain.env, domain.state_of(0), cfg,
                greedy_controller(), meta, 1);

  std::vector<IterationReport> reports = loop.run();
  REQUIRE(reports.size() >= 2);
  CHECK(reports.back().terminated);
  CHECK(reports.size() < 2000);  // converged well before the budget

  const Plan& best = loop.best_plan();
  REQUIRE(best.size() == 1);
  CHECK(domain.description->actions[static_cast<std::size_t>(
            best.transitions[0].action)] == "go");

  // At convergence the goal equals the learned gain, which satisfies
  // rho = r_e - max R(s,.) + max R(s',.) with r_e = 5.
  const SymbolicState u = domain.state_of(0), v = domain.state_of(1);
  double rho = loop.state().facts.lookup(u, best.transitions[0].action);
  CHECK(loop.state().goal.threshold == rho);
  CHECK(rho == doctest::Approx(5.0 - loop.meta().max_r(u) + loop.meta().max_r(v))
                   .epsilon(1e-9));
}

TEST_CASE("an empty incumbent forces planning even at explore_prob zero") {
  SyntheticSpec spec = one_edge_spec(5.0);
  SyntheticDomain domain = make_synthetic(spec);
  SdrlLoop loop(*domain.description, *domain.env, domain.state_of(0),
                quiet_loop(10, 3), greedy_controller(), MetaConfig{}, 1);
  IterationReport first = loop.run_episode();
  CHECK_FALSE(first.explored);
  CHECK_FALSE(first.planner_none);
  CHECK(first.plan.size() == 1);
}

TEST_CASE("update_facts copies the executed gains and nothing else") {
  SyntheticSpec spec;
  spec.nodes = {"a", "b", "c"};
  spec.actions = {"go"};
  spec.edges = {{0, 0, 1, 3.0}, {1, 0, 2, -100.0}};
  SyntheticDomain domain = make_synthetic(spec);
  const ActionDescription& d = *domain.description;

  Plan plan;
  SymbolicState s = domain.state_of(0);
  for (int i = 0; i < 2; ++i) {
    auto succ = successors(s, d);
    REQUIRE(succ.size() == 1);
    plan.transitions.push_back({s, succ[0].first, succ[0].second});
    s = succ[0].second;
  }

  MetaTable meta;
  meta.set_gain(plan.transitions[0].from, subtask_key(plan.transitions[0], d), 3.0);
  meta.set_gain(plan.transitions[1].from, subtask_key(plan.transitions[1], d), -100.0);

  RhoTable facts(10.0);
  SymbolicState unrelated = domain.state_of(2);
  facts.set(unrelated, 0, 7.0);

  RhoTable updated = update_facts(std::move(facts), plan, meta, d);
  CHECK(updated.lookup(plan.transitions[0].from, plan.transitions[0].action) == 3.0);
  CHECK(updated.lookup(plan.transitions[1].from, plan.transitions[1].action) == -100.0);
  CHECK(updated.lookup(unrelated, 0) == 7.0);
  CHECK(updated.facts().size() == 3);

  // empty plan: unchanged
  RhoTable untouched = update_facts(updated, Plan{}, meta, d);
  CHECK(untouched.facts() == updated.facts());

  // repeated execution carries the latest gain (last write wins)
  meta.set_gain(plan.transitions[0].from, subtask_key(plan.transitions[0], d), 1.25);
  RhoTable latest = update_facts(updated, plan, meta, d);
  CHECK(latest.lookup(plan.transitions[0].from, plan.transitions[0].action) == 1.25);

  // a transition without a gain entry is an internal invariant error
  MetaTable missing;
  CHECK_THROWS_AS(update_facts(latest, plan, missing, d), std::logic_error);
}

TEST_CASE("a failed subtask aborts the remaining suffix") {
  TaxiEnv env;
  LoopConfig cfg = quiet_loop(1, 8);
  ControllerConfig controller;
  controller.max_steps = 1;  // nothing can reach its target in one step
  controller.eps_start = 1.0;
  controller.eps_end = 1.0;
  SdrlLoop loop(env.description(), env, env.initial_symbolic_state(), cfg, controller,
                MetaConfig{}, 3);
  IterationReport report = loop.run_episode();
  REQUIRE(report.plan.size() > 1);
  CHECK(report.attempted == 1);
  CHECK(report.succeeded == 0);
}

TEST_CASE("facts differ from the default only for executed transitions") {
  TaxiEnv env;
  LoopConfig cfg;
  cfg.explore_prob = 0.5;
  cfg.episodes = 60;
  cfg.max_plan_len = 8;
  cfg.stop_on_converged = false;
  ControllerConfig controller;
  controller.eps_decay_steps = 200;
  SdrlLoop loop(env.description(), env, env.initial_symbolic_state(), cfg, controller,
                MetaConfig{}, 11);
  std::set<std::pair<SymbolicState, int>> executed;
  for (int ep = 0; ep < 60; ++ep) {
    IterationReport r = loop.run_episode();
    int n = r.attempted;
    for (int i = 0; i < n; ++i) {
      const SymbolicTransition& t = r.plan.transitions[static_cast<std::size_t>(i)];
      executed.insert({t.from, t.action});
    }
  }
  for (const auto& [key, value] : loop.state().facts.facts())
    CHECK(executed.contains(key));
}

TEST_CASE("goal thresholds never decrease once meta values are frozen") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    SyntheticSpec spec = test::random_spec(rng);
    SyntheticDomain domain = make_synthetic(spec);
    MetaConfig meta;
    meta.alpha = 0.0;
    meta.beta = 0.0;
    int cap = static_cast<int>(spec.nodes.size()) + 2;
    SdrlLoop loop(*domain.description, *domain.env, domain.state_of(0),
                  quiet_loop(30, cap), greedy_controller(), meta, 5);
    loop.install_converged_meta(domain.reward_table(spec));
    double prev = 0.0;
    bool have_prev = false;
    for (int ep = 0; ep < 30; ++ep) {
      IterationReport r = loop.run_episode();
      if (r.terminated) break;
      if (have_prev) CHECK(r.quality >= prev);
      prev = r.quality;
      have_prev = true;
    }
  }
}

TEST_CASE("frozen-meta loops terminate exactly on positive-loop-free domains") {
  std::mt19937_64 rng(2026);
  int terminating = 0, looping = 0;
  for (int trial = 0; trial < 30; ++trial) {
    SyntheticSpec spec = test::random_spec(rng);
    SyntheticDomain domain = make_synthetic(spec);
    RewardTable rewards = domain.reward_table(spec);
    SymbolicState init = domain.state_of(0);

    int n = static_cast<int>(spec.nodes.size());
    MetaConfig meta;
    meta.alpha = 0.0;
    meta.beta = 0.0;
    SdrlLoop loop(*domain.description, *domain.env, init,
                  quiet_loop(10, 4 * n * n + n), greedy_controller(), meta, 7);
    loop.install_converged_meta(rewards);
    std::vector<IterationReport> reports = loop.run();

    bool positive_loop = detect_positive_loop(*domain.description, init, rewards);
    bool terminated_cleanly =
        !reports.empty() && reports.back().terminated && !loop.improving_at_cap();
    CHECK(terminated_cleanly == !positive_loop);
    (positive_loop ? looping : terminating) += 1;

    if (!positive_loop) {
      auto [best, total] = brute_force_optimal(
          enumerate_plans(init, *domain.description, n), rewards);
      double got = 0.0;
      for (const SymbolicTransition& t : loop.best_plan().transitions)
        got += rewards.count({t.from, t.action}) ? rewards.at({t.from, t.action}) : 0.0;
      CHECK(got == doctest::Approx(total));
    }
  }
  CHECK(terminating > 0);
  CHECK(looping > 0);
}

TEST_CASE("positive-loop fixtures flag quality still improving at the cap") {
  SyntheticSpec spec;
  spec.nodes = {"u", "v"};
  spec.actions = {"go", "back"};
  spec.edges = {{0, 0, 1, 2.0}, {1, 1, 0, -0.5}};
  SyntheticDomain domain = make_synthetic(spec);
  MetaConfig meta;
  meta.alpha = 0.0;
  meta.beta = 0.0;
  SdrlLoop loop(*domain.description, *domain.env, domain.state_of(0),
                quiet_loop(5, 20), greedy_controller(), meta, 9);
  loop.install_converged_meta(domain.reward_table(spec));
  std::vector<IterationReport> reports = loop.run();
  CHECK(loop.improving_at_cap());

  // acyclic counterpart: no flag
  SyntheticSpec dag;
  dag.nodes = {"u", "v"};
  dag.actions = {"go"};
  dag.edges = {{0, 0, 1, 2.0}};
  SyntheticDomain dd = make_synthetic(dag);
  MetaConfig meta2;
  meta2.alpha = 0.0;
  meta2.beta = 0.0;
  SdrlLoop loop2(*dd.description, *dd.env, dd.state_of(0), quiet_loop(5, 20),
                 greedy_controller(), meta2, 9);
  loop2.install_converged_meta(dd.reward_table(dag));
  loop2.run();
  CHECK_FALSE(loop2.improving_at_cap());
}

TEST_CASE("zero-episode runs produce an empty report") {
  SyntheticSpec spec = one_edge_spec(5.0);
  SyntheticDomain domain = make_synthetic(spec);
  SdrlLoop loop(*domain.description, *domain.env, domain.state_of(0), quiet_loop(0, 3),
                greedy_controller(), MetaConfig{}, 1);
  CHECK(loop.run().empty());
  CHECK(loop.best_plan().empty());
}

TEST_CASE("goal threshold always equals the executed plan's quality") {
  TaxiEnv env;
  LoopConfig cfg;
  cfg.explore_prob = 0.6;
  cfg.episodes = 40;
  cfg.stop_on_converged = false;
  ControllerConfig controller;
  SdrlLoop loop(env.description(), env, env.initial_symbolic_state(), cfg, controller,
                MetaConfig{}, 13);
  for (int ep = 0; ep < 40; ++ep) {
    IterationReport r = loop.run_episode();
    if (r.plan.empty()) continue;
    CHECK(loop.state().goal.threshold ==
          plan_quality(loop.state().incumbent, loop.state().facts));
    CHECK(loop.state().incumbent == r.plan);
  }
}

TEST_CASE("identical seeds reproduce identical episode streams") {
  auto run_once = [] {
    TaxiEnv env;
    LoopConfig cfg;
    cfg.explore_prob = 0.9;
    cfg.episodes = 80;
    cfg.stop_on_converged = false;
    ControllerConfig controller;
    controller.eps_decay_steps = 100;
    SdrlLoop loop(env.description(), env, env.initial_symbolic_state(), cfg, controller,
                  MetaConfig{}, 42);
    std::vector<std::tuple<double, double, std::size_t>> trace;
    for (int ep = 0; ep < 80; ++ep) {
      IterationReport r = loop.run_episode();
      trace.emplace_back(r.env_reward, r.quality, r.plan.size());
    }
    return trace;
  };
  CHECK(run_once() == run_once());
}
