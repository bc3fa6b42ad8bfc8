#include "sdrl/run_config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace sdrl {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

LoopConfig RunConfig::loop_config() const {
  LoopConfig c;
  c.explore_prob = explore_prob;
  c.episodes = episodes;
  c.max_plan_len = max_plan_len;
  c.inf_default = inf_default;
  c.settle_tol = settle_tol;
  c.stop_on_converged = num_tasks <= 1;
  return c;
}

ControllerConfig RunConfig::controller_config() const {
  ControllerConfig c;
  c.alpha_c = alpha_c;
  c.gamma = gamma;
  c.eps_start = eps_start;
  c.eps_end = eps_end;
  c.eps_decay_steps = eps_decay_steps;
  c.max_steps = max_steps;
  c.phi = phi;
  return c;
}

MetaConfig RunConfig::meta_config() const {
  MetaConfig c;
  c.alpha = alpha;
  c.beta = beta;
  c.psi = psi;
  c.threshold = threshold;
  if (return_mode == "env_return") c.mode = ReturnMode::EnvReturn;
  else if (return_mode == "constant") c.mode = ReturnMode::Constant;
  else throw std::invalid_argument("return_mode must be env_return or constant");
  c.constant_return = constant_return;
  return c;
}

TaskSchedule RunConfig::schedule() const {
  TaskSchedule s;
  s.base_dropoff_reward = base_dropoff_reward;
  s.decrement = decrement;
  s.episodes_per_task = episodes;
  s.num_tasks = num_tasks;
  return s;
}

RunConfig parse_run_config(std::istream& in) {
  RunConfig cfg;
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto comment = line.find_first_of("#%");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(line_no) +
                               ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  auto take = [&](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto num = [&](const char* key, double& slot) {
    if (auto v = take(key)) slot = std::stod(*v);
  };
  auto integer = [&](const char* key, auto& slot) {
    if (auto v = take(key)) slot = static_cast<std::decay_t<decltype(slot)>>(std::stoll(*v));
  };
  auto text = [&](const char* key, std::string& slot) {
    if (auto v = take(key)) slot = *v;
  };
  auto flag = [&](const char* key, bool& slot) {
    if (auto v = take(key)) {
      if (*v == "true" || *v == "1") slot = true;
      else if (*v == "false" || *v == "0") slot = false;
      else throw std::runtime_error(std::string("config key ") + key + " must be true/false");
    }
  };

  text("env", cfg.env);
  num("explore_prob", cfg.explore_prob);
  integer("episodes", cfg.episodes);
  integer("episodes_per_task", cfg.episodes);
  integer("max_plan_len", cfg.max_plan_len);
  num("inf_default", cfg.inf_default);
  num("settle_tol", cfg.settle_tol);
  num("phi", cfg.phi);
  num("alpha_c", cfg.alpha_c);
  num("gamma", cfg.gamma);
  integer("max_steps", cfg.max_steps);
  num("eps_start", cfg.eps_start);
  num("eps_end", cfg.eps_end);
  integer("eps_decay_steps", cfg.eps_decay_steps);
  num("alpha", cfg.alpha);
  num("beta", cfg.beta);
  num("psi", cfg.psi);
  num("threshold", cfg.threshold);
  text("return_mode", cfg.return_mode);
  num("constant_return", cfg.constant_return);
  num("base_dropoff_reward", cfg.base_dropoff_reward);
  num("decrement", cfg.decrement);
  integer("num_tasks", cfg.num_tasks);
  text("out_dir", cfg.out_dir);
  flag("log_controller", cfg.log_controller);
  flag("log_meta", cfg.log_meta);
  text("synthetic_nodes", cfg.synthetic_nodes);
  text("synthetic_actions", cfg.synthetic_actions);
  text("synthetic_edges", cfg.synthetic_edges);
  if (auto v = take("seeds")) {
    cfg.seeds.clear();
    for (const std::string& s : split(*v, ','))
      cfg.seeds.push_back(static_cast<std::uint64_t>(std::stoull(s)));
  }
  if (!kv.empty())
    throw std::runtime_error("unknown config key '" + kv.begin()->first + "'");
  if (cfg.env == "montezuma_fixture")
    throw std::runtime_error(
        "montezuma_fixture is a planner-only fixture with no executable "
        "environment; use the plan, validate, or oracle subcommands on "
        "data/montezuma.bc");
  if (cfg.env != "taxi" && cfg.env != "synthetic")
    throw std::runtime_error("env must be taxi, synthetic, or montezuma_fixture");
  if (cfg.seeds.empty()) throw std::runtime_error("seeds must be nonempty");
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  return parse_run_config(in);
}

SyntheticSpec parse_synthetic_spec(const RunConfig& cfg) {
  SyntheticSpec spec;
  spec.nodes = split(cfg.synthetic_nodes, ',');
  spec.actions = split(cfg.synthetic_actions, ',');
  auto index_of = [](const std::vector<std::string>& v, const std::string& name) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == name) return static_cast<int>(i);
    throw std::runtime_error("unknown synthetic identifier '" + name + "'");
  };
  for (const std::string& part : split(cfg.synthetic_edges, ';')) {
    std::istringstream es(part);
    std::string from, action, to;
    double reward;
    if (!(es >> from >> action >> to >> reward))
      throw std::runtime_error("malformed synthetic edge '" + part + "'");
    spec.edges.push_back({index_of(spec.nodes, from), index_of(spec.actions, action),
                          index_of(spec.nodes, to), reward});
  }
  return spec;
}

std::string plan_actions_text(const Plan& p, const ActionDescription& d) {
  std::string out;
  for (const SymbolicTransition& t : p.transitions) {
    if (!out.empty()) out += ' ';
    out += d.actions.at(static_cast<std::size_t>(t.action));
  }
  return out;
}

namespace {

// Table of every reachable subtask with learned / in-final-plan marks.
void write_subtask_table(std::ostream& out, const ActionDescription& d,
                         SuccessTracker& tracker, const SymbolicState& initial,
                         const Plan& final_plan) {
  std::set<std::string> in_plan;
  for (const SymbolicTransition& t : final_plan.transitions)
    in_plan.insert(subtask_key(t, d));

  std::vector<std::pair<std::string, SymbolicTransition>> rows;
  std::set<SymbolicState> seen{initial};
  std::vector<SymbolicState> frontier{initial};
  while (!frontier.empty()) {
    SymbolicState s = std::move(frontier.back());
    frontier.pop_back();
    for (auto& [a, next] : successors(s, d)) {
      rows.emplace_back(subtask_key({s, a, next}, d), SymbolicTransition{s, a, next});
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  out << "key\tfrom\taction\tto\tlearned\tin_final_plan\n";
  for (const auto& [key, t] : rows) {
    bool learned = tracker.attempts(key) > 0 && tracker.ratio(key) >= 0.9;
    out << key << "\t" << d.state_text(t.from) << "\t"
        << d.actions.at(static_cast<std::size_t>(t.action)) << "\t" << d.state_text(t.to)
        << "\t" << (learned ? "yes" : "no") << "\t"
        << (in_plan.contains(key) ? "yes" : "no") << "\n";
  }
}

}  // namespace

RunReport run_experiment(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  RunReport report;
  fs::create_directories(cfg.out_dir);

  report.report_file = fs::path(cfg.out_dir) / "report.txt";
  std::ofstream summary(report.report_file);
  if (!summary) throw std::runtime_error("cannot write " + report.report_file.string());

  for (std::uint64_t seed : cfg.seeds) {
    fs::path seed_dir = fs::path(cfg.out_dir) / ("seed_" + std::to_string(seed));
    fs::create_directories(seed_dir);

    SeedResult seed_result;
    seed_result.seed = seed;
    seed_result.curve_file = seed_dir / "curve.csv";

    std::ofstream curve(seed_result.curve_file);
    curve << "episode,cumulative_env_reward,plan_quality,plan_length,terminated_flag\n";
    std::ofstream controller_log;
    if (cfg.log_controller) {
      controller_log.open(seed_dir / "controller_log.csv");
      controller_log << "episode,subtask_key,success,steps,env_reward_sum,success_ratio\n";
    }
    std::ofstream meta_log;
    if (cfg.log_meta) {
      meta_log.open(seed_dir / "meta_log.csv");
      meta_log << "episode,symbolic_state_hash,subtask_key,extrinsic_reward,R,rho_gain\n";
    }

    std::unique_ptr<Environment> env;
    std::shared_ptr<const ActionDescription> description;
    SymbolicState initial;
    TaxiEnv* taxi = nullptr;
    if (cfg.env == "taxi") {
      auto owned = std::make_unique<TaxiEnv>();
      taxi = owned.get();
      description = std::make_shared<const ActionDescription>(owned->description());
      initial = owned->initial_symbolic_state();
      env = std::move(owned);
    } else {
      SyntheticDomain synthetic = make_synthetic(parse_synthetic_spec(cfg));
      description = synthetic.description;
      initial = synthetic.state_of(0);
      env = std::move(synthetic.env);
    }

    SdrlLoop loop(*description, *env, initial, cfg.loop_config(),
                  cfg.controller_config(), cfg.meta_config(), seed);

    TaskSchedule schedule = cfg.schedule();
    int tasks = cfg.env == "taxi" ? schedule.num_tasks : 1;
    long episode = 0;
    for (int task = 1; task <= tasks; ++task) {
      if (taxi) taxi->set_dropoff_reward(schedule.dropoff_reward(task));
      loop.reset_convergence();
      bool stopped = false;
      for (long ep = 0; ep < cfg.episodes && !stopped; ++ep) {
        IterationReport r = loop.run_episode();
        curve << episode << "," << fmt(r.env_reward) << "," << fmt(r.quality) << ","
              << r.plan.size() << "," << (loop.converged() ? 1 : 0) << "\n";
        if (cfg.log_controller)
          for (const auto& a : loop.last_attempts())
            controller_log << episode << "," << a.key << "," << (a.success ? 1 : 0) << ","
                           << a.steps << "," << fmt(a.env_reward_sum) << ","
                           << fmt(a.ratio) << "\n";
        if (cfg.log_meta)
          for (const auto& a : loop.last_attempts()) {
            char hash_buf[32];
            std::snprintf(hash_buf, sizeof hash_buf, "%016llx",
                          static_cast<unsigned long long>(a.from_hash));
            meta_log << episode << "," << hash_buf << "," << a.key << ","
                     << fmt(a.extrinsic) << "," << fmt(a.r_value) << "," << fmt(a.gain)
                     << "\n";
          }
        ++episode;
        stopped = r.terminated;
      }

      SeedTaskResult tr;
      tr.task = task;
      tr.final_plan = loop.best_plan();
      tr.plan_actions = plan_actions_text(tr.final_plan, *description);
      tr.converged = loop.converged();
      tr.improving_at_cap = loop.improving_at_cap();
      seed_result.tasks.push_back(tr);

      fs::path plan_file =
          tasks > 1 ? seed_dir / ("final_plan_task_" + std::to_string(task) + ".txt")
                    : seed_dir / "final_plan.txt";
      std::ofstream pf(plan_file);
      pf << plan_to_text(tr.final_plan, *description,
                         plan_quality(tr.final_plan, loop.state().facts));
      if (stopped) break;
    }

    seed_result.subtask_file = seed_dir / "subtasks.txt";
    {
      std::ofstream st(seed_result.subtask_file);
      Plan last = seed_result.tasks.empty() ? Plan{} : seed_result.tasks.back().final_plan;
      write_subtask_table(st, *description, loop.tracker(), initial, last);
    }

    for (const SeedTaskResult& tr : seed_result.tasks)
      summary << "seed " << seed << " task " << tr.task << ": [" << tr.plan_actions
              << "] " << (tr.converged ? "converged" : "budget_exhausted")
              << (tr.improving_at_cap ? " quality_still_improving_at_cap" : "") << "\n";

    report.seeds.push_back(std::move(seed_result));
  }
  return report;
}

}  // namespace sdrl
