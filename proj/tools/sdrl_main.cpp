#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sdrl/oracle.hpp"
#include "sdrl/run_config.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_validate(const std::string& path) {
  sdrl::ActionDescription d = sdrl::parse_action_description(read_file(path));
  std::vector<sdrl::Diagnostic> diags = sdrl::validate(d);
  for (const sdrl::Diagnostic& diag : diags) {
    std::cout << path << ": " << diag.message;
    if (diag.law >= 0) std::cout << " (law " << diag.law << ")";
    std::cout << "\n";
  }
  if (diags.empty()) {
    std::cout << path << ": ok (" << d.fluents.size() << " fluents, " << d.actions.size()
              << " actions, " << d.laws.size() << " laws)\n";
    return 0;
  }
  return 1;
}

sdrl::RhoTable load_rho(const sdrl::ActionDescription& d, const std::string& path,
                        double inf_default) {
  sdrl::RhoTable rho(inf_default);
  if (path.empty()) return rho;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open rho facts file " + path);
  // One fact per line: <action> <value> if <atoms...>
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto comment = line.find_first_of("#%");
    if (comment != std::string::npos) line = line.substr(0, comment);
    std::istringstream ls(line);
    std::string action;
    double value;
    if (!(ls >> action >> value)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw std::runtime_error("rho facts line " + std::to_string(line_no) +
                               ": expected '<action> <value> if <atoms>'");
    }
    std::string kw;
    if (!(ls >> kw) || kw != "if")
      throw std::runtime_error("rho facts line " + std::to_string(line_no) +
                               ": expected 'if'");
    std::string rest;
    std::getline(ls, rest);
    int a = d.action_index(action);
    if (a < 0) throw std::runtime_error("unknown action '" + action + "' in rho facts");
    sdrl::SymbolicState s = sdrl::complete_state(d, sdrl::parse_atoms(d, rest));
    rho.set(s, a, value);
  }
  return rho;
}

int cmd_plan(const std::string& path, const std::string& from, int max_len,
             double inf_default, double threshold, const std::string& rho_path) {
  sdrl::ActionDescription d = sdrl::parse_action_description(read_file(path));
  sdrl::SymbolicState initial = sdrl::complete_state(d, sdrl::parse_atoms(d, from));
  sdrl::RhoTable rho = load_rho(d, rho_path, inf_default);
  std::optional<sdrl::Plan> plan =
      sdrl::find_plan(initial, sdrl::IntrinsicGoal{threshold}, d, rho, max_len);
  if (!plan) {
    std::cout << "no plan with quality > " << threshold << " within " << max_len
              << " steps\n";
    return 1;
  }
  std::cout << sdrl::plan_to_text(*plan, d, sdrl::plan_quality(*plan, rho));
  return 0;
}

int cmd_oracle(const std::string& path, const std::string& from, int max_len,
               const std::string& rho_path, double inf_default) {
  sdrl::ActionDescription d = sdrl::parse_action_description(read_file(path));
  sdrl::SymbolicState initial = sdrl::complete_state(d, sdrl::parse_atoms(d, from));
  sdrl::PlanSet ps = sdrl::enumerate_plans(initial, d, max_len);
  // Reward table from the rho facts file (default 0 for unlisted transitions).
  sdrl::RewardTable table;
  if (!rho_path.empty()) {
    sdrl::RhoTable rho = load_rho(d, rho_path, inf_default);
    for (const auto& [key, value] : rho.facts()) table[key] = value;
  }
  auto [best, total] = sdrl::brute_force_optimal(ps, table);
  std::cout << "plans " << ps.plans.size() << "\n";
  std::cout << "positive_loop "
            << (sdrl::detect_positive_loop(d, initial, table) ? "yes" : "no") << "\n";
  std::cout << "best_total " << total << "\n";
  std::cout << sdrl::plan_to_text(best, d, total);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic planner + hierarchical RL experiment runner"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  CLI::App* run = app.add_subcommand("run", "run the full planning/learning experiment");
  run->add_option("--config", config_path, "run configuration file")->required();
  run->add_option("--out", out_dir, "output directory override");

  std::string desc_path, from_atoms = "", rho_path = "";
  int max_len = 8;
  double inf_default = 10.0, threshold = -1e18;
  CLI::App* plan = app.add_subcommand("plan", "one-shot plan search on a description");
  plan->add_option("description", desc_path, "action description file")->required();
  plan->add_option("--from", from_atoms, "initial atoms, e.g. \"loc=mp\"")->required();
  plan->add_option("--max-len", max_len, "maximum plan length");
  plan->add_option("--inf", inf_default, "optimistic default gain reward");
  plan->add_option("--threshold", threshold, "strict quality lower bound");
  plan->add_option("--rho", rho_path, "gain-reward facts file");

  std::string vdesc_path;
  CLI::App* validate = app.add_subcommand("validate", "check an action description");
  validate->add_option("description", vdesc_path, "action description file")->required();

  std::string odesc_path, ofrom = "", orho = "";
  int omax_len = 6;
  CLI::App* oracle = app.add_subcommand("oracle", "brute-force plan report");
  oracle->add_option("description", odesc_path, "action description file")->required();
  oracle->add_option("--from", ofrom, "initial atoms")->required();
  oracle->add_option("--max-len", omax_len, "maximum plan length");
  oracle->add_option("--rho", orho, "extrinsic reward table file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      sdrl::RunConfig cfg = sdrl::load_run_config(config_path);
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      sdrl::RunReport report = sdrl::run_experiment(cfg);
      std::cout << "report: " << report.report_file.string() << "\n";
      for (const sdrl::SeedResult& s : report.seeds)
        std::cout << "seed " << s.seed << ": " << s.curve_file.string() << "\n";
      return 0;
    }
    if (plan->parsed())
      return cmd_plan(desc_path, from_atoms, max_len, inf_default, threshold, rho_path);
    if (validate->parsed()) return cmd_validate(vdesc_path);
    if (oracle->parsed()) return cmd_oracle(odesc_path, ofrom, omax_len, orho, inf_default);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
