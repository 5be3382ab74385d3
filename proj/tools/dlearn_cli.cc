// dlearn: learn | hardness | serve

#include <csignal>
#include <iostream>
#include <pthread.h>

#include "CLI11.hpp"

#include "dlearn/hardness.h"
#include "dlearn/harness.h"
#include "dlearn/service.h"

namespace {

using namespace dlearn;

struct LearnArgs {
  std::string framework;
  std::string learner;
  std::string target;
  std::string gen;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::string eq_strategy = "first-smallest";
  std::size_t max_queries = 0;
  std::size_t max_size = LearnerCaps{}.max_size;
  std::size_t depth_cap = LearnerCaps{}.depth_cap;
  std::string out;
};

int RunLearn(const LearnArgs& a) {
  ExperimentConfig cfg;
  cfg.framework = ParseFragmentId(a.framework);
  cfg.learner = a.learner;
  cfg.eq_strategy = ParseEqStrategy(a.eq_strategy);
  cfg.seed = a.seed;
  if (!a.target.empty()) cfg.target_path = a.target;
  if (!a.gen.empty()) cfg.generator = ParseGeneratorSpec(a.gen, cfg.framework, a.seed);
  if (a.epsilon.has_value() != a.delta.has_value()) throw ConfigError("--epsilon and --delta go together");
  if (a.epsilon) cfg.pac = PacParams{*a.epsilon, *a.delta};
  if (cfg.pac && !IsPacLearner(cfg.learner)) throw ConfigError("--epsilon/--delta need a pac(...) learner");
  cfg.max_queries = a.max_queries;
  cfg.caps = LearnerCaps{a.max_size, a.depth_cap};
  cfg.out_dir = a.out;
  ExperimentResult r = RunExperiment(cfg);
  std::cout << SummaryCsvHeader() << "\n" << SummaryCsvRow(cfg, r) << "\n";
  for (const auto& w : r.metrics.budget_warnings) std::cerr << "warning: " << w << "\n";
  bool ok = r.metrics.success.value_or(false) || (IsPacLearner(cfg.learner) && r.hypothesis);
  return ok ? 0 : 1;
}

int RunHardnessCmd(int n, const std::string& learner, std::uint64_t seed, std::size_t max_queries) {
  std::vector<std::string> ids = learner == "all" ? HardnessLearnerIds() : std::vector<std::string>{learner};
  std::cout << HardnessResult::CsvHeader() << "\n";
  for (const auto& id : ids) {
    auto r = RunHardness(n, id, seed, max_queries ? std::optional(max_queries) : std::nullopt);
    std::cout << r.CsvRow() << std::endl;
  }
  return 0;
}

int RunServe(const std::string& bind, const std::string& out) {
  auto [host, port] = ParseBindAddress(bind);
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);
  ServiceOptions options;
  if (!out.empty()) options.out_dir = out;
  SessionService service(options);
  int bound = service.Start(host, port);
  std::cerr << "serving on " << host << ":" << bound << std::endl;
  int sig = 0;
  sigwait(&stop_signals, &sig);
  service.Stop();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ELH learning laboratory"};
  app.require_subcommand(1);

  LearnArgs learn;
  auto* learn_cmd = app.add_subcommand("learn", "run one learner against a truthful teacher");
  learn_cmd->add_option("--framework", learn.framework, "toy-atomic|toy-conj|dllite|elh|elh-iq")->required();
  learn_cmd->add_option("--learner", learn.learner, "toy-mq|horn-mqeq|dllite-mq|dllite-eq|elh-enum-eq|pac(L)")->required();
  auto* target = learn_cmd->add_option("--target", learn.target, "target TBox file");
  auto* gen = learn_cmd->add_option("--gen", learn.gen, "generator spec sig=N,axioms=K[,depth=D][,roles=R][,size=S]");
  target->excludes(gen);
  gen->excludes(target);
  learn_cmd->add_option("--seed", learn.seed)->required();
  learn_cmd->add_option("--epsilon", learn.epsilon);
  learn_cmd->add_option("--delta", learn.delta);
  learn_cmd->add_option("--eq-strategy", learn.eq_strategy, "first-smallest|random-seeded|adversarial-largest");
  learn_cmd->add_option("--max-queries", learn.max_queries, "0 = unbounded");
  learn_cmd->add_option("--max-size", learn.max_size, "elh-enum-eq hypothesis size cap");
  learn_cmd->add_option("--depth-cap", learn.depth_cap, "elh-enum-eq existential depth cap");
  learn_cmd->add_option("--out", learn.out, "report directory")->required();

  int n = 0;
  std::string hardness_learner;
  std::uint64_t hardness_seed = 0;
  std::size_t hardness_cap = 0;
  auto* hardness_cmd = app.add_subcommand("hardness", "run an MQ learner against the adversary on T_sigma");
  hardness_cmd->add_option("--n", n)->required();
  hardness_cmd->add_option("--learner", hardness_learner, "toy-mq|sigma-scan|conj-mq|random-mq|halt-immediately|all")
      ->required();
  hardness_cmd->add_option("--seed", hardness_seed);
  hardness_cmd->add_option("--max-queries", hardness_cap, "0 = 2^(n+1)");

  std::string bind;
  std::string serve_out;
  auto* serve_cmd = app.add_subcommand("serve", "serve interactive sessions over HTTP");
  serve_cmd->add_option("--bind", bind, "HOST:PORT")->required();
  serve_cmd->add_option("--out", serve_out, "directory for halted session transcripts");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*learn_cmd) {
      if (learn.target.empty() == learn.gen.empty()) throw ConfigError("give one of --target and --gen");
      return RunLearn(learn);
    }
    if (*hardness_cmd) return RunHardnessCmd(n, hardness_learner, hardness_seed, hardness_cap);
    return RunServe(bind, serve_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
