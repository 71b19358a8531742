#include "probemax/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "probemax/bench.hpp"
#include "probemax/error.hpp"
#include "probemax/gap2.hpp"
#include "probemax/gap_continuous.hpp"
#include "probemax/generator.hpp"
#include "probemax/instance_file.hpp"
#include "probemax/minmax_bound.hpp"
#include "probemax/oracles.hpp"
#include "probemax/policy_eval.hpp"

namespace probemax {

namespace {

struct Options {
  std::string file;
  double epsilon = kDefaultEpsilon;
  std::size_t trials = 1000000;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string order;
  std::optional<double> threshold;
  unsigned threads = 0;

  std::size_t gen_n = 0;
  std::size_t gen_k = 0;
  std::string family = "discrete";

  BenchSpec bench;
};

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line + '\n';
}

std::string order_string(const std::vector<std::size_t>& order) {
  std::string s;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(order[i] + 1);
  }
  return s;
}

// "2,1,3" (one-based) to zero-based indices; range checks happen later.
std::vector<std::size_t> parse_order(const std::string& text) {
  std::vector<std::size_t> order;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    std::size_t value = 0;
    const auto res = std::from_chars(text.data() + start, text.data() + end, value);
    if (res.ec != std::errc() || res.ptr != text.data() + end || value == 0) {
      throw ProbeError(ErrorCode::kInvalidArgument,
                       "--order expects one-based indices separated by commas, got '" + text + "'");
    }
    order.push_back(value - 1);
    start = end + 1;
  }
  return order;
}

std::vector<std::size_t> order_or_all(const Options& opt, const Instance& inst) {
  return opt.order.empty() ? full_set(inst.n()) : parse_order(opt.order);
}

ThresholdPolicy policy_from(const Options& opt, const Instance& inst) {
  const std::vector<std::size_t> order = order_or_all(opt, inst);
  validate_index_set(inst, normalized(order));
  if (normalized(order).size() != order.size()) {
    throw ProbeError(ErrorCode::kIndexOutOfRange, "--order repeats an index");
  }
  const double threshold = opt.threshold ? *opt.threshold : rho(inst, normalized(order));
  return make_policy(inst, order, threshold);
}

std::string cmd_bound(const Options& opt) {
  const Instance inst = read_instance_file(opt.file);
  const BoundResult b = narrow_interval(inst, opt.epsilon);
  return join({"r_minus", "r_plus", "r_hat", "u_star", "xi", "iterations"}) +
         join({format_double(b.r_minus), format_double(b.r_plus), format_double(b.r_hat),
               format_double(b.u_star), format_double(b.xi), std::to_string(b.iterations)});
}

std::string cmd_gap2(const Options& opt) {
  const Instance inst = read_instance_file(opt.file);
  const Gap2Result g = select_gap2_set(inst, opt.epsilon);
  const PolicyStats stats = evaluate(gap2_policy(inst, g));
  return join({"chosen", "threshold", "s_tilde_plus", "rho_plus", "s_tilde_minus", "rho_minus",
               "u_star", "epsilon", "expected_reward"}) +
         join({format_set(g.chosen), format_double(g.threshold), format_set(g.s_tilde_plus),
               format_double(g.rho_plus), format_set(g.s_tilde_minus),
               format_double(g.rho_minus), format_double(g.bound.u_star),
               format_double(g.epsilon), format_double(stats.expected_reward)});
}

std::string cmd_gap_cont(const Options& opt) {
  const Instance inst = read_instance_file(opt.file);
  const ContinuousResult c = run_gap_continuous(inst);
  const PsiSolution& sol = c.solution;
  std::vector<std::size_t> order;
  for (const VariableRef& ref : c.policy.entries) {
    if (const auto* plain = std::get_if<PlainEntry>(&ref)) {
      order.push_back(plain->index);
    } else {
      order.push_back(std::get<MixtureEntry>(ref).ell);
    }
  }
  const std::string ell = sol.frac_pair ? std::to_string(sol.frac_pair->ell + 1) : "";
  const std::string m = sol.frac_pair ? std::to_string(sol.frac_pair->m + 1) : "";
  return join({"r_star", "u_star", "s_minus", "s_plus", "alpha", "frac_ell", "frac_m",
               "policy_order", "expected_reward", "expected_B", "prob_stop", "expected_sum",
               "expected_excess", "derandomized_set", "derandomized_order",
               "derandomized_reward"}) +
         join({format_double(sol.r_star), format_double(c.bound.u_star), format_set(sol.s_minus),
               format_set(sol.s_plus), format_double(sol.alpha), ell, m, order_string(order),
               format_double(c.stats.expected_reward), format_double(c.stats.expected_B),
               format_double(c.stats.prob_stop), format_double(c.stats.expected_sum),
               format_double(c.stats.expected_excess), format_set(c.derandomized.set),
               order_string(c.derandomized.order),
               format_double(c.derandomized.expected_reward)});
}

std::string cmd_oracle(const Options& opt) {
  const Instance inst = read_instance_file(opt.file);
  require_positive_mu_max(inst);
  OracleLimits limits;
  limits.mc_trials = opt.trials;
  limits.mc_seed = opt.seed;
  const std::string a_star =
      inst.all_discrete() ? format_double(adaptive_optimum_dp(inst, limits)) : "";
  const StaticOptimum s = static_optimum_enum(inst, limits);
  const BoundResult b = minimize_hmax(inst, ContinuousOptions{}.xi_factor * inst.mu_max());
  return join({"a_star", "s_star", "s_star_set", "u_star"}) +
         join({a_star, format_double(s.value), format_set(s.argmax), format_double(b.u_star)});
}

std::string cmd_eval(const Options& opt) {
  const Instance inst = read_instance_file(opt.file);
  const ThresholdPolicy policy = policy_from(opt, inst);
  const PolicyStats s = evaluate(policy);
  return join({"order", "threshold", "expected_reward", "expected_B", "prob_stop",
               "expected_sum", "expected_excess"}) +
         join({order_string(order_or_all(opt, inst)), format_double(policy.threshold),
               format_double(s.expected_reward), format_double(s.expected_B),
               format_double(s.prob_stop), format_double(s.expected_sum),
               format_double(s.expected_excess)});
}

std::string cmd_simulate(const Options& opt) {
  const Instance inst = read_instance_file(opt.file);
  const ThresholdPolicy policy = policy_from(opt, inst);
  if (opt.trials == 0) throw ProbeError(ErrorCode::kInvalidArgument, "--trials must be positive");
  const SimulationResult r = simulate(policy, opt.trials, opt.seed, opt.threads);
  return join({"order", "threshold", "trials", "seed", "mean_reward", "stderr_reward",
               "mean_max", "stderr_max"}) +
         join({order_string(order_or_all(opt, inst)), format_double(policy.threshold),
               std::to_string(r.trials), std::to_string(opt.seed), format_double(r.mean_reward),
               format_double(r.stderr_reward), format_double(r.mean_max),
               format_double(r.stderr_max)});
}

Family family_from(const std::string& name) {
  const std::optional<Family> family = parse_family(name);
  if (!family) {
    throw ProbeError(ErrorCode::kInvalidArgument, "unknown family '" + name + "'");
  }
  return *family;
}

std::string cmd_gen(const Options& opt) {
  return emit_instance(generate_instance(opt.gen_n, opt.gen_k, family_from(opt.family), opt.seed));
}

std::string cmd_bench(Options opt) {
  opt.bench.family = family_from(opt.family);
  opt.bench.epsilon = opt.epsilon;
  opt.bench.trials = opt.trials;
  opt.bench.seed = opt.seed;
  opt.bench.threads = opt.threads;
  std::ostringstream csv;
  write_bench_csv(csv, run_bench(opt.bench), opt.bench.timing);
  return csv.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probe-set selection with adaptive-optimum bounds", "probemax"};
  app.require_subcommand(1);
  Options opt;
  std::function<std::string()> command;

  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", opt.file, "Instance file")->required();
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out_path, "Write the result here instead of stdout");
  };
  auto add_policy = [&](CLI::App* sub) {
    sub->add_option("--order", opt.order, "Inspection order, one-based, comma separated");
    sub->add_option("--threshold", opt.threshold, "Stopping threshold (default: rho of the set)");
  };

  CLI::App* bound = app.add_subcommand("bound", "Min-max bound and its minimizer bracket");
  add_file(bound);
  bound->add_option("--epsilon", opt.epsilon, "Accuracy parameter in (0,1)");
  add_out(bound);
  bound->callback([&] { command = [&] { return cmd_bound(opt); }; });

  CLI::App* gap2 = app.add_subcommand("gap2", "Gap-2 probe set and its threshold");
  add_file(gap2);
  gap2->add_option("--epsilon", opt.epsilon, "Accuracy parameter in (0,1)");
  add_out(gap2);
  gap2->callback([&] { command = [&] { return cmd_gap2(opt); }; });

  CLI::App* gap_cont = app.add_subcommand("gap-cont", "Free-order policy for continuous instances");
  add_file(gap_cont);
  add_out(gap_cont);
  gap_cont->callback([&] { command = [&] { return cmd_gap_cont(opt); }; });

  CLI::App* oracle = app.add_subcommand("oracle", "Adaptive and static optima by brute force");
  add_file(oracle);
  oracle->add_option("--trials", opt.trials, "Monte-Carlo trials for continuous instances");
  oracle->add_option("--seed", opt.seed, "Random seed");
  add_out(oracle);
  oracle->callback([&] { command = [&] { return cmd_oracle(opt); }; });

  CLI::App* eval = app.add_subcommand("eval", "Closed-form statistics of a threshold policy");
  add_file(eval);
  add_policy(eval);
  add_out(eval);
  eval->callback([&] { command = [&] { return cmd_eval(opt); }; });

  CLI::App* sim = app.add_subcommand("simulate", "Monte-Carlo evaluation of a threshold policy");
  add_file(sim);
  add_policy(sim);
  sim->add_option("--trials", opt.trials, "Number of trials");
  sim->add_option("--seed", opt.seed, "Random seed");
  sim->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
  add_out(sim);
  sim->callback([&] { command = [&] { return cmd_simulate(opt); }; });

  CLI::App* gen = app.add_subcommand("gen", "Write a random instance file");
  gen->add_option("--n", opt.gen_n, "Number of variables")->required();
  gen->add_option("--k", opt.gen_k, "Probing budget")->required();
  gen->add_option("--family", opt.family,
                  "discrete, uniform, exponential, mixed or uniform01");
  gen->add_option("--seed", opt.seed, "Random seed");
  add_out(gen);
  gen->callback([&] { command = [&] { return cmd_gen(opt); }; });

  CLI::App* bench = app.add_subcommand("bench", "Run a seeded suite and report CSV");
  bench->add_option("--family", opt.family,
                    "discrete, uniform, exponential, mixed or uniform01");
  bench->add_option("--count", opt.bench.count, "Number of instances");
  bench->add_option("--n-min", opt.bench.n_min, "Smallest n");
  bench->add_option("--n-max", opt.bench.n_max, "Largest n");
  bench->add_flag("--k-eq-n", opt.bench.k_eq_n, "Use k = n instead of a random k");
  bench->add_option("--epsilon", opt.epsilon, "Accuracy parameter in (0,1)");
  bench->add_option("--trials", opt.trials, "Monte-Carlo trials per continuous set");
  bench->add_option("--seed", opt.seed, "Suite seed");
  bench->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
  bench->add_flag("--timing", opt.bench.timing, "Add a runtime_ms column");
  add_out(bench);
  bench->callback([&] { command = [&] { return cmd_bench(opt); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    const std::string result = command();
    if (opt.out_path.empty()) {
      out << result;
    } else {
      std::ofstream file(opt.out_path, std::ios::binary);
      if (!file || !(file << result)) {
        err << "error: cannot write '" << opt.out_path << "'\n";
        return kExitValidation;
      }
    }
    return kExitOk;
  } catch (const ProbeError& e) {
    err << "error: " << e.what() << '\n';
    return is_internal(e.code()) ? kExitInternal : kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace probemax
