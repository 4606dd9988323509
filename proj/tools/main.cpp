#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "unimodal/errors.hpp"

namespace {

struct Flags {
  std::string config_file;
  std::string param, preset, cover, out;
  double ell = 0, tol = 0;
  long K = 0, n_max = 0, n_orbit = 0, depth = 0, r0 = 0, t0 = 0;
  long budget_iterate = 0, budget_transition = 0, budget_branch = 0;
  long precision_start = 0, precision_max = 0;
  bool bisect = false;
  std::vector<long> target_S, alpha;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config_file, "key = value run file; flags override its entries");
  app->add_option("--param", f.param, "parameter a (decimal or hex float)");
  app->add_option("--ell", f.ell, "critical order, > 1");
  app->add_option("--preset", f.preset, "fibonacci | feigenbaum | wild | chebyshev");
  app->add_option("--budget-iterate", f.budget_iterate, "iterate budget");
  app->add_option("--budget-transition", f.budget_transition, "largest transition time scanned for children");
  app->add_option("--budget-branch", f.budget_branch, "monotone branch budget");
  app->add_option("--precision-start", f.precision_start, "initial working precision in bits");
  app->add_option("--precision-max", f.precision_max, "precision cap in bits");
  app->add_option("--out", f.out, "output path (prefix for complexity)");
}

}  // namespace

int main(int argc, char** argv) {
  using unimodal::RunConfig;
  CLI::App app{"Combinatorial invariants of the unimodal family a(1 - |2x - 1|^l)"};
  app.require_subcommand(1);
  Flags f;

  auto* kneading = app.add_subcommand("kneading", "itinerary, cutting times and kneading map");
  add_common(kneading, f);
  kneading->add_option("-K,--cutting-times", f.K, "number of cutting times after S_0");

  auto* bisect = app.add_subcommand("bisect", "parameter search for a cutting-time target");
  add_common(bisect, f);
  bisect->add_option("--target-S", f.target_S, "cutting times S_0, S_1, ...");
  bisect->add_option("--tol", f.tol, "bracket width");

  auto* complexity = app.add_subcommand("complexity", "q(n), p(n), essential orders and checks");
  add_common(complexity, f);
  complexity->add_option("--n-max", f.n_max, "largest n");
  complexity->add_option("--orbit", f.n_orbit, "critical-orbit sample length");
  complexity->add_option("--cover", f.cover, "seed | nest:<k> | renorm:<k>");

  auto* nest = app.add_subcommand("nest", "principal nest of the seed interval");
  add_common(nest, f);
  nest->add_option("--depth", f.depth, "number of levels");

  auto* wild = app.add_subcommand("wild-verify", "checks for the wild adding-machine combinatorics");
  add_common(wild, f);
  wild->add_option("-K,--cutting-times", f.K, "recursion length");
  wild->add_option("--r0", f.r0, "initial return time of c");
  wild->add_option("--t0", f.t0, "initial return time of R(c)");
  wild->add_flag("--bisect", f.bisect, "search the parameter at --ell before the geometric checks");
  wild->add_option("--depth", f.depth, "nest depth for the return-time comparison");
  wild->add_option("--orbit", f.n_orbit, "critical-orbit sample length for the covers");
  wild->add_option("--tol", f.tol, "bracket width for --bisect");

  auto* odometer = app.add_subcommand("odometer", "adding-machine period and bijection checks");
  add_common(odometer, f);
  odometer->add_option("--alpha", f.alpha, "digit bases p_1 p_2 ...")->expected(1, -1);

  auto* show = app.add_subcommand("config", "print the resolved run file instead of running");
  show->add_option("--config", f.config_file, "run file")->required();

  CLI11_PARSE(app, argc, argv);

  CLI::App* sub = app.get_subcommands().front();
  RunConfig cfg;
  try {
    if (!f.config_file.empty()) cfg = RunConfig::load(f.config_file);
  } catch (const unimodal::Error& e) {
    std::cerr << "error [config]: " << e.what() << '\n';
    return unimodal::exit_code(e.kind());
  }
  if (sub->get_name() == "config") {
    std::cout << cfg.serialize();
    return 0;
  }
  cfg.command = sub->get_name();
  auto set = [&](const char* flag, auto& field, const auto& value) {
    if (auto* opt = sub->get_option_no_throw(flag); opt && opt->count() > 0) field = value;
  };
  set("--param", cfg.param, f.param);
  set("--ell", cfg.ell, f.ell);
  set("--preset", cfg.preset, f.preset);
  set("--cover", cfg.cover, f.cover);
  set("--out", cfg.out, f.out);
  set("--tol", cfg.tol, f.tol);
  set("--cutting-times", cfg.cutting_times, f.K);
  set("--n-max", cfg.n_max, f.n_max);
  set("--orbit", cfg.n_orbit, f.n_orbit);
  set("--depth", cfg.depth, f.depth);
  set("--r0", cfg.r0, f.r0);
  set("--t0", cfg.t0, f.t0);
  set("--budget-iterate", cfg.budget_iterate, f.budget_iterate);
  set("--budget-transition", cfg.budget_transition, f.budget_transition);
  set("--budget-branch", cfg.budget_branch, f.budget_branch);
  set("--precision-start", cfg.precision_start, f.precision_start);
  set("--precision-max", cfg.precision_max, f.precision_max);
  set("--target-S", cfg.target_S, f.target_S);
  set("--alpha", cfg.alpha, f.alpha);
  if (f.bisect) cfg.bisect = true;
  return unimodal::cli::run(cfg, std::cout);
}
