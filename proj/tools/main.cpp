#include "cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace dioph::cli;
  CLI::App app{"Exact nullspace lattices of integer matrices"};
  app.require_subcommand(1);

  Options opts;
  std::string file, method = "direct";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("FILE", file, "matrix file (text or JSON)")->required();
    sub->add_flag("--json", opts.json, "machine-readable output");
    sub->add_option("--seed", opts.seed, "seed for randomized searches");
  };
  auto* reduce = app.add_subcommand("reduce", "reduced matrix (d I | K) and permutation");
  auto* structure = app.add_subcommand("structure", "module structure of S/M and U/S");
  auto* solve = app.add_subcommand("solve", "basis of the nullspace");
  for (auto* sub : {reduce, structure, solve})
    add_common(sub);
  structure->add_flag("--verify", opts.verify, "check against the oracle and brute force");
  solve->add_flag("--verify", opts.verify, "check the basis against the oracle");
  solve->add_option("--method", method, "direct|snf|lift-inv|lift-elem|lift-prime|prime-d")
      ->check(CLI::IsMember({"direct", "snf", "lift-inv", "lift-elem", "lift-prime", "prime-d"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  opts.command = reduce->parsed() ? Command::reduce : structure->parsed() ? Command::structure : Command::solve;
  opts.method = *parse_method(method);
  try {
    opts.brute_bound = brute_bound_from_env();
  } catch (const dioph::ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  }
  return run_file(opts, file, std::cout, std::cerr);
}
