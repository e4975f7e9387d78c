#include "cli.hpp"

#include "qpalg/rational.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

const char* const kCommands[] = {"jacobi",    "class",     "saito",  "mycompare",          "ginzburg-build",
                                 "ginzburg-homology", "verify-s", "pagoda", "findim-fingerprint", "frobenius",
                                 "milnor",    "tyurina",   "kg",     "hh",                 "dw-check",
                                 "corpus"};

void emit(const nlohmann::json& report, bool table) {
  if (table)
    std::cout << qpalg::cli::render_table(report);
  else
    std::cout << report.dump(2) << '\n';
}

} // namespace

int main(int argc, char** argv) {
  using namespace qpalg::cli;
  CLI::App app{"qpalg: quivers with potential, Ginzburg algebras and hypersurface invariants"};
  app.require_subcommand(1);

  JobSpec job;
  std::string degrees = "-8..0";
  bool json = false;
  for (const char* name : kCommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("inputs", job.inputs, "input files (.qp, .poly, .json) or a corpus directory");
    sub->add_option("--n", job.truncation, "truncation length N");
    sub->add_option("--degrees", degrees, "homology degree window <lo>..<hi> within [-24, 0]");
    sub->add_option("--seed", job.seed, "seed for randomized steps");
    sub->add_option("--width", job.width, "n for pagoda / dw-check");
    sub->add_option("--r", job.r, "Hochschild degree for hh");
    sub->add_flag("--json", json, "JSON output (default)");
    sub->add_flag("--table", job.table, "plain-text table output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  job.command = app.get_subcommands().front()->get_name();
  if (json && job.table) {
    std::cerr << "error: --json and --table are exclusive\n";
    return kInputError;
  }

  try {
    std::tie(job.degree_lo, job.degree_hi) = parse_degrees(degrees);
    const Outcome o = run(job);
    emit(o.report, job.table);
    return o.exit_code;
  } catch (const qpalg::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    emit({{"command", job.command}, {"status", "input-error"}, {"error", e.what()}}, job.table);
    return kInputError;
  } catch (const qpalg::RefusalError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    emit({{"command", job.command}, {"status", "refused"}, {"reason", e.what()}}, job.table);
    return kRefused;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
}
