// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <iostream>

#include "cps/error.hpp"
#include "cps/scenario.hpp"

namespace {

struct Common {
  std::string config;
  std::string out;
  bool strict = false;
  std::optional<std::uint64_t> seed;
  std::vector<int> resolution;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "scenario file")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", c.out, "report path (stdout when omitted)");
  sub->add_flag("--strict", c.strict, "treat every task as strict and stop on the first error");
  sub->add_option("--seed", c.seed, "override the scenario seed");
  sub->add_option("--resolution-override", c.resolution,
                  "cells per refined axis, or one count per axis")
      ->expected(1, 4);
}

cps::RunOptions options(const Common& c, std::string category) {
  cps::RunOptions o;
  o.seed = c.seed;
  if (!c.resolution.empty()) o.resolution = c.resolution;
  o.strict = c.strict;
  o.category = std::move(category);
  return o;
}

void emit(const cps::Json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw cps::ConfigError("cannot write report to '" + out + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cps: covariant phase space checks on lattice fields"};
  app.require_subcommand(1);

  Common common;
  std::string directory = "scenarios";
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"check", "identity"}, {"charge", "charge"}, {"bracket", "bracket"},
      {"dress", "dress"},    {"komar", "komar"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, category] : runs) {
    subs[name] = app.add_subcommand(name, "run the " + category + " tasks of a scenario");
    add_common(subs[name], common);
  }
  CLI::App* converge = app.add_subcommand("converge", "refinement study over refine.ladder");
  add_common(converge, common);
  CLI::App* list = app.add_subcommand("list-scenarios", "list bundled scenario files");
  list->add_option("--dir", directory, "scenario directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& s : cps::list_scenarios(directory))
        std::cout << s.file << "\t" << s.name << "\t" << s.description << "\n";
      return 0;
    }
    cps::Json report;
    if (converge->parsed()) {
      report = cps::convergence_study(common.config, options(common, ""));
    } else {
      for (const auto& [name, category] : runs)
        if (subs[name]->parsed())
          report = cps::run_scenario(common.config, options(common, category));
    }
    emit(report, common.out);
    return cps::strict_tasks_pass(report) ? 0 : 1;
  } catch (const cps::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
