// Command-line front end: mtdm run <problem.json> [flags], mtdm validate <problem.json>.
// Exit codes: 0 success, 1 invalid input, 2 inconsistency or solver failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "mtdm/error.hpp"
#include "mtdm/kernels.hpp"
#include "mtdm/problem_file.hpp"
#include "mtdm/report.hpp"

namespace {

std::vector<double> parse_deltas(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw mtdm::InputError("--delta: '" + item + "' is not a number");
    out.push_back(d);
  }
  if (out.empty()) throw mtdm::InputError("--delta needs 'auto' or a comma-separated list");
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mtdm::InputError("cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dominance and choice sets for multi-target decision problems under credal sets"};
  app.require_subcommand(1);

  std::string file;
  std::string delta_arg;
  std::string report_path;
  std::string dot_dir;
  mtdm::RunOptions opts;

  auto* run = app.add_subcommand("run", "Compute delta_max, dominance relations and choice sets");
  run->add_option("problem", file, "Problem file (JSON)")->required();
  run->add_option("--delta", delta_arg, "Comma-separated deltas or 'auto'");
  run->add_option("--report", report_path, "Write the JSON report here ('-' for stdout)");
  run->add_option("--dot", dot_dir, "Write one Hasse diagram per delta into this directory");
  run->add_option("--epsilon-opt", opts.eps_opt, "Tolerance on the LP optimal value")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--oracle", opts.oracle_samples, "Cross-check with this many utility samples");
  run->add_option("--seed", opts.seed, "Seed for the oracle sampler");
  run->add_option("--threads", opts.threads, "Worker threads for pair evaluation (0 = all)");

  auto* validate = app.add_subcommand("validate", "Parse and validate a problem file");
  validate->add_option("problem", file, "Problem file (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const auto pf = mtdm::load_problem(file);
    if (*validate) {
      (void)mtdm::to_mtdp(pf);
      (void)mtdm::to_credal_set(pf);
      std::cout << "ok: " << pf.action_names.size() << " actions, " << pf.states.size()
                << " states\n";
      return 0;
    }
    if (!delta_arg.empty()) {
      if (delta_arg == "auto")
        opts.deltas_auto = true;
      else
        opts.deltas = parse_deltas(delta_arg);
    }
    const auto rep = mtdm::run(pf, opts);
    const auto json = mtdm::report_json(rep);
    if (report_path == "-")
      std::cout << json;
    else
      std::cout << mtdm::report_text(rep);
    if (!report_path.empty() && report_path != "-") write_file(report_path, json);
    if (!dot_dir.empty()) {
      std::filesystem::create_directories(dot_dir);
      for (const auto& dr : rep.per_delta)
        write_file(std::filesystem::path(dot_dir) / mtdm::dot_file_name(dr.delta),
                   mtdm::emit_dot(dr.relation));
    }
    return 0;
  } catch (const mtdm::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const mtdm::EnumerationLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
