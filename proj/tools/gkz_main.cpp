#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gkz/cli.hpp"

namespace {

gkz::RatVec parse_list(const std::string& text, const std::string& flag) {
  gkz::RatVec out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(gkz::parse_rational(item));
    } catch (const std::exception&) {
      throw gkz::ParseError(flag + ": '" + item + "' is not a rational");
    }
  }
  if (out.empty()) throw gkz::ParseError(flag + ": empty list");
  return out;
}

gkz::Json read_input(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw gkz::ParseError("cannot read input file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return gkz::Json::parse(text);
  } catch (const gkz::Json::parse_error& e) {
    throw gkz::ParseError(std::string("input is not valid JSON: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact GKZ A-hypergeometric systems"};
  std::string verb, input = "-", format = "human", heights, rho;
  std::optional<int> truncation, eps_order;
  std::optional<std::uint64_t> seed;
  app.add_option("command", verb, "analyze | triangulate | series | logbasis | verify | contiguity | restrict")
      ->required()
      ->check(CLI::IsMember(gkz::command_names()));
  app.add_option("--input", input, "job or report file (JSON); '-' reads stdin");
  app.add_option("--truncation", truncation, "series truncation degree (default 8)")->check(CLI::NonNegativeNumber);
  app.add_option("--eps-order", eps_order, "order of the epsilon expansion for log series")->check(CLI::NonNegativeNumber);
  app.add_option("--heights", heights, "comma-separated lifting heights");
  app.add_option("--rho", rho, "comma-separated convergence direction");
  app.add_option("--seed", seed, "seed recorded in the job");
  app.add_option("--format", format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const bool machine = format == "machine";
  try {
    gkz::Json doc = read_input(input);
    gkz::JobSpec job = gkz::job_from_document(doc);
    if (truncation) job.truncation = *truncation;
    if (eps_order) job.eps_order = *eps_order;
    if (seed) job.seed = *seed;
    if (!heights.empty()) job.heights = parse_list(heights, "--heights");
    if (!rho.empty()) job.rho = parse_list(rho, "--rho");
    const auto n = static_cast<std::size_t>(job.A.cols());
    if ((job.heights && job.heights->size() != n) || (job.rho && job.rho->size() != n))
      throw gkz::ParseError("--heights/--rho need one entry per column of A");

    gkz::CommandResult res = gkz::run_command(verb, doc, job);
    if (machine)
      std::cout << res.report.dump(2) << "\n";
    else
      std::cout << gkz::render_human(res.report);
    if (res.exit_code == 3) std::cerr << "gkz: verification found a nonzero residual\n";
    return res.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "gkz: " << gkz::error_kind(e) << " error: " << e.what() << "\n";
    if (machine) {
      gkz::Json err;
      err["error"] = gkz::Json{{"kind", gkz::error_kind(e)}, {"message", e.what()}};
      std::cout << err.dump(2) << "\n";
    }
    return gkz::exit_code_for(e);
  }
}
