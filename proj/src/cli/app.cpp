#include "sympoly/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>

namespace sympoly {

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("error while writing " + path);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact polyhedral computations up to symmetry", "sympoly"};
  app.require_subcommand(1);
  app.fallthrough();
  std::size_t jobs = 1;
  if (const char* env = std::getenv("SYMPOLY_JOBS"); env && *env) {
    const std::string text = env;
    if (text.size() > 4 || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        std::stoul(text) < 1 || std::stoul(text) > 1024) {
      err << "error: SYMPOLY_JOBS must be an integer between 1 and 1024, got '" << text << "'\n";
      return exit_input;
    }
    jobs = std::stoul(text);
  }
  app.add_option("-j,--jobs", jobs, "Worker threads (default: $SYMPOLY_JOBS or 1)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1024}));

  std::string input;
  auto add_input = [&](CLI::App* sub) { sub->add_option("input", input, "Polyhedron file")->required(); };

  auto* automorphisms = app.add_subcommand("automorphisms", "Print the symmetry group acting on the input rows");
  add_input(automorphisms);

  auto* convert = app.add_subcommand("convert", "Convert between H and V representation up to symmetry");
  add_input(convert);
  std::vector<std::size_t> levels{0, 1};
  std::string output, dot_path, stabilize;
  bool adjacencies = false, expand = false;
  convert->add_option("--idm-adm-level", levels, "Use IDM below recursion level L1 and ADM below L2")
      ->expected(2)
      ->capture_default_str();
  convert->add_flag("--adjacencies", adjacencies, "Also write the adjacency graph of orbits as DOT");
  convert->add_option("--dot", dot_path, "DOT file (default: <output>.dot, or adjacency.dot)");
  convert->add_option("-o,--output", output, "Write the representation here instead of stdout");
  convert->add_option("--stabilize", stabilize, "Only use symmetries fixing this set of input rows, e.g. 1-24");
  convert->add_flag("--expand", expand, "List every element instead of one per orbit");

  auto* count = app.add_subcommand("count", "Number of integral points");
  add_input(count);
  bool symmetric = false;
  count->add_flag("--symmetric", symmetric, "Exploit the block symmetry declared in the file");

  auto* ehrhart_cmd = app.add_subcommand("ehrhart", "Ehrhart quasi-polynomial");
  add_input(ehrhart_cmd);
  std::size_t period_bound = 64;
  ehrhart_cmd->add_option("--period-bound", period_bound, "Refuse periods above this")->capture_default_str();

  auto* volume_cmd = app.add_subcommand("volume", "Relative lattice volume");
  add_input(volume_cmd);

  auto* ilp = app.add_subcommand("ilp", "Integral feasibility or optimization");
  add_input(ilp);
  std::size_t limit = 1000000;
  ilp->add_option("--limit", limit, "Enumeration limit without a blocks header")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_input;
  }

  try {
    const PolyFile file = read_polyfile(input);
    CommandResult result;
    if (automorphisms->parsed()) {
      result = cmd_automorphisms(file);
    } else if (convert->parsed()) {
      ConvertOptions options;
      options.levels = Levels{levels[0], levels[1]};
      options.adjacencies = adjacencies;
      options.expand = expand;
      options.jobs = jobs;
      if (!stabilize.empty()) options.stabilize = parse_row_list(stabilize);
      result = cmd_convert(file, options);
    } else if (count->parsed()) {
      result = cmd_count(file, symmetric, jobs);
    } else if (ehrhart_cmd->parsed()) {
      result = cmd_ehrhart(file, period_bound);
    } else if (volume_cmd->parsed()) {
      result = cmd_volume(file);
    } else {
      result = cmd_ilp(file, limit);
    }

    err << result.warnings;
    if (!output.empty()) {
      write_file(output, result.report);
    } else {
      out << result.report;
    }
    if (result.dot) {
      const std::string path = !dot_path.empty() ? dot_path : !output.empty() ? output + ".dot" : "adjacency.dot";
      write_file(path, *result.dot);
      err << "adjacency graph written to " << path << "\n";
    }
    return result.exit_code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const VerificationError& e) {
    err << "verification failure: " << e.what() << "\n";
    return exit_verification;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_verification;
  }
}

}  // namespace sympoly
