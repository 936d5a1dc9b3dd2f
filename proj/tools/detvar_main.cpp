#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "detvar/commands.hpp"

using namespace detvar;

namespace {

struct Common {
  std::uint64_t seed = 42;
  double tol = 1e-9;
  std::size_t samples = 20;
  std::string json_out;
  bool timing = false;
};

AnalyzeOptions analyze_options(const Common& c, const std::string& side) {
  AnalyzeOptions opt;
  opt.witness.seed = c.seed;
  opt.witness.samples = c.samples;
  opt.witness.tol.abs_eps = c.tol;
  opt.witness.tol.rel_eps = c.tol;
  opt.witness.tol.validate();
  opt.timing = c.timing;
  if (side == "B") opt.sides = {Side::B};
  if (side == "both") opt.sides = {Side::A, Side::B};
  return opt;
}

int emit(const Json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!path.empty()) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << path << "\n";
      return 2;
    }
    out << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Determinantal-variety invariants of bipartite mixed states"};
  app.require_subcommand(1);
  Common common;
  std::string side = "A";
  std::string file, file_b, example, t = "2";
  std::size_t m = 3, n = 3, trials = 50;
  double spectral_tol = 1e-10;
  double radius = 0.1, threshold = 10.0;
  std::size_t probes = 20;

  auto* analyze = app.add_subcommand("analyze", "analyze a state file");
  analyze->add_option("file", file, "state JSON")->required()->check(CLI::ExistingFile);
  analyze->add_option("--side", side, "variety side")->check(CLI::IsMember({"A", "B", "both"}));
  analyze->add_option("--tol", common.tol, "absolute and relative tolerance");
  analyze->add_option("--samples", common.samples, "sample points per witness search");
  analyze->add_option("--probes", probes, "tangent probes per point");
  analyze->add_option("--radius", radius, "probe step along the tangent space");
  analyze->add_option("--threshold", threshold, "witness threshold in units of tol");
  analyze->add_option("--seed", common.seed, "random seed");
  analyze->add_option("--json", common.json_out, "also write the report here");
  analyze->add_flag("--timing", common.timing, "record runtime (breaks byte-identical output)");

  auto* compare = app.add_subcommand("compare", "compare spectra and moduli of two states");
  compare->add_option("a", file, "first state")->required()->check(CLI::ExistingFile);
  compare->add_option("b", file_b, "second state")->required()->check(CLI::ExistingFile);
  compare->add_option("--tol", spectral_tol, "spectral tolerance");
  compare->add_option("--json", common.json_out, "also write the report here");

  auto* repro = app.add_subcommand("repro", "rebuild and analyze a worked example");
  repro->add_option("example", example, "example1, example2 or example3")
      ->required()
      ->check(CLI::IsMember({"example1", "example2", "example3"}));
  repro->add_option("--t", t, "cubic family parameter: rational or 3w");
  repro->add_option("--m", m, "rows of the maximally mixed example");
  repro->add_option("--n", n, "columns of the maximally mixed example");
  repro->add_option("--seed", common.seed, "random seed");
  repro->add_option("--side", side, "variety side")->check(CLI::IsMember({"A", "B", "both"}));
  repro->add_option("--json", common.json_out, "also write the report here");

  auto* props = app.add_subcommand("props", "random property checks");
  props->add_option("--m", m, "dimension of A")->check(CLI::Range(1, 4));
  props->add_option("--n", n, "dimension of B")->check(CLI::Range(1, 4));
  props->add_option("--trials", trials, "trials per property");
  props->add_option("--seed", common.seed, "random seed");
  props->add_option("--json", common.json_out, "also write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*analyze) {
      AnalyzeOptions opt = analyze_options(common, side);
      opt.witness.probes = probes;
      opt.witness.radius = radius;
      opt.witness.threshold_factor = threshold;
      return emit(analyze_file(file, opt), common.json_out);
    }
    if (*compare) {
      CompareOptions opt;
      opt.spectral_tol = spectral_tol;
      return emit(compare_states(read_state_file(file), read_state_file(file_b), opt), common.json_out);
    }
    if (*repro) {
      const int which = example.back() - '0';
      return emit(repro_example(which, t, m, n, analyze_options(common, side)), common.json_out);
    }
    const PropertySummary s = property_suite(m, n, trials, common.seed);
    const int rc = emit(to_json(s), common.json_out);
    return rc != 0 ? rc : (s.all_pass() ? 0 : 3);
  } catch (const Error& e) {
    std::cout << error_body(e).dump(2) << "\n";
    return exit_code_for(e.code());
  }
}
