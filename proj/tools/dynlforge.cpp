#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dynlforge/catalog.hpp"
#include "dynlforge/errors.hpp"
#include "dynlforge/suites.hpp"
#include "json.hpp"

namespace {

enum Exit { kPass = 0, kStructure = 2, kParse = 3, kResidual = 4, kUsage = 5 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << std::flush;
    return kPass;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "dynlforge: cannot write '" << out_path << "'\n";
    return kUsage;
  }
  out << text;
  return kPass;
}

// Prints a machine-readable error line on stdout and the message on stderr.
int fail(int code, const std::string& kind, const std::string& message, const std::string& residual = "") {
  nlohmann::json j = {{"type", "error"}, {"kind", kind}, {"message", message}, {"exit_code", code}};
  if (!residual.empty()) j["residual"] = residual;
  std::cout << j.dump() << '\n';
  std::cerr << "dynlforge: " << kind << ": " << message << '\n';
  return code;
}

template <class F>
int guarded(F&& body) {
  using namespace dynlforge;
  try {
    return body();
  } catch (const ParseError& e) {
    return fail(kParse, "ParseError", e.what());
  } catch (const NotBidynamical& e) {
    return fail(kStructure, "NotBidynamical", e.what(), e.residual());
  } catch (const AxiomError& e) {
    return fail(kStructure, "AxiomError", e.what(), e.residual());
  } catch (const StructureError& e) {
    return fail(kStructure, "StructureError", e.what(), e.residual());
  } catch (const SplitError& e) {
    return fail(kStructure, "SplitError", e.what());
  } catch (const UnknownName& e) {
    return fail(kUsage, "UnknownName", e.what());
  } catch (const OutsideAnalyticDomain& e) {
    return fail(kResidual, "OutsideAnalyticDomain", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kUsage, "InvalidArgument", e.what());
  } catch (const std::exception& e) {
    return fail(kUsage, "Error", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical dynamical l-matrices: validation and residual suites"};
  app.require_subcommand(1);

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "Validate a setup file");
  validate->add_option("file", validate_file, "Setup JSON")->required()->check(CLI::ExistingFile);

  std::string suite_file, suite_name, out_path;
  dynlforge::SuiteOptions opt;
  std::optional<double> radius;
  std::optional<int> count, order;
  auto* suite = app.add_subcommand("suite", "Run a residual suite on a setup file");
  suite->add_option("file", suite_file, "Setup JSON")->required()->check(CLI::ExistingFile);
  suite->add_option("suite", suite_name, "lcan | duality | link | jets | scalars")->required();
  suite->add_option("--seed", opt.seed, "Seed of the splitmix grid sampler");
  suite->add_option("--grid-radius", radius, "Radius of the sampling ball in l*")->check(CLI::PositiveNumber);
  suite->add_option("--grid-count", count, "Number of grid points (rays for jets)")->check(CLI::PositiveNumber);
  suite->add_option("--order", order, "Jet order K, or series order N for scalars")->check(CLI::NonNegativeNumber);
  suite->add_option("--threads", opt.threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  suite->add_option("--out", out_path, "Write the report here instead of stdout");

  std::string export_name, export_out;
  auto* exp = app.add_subcommand("export", "Print a catalog setup as JSON");
  exp->add_option("name", export_name, "Catalog name")->required();
  exp->add_option("--out", export_out, "Write the setup here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  using namespace dynlforge;
  if (*validate) {
    return guarded([&] {
      const QuasiBialgebra g = load_setup(read_file(validate_file));
      const ResidualReport rep = validation_report(g);
      const int code = emit(rep.to_jsonl(), "");
      return code != kPass ? code : rep.verdict() ? kPass : kStructure;
    });
  }
  if (*suite) {
    return guarded([&] {
      const QuasiBialgebra g = load_setup(read_file(suite_file));
      opt.grid_radius = radius;
      opt.grid_count = count;
      opt.order = order;
      const ResidualReport rep = run_suite(g, suite_name, opt);
      const int code = emit(rep.to_jsonl(), out_path);
      return code != kPass ? code : rep.verdict() ? kPass : kResidual;
    });
  }
  return guarded([&] { return emit(setup_to_json(catalog_get(export_name)) + "\n", export_out); });
}
