#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "criteria.hpp"
#include "steer/analysis.hpp"

namespace {

constexpr int kExitMalformed = 1;
constexpr int kExitPrecondition = 2;

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw steer::io::SchemaError(path, "cannot open input file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const steer::io::Json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw steer::io::SchemaError(path, "cannot open output file");
  out << text;
}

template <typename F>
int guarded(F&& body) {
  try {
    body();
    return 0;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const steer::io::SchemaError& e) {
    std::cerr << "error: schema: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const steer::PreconditionError& e) {
    std::cerr << "error: precondition: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const steer::ConsistencyError& e) {
    std::cerr << "error: consistency: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const steer::Error& e) {
    std::cerr << "error: invalid input: " << e.what() << "\n";
    return kExitMalformed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steering analysis toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", steer::cli::kToolkitVersion);

  std::string input, output;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> tols, params;
  std::string fixture_name;

  auto* analyze = app.add_subcommand("analyze", "Run one analysis on a JSON request");
  analyze->add_option("--input", input, "Request file (default stdin)");
  analyze->add_option("--seed", seed, "Seed for random sampling and random fixtures");
  analyze->add_option("--tol", tols, "Tolerance override KEY=VAL (repeatable)");
  analyze->add_option("--output", output, "Report file (default stdout)");

  auto* fixture = app.add_subcommand("fixture", "Emit a fixture state document");
  fixture->add_option("name", fixture_name,
                      "two_qubit_family | qutrit_family | pure_random | product_random")
      ->required();
  fixture->add_option("--param", params, "Fixture parameter KEY=VAL (repeatable)");
  fixture->add_option("--seed", seed, "Seed (required for random fixtures)");
  fixture->add_option("--output", output, "Document file (default stdout)");

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitMalformed;
  }

  if (*analyze) {
    return guarded([&] {
      steer::cli::AnalyzeOptions options;
      options.seed = seed;
      for (const auto& t : tols) options.tolerances.push_back(steer::cli::parse_tolerance(t));
      const auto request = steer::io::Json::parse(read_input(input));
      write_output(output, steer::cli::cmd_analyze(request, options));
    });
  }
  if (*fixture) {
    return guarded([&] {
      steer::cli::FixtureSpec spec{fixture_name, steer::io::Json::object(), seed};
      for (const auto& p : params) {
        auto [key, value] = steer::cli::parse_param(p);
        spec.params[key] = std::move(value);
      }
      write_output(output, steer::cli::cmd_fixture(spec));
    });
  }
  if (*selftest) {
    const auto results = steer::acceptance::run_all();
    bool ok = true;
    for (const auto& r : results) {
      std::cout << steer::acceptance::format(r) << "\n";
      ok = ok && r.passed;
    }
    return ok ? 0 : 1;
  }
  return 0;
}
