// Command-line front end. Verbs:
//
//   qlag laguerre <n> [--method recurrence|combinatorial]
//   qlag moment <n> [--method motzkin|permutation|matching]
//   qlag linearize <n1,n2,...> [--method functional|signed-sum|derangement]
//   qlag derangements <n1,n2,...>
//   qlag phi <marked-pm.json|->
//   qlag verify <suite> [--max-n N]
//
// Exit codes: 0 success, 1 verification failure or limit/overflow error,
// 2 usage error. QLAG_MAX_N overrides the built-in degree limits.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qlag/qlag.hpp"

namespace {

struct CliLimits {
  int matchings = qlag::limits::kMatchingDegree;
  int permutations = qlag::limits::kPermutationDegree;
  int laguerre_combinatorial = qlag::limits::kLaguerreCombinatorial;
  int laguerre_recurrence = qlag::limits::kLaguerreRecurrence;
  int moments = qlag::limits::kMomentDegree;
  int marked = qlag::limits::kMarkedDegree;
  std::optional<int> verify_max;  // set only by QLAG_MAX_N

  static CliLimits from_environment() {
    CliLimits limits;
    if (const char* env = std::getenv("QLAG_MAX_N")) {
      int value = 0;
      try {
        value = std::stoi(env);
      } catch (const std::exception&) {
        throw qlag::parse_error("QLAG_MAX_N must be an integer, got '" + std::string(env) +
                                "'");
      }
      limits.matchings = value;
      limits.permutations = value;
      limits.laguerre_combinatorial = value;
      limits.laguerre_recurrence = value;
      limits.moments = value;
      limits.marked = value;
      limits.verify_max = value;
    }
    return limits;
  }
};

void emit_poly(const qlag::Poly3& p, bool json) {
  if (json) {
    std::cout << p.to_json().dump() << "\n";
  } else {
    std::cout << p.to_string() << "\n";
  }
}

std::string format_perm(const std::vector<int>& one_line) {
  std::string s;
  for (std::size_t i = 0; i < one_line.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(one_line[i]);
  }
  return s;
}

int run_laguerre(int n, const std::string& method, bool json, const CliLimits& limits) {
  qlag::Poly3 result;
  if (method == "recurrence") {
    result = qlag::laguerre_recurrence(n, limits.laguerre_recurrence);
  } else {
    result = qlag::laguerre_combinatorial(n, limits.laguerre_combinatorial);
  }
  emit_poly(result, json);
  return 0;
}

int run_moment(int n, const std::string& method, bool json, const CliLimits& limits) {
  qlag::Poly3 result;
  if (method == "permutation") {
    result = qlag::moment_permutation(n, limits.moments);
  } else if (method == "matching") {
    result = qlag::moment_matching(n, limits.moments);
  } else {
    result = qlag::moment_motzkin(n, limits.moments);
  }
  emit_poly(result, json);
  return 0;
}

int run_linearize(const std::string& composition, const std::string& method, bool json,
                  const CliLimits& limits) {
  const qlag::Composition comp = qlag::Composition::parse(composition);
  qlag::Poly3 result;
  if (method == "signed-sum") {
    result = qlag::signed_sum(comp, limits.marked);
  } else if (method == "derangement") {
    result = qlag::derangement_gf(comp, limits.marked);
  } else {
    result = qlag::linearize_functional(comp.parts(), limits.marked);
  }
  emit_poly(result, json);
  return 0;
}

int run_derangements(const std::string& composition, bool json, const CliLimits& limits) {
  const qlag::Composition comp = qlag::Composition::parse(composition);
  nlohmann::json arr = nlohmann::json::array();
  qlag::for_each_derangement(
      comp,
      [&](const qlag::PermutationPM& p) {
        const int wex = qlag::weak_excedances(p);
        const int cr = qlag::permutation_crossings(p);
        if (json) {
          arr.push_back({{"perm", p.one_line()}, {"wex", wex}, {"cr", cr}});
        } else {
          std::cout << format_perm(p.one_line()) << "  wex=" << wex << " cr=" << cr << "\n";
        }
      },
      limits.marked);
  if (json) std::cout << arr.dump() << "\n";
  return 0;
}

int run_phi(const std::string& path, bool json) {
  nlohmann::json input;
  try {
    if (path == "-") {
      input = nlohmann::json::parse(std::cin);
    } else {
      std::ifstream file(path);
      if (!file) throw qlag::parse_error("cannot open '" + path + "'");
      input = nlohmann::json::parse(file);
    }
  } catch (const nlohmann::json::exception& ex) {
    throw qlag::parse_error(std::string("invalid JSON: ") + ex.what());
  }
  const qlag::MarkedPM m = qlag::MarkedPM::from_json(input);
  const auto [image, trace] = qlag::phi(m);
  if (json) {
    std::cout << nlohmann::json{{"result", image.to_json()}, {"trace", trace.to_json()}}.dump()
              << "\n";
  } else {
    std::cout << "case " << qlag::to_string(trace.case_tag);
    if (trace.chosen_i) std::cout << "  i=" << *trace.chosen_i;
    if (trace.chosen_i_prime) std::cout << "  i'=" << *trace.chosen_i_prime;
    if (trace.toggled_edge) {
      std::cout << "  toggled e_" << *trace.toggled_edge << "=(" << *trace.toggled_edge << ","
                << m.target(*trace.toggled_edge) << ")";
    } else {
      std::cout << "  fixed point";
    }
    std::cout << "\n" << image.to_json().dump() << "\n";
  }
  return 0;
}

int run_verify(const std::string& suite, std::optional<int> max_n, bool json,
               const CliLimits& limits) {
  qlag::VerifyReport report;
  if (suite == "lemma-ov") {
    report = qlag::verify_lemma_ov(
        max_n.value_or(limits.verify_max.value_or(qlag::kDefaultVerifyMaxN)));
  } else if (suite == "laguerre-eq") {
    report = qlag::verify_laguerre_eq(
        max_n.value_or(limits.verify_max.value_or(qlag::kDefaultVerifyMaxN)));
  } else if (suite == "moments-eq") {
    report = qlag::verify_moments_eq(
        max_n.value_or(limits.verify_max.value_or(qlag::kDefaultVerifyMaxN)));
  } else if (suite == "involution") {
    report = qlag::verify_involution(
        max_n.value_or(limits.verify_max.value_or(qlag::kDefaultInvolutionMaxN)));
  } else {
    report = qlag::verify_linearization(
        max_n.value_or(limits.verify_max.value_or(qlag::kDefaultVerifyMaxN)));
  }
  if (json) {
    std::cout << report.to_json().dump() << "\n";
  } else {
    for (const std::string& line : report.lines) std::cout << "  " << line << "\n";
    std::cout << "suite " << report.suite << ": " << (report.passed ? "PASS" : "FAIL")
              << " (checked " << report.checked << ", " << report.wall_ms << " ms)\n";
    if (report.counterexample) {
      std::cout << "counterexample: " << report.counterexample->dump() << "\n";
    }
  }
  return report.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact q-Laguerre linearization toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --format appear after the subcommand name
  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  int degree = 0;
  std::string composition;
  std::string phi_input;
  std::string suite;
  std::string laguerre_method = "recurrence";
  std::string moment_method = "motzkin";
  std::string linearize_method = "functional";
  std::optional<int> verify_max;

  CLI::App* laguerre = app.add_subcommand("laguerre", "polynomial of the given degree");
  laguerre->add_option("n", degree, "degree")->required()->check(CLI::NonNegativeNumber);
  laguerre->add_option("--method", laguerre_method)
      ->check(CLI::IsMember({"recurrence", "combinatorial"}));

  CLI::App* moment = app.add_subcommand("moment", "moment of the linear functional");
  moment->add_option("n", degree, "degree")->required()->check(CLI::NonNegativeNumber);
  moment->add_option("--method", moment_method)
      ->check(CLI::IsMember({"motzkin", "permutation", "matching"}));

  CLI::App* linearize = app.add_subcommand("linearize", "linearization coefficient");
  linearize->add_option("composition", composition, "comma-separated parts")->required();
  linearize->add_option("--method", linearize_method)
      ->check(CLI::IsMember({"functional", "signed-sum", "derangement"}));

  CLI::App* derangements =
      app.add_subcommand("derangements", "list derangements with wex and cr");
  derangements->add_option("composition", composition, "comma-separated parts")->required();

  CLI::App* phi_cmd = app.add_subcommand("phi", "apply the involution once");
  phi_cmd->add_option("input", phi_input, "marked matching JSON file, or - for stdin")
      ->required();

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember(
          {"lemma-ov", "laguerre-eq", "moments-eq", "involution", "linearization"}));
  int verify_max_value = -1;
  CLI::Option* max_opt = verify->add_option("--max-n", verify_max_value, "largest degree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    if (ex.get_exit_code() == 0) {
      return app.exit(ex);  // --help
    }
    app.exit(ex, std::cerr, std::cerr);
    return 2;
  }
  if (max_opt->count() > 0) verify_max = verify_max_value;
  const bool json = format == "json";

  try {
    const CliLimits limits = CliLimits::from_environment();
    if (laguerre->parsed()) return run_laguerre(degree, laguerre_method, json, limits);
    if (moment->parsed()) return run_moment(degree, moment_method, json, limits);
    if (linearize->parsed()) return run_linearize(composition, linearize_method, json, limits);
    if (derangements->parsed()) return run_derangements(composition, json, limits);
    if (phi_cmd->parsed()) return run_phi(phi_input, json);
    if (verify->parsed()) return run_verify(suite, verify_max, json, limits);
  } catch (const qlag::parse_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const qlag::error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 2;
}
