#include "superlie_cli/cli.hpp"

#include "superlie/enveloping.hpp"
#include "superlie/errors.hpp"
#include "superlie/superalgebra.hpp"
#include "superlie/supergroup.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <regex>
#include <sstream>

namespace superlie::cli {

namespace {

nlohmann::json error_object(const std::string& code, const std::string& message,
                            const nlohmann::json& witness = nullptr) {
  nlohmann::json j{{"code", code}, {"message", message}};
  if (!witness.is_null()) j["witness"] = witness;
  return j;
}

nlohmann::json read_json_input(const std::string& path) {
  if (path.empty()) throw Error(ErrorCode::parse_error, "this command needs --word <path>");
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::parse_error, "cannot read '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("invalid JSON: ") + e.what());
  }
}

void require_family_shape(const std::string& text) {
  static const std::regex shape(R"(\s*[A-Za-z]+\s*\(\s*\d+\s*(\|\s*\d+\s*)?\)\s*)");
  if (!std::regex_match(text, shape)) throw Error(ErrorCode::parse_error, "malformed example family '" + text + "'");
}

nlohmann::json cmd_eval_word(const LieSuperalgebra& g, const CommandRequest& req) {
  GeneratorWord w = word_from_json(g, read_json_input(req.word_path));
  SuperMatrix m = evaluate(g, w);
  nlohmann::json j{{"algebra", g.name()}, {"q", w.q}, {"word", to_json(w)}, {"matrix", to_json(m)}};
  if (m.is_even() && m.is_invertible()) j["berezinian"] = to_json(sm_berezinian(m));
  return j;
}

nlohmann::json cmd_sigma_word(const LieSuperalgebra& g, const CommandRequest& req, Convention c) {
  GeneratorWord w = word_from_json(g, read_json_input(req.word_path));
  GeneratorWord sw = sigma_word(g, w, c);
  SuperMatrix image = evaluate(g, sw);
  nlohmann::json j{{"algebra", g.name()},
                   {"convention", to_string(c)},
                   {"q", w.q},
                   {"word", to_json(w)},
                   {"sigma_word", to_json(sw)},
                   {"sigma_matrix", to_json(image)}};
  // The matrix route exists on the A-series; it need not agree with the
  // letterwise image on products under the literal rule.
  j["matrix_route_agrees"] = nullptr;
  if (g.a_series()) {
    try {
      j["matrix_route_agrees"] = sigma_matrix(g, evaluate(g, w), c) == image;
    } catch (const Error& e) {
      j["matrix_route_error"] = error_object(std::string(to_string(e.code())), e.what());
    }
  }
  return j;
}

nlohmann::json cmd_member(const LieSuperalgebra& g, const CommandRequest& req, Convention c) {
  nlohmann::json input = read_json_input(req.word_path);
  SuperMatrix m;
  nlohmann::json j{{"algebra", g.name()}, {"convention", to_string(c)}};
  if (input.is_object() && input.contains("letters")) {
    GeneratorWord w = word_from_json(g, input);
    m = evaluate(g, w);
    j["word"] = to_json(w);
  } else {
    m = supermatrix_from_json(input, req.q);
  }
  j["q"] = m.q();
  j["matrix"] = to_json(m);
  j["member"] = k_membership(g, m, c);
  j["sigma_matrix"] = to_json(sigma_matrix(g, m, c));
  return j;
}

nlohmann::json cmd_compact_form(const LieSuperalgebra& g, const CommandRequest& req, Convention c) {
  RealFormReport r = realform_report(g, c, req.force);
  if (!r.admissible && !req.force)
    throw Error(ErrorCode::obstruction, "no compact real form: hypothesis (1) fails for " + g.name(),
                assumption_json(g, r.assumption)["witnesses"]);
  nlohmann::json j = to_json(g, r);
  if (r.built) j["k_basis"] = to_json(g, r.k);
  return j;
}

nlohmann::json dispatch(const CommandRequest& req) {
  const std::string& cmd = req.command;
  const Convention c = req.convention.value_or(default_convention(cmd));
  if (cmd == "verify-examples") {
    require_family_shape(req.target);
    if (req.samples < 1) throw Error(ErrorCode::parse_error, "--samples must be positive");
    return to_json(verify_example_conditions(req.target, req.samples, req.q, req.seed, c));
  }
  const LieSuperalgebra g = LieSuperalgebra::build(req.target);
  if (cmd == "describe") return describe_json(g);
  if (cmd == "roots") return roots_json(g);
  if (cmd == "chevalley") {
    nlohmann::json j = chevalley_json(g, chevalley_basis(g));
    j["structure_constants"] = structure_constants_json(g);
    return j;
  }
  if (cmd == "check-admissible") return assumption_json(g, check_assumption(g));
  if (cmd == "compact-form") return cmd_compact_form(g, req, c);
  if (cmd == "eval-word") return cmd_eval_word(g, req);
  if (cmd == "sigma-word") return cmd_sigma_word(g, req, c);
  if (cmd == "member") return cmd_member(g, req, c);
  if (cmd == "uea-invariants") return to_json(invariants_dim_compare(g, c, req.degree));
  throw Error(ErrorCode::parse_error, "unknown command '" + cmd + "'");
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"describe",     "roots",     "chevalley",  "check-admissible",
                                              "compact-form", "eval-word", "sigma-word", "member",
                                              "verify-examples", "uea-invariants"};
  return names;
}

Convention default_convention(const std::string& command) {
  if (command == "sigma-word" || command == "member" || command == "verify-examples") return Convention::literal;
  return Convention::graded;
}

CommandResult run(const CommandRequest& request) {
  CommandResult result;
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), request.command) == names.end()) {
    result.status = kExitMalformed;
    result.report = error_object("parse_error", "unknown command '" + request.command + "'");
    return result;
  }
  try {
    result.report = dispatch(request);
  } catch (const Error& e) {
    result.status = e.code() == ErrorCode::parse_error ? kExitMalformed : kExitDomain;
    result.report = error_object(std::string(to_string(e.code())), e.what(), e.witness());
    return result;
  } catch (const nlohmann::json::exception& e) {
    result.status = kExitMalformed;
    result.report = error_object("parse_error", e.what());
    return result;
  }
  if (!request.out_path.empty()) {
    std::ofstream out(request.out_path);
    if (!out) {
      result.status = kExitMalformed;
      result.report = error_object("parse_error", "cannot write '" + request.out_path + "'");
      return result;
    }
    out << render(result.report);
  }
  return result;
}

std::string render(const nlohmann::json& report) { return report.dump(2) + "\n"; }

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Lie superalgebra and supergroup point computations"};
  CommandRequest req;
  std::string convention;
  app.add_option("command", req.command, "Command to run")->required()->check(CLI::IsMember(command_names()));
  app.add_option("target", req.target, "Algebra such as sl(2|1), or an example family such as SL(1|1)")->required();
  app.add_option("--q", req.q, "Number of Grassmann generators")->check(CLI::Range(0, 16));
  app.add_option("--samples", req.samples, "Random samples per example check")->check(CLI::PositiveNumber);
  app.add_option("--degree", req.degree, "Degree cap for the enveloping algebra")->check(CLI::Range(0, 64));
  app.add_option("--seed", req.seed, "Random seed");
  app.add_option("--word", req.word_path, "JSON word or supermatrix file ('-' for stdin)");
  app.add_option("--json", req.out_path, "Also write the report to this path");
  app.add_flag("--force", req.force, "Build the candidate span even when hypothesis (1) fails");
  app.add_option("--convention", convention, "Odd-root rule: graded or literal")
      ->check(CLI::IsMember({"graded", "literal"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    out << render(error_object("parse_error", e.what()));
    err << app.help();
    return kExitMalformed;
  }
  if (!convention.empty()) req.convention = convention_from_string(convention);
  CommandResult result = run(req);
  out << render(result.report);
  return result.status;
}

}  // namespace superlie::cli
