#include <doctest.h>

#include "superlie_cli/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace superlie;
using namespace superlie::cli;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("superlie_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

const char* kWord = R"j({"algebra":"gl(1|1)","q":2,"letters":[
  {"kind":"x_odd","root":[1,-1],"theta":{"[1]":"1"}},
  {"kind":"torus","index":0,"t":{"[]":"3/5+4/5i"}},
  {"kind":"x_odd","root":[-1,1],"theta":{"[2]":"2"}}]})j";

// SU(2) point with a = (3+4i)/5, b = 0.
const char* kUnitary = R"j({"m":2,"n":0,"q":0,"entries":[
  [{"[]":"3/5+4/5i"},{}],[{},{"[]":"3/5-4/5i"}]]})j";

struct Invocation {
  int status;
  std::string out;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "superlie");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int status = main_entry(int(argv.size()), argv.data(), out, err);
  return {status, out.str()};
}

CommandRequest request(std::string command, std::string target) {
  CommandRequest r;
  r.command = std::move(command);
  r.target = std::move(target);
  return r;
}

}  // namespace

TEST_CASE("describe reports the graded dimensions") {
  auto r = run(request("describe", "gl(1|1)"));
  REQUIRE(r.status == kExitOk);
  CHECK(r.report["dim_even"] == 2);
  CHECK(r.report["dim_odd"] == 2);
}

TEST_CASE("check-admissible osp(1|2) fails with witnesses") {
  auto r = run(request("check-admissible", "osp(1|2)"));
  REQUIRE(r.status == kExitOk);
  CHECK(r.report["holds"] == false);
  REQUIRE(r.report["witnesses"].is_array());
  REQUIRE_FALSE(r.report["witnesses"].empty());
  CHECK_FALSE(r.report["witnesses"][0]["square"].empty());
  CHECK(run(request("check-admissible", "sl(2|2)")).report["holds"] == true);
}

TEST_CASE("every command succeeds on its happy path") {
  const std::string word = write_temp("word.json", kWord);
  const std::string unitary = write_temp("unitary.json", kUnitary);
  struct Case {
    std::vector<std::string> args;
  };
  const std::vector<Case> cases{
      {{"describe", "sl(2|1)"}},
      {{"roots", "sl(2|1)"}},
      {{"chevalley", "sl(2|1)"}},
      {{"check-admissible", "osp(1|2)"}},
      {{"compact-form", "sl(2|1)"}},
      {{"compact-form", "osp(1|2)", "--force"}},
      {{"eval-word", "gl(1|1)", "--word", word}},
      {{"sigma-word", "gl(1|1)", "--word", word}},
      {{"member", "sl(2)", "--word", unitary}},
      {{"verify-examples", "SL(2)", "--samples", "5", "--q", "0"}},
      {{"uea-invariants", "gl(1|1)", "--degree", "2"}},
  };
  std::set<std::string> covered;
  for (const auto& c : cases) {
    INFO(c.args[0]);
    auto inv = invoke(c.args);
    CHECK(inv.status == kExitOk);
    CHECK(nlohmann::json::accept(inv.out));
    covered.insert(c.args[0]);
  }
  CHECK(covered.size() == command_names().size());
}

TEST_CASE("identical seeded invocations are byte-identical") {
  const std::vector<std::string> args{"verify-examples", "GL(1|1)", "--samples", "10", "--q", "3", "--seed", "7"};
  auto a = invoke(args), b = invoke(args);
  CHECK(a.status == kExitOk);
  CHECK(a.out == b.out);
  auto other = invoke({"verify-examples", "GL(1|1)", "--samples", "10", "--q", "3", "--seed", "8"});
  CHECK(other.out != a.out);
  CHECK(nlohmann::json::parse(a.out)["seed"] == 7);

  auto u1 = invoke({"uea-invariants", "sl(1|1)", "--degree", "3"});
  auto u2 = invoke({"uea-invariants", "sl(1|1)", "--degree", "3"});
  CHECK(u1.out == u2.out);
}

TEST_CASE("member decides SU(2) membership") {
  CommandRequest r = request("member", "sl(2)");
  r.word_path = write_temp("unitary.json", kUnitary);
  auto res = run(r);
  REQUIRE(res.status == kExitOk);
  CHECK(res.report["member"] == true);
}

TEST_CASE("sigma-word reports both routes") {
  CommandRequest r = request("sigma-word", "gl(1|1)");
  r.word_path = write_temp("word.json", kWord);
  r.convention = Convention::graded;
  auto res = run(r);
  REQUIRE(res.status == kExitOk);
  CHECK(res.report["convention"] == "graded");
  CHECK(res.report["matrix_route_agrees"] == true);
  r.convention = Convention::literal;
  CHECK(run(r).report["convention"] == "literal");
}

TEST_CASE("verify-examples SL(1|1) lists and checks the Berezinian condition") {
  auto inv = invoke({"verify-examples", "SL(1|1)", "--samples", "100", "--q", "4"});
  REQUIRE(inv.status == kExitOk);
  auto j = nlohmann::json::parse(inv.out);
  const auto& conds = j["conditions"];
  CHECK(std::find(conds.begin(), conds.end(), "ā(a+βāβ̄)=1") != conds.end());
  bool found = false;
  for (const auto& c : j["checks"])
    if (c["name"] == "condition ā(a+βāβ̄)=1") {
      found = true;
      CHECK(c["total"] == 100);
      CHECK(c["failures"] == 0);
    }
  CHECK(found);
}

TEST_CASE("domain errors exit 1 with an error object") {
  auto r = run(request("compact-form", "osp(1|2)"));
  CHECK(r.status == kExitDomain);
  CHECK(r.report["code"] == "obstruction");
  CHECK(r.report.contains("message"));
  CHECK(r.report["witness"].is_array());

  auto cap = run([] {
    auto q = request("uea-invariants", "gl(1|1)");
    q.degree = 5;
    return q;
  }());
  CHECK(cap.status == kExitDomain);
  CHECK(cap.report["code"] == "cap_exceeded");

  CHECK(run(request("describe", "F(4)")).status == kExitDomain);
  CHECK(run(request("verify-examples", "SL(4|2)")).status == kExitDomain);
}

TEST_CASE("malformed input exits 2") {
  CHECK(invoke({"bogus", "gl(1|1)"}).status == kExitMalformed);
  CHECK(invoke({"describe"}).status == kExitMalformed);
  CHECK(invoke({"describe", "gl(1|1)", "--q", "x"}).status == kExitMalformed);
  CHECK(invoke({"describe", "gl(1|1)", "--convention", "sideways"}).status == kExitMalformed);
  CHECK(run(request("describe", "zz(1)")).status == kExitMalformed);
  CHECK(run(request("verify-examples", "SL 2")).status == kExitMalformed);
  CHECK(run(request("eval-word", "gl(1|1)")).status == kExitMalformed);

  CommandRequest bad = request("eval-word", "gl(1|1)");
  bad.word_path = write_temp("bad.json", "{not json");
  auto r = run(bad);
  CHECK(r.status == kExitMalformed);
  CHECK(r.report["code"] == "parse_error");

  bad.word_path = write_temp("bad_kind.json", R"({"q":1,"letters":[{"kind":"x_weird","root":[1,-1]}]})");
  CHECK(run(bad).status == kExitMalformed);
}

TEST_CASE("--json writes the same report") {
  auto path = std::filesystem::temp_directory_path() / "superlie_cli_out.json";
  std::filesystem::remove(path);
  auto inv = invoke({"describe", "sl(2|1)", "--json", path.string()});
  REQUIRE(inv.status == kExitOk);
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == inv.out);
}

TEST_CASE("reports round-trip through JSON text") {
  for (const char* cmd : {"describe", "roots", "check-admissible", "compact-form", "uea-invariants"}) {
    auto r = run(request(cmd, "sl(2|1)"));
    REQUIRE(r.status == kExitOk);
    CHECK(nlohmann::json::parse(render(r.report)) == r.report);
  }
}
