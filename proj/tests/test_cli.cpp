#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "normsum/cli.hpp"

using json = nlohmann::json;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("normsum");
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = normsum::cli::run(static_cast<int>(argv.size()),
                                     argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Minimal JSON Schema checker covering the subset used by report.json:
// $ref (into #/definitions), const, enum, type, minimum, required,
// properties, items, oneOf.
class SchemaChecker {
 public:
  explicit SchemaChecker(json schema) : root_(std::move(schema)) {}

  bool validate(const json& value, const json& schema,
                std::string& error) const {
    if (schema.contains("$ref")) {
      return validate(value, resolve(schema["$ref"].get<std::string>()),
                      error);
    }
    if (schema.contains("const") && value != schema["const"]) {
      error = "const mismatch: " + value.dump();
      return false;
    }
    if (schema.contains("enum")) {
      bool found = false;
      for (const json& option : schema["enum"]) found = found || value == option;
      if (!found) {
        error = "enum mismatch: " + value.dump();
        return false;
      }
    }
    if (schema.contains("type")) {
      const std::string type = schema["type"].get<std::string>();
      const bool ok =
          (type == "object" && value.is_object()) ||
          (type == "array" && value.is_array()) ||
          (type == "string" && value.is_string()) ||
          (type == "boolean" && value.is_boolean()) ||
          (type == "number" && value.is_number()) ||
          (type == "integer" &&
           (value.is_number_integer() || value.is_number_unsigned()));
      if (!ok) {
        error = "type mismatch, expected " + type + ": " + value.dump();
        return false;
      }
    }
    if (schema.contains("minimum") && value.is_number()) {
      if (value.get<double>() < schema["minimum"].get<double>()) {
        error = "below minimum: " + value.dump();
        return false;
      }
    }
    if (schema.contains("required")) {
      for (const json& key : schema["required"]) {
        if (!value.contains(key.get<std::string>())) {
          error = "missing required key " + key.get<std::string>();
          return false;
        }
      }
    }
    if (schema.contains("properties") && value.is_object()) {
      for (const auto& [key, sub] : schema["properties"].items()) {
        if (value.contains(key) && !validate(value[key], sub, error)) {
          error = key + ": " + error;
          return false;
        }
      }
    }
    if (schema.contains("items") && value.is_array()) {
      for (const json& element : value) {
        if (!validate(element, schema["items"], error)) return false;
      }
    }
    if (schema.contains("oneOf")) {
      int matches = 0;
      std::string sub_error;
      for (const json& option : schema["oneOf"]) {
        std::string e;
        if (validate(value, option, e)) {
          ++matches;
        } else {
          sub_error = e;
        }
      }
      if (matches != 1) {
        error = "oneOf matched " + std::to_string(matches) +
                " schemas (last failure: " + sub_error + ")";
        return false;
      }
    }
    return true;
  }

  bool validate(const json& value, std::string& error) const {
    return validate(value, root_, error);
  }

 private:
  const json& resolve(const std::string& ref) const {
    const std::string prefix = "#/definitions/";
    REQUIRE(ref.rfind(prefix, 0) == 0);
    return root_["definitions"].at(ref.substr(prefix.size()));
  }

  json root_;
};

const SchemaChecker& schema_checker() {
  static const SchemaChecker checker = [] {
    std::ifstream in(std::string(NORMSUM_SOURCE_DIR) +
                     "/schemas/report.json");
    REQUIRE(in.good());
    json schema;
    in >> schema;
    return SchemaChecker(std::move(schema));
  }();
  return checker;
}

json parse_report(const CliResult& result) {
  REQUIRE_FALSE(result.out.empty());
  const json report = json::parse(result.out);
  std::string error;
  const bool valid = schema_checker().validate(report, error);
  CAPTURE(error);
  CHECK(valid);
  return report;
}

}  // namespace

TEST_CASE("cli member") {
  const CliResult r = run_cli({"member", "--set", "nk:3", "--n", "2"});
  CHECK(r.exit_code == 0);
  const json report = parse_report(r);
  CHECK(report["command"] == "member");
  CHECK(report["result"]["member"] == true);

  const CliResult r20 = run_cli({"member", "--set", "mp:7", "--n", "20"});
  CHECK(r20.exit_code == 0);
  const json rep20 = parse_report(r20);
  CHECK(rep20["result"]["member"] == false);
  CHECK(rep20["result"]["factorization"].size() == 2);
  CHECK(rep20["result"]["factorization"][0]["prime"] == 2);
  CHECK(rep20["result"]["factorization"][0]["exponent"] == 2);
  CHECK(rep20["result"]["evidence"]["conditions"][0]["admissible"] == false);
}

TEST_CASE("cli represent") {
  const CliResult r = run_cli(
      {"represent", "--set", "mp:3", "--n", "10", "--max-powers", "1"});
  CHECK(r.exit_code == 0);
  const json report = parse_report(r);
  CHECK(report["result"]["representable"] == true);
  CHECK(report["result"]["witness"]["member"] == 9);
  CHECK(report["result"]["witness"]["exponents"] == json::array({0}));
  CHECK(report["result"]["witness"]["powers"] == json::array({1}));

  const CliResult nonrep = run_cli(
      {"represent", "--set", "mp:5", "--n", "9", "--max-powers", "3"});
  CHECK(nonrep.exit_code == 0);
  const json nr = parse_report(nonrep);
  CHECK(nr["result"]["representable"] == false);
  CHECK_FALSE(nr["result"].contains("witness"));
}

TEST_CASE("cli search reproduces the small-range classification") {
  const CliResult r = run_cli({"search", "--set", "mp:7", "--max-powers", "5",
                               "--lo", "1", "--hi", "30"});
  CHECK(r.exit_code == 0);
  const json report = parse_report(r);
  CHECK(report["result"]["non_representable"] == json::array({20, 26, 27}));
  CHECK(report["result"]["representable_count"] == 27);
}

TEST_CASE("cli verify") {
  const CliResult l7 = run_cli({"verify", "--law", "l7"});
  CHECK(l7.exit_code == 0);
  const json report = parse_report(l7);
  CHECK(report["result"]["passed"] == true);
  CHECK(report["result"]["reports"][0]["instances"] == 3);

  const CliResult l3 = run_cli(
      {"verify", "--law", "l3", "--lo", "1", "--hi", "2000", "--a-max", "2"});
  CHECK(l3.exit_code == 0);
  const json l3rep = parse_report(l3);
  CHECK(l3rep["result"]["reports"].size() == 2);

  const CliResult bad = run_cli({"verify", "--law", "l9"});
  CHECK(bad.exit_code == 2);
  CHECK(bad.err.find("--law") != std::string::npos);
}

TEST_CASE("cli family") {
  const CliResult r = run_cli({"family", "--p", "3", "--count", "1"});
  CHECK(r.exit_code == 0);
  const json report = parse_report(r);
  CHECK(report["result"]["witnesses"][0]["n"] == 11);
  CHECK(report["result"]["all_confirmed"] == true);
}

TEST_CASE("cli census json and csv") {
  const CliResult jsonrun =
      run_cli({"census", "--set", "mp:3", "--checkpoints", "10,100"});
  CHECK(jsonrun.exit_code == 0);
  const json report = parse_report(jsonrun);
  CHECK(report["result"]["rows"][0]["x"] == 10);
  CHECK(report["result"]["rows"][0]["count"] == 5);

  const CliResult csvrun = run_cli({"census", "--set", "mp:3",
                                    "--checkpoints", "10", "--format", "csv"});
  CHECK(csvrun.exit_code == 0);
  CHECK(csvrun.out.rfind("x,count,normalized\n10,5,0.7587135", 0) == 0);
}

TEST_CASE("cli density-product") {
  const CliResult r =
      run_cli({"density-product", "--k", "3", "--prime-limit", "3"});
  CHECK(r.exit_code == 0);
  const json report = parse_report(r);
  CHECK(report["result"]["value"] == 0.75);
}

TEST_CASE("cli class-census") {
  const CliResult jsonrun =
      run_cli({"class-census", "--k", "3", "--t", "2", "--x", "1e4"});
  CHECK(jsonrun.exit_code == 0);
  const json report = parse_report(jsonrun);
  REQUIRE(report["result"]["rows"].size() == 8);
  CHECK(report["result"]["rows"][0]["power_sums"] == 65);
  CHECK(report["result"]["rows"][7]["power_sums"] == 0);

  const CliResult csvrun = run_cli({"class-census", "--k", "3", "--t", "2",
                                    "--x", "1e3", "--format", "csv"});
  CHECK(csvrun.exit_code == 0);
  CHECK(csvrun.out.rfind("class,integers,power_sums,representable,"
                         "non_representable_fraction,pairs\n",
                         0) == 0);
  int lines = 0;
  for (char c : csvrun.out) lines += c == '\n';
  CHECK(lines == 9);  // header + 8 classes
}

TEST_CASE("cli accepts scientific notation for integers") {
  const CliResult r = run_cli({"member", "--set", "nk:3", "--n", "1e4"});
  CHECK(r.exit_code == 0);
  CHECK(parse_report(r)["result"]["n"] == 10000);

  const CliResult frac = run_cli({"member", "--set", "nk:3", "--n", "2.5e3"});
  CHECK(frac.exit_code == 0);
  CHECK(parse_report(frac)["result"]["n"] == 2500);

  const CliResult half = run_cli({"member", "--set", "nk:3", "--n", "1.5"});
  CHECK(half.exit_code == 2);
  CHECK(half.err.find("--n") != std::string::npos);

  const CliResult huge = run_cli({"member", "--set", "nk:3", "--n", "1e400"});
  CHECK(huge.exit_code == 2);

  const CliResult hex = run_cli({"member", "--set", "nk:3", "--n", "0x10"});
  CHECK(hex.exit_code == 2);
}

TEST_CASE("cli usage errors") {
  CHECK(run_cli({}).exit_code == 2);
  CHECK(run_cli({"frobnicate"}).exit_code == 2);
  CHECK(run_cli({"member", "--set", "nk:3"}).exit_code == 2);  // missing --n

  const CliResult badset = run_cli({"member", "--set", "np:3", "--n", "5"});
  CHECK(badset.exit_code == 2);
  CHECK(badset.err.find("--set") != std::string::npos);

  const CliResult csv = run_cli(
      {"member", "--set", "nk:3", "--n", "5", "--format", "csv"});
  CHECK(csv.exit_code == 2);
  CHECK(csv.err.find("--format") != std::string::npos);

  const CliResult range = run_cli({"search", "--set", "mp:3", "--max-powers",
                                   "1", "--lo", "10", "--hi", "5"});
  CHECK(range.exit_code == 2);
  CHECK(range.err.find("lo") != std::string::npos);

  const CliResult help = run_cli({"--help"});
  CHECK(help.exit_code == 0);
  CHECK_FALSE(help.out.empty());
}

TEST_CASE("cli output is byte-identical across runs and thread counts") {
  const std::vector<std::string> base_args = {"census", "--set", "nk:3",
                                              "--checkpoints", "1e4,1e5"};
  std::vector<std::string> one = base_args, four = base_args;
  one.insert(one.end(), {"--threads", "1"});
  four.insert(four.end(), {"--threads", "4"});

  const CliResult first = run_cli(one);
  const CliResult second = run_cli(one);
  const CliResult parallel = run_cli(four);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out == parallel.out);

  const std::vector<std::string> search_args = {
      "search", "--set", "nk:3", "--max-powers", "3", "--lo", "1",
      "--hi",   "5000"};
  std::vector<std::string> s1 = search_args, s4 = search_args;
  s1.insert(s1.end(), {"--threads", "1"});
  s4.insert(s4.end(), {"--threads", "4"});
  CHECK(run_cli(s1).out == run_cli(s4).out);
}
