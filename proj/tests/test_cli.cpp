#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "support.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_cli_path;
std::string g_schema_path;

std::string cli() { return "\"" + g_cli_path + "\""; }

// Validates a value against the subset of json-schema draft-07 used by
// docs/schema.json: type, enum, required, properties, additionalProperties,
// items.  Returns an empty string on success, else a description of the
// first violation.
std::string schema_violation(const nlohmann::json& schema, const nlohmann::json& value,
                             const std::string& where) {
  using nlohmann::json;
  if (schema.contains("type")) {
    const std::string type = schema["type"].get<std::string>();
    const bool ok = (type == "object" && value.is_object()) ||
                    (type == "array" && value.is_array()) ||
                    (type == "string" && value.is_string()) ||
                    (type == "boolean" && value.is_boolean()) ||
                    (type == "integer" && value.is_number_integer()) ||
                    (type == "number" && value.is_number());
    if (!ok) return where + ": expected " + type + ", got " + value.dump();
  }
  if (schema.contains("enum")) {
    bool hit = false;
    for (const auto& option : schema["enum"]) hit = hit || (option == value);
    if (!hit) return where + ": " + value.dump() + " not in enum";
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"]) {
        if (!value.contains(key.get<std::string>()))
          return where + ": missing required key " + key.get<std::string>();
      }
    }
    const json props = schema.value("properties", json::object());
    for (const auto& [key, member] : value.items()) {
      if (props.contains(key)) {
        const std::string bad = schema_violation(props[key], member, where + "." + key);
        if (!bad.empty()) return bad;
      } else if (schema.contains("additionalProperties")) {
        const json& extra = schema["additionalProperties"];
        if (extra.is_boolean() && !extra.get<bool>())
          return where + ": unexpected key " + key;
        if (extra.is_object()) {
          const std::string bad = schema_violation(extra, member, where + "." + key);
          if (!bad.empty()) return bad;
        }
      }
    }
  }
  if (value.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      const std::string bad = schema_violation(schema["items"], value[i],
                                               where + "[" + std::to_string(i) + "]");
      if (!bad.empty()) return bad;
    }
  }
  return "";
}

int count_lines_with_prefix(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) ++count;
  }
  return count;
}

} // namespace

using testsupport::run_command;

TEST_CASE("classify reports genus data in the generic regimes") {
  auto res = run_command(cli() + " classify --n 4 --r 0.5");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"regime\": \"GenericSmall\"") != std::string::npos);
  CHECK(res.output.find("\"genus\": 33") != std::string::npos);
  CHECK(res.output.find("\"chi\": -64") != std::string::npos);
  CHECK(res.output.find("\"orientable\": true") != std::string::npos);
}

TEST_CASE("classify accepts the literal critical radius") {
  auto res = run_command(cli() + " classify --n 3 --r Rn");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"regime\": \"CriticalRn\"") != std::string::npos);
  CHECK(res.output.find("\"stitched_discs\": 6") != std::string::npos);
  CHECK(res.output.find("\"joining_arcs\": 6") != std::string::npos);

  auto even = run_command(cli() + " classify --n 4 --r Rn");
  CHECK(even.exit_code == 0);
  CHECK(even.output.find("\"pinched_handles\": 32") != std::string::npos);
  CHECK(even.output.find("\"identified_pairs\": 32") != std::string::npos);
}

TEST_CASE("classify csv carries the same facts") {
  auto res = run_command(cli() + " classify --n 4 --r 1.5 --format csv");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("regime,GenericLarge") != std::string::npos);
  CHECK(res.output.find("genus,1") != std::string::npos);
  CHECK(res.output.find("chi,0") != std::string::npos);
}

TEST_CASE("cells reports the complex counts") {
  auto res = run_command(cli() + " cells --n 3 --r 1.5");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"faces\": 8") != std::string::npos);
  CHECK(res.output.find("\"edges\": 12") != std::string::npos);
  CHECK(res.output.find("\"vertices\": 6") != std::string::npos);
  CHECK(res.output.find("\"chi\": 2") != std::string::npos);
  CHECK(res.output.find("\"genus\": 0") != std::string::npos);
}

TEST_CASE("morse csv has the documented header and row count") {
  auto res = run_command(cli() + " morse --n 3 --r 0.5 --format csv");
  CHECK(res.exit_code == 0);
  std::istringstream in(res.output);
  std::string header;
  std::getline(in, header);
  CHECK(header == "kind,index,body_x,body_y,psi,det_h");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 38);
}

TEST_CASE("rank scan finds no violations from the command line") {
  auto res = run_command(cli() + " rank --n 3 --r 0.9 --samples 50 --seed 5");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"violation_count\": 0") != std::string::npos);
  CHECK(res.output.find("\"samples\": 50") != std::string::npos);
}

TEST_CASE("path drives the sampled start to the canonical chart") {
  auto res = run_command(cli() + " path --n 3 --r 1.5 --start-seed 3");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"final_index\": \"+++\"") != std::string::npos);
}

TEST_CASE("mesh writes a file and prints a summary") {
  const std::string path = "cli_test_mesh.obj";
  auto res = run_command(cli() + " mesh --n 2 --r 1.5 --resolution 2 --out " + path);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"vertices\": 26") != std::string::npos);
  CHECK(res.output.find("\"triangles\": 48") != std::string::npos);
  CHECK(res.output.find("\"euler\": 2") != std::string::npos);
  CHECK(res.output.find("\"closed\": true") != std::string::npos);
  CHECK(res.output.find("\"edge_orientation_consistent\": true") != std::string::npos);
  CHECK(res.output.find("\"chart_signs_match\": true") != std::string::npos);

  std::ifstream file(path);
  REQUIRE(file.good());
  std::stringstream buffer;
  buffer << file.rdbuf();
  CHECK(count_lines_with_prefix(buffer.str(), "v ") == 26);
  CHECK(count_lines_with_prefix(buffer.str(), "f ") == 48);
  std::remove(path.c_str());
}

TEST_CASE("mesh streams raw geometry without --out") {
  auto res = run_command(cli() + " mesh --n 2 --r 1.5 --resolution 2 --format off");
  CHECK(res.exit_code == 0);
  CHECK(res.output.rfind("OFF\n", 0) == 0);
  CHECK(res.output.find("26 48 0") != std::string::npos);
}

TEST_CASE("repeated invocations are byte-identical") {
  for (const char* cmd :
       {" classify --n 5 --r 0.7", " cells --n 4 --r 1.5 --format csv",
        " morse --n 3 --r 1.5 --format csv", " rank --n 3 --r 1.5 --samples 40 --seed 9",
        " path --n 3 --r 0.5 --start-seed 11", " mesh --n 2 --r 1.5 --resolution 2"}) {
    auto a = run_command(cli() + cmd);
    auto b = run_command(cli() + cmd);
    CAPTURE(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.output == b.output);
  }
}

TEST_CASE("json outputs validate against the shipped schema") {
  std::ifstream in(g_schema_path);
  REQUIRE(in.good());
  const nlohmann::json schema = nlohmann::json::parse(in);
  REQUIRE(schema.contains("definitions"));

  const std::string mesh_file = "cli_schema_mesh.obj";
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"classify", " classify --n 4 --r 0.5"},
      {"classify", " classify --n 3 --r Rn"},
      {"classify", " classify --n 4 --r Rn"},
      {"classify", " classify --n 4 --r 0"},
      {"classify", " classify --n 4 --r 2"},
      {"classify", " classify --n 4 --r 2.5"},
      {"cells", " cells --n 4 --r 1.5"},
      {"cells", " cells --n 4 --r 0.5"},
      {"morse", " morse --n 3 --r 0.5"},
      {"morse", " morse --n 4 --r 1.5"},
      {"rank", " rank --n 3 --r 1.5 --samples 25 --seed 1"},
      {"path", " path --n 3 --r 1.5 --start-seed 2"},
      {"mesh_summary", " mesh --n 2 --r 1.5 --resolution 2 --out " + mesh_file},
  };
  for (const auto& [definition, command] : runs) {
    CAPTURE(command);
    auto res = run_command(cli() + command);
    REQUIRE(res.exit_code == 0);
    const nlohmann::json value = nlohmann::json::parse(res.output);
    const std::string bad =
        schema_violation(schema["definitions"][definition], value, definition);
    CHECK(bad == "");
  }
  std::remove(mesh_file.c_str());
}

TEST_CASE("invalid invocations exit with the documented code") {
  CHECK(run_command(cli() + " classify --n 4 2>/dev/null").exit_code == 2);
  CHECK(run_command(cli() + " bogus --n 4 --r 1.0 2>/dev/null").exit_code == 2);
  CHECK(run_command(cli() + " classify --n 40 --r 1.0 2>/dev/null").exit_code == 2);
  CHECK(run_command(cli() + " classify --n 4 --r -1 2>/dev/null").exit_code == 2);
  CHECK(run_command(cli() + " classify --n 4 --r nope 2>/dev/null").exit_code == 2);
  CHECK(run_command(cli() + " classify --n 4 --r 0.5 --format xml 2>/dev/null").exit_code == 2);
  CHECK(run_command(cli() + " cells --n 4 --r Rn 2>/dev/null").exit_code == 2);
  CHECK(run_command(cli() + " mesh --n 4 --r 0.5 2>/dev/null").exit_code == 2);
  CHECK(run_command(cli() + " mesh --n 4 --r 2.5 2>/dev/null").exit_code == 2);
}

int main(int argc, char** argv) {
  std::vector<const char*> args;
  for (int i = 0; i < argc; ++i) {
    if (std::string(argv[i]) == "--cli-path" && i + 1 < argc) {
      g_cli_path = argv[++i];
      continue;
    }
    if (std::string(argv[i]) == "--schema-path" && i + 1 < argc) {
      g_schema_path = argv[++i];
      continue;
    }
    args.push_back(argv[i]);
  }
  if (g_cli_path.empty() || g_schema_path.empty()) {
    std::fprintf(stderr,
                 "usage: cli_tests --cli-path <spider binary> --schema-path "
                 "<docs/schema.json> [doctest args]\n");
    return 1;
  }
  doctest::Context context(static_cast<int>(args.size()), args.data());
  return context.run();
}
