#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bell/cli.hpp"
#include "bell/io.hpp"
#include "test_support.hpp"

using namespace bell;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
  const auto dir = fs::temp_directory_path() / "bellkit_cli_test";
  fs::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("validate exit codes") {
  const auto valid = write_temp("valid.json", io::to_json(uniform_behavior(Scenario::uniform(2, 2, 2))).dump());
  CHECK(run({"validate", valid}).code == cli::kExitOk);

  auto negative = io::to_json(uniform_behavior(Scenario::uniform(2, 2, 2)));
  negative["probabilities"][3] = -0.01;
  const auto r = run({"validate", write_temp("negative.json", negative.dump()), "--format", "json"});
  CHECK(r.code == cli::kExitNegative);
  const auto report = json::parse(r.out);
  CHECK(report["is_valid"] == false);
  CHECK(report["offending_indices"][0] == 3);
  CHECK(report["convention"] == std::string(kCanonicalOrderVersion));

  CHECK(run({"validate", write_temp("broken.json", "{\"scenario\": [")}).code == cli::kExitError);
  CHECK(run({"validate", "/nonexistent/behavior.json"}).code == cli::kExitError);
}

TEST_CASE("membership exit codes and reports") {
  SUBCASE("local model") {
    Rng rng(1);
    const auto m = lhv::random_model(rng, Scenario::uniform(2, 2, 2));
    const auto path = write_temp("model.json", io::to_json(m).dump());
    const auto r = run({"membership", path, "--format", "json"});
    CHECK(r.code == cli::kExitOk);
    const auto report = json::parse(r.out);
    CHECK(report["status"] == "feasible");
    // The emitted joint reproduces the model's behavior.
    const lhv::JointDistribution joint(Scenario::uniform(2, 2, 2), report["joint"].get<std::vector<double>>());
    CHECK(testing::max_abs_diff(lhv::behavior_from_joint(joint).table(), lhv::behavior_from_model(m).table()) <= 1e-8);
  }
  SUBCASE("singlet preset") {
    const auto path = write_temp("singlet.json", R"({"quantum": {"state": "singlet"}})");
    const auto r = run({"membership", path, "--format", "json"});
    CHECK(r.code == cli::kExitNegative);
    const auto report = json::parse(r.out);
    CHECK(report["status"] == "infeasible");
    CHECK(report["certificate"]["margin"].get<double>() == doctest::Approx(2 * std::sqrt(2.0) - 2).epsilon(1e-9));
  }
  SUBCASE("PR box") {
    const auto path = write_temp("pr.json", io::to_json(lhv::make_pr_box()).dump());
    const auto r = run({"membership", path, "--format", "json"});
    CHECK(r.code == cli::kExitNegative);
    CHECK(json::parse(r.out)["certificate"]["value"].get<double>() == doctest::Approx(4.0));
  }
  SUBCASE("text output") {
    const auto path = write_temp("pr_text.json", io::to_json(lhv::make_pr_box()).dump());
    const auto r = run({"membership", path});
    CHECK(r.out.find("status: infeasible") != std::string::npos);
    CHECK(r.out.find("convention: bell-canonical-order/1") == 0);
  }
}

TEST_CASE("emitted joints re-validate") {
  const auto path = write_temp("uniform.json", io::to_json(uniform_behavior(Scenario::uniform(3, 2, 2))).dump());
  const auto r = run({"membership", path, "--format", "json"});
  REQUIRE(r.code == cli::kExitOk);
  json joint_file = {{"scenario", io::to_json(Scenario::uniform(3, 2, 2))}, {"joint", json::parse(r.out)["joint"]}};
  const auto joint_path = write_temp("joint.json", joint_file.dump());
  CHECK(run({"validate", joint_path}).code == cli::kExitOk);
  CHECK(run({"membership", joint_path}).code == cli::kExitOk);
  CHECK(run({"nosignalling", joint_path}).code == cli::kExitOk);
}

TEST_CASE("nosignalling") {
  json signalling = io::to_json(uniform_behavior(Scenario::uniform(2, 2, 2)));
  std::vector<double> table(16, 0.0);
  table[0] = table[8] = 1.0;   // y = 0: Alice outputs 0
  table[6] = table[14] = 1.0;  // y = 1: Alice outputs 1
  signalling["probabilities"] = table;
  const auto r = run({"nosignalling", write_temp("signalling.json", signalling.dump()), "--format", "json"});
  CHECK(r.code == cli::kExitNegative);
  CHECK(json::parse(r.out)["max_deviation"] == 1.0);
}

TEST_CASE("maximize, sbound and ghz") {
  const auto m = run({"maximize", "chsh", "--format", "json"});
  CHECK(m.code == cli::kExitOk);
  CHECK(json::parse(m.out)["classical_max"] == 2.0);

  const auto ms = run({"maximize", "mermin", "--s", "0.1", "--format", "json"});
  CHECK(json::parse(ms.out)["s_restricted"][0]["max"].get<double>() == doctest::Approx(2 * 0.8 * 0.8 * 0.8));

  const auto s = run({"sbound", "--format", "json"});
  CHECK(s.code == cli::kExitOk);
  const auto rows = json::parse(s.out)["rows"];
  CHECK(rows.size() == 10);
  CHECK(rows[2]["max"].get<double>() == doctest::Approx(1.28));

  CHECK(run({"sbound", "--s", "0.7"}).code == cli::kExitError);
  CHECK(run({"ghz"}).code == cli::kExitOk);
}

TEST_CASE("demos") {
  for (const char* name : {"chsh-classical", "chsh-quantum", "ghz", "sbound", "pr-box", "fine-roundtrip"}) {
    CAPTURE(name);
    CHECK(run({"demo", name}).code == cli::kExitOk);
    CHECK(run({"--format", "json", "demo", name}).code == cli::kExitOk);
  }
  const auto j = json::parse(run({"demo", "chsh-classical", "--format", "json"}).out);
  CHECK(j["strategies"] == 16);
  CHECK(j["passed"] == true);
  CHECK(run({"demo", "fine-roundtrip", "--seed", "77"}).code == cli::kExitOk);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kExitError);
  CHECK(run({"demo", "nonsense"}).code == cli::kExitError);
  CHECK(run({"validate"}).code == cli::kExitError);
  CHECK(run({"--tol", "-1", "ghz"}).code == cli::kExitError);
  CHECK(run({"--format", "xml", "ghz"}).code == cli::kExitError);
  CHECK(run({"--help"}).code == cli::kExitOk);
}
