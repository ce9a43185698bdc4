#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Sandbox {
  fs::path dir;
  Sandbox() {
    std::random_device rd;
    dir = fs::temp_directory_path() / ("symtoda_cli_" + std::to_string(rd()));
    fs::create_directories(dir);
  }
  ~Sandbox() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  fs::path file(const std::string& name, const std::string& content) const {
    const fs::path p = dir / name;
    std::ofstream(p) << content;
    return p;
  }
  std::string slurp(const std::string& name) const {
    std::ifstream in(dir / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  // Exit status of the CLI; stdout goes to out.txt, stderr to err.txt.
  int run(const std::string& args) const {
    const std::string cmd = std::string("\"") + SYMTODA_CLI + "\" " + args + " > \"" +
                            (dir / "out.txt").string() + "\" 2> \"" + (dir / "err.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
};

}  // namespace

TEST_CASE("verify") {
  Sandbox box;
  CHECK(box.run("verify --n 3 --seed 5 --points 3") == 0);
  const auto j = nlohmann::json::parse(box.slurp("out.txt"));
  CHECK(j["suite"] == "verify");
  CHECK(j["seed"] == 5);
  CHECK(j["schema_version"] == 1);
  CHECK(j["checks"].size() > 40);
  for (const auto& c : j["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("residual"));
    CHECK(c.contains("tol"));
    CHECK(c["pass"] == true);
  }

  const std::string out = (box.dir / "r.json").string();
  CHECK(box.run("verify --n 2 --suite rm-pb --points 2 --out \"" + out + "\"") == 0);
  const auto k = nlohmann::json::parse(box.slurp("r.json"));
  CHECK(k["suite"] == "rm-pb");

  CHECK(box.run("verify --n 3 --suite flow-crossval --points 2 --tol isospectral=1e-30") == 1);
  CHECK(box.run("verify --n 99") == 2);
  CHECK(box.run("verify --n 3 --tol nope=1") == 2);
  CHECK(box.run("verify --n 3 --tol jacobi") == 2);
  CHECK(box.run("verify --n 3 --suite nope") == 2);
  CHECK(box.run("verify --bogus") == 2);
  CHECK(box.run("") == 2);
  CHECK(box.run("--help") == 0);
}

TEST_CASE("simulate") {
  Sandbox box;
  box.file("b.json", R"({"n": 2, "rows": [[1, 1], [0, 1]]})");
  const std::string in = (box.dir / "b.json").string();
  const std::string csv = (box.dir / "traj.csv").string();
  CHECK(box.run("simulate --input \"" + in + "\" --t0 0 --t1 2 --steps 200 --out \"" + csv + "\"") == 0);
  std::ifstream rows(csv);
  int count = 0;
  for (std::string line; std::getline(rows, line);) ++count;
  CHECK(count == 202);
  const auto side = nlohmann::json::parse(box.slurp("traj.json"));
  CHECK(side["max_action_drift"].get<double>() < 1e-9);
  CHECK(side["theta_fit_residual"].get<double>() < 1e-6);

  CHECK(box.run("simulate --n 3 --seed 2 --steps 20 --out \"" + csv + "\"") == 0);
  CHECK(box.run("simulate --input \"" + in + "\" --n 3 --out \"" + csv + "\"") == 2);

  box.file("lower.json", R"({"n": 2, "rows": [[1, 0], [1, 1]]})");
  CHECK(box.run("simulate --input \"" + (box.dir / "lower.json").string() + "\" --out \"" + csv + "\"") == 2);
  box.file("bad.json", R"({"n": 2, "rows": [[1, 1], [0, )");
  CHECK(box.run("simulate --input \"" + (box.dir / "bad.json").string() + "\" --out \"" + csv + "\"") == 2);
  CHECK(box.run("simulate --input \"" + (box.dir / "missing.json").string() + "\"") == 2);

  box.file("diag.json", R"({"n": 2, "rows": [[2, 0], [0, 0.5]]})");
  CHECK(box.run("simulate --input \"" + (box.dir / "diag.json").string() + "\" --out \"" + csv + "\"") == 1);
}

TEST_CASE("leaf") {
  Sandbox box;
  box.file("s.json", R"({"n": 2, "rows": [[1, 1], [0, 1]]})");
  CHECK(box.run("leaf --input \"" + (box.dir / "s.json").string() + "\"") == 0);
  const std::string text = box.slurp("out.txt");
  CHECK(text.find("u = 2 1") != std::string::npos);
  CHECK(text.find("predicted = 2") != std::string::npos);
  CHECK(text.find("measured = 2") != std::string::npos);

  box.file("d.json", R"({"n": 3, "rows": [[2, 0, 0], [0, 1, 0], [0, 0, 0.5]]})");
  const std::string out = (box.dir / "leaf.json").string();
  CHECK(box.run("leaf --input \"" + (box.dir / "d.json").string() + "\" --out \"" + out + "\"") == 0);
  const auto j = nlohmann::json::parse(box.slurp("leaf.json"));
  CHECK(j["suite"] == "leaf-dimension");
  CHECK(j["checks"][0]["meta"]["measured"] == 0);

  CHECK(box.run("leaf") == 2);
}

TEST_CASE("orbit-flow") {
  Sandbox box;
  box.file("b.json", R"({"n": 3, "rows": [[1, 0.5, 0.2], [0, 2, 0.3], [0, 0, 0.5]]})");
  const std::string in = (box.dir / "b.json").string();
  CHECK(box.run("orbit-flow --input \"" + in + "\" --d 2,0.25,2 --d 0.5,1,2") == 0);
  const auto j = nlohmann::json::parse(box.slurp("out.txt"));
  CHECK(j["translations"].size() == 2);
  CHECK(j["checks"].size() == 4);

  CHECK(box.run("orbit-flow --input \"" + in + "\"") == 0);
  CHECK(box.run("orbit-flow --n 4 --seed 3 --random 2") == 0);
  CHECK(box.run("orbit-flow --input \"" + in + "\" --d 2,2,2") == 2);
  CHECK(box.run("orbit-flow --input \"" + in + "\" --d 1,1") == 2);

  box.file("id.json", R"({"n": 2, "rows": [[1, 0], [0, 1]]})");
  CHECK(box.run("orbit-flow --input \"" + (box.dir / "id.json").string() + "\"") == 1);
}
