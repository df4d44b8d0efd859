#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "postselect/cli.hpp"
#include "postselect/json_io.hpp"
#include "postselect/realize.hpp"

using namespace postselect;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "postselect");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("postselect_cli_" + std::to_string(::getpid()) + "_" +
                                         std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
  static inline int counter_ = 0;
};

const char* kBorderSuite = R"({"n": 2, "ell": 4, "domain": [0, "inf", 1, -1], "range": [0, 0, 0, "inf"]})";

}  // namespace

TEST_CASE("realize writes a dilation that the channel command accepts", "[cli]") {
  TempDir dir;
  const std::string l = dir.file("L.json", R"({"rows": 2, "cols": 2, "data": [[1,0],[0,0],[0,0],[2,0]]})");
  const Outcome r = invoke({"realize", "--input", l, "--optimal"});
  REQUIRE(r.code == 0);
  const json d = io::read_file(dir.path("L.realize.json"));
  CHECK(d.at("gsp").get<double>() == Catch::Approx(0.25));
  CHECK(io::complex_from_json(d.at("scale_c")) == cplx(0.5));

  const Outcome lit = invoke({"realize", "--input", l, "--literal", "--output", "-"});
  REQUIRE(lit.code == 0);
  CHECK(io::parse(lit.out).at("gsp").get<double>() == Catch::Approx(0.25));

  const Outcome ch = invoke({"channel", "--input", dir.path("L.realize.json"), "--output", "-"});
  REQUIRE(ch.code == 0);
  const json cj = io::parse(ch.out);
  CHECK(cj.at("n_in") == 2);
  CHECK(cj.at("kraus").size() == 2);
  // Emitted numbers survive the round trip bit for bit.
  const ComplexMatrix u = io::matrix_from_json(d.at("U"));
  CHECK(io::matrix_from_json(cj.at("kraus")[0]) == u.block(0, 0, 2, 2));
  CHECK(io::matrix_from_json(io::parse(io::dump(io::matrix_to_json(u)))) == u);

  const std::string rho = dir.file("rho.json", R"([[1, 0], [0, 0]])");
  const Outcome cr = invoke({"channel", "--input", dir.path("L.realize.json"), "--rho", rho, "-o", "-"});
  REQUIRE(cr.code == 0);
  CHECK(io::parse(cr.out).at("branch_probabilities")[0].get<double>() == Catch::Approx(0.25));
}

TEST_CASE("suite subcommands", "[cli]") {
  TempDir dir;
  const std::string s = dir.file("border.json", kBorderSuite);
  Outcome r = invoke({"suite-classify", "--input", s, "--output", "-"});
  REQUIRE(r.code == 0);
  CHECK(io::parse(r.out).at("verdict") == "BorderOfPL");

  r = invoke({"suite-exact", "--input", s, "--output", "-"});
  REQUIRE(r.code == 0);
  CHECK(io::parse(r.out).at("realizable") == false);

  r = invoke({"suite-fit", "--input", s, "--seed", "3", "--restarts", "3", "--eps", "0.05", "--output", "-"});
  REQUIRE(r.code == 0);
  const json fit = io::parse(r.out);
  CHECK(fit.at("max_fs").get<double>() < 0.05);
  CHECK(fit.at("approximable") == true);
  const Suite tau = io::suite_from_json(fit.at("tau"));
  CHECK(tau.ell() == 4);
  CHECK(io::suite_from_json(io::parse(io::dump(io::suite_to_json(tau)))).range()[3].coords()[0] ==
        tau.range()[3].coords()[0]);
}

TEST_CASE("randomized subcommands need a seed", "[cli]") {
  TempDir dir;
  const std::string s = dir.file("border.json", kBorderSuite);
  ::unsetenv("POSTSELECT_SEED");
  Outcome r = invoke({"suite-fit", "--input", s, "--output", "-"});
  CHECK(r.code == 2);
  CHECK(io::parse(r.err).at("error") == "MissingSeed");

  ::setenv("POSTSELECT_SEED", "11", 1);
  const Outcome env = invoke({"suite-fit", "--input", s, "--restarts", "2", "--output", "-"});
  ::unsetenv("POSTSELECT_SEED");
  const Outcome flag = invoke({"suite-fit", "--input", s, "--restarts", "2", "--seed", "11", "--output", "-"});
  REQUIRE(env.code == 0);
  CHECK(env.out == flag.out);
}

TEST_CASE("mc-scaling writes JSON and CSV", "[cli]") {
  TempDir dir;
  const std::string out = dir.path("report.json");
  const Outcome r = invoke({"mc-scaling", "--n", "2", "--ell", "4", "--eps", "0.1,0.2,0.4", "--samples", "40",
                            "--seed", "42", "--output", out});
  REQUIRE(r.code == 0);
  const json rep = io::read_file(out);
  CHECK(rep.at("eps_grid").size() == 3);
  CHECK(rep.at("predicted_exponent") == 2.0);
  std::ifstream csv(dir.path("report.csv"));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "eps,fraction");

  const Outcome again = invoke({"mc-scaling", "--n", "2", "--ell", "4", "--eps", "0.1,0.2,0.4", "--samples", "40",
                                "--seed", "42", "--output", "-", "--csv", dir.path("x.csv")});
  CHECK(io::parse(again.out) == rep);
}

TEST_CASE("cross-ratio subcommand", "[cli]") {
  Outcome r = invoke({"cross-ratio", "--points", "0,0,inf,inf"});
  REQUIRE(r.code == 0);
  json j = io::parse(r.out);
  CHECK(io::complex_from_json(j.at("value")) == cplx(1.0));
  CHECK(j.at("configuration") == "TwoTwo");

  r = invoke({"cross-ratio", "--points", "0,inf,1,2"});
  REQUIRE(r.code == 0);
  CHECK(io::complex_from_json(io::parse(r.out).at("value")) == cplx(0.5));

  r = invoke({"cross-ratio", "--points", "0,0,0,1"});
  CHECK(r.code == 2);
  CHECK(io::parse(r.err).at("error") == "SingularConfiguration");
}

TEST_CASE("exit-code contract", "[cli]") {
  TempDir dir;
  CHECK(invoke({"frobnicate"}).code == 64);
  CHECK(invoke({}).code == 64);
  CHECK(invoke({"realize"}).code == 64);

  CHECK(invoke({"realize", "--input", dir.path("missing.json")}).code == 1);
  CHECK(invoke({"realize", "--input", dir.file("bad.json", "{not json")}).code == 1);
  CHECK(invoke({"realize", "--input", dir.file("short.json", R"({"rows": 2, "cols": 2, "data": [[1,0]]})")}).code == 1);

  Outcome r = invoke({"realize", "--input", dir.file("zero.json", "[[0, 0], [0, 0]]"), "-o", "-"});
  CHECK(r.code == 2);
  CHECK(io::parse(r.err).at("error") == "ZeroOperator");

  r = invoke({"channel", "--input", dir.file("nu.json", "[[1, 1], [0, 1]]"), "-o", "-"});
  CHECK(r.code == 2);
  CHECK(io::parse(r.err).at("error") == "NotUnitary");

  r = invoke({"suite-classify", "-o", "-", "--input",
              dir.file("s3.json", R"({"n": 3, "domain": [[1,0,0],[0,1,0]], "range": [[1,0,0],[0,1,0]]})")});
  CHECK(r.code == 2);
  CHECK(io::parse(r.err).at("error") == "WrongDimension");

  r = invoke({"suite-classify", "-o", "-", "--input",
              dir.file("dup.json", R"({"n": 2, "domain": [0, 0], "range": [1, 2]})")});
  CHECK(r.code == 2);
  CHECK(io::parse(r.err).at("error") == "InvalidSuite");

  r = invoke({"mc-scaling", "--n", "2", "--ell", "4", "--eps", "0.1", "--samples", "0", "--seed", "1", "-o", "-"});
  CHECK(r.code == 2);
  CHECK(io::parse(r.err).at("error") == "BadOptions");
}
