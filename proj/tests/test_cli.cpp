#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cli.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run_cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"sp4"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  CliRun r;
  r.code = sp4::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> f;
  std::istringstream is(line);
  std::string part;
  while (std::getline(is, part, ',')) f.push_back(part);
  return f;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"zeros", "--rep", "6"}).code == 2);
  CHECK(run_cli({"zeros", "--L", "13"}).code == 2);  // above the default SP4_MAX_L cap
  CHECK(run_cli({"zeros", "--L", "13"}).err.find("SP4_MAX_L") != std::string::npos);
  CHECK(run_cli({"eigen", "--L", "2", "--lambda", "abc"}).code == 2);
  CHECK(run_cli({"eigen", "--L", "2", "--lambda-range", "1:2"}).code == 2);
  CHECK(run_cli({"eigen", "--L", "2", "--lambda-range", "2:1:0.5"}).code == 2);
  CHECK(run_cli({"zeros", "--region", "0:1:2"}).code == 2);
  CHECK(run_cli({"zeros", "--region", "1:0:-1:1"}).code == 2);
  CHECK(run_cli({"thermo", "--observable", "entropy"}).code == 2);
  CHECK(run_cli({"identities", "--format", "gnuplot"}).code == 2);
}

TEST_CASE("help exits 0 and lists the subcommands") {
  const CliRun r = run_cli({"--help"});
  CHECK(r.code == 0);
  for (const char* name :
       {"verify-algebra", "verify-fusion", "eigen", "identities", "zeros", "thermo", "compare",
        "selftest"})
    CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("verify-algebra exact battery passes and reports per check") {
  const CliRun r = run_cli({"verify-algebra", "--exact", "--count", "2", "--seed", "7"});
  CHECK(r.code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 10);  // config + header + 8 check rows
  CHECK(ls[0].rfind("# {", 0) == 0);
  CHECK(ls[0].find("\"exact\":true") != std::string::npos);
  CHECK(ls[1] == "check,points,failures,pass");
  for (std::size_t k = 2; k < ls.size(); ++k) {
    const auto f = split_csv(ls[k]);
    REQUIRE(f.size() == 4);
    CHECK(f[2] == "0");
    CHECK(f[3] == "1");
  }
}

TEST_CASE("verify-algebra float mode reports residuals") {
  const CliRun r = run_cli({"verify-algebra", "--count", "3", "--format", "json"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["config"]["exact"] == false);
  CHECK(doc["data"]["all_pass"] == true);
  REQUIRE(doc["data"]["checks"].size() == 3);
  for (const json& ck : doc["data"]["checks"]) {
    CHECK(ck["max_residual"].get<double>() < 1e-10);
    CHECK(ck["points"] == 3);
  }
  CHECK(!doc.contains("failures"));
}

TEST_CASE("verify-fusion grid table") {
  const CliRun r = run_cli({"verify-fusion", "--lambda-range=-1:1:1"});
  CHECK(r.code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 11);  // config + header + 3 rules x 3 points
  CHECK(ls[1] == "rule,lambda_re,lambda_im,residual");
  for (std::size_t k = 2; k < ls.size(); ++k) {
    const auto f = split_csv(ls[k]);
    REQUIRE(f.size() == 4);
    CHECK(std::stod(f[3]) < 1e-9);
  }
  // byte-stable across runs
  const CliRun again = run_cli({"verify-fusion", "--lambda-range=-1:1:1"});
  CHECK(again.out == r.out);
}

TEST_CASE("verify-fusion accepts one complex point") {
  const CliRun r = run_cli({"verify-fusion", "--lambda", "0.5+0.25i", "--format", "json"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["config"]["lambda"] == json({0.5, 0.25}));
  CHECK(doc["data"]["all_pass"] == true);
  REQUIRE(doc["data"]["rules"].size() == 3);
}

TEST_CASE("eigen exports the branch on the requested grid") {
  const CliRun r =
      run_cli({"eigen", "--L", "2", "--rep", "4", "--lambda-range=-1:0:0.5", "--format",
               "json"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc["data"].size() == 3);
  CHECK(doc["data"][0]["lambda"] == json({-1.0, 0.0}));
  // at the shift point the eigenvalue is 3^L and kappa is 3
  const json& last = doc["data"][2];
  CHECK(last["lambda"][0].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(last["Lambda"][0].get<double>() == doctest::Approx(9.0).epsilon(1e-10));
  CHECK(last["kappa"][0].get<double>() == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(last["residual"].get<double>() < 1e-9);

  const CliRun csv = run_cli({"eigen", "--L", "2", "--lambda", "0.3+0.2i"});
  CHECK(csv.code == 0);
  const auto ls = lines_of(csv.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[1] == "lambda_re,lambda_im,Lambda_re,Lambda_im,kappa_re,kappa_im,overlap,residual");
  CHECK(split_csv(ls[2]).size() == 8);
}

TEST_CASE("identities emits the pinned JSON report array") {
  const CliRun r = run_cli({"identities", "--L", "2", "--lambda", "0.2"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc["data"].size() == 3);
  for (int k = 0; k < 3; ++k) {
    const json& row = doc["data"][k];
    CHECK(row["id"] == k + 1);
    CHECK(row["L"] == 2);
    CHECK(row["lambda"] == json({0.2, 0.0}));
    for (const char* key : {"lhs", "rhs", "remainder"}) {
      REQUIRE(row[key].size() == 2);
      CHECK(row[key][1] == 0.0);
    }
    CHECK(row["normalized"].get<double>() > 0.0);
  }
}

TEST_CASE("zeros scan: csv, gnuplot and json agree on the L=4 pattern") {
  const CliRun csv = run_cli({"zeros", "--rep", "4", "--L", "4"});
  CHECK(csv.code == 0);
  const auto ls = lines_of(csv.out);
  REQUIRE(ls.size() == 11);  // config + header + 8 zeros + summary
  CHECK(ls[1] == "re,im,abs_residual");
  CHECK(ls[10].rfind("# zeros: 8", 0) == 0);

  const CliRun gp = run_cli({"zeros", "--rep", "4", "--L", "4", "--format", "gnuplot"});
  CHECK(gp.code == 0);
  CHECK(gp.out.find("plot '-'") != std::string::npos);

  const CliRun js = run_cli({"zeros", "--rep", "4", "--L", "4", "--format", "json"});
  CHECK(js.code == 0);
  const json doc = json::parse(js.out);
  CHECK(doc["data"]["zeros"].size() == 8);
  CHECK(doc["data"]["crossing_residual"].get<double>() < 1e-9);
  CHECK(doc["config"]["region"] == json({-3.4, 0.4, -2.0, 2.0}));
}

TEST_CASE("zeros honors a restricted region") {
  // only the two innermost on-line zeros live in this strip
  const CliRun r = run_cli(
      {"zeros", "--rep", "4", "--L", "4", "--region=-1.7:-1.3:-0.6:0.6", "--format", "json"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc["data"]["zeros"].size() == 2);
  for (const json& z : doc["data"]["zeros"])
    CHECK(std::abs(z["re"].get<double>() + 1.5) < 1e-8);
}

TEST_CASE("thermo table with integral fallback at a removable singularity") {
  const CliRun r = run_cli({"thermo", "--lambda-range=-2:-1:0.5"});
  CHECK(r.code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 5);  // config + header + 3 rows
  CHECK(ls[1] == "lambda,value_re,value_im,form,region");
  const auto at_m2 = split_csv(ls[2]);
  const auto at_m15 = split_csv(ls[3]);
  const auto at_m1 = split_csv(ls[4]);
  CHECK(at_m2[3] == "gamma");
  CHECK(at_m2[4] == "I");
  CHECK(at_m15[4] == "II");
  // the gamma form has a removable singularity at -1: the integral takes over
  CHECK(at_m1[3] == "integral");
  CHECK(at_m1[4] == "II");
  CHECK(std::stod(at_m1[1]) == doctest::Approx(2.67797055813056).epsilon(1e-9));
}

TEST_CASE("thermo omega observable at the origin") {
  const CliRun r = run_cli({"thermo", "--observable", "omega", "--lambda", "0", "--format",
                            "json"});
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc["data"].size() == 1);
  CHECK(doc["data"][0]["value"][0].get<double>() ==
        doctest::Approx(-0.32726276613197549).epsilon(1e-12));
}

TEST_CASE("compare reports per-point deviation and enforces --tol") {
  const CliRun r = run_cli({"compare", "--rep", "4", "--L", "4", "--lambda=-0.5"});
  CHECK(r.code == 0);
  const auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[1] == "lambda,kappa_finite,kappa_closed,deviation,form,region");
  const auto f = split_csv(ls[2]);
  REQUIRE(f.size() == 6);
  CHECK(std::stod(f[3]) < 0.5);
  CHECK(std::stod(f[3]) > 1e-6);  // L=4 is far from the limit

  const CliRun strict =
      run_cli({"compare", "--rep", "4", "--L", "4", "--lambda=-0.5", "--tol", "1e-15"});
  CHECK(strict.code == 1);
  CHECK(strict.out.find("# failures:") != std::string::npos);
  CHECK(strict.err.find("over tolerance") != std::string::npos);
}

TEST_CASE("--out writes the artifact to a file and stdout stays clean") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "sp4_cli_test_zeros.csv";
  std::error_code ec;
  fs::remove(path, ec);
  const CliRun r =
      run_cli({"zeros", "--rep", "4", "--L", "4", "--out", path.string().c_str()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str().rfind("# {", 0) == 0);
  CHECK(buf.str().find("re,im,abs_residual") != std::string::npos);
  fs::remove(path, ec);
}
