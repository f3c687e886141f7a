#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "unitfrac/bounds.hpp"
#include "unitfrac/census.hpp"
#include "unitfrac/cli.hpp"

using namespace unitfrac;
using Json = nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::main(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto& row = rows.emplace_back();
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(cell);
  }
  return rows;
}

}  // namespace

TEST_CASE("census json") {
  const Run r = run({"census", "6", "--format", "json"});
  REQUIRE(r.status == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["command"] == "census");
  const Json& row = doc["rows"][0];
  CHECK(row["count_eq_one"] == "2");
  CHECK(row["count_le_one"] == "26");
  CHECK(row["count_le_one_excluding_empty"] == "25");
  CHECK(row["method"] == "brute");
}

TEST_CASE("census big counts stay exact as strings") {
  const Run r = run({"--format", "json", "census", "45"});
  REQUIRE(r.status == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["rows"][0]["count_le_one"] == count_mitm(45).count_le_one.str());
  CHECK(doc["rows"][0]["method"] == "mitm");
}

TEST_CASE("rate") {
  const Run r = run({"rate", "0.0384235", "--format", "json"});
  REQUIRE(r.status == 0);
  const Json row = Json::parse(r.out)["rows"][0];
  CHECK(row["f"].get<double>() <= -0.0541);
  CHECK(row["bits_per_n"].get<double>() <= 0.93);
}

TEST_CASE("exit statuses") {
  const Run zero = run({"census", "0"});
  CHECK(zero.status == 1);
  CHECK(zero.err.find("domain error") != std::string::npos);

  const Run cap = run({"census", "30", "--method", "brute"});
  CHECK(cap.status == 1);
  CHECK(cap.err.find("26") != std::string::npos);

  CHECK(run({"census", "60"}).status == 1);
  CHECK(run({"bound", "10"}).status == 1);
  CHECK(run({"rate", "-1"}).status == 1);
  CHECK(run({}).status == 2);
  CHECK(run({"census"}).status == 2);
  CHECK(run({"census", "5", "--method", "nope"}).status == 2);
  CHECK(run({"frobnicate"}).status == 2);
  CHECK(run({"census", "5", "--format", "xml"}).status == 2);
  const Run help = run({"--help"});
  CHECK(help.status == 0);
  CHECK(help.out.find("census") != std::string::npos);
}

TEST_CASE("csv output round-trips numeric fields exactly") {
  const Run r = run({"bound", "64", "--m", "4", "--format", "csv"});
  REQUIRE(r.status == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"n", "m", "t", "x", "variant", "log2_prob_bound", "log2_count_bound",
                                            "bits_per_n"});
  const auto p = canonical_params(64, 4);
  const BoundReport expected[] = {tail_bound_log2(p, BoundVariant::ExactCosh),
                                  tail_bound_log2(p, BoundVariant::Lemma), optimized_bound_log2(64, 4)};
  for (int k = 0; k < 3; ++k) {
    const auto& row = rows[k + 1];
    CHECK(std::stoul(row[0]) == 64);
    CHECK(std::stoul(row[1]) == 4);
    CHECK(std::strtod(row[2].c_str(), nullptr) == expected[k].params.t);
    CHECK(std::strtod(row[3].c_str(), nullptr) == expected[k].params.x);
    CHECK(row[4] == to_string(expected[k].variant));
    CHECK(std::strtod(row[5].c_str(), nullptr) == expected[k].log2_prob_bound);
    CHECK(std::strtod(row[6].c_str(), nullptr) == expected[k].log2_count_bound);
    CHECK(std::strtod(row[7].c_str(), nullptr) == expected[k].bits_per_n);
  }
}

TEST_CASE("json output round-trips numeric fields exactly") {
  const Run r = run({"bound", "500", "--format", "json"});
  REQUIRE(r.status == 0);
  const Json row = Json::parse(r.out)["rows"][0];
  const BoundReport b = best_finite_bound(500);
  CHECK(row["m"].get<unsigned>() == b.params.m);
  CHECK(row["x"].get<double>() == b.params.x);
  CHECK(row["log2_prob_bound"].get<double>() == b.log2_prob_bound);
  CHECK(row["bits_per_n"].get<double>() == b.bits_per_n);
  CHECK(row["variant"] == to_string(b.variant));
}

TEST_CASE("bound variants and m override") {
  CHECK(run({"bound", "64", "--variant", "lemma"}).status == 1);
  const Run one = run({"bound", "64", "--m", "4", "--variant", "lemma", "--format", "csv"});
  REQUIRE(one.status == 0);
  CHECK(parse_csv(one.out).size() == 2);
  CHECK(run({"bound", "18", "--m", "2"}).status == 1);
}

TEST_CASE("optimize") {
  const Run r = run({"optimize", "--format", "json"});
  REQUIRE(r.status == 0);
  const Json row = Json::parse(r.out)["rows"][0];
  CHECK(row["f_star"].get<double>() <= -0.0541);
  CHECK(row["unimodal"] == true);
  CHECK(row["bracket_lo"].get<double>() <= 0.0384235);
  CHECK(row["bracket_hi"].get<double>() >= 0.0384235);
}

TEST_CASE("mc seeds: flag, REPRO_SEED, default") {
  const Run flag = run({"mc", "12", "--trials", "5000", "--seed", "17", "--format", "json"});
  REQUIRE(flag.status == 0);
  const Json row = Json::parse(flag.out)["rows"][0];
  CHECK(row["seed"] == "17");
  CHECK(row["t"].get<double>() == harmonic_float(12) - 2.0);
  CHECK(row["trials"].get<long long>() == 5000);

  ::setenv("REPRO_SEED", "99", 1);
  const Json env_row = Json::parse(run({"mc", "12", "--trials", "5000", "--format", "json"}).out)["rows"][0];
  CHECK(env_row["seed"] == "99");
  ::setenv("REPRO_SEED", "banana", 1);
  CHECK(run({"mc", "12", "--trials", "5000"}).status == 1);
  ::unsetenv("REPRO_SEED");
  const Json def_row = Json::parse(run({"mc", "12", "--trials", "5000", "--format", "json"}).out)["rows"][0];
  CHECK(def_row["seed"] == std::to_string(cli::kDefaultSeed));

  const Json t_row = Json::parse(run({"mc", "3", "--t", "-5", "--trials", "100", "--format", "json"}).out)["rows"][0];
  CHECK(t_row["p_hat"].get<double>() == 1.0);
  CHECK(run({"mc", "3", "--trials", "0"}).status == 2);
}

TEST_CASE("compare joins the channels consistently") {
  for (const char* n : {"5", "24", "30"}) {
    const Run r = run({"compare", n, "--trials", "20000", "--format", "json"});
    REQUIRE(r.status == 0);
    const Json row = Json::parse(r.out)["rows"][0];
    CHECK(row["consistent"] == true);
    CHECK(!row["count_le_one"].is_null());
  }
  const Json row30 = Json::parse(run({"compare", "30", "--trials", "1000", "--format", "json"}).out)["rows"][0];
  CHECK(row30["log2_count_le_one"].get<double>() <= row30["log2_count_bound"].get<double>());
  CHECK(row30["log2_trivial_lower_bound"].get<double>() <= row30["log2_count_le_one"].get<double>());

  const Json row5 = Json::parse(run({"compare", "5", "--trials", "1000", "--format", "json"}).out)["rows"][0];
  CHECK(row5["log2_count_bound"].is_null());

  const Json row80 = Json::parse(run({"compare", "80", "--trials", "1000", "--format", "json"}).out)["rows"][0];
  CHECK(row80["count_le_one"].is_null());
  CHECK(row80["consistent"] == true);
}

TEST_CASE("threshold json and output file") {
  const auto path = std::filesystem::temp_directory_path() / "unitfrac_threshold.json";
  const Run r = run({"threshold", "400", "--format", "json", "-o", path.string()});
  REQUIRE(r.status == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const Json doc = Json::parse(in);
  CHECK(doc["rows"].size() == 400 - 19 + 1);
  CHECK(doc["crossing_n"].is_number());
  CHECK(doc["target"].get<double>() == 0.93);
  std::filesystem::remove(path);
}

TEST_CASE("table format") {
  const Run r = run({"census", "6"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("count_le_one") != std::string::npos);
  CHECK(r.out.find("26") != std::string::npos);
}
