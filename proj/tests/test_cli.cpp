#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lufact/cli.hpp"
#include "lufact/io.hpp"
#include "support/random_matrix.hpp"

using namespace lufact;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "lufact_cli_tests";
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream(path) << text;
  return path;
}

Result run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "lufact");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const char* const kExchange = "2 2 Q\n0 1\n1 0\n";

}  // namespace

TEST_CASE("check on the exchange matrix") {
  const auto path = write_temp("cx.txt", kExchange);
  const Result r = run_args({"check", path.string()});
  CHECK(r.code == cli::kNoFactorization);
  CHECK(r.out.find("verdict: no LU factorization") != std::string::npos);
  CHECK(r.out.find("failure degree: 1") != std::string::npos);

  const Result j = run_args({"check", path.string(), "--json"});
  CHECK(j.code == cli::kNoFactorization);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["verdict"] == "does_not_exist");
  CHECK(doc["failure_degree"] == 1);
  CHECK(doc["per_k"][0]["deficiency"] == 1);
}

TEST_CASE("kw and hv on the exchange matrix") {
  const auto path = write_temp("cx_kw.txt", kExchange);
  const Result kw = run_args({"kw", path.string(), "--extra", "1", "--trace"});
  CHECK(kw.code == cli::kSuccess);
  CHECK(kw.out.find("k=1 pivot=(1,2) priority=2") != std::string::npos);
  CHECK(kw.out.find("k=2 pivot=(2,1) priority=2") != std::string::npos);
  const auto blocks = io::parse_factor_blocks(kw.out, std::nullopt);
  REQUIRE(blocks.size() == 2);
  CHECK(std::get<Matrix>(blocks[0]) == Matrix::identity(FieldSpec::rationals(), 2));

  CHECK(run_args({"kw", path.string(), "--extra", "0"}).code == cli::kNoFactorization);
  CHECK(run_args({"hv", path.string(), "--extra", "1"}).code == cli::kSuccess);
  CHECK(run_args({"hv", path.string(), "--extra", "0"}).code == cli::kNoFactorization);
}

TEST_CASE("usage errors") {
  const auto path = write_temp("cx_usage.txt", kExchange);
  CHECK(run_args({"kw", path.string()}).code == cli::kUsageError);
  CHECK(run_args({"check", path.string(), "--extra", "1"}).code == cli::kUsageError);
  CHECK(run_args({"ulu", path.string(), "--trace"}).code == cli::kUsageError);
  CHECK(run_args({"frobnicate"}).code == cli::kUsageError);
  CHECK(run_args({"check", "/nonexistent/matrix.txt"}).code == cli::kUsageError);

  const auto bad = write_temp("bad.txt", "2 2 Q\n0 1\n1 x\n");
  const Result r = run_args({"check", bad.string()});
  CHECK(r.code == cli::kUsageError);
  CHECK(r.err.find("3:3") != std::string::npos);

  const auto short_row = write_temp("short.txt", "2 2 Q\n0 1\n1\n");
  CHECK(run_args({"check", short_row.string()}).code == cli::kUsageError);
  const auto non_square = write_temp("rect.txt", "2 3 Q\n0 1 0\n1 0 0\n");
  CHECK(run_args({"lu", non_square.string()}).code == cli::kUsageError);
}

TEST_CASE("parser reduces residues and skips comments") {
  CHECK(io::parse_matrix("1 1 F5\n9\n") == Matrix::from_ints(FieldSpec::prime(5), {{4}}));
  CHECK(io::parse_matrix("# c\n\n2 2 F7\n# row\n-1 0\n\n0 8\n") ==
        Matrix::from_ints(FieldSpec::prime(7), {{6, 0}, {0, 1}}));
  CHECK_THROWS_AS(io::parse_matrix("1 1 Q\n1\n2\n"), ParseError);
  CHECK_THROWS_AS(io::parse_matrix("1 1 F4\n1\n"), ParseError);
  try {
    io::parse_matrix("2 2 Q\n0 1\n1 1/0\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 3);
  }
}

TEST_CASE("lu JSON on the zero matrix") {
  const auto path = write_temp("zero.txt", "2 2 F3\n0 0\n0 0\n");
  const Result r = run_args({"lu", path.string(), "--json"});
  CHECK(r.code == cli::kSuccess);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["verdict"] == "exists");
  for (const auto& factor : doc["factors"]) {
    for (const auto& row : factor) {
      for (const auto& entry : row) CHECK(entry == "0");
    }
  }
}

TEST_CASE("every verb's output verifies against its input") {
  testing::Rng rng(71);
  const FieldSpec f7 = FieldSpec::prime(7);
  for (int t = 0; t < 25; ++t) {
    const FieldSpec field = t % 2 ? f7 : FieldSpec::rationals();
    const std::size_t n = 1 + rng() % 5;
    const Matrix a = testing::planted_rank_matrix(rng, field, n, rng() % (n + 1));
    const std::string text = io::format_matrix(a);
    CHECK(io::parse_matrix(text) == a);
    const auto path = write_temp("m" + std::to_string(t) + ".txt", text);
    const std::string extra = std::to_string(failure_degree(a));

    const std::vector<std::vector<std::string>> commands = {
        {"lu", "--trace"}, {"kw", "--extra", extra, "--trace"}, {"hv", "--extra", extra},
        {"ulu"}, {"lul"}, {"plu"}, {"lup"}};
    for (auto args : commands) {
      args.insert(args.begin() + 1, path.string());
      const Result r = run_args(args);
      if (args[0] == "lu" && !satisfies_lu_conditions(a)) {
        CHECK(r.code == cli::kNoFactorization);
        continue;
      }
      REQUIRE(r.code == cli::kSuccess);
      const auto factors = write_temp("f" + std::to_string(t) + args[0] + ".txt", r.out);
      const Result v = run_args({"verify", path.string(), factors.string()});
      INFO(args[0], "\n", text, r.out, v.out, v.err);
      CHECK(v.code == cli::kSuccess);
      CHECK(v.out.find("exact match") != std::string::npos);

      // Byte-for-byte deterministic.
      CHECK(run_args(args).out == r.out);
    }
  }
}

TEST_CASE("verify reports a mismatch") {
  const auto path = write_temp("cx_verify.txt", kExchange);
  const auto wrong = write_temp("wrong.txt", "2 2 Q\n1 0\n0 1\n---\n2 2 Q\n1 0\n0 1\n");
  const Result r = run_args({"verify", path.string(), wrong.string()});
  CHECK(r.code == cli::kNoFactorization);
  CHECK(r.out.find("mismatch at (1,1)") != std::string::npos);
}

TEST_CASE("selftest") {
  const Result r = run_args({"selftest"});
  CHECK(r.code == cli::kSuccess);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
