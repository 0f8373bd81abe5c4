#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sperner/cli/app.hpp"
#include "sperner/cli/tables.hpp"
#include "sperner/cli/witness.hpp"
#include "sperner/constructions.hpp"

using namespace sperner;
using namespace sperner::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sperner");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("sperner_test_" + name)).string();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string read(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_SUITE("witness") {
  TEST_CASE("serialization round-trips byte for byte") {
    const auto t = build_product_tuple(ProductParams{6, 3, {2, 2, 2}});
    Witness w = make_witness(t, Provenance{"builder", "product", {{"n", 6}}, std::nullopt});
    w.created = "2024-01-01T00:00:00Z";
    const std::string text = serialize(w);
    CHECK(serialize(parse_witness(text)) == text);
    CHECK(text ==
          "{\"created\":\"2024-01-01T00:00:00Z\",\"encoding\":\"mask\",\"families\":[[10,11,14,15,26,27,30,31],"
          "[34,35,38,39,50,51,54,55],[40,41,44,45,56,57,60,61]],\"k\":3,\"measures\":{\"product\":512,\"sum\":24},"
          "\"n\":6,\"provenance\":{\"name\":\"product\",\"parameters\":{\"n\":6},\"seed\":null,\"source\":"
          "\"builder\"},\"schema_version\":1}\n");
  }

  TEST_CASE("element encoding is accepted") {
    const auto w = parse_witness(
        R"({"schema_version":1,"n":3,"k":2,"encoding":"elements","families":[[[1],[1,3]],[[2]]]})");
    CHECK(w.encoding == Encoding::Elements);
    CHECK(w.tuple.families[0].masks() == std::vector<SetMask>{1, 5});
    CHECK(w.tuple.families[1].masks() == std::vector<SetMask>{2});
    CHECK(serialize(parse_witness(serialize(w))) == serialize(w));
  }

  TEST_CASE("large products are written as strings") {
    const auto t = build_conjecture_tuple(ConjectureParams::make(20, 4));
    const auto text = serialize(make_witness(t, Provenance{"builder", "conjecture", {}, std::nullopt}));
    CHECK(contains(text, "\"product\":\"18446744073709551616\""));
    const auto back = parse_witness(text);
    CHECK(back.stored_measures->product == pow2(64));
  }

  TEST_CASE("schema violations are named") {
    auto error_of = [](const std::string& text) {
      try {
        parse_witness(text);
      } catch (const SchemaError& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    CHECK(contains(error_of("[1,2"), "not valid JSON"));
    CHECK(contains(error_of("[]"), "object"));
    CHECK(contains(error_of(R"({"n":2,"k":1,"encoding":"mask","families":[[1]]})"), "schema_version"));
    CHECK(contains(error_of(R"({"schema_version":2,"n":2,"k":1,"encoding":"mask","families":[[1]]})"),
                   "unsupported schema_version"));
    CHECK(contains(error_of(R"({"schema_version":1,"n":2,"k":2,"encoding":"mask","families":[[1]]})"), "k=2"));
    CHECK(contains(error_of(R"({"schema_version":1,"n":2,"k":1,"encoding":"mask","families":[[4]]})"), "outside"));
    CHECK(contains(error_of(R"({"schema_version":1,"n":2,"k":1,"encoding":"mask","families":[[1,1]]})"), "twice"));
    CHECK(contains(error_of(R"({"schema_version":1,"n":2,"k":1,"encoding":"bits","families":[[1]]})"), "encoding"));
    CHECK(contains(error_of(R"({"schema_version":1,"n":3,"k":1,"encoding":"elements","families":[[[2,1]]]})"),
                   "increasing"));
    CHECK(contains(error_of(R"({"schema_version":1,"n":30,"k":1,"encoding":"mask","families":[[1]]})"), "n must"));
  }
}

TEST_SUITE("cli") {
  TEST_CASE("construct then verify") {
    const auto path = temp_path("product.json");
    const auto built = run_cli({"construct", "product", "--n", "6", "--k", "3", "--segments", "2,2,2", "--out", path});
    CHECK(built.code == kExitOk);
    CHECK(contains(built.out, "product: 512"));
    CHECK(contains(built.out, "PI_UPPER"));
    const auto checked = run_cli({"verify", path});
    CHECK(checked.code == kExitOk);
    CHECK(contains(checked.out, "VALID"));
    CHECK(contains(checked.out, "product: 512"));
    CHECK(serialize(parse_witness(read(path))) == read(path));
  }

  TEST_CASE("every construction kind verifies") {
    const std::vector<std::vector<std::string>> cases = {
        {"pair-product", "--n", "5"},          {"pair-sum", "--n", "6"},
        {"product", "--n", "9", "--k", "3"},   {"sum", "--n", "8", "--k", "2"},
        {"sum", "--n", "7", "--k", "3", "--ell", "2"}, {"conjecture", "--n", "6", "--k", "3"}};
    for (auto args : cases) {
      args.insert(args.begin(), "construct");
      const auto r = run_cli(args);
      REQUIRE(r.code == kExitOk);
      const auto path = temp_path("kind.json");
      write(path, r.out);
      CHECK(run_cli({"verify", path}).code == kExitOk);
    }
  }

  TEST_CASE("sum construction summary") {
    const auto path = temp_path("sum.json");
    const auto r = run_cli({"construct", "sum", "--n", "4", "--k", "3", "--out", path});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "sum: 8"));
    CHECK(parse_witness(read(path)).stored_measures->sum == 8);
  }

  TEST_CASE("construct rejects bad parameters") {
    const auto r = run_cli({"construct", "product", "--n", "2", "--k", "3"});
    CHECK(r.code == kExitUsage);
    CHECK(contains(r.err, "error:"));
    CHECK(run_cli({"construct", "pair-sum", "--n", "6", "--k", "3"}).code == kExitUsage);
    CHECK(run_cli({"construct", "sum", "--n", "6", "--k", "2", "--a", "1"}).code == kExitUsage);
    CHECK(run_cli({"construct", "spiral", "--n", "6"}).code == kExitUsage);
    CHECK(run_cli({"construct", "product"}).code == kExitUsage);
    CHECK(run_cli({}).code == kExitUsage);
    CHECK(run_cli({"--help"}).code == kExitOk);
  }

  TEST_CASE("verify reports the first violating pair") {
    const auto path = temp_path("invalid.json");
    write(path, R"({"schema_version":1,"n":2,"k":2,"encoding":"elements","families":[[[1]],[[1,2]]]})");
    const auto r = run_cli({"verify", path});
    CHECK(r.code == kExitInvalid);
    CHECK(contains(r.out, "INVALID"));
    CHECK(contains(r.out, "family 1 member {1}"));
    CHECK(contains(r.out, "family 2 member {1,2}"));
  }

  TEST_CASE("verify rejects empty families, bad measures and bad files") {
    const auto path = temp_path("empty.json");
    write(path, R"({"schema_version":1,"n":2,"k":2,"encoding":"mask","families":[[1],[]]})");
    const auto r = run_cli({"verify", path});
    CHECK(r.code == kExitUsage);
    CHECK(contains(r.err, "families must be non-empty"));

    write(path, R"({"schema_version":1,"n":2,"k":2,"encoding":"mask","families":[[1],[2]],)"
                R"("measures":{"sum":3,"product":1}})");
    CHECK(run_cli({"verify", path}).code == kExitInvalid);

    write(path, "{not json");
    const auto bad = run_cli({"verify", path});
    CHECK(bad.code == kExitUsage);
    CHECK(contains(bad.err, "schema error"));
    CHECK(run_cli({"verify", temp_path("missing.json")}).code == kExitUsage);
  }

  TEST_CASE("exact searches") {
    const auto pi = run_cli({"search", "pi", "--n", "4", "--k", "3", "--mode", "exact", "--out", temp_path("pi.json")});
    CHECK(pi.code == kExitOk);
    CHECK(contains(pi.out, "value: 9\n"));
    CHECK(contains(pi.out, "optimal: true"));
    CHECK(run_cli({"verify", temp_path("pi.json")}).code == kExitOk);

    const auto sigma = run_cli({"search", "sigma", "--n", "4", "--k", "2", "--out", temp_path("sigma.json")});
    CHECK(sigma.code == kExitOk);
    CHECK(contains(sigma.out, "value: 10\n"));

    const auto cut = run_cli({"search", "pi", "--n", "5", "--k", "3", "--budget-nodes", "100", "--out",
                              temp_path("cut.json")});
    CHECK(cut.code == kExitBudget);
    CHECK(contains(cut.out, "optimal: false"));
    CHECK(run_cli({"verify", temp_path("cut.json")}).code == kExitOk);

    CHECK(run_cli({"search", "pi", "--n", "6", "--k", "3"}).code == kExitUsage);
    CHECK(run_cli({"search", "pi", "--n", "4", "--k", "3", "--target", "5"}).code == kExitUsage);
  }

  TEST_CASE("heuristic search") {
    const auto r = run_cli({"search", "pi", "--n", "6", "--k", "3", "--mode", "heuristic", "--seed", "1", "--out",
                            temp_path("heur.json")});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "target: 810 (met)"));
    const auto w = parse_witness(read(temp_path("heur.json")));
    CHECK(w.stored_measures->product >= 810);
    CHECK(w.provenance.seed == 1u);

    const auto miss = run_cli({"search", "pi", "--n", "5", "--k", "3", "--mode", "heuristic", "--target", "1000",
                               "--budget-nodes", "2000", "--out", temp_path("miss.json")});
    CHECK(miss.code == kExitBudget);
    CHECK(contains(miss.out, "(not met)"));
  }

  TEST_CASE("comparability table") {
    const auto r = run_cli({"table", "comp", "--n", "4"});
    CHECK(r.code == kExitOk);
    std::istringstream lines(r.out);
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(lines, line)) rows.push_back(line);
    REQUIRE(rows.size() == 17);
    CHECK(rows[0] == "n,m,c_exact,lower_bound,equality,witness_masks");
    CHECK(rows[1].rfind("4,1,7,7,true,", 0) == 0);
    CHECK(run_cli({"table", "comp", "--n", "6"}).code == kExitUsage);
    CHECK(run_cli({"table", "comp", "--n", "2..3", "--format", "json"}).code == kExitOk);
    CHECK(run_cli({"table", "comp", "--n", "x"}).code == kExitUsage);
  }

  TEST_CASE("bounds table") {
    const auto r = run_cli({"table", "bounds", "--n", "8", "--k", "2..4"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "n,k,bound_id,value,applicable\n"));
    CHECK(contains(r.out, "8,2,SIGMA_LOWER/theorem,210,true\n"));
    CHECK(contains(r.out, "8,2,SIGMA_UPPER,226,true\n"));
    CHECK(contains(r.out, "8,4,PI_UPPER,"));
    CHECK(run_cli({"table", "bounds", "--n", "4", "--k", "1"}).code == kExitUsage);
  }

  TEST_CASE("bounds command") {
    const auto r = run_cli({"bounds", "--n", "4", "--k", "3", "--m", "4"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "4,3,PI_UPPER,16384/729,true,"));
    CHECK(contains(r.out, "4,3,COMP_LOWER,12,true,"));
    const auto j = run_cli({"bounds", "--n", "4", "--k", "3", "--format", "json"});
    CHECK(j.code == kExitOk);
    CHECK(nlohmann::json::parse(j.out).size() > 10);
  }

  TEST_CASE("thread count from the environment") {
    setenv("SPERNER_THREADS", "2", 1);
    CHECK(run_cli({"search", "pi", "--n", "4", "--k", "3"}).code == kExitOk);
    setenv("SPERNER_THREADS", "zero", 1);
    CHECK(run_cli({"search", "pi", "--n", "4", "--k", "3"}).code == kExitUsage);
    unsetenv("SPERNER_THREADS");
  }

  TEST_CASE("ranges") {
    CHECK(parse_range("4") == std::pair{4, 4});
    CHECK(parse_range("2..6") == std::pair{2, 6});
    CHECK_THROWS(parse_range("6..2"));
    CHECK_THROWS(parse_range("a..b"));
  }
}
