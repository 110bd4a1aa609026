#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <sstream>

#include "ppra/cli.hpp"
#include "ppra/report.hpp"
#include "ppra/verify.hpp"

using namespace ppra;

TEST_CASE("doubles render with a lossless round trip") {
    for (double v : {0.1, 1.0 / 3.0, 7.853981633974483e6, -2.2250738585072014e-308,
                     0.6931471805599453, 1e300}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("csv quoting and parsing round trip") {
    ReportDocument doc;
    doc.command = "test, with \"quotes\"";
    doc.columns = {"name", "value"};
    doc.add_row({Cell::str("plain"), Cell::num(0.1)});
    doc.add_row({Cell::str("comma, inside"), Cell::num(1.0 / 3.0)});
    doc.add_row({Cell::str("quote \" inside"), Cell::num(-1e-17)});

    std::ostringstream os;
    emit(doc, ReportFormat::csv, os);
    const auto rows = parse_csv(os.str());

    REQUIRE(rows.size() == 6);  // meta header, meta row, column header, 3 data rows
    CHECK(rows[1][1] == "test, with \"quotes\"");
    CHECK(rows[3][0] == "plain");
    CHECK(rows[4][0] == "comma, inside");
    CHECK(rows[5][0] == "quote \" inside");
    CHECK(std::strtod(rows[3][1].c_str(), nullptr) == 0.1);
    CHECK(std::strtod(rows[4][1].c_str(), nullptr) == 1.0 / 3.0);
    CHECK(std::strtod(rows[5][1].c_str(), nullptr) == -1e-17);
}

TEST_CASE("empty reports emit headers only") {
    ReportDocument doc;
    doc.command = "noop";
    doc.columns = {"a", "b"};
    std::ostringstream os;
    emit(doc, ReportFormat::csv, os);
    const auto rows = parse_csv(os.str());
    CHECK(rows.size() == 3);
    CHECK(rows[2] == std::vector<std::string>{"a", "b"});
}

TEST_CASE("non-finite values abort emission") {
    ReportDocument doc;
    doc.columns = {"x"};
    doc.add_row({Cell::num(std::nan(""))});
    std::ostringstream os;
    CHECK_THROWS_AS(emit(doc, ReportFormat::csv, os), EmitError);

    ReportDocument inf_doc;
    inf_doc.columns = {"x"};
    inf_doc.add_row({Cell::num(INFINITY)});
    CHECK_THROWS_AS(emit(inf_doc, ReportFormat::json, os), EmitError);
}

TEST_CASE("row width must match columns") {
    ReportDocument doc;
    doc.columns = {"a", "b"};
    CHECK_THROWS_AS(doc.add_row({Cell::num(1.0)}), EmitError);
}

TEST_CASE("argument parsing accepts the documented forms") {
    using cli::parse_args;

    const auto rep = parse_args({"rep", "--k", "2,2,2", "--limit", "5000", "--format", "csv"});
    CHECK(rep.command == cli::Command::rep);
    CHECK(rep.tuple == std::vector<int>{2, 2, 2});
    CHECK(rep.limit == 5000);

    const auto window = parse_args({"window", "--k", "2,2", "--N", "1000", "--H", "100"});
    CHECK(window.command == cli::Command::window);
    CHECK(window.tuple.size() == 2);  // library mode allows r = 2

    const auto ladder = parse_args(
        {"ladder", "--k", "2,2,3", "--N-list", "1e5,1000000", "--h-exp", "0.62"});
    CHECK(ladder.n_list == std::vector<std::int64_t>{100000, 1000000});
    CHECK(ladder.h_exponent == 0.62);

    const auto verify = parse_args({"verify", "--suite", "identity", "--seed", "7"});
    CHECK(verify.suite == "identity");
    CHECK(verify.seed == 7);
}

TEST_CASE("help is not an error") {
    CHECK_THROWS_AS(cli::parse_args({"--help"}), cli::HelpRequested);
    CHECK_THROWS_AS(cli::parse_args({"rep", "--help"}), cli::HelpRequested);
}

TEST_CASE("argument parsing rejects bad input with the flag named") {
    using cli::parse_args;
    using cli::UsageError;

    CHECK_THROWS_WITH_AS(parse_args({"ladder", "--k", "2,2", "--N-list", "1e5"}),
                         doctest::Contains("--k"), UsageError);
    CHECK_THROWS_WITH_AS(parse_args({"rep", "--k", "2,1,3", "--limit", "100"}),
                         doctest::Contains("--k"), UsageError);
    CHECK_THROWS_WITH_AS(parse_args({"verify", "--suite", "bogus"}),
                         doctest::Contains("--suite"), UsageError);
    CHECK_THROWS_AS(parse_args({"rep", "--limit", "100"}), UsageError);  // missing --k
    CHECK_THROWS_AS(parse_args({}), UsageError);
}

TEST_CASE("sieve command output matches the hand list") {
    cli::RunConfig config;
    config.command = cli::Command::sieve;
    config.limit = 10;
    std::ostringstream out, err;
    REQUIRE(cli::run(config, out, err) == 0);

    const auto rows = parse_csv(out.str());
    REQUIRE(rows.size() == 3 + 11);
    const double expected[11] = {0.0,
                                 0.0,
                                 std::log(2.0),
                                 std::log(3.0),
                                 std::log(2.0),
                                 std::log(5.0),
                                 0.0,
                                 std::log(7.0),
                                 std::log(2.0),
                                 std::log(3.0),
                                 0.0};
    for (int n = 0; n <= 10; ++n) {
        const auto& row = rows[static_cast<std::size_t>(3 + n)];
        CHECK(row[0] == std::to_string(n));
        CHECK(std::strtod(row[1].c_str(), nullptr) ==
              doctest::Approx(expected[n]).epsilon(1e-15));
    }
}

TEST_CASE("verify command exit code and determinism across worker counts") {
    cli::RunConfig config;
    config.command = cli::Command::verify;
    config.suite = "identity";
    config.seed = 7;
    config.format = ReportFormat::json;

    config.workers = 1;
    std::ostringstream out1, err1;
    REQUIRE(cli::run(config, out1, err1) == 0);

    config.workers = 2;
    std::ostringstream out2, err2;
    REQUIRE(cli::run(config, out2, err2) == 0);

    CHECK(out1.str() == out2.str());
    CHECK(out1.str().find("\"fail_count\": 0") != std::string::npos);
}

TEST_CASE("identity suite emits one row per residual plus coefficients") {
    VerifyOptions options;
    options.seed = 7;
    const ReportDocument doc = run_verify("identity", options);
    std::int64_t residual_rows = 0;
    for (const auto& row : doc.rows)
        if (row[1].text.find("residual") != std::string::npos) ++residual_rows;
    CHECK(residual_rows == 100);
    CHECK(doc.summary.fail_count == 0);
}

TEST_CASE("cold and warm cache runs produce identical reports") {
    const auto dir = std::filesystem::temp_directory_path() / "ppra_cli_cache_test";
    std::filesystem::remove_all(dir);

    cli::RunConfig config;
    config.command = cli::Command::sieve;
    config.limit = 2000;
    config.cache_dir = dir.string();

    std::ostringstream cold, warm, err;
    REQUIRE(cli::run(config, cold, err) == 0);
    REQUIRE(std::filesystem::exists(dir));
    REQUIRE(cli::run(config, warm, err) == 0);
    CHECK(cold.str() == warm.str());
    std::filesystem::remove_all(dir);
}

TEST_CASE("library precondition violations exit as usage errors") {
    cli::RunConfig config;
    config.command = cli::Command::rep;
    config.tuple = {2, 2, 2};
    config.limit = 11;  // below the smallest representable value, 12
    std::ostringstream out, err;
    CHECK(cli::run(config, out, err) == 2);
    CHECK(err.str().find("smallest representable") != std::string::npos);
}

TEST_CASE("output path failures exit with the i/o code") {
    cli::RunConfig config;
    config.command = cli::Command::sieve;
    config.limit = 10;
    config.out_path = "/nonexistent-dir/report.csv";
    std::ostringstream out, err;
    CHECK(cli::run(config, out, err) == 3);
    CHECK(err.str().find("cannot open") != std::string::npos);
}

TEST_CASE("window command emits one row with finite fields") {
    cli::RunConfig config;
    config.command = cli::Command::window;
    config.tuple = {2, 2, 2};
    config.n = 1000;
    config.h = 50;
    config.format = ReportFormat::json;
    std::ostringstream out, err;
    REQUIRE(cli::run(config, out, err) == 0);
    CHECK(out.str().find("\"raw_sum\"") != std::string::npos);
    CHECK(out.str().find("\"relative_deviation\"") != std::string::npos);
}
