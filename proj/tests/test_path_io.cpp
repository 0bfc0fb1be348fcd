#include "doctest.h"

#include <sstream>

#include "brach/errors.hpp"
#include "brach/path_io.hpp"
#include "json.hpp"

using namespace brach;

namespace {

Table sample_table() {
    Table t;
    t.title = "demo";
    t.meta = {{"n", std::int64_t{3}}, {"ok", true}};
    t.columns = {"curve", "theta", "rho", "note"};
    t.rows = {{std::string("a"), 0.0, 1.0, std::string("plain")},
              {std::string("a"), -0.1, 0.5, std::string("has, comma")},
              {std::string("b"), -0.2, 0.7, std::string("say \"hi\"")},
              {std::string("a"), -0.2, 1.0, std::string("")}};
    return t;
}

}  // namespace

TEST_CASE("reals print with round-trip precision") {
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(3.0) == "3");
    CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("csv layout") {
    std::ostringstream out;
    write_table(out, sample_table(), OutputFormat::csv);
    const std::string text = out.str();
    CHECK(text.rfind("# demo\n# n=3\n# ok=true\ncurve,theta,rho,note\n", 0) == 0);
    CHECK(text.find("\"has, comma\"") != std::string::npos);
    CHECK(text.find("\"say \"\"hi\"\"\"") != std::string::npos);
}

TEST_CASE("structured layout carries the same fields") {
    std::ostringstream out;
    write_table(out, sample_table(), OutputFormat::structured);
    const auto doc = nlohmann::json::parse(out.str());
    CHECK(doc["title"] == "demo");
    CHECK(doc["meta"]["n"] == 3);
    CHECK(doc["columns"].size() == 4);
    CHECK(doc["rows"].size() == 4);
    CHECK(doc["rows"][1][3] == "has, comma");
    CHECK(doc["rows"][1][2].get<double>() == 0.5);
}

TEST_CASE("path ingestion filters by curve") {
    std::ostringstream out;
    write_table(out, sample_table(), OutputFormat::csv);
    std::istringstream in(out.str());
    const DiscretePath p = read_path_csv(in, "a");
    REQUIRE(p.points.size() == 3);
    CHECK(p.points[1].rho == 0.5);
    CHECK(p.min_index == 1);
}

TEST_CASE("malformed path tables") {
    std::istringstream missing("x,y\n1,2\n");
    CHECK_THROWS_AS(read_path_csv(missing), InvalidArgument);
    std::istringstream ragged("theta,rho\n0,1\n-0.1\n");
    CHECK_THROWS_AS(read_path_csv(ragged), InvalidArgument);
    std::istringstream garbage("theta,rho\n0,1\n-0.1,abc\n");
    CHECK_THROWS_AS(read_path_csv(garbage), InvalidArgument);
}
