#include <doctest.h>

#include <sstream>

#include "weyl/errors.hpp"
#include "weyl/report.hpp"

using namespace weyl;

TEST_SUITE("report") {

TEST_CASE("shortest round-trip numbers") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-2) == "-2");
    CHECK(format_double(1e-300) == "1e-300");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(-INFINITY) == "-inf");
    CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("CSV quoting") {
    CHECK(csv_field("abc") == "abc");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("x\ny") == "\"x\ny\"");
}

TEST_CASE("grid evaluation is independent of the job count") {
    std::vector<cplx> pts;
    for (int k = 0; k < 50; ++k) pts.emplace_back(k - 25, 1);
    pts.emplace_back(0, 0);
    auto f = [](cplx z) {
        if (z == 0.0) throw Error("no value at 0");
        return ComplexMatrix::scalar(1.0 / z);
    };
    std::ostringstream a, b;
    const auto g1 = evaluate_grid(pts, f, 1), g4 = evaluate_grid(pts, f, 4);
    write_grid_csv(a, g1, "M", 1);
    write_grid_csv(b, g4, "M", 1);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("Re z,Im z,\"Re M(1,1)\",\"Im M(1,1)\"\n", 0) == 0);
    CHECK(a.str().find('\r') == std::string::npos);
    CHECK(!g1.back().value);
    CHECK(g1.back().error == "no value at 0");
    CHECK(a.str().find("0,0,nan,nan\n") != std::string::npos);
}

TEST_CASE("report envelope") {
    ojson payload;
    payload["x"] = 1.5;
    const auto text = render_report("eval", std::string("0123456789abcdef"), payload);
    CHECK(text.back() == '\n');
    const auto j = ojson::parse(text);
    CHECK(j.begin().key() == "tool");
    CHECK(j["tool"] == tool_version());
    CHECK(j["problem_hash"] == "0123456789abcdef");
    CHECK(j["x"] == 1.5);
    CHECK(complex_to_json(cplx(1, -2)) == ojson::array({1.0, -2.0}));
}

}
