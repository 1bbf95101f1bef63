#include <doctest.h>

#include <string>

#include "weyl/errors.hpp"
#include "weyl/problem.hpp"

using namespace weyl;

namespace {

const char* robin = R"({
  "model": {"kind": "half_line", "potential": {"kind": "zero"}},
  "boundary": -2,
  "task": {"window": [-6, -0.1]}
})";

template <class E>
std::string message_of(const std::string& text) {
    try {
        parse_problem_text(text);
    } catch (const E& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_SUITE("problem") {

TEST_CASE("parse a minimal problem") {
    const auto p = parse_problem_text(robin);
    CHECK(p.model.kind == "half_line");
    REQUIRE(p.boundary);
    CHECK((*p.boundary)(0, 0) == cplx(-2, 0));
    REQUIRE(p.task.window);
    CHECK((*p.task.window)[1] == -0.1);
    CHECK(p.oracle_n == 4000);
}

TEST_CASE("serialization round trip and hash") {
    const auto p = parse_problem_text(robin);
    const auto text = serialize_problem(p);
    CHECK(parse_problem_text(text) == p);
    CHECK(serialize_problem(parse_problem_text(text)) == text);
    const auto h = problem_hash(p);
    CHECK(h.size() == 16);
    CHECK(h == problem_hash(parse_problem_text(text)));
    auto q = p;
    q.boundary = ComplexMatrix::scalar(-3);
    CHECK(problem_hash(q) != h);
}

TEST_CASE("complex entries and matrices") {
    const auto p = parse_problem_text(R"({"model": {"kind": "operator_potential_halfline", "a": [2, 5]},
        "boundary": [[[-1, 0.5], 0], [0, -2]]})");
    REQUIRE(p.boundary);
    CHECK((*p.boundary)(0, 0) == cplx(-1, 0.5));
    CHECK((*p.boundary)(1, 1) == cplx(-2, 0));
    CHECK(resolve(p).model.dimension() == 2);
}

TEST_CASE("schema errors carry a JSON pointer") {
    CHECK(message_of<SchemaError>(R"({"model": {"kind": "sector", "beta": 1.5}})").find("/model/beta") !=
          std::string::npos);
    CHECK(message_of<SchemaError>(R"({"model": {"kind": "nope"}})").find("/model/kind") != std::string::npos);
    CHECK(message_of<SchemaError>(R"({"model": {"kind": "corner", "beta": 0.7}, "extra": 1})").find("/extra") !=
          std::string::npos);
    CHECK(message_of<SchemaError>(R"({"model": {"kind": "operator_potential_halfline", "a": [0.5]}})")
              .find("/model/a") != std::string::npos);
    CHECK(!message_of<SchemaError>(
               R"({"model": {"kind": "operator_potential_halfline", "a": [2, 5]}, "boundary": -1})")
               .empty());
}

TEST_CASE("malformed JSON is a ParseError") {
    CHECK(!message_of<ParseError>("{\"model\": ").empty());
    CHECK_THROWS_AS(parse_problem("/nonexistent/problem.json"), Error);
}

TEST_CASE("flag syntax") {
    const auto g = parse_grid("-4:4:9,0.5:2:4");
    CHECK(g.n == 9);
    CHECK(g.m == 4);
    const auto pts = g.points();
    REQUIRE(pts.size() == 36);
    CHECK(pts[0] == cplx(-4, 0.5));
    CHECK(pts[1] == cplx(-3, 0.5));
    CHECK(pts[35] == cplx(4, 2));
    CHECK(parse_window("-6:-0.1")[0] == -6);
    CHECK(parse_rect("-3:3:0.2:3")[2] == 0.2);
    CHECK_THROWS_AS(parse_grid("1:2"), ParseError);
    CHECK_THROWS_AS(parse_grid("0:1:x,1:2:3"), ParseError);
    CHECK_THROWS_AS(parse_window("3:1"), ParseError);
    CHECK_THROWS_AS(parse_rect("1:0:0.2:1"), ParseError);
}

TEST_CASE("transform is applied on resolve") {
    const auto p = parse_problem_text(R"({
      "model": {"kind": "half_line", "potential": {"kind": "zero"}},
      "boundary": -1,
      "transform": {"U": 1, "X11": 1, "X12": 2, "X21": 0, "X22": 1}
    })");
    const auto r = resolve(p);
    REQUIRE(r.B);
    CHECK((*r.B)(0, 0).real() == doctest::Approx(1));
    CHECK(r.model.evaluate(-1.0)(0, 0).real() == doctest::Approx(1).epsilon(1e-8));
}

}
