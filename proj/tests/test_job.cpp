#include "doctest.h"

#include <string>

#include "mgf/job.hpp"

using namespace mgf;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

const char* kPoisson = R"({
  "matrix": [[1, 1]],
  "distribution": {"poisson": {"lambdas": [1, 2]}},
  "queries": [{"k": [5], "s": [1, 0], "pmf": true}, {"k": [1], "s": [2, 0]}],
  "mode": "float"
})";

const char* kMultinomial = R"({
  "matrix": [[1, 1, 0]],
  "distribution": {"multinomial": {"N": 3, "probs": ["1/3", "1/3", "1/3"]}},
  "queries": [{"k": [2], "s": [1, 0, 0]}, {"k": [4], "s": [0, 0, 0]}]
})";

} // namespace

TEST_CASE("parse_config reads every family") {
    auto poisson = parse_config(kPoisson);
    CHECK(poisson.mode == Mode::Float);
    CHECK(poisson.queries.size() == 2);
    CHECK(poisson.queries[0].want_pmf);
    CHECK(std::holds_alternative<PoissonSpec>(poisson.distribution));

    auto multinomial = parse_config(kMultinomial);
    CHECK(multinomial.mode == Mode::Exact);
    const auto& spec = std::get<MultinomialSpec>(multinomial.distribution);
    CHECK(spec.trials == 3);
    CHECK(spec.probs[0] == Rational(1, 3));

    auto table = parse_config(R"({"matrix": [[1]],
        "distribution": {"table": {"entries": [{"j": [0], "p": 0.25}, {"j": [2], "p": "3/4"}]}},
        "queries": [{"k": [2]}]})");
    const auto& entries = std::get<TableSpec>(table.distribution).entries;
    CHECK(entries.at(ExponentVector{0}) == Rational(1, 4));
    CHECK(table.queries[0].query.s == ExponentVector{0});
}

TEST_CASE("config errors point at their source") {
    const std::string syntax = message_of([] { parse_config("{\n  \"matrix\": [[1, 1]],\n  oops\n}"); });
    CHECK(syntax.find("line 3") != std::string::npos);

    const std::string field = message_of([] {
        parse_config(R"({"matrix": [[1, -1]], "distribution": {"poisson": {"lambdas": [1, 1]}}, "queries": []})");
    });
    CHECK(field.find("/matrix/0/1") != std::string::npos);

    CHECK(kind_of([] { parse_config(R"({"matrix": [[1]], "queries": []})"); }) == ErrorKind::ConfigError);
    CHECK(kind_of([] {
              parse_config(R"({"matrix": [[1]], "distribution": {"gamma": {}}, "queries": []})");
          }) == ErrorKind::ConfigError);
}

TEST_CASE("validate_config rejects inconsistent jobs") {
    auto wide = parse_config(R"({"matrix": [[1, 1]],
        "distribution": {"multinomial": {"N": 2, "probs": ["1/3", "1/3", "1/3"]}},
        "queries": [{"k": [1]}]})");
    CHECK(kind_of([&] { validate_config(wide); }) == ErrorKind::DimensionMismatch);

    auto exact_poisson = parse_config(R"({"matrix": [[1]], "distribution": {"poisson": {"lambdas": [1]}},
        "queries": [{"k": [1]}], "mode": "exact"})");
    CHECK(kind_of([&] { validate_config(exact_poisson); }) == ErrorKind::ModeMismatch);

    auto short_k = parse_config(kMultinomial);
    short_k.queries[0].query.k = ExponentVector{1, 1};
    CHECK(kind_of([&] { validate_config(short_k); }) == ErrorKind::DimensionMismatch);

    CHECK_NOTHROW(validate_config(parse_config(kPoisson)));
}

TEST_CASE("run reports each query and isolates failures") {
    auto config = parse_config(kMultinomial);
    auto report = run(config, RunOptions{true});
    REQUIRE(report.rows.size() == 2);
    const auto& good = report.rows[0];
    CHECK(*good.generic == Coefficient(Rational(1)));
    CHECK(*good.closed_form == Coefficient(Rational(1)));
    CHECK(*good.oracle == Coefficient(Rational(1)));
    CHECK(*good.agree);
    CHECK(*good.prob_y == Coefficient(Rational(4, 9)));
    const auto& bad = report.rows[1];
    REQUIRE(bad.error.has_value());
    CHECK(bad.error->kind == ErrorKind::EmptyFiber);
    CHECK_FALSE(report.ok());
}

TEST_CASE("verification never changes the generic values") {
    for (const char* text : {kPoisson, kMultinomial}) {
        auto config = parse_config(text);
        auto plain = run(config, RunOptions{false});
        auto checked = run(config, RunOptions{true});
        REQUIRE(plain.rows.size() == checked.rows.size());
        for (std::size_t i = 0; i < plain.rows.size(); ++i) {
            CHECK(plain.rows[i].generic.has_value() == checked.rows[i].generic.has_value());
            if (plain.rows[i].generic)
                CHECK(*plain.rows[i].generic == *checked.rows[i].generic);
            CHECK_FALSE(plain.rows[i].oracle.has_value());
        }
    }
}

TEST_CASE("machine output is deterministic") {
    auto config = parse_config(kPoisson);
    const std::string first = render_machine(run(config, RunOptions{true}));
    const std::string second = render_machine(run(config, RunOptions{true}));
    CHECK(first == second);
    CHECK(first.find("\"moment_generic\"") != std::string::npos);
    CHECK(render_human(run(config)).find("query 0") != std::string::npos);
}

TEST_CASE("pmf rows respect the cap") {
    auto config = parse_config(kPoisson);
    auto report = run(config, RunOptions{false, 2});
    CHECK(report.rows[0].pmf_omitted);
    auto full = run(config, RunOptions{false, 100});
    REQUIRE(full.rows[0].pmf.has_value());
    CHECK(full.rows[0].pmf->size() == 6);
}

TEST_CASE("mode and format names") {
    CHECK(parse_mode("exact") == Mode::Exact);
    CHECK(parse_mode("float") == Mode::Float);
    CHECK_FALSE(parse_mode("double").has_value());
    CHECK(parse_output_format("json-like") == OutputFormat::Machine);
    CHECK(parse_output_format("human") == OutputFormat::Human);
    CHECK_FALSE(parse_output_format("xml").has_value());
}
