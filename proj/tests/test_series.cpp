#include "doctest.h"

#include <cmath>

#include "mgf/series.hpp"
#include "random_instances.hpp"

using namespace mgf;

namespace {

Coefficient q(long num, long den = 1) {
    return Coefficient(Rational(num, den));
}

TruncatedSeries exact(ExponentVector box, std::vector<std::pair<ExponentVector, Coefficient>> terms) {
    return TruncatedSeries::from_terms(Mode::Exact, TruncationSpec{std::move(box)}, terms);
}

double factorial(int n) {
    double out = 1;
    for (int i = 2; i <= n; ++i)
        out *= i;
    return out;
}

} // namespace

TEST_CASE("linear_combine") {
    auto plus = exact({2}, {{{0}, q(1)}, {{1}, q(1)}});
    auto minus = exact({2}, {{{0}, q(1)}, {{1}, q(-1)}});
    auto sum = linear_combine(q(1), plus, q(1), minus);
    CHECK(sum == exact({2}, {{{0}, q(2)}}));
    CHECK(sum.size() == 1);

    CHECK(linear_combine(q(0), plus, q(1), minus) == minus);

    auto t1 = exact({1, 1}, {{{1, 0}, q(1)}});
    auto t2 = exact({1, 1}, {{{0, 1}, q(1)}});
    CHECK(linear_combine(q(2), t1, q(3), t2) == exact({1, 1}, {{{1, 0}, q(2)}, {{0, 1}, q(3)}}));

    CHECK_THROWS_AS(linear_combine(q(1), plus, q(1), t1), Error);
    CHECK_THROWS_AS(linear_combine(q(1), plus, q(1), exact({3}, {})), Error);
}

TEST_CASE("mul truncates") {
    auto one_plus_t = [](Exponent cap) { return exact({cap}, {{{0}, q(1)}, {{1}, q(1)}}); };
    CHECK(mul(one_plus_t(2), one_plus_t(2)) == exact({2}, {{{0}, q(1)}, {{1}, q(2)}, {{2}, q(1)}}));

    auto clipped = mul(one_plus_t(1), one_plus_t(1));
    CHECK(clipped == exact({1}, {{{0}, q(1)}, {{1}, q(2)}}));
    CHECK_FALSE(clipped.is_complete());

    auto t1 = exact({1, 1}, {{{1, 0}, q(1)}});
    auto t2 = exact({1, 1}, {{{0, 1}, q(1)}});
    CHECK(mul(t1, t2) == exact({1, 1}, {{{1, 1}, q(1)}}));
}

TEST_CASE("exp_truncated") {
    SUBCASE("exp of zero is one") {
        auto zero = exact({3}, {});
        CHECK(exp_truncated(zero) == exact({3}, {{{0}, q(1)}}));
    }
    SUBCASE("exp(t - 1) matches the Poisson(1) pmf") {
        auto s = TruncatedSeries::from_terms(Mode::Float, TruncationSpec{{3}},
                                             {{{0}, Coefficient(-1.0)}, {{1}, Coefficient(1.0)}});
        auto e = exp_truncated(s);
        CHECK(e.size() == 4);
        for (int j = 0; j <= 3; ++j) {
            const double pmf = std::exp(-1.0) / factorial(j);
            CHECK(approx_equal(extract_coefficient(e, {j}), Coefficient(pmf)));
        }
    }
    SUBCASE("exp(2(t - 1)) at t^2 is the Poisson(2) pmf") {
        auto s = TruncatedSeries::from_terms(Mode::Float, TruncationSpec{{4}},
                                             {{{0}, Coefficient(-2.0)}, {{1}, Coefficient(2.0)}});
        const double pmf = std::exp(-2.0) * 4.0 / 2.0;
        CHECK(approx_equal(extract_coefficient(exp_truncated(s), {2}), Coefficient(pmf)));
    }
    SUBCASE("exact mode refuses a nonzero constant term") {
        auto s = exact({2}, {{{0}, q(1)}, {{1}, q(1)}});
        try {
            exp_truncated(s);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NonzeroConstantTerm);
        }
        auto factored = exp_truncated_factored(s);
        CHECK(factored.constant == q(1));
        CHECK(factored.series == exact({2}, {{{0}, q(1)}, {{1}, q(1)}, {{2}, q(1, 2)}}));
    }
    SUBCASE("exact exp of t1 + t2") {
        auto s = exact({2, 1}, {{{1, 0}, q(1)}, {{0, 1}, q(1)}});
        auto e = exp_truncated(s);
        // exp(t1) exp(t2) = sum t1^a t2^b / (a! b!)
        CHECK(e == exact({2, 1}, {{{0, 0}, q(1)},
                                  {{1, 0}, q(1)},
                                  {{2, 0}, q(1, 2)},
                                  {{0, 1}, q(1)},
                                  {{1, 1}, q(1)},
                                  {{2, 1}, q(1, 2)}}));
    }
}

TEST_CASE("partial_derivative") {
    CHECK(partial_derivative(exact({3}, {{{2}, q(1)}}), 0, 1) == exact({2}, {{{1}, q(2)}}));

    auto d2 = partial_derivative(exact({1}, {{{0}, q(1)}, {{1}, q(1)}}), 0, 2);
    CHECK(d2.empty());

    CHECK(partial_derivative(exact({2, 1}, {{{2, 1}, q(1)}}), 0, 1) == exact({1, 1}, {{{1, 1}, q(2)}}));

    auto truncated = exact({1}, {{{0}, q(1)}, {{1}, q(1)}});
    truncated = mul(truncated, truncated); // loses t^2, so incomplete
    CHECK_THROWS_AS(partial_derivative(truncated, 0, 2), Error);
    CHECK_THROWS_AS(partial_derivative(truncated, 3, 1), Error);
}

TEST_CASE("extract_coefficient") {
    auto s = exact({3}, {{{0}, q(1)}, {{2}, q(3)}});
    CHECK(extract_coefficient(s, {2}) == q(3));
    CHECK(extract_coefficient(exact({3}, {{{0}, q(1)}}), {1}) == q(0));
    try {
        extract_coefficient(s, {4});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfTruncation);
    }
}

TEST_CASE("evaluate") {
    CHECK(evaluate(exact({1}, {{{0}, q(1)}, {{1}, q(2)}}), {q(1)}) == q(3));
    CHECK(evaluate(exact({1, 1}, {{{1, 1}, q(1)}}), {q(2), q(3)}) == q(6));
    auto pgf = exact({2, 2}, {{{0, 0}, q(1, 6)}, {{1, 2}, q(1, 3)}, {{2, 1}, q(1, 2)}});
    CHECK(evaluate(pgf, {q(1), q(1)}) == q(1));
    CHECK_THROWS(evaluate(pgf, {q(1)}));
}

TEST_CASE("evaluate_leading keeps the trailing block") {
    auto s = exact({2, 2}, {{{1, 1}, q(2)}, {{2, 1}, q(3)}, {{0, 2}, q(1)}});
    auto rest = evaluate_leading(s, {q(1)});
    CHECK(rest == exact({2}, {{{1}, q(5)}, {{2}, q(1)}}));
}

TEST_CASE("serialization is lexicographic") {
    auto s = exact({2, 2}, {{{1, 0}, q(1, 2)}, {{0, 2}, q(3)}, {{0, 1}, q(-1, 4)}});
    auto out = serialize(s);
    REQUIRE(out.size() == 3);
    CHECK(out[0].first == ExponentVector{0, 1});
    CHECK(out[0].second == "-1/4");
    CHECK(out[1].first == ExponentVector{0, 2});
    CHECK(out[2].second == "1/2");
}

TEST_CASE("ring laws under truncation") {
    testing::Random rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
        const TruncationSpec box{rng.vector(n, 6)};
        auto a = rng.sparse_series(box, 6);
        auto b = rng.sparse_series(box, 6);
        auto c = rng.sparse_series(box, 6);
        CHECK(mul(a, b) == mul(b, a));
        CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        CHECK(mul(a, b + c) == mul(a, b) + mul(a, c));
        CHECK(evaluate(a, std::vector<Coefficient>(n, q(1))) == coefficient_sum(a));
    }
}

TEST_CASE("derivative shifts coefficients") {
    testing::Random rng(77);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
        const TruncationSpec box{rng.vector(n, 6)};
        auto s = rng.sparse_series(box, 8);
        const std::size_t v = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
        if (box.bounds[v] == 0)
            continue;
        auto ds = partial_derivative(s, v, 1);
        // Walk the whole derived box.
        std::vector<Exponent> e(n, 0);
        const ExponentVector& dbox = ds.trunc().bounds;
        for (;;) {
            ExponentVector ev(e);
            ExponentVector up = ev + ExponentVector::unit(n, v);
            Coefficient expected = Coefficient::integer(Mode::Exact, ev[v] + 1) * extract_coefficient(s, up);
            CHECK(extract_coefficient(ds, ev) == expected);
            std::size_t i = 0;
            while (i < n && e[i] == dbox[i])
                e[i++] = 0;
            if (i == n)
                break;
            ++e[i];
        }
    }
}

TEST_CASE("exp(S) exp(-S) = 1 on retained terms") {
    testing::Random rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
        const TruncationSpec box{rng.vector(n, 4)};
        auto s = rng.sparse_series(box, 5, Mode::Float);
        auto product = mul(exp_truncated(s), exp_truncated(scale(Coefficient(-1.0), s)));
        auto residual = product - TruncatedSeries::constant(Mode::Float, box, Coefficient(1.0));
        for (const auto& [e, c] : residual.terms())
            CHECK(std::fabs(c.to_double()) < 1e-9);
    }
}
