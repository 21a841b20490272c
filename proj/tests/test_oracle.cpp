#include "doctest.h"

#include <cmath>

#include "mgf/oracle.hpp"
#include "random_instances.hpp"

using namespace mgf;

namespace {

// Every j in the box [0, caps] with A j = k, by plain odometer.
std::vector<ExponentVector> naive_fiber(const TransformMatrix& a, const ExponentVector& k, const ExponentVector& caps) {
    std::vector<ExponentVector> out;
    std::vector<Exponent> j(caps.size(), 0);
    for (;;) {
        ExponentVector ev(j);
        if (monomial_image(a, ev) == k)
            out.push_back(ev);
        std::size_t i = caps.size();
        while (i > 0 && j[i - 1] == caps[i - 1])
            j[--i] = 0;
        if (i == 0)
            break;
        ++j[i - 1];
    }
    return out;
}

} // namespace

TEST_CASE("enumerate_fiber examples") {
    auto fiber = oracle::enumerate_fiber(TransformMatrix({{1, 1}}), ExponentVector{3});
    std::vector<ExponentVector> expected{{0, 3}, {1, 2}, {2, 1}, {3, 0}};
    CHECK(fiber == expected);

    CHECK(oracle::enumerate_fiber(TransformMatrix({{2, 2}}), ExponentVector{3}).empty());
    CHECK(oracle::enumerate_fiber(TransformMatrix({{1, 1}}), ExponentVector{0}) ==
          std::vector<ExponentVector>{ExponentVector{0, 0}});

    try {
        oracle::enumerate_fiber(TransformMatrix({{1, 0}}), ExponentVector{2});
        FAIL("expected UnboundedFiber");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnboundedFiber);
    }
    CHECK(oracle::enumerate_fiber(TransformMatrix({{1, 0}}), ExponentVector{2}, ExponentVector{5, 2}).size() == 3);
}

TEST_CASE("enumerate_fiber agrees with a naive box scan") {
    testing::Random rng(99);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 3));
        const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 2));
        TransformMatrix a = rng.matrix(m, d, 3, false);
        ExponentVector k = rng.vector(m, 8);
        std::vector<Exponent> caps(d);
        for (std::size_t r = 0; r < d; ++r)
            caps[r] = *a.column_reach(r, k);
        CHECK(oracle::enumerate_fiber(a, k) == naive_fiber(a, k, ExponentVector(caps)));
    }
}

TEST_CASE("fiber of the total count has binomial size") {
    for (std::size_t d = 1; d <= 4; ++d) {
        TransformMatrix ones(std::vector<std::vector<Exponent>>{std::vector<Exponent>(d, 1)});
        for (Exponent k = 0; k <= 8; ++k) {
            mpz_class count;
            mpz_bin_uiui(count.get_mpz_t(), static_cast<unsigned long>(k + static_cast<Exponent>(d) - 1),
                         static_cast<unsigned long>(d - 1));
            CHECK(oracle::enumerate_fiber(ones, ExponentVector{k}).size() == count.get_ui());
        }
    }
}

TEST_CASE("oracle pmf formulas") {
    CHECK(std::fabs(oracle::pmf(PoissonSpec{{1.0, 2.0}}, {1, 1}, Mode::Float).to_double() - 0.09957413673572789) <
          1e-15);
    MultinomialSpec m{3, {Rational(1, 3), Rational(1, 3), Rational(1, 3)}};
    CHECK(oracle::pmf(m, {1, 1, 1}, Mode::Exact) == Coefficient(Rational(2, 9)));
    CHECK(oracle::pmf(m, {1, 1, 0}, Mode::Exact).is_zero());
    TableSpec table{{{ExponentVector{2}, Rational(1)}}};
    CHECK(oracle::pmf(table, {2}, Mode::Exact) == Coefficient(Rational(1)));
    CHECK(oracle::pmf(table, {1}, Mode::Exact).is_zero());
}

TEST_CASE("oracle conditional moments") {
    auto mean = oracle::conditional_moment(PoissonSpec{{1.0, 2.0}}, TransformMatrix({{1, 1}}),
                                           {ExponentVector{5}, ExponentVector{1, 0}, {}}, Mode::Float);
    CHECK(std::fabs(mean.value.to_double() - 5.0 / 3.0) < 1e-12);
    CHECK(mean.fiber_size == 6);

    TableSpec point{{{ExponentVector{2, 3}, Rational(1)}}};
    auto one = oracle::conditional_moment(point, TransformMatrix::identity(2),
                                          {ExponentVector{2, 3}, ExponentVector{0, 0}, {}}, Mode::Exact);
    CHECK(one.value == Coefficient(Rational(1)));
    CHECK(one.fiber_size == 1);

    MultinomialSpec m{3, std::vector<Rational>(3, Rational(1, 3))};
    auto split = oracle::conditional_moment(m, TransformMatrix({{1, 1, 0}}),
                                            {ExponentVector{2}, ExponentVector{1, 0, 0}, {}}, Mode::Exact);
    CHECK(split.value == Coefficient(Rational(1)));
    CHECK(split.prob_y == Coefficient(Rational(4, 9)));
}
