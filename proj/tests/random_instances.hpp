#pragma once

// Seeded generators shared by the property and acceptance suites.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "mgf/coefficient.hpp"
#include "mgf/core.hpp"
#include "mgf/distributions.hpp"
#include "mgf/oracle.hpp"
#include "mgf/series.hpp"

namespace mgf::testing {

class Random {
public:
    explicit Random(std::uint64_t seed) : engine_(seed) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }

    Rational rational(long max_num = 9, long max_den = 7, bool allow_negative = true) {
        long num = uniform(allow_negative ? -max_num : 1, max_num);
        long den = uniform(1, max_den);
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    ExponentVector vector(std::size_t n, Exponent hi) {
        std::vector<Exponent> v(n);
        for (auto& e : v)
            e = uniform(0, hi);
        return ExponentVector(std::move(v));
    }

    // Sparse exact series, every exponent inside the box.
    TruncatedSeries sparse_series(const TruncationSpec& box, std::size_t max_terms, Mode mode = Mode::Exact) {
        std::vector<std::pair<ExponentVector, Coefficient>> terms;
        const std::size_t count = static_cast<std::size_t>(uniform(0, static_cast<long>(max_terms)));
        for (std::size_t i = 0; i < count; ++i) {
            std::vector<Exponent> e(box.size());
            for (std::size_t v = 0; v < e.size(); ++v)
                e[v] = uniform(0, box.bounds[v]);
            Rational q = rational();
            terms.emplace_back(ExponentVector(std::move(e)),
                               mode == Mode::Exact ? Coefficient(q) : Coefficient(q.get_d()));
        }
        return TruncatedSeries::from_terms(mode, box, terms);
    }

    // m x d matrix with entries in [0, hi]; optionally no zero columns.
    TransformMatrix matrix(std::size_t m, std::size_t d, Exponent hi, bool allow_zero_columns) {
        for (;;) {
            std::vector<std::vector<Exponent>> rows(m, std::vector<Exponent>(d));
            for (auto& row : rows)
                for (auto& a : row)
                    a = uniform(0, hi);
            TransformMatrix a(rows);
            if (allow_zero_columns || !a.has_zero_column())
                return a;
        }
    }

    // Probability vector of length d with small denominators, summing to 1.
    std::vector<Rational> probabilities(std::size_t d, long resolution = 12) {
        std::vector<long> weights(d);
        long total = 0;
        for (auto& w : weights) {
            w = uniform(1, resolution);
            total += w;
        }
        std::vector<Rational> out;
        for (long w : weights) {
            Rational q(w, total);
            q.canonicalize();
            out.push_back(q);
        }
        return out;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// Coefficients of the pushed-forward sequence c_k = sum_{A j = k} b_j, built
// by enumerating each fiber in the target box and looking b_j up. Shares no
// code with the transform module.
inline std::map<ExponentVector, Rational> fiber_sum_coefficients(const std::map<ExponentVector, Rational>& b,
                                                                  const TransformMatrix& a,
                                                                  const ExponentVector& box) {
    std::map<ExponentVector, Rational> out;
    std::vector<Exponent> k(box.size(), 0);
    for (;;) {
        ExponentVector target(k);
        Rational sum = 0;
        for (const auto& j : oracle::enumerate_fiber(a, target))
            if (auto it = b.find(j); it != b.end())
                sum += it->second;
        if (sgn(sum) != 0)
            out.emplace(target, sum);
        std::size_t i = 0;
        while (i < k.size() && k[i] == box[i])
            k[i++] = 0;
        if (i == k.size())
            break;
        ++k[i];
    }
    return out;
}

inline std::map<ExponentVector, Rational> exact_terms(const TruncatedSeries& s) {
    std::map<ExponentVector, Rational> out;
    for (const auto& [e, c] : s.terms())
        out.emplace(e, c.rational());
    return out;
}

} // namespace mgf::testing
