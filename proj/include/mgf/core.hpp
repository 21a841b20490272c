#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mgf/error.hpp"

namespace mgf {

using Exponent = std::int64_t;

// Checked exponent arithmetic. Overflow raises ErrorKind::Overflow.
Exponent checked_add(Exponent a, Exponent b);
Exponent checked_mul(Exponent a, Exponent b);

/// A lattice point in N^n: the exponent of a monomial, or an outcome of a
/// nonnegative integer random vector.
///
/// Ordering is lexicographic, which is also the canonical order for every
/// serialized series.
class ExponentVector {
public:
    ExponentVector() = default;
    explicit ExponentVector(std::size_t size, Exponent fill = 0);
    ExponentVector(std::initializer_list<Exponent> entries);
    explicit ExponentVector(std::vector<Exponent> entries);

    static ExponentVector unit(std::size_t size, std::size_t index, Exponent value = 1);

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    Exponent operator[](std::size_t i) const { return entries_[i]; }
    std::span<const Exponent> entries() const noexcept { return entries_; }
    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

    // Replaces entry i; the value must be nonnegative.
    void set(std::size_t i, Exponent value);

    bool is_zero() const noexcept;
    Exponent total() const;

    // Componentwise a <= b.
    bool fits_within(const ExponentVector& bounds) const;

    ExponentVector operator+(const ExponentVector& other) const;
    // Componentwise difference; nullopt when any entry would go negative.
    std::optional<ExponentVector> minus(const ExponentVector& other) const;

    // Concatenation (used for the (t; z) block layout of joint series).
    ExponentVector concat(const ExponentVector& tail) const;
    ExponentVector slice(std::size_t first, std::size_t count) const;

    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
    friend std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b) {
        return a.entries_ <=> b.entries_;
    }

    std::string to_string() const;

private:
    std::vector<Exponent> entries_;
};

/// Per-variable maximum retained degree.
struct TruncationSpec {
    ExponentVector bounds;

    std::size_t size() const noexcept { return bounds.size(); }
    bool admits(const ExponentVector& e) const { return e.fits_within(bounds); }

    friend bool operator==(const TruncationSpec&, const TruncationSpec&) = default;
};

/// The m x d nonnegative integer matrix A defining Y = A X.
class TransformMatrix {
public:
    explicit TransformMatrix(std::vector<std::vector<Exponent>> rows);
    TransformMatrix(std::initializer_list<std::initializer_list<Exponent>> rows)
        : TransformMatrix(std::vector<std::vector<Exponent>>(rows.begin(), rows.end())) {}

    static TransformMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Exponent operator()(std::size_t i, std::size_t r) const { return entries_[i * cols_ + r]; }

    bool column_is_zero(std::size_t r) const { return zero_column_[r]; }
    bool has_zero_column() const noexcept;

    // Largest j_r that can occur in any j with A j <= box, ignoring the other
    // coordinates: min over rows with a_ir > 0 of floor(box_i / a_ir).
    // nullopt for a zero column.
    std::optional<Exponent> column_reach(std::size_t r, const ExponentVector& box) const;

    std::vector<std::vector<Exponent>> to_rows() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Exponent> entries_;
    std::vector<bool> zero_column_;
};

// k = A j with overflow-checked arithmetic.
ExponentVector monomial_image(const TransformMatrix& a, const ExponentVector& j);

} // namespace mgf
