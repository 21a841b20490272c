#include "mgf/core.hpp"

#include <algorithm>

namespace mgf {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ModeMismatch: return "ModeMismatch";
    case ErrorKind::OutOfTruncation: return "OutOfTruncation";
    case ErrorKind::InsufficientTruncation: return "InsufficientTruncation";
    case ErrorKind::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::UnboundedFiber: return "UnboundedFiber";
    case ErrorKind::EmptyFiber: return "EmptyFiber";
    case ErrorKind::ZeroProbability: return "ZeroProbability";
    case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

Exponent checked_add(Exponent a, Exponent b) {
    Exponent out;
    if (__builtin_add_overflow(a, b, &out))
        fail(ErrorKind::Overflow, "exponent addition overflows");
    return out;
}

Exponent checked_mul(Exponent a, Exponent b) {
    Exponent out;
    if (__builtin_mul_overflow(a, b, &out))
        fail(ErrorKind::Overflow, "exponent multiplication overflows");
    return out;
}

namespace {

void require_nonnegative(const std::vector<Exponent>& v) {
    for (Exponent e : v)
        if (e < 0)
            fail(ErrorKind::InvalidArgument, "exponent entries must be nonnegative");
}

void require_same_size(const ExponentVector& a, const ExponentVector& b) {
    if (a.size() != b.size())
        fail(ErrorKind::DimensionMismatch, "exponent vectors " + a.to_string() + " and " +
                                               b.to_string() + " differ in length");
}

} // namespace

ExponentVector::ExponentVector(std::size_t size, Exponent fill) : entries_(size, fill) {
    require_nonnegative(entries_);
}

ExponentVector::ExponentVector(std::initializer_list<Exponent> entries) : entries_(entries) {
    require_nonnegative(entries_);
}

ExponentVector::ExponentVector(std::vector<Exponent> entries) : entries_(std::move(entries)) {
    require_nonnegative(entries_);
}

ExponentVector ExponentVector::unit(std::size_t size, std::size_t index, Exponent value) {
    ExponentVector out(size);
    out.set(index, value);
    return out;
}

void ExponentVector::set(std::size_t i, Exponent value) {
    if (value < 0)
        fail(ErrorKind::InvalidArgument, "exponent entries must be nonnegative");
    entries_.at(i) = value;
}

bool ExponentVector::is_zero() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](Exponent e) { return e == 0; });
}

Exponent ExponentVector::total() const {
    Exponent sum = 0;
    for (Exponent e : entries_)
        sum = checked_add(sum, e);
    return sum;
}

bool ExponentVector::fits_within(const ExponentVector& bounds) const {
    require_same_size(*this, bounds);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i] > bounds.entries_[i])
            return false;
    return true;
}

ExponentVector ExponentVector::operator+(const ExponentVector& other) const {
    require_same_size(*this, other);
    std::vector<Exponent> out(entries_.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = checked_add(entries_[i], other.entries_[i]);
    return ExponentVector(std::move(out));
}

std::optional<ExponentVector> ExponentVector::minus(const ExponentVector& other) const {
    require_same_size(*this, other);
    std::vector<Exponent> out(entries_.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (entries_[i] < other.entries_[i])
            return std::nullopt;
        out[i] = entries_[i] - other.entries_[i];
    }
    return ExponentVector(std::move(out));
}

ExponentVector ExponentVector::concat(const ExponentVector& tail) const {
    std::vector<Exponent> out(entries_);
    out.insert(out.end(), tail.entries_.begin(), tail.entries_.end());
    return ExponentVector(std::move(out));
}

ExponentVector ExponentVector::slice(std::size_t first, std::size_t count) const {
    if (first + count > entries_.size())
        fail(ErrorKind::DimensionMismatch, "slice exceeds exponent vector length");
    auto it = entries_.begin() + static_cast<std::ptrdiff_t>(first);
    return ExponentVector(std::vector<Exponent>(it, it + static_cast<std::ptrdiff_t>(count)));
}

std::string ExponentVector::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(entries_[i]);
    }
    return out + ")";
}

TransformMatrix::TransformMatrix(std::vector<std::vector<Exponent>> rows) {
    if (rows.empty() || rows.front().empty())
        fail(ErrorKind::InvalidArgument, "transform matrix must be at least 1x1");
    rows_ = rows.size();
    cols_ = rows.front().size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            fail(ErrorKind::DimensionMismatch, "transform matrix rows have unequal lengths");
        for (Exponent a : row) {
            if (a < 0)
                fail(ErrorKind::InvalidArgument, "transform matrix entries must be nonnegative");
            entries_.push_back(a);
        }
    }
    zero_column_.assign(cols_, true);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t r = 0; r < cols_; ++r)
            if ((*this)(i, r) != 0)
                zero_column_[r] = false;
}

TransformMatrix TransformMatrix::identity(std::size_t n) {
    std::vector<std::vector<Exponent>> rows(n, std::vector<Exponent>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        rows[i][i] = 1;
    return TransformMatrix(std::move(rows));
}

bool TransformMatrix::has_zero_column() const noexcept {
    return std::find(zero_column_.begin(), zero_column_.end(), true) != zero_column_.end();
}

std::optional<Exponent> TransformMatrix::column_reach(std::size_t r, const ExponentVector& box) const {
    if (box.size() != rows_)
        fail(ErrorKind::DimensionMismatch, "box length does not match matrix row count");
    std::optional<Exponent> reach;
    for (std::size_t i = 0; i < rows_; ++i) {
        Exponent a = (*this)(i, r);
        if (a == 0)
            continue;
        Exponent q = box[i] / a;
        reach = reach ? std::min(*reach, q) : q;
    }
    return reach;
}

std::vector<std::vector<Exponent>> TransformMatrix::to_rows() const {
    std::vector<std::vector<Exponent>> out(rows_, std::vector<Exponent>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t r = 0; r < cols_; ++r)
            out[i][r] = (*this)(i, r);
    return out;
}

ExponentVector monomial_image(const TransformMatrix& a, const ExponentVector& j) {
    if (j.size() != a.cols())
        fail(ErrorKind::DimensionMismatch, "vector " + j.to_string() + " has length " +
                                               std::to_string(j.size()) + ", matrix has " +
                                               std::to_string(a.cols()) + " columns");
    std::vector<Exponent> k(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t r = 0; r < a.cols(); ++r)
            k[i] = checked_add(k[i], checked_mul(a(i, r), j[r]));
    return ExponentVector(std::move(k));
}

} // namespace mgf
