#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mgf/conditioning.hpp"
#include "mgf/distributions.hpp"

namespace mgf {

enum class OutputFormat { Human, Machine };

struct QuerySpec {
    ConditionalQuery query;
    bool want_pmf = false;
};

struct JobConfig {
    TransformMatrix matrix;
    DistributionSpec distribution;
    std::vector<QuerySpec> queries;
    Mode mode = Mode::Exact;
    OutputFormat output = OutputFormat::Machine;
};

struct RunOptions {
    bool verify = false;
    std::size_t max_pmf_rows = 10000;
};

// Parses the JSON job description. Syntax errors name the line; schema
// errors name the offending field as a JSON pointer. Both raise ConfigError.
JobConfig parse_config(std::string_view text);
JobConfig load_config(const std::string& path);

// Cross-field checks that must pass before any computation: matrix width vs
// distribution dimension, query lengths, exact mode vs Poisson, family
// invariants.
void validate_config(const JobConfig& config);

std::optional<Mode> parse_mode(std::string_view text);
std::optional<OutputFormat> parse_output_format(std::string_view text);

struct QueryError {
    ErrorKind kind;
    std::string message;
};

struct QueryReport {
    std::size_t index = 0;
    ExponentVector k;
    ExponentVector s;
    std::optional<Exponent> fiber_size;
    std::optional<Coefficient> prob_y;
    std::optional<ConditionalPmf> pmf;
    bool pmf_omitted = false;
    std::optional<Coefficient> generic;
    std::optional<Coefficient> closed_form;
    std::optional<Coefficient> oracle;
    std::optional<bool> agree;
    std::optional<QueryError> error;
};

struct Report {
    std::string family;
    Mode mode = Mode::Exact;
    std::vector<QueryReport> rows;

    bool ok() const;
};

// Runs every query (concurrently); rows come back in config order and a
// failing query never aborts its siblings.
Report run(const JobConfig& config, const RunOptions& options = {});

std::string render_machine(const Report& report);
std::string render_human(const Report& report);

} // namespace mgf
