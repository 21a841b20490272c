#include "mgf/job.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>

#include "json.hpp"

#include "mgf/oracle.hpp"

namespace mgf {

using json = nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& where, const std::string& message) {
    fail(ErrorKind::ConfigError, where.empty() ? message : "at " + where + ": " + message);
}

std::string child(const std::string& path, std::string_view key) {
    return path + "/" + std::string(key);
}

std::string child(const std::string& path, std::size_t index) {
    return path + "/" + std::to_string(index);
}

const json& require(const json& node, std::string_view key, const std::string& path) {
    if (!node.is_object())
        config_error(path, "expected an object");
    auto it = node.find(std::string(key));
    if (it == node.end())
        config_error(path, "missing field '" + std::string(key) + "'");
    return *it;
}

Exponent parse_count(const json& node, const std::string& path) {
    if (!node.is_number_integer() || node.get<long long>() < 0)
        config_error(path, "expected a nonnegative integer");
    return node.get<Exponent>();
}

ExponentVector parse_vector(const json& node, const std::string& path) {
    if (!node.is_array())
        config_error(path, "expected an array of nonnegative integers");
    std::vector<Exponent> out;
    for (std::size_t i = 0; i < node.size(); ++i)
        out.push_back(parse_count(node[i], child(path, i)));
    return ExponentVector(std::move(out));
}

// Numbers go through their shortest round-trip decimal so that 0.1 becomes
// exactly 1/10.
Rational parse_probability(const json& node, const std::string& path) {
    try {
        if (node.is_string())
            return parse_rational(node.get<std::string>());
        if (node.is_number_integer())
            return Rational(node.get<long>());
        if (node.is_number_float())
            return parse_rational(Coefficient(node.get<double>()).to_string());
    } catch (const Error& e) {
        config_error(path, e.what());
    }
    config_error(path, "expected a number or a \"p/q\" string");
}

double parse_real(const json& node, const std::string& path) {
    if (node.is_number())
        return node.get<double>();
    return parse_probability(node, path).get_d();
}

TransformMatrix parse_matrix(const json& node, const std::string& path) {
    if (!node.is_array() || node.empty())
        config_error(path, "expected a nonempty list of rows");
    std::vector<std::vector<Exponent>> rows;
    for (std::size_t i = 0; i < node.size(); ++i) {
        ExponentVector row = parse_vector(node[i], child(path, i));
        rows.emplace_back(row.begin(), row.end());
    }
    try {
        return TransformMatrix(std::move(rows));
    } catch (const Error& e) {
        config_error(path, e.what());
    }
}

DistributionSpec parse_distribution(const json& node, const std::string& path) {
    if (!node.is_object() || node.size() != 1)
        config_error(path, "expected exactly one of 'poisson', 'multinomial', 'table'");
    const auto& [family, body] = *node.items().begin();
    const std::string body_path = child(path, family);

    if (family == "poisson") {
        const json& lambdas = require(body, "lambdas", body_path);
        const std::string lpath = child(body_path, "lambdas");
        if (!lambdas.is_array())
            config_error(lpath, "expected an array of rates");
        PoissonSpec spec;
        for (std::size_t i = 0; i < lambdas.size(); ++i)
            spec.lambdas.push_back(parse_real(lambdas[i], child(lpath, i)));
        return spec;
    }
    if (family == "multinomial") {
        MultinomialSpec spec;
        spec.trials = parse_count(require(body, "N", body_path), child(body_path, "N"));
        const json& probs = require(body, "probs", body_path);
        const std::string ppath = child(body_path, "probs");
        if (!probs.is_array())
            config_error(ppath, "expected an array of probabilities");
        for (std::size_t i = 0; i < probs.size(); ++i)
            spec.probs.push_back(parse_probability(probs[i], child(ppath, i)));
        return spec;
    }
    if (family == "table") {
        const json& entries = require(body, "entries", body_path);
        const std::string epath = child(body_path, "entries");
        if (!entries.is_array())
            config_error(epath, "expected an array of {\"j\": [...], \"p\": ...} entries");
        TableSpec spec;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const std::string item = child(epath, i);
            ExponentVector j = parse_vector(require(entries[i], "j", item), child(item, "j"));
            Rational p = parse_probability(require(entries[i], "p", item), child(item, "p"));
            if (!spec.entries.emplace(std::move(j), std::move(p)).second)
                config_error(item, "duplicate outcome");
        }
        return spec;
    }
    config_error(path, "unknown distribution family '" + family + "'");
}

QuerySpec parse_query(const json& node, const std::string& path, std::size_t d) {
    QuerySpec out;
    out.query.k = parse_vector(require(node, "k", path), child(path, "k"));
    out.query.s = node.contains("s") ? parse_vector(node["s"], child(path, "s")) : ExponentVector(d);
    if (node.contains("support_bounds"))
        out.query.support_bounds = parse_vector(node["support_bounds"], child(path, "support_bounds"));
    if (node.contains("pmf")) {
        if (!node["pmf"].is_boolean())
            config_error(child(path, "pmf"), "expected true or false");
        out.want_pmf = node["pmf"].get<bool>();
    }
    return out;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

json number_json(const Coefficient& c) {
    if (c.is_exact())
        return c.to_string();
    return std::stod(c.to_string(12));
}

json vector_json(const ExponentVector& v) {
    return json(std::vector<Exponent>(v.begin(), v.end()));
}

bool agrees(const Coefficient& a, const Coefficient& b) {
    return approx_equal(a, b.to_mode(a.mode()));
}

QueryReport run_query(const JobConfig& config, const RunOptions& options, std::size_t index) {
    const auto& spec = config.queries[index];
    const auto& query = spec.query;
    QueryReport row;
    row.index = index;
    row.k = query.k;
    row.s = query.s;
    try {
        row.fiber_size = fiber_support_size(config.distribution, config.matrix, query.k, query.support_bounds);
        MomentResult generic = conditional_factorial_moment(config.distribution, config.matrix, query, config.mode);
        row.generic = generic.value;
        row.prob_y = generic.prob_y;

        if (spec.want_pmf) {
            if (static_cast<std::size_t>(*row.fiber_size) <= options.max_pmf_rows)
                row.pmf = conditional_pmf(config.distribution, config.matrix, query.k, config.mode,
                                          query.support_bounds);
            else
                row.pmf_omitted = true;
        }

        if (auto closed = closed_form_conditional_moment(config.distribution, config.matrix, query, config.mode))
            row.closed_form = closed->value;
        if (options.verify)
            row.oracle = oracle::conditional_moment(config.distribution, config.matrix, query, config.mode).value;

        if (row.closed_form || row.oracle) {
            bool ok = true;
            if (row.closed_form)
                ok = ok && agrees(*row.generic, *row.closed_form);
            if (row.oracle)
                ok = ok && agrees(*row.generic, *row.oracle);
            row.agree = ok;
        }
    } catch (const Error& e) {
        row.error = QueryError{e.kind(), e.what()};
    }
    return row;
}

std::string human_number(const Coefficient& c) {
    return c.to_string(10);
}

} // namespace

std::optional<Mode> parse_mode(std::string_view text) {
    if (text == "exact")
        return Mode::Exact;
    if (text == "float")
        return Mode::Float;
    return std::nullopt;
}

std::optional<OutputFormat> parse_output_format(std::string_view text) {
    if (text == "human")
        return OutputFormat::Human;
    if (text == "machine-readable" || text == "json-like" || text == "json")
        return OutputFormat::Machine;
    return std::nullopt;
}

JobConfig parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        fail(ErrorKind::ConfigError, "line " + std::to_string(line_of(text, e.byte)) + ": malformed JSON (" +
                                         std::string(e.what()) + ")");
    }
    if (!root.is_object())
        config_error("", "top level must be an object");

    TransformMatrix matrix = parse_matrix(require(root, "matrix", ""), "/matrix");
    DistributionSpec dist = parse_distribution(require(root, "distribution", ""), "/distribution");
    const Mode default_mode = natural_mode(dist);
    JobConfig config{std::move(matrix), std::move(dist), {}, default_mode, OutputFormat::Machine};

    const json& queries = require(root, "queries", "");
    if (!queries.is_array())
        config_error("/queries", "expected an array of queries");
    for (std::size_t i = 0; i < queries.size(); ++i)
        config.queries.push_back(parse_query(queries[i], child(std::string("/queries"), i), config.matrix.cols()));

    if (root.contains("mode")) {
        auto mode = root["mode"].is_string() ? parse_mode(root["mode"].get<std::string>()) : std::nullopt;
        if (!mode)
            config_error("/mode", "expected \"exact\" or \"float\"");
        config.mode = *mode;
    }
    if (root.contains("output")) {
        auto format = root["output"].is_string() ? parse_output_format(root["output"].get<std::string>())
                                                 : std::nullopt;
        if (!format)
            config_error("/output", "expected \"human\" or \"machine-readable\"");
        config.output = *format;
    }
    return config;
}

JobConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::ConfigError, "cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

void validate_config(const JobConfig& config) {
    const std::size_t d = dimension(config.distribution);
    if (config.matrix.cols() != d)
        fail(ErrorKind::DimensionMismatch, "matrix has " + std::to_string(config.matrix.cols()) +
                                               " columns but the distribution has dimension " + std::to_string(d));
    if (config.mode == Mode::Exact && std::holds_alternative<PoissonSpec>(config.distribution))
        fail(ErrorKind::ModeMismatch, "mode \"exact\" is not available for Poisson distributions: "
                                      "exp(-lambda) is irrational, use \"float\"");
    validate(config.distribution, config.mode);
    for (std::size_t i = 0; i < config.queries.size(); ++i) {
        const auto& q = config.queries[i].query;
        const std::string where = "query " + std::to_string(i) + ": ";
        if (q.k.size() != config.matrix.rows())
            fail(ErrorKind::DimensionMismatch, where + "k has length " + std::to_string(q.k.size()) +
                                                   ", expected " + std::to_string(config.matrix.rows()));
        if (q.s.size() != d)
            fail(ErrorKind::DimensionMismatch,
                 where + "s has length " + std::to_string(q.s.size()) + ", expected " + std::to_string(d));
        if (q.support_bounds && q.support_bounds->size() != d)
            fail(ErrorKind::DimensionMismatch, where + "support_bounds has length " +
                                                   std::to_string(q.support_bounds->size()) + ", expected " +
                                                   std::to_string(d));
    }
}

bool Report::ok() const {
    return std::none_of(rows.begin(), rows.end(), [](const QueryReport& r) { return r.error.has_value(); });
}

Report run(const JobConfig& config, const RunOptions& options) {
    validate_config(config);
    std::vector<std::future<QueryReport>> pending;
    pending.reserve(config.queries.size());
    for (std::size_t i = 0; i < config.queries.size(); ++i)
        pending.push_back(std::async(std::launch::async, run_query, std::cref(config), std::cref(options), i));

    Report report;
    report.family = std::string(family_name(config.distribution));
    report.mode = config.mode;
    for (auto& f : pending)
        report.rows.push_back(f.get());
    return report;
}

std::string render_machine(const Report& report) {
    json rows = json::array();
    for (const auto& row : report.rows) {
        json r;
        r["query_index"] = row.index;
        r["k"] = vector_json(row.k);
        r["s"] = vector_json(row.s);
        r["fiber_size"] = row.fiber_size ? json(*row.fiber_size) : json(nullptr);
        r["prob_Y"] = row.prob_y ? number_json(*row.prob_y) : json(nullptr);
        r["moment_generic"] = row.generic ? number_json(*row.generic) : json(nullptr);
        r["moment_closed_form"] = row.closed_form ? number_json(*row.closed_form) : json(nullptr);
        r["moment_oracle"] = row.oracle ? number_json(*row.oracle) : json(nullptr);
        r["agree"] = row.agree ? json(*row.agree) : json(nullptr);
        if (row.error)
            r["error"] = {{"kind", std::string(to_string(row.error->kind))}, {"message", row.error->message}};
        else
            r["error"] = nullptr;
        if (row.pmf) {
            json pmf = json::array();
            for (const auto& [j, p] : *row.pmf)
                pmf.push_back({{"j", vector_json(j)}, {"p", number_json(p)}});
            r["pmf"] = std::move(pmf);
        } else if (row.pmf_omitted) {
            r["pmf"] = "omitted: fiber exceeds max-pmf-rows";
        }
        rows.push_back(std::move(r));
    }
    json root;
    root["distribution"] = report.family;
    root["mode"] = std::string(to_string(report.mode));
    root["queries"] = std::move(rows);
    return root.dump(2) + "\n";
}

std::string render_human(const Report& report) {
    std::ostringstream out;
    out << "distribution: " << report.family << " (" << to_string(report.mode) << " mode)\n";
    for (const auto& row : report.rows) {
        out << "query " << row.index << ": k=" << row.k.to_string() << " s=" << row.s.to_string() << "\n";
        if (row.error) {
            out << "  error: " << to_string(row.error->kind) << ": " << row.error->message << "\n";
            continue;
        }
        out << "  fiber_size=" << *row.fiber_size << " P(Y=k)=" << human_number(*row.prob_y) << "\n";
        out << "  generic=" << human_number(*row.generic);
        if (row.closed_form)
            out << ", closed_form=" << human_number(*row.closed_form);
        if (row.oracle)
            out << ", oracle=" << human_number(*row.oracle);
        if (row.agree)
            out << ", agree=" << (*row.agree ? "true" : "false");
        out << "\n";
        if (row.pmf) {
            out << "  conditional pmf:\n";
            for (const auto& [j, p] : *row.pmf)
                out << "    " << j.to_string() << "  " << human_number(p) << "\n";
        } else if (row.pmf_omitted) {
            out << "  conditional pmf omitted (fiber larger than --max-pmf-rows)\n";
        }
    }
    return out.str();
}

} // namespace mgf
