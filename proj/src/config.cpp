#include "leibniz/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace leibniz {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw config_error("config: bad numeric value for '" + key + "': " + s);
    }
}

long long to_int(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw config_error("config: bad integer value for '" + key + "': " + s);
    }
}

bool is_number(const std::string& s) {
    if (s.empty()) return false;
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

const std::vector<std::string> kKnownSuites = {"identities", "faa", "aichinger", "recover",
                                               "counterexample"};

OperatorConfig characterized_block(const std::string& name, const std::string& c0,
                                   const std::string& c1, const std::string& c2,
                                   const std::string& d00, int k) {
    OperatorConfig oc;
    oc.family = "characterized";
    oc.name = name;
    oc.params["c0"] = c0;
    oc.params["c1"] = c1;
    oc.params["c2"] = c2;
    oc.params["d00"] = d00;
    oc.params["k"] = std::to_string(k);
    return oc;
}

} // namespace

void RunConfig::validate() const {
    if (suites.empty()) throw config_error("config: suites must be nonempty");
    for (const auto& s : suites)
        if (std::find(kKnownSuites.begin(), kKnownSuites.end(), s) == kKnownSuites.end())
            throw config_error("config: unknown suite '" + s + "'");
    if (!(tolerance > 0.0)) throw config_error("config: tolerance must be > 0");
    if (points_per_check < 1) throw config_error("config: points_per_check must be >= 1");
    if (trials < 1) throw config_error("config: trials must be >= 1");
    if (!(violation_threshold > 0.0))
        throw config_error("config: violation_threshold must be > 0");
    if (format != "json" && format != "csv")
        throw config_error("config: format must be json or csv");
    for (const auto& name : corpus) {
        try {
            corpus_lookup(name);
        } catch (const std::exception& e) {
            throw config_error(std::string("config: ") + e.what());
        }
    }
    for (const auto& oc : operators) build_operator(oc);  // throws config_error on bad blocks
}

RunConfig RunConfig::defaults() {
    RunConfig c;
    c.suites = {"identities"};
    for (const auto& f : builtin_corpus()) c.corpus.push_back(f.name());

    OperatorConfig second;
    second.family = "second_only";
    second.name = "second_derivative";
    second.params["c2"] = "1";
    c.operators.push_back(second);

    // constant coefficients, k = 2
    c.operators.push_back(characterized_block("D_const_a", "1", "2", "3", "4", 2));
    c.operators.push_back(characterized_block("D_const_b", "-1", "0.5", "2", "0", 2));
    c.operators.push_back(characterized_block("D_const_c", "0", "0", "1", "0", 2));
    c.operators.push_back(characterized_block("D_const_d", "2", "0", "0", "-1", 2));
    // non-constant coefficients, k = 2
    c.operators.push_back(characterized_block("D_var_a", "sin", "x", "1+x^2", "cos", 2));
    c.operators.push_back(characterized_block("D_var_b", "x^2", "0", "x", "0", 2));
    c.operators.push_back(characterized_block("D_var_c", "0", "sin", "0", "x^2", 2));
    // k = 1 (c2 forced to zero)
    c.operators.push_back(characterized_block("D_k1_a", "1", "1", "0", "0.5", 1));
    c.operators.push_back(characterized_block("D_k1_b", "x", "cos", "0", "1", 1));
    // k = 0 (c1 and c2 forced to zero)
    c.operators.push_back(characterized_block("D_k0_a", "1", "0", "0", "1", 0));
    c.operators.push_back(characterized_block("D_k0_b", "sin", "0", "0", "x", 0));
    c.operators.push_back(characterized_block("D_k0_c", "0.5", "0", "0", "0", 0));
    return c;
}

RunConfig RunConfig::parse_string(const std::string& text) {
    RunConfig c = defaults();
    c.operators.clear();
    c.corpus.clear();
    c.suites.clear();

    std::istringstream is(text);
    std::string line;
    OperatorConfig* current_op = nullptr;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line != "[operator]")
                throw config_error("config line " + std::to_string(lineno) +
                                   ": only [operator] sections are supported");
            c.operators.emplace_back();
            current_op = &c.operators.back();
            continue;
        }

        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) +
                               ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));

        if (current_op) {
            if (key == "family")
                current_op->family = value;
            else if (key == "name")
                current_op->name = value;
            else
                current_op->params[key] = value;
            continue;
        }

        if (key == "suites")
            c.suites = split_list(value);
        else if (key == "corpus")
            c.corpus = split_list(value);
        else if (key == "points_per_check")
            c.points_per_check = static_cast<int>(to_int(key, value));
        else if (key == "seed")
            c.seed = static_cast<std::uint64_t>(to_int(key, value));
        else if (key == "tolerance")
            c.tolerance = to_double(key, value);
        else if (key == "report_path")
            c.report_path = value;
        else if (key == "format")
            c.format = value;
        else if (key == "trials")
            c.trials = static_cast<int>(to_int(key, value));
        else if (key == "violation_threshold")
            c.violation_threshold = to_double(key, value);
        else
            throw config_error("config line " + std::to_string(lineno) + ": unknown key '" +
                               key + "'");
    }

    // unspecified lists fall back to the defaults
    RunConfig defs = defaults();
    if (c.suites.empty()) c.suites = defs.suites;
    if (c.corpus.empty()) c.corpus = defs.corpus;
    if (c.operators.empty()) c.operators = defs.operators;
    return c;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

CoeffFn parse_coefficient(const std::string& value) {
    if (is_number(value)) return CoeffFn::constant(std::strtod(value.c_str(), nullptr));
    if (value == "x")
        return CoeffFn::from_callable("x", [](double x) { return x; });
    if (value == "x^2")
        return CoeffFn::from_callable("x^2", [](double x) { return x * x; });
    if (value == "sin")
        return CoeffFn::from_callable("sin", [](double x) { return std::sin(x); });
    if (value == "cos")
        return CoeffFn::from_callable("cos", [](double x) { return std::cos(x); });
    if (value == "1+x^2")
        return CoeffFn::from_callable("1+x^2", [](double x) { return 1.0 + x * x; });
    throw config_error("unknown coefficient '" + value + "'");
}

namespace {

std::string param_or(const OperatorConfig& oc, const std::string& key,
                     const std::string& fallback) {
    auto it = oc.params.find(key);
    return it == oc.params.end() ? fallback : it->second;
}

} // namespace

Operator build_operator(const OperatorConfig& oc) {
    try {
        if (oc.family == "characterized") {
            int k = static_cast<int>(to_int("k", param_or(oc, "k", "2")));
            return characterized(parse_coefficient(param_or(oc, "c0", "0")),
                                 parse_coefficient(param_or(oc, "c1", "0")),
                                 parse_coefficient(param_or(oc, "c2", "0")),
                                 parse_coefficient(param_or(oc, "d00", "0")), k);
        }
        if (oc.family == "linear") {
            return linear_differential(parse_coefficient(param_or(oc, "c1", "0")),
                                       parse_coefficient(param_or(oc, "c2", "0")));
        }
        if (oc.family == "second_only") {
            return second_derivative_only(parse_coefficient(param_or(oc, "c2", "1")));
        }
        if (oc.family == "log_polynomial") {
            int k = static_cast<int>(to_int("k", param_or(oc, "k", "2")));
            std::vector<CoeffFn> c;
            std::vector<std::vector<CoeffFn>> d;
            for (int i = 0; i <= k; ++i) {
                c.push_back(parse_coefficient(param_or(oc, "c" + std::to_string(i), "0")));
                std::vector<CoeffFn> row;
                for (int j = 0; j <= k; ++j)
                    row.push_back(parse_coefficient(
                        param_or(oc, "d" + std::to_string(i) + std::to_string(j), "0")));
                d.push_back(std::move(row));
            }
            return log_polynomial(std::move(c), std::move(d));
        }
        throw config_error("unknown operator family '" + oc.family + "'");
    } catch (const config_error&) {
        throw;
    } catch (const std::exception& e) {
        throw config_error("operator '" + (oc.name.empty() ? oc.family : oc.name) +
                           "': " + e.what());
    }
}

bool has_known_coefficients(const OperatorConfig& oc) {
    return oc.family == "characterized" || oc.family == "second_only" ||
           oc.family == "linear";
}

std::array<double, 4> known_coefficients_at(const OperatorConfig& oc, double x) {
    auto value = [&](const std::string& key, const std::string& fallback) {
        return parse_coefficient(param_or(oc, key, fallback))(x);
    };
    if (oc.family == "characterized")
        return {value("c0", "0"), value("c1", "0"), value("c2", "0"), value("d00", "0")};
    if (oc.family == "second_only") return {0.0, 0.0, value("c2", "1"), 0.0};
    if (oc.family == "linear") return {0.0, value("c1", "0"), value("c2", "0"), 0.0};
    throw config_error("no known coefficients for family '" + oc.family + "'");
}

} // namespace leibniz
