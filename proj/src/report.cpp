#include "leibniz/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace leibniz {

namespace {

// 17 significant digits: enough to reproduce any double exactly
std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

bool SuiteReport::all_pass() const {
    for (const auto& c : cases)
        if (!c.pass) return false;
    return true;
}

bool RunReport::all_pass() const {
    for (const auto& s : suites)
        if (!s.all_pass()) return false;
    return true;
}

std::string report_to_json(const RunReport& report, bool include_timing) {
    nlohmann::ordered_json root;
    root["schema"] = report.schema;
    root["seed"] = report.seed;
    root["tolerance"] = report.tolerance;
    root["suites"] = nlohmann::ordered_json::array();
    for (const auto& s : report.suites) {
        nlohmann::ordered_json js;
        js["suite"] = s.suite;
        js["seed"] = s.seed;
        if (include_timing) js["wall_time_ms"] = s.wall_time_ms;
        js["cases"] = nlohmann::ordered_json::array();
        for (const auto& c : s.cases) {
            nlohmann::ordered_json jc;
            jc["case"] = c.name;
            jc["operator"] = c.op;
            jc["functions"] = c.functions;
            jc["sample_count"] = c.sample_count;
            jc["max_residual"] = c.max_residual;
            jc["scale"] = c.scale;
            jc["tolerance"] = c.tolerance;
            jc["expect"] = c.expect;
            jc["pass"] = c.pass;
            if (c.measured) jc["measured"] = *c.measured;
            js["cases"].push_back(std::move(jc));
        }
        root["suites"].push_back(std::move(js));
    }
    return root.dump(2) + "\n";
}

std::string report_to_csv(const RunReport& report, bool include_timing) {
    std::ostringstream os;
    os << "suite,case,operator,functions,sample_count,max_residual,scale,tolerance,"
          "expect,pass,measured,seed";
    if (include_timing) os << ",wall_time_ms";
    os << "\n";
    for (const auto& s : report.suites) {
        for (const auto& c : s.cases) {
            os << s.suite << ",\"" << c.name << "\",\"" << c.op << "\",\"" << c.functions
               << "\"," << c.sample_count << "," << num(c.max_residual) << ","
               << num(c.scale) << "," << num(c.tolerance) << "," << c.expect << ","
               << (c.pass ? "true" : "false") << ","
               << (c.measured ? num(*c.measured) : "") << "," << s.seed;
            if (include_timing) os << "," << num(s.wall_time_ms);
            os << "\n";
        }
    }
    return os.str();
}

} // namespace leibniz
