#include "wbs/report_json.hpp"

#include <cmath>
#include <cstdio>

namespace wbs {

std::string json_number(double x) {
    char buf[64];
    if (std::isnan(x)) return "\"nan\"";
    if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        if (ch == '"' || ch == '\\') {
            out += '\\';
            out += ch;
        } else if (ch == '\n') {
            out += "\\n";
        } else {
            out += ch;
        }
    }
    return out;
}

void append_kv_list(std::string& s, const std::vector<std::pair<std::string, long long>>& kv) {
    s += "{";
    bool first = true;
    for (const auto& [k, v] : kv) {
        if (!first) s += ",";
        first = false;
        s += "\"" + json_escape(k) + "\":" + std::to_string(v);
    }
    s += "}";
}

std::string kv_compact(const std::vector<std::pair<std::string, long long>>& kv) {
    std::string s;
    bool first = true;
    for (const auto& [k, v] : kv) {
        if (!first) s += ";";
        first = false;
        s += k + "=" + std::to_string(v);
    }
    return s;
}

}  // namespace

std::string criterion_report_json(const CriterionReport& r) {
    std::string s = "{\"criterion\":\"";
    s += criterion_name(r.id);
    s += "\",\"verdict\":\"";
    s += r.witnessed ? "witnessed" : "undetermined";
    s += "\",\"witness\":";
    append_kv_list(s, r.witness);
    s += ",\"value_log\":" + json_number(r.value_log);
    s += ",\"tolerance_log\":" + json_number(r.tolerance_log);
    s += ",\"horizon\":";
    append_kv_list(s, r.horizon);
    if (!r.details.empty()) {
        s += ",\"details\":{";
        bool first = true;
        for (const auto& [k, v] : r.details) {
            if (!first) s += ",";
            first = false;
            s += "\"" + json_escape(k) + "\":\"" + json_escape(v) + "\"";
        }
        s += "}";
    }
    if (!r.trace.empty()) {
        s += ",\"trace\":[";
        for (std::size_t i = 0; i < r.trace.size(); ++i) {
            if (i) s += ",";
            s += json_number(r.trace[i]);
        }
        s += "]";
    }
    s += "}";
    return s;
}

namespace {

std::string condition_json(const ConditionStatus& c) {
    std::string s = "{\"condition\":\"" + json_escape(c.name) + "\",\"status\":\"" +
                    json_escape(c.status) + "\",\"via\":[";
    for (std::size_t i = 0; i < c.via.size(); ++i) {
        if (i) s += ",";
        s += "\"" + json_escape(c.via[i]) + "\"";
    }
    s += "]}";
    return s;
}

std::string budgets_json(const Budgets& b) {
    std::string s = "{\"tol_log\":" + json_number(b.tol);
    s += ",\"m_max\":" + std::to_string(b.m_max);
    s += ",\"n_max\":" + std::to_string(b.n_max);
    s += ",\"j_max\":" + std::to_string(b.j_max) + "}";
    return s;
}

}  // namespace

std::string classification_json(const ClassificationReport& r) {
    std::string s = "{\n\"command\":\"classify\",\n\"family\":\"" + json_escape(r.family) + "\",\n";
    s += "\"p\":" + json_number(r.p) + ",\n";
    s += std::string("\"space\":\"") + (std::isinf(r.p) ? "c_0(Z)" : "l_p(Z)") + "\",\n";
    s += "\"budgets\":" + budgets_json(r.budgets) + ",\n";
    s += "\"conditions\":[\n";
    for (std::size_t i = 0; i < r.conditions.size(); ++i) {
        s += "  " + condition_json(r.conditions[i]);
        if (i + 1 < r.conditions.size()) s += ",";
        s += "\n";
    }
    s += "],\n\"cyclic\":" + condition_json(r.cyclic) + ",\n";
    s += "\"reports\":[\n";
    for (std::size_t i = 0; i < r.runs.size(); ++i) {
        s += "  " + criterion_report_json(r.runs[i]);
        if (i + 1 < r.runs.size()) s += ",";
        s += "\n";
    }
    s += "]\n}\n";
    return s;
}

std::string transition_json(const TransitionResult& r) {
    if (!r.found) {
        std::string s = "{\"found\":false,\"best_bound_log\":" + json_number(r.best_bound_log);
        s += ",\"best_j\":" + std::to_string(r.best_j);
        s += ",\"best_m\":" + std::to_string(r.best_m) + "}\n";
        return s;
    }
    std::string s = "{\"j\":" + std::to_string(r.j);
    s += ",\"m\":" + std::to_string(r.m);
    s += ",\"eps\":" + json_number(r.eps);
    s += ",\"poly\":{\"terms\":[";
    bool first = true;
    for (const auto& [deg, c] : r.poly.coeffs) {
        if (!first) s += ",";
        first = false;
        s += "[" + std::to_string(deg) + "," + json_number(c.phase.real()) + "," +
             json_number(c.phase.imag()) + "," + json_number(c.log_mag) + "]";
    }
    s += "]},\"u\":" + sparse_vector_json(r.u);
    s += ",\"residual_direct_log\":" + json_number(r.residual_direct_log);
    s += ",\"residual_closedform_log\":" + json_number(r.residual_closedform_log) + "}\n";
    return s;
}

namespace {

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += "\"";
    return out;
}

std::string csv_row(const std::string& family, double p, const CriterionReport& r) {
    std::string s = csv_quote(family) + ",";
    s += (std::isinf(p) ? "inf" : json_number(p)) + ",";
    s += criterion_name(r.id);
    s += ",";
    s += r.witnessed ? "witnessed" : "undetermined";
    s += ",";
    s += std::isfinite(r.value_log) ? json_number(r.value_log)
                                    : (r.value_log > 0 ? "inf" : "-inf");
    s += "," + csv_quote(kv_compact(r.witness)) + "," + csv_quote(kv_compact(r.horizon)) + "\n";
    return s;
}

}  // namespace

std::string criteria_csv(const std::string& family, double p,
                         const std::vector<CriterionReport>& reports) {
    std::string s = "family,p,criterion,verdict,value_log,witness_params,horizon\n";
    for (const auto& r : reports) s += csv_row(family, p, r);
    return s;
}

std::string classification_csv(const ClassificationReport& r) {
    std::string s = criteria_csv(r.family, r.p, r.runs);
    auto cond_row = [&](const ConditionStatus& c) {
        std::string via;
        for (std::size_t i = 0; i < c.via.size(); ++i) {
            if (i) via += ";";
            via += c.via[i];
        }
        return csv_quote(r.family) + "," + (std::isinf(r.p) ? "inf" : json_number(r.p)) + "," +
               c.name + "," + c.status + ",," + csv_quote(via) + ",\n";
    };
    for (const auto& c : r.conditions) s += cond_row(c);
    s += cond_row(r.cyclic);
    return s;
}

}  // namespace wbs
