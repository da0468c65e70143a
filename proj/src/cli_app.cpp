#include "wbs/cli_app.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "wbs/constructor.hpp"
#include "wbs/report_json.hpp"

namespace wbs {

Budgets RunConfig::budgets() const {
    Budgets b;
    b.tol = std::log(tol_linear);
    b.m_max = m_max;
    b.n_max = n_max;
    b.j_max = j_max;
    b.workers = workers;
    return b;
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

std::vector<double> parse_args_list(const std::string& s, const std::string& fam) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            require(pos == tok.size(), "");
        } catch (...) {
            throw std::invalid_argument("family " + fam + ": bad numeric argument \"" + tok + "\"");
        }
    }
    return out;
}

WeightSequence family_from_inline(const std::string& text) {
    if (!text.empty() && text[0] == '{') return WeightSequence::from_json_text(text);
    auto colon = text.find(':');
    std::string name = text.substr(0, colon);
    std::vector<double> a;
    if (colon != std::string::npos) a = parse_args_list(text.substr(colon + 1), name);
    auto arity = [&](std::size_t lo, std::size_t hi) {
        require(a.size() >= lo && a.size() <= hi,
                "family " + name + ": expected " + std::to_string(lo) +
                    (hi > lo ? ".." + std::to_string(hi) : "") + " arguments, got " +
                    std::to_string(a.size()));
    };
    if (name == "constant") {
        arity(1, 1);
        return WeightSequence::constant(a[0]);
    }
    if (name == "beauzamy") {
        arity(2, 2);
        return WeightSequence::beauzamy(a[0], a[1]);
    }
    if (name == "polydecay") {
        arity(3, 4);
        return WeightSequence::polydecay(a[0], a[1], a[2],
                                         a.size() == 4 ? static_cast<long long>(a[3]) : 2);
    }
    if (name == "supexp") {
        arity(1, 1);
        return WeightSequence::supexp(a[0]);
    }
    throw std::invalid_argument("unknown family \"" + name +
                                "\" (inline families: constant, beauzamy, polydecay, supexp; "
                                "tables go through --spec-file or inline JSON)");
}

}  // namespace

WeightSequence weights_from_config(const RunConfig& cfg) {
    require(cfg.family_inline.has_value() || cfg.spec_file.has_value(),
            "one of --family or --spec-file is required");
    require(!(cfg.family_inline && cfg.spec_file), "--family and --spec-file are exclusive");
    if (cfg.family_inline) return family_from_inline(*cfg.family_inline);
    std::ifstream in(*cfg.spec_file);
    if (!in) throw std::runtime_error("cannot read spec file: " + *cfg.spec_file);
    std::stringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw std::runtime_error("I/O error reading spec file: " + *cfg.spec_file);
    return WeightSequence::from_json_text(ss.str());
}

namespace {

void validate_common(const RunConfig& cfg) {
    require(cfg.p >= 1.0, "--p must be in [1, inf]");
    require(cfg.tol_linear > 0.0, "--tol must be > 0 (linear magnitude)");
    require(cfg.m_max >= 1 && cfg.n_max >= 4 && cfg.j_max >= 1, "budgets must be positive");
    require(cfg.workers >= 1 && cfg.workers <= 256, "--workers must be in [1, 256]");
    require(cfg.format == "json" || cfg.format == "csv", "--format must be json or csv");
    require(cfg.sc_radius >= 0, "--radius must be >= 0");
    require(cfg.lq_m >= 0, "--lq-m must be >= 0");
}

std::vector<CriterionReport> analyze_reports(const RunConfig& cfg, const WeightSequence& ws) {
    Budgets b = cfg.budgets();
    std::vector<CriterionReport> out;
    out.push_back(salas_hypercyclic(ws, b.m_max, b.n_max, b.tol, b.workers));
    out.push_back(salas_supercyclic(ws, b.m_max, b.n_max, b.tol, b.workers));
    out.push_back(joint_inf_jm(ws, 1, b.j_max, b.m_max, b.tol, b.workers));
    out.push_back(quasinilpotent(ws, b.n_max, b.tol, b.workers));
    out.push_back(fixed_j_ratio(ws, 1, 1, b.m_max, b.tol, b.workers));
    out.push_back(fixed_j_ratio(ws, 2, 1, b.m_max, b.tol, b.workers));
    out.push_back(direct_sum_lq(ws, cfg.p, cfg.p, cfg.lq_m, b.n_max, b.tol));
    out.push_back(sc_witness(ws, cfg.sc_radius, b.n_max, b.tol));
    if (cfg.rho_json) {
        RhoSpec rho = RhoSpec::from_json_text(*cfg.rho_json);
        out.push_back(aag_cyclic(ws, cfg.p, cfg.k, rho, b.n_max, b.tol));
    }
    return out;
}

std::string budgets_header_json(const RunConfig& cfg) {
    Budgets b = cfg.budgets();
    std::string s = "{\"tol_log\":" + json_number(b.tol);
    s += ",\"m_max\":" + std::to_string(b.m_max);
    s += ",\"n_max\":" + std::to_string(b.n_max);
    s += ",\"j_max\":" + std::to_string(b.j_max) + "}";
    return s;
}

}  // namespace

std::string render_analyze(const RunConfig& cfg, const WeightSequence& ws) {
    auto reports = analyze_reports(cfg, ws);
    if (cfg.format == "csv") return criteria_csv(ws.label(), cfg.p, reports);
    std::string s = "{\n\"command\":\"analyze\",\n\"family\":\"" + ws.label() + "\",\n";
    s += "\"p\":" + json_number(cfg.p) + ",\n";
    s += std::string("\"space\":\"") + (std::isinf(cfg.p) ? "c_0(Z)" : "l_p(Z)") + "\",\n";
    s += "\"budgets\":" + budgets_header_json(cfg) + ",\n";
    s += "\"seed\":" + std::to_string(cfg.seed) + ",\n";
    s += "\"summary\":{";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) s += ",";
        std::string key = criterion_name(reports[i].id);
        if (reports[i].id == CriterionId::kFixedJRatio)  // runs at j = 1 and j = 2
            key += "(j=" + std::to_string(reports[i].horizon[0].second) + ")";
        s += "\"" + key + "\":\"" + (reports[i].witnessed ? "witnessed" : "undetermined") + "\"";
    }
    s += "},\n\"reports\":[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        s += "  " + criterion_report_json(reports[i]);
        if (i + 1 < reports.size()) s += ",";
        s += "\n";
    }
    s += "]\n}\n";
    return s;
}

std::string render_classify(const RunConfig& cfg, const WeightSequence& ws) {
    ClassificationReport rep = classify(ws, cfg.p, cfg.budgets());
    return cfg.format == "csv" ? classification_csv(rep) : classification_json(rep);
}

std::string render_approximate(const RunConfig& cfg, const WeightSequence& ws) {
    require(cfg.k >= 1, "--k must be >= 1");
    require(cfg.n >= 1, "--n must be >= 1");
    require(cfg.eps > 0.0, "--eps must be > 0");
    TransitionResult r = approximate_transition(ws, cfg.k, cfg.n, cfg.eps,
                                                std::min<long long>(cfg.j_max, 4096),
                                                std::min<long long>(cfg.m_max, 4096), cfg.p,
                                                cfg.workers);
    if (cfg.format == "csv") {
        std::string s =
            "family,p,k,n,eps,found,j,m,perturbation_log,residual_direct_log,"
            "residual_closedform_log,bound_log\n";
        s += "\"" + ws.label() + "\"," + json_number(cfg.p) + "," + std::to_string(cfg.k) + "," +
             std::to_string(cfg.n) + "," + json_number(cfg.eps) + "," +
             (r.found ? "true" : "false") + ",";
        if (r.found)
            s += std::to_string(r.j) + "," + std::to_string(r.m) + "," +
                 json_number(r.perturbation_log) + "," + json_number(r.residual_direct_log) + "," +
                 json_number(r.residual_closedform_log) + "," + json_number(r.bound_log);
        else
            s += std::to_string(r.best_j) + "," + std::to_string(r.best_m) + ",,,," +
                 json_number(r.best_bound_log);
        s += "\n";
        return s;
    }
    return transition_json(r);
}

std::string render_families(const std::string& format) {
    struct Fam {
        const char* name;
        const char* params;
        const char* example;
    };
    static const Fam fams[] = {
        {"constant", "c (nonzero, complex allowed in JSON)", "{\"family\":\"constant\",\"c\":1.0}"},
        {"beauzamy", "a (n <= 0), b (n > 0), both nonzero",
         "{\"family\":\"beauzamy\",\"a\":2.0,\"b\":1.0}"},
        {"polydecay", "a (right), b (left), alpha > 0, n0 >= 1 (default 2)",
         "{\"family\":\"polydecay\",\"a\":1.0,\"b\":2.0,\"alpha\":0.75,\"n0\":2}"},
        {"supexp", "gamma >= 0", "{\"family\":\"supexp\",\"gamma\":1.0}"},
        {"table", "contiguous entries [[n,re,im],...], tails {\"constant\":c} or \"repeat_last\"",
         "{\"family\":\"table\",\"entries\":[[0,-1.0,0.0]],\"left_tail\":{\"constant\":1.0},"
         "\"right_tail\":{\"constant\":1.0}}"},
    };
    if (format == "csv") {
        std::string s = "family,params\n";
        for (const auto& f : fams) s += std::string(f.name) + ",\"" + f.params + "\"\n";
        return s;
    }
    std::string s = "{\n\"families\":[\n";
    for (std::size_t i = 0; i < std::size(fams); ++i) {
        std::string ex = fams[i].example;
        std::string esc;
        for (char ch : ex) {
            if (ch == '"') esc += "\\\"";
            else esc += ch;
        }
        s += std::string("  {\"name\":\"") + fams[i].name + "\",\"params\":\"" + fams[i].params +
             "\",\"example\":\"" + esc + "\"}";
        if (i + 1 < std::size(fams)) s += ",";
        s += "\n";
    }
    s += "]\n}\n";
    return s;
}

int run_command(const RunConfig& cfg) {
    std::string out;
    try {
        if (cfg.command == "families") {
            out = render_families(cfg.format);
        } else {
            validate_common(cfg);
            WeightSequence ws = weights_from_config(cfg);
            if (cfg.command == "analyze")
                out = render_analyze(cfg, ws);
            else if (cfg.command == "classify")
                out = render_classify(cfg, ws);
            else if (cfg.command == "approximate")
                out = render_approximate(cfg, ws);
            else
                throw std::invalid_argument("unknown command: " + cfg.command);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    if (cfg.out_path.empty()) {
        std::cout << out;
        if (!std::cout) return kExitIo;
        return kExitOk;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file: " << cfg.out_path << "\n";
        return kExitIo;
    }
    f << out;
    f.flush();
    if (!f) {
        std::cerr << "error: failed writing output file: " << cfg.out_path << "\n";
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace wbs
