// Command-line front end: model inspection, single discriminations, IS/GIS
// audits, figure-data sweeps, and the self-check ledger.
//
// Exit codes: 0 success / principle satisfied, 1 principle violated or
// self-check failure, 2 usage or input error.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gptaudit/audit.hpp"
#include "gptaudit/discrimination.hpp"
#include "gptaudit/geometry.hpp"
#include "gptaudit/models.hpp"
#include "gptaudit/selfcheck.hpp"
#include "gptaudit/serialization.hpp"

namespace {

using namespace gptaudit;

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;

ModelSpec build_model(const std::string& selector) {
    const auto colon = selector.find(':');
    const std::string head = selector.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : selector.substr(colon + 1);
    auto parse_int = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw std::invalid_argument("invalid numeric argument in selector '" + selector + "'");
        }
    };
    if (head == "polygon") return polygon_model(parse_int(arg));
    if (head == "classical") return classical_model(parse_int(arg));
    if (head == "squit") return squit_model();
    if (head == "qubit") return qubit_model();
    if (head == "spekkens") return spekkens_model();
    if (head == "file") return load_model_file(arg);
    throw std::invalid_argument("unknown model selector '" + selector +
                                "' (expected polygon:n | classical:d | squit | qubit | spekkens "
                                "| file:<path>)");
}

RealVec parse_coords(const std::string& token) {
    RealVec v;
    std::stringstream ss(token);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(part, &used));
            if (used != part.size()) throw std::invalid_argument("");
        } catch (...) {
            throw std::invalid_argument("invalid coordinate '" + part + "'");
        }
    }
    return v;
}

StateVec parse_state(const ModelSpec& model, const std::string& token) {
    if (model.kind == ModelKind::measurement_list) {
        const int idx = spekkens_state_index(token);
        return model.pure_states[idx];
    }
    if (token.find(',') != std::string::npos) {
        RealVec coords = parse_coords(token);
        if (model.kind == ModelKind::qubit) {
            if (coords.size() != 3) {
                throw std::invalid_argument("qubit states take 3 Bloch coordinates");
            }
            return qubit_state(coords[0], coords[1], coords[2]);
        }
        if (static_cast<int>(coords.size()) != model.dim) {
            throw std::invalid_argument("state needs " + std::to_string(model.dim) +
                                        " coordinates");
        }
        return StateVec{std::move(coords), std::nullopt};
    }
    try {
        std::size_t used = 0;
        const int idx = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument("");
        if (idx < 0 || idx >= static_cast<int>(model.pure_states.size())) {
            throw std::invalid_argument("state label " + token + " out of range (model has " +
                                        std::to_string(model.pure_states.size()) +
                                        " pure states)");
        }
        return model.pure_states[idx];
    } catch (const std::invalid_argument&) {
        throw;
    } catch (...) {
        throw std::invalid_argument("cannot parse state '" + token + "'");
    }
}

std::pair<int, int> parse_range(const std::string& spec) {
    const auto dots = spec.find("..");
    if (dots == std::string::npos) {
        throw std::invalid_argument("range must look like a..b, got '" + spec + "'");
    }
    try {
        const int a = std::stoi(spec.substr(0, dots));
        const int b = std::stoi(spec.substr(dots + 2));
        return {a, b};
    } catch (...) {
        throw std::invalid_argument("range must look like a..b, got '" + spec + "'");
    }
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> grid;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            grid.push_back(std::stod(part));
        } catch (...) {
            throw std::invalid_argument("invalid grid value '" + part + "'");
        }
    }
    if (grid.empty()) throw std::invalid_argument("empty p grid");
    return grid;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    out << text;
}

std::string render_mesd_table(const ModelSpec& model, const std::string& a, const std::string& b,
                              const DiscriminationResult& r) {
    std::ostringstream os;
    os << "model: " << model.name << "\n";
    os << "states: " << a << " vs " << b << "\n";
    os << "pE        = " << format_sig(r.pE) << "\n";
    os << "p12       = " << format_sig(r.p12) << "\n";
    os << "p21       = " << format_sig(r.p21) << "\n";
    os << "asymmetry = " << format_sig(r.asymmetry) << "\n";
    os << "minimizers (" << r.minimizers.size() << "):\n";
    for (const auto& m : r.minimizers) {
        os << "  [" << to_string(m.kind) << "] p12=" << format_sig(m.p12)
           << " p21=" << format_sig(m.p21) << " effect=(";
        for (std::size_t i = 0; i < m.measurement.effect.coords.size(); ++i) {
            if (i) os << ",";
            os << format_sig(m.measurement.effect.coords[i], 6);
        }
        os << ")\n";
    }
    return os.str();
}

std::string render_is_table(const ISReport& rep) {
    std::ostringstream os;
    os << "IS audit: " << rep.model << "  policy=" << to_string(rep.policy)
       << "  tolerance=" << format_sig(rep.tolerance, 6) << "\n";
    os << std::left << std::setw(24) << "pair" << std::setw(18) << "pE" << std::setw(18)
       << "pair_asymmetry" << "verdict\n";
    for (const auto& p : rep.pairs) {
        os << std::left << std::setw(24) << (p.state_a + "," + p.state_b) << std::setw(18)
           << format_sig(p.result.pE) << std::setw(18) << format_sig(p.pair_asymmetry)
           << (p.is_satisfied ? "satisfied" : "violated") << "\n";
    }
    os << "model verdict: " << (rep.satisfied ? "SATISFIED" : "VIOLATED")
       << "  max pair asymmetry: " << format_sig(rep.max_asymmetry) << "\n";
    return os.str();
}

std::string render_gis_table(const GISReport& rep) {
    std::ostringstream os;
    os << "GIS audit: " << rep.model << "\n";
    os << std::left << std::setw(8) << "p" << std::setw(44) << "pair" << std::setw(18)
       << "min_error" << std::setw(18) << "symmetric_error" << "verdict\n";
    for (const auto& r : rep.rows) {
        os << std::left << std::setw(8) << format_sig(r.p, 4) << std::setw(44) << r.description
           << std::setw(18) << format_sig(r.min_error) << std::setw(18)
           << format_sig(r.symmetric_error) << (r.satisfied ? "satisfied" : "violated") << "\n";
    }
    os << "model verdict: " << (rep.satisfied ? "SATISFIED" : "VIOLATED")
       << "  max gap: " << format_sig(rep.max_gap)
       << "  max asymmetry: " << format_sig(rep.max_asymmetry) << "\n";
    return os.str();
}

std::vector<std::vector<std::string>> split_csv(const std::string& csv) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::stringstream fs(line);
        std::string field;
        while (std::getline(fs, field, ',')) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

std::string csv_to_json(const std::string& csv) {
    const auto rows = split_csv(csv);
    std::ostringstream os;
    os << "[\n";
    for (std::size_t r = 1; r < rows.size(); ++r) {
        os << "  {";
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            if (c) os << ", ";
            os << '"' << rows[0][c] << "\": " << rows[r][c];
        }
        os << "}" << (r + 1 < rows.size() ? "," : "") << "\n";
    }
    os << "]\n";
    return os.str();
}

std::string csv_to_table(const std::string& csv) {
    const auto rows = split_csv(csv);
    std::ostringstream os;
    for (const auto& row : rows) {
        for (const auto& field : row) os << std::left << std::setw(18) << field;
        os << "\n";
    }
    return os.str();
}

std::string render_selfcheck(const SelfcheckReport& rep) {
    std::ostringstream os;
    int idx = 0;
    int passed = 0;
    for (const auto& c : rep.checks) {
        ++idx;
        if (c.pass) ++passed;
        os << "[" << idx << "/" << rep.checks.size() << "] " << (c.pass ? "PASS" : "FAIL") << "  "
           << c.name << "\n        " << c.detail << "\n";
    }
    for (const auto& n : rep.notes) {
        os << "note: " << n << "\n";
    }
    os << "selfcheck: " << passed << "/" << rep.checks.size() << " criteria passed\n";
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GPT state-space toolkit: minimum-error discrimination and "
                 "information-symmetry audits"};
    app.require_subcommand(1);

    std::string selector;
    std::string state_a, state_b;
    std::string format = "table";
    std::string sweep_format = "csv";
    std::string out_path;
    std::string policy_name = "any";
    std::string m_range;
    std::string p_grid_spec = "0.6,0.75,0.9";
    double tolerance = 1e-9;

    auto* model_cmd = app.add_subcommand("model", "model inspection");
    auto* model_show = model_cmd->add_subcommand("show", "emit the model JSON");
    model_show->add_option("selector", selector)->required();
    model_show->add_option("--out", out_path);

    auto* mesd_cmd = app.add_subcommand("mesd", "minimum-error discrimination of two states");
    mesd_cmd->add_option("selector", selector)->required();
    mesd_cmd->add_option("state_a", state_a)->required();
    mesd_cmd->add_option("state_b", state_b)->required();
    mesd_cmd->add_option("--tolerance", tolerance)->check(CLI::PositiveNumber);
    mesd_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
    mesd_cmd->add_option("--out", out_path);

    auto* audit_cmd = app.add_subcommand("audit", "principle audits");
    audit_cmd->require_subcommand(1);
    auto* audit_is_cmd = audit_cmd->add_subcommand("is", "information symmetry over pure pairs");
    audit_is_cmd->add_option("selector", selector)->required();
    audit_is_cmd->add_option("--tolerance", tolerance)->check(CLI::PositiveNumber);
    audit_is_cmd->add_option("--policy", policy_name)->check(CLI::IsMember({"any", "all"}));
    audit_is_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
    audit_is_cmd->add_option("--out", out_path);
    auto* audit_gis_cmd =
        audit_cmd->add_subcommand("gis", "generalized IS over minimal-ignorance mixtures");
    audit_gis_cmd->add_option("selector", selector)->required();
    audit_gis_cmd->add_option("--p-grid", p_grid_spec);
    audit_gis_cmd->add_option("--tolerance", tolerance)->check(CLI::PositiveNumber);
    audit_gis_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
    audit_gis_cmd->add_option("--out", out_path);

    auto* sweep_cmd = app.add_subcommand("sweep", "figure-data tables");
    sweep_cmd->add_option("family", selector)
        ->required()
        ->check(CLI::IsMember({"odd", "even1", "even2"}));
    sweep_cmd->add_option("--m", m_range)->required();
    sweep_cmd->add_option("--format", sweep_format)
        ->check(CLI::IsMember({"csv", "table", "json"}));
    sweep_cmd->add_option("--out", out_path);

    auto* selfcheck_cmd = app.add_subcommand("selfcheck", "run the full reproduction ledger");
    selfcheck_cmd->add_option("--tolerance", tolerance)->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (model_show->parsed()) {
            emit(model_to_json(build_model(selector)), out_path);
            return kExitOk;
        }

        if (mesd_cmd->parsed()) {
            const ModelSpec model = build_model(selector);
            const StateVec wa = parse_state(model, state_a);
            const StateVec wb = parse_state(model, state_b);
            DiscriminationResult r;
            switch (model.kind) {
                case ModelKind::polytope:
                    r = mesd_polytope(model, wa, wb);
                    break;
                case ModelKind::qubit:
                    r = mesd_qubit(bloch_of(wa), bloch_of(wb));
                    break;
                case ModelKind::measurement_list:
                    r = mesd_spekkens(model, spekkens_state_index(state_a),
                                      spekkens_state_index(state_b));
                    break;
            }
            emit(format == "json" ? result_to_json(r)
                                  : render_mesd_table(model, state_a, state_b, r),
                 out_path);
            return kExitOk;
        }

        if (audit_is_cmd->parsed()) {
            const ModelSpec model = build_model(selector);
            const auto rep = audit_is(model, tolerance, policy_from_string(policy_name));
            emit(format == "json" ? is_report_to_json(rep) : render_is_table(rep), out_path);
            return rep.satisfied ? kExitOk : kExitViolated;
        }

        if (audit_gis_cmd->parsed()) {
            const ModelSpec model = build_model(selector);
            const auto rep = audit_gis(model, parse_grid(p_grid_spec), tolerance);
            emit(format == "json" ? gis_report_to_json(rep) : render_gis_table(rep), out_path);
            return rep.satisfied ? kExitOk : kExitViolated;
        }

        if (sweep_cmd->parsed()) {
            const auto [m_min, m_max] = parse_range(m_range);
            std::string csv;
            if (selector == "odd") {
                csv = sweep_odd_csv(sweep_odd(m_min, m_max));
            } else if (selector == "even1") {
                csv = sweep_even1_csv(sweep_even_case1(m_min, m_max));
            } else {
                csv = sweep_even2_csv(sweep_even_case2(m_min, m_max));
            }
            emit(sweep_format == "json"    ? csv_to_json(csv)
                 : sweep_format == "table" ? csv_to_table(csv)
                                           : csv,
                 out_path);
            return kExitOk;
        }

        if (selfcheck_cmd->parsed()) {
            const auto rep = run_selfcheck(tolerance);
            std::cout << render_selfcheck(rep);
            return rep.all_pass ? kExitOk : kExitViolated;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
