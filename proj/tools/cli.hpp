#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "species_forge/catalog.hpp"
#include "species_forge/classify.hpp"
#include "species_forge/hopf.hpp"
#include "species_forge/order.hpp"
#include "species_forge/report.hpp"

namespace species_forge::cli {

using json = nlohmann::ordered_json;

inline const char* kValidSpecies = "E, E_C:<c>, X_C:<c> (inside S only), Perm, L, Pi, S(<spec>)";

struct SpecError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

inline int parse_colors(const std::string& spec, const std::string& digits) {
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char ch) { return std::isdigit(ch); }))
        throw SpecError("invalid color count in '" + spec + "'; valid species: " + kValidSpecies);
    int c = std::stoi(digits);
    if (c < 1 || c > 9) throw SpecError("color count in '" + spec + "' must be between 1 and 9");
    return c;
}

inline CatalogEntry parse(const std::string& raw, bool inside_s) {
    std::string spec = trim(raw);
    if (spec.size() > 3 && spec.rfind("S(", 0) == 0 && spec.back() == ')') {
        CatalogEntry inner = parse(spec.substr(2, spec.size() - 3), true);
        if (inner.singleton_supported) return with_inverse_pi(make_S(inner));
        if (!inner.species.elements(GroundSet{}).empty()) inner = positive_entry(inner);
        return make_S(inner);
    }
    if (spec == "E") return make_E();
    if (spec == "Pi") return make_Pi();
    if (spec == "L") return make_L();
    if (spec == "Perm") return make_Perm();
    if (spec.rfind("E_C:", 0) == 0) return make_E_C(parse_colors(spec, spec.substr(4)));
    if (spec.rfind("X_C:", 0) == 0) {
        if (!inside_s) throw SpecError("'" + spec + "' is empty over the empty set and only valid inside S(...)");
        return make_X_C(parse_colors(spec, spec.substr(4)));
    }
    throw SpecError("unknown species '" + spec + "'; valid species: " + kValidSpecies);
}

}  // namespace detail

/// Species spec grammar: Name, Name:<int>, S(<spec>).
inline CatalogEntry parse_species(const std::string& spec) { return detail::parse(spec, false); }

struct RunConfig {
    std::string command = "check";
    std::string species;
    int max_n = kDefaultMaxN;
    std::string suite = "full";
    std::string output = "json";
    std::vector<std::string> checks;
    bool constants = false;
    std::uint64_t seed = 0;
    bool fail_fast = false;
    bool timing = false;
};

/// One check of a suite, with its failure declared in advance or not.
struct Cell {
    std::string suite;
    std::string name;
    bool expected_fail = false;
    std::function<CheckReport()> run;
};

inline bool claim(const CatalogEntry& e, const std::string& key) {
    auto it = e.claims.find(key);
    return it != e.claims.end() && it->second;
}

/// The checks of `suite` that apply to `e`, in run order. Builds closures only.
inline std::vector<Cell> plan(const CatalogEntry& e, const std::string& suite, int max_n, std::uint64_t seed) {
    std::vector<Cell> cells;
    const bool all = suite == "full";
    const bool has_pi = e.pi.has_value();
    const bool comm = claim(e, "mu.commutative");
    const bool self_compat = claim(e, "mu.self_compatible");
    const MultSystem m = *e.mu;
    auto h = has_pi ? hopf_mu_pi(e) : hopf_mu_mu(m);
    auto h1 = hopf_mu_mu(m);
    const int small = std::min(max_n, 3);

    if (all || suite == "axioms") {
        cells.push_back({"axioms", "mu_naturality", false, [m, max_n] { return check_mu_naturality(m, max_n); }});
        if (has_pi) {
            ComultSystem c = *e.pi;
            cells.push_back({"axioms", "pi_naturality", false, [c, max_n] { return check_pi_naturality(c, max_n); }});
        }
        for (Axiom a : all_axioms()) {
            bool expect = a == Axiom::Commutative && !comm;
            if (!has_pi) expect |= (a == Axiom::Cocommutative && !comm) || (a == Axiom::HopfCompatible && !self_compat);
            cells.push_back({"axioms", "axiom:" + axiom_name(a), expect, [h, a, max_n] { return check_axiom(h, a, max_n); }});
        }
        if (has_pi || self_compat) {
            cells.push_back({"axioms", "delta_after_nabla_identity", false, [h, max_n] { return check_injsurj(h, max_n); }});
            cells.push_back({"axioms", "antipode_axiom", false, [h, small] { return check_antipode_axiom(h, small); }});
        }
    }
    if (all || suite == "ssd") {
        cells.push_back({"ssd", "self_compatible", !self_compat, [m, max_n] {
                             auto r = self_compatibility(m, max_n);
                             CheckReport out = r.local;
                             out.check = "self_compatible";
                             out.elapsed_ms = r.direct.elapsed_ms + r.local.elapsed_ms;
                             return out;
                         }});
        if (self_compat) {
            cells.push_back({"ssd", "fsd", false, [h1, max_n, seed] { return check_fsd(h1, max_n, seed); }});
            cells.push_back({"ssd", "ssd", false, [h1, max_n] { return check_ssd(h1, max_n); }});
            cells.push_back({"ssd", "primitive_basis_span", false, [m, max_n] { return check_primitive_spans(m, max_n); }});
            cells.push_back({"ssd", "f_mu", false, [m, max_n] { return check_f_mu(m, max_n); }});
            cells.push_back({"ssd", "contained", false, [h1, max_n] { return check_contained(h1, max_n); }});
        }
    }
    if ((all || suite == "lsd") && has_pi && claim(e, "pi.bijective")) {
        ComultSystem c = *e.pi;
        cells.push_back({"lsd", "f_pi", false, [c, small] { return check_f_pi(c, small); }});
        cells.push_back({"lsd", "lsd_primitives", false, [h, max_n] { return check_lsd_primitives(h, max_n); }});
    }
    if (has_pi && comm) {
        ComultSystem c = *e.pi;
        SetSpecies P = e.species;
        auto ord = order_from_systems(m, c);
        if (all || suite == "order") {
            cells.push_back({"order", "order", false, [ord, max_n] {
                                 return timed([&] {
                                     for (int n = 0; n <= max_n; ++n) ord.at(GroundSet::range(n));
                                     return make_report("order", ord.name(), max_n, std::nullopt);
                                 });
                             }});
            cells.push_back({"order", "order_transport", false, [ord, P, max_n] { return check_order_transport(ord, P, max_n); }});
            cells.push_back({"order", "order_lemma", false, [ord, m, c, max_n] { return check_order_lemma(ord, m, c, max_n); }});
            cells.push_back({"order", "lower_lattice", false, [ord, m, c, max_n] {
                                 return timed([&] {
                                     for (int n = 0; n <= max_n; ++n) {
                                         auto r = check_lower_lattice(ord, m, c, GroundSet::range(n));
                                         if (!r.report.passed()) return r.report;
                                     }
                                     return make_report("lower_lattice", ord.name(), max_n, std::nullopt);
                                 });
                             }});
            cells.push_back({"order", "order_AB", false, [ord, m, max_n] { return check_AB(ord, m, max_n); }});
            cells.push_back({"order", "reconstruct_pi", false, [m, c, max_n] { return check_reconstruction(m, c, max_n); }});
        }
        if (all || suite == "bases") {
            cells.push_back({"bases", "basis_theorem", false, [e, max_n] { return check_basis_theorem(e, max_n); }});
            cells.push_back({"bases", "duality", false, [e, max_n] {
                                 return timed([&] {
                                     return make_report("duality", e.name, max_n,
                                                        compare_structures(dual_transpose(hopf_mu_pi(e)), hopf_pi_mu(e), max_n));
                                 });
                             }});
        }
    }
    return cells;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"axioms", "ssd", "lsd", "order", "bases", "full"};
    return names;
}

// Serialization.

inline json report_json(const CheckReport& r, bool timing) {
    json j;
    j["check"] = r.check;
    j["species"] = r.species;
    j["n"] = r.n;
    j["status"] = status_name(r.status);
    if (r.witness) j["witness"] = *r.witness;
    if (r.expected) j["expected"] = true;
    if (timing) {
        std::ostringstream s;
        s << std::fixed << std::setprecision(3) << r.elapsed_ms;
        j["elapsed_ms"] = std::stod(s.str());
    } else {
        j["elapsed_ms"] = nullptr;
    }
    return j;
}

inline std::string md_escape(std::string s) {
    std::string out;
    for (char ch : s) {
        if (ch == '|') out += '\\';
        out += ch;
    }
    return out;
}

inline std::string reports_md(const std::vector<CheckReport>& rs, bool timing) {
    std::string out = "| check | species | n | status | witness |" + std::string(timing ? " elapsed_ms |" : "") + "\n";
    out += "|---|---|---|---|---|" + std::string(timing ? "---|" : "") + "\n";
    for (const auto& r : rs) {
        std::string status = status_name(r.status);
        if (r.expected) status += " (expected)";
        out += "| " + r.check + " | " + r.species + " | " + std::to_string(r.n) + " | " + status + " | " +
               md_escape(r.witness.value_or("")) + " |";
        if (timing) {
            std::ostringstream s;
            s << std::fixed << std::setprecision(3) << r.elapsed_ms;
            out += " " + s.str() + " |";
        }
        out += "\n";
    }
    return out;
}

enum Exit { kOk = 0, kUnexpectedFail = 1, kFatal = 2 };

inline int exit_code(const std::vector<CheckReport>& rs) {
    int code = kOk;
    for (const auto& r : rs) {
        if (r.status == Status::Fatal) return kFatal;
        if (r.status == Status::Fail && !r.expected) code = kUnexpectedFail;
    }
    return code;
}

/// Runs one cell, turning a fatal inconsistency into a fatal report.
inline CheckReport run_cell(const Cell& cell, const std::string& species, int max_n) {
    CheckReport r;
    try {
        r = cell.run();
    } catch (const FatalInconsistency& f) {
        r = make_report(cell.name, species, max_n, f.check() + ": " + f.witness());
        r.status = Status::Fatal;
    }
    r.check = cell.name;
    r.species = species;
    if (r.status == Status::Fail) r.expected = cell.expected_fail;
    return r;
}

// Commands.

inline int cmd_check(const RunConfig& cfg, const CatalogEntry& e, std::ostream& out, std::ostream& err) {
    if (cfg.output == "dot") {
        err << "error: check has no dot output\n";
        return kFatal;
    }
    auto cells = plan(e, cfg.suite, cfg.max_n, cfg.seed);
    if (!cfg.checks.empty()) {
        std::vector<Cell> chosen;
        for (const auto& name : cfg.checks) {
            auto it = std::find_if(cells.begin(), cells.end(), [&](const Cell& c) { return c.name == name; });
            if (it == cells.end()) {
                err << "error: unknown check '" << name << "' for " << e.name << " in suite " << cfg.suite << "; available:";
                for (const auto& c : cells) err << " " << c.name;
                err << "\n";
                return kFatal;
            }
            chosen.push_back(*it);
        }
        cells = std::move(chosen);
    }
    std::vector<CheckReport> reports;
    for (const auto& cell : cells) {
        reports.push_back(run_cell(cell, e.name, cfg.max_n));
        const auto& r = reports.back();
        if (cfg.fail_fast && (r.status == Status::Fatal || (r.status == Status::Fail && !r.expected))) break;
    }
    if (cfg.output == "md") {
        out << "# check " << e.name << " (suite " << cfg.suite << ", max_n " << cfg.max_n << ")\n\n" << reports_md(reports, cfg.timing);
    } else {
        json j;
        j["command"] = "check";
        j["species"] = e.name;
        j["suite"] = cfg.suite;
        j["max_n"] = cfg.max_n;
        j["seed"] = cfg.seed;
        j["reports"] = json::array();
        for (const auto& r : reports) j["reports"].push_back(report_json(r, cfg.timing));
        std::size_t pass = 0, expected = 0, fail = 0, fatal = 0;
        for (const auto& r : reports) {
            if (r.status == Status::Pass) ++pass;
            else if (r.status == Status::Fatal) ++fatal;
            else if (r.expected) ++expected;
            else ++fail;
        }
        j["summary"] = {{"pass", pass}, {"expected_fail", expected}, {"fail", fail}, {"fatal", fatal}};
        out << j.dump(2) << "\n";
    }
    return exit_code(reports);
}

inline json constants_json(const LinearizedHopf& h, int max_n) {
    json all = json::array();
    auto table = [](const ConstantTable& t) {
        json a = json::array();
        for (const auto& [k, c] : t)
            a.push_back({{"x", std::get<0>(k).str()}, {"y", std::get<1>(k).str()}, {"z", std::get<2>(k).str()}, {"c", to_string(c)}});
        return a;
    };
    for (int n = 0; n <= max_n; ++n)
        for (const auto& d : decompositions(GroundSet::range(n), 2, false)) {
            auto sc = structure_constants(h, d[0], d[1]);
            all.push_back({{"S", d[0].str()}, {"T", d[1].str()}, {"product", table(sc.product)}, {"coproduct", table(sc.coproduct)}});
        }
    return all;
}

inline int cmd_table(const RunConfig& cfg, const CatalogEntry& e, std::ostream& out) {
    std::vector<std::size_t> dims;
    for (int n = 0; n <= cfg.max_n; ++n) dims.push_back(e.species.elements(GroundSet::range(n)).size());
    auto h = e.pi ? hopf_mu_pi(e) : hopf_mu_mu(*e.mu);
    if (cfg.output == "md") {
        out << "| n | dim |\n|---|---|\n";
        for (std::size_t n = 0; n < dims.size(); ++n) out << "| " << n << " | " << dims[n] << " |\n";
        if (cfg.constants) {
            out << "\n## structure constants of " << h.label() << "\n";
            for (const auto& block : constants_json(h, cfg.max_n)) {
                out << "\n### S=" << block["S"].get<std::string>() << " T=" << block["T"].get<std::string>() << "\n\n";
                out << "| table | x | y | z | c |\n|---|---|---|---|---|\n";
                for (const char* t : {"product", "coproduct"})
                    for (const auto& row : block[t])
                        out << "| " << t << " | " << md_escape(row["x"].get<std::string>()) << " | "
                            << md_escape(row["y"].get<std::string>()) << " | " << md_escape(row["z"].get<std::string>())
                            << " | " << row["c"].get<std::string>() << " |\n";
            }
        }
        return kOk;
    }
    json j;
    j["command"] = "table";
    j["species"] = e.name;
    j["max_n"] = cfg.max_n;
    j["dims"] = dims;
    if (cfg.constants) {
        j["variant"] = h.variant;
        j["constants"] = constants_json(h, cfg.max_n);
    }
    out << j.dump(2) << "\n";
    return kOk;
}

inline int cmd_hasse(const RunConfig& cfg, const CatalogEntry& e, std::ostream& out, std::ostream& err) {
    if (!e.pi) {
        err << "error: " << e.name << " has no comultiplicative system, so the order is undefined\n";
        return kFatal;
    }
    try {
        auto slice = compute_order(*e.mu, *e.pi, GroundSet::range(cfg.max_n));
        out << hasse_dot(slice, e.name);
    } catch (const std::invalid_argument& x) {
        err << "error: " << x.what() << "\n";
        return kFatal;
    }
    return kOk;
}

/// Emits `body` as JSON or as a two-column markdown table, plus the report.
inline int emit_listing(const RunConfig& cfg, const std::string& command, const CatalogEntry& e,
                        const std::vector<std::pair<std::string, std::string>>& rows, const std::string& left,
                        const std::string& right, const CheckReport& report, std::ostream& out) {
    if (cfg.output == "md") {
        out << "# " << command << " " << e.name << "\n\n| " << left << " | " << right << " |\n|---|---|\n";
        for (const auto& [a, b] : rows) out << "| " << md_escape(a) << " | " << md_escape(b) << " |\n";
        out << "\n" << reports_md({report}, cfg.timing);
    } else {
        json j;
        j["command"] = command;
        j["species"] = e.name;
        j["max_n"] = cfg.max_n;
        j["rows"] = json::array();
        for (const auto& [a, b] : rows) j["rows"].push_back({{left, a}, {right, b}});
        j["report"] = report_json(report, cfg.timing);
        out << j.dump(2) << "\n";
    }
    return exit_code({report});
}

inline int cmd_antipode(const RunConfig& cfg, const CatalogEntry& e, std::ostream& out) {
    auto h = e.pi ? hopf_mu_pi(e) : hopf_mu_mu(*e.mu);
    std::vector<std::pair<std::string, std::string>> rows;
    for (int n = 0; n <= cfg.max_n; ++n)
        for (const auto& x : h.basis.elements(GroundSet::range(n))) rows.emplace_back(x.str(), takeuchi_antipode(h, Vec(x)).str());
    auto r = run_cell({"antipode", "antipode_axiom", false, [h, &cfg] { return check_antipode_axiom(h, std::min(cfg.max_n, 3)); }},
                      e.name, cfg.max_n);
    return emit_listing(cfg, "antipode", e, rows, "x", "S(x)", r, out);
}

inline int cmd_primitives(const RunConfig& cfg, const CatalogEntry& e, std::ostream& out) {
    auto h = hopf_mu_mu(*e.mu);
    std::vector<std::pair<std::string, std::string>> rows;
    auto Q = primitive_basis(*e.mu);
    for (int n = 1; n <= cfg.max_n; ++n) {
        GroundSet I = GroundSet::range(n);
        std::string basis;
        for (const auto& q : Q.elements(I)) basis += (basis.empty() ? "" : "; ") + q.str();
        rows.emplace_back(std::to_string(n), std::to_string(primitives(h, I).basis.size()) + " [" + basis + "]");
    }
    auto m = *e.mu;
    auto r = run_cell({"primitives", "primitive_basis_span", false, [m, &cfg] { return check_primitive_spans(m, cfg.max_n); }},
                      e.name, cfg.max_n);
    return emit_listing(cfg, "primitives", e, rows, "n", "dim [basis]", r, out);
}

inline int cmd_fmu(const RunConfig& cfg, const CatalogEntry& e, std::ostream& out) {
    FMu f(*e.mu);
    std::vector<std::pair<std::string, std::string>> rows;
    auto r = run_cell({"fmu", "f_mu", false, [&] { return check_f_mu(*e.mu, cfg.max_n); }}, e.name, cfg.max_n);
    if (r.passed())
        for (int n = 0; n <= cfg.max_n; ++n)
            for (const auto& X : f.source().species.elements(GroundSet::range(n))) rows.emplace_back(X.str(), f.apply(X).str());
    return emit_listing(cfg, "fmu", e, rows, "X", "f_mu(X)", r, out);
}

inline int cmd_fpi(const RunConfig& cfg, const CatalogEntry& e, std::ostream& out, std::ostream& err) {
    if (!e.pi) {
        err << "error: " << e.name << " has no comultiplicative system\n";
        return kFatal;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    auto r = run_cell({"fpi", "f_pi", false, [&] { return check_f_pi(*e.pi, cfg.max_n); }}, e.name, cfg.max_n);
    if (r.passed()) {
        FPi f(*e.pi);
        for (int n = 0; n <= cfg.max_n; ++n)
            for (const auto& x : f.source().species.elements(GroundSet::range(n))) rows.emplace_back(x.str(), f.apply(x).str());
    }
    return emit_listing(cfg, "fpi", e, rows, "h", "f_pi(h)", r, out);
}

inline int cmd_reconstruct(const RunConfig& cfg, const CatalogEntry& e, std::ostream& out, std::ostream& err) {
    if (!e.pi || !claim(e, "mu.commutative")) {
        err << "error: the order of " << e.name << " is undefined\n";
        return kFatal;
    }
    auto back = reconstruct_pi(order_from_systems(*e.mu, *e.pi), *e.mu);
    std::vector<std::pair<std::string, std::string>> rows;
    auto r = run_cell({"reconstruct-pi", "reconstruct_pi", false, [&] { return check_reconstruction(*e.mu, *e.pi, cfg.max_n); }},
                      e.name, cfg.max_n);
    if (r.passed())
        for (int n = 0; n <= cfg.max_n; ++n)
            for (const auto& d : decompositions(GroundSet::range(n), 2, false))
                for (const auto& z : e.species.elements(GroundSet::range(n))) {
                    auto [a, b] = back.pi(d[0], d[1], z);
                    rows.emplace_back("pi_{" + d[0].str() + "," + d[1].str() + "}(" + z.str() + ")", "(" + a.str() + "," + b.str() + ")");
                }
    return emit_listing(cfg, "reconstruct-pi", e, rows, "input", "value", r, out);
}

/// Entry point shared by the executable and the tests. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hopf monoids in set species: certification suites and constructions", "species-forge"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--species", cfg.species, std::string("species spec: ") + kValidSpecies)->required();
        sub->add_option("--max-n", cfg.max_n, "largest ground set size")->check(CLI::Range(0, 9));
        sub->add_option("--output", cfg.output, "output format")->check(CLI::IsMember({"json", "md", "dot"}));
        sub->add_option("--seed", cfg.seed, "seed for randomized controls");
        sub->add_flag("--timing", cfg.timing, "record elapsed_ms");
    };
    auto* check = app.add_subcommand("check", "run a certification suite");
    common(check);
    check->add_option("--suite", cfg.suite, "suite to run")->check(CLI::IsMember(suite_names()));
    check->add_option("--check", cfg.checks, "restrict to the named checks");
    check->add_flag("--fail-fast", cfg.fail_fast, "stop at the first unexpected failure");
    auto* table = app.add_subcommand("table", "dimensions and structure constants");
    common(table);
    table->add_flag("--constants", cfg.constants, "dump structure-constant tables");
    for (const char* name : {"hasse", "antipode", "primitives", "fmu", "fpi", "reconstruct-pi"}) common(app.add_subcommand(name));
    app.get_subcommand("hasse")->description("Hasse diagram of the order as DOT");
    app.get_subcommand("antipode")->description("Takeuchi antipode on each basis element");
    app.get_subcommand("primitives")->description("primitive dimensions and the primitive basis");
    app.get_subcommand("fmu")->description("the isomorphism from the free commutative monoid");
    app.get_subcommand("fpi")->description("the isomorphism from colored sets");
    app.get_subcommand("reconstruct-pi")->description("comultiplicative system recovered from the order");

    std::vector<std::string> argv_store{"species-forge"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kFatal;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    CatalogEntry e;
    try {
        require_within_ceiling(cfg.max_n);
        e = parse_species(cfg.species);
    } catch (const std::exception& x) {
        err << "error: " << x.what() << "\n";
        return kFatal;
    }
    if (cfg.output == "dot" && cfg.command != "hasse") {
        err << "error: dot output is only available for hasse\n";
        return kFatal;
    }
    try {
        if (cfg.command == "check") return cmd_check(cfg, e, out, err);
        if (cfg.command == "table") return cmd_table(cfg, e, out);
        if (cfg.command == "hasse") return cmd_hasse(cfg, e, out, err);
        if (cfg.command == "antipode") return cmd_antipode(cfg, e, out);
        if (cfg.command == "primitives") return cmd_primitives(cfg, e, out);
        if (cfg.command == "fmu") return cmd_fmu(cfg, e, out);
        if (cfg.command == "fpi") return cmd_fpi(cfg, e, out, err);
        return cmd_reconstruct(cfg, e, out, err);
    } catch (const FatalInconsistency& f) {
        err << "fatal: " << f.what() << "\n";
        return kFatal;
    } catch (const std::exception& x) {
        err << "error: " << x.what() << "\n";
        return kFatal;
    }
}

}  // namespace species_forge::cli
