#pragma once

#include <chrono>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lieid/lieid.hpp"

namespace lieid::cli {

using json = nlohmann::json;

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kInputError = 2,
    kCapExceeded = 3,
};

struct Outcome {
    int exit_code = kOk;
    json report;
    std::string text;
};

/// "1,1,1,1" -> {1:1,2:1,3:1,4:1}; zero entries leave a variable out.
inline MultiDeg parse_multidegree(const std::string& s) {
    std::vector<std::uint32_t> mults;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw std::invalid_argument("empty entry in multidegree '" + s + "'");
        item = item.substr(b, e - b + 1);
        if (item.find_first_not_of("0123456789") != std::string::npos || item.size() > 4)
            throw std::invalid_argument("bad multiplicity '" + item + "' in multidegree '" + s + "'");
        mults.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    }
    MultiDeg d = MultiDeg::positional(mults);
    if (d.empty()) throw std::invalid_argument("multidegree '" + s + "' is empty");
    return d;
}

inline json multidegree_json(const MultiDeg& d) {
    json j = json::object();
    for (const auto& [i, m] : d.entries()) j[std::to_string(i)] = m;
    return j;
}

inline gl2::Algebra parse_algebra(const std::string& s) {
    if (s == "gl2") return gl2::Algebra::gl2;
    if (s == "sl2") return gl2::Algebra::sl2;
    throw std::invalid_argument("unknown algebra '" + s + "' (expected gl2 or sl2)");
}

namespace detail {

template <class Body>
Outcome guarded(const std::string& command, Body body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const DegreeCapExceeded& e) {
        out = {kCapExceeded, json{{"error", e.what()}}, std::string("error: ") + e.what() + "\n"};
    } catch (const expr::ParseError& e) {
        out = {kInputError, json{{"error", e.what()}, {"position", e.position()}},
               std::string("error: ") + e.what() + "\n"};
    } catch (const std::exception& e) {
        out = {kInputError, json{{"error", e.what()}}, std::string("error: ") + e.what() + "\n"};
    }
    out.report["command"] = command;
    out.report["exit_code"] = out.exit_code;
    out.report["elapsed_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

inline json basis_json(const MultiDeg& d, const gf2::GF2Subspace& s) {
    json b = json::array();
    for (const auto& v : s.basis()) b.push_back(expr::print(tideal::to_lie(d, v)));
    return b;
}

} // namespace detail

inline Outcome cmd_verify(const std::string& text, const std::string& algebra_name) {
    return detail::guarded("verify", [&] {
        const auto algebra = parse_algebra(algebra_name);
        const LiePoly p = expr::parse(text);
        check_degree(p.max_degree(), "verify");
        Outcome out;
        json comps = json::array();
        bool all = true;
        std::ostringstream t;
        for (const auto& [d, part] : p.components()) {
            const bool ok = gl2::is_identity(part, algebra);
            all = all && ok;
            comps.push_back({{"multidegree", multidegree_json(d)}, {"expression", expr::print(part)}, {"identity", ok}});
            t << d.to_string() << "  identity: " << (ok ? "true" : "false") << "\n";
        }
        t << "identity: " << (all ? "true" : "false") << " (" << gl2::to_string(algebra) << ")\n";
        out.report = {{"expression", expr::print(p)},
                      {"algebra", gl2::to_string(algebra)},
                      {"components", comps},
                      {"identity", all},
                      {"passed", all}};
        out.text = t.str();
        out.exit_code = all ? kOk : kCheckFailed;
        return out;
    });
}

inline Outcome cmd_identities(const std::string& mdeg, const std::string& algebra_name, bool basis) {
    return detail::guarded("identities", [&] {
        const auto algebra = parse_algebra(algebra_name);
        const MultiDeg d = parse_multidegree(mdeg);
        const auto ids = tideal::identities(d, algebra);
        const auto comp = tideal::component(d);
        Outcome out;
        out.report = {{"multidegree", multidegree_json(d)},
                      {"algebra", gl2::to_string(algebra)},
                      {"component_dimension", comp->space.dim()},
                      {"dimension", ids.dim()},
                      {"passed", true}};
        std::ostringstream t;
        t << "multidegree " << d.to_string() << " (" << gl2::to_string(algebra) << ")\n"
          << "component dimension: " << comp->space.dim() << "\n"
          << "identity dimension: " << ids.dim() << "\n";
        if (basis) {
            out.report["basis"] = detail::basis_json(d, ids);
            for (const auto& e : out.report["basis"]) t << "  " << e.get<std::string>() << "\n";
        }
        out.text = t.str();
        return out;
    });
}

inline Outcome cmd_consequences(const std::string& gens_file, const std::string& mdeg, bool basis) {
    return detail::guarded("consequences", [&] {
        const MultiDeg d = parse_multidegree(mdeg);
        const auto gens = tideal::GeneratorSet::load(gens_file);
        check_degree(d.total(), "consequences");
        const auto span = tideal::consequences(gens, d);
        const auto ids = tideal::identities(d);
        const bool inside = gf2::subset(span, ids);
        Outcome out;
        json names = json::array();
        for (const auto& g : gens.generators()) names.push_back(expr::print(g.poly));
        out.report = {{"multidegree", multidegree_json(d)},
                      {"generators", names},
                      {"polarize", gens.polarize()},
                      {"dimension", span.dim()},
                      {"identities_dimension", ids.dim()},
                      {"contained_in_identities", inside},
                      {"equals_identities", inside && span.dim() == ids.dim()},
                      {"passed", true}};
        std::ostringstream t;
        t << "multidegree " << d.to_string() << ", " << gens.size() << " generators, polarize "
          << (gens.polarize() ? "on" : "off") << "\n"
          << "consequence dimension: " << span.dim() << "\n"
          << "identity dimension: " << ids.dim() << "\n"
          << "contained in identities: " << (inside ? "true" : "false") << "\n";
        if (basis) {
            out.report["basis"] = detail::basis_json(d, span);
            for (const auto& e : out.report["basis"]) t << "  " << e.get<std::string>() << "\n";
        }
        out.text = t.str();
        return out;
    });
}

inline Outcome cmd_check_theorem(unsigned max_total_degree) {
    return detail::guarded("check-theorem", [&] {
        check_degree(max_total_degree, "check-theorem");
        Outcome out;
        json rows = json::array();
        bool all = true;
        std::ostringstream t;
        for (unsigned total = 1; total <= max_total_degree; ++total)
            for (const auto& d : tideal::multidegrees_up_to_renaming(total)) {
                const auto r = tideal::check_generation(d, total);
                all = all && r.equal;
                rows.push_back({{"multidegree", multidegree_json(d)},
                                {"consequences_dimension", r.consequences_dim},
                                {"identities_dimension", r.identities_dim},
                                {"sound", r.sound},
                                {"equal", r.equal}});
                t << d.to_string() << "  consequences " << r.consequences_dim << "  identities " << r.identities_dim
                  << "  " << (r.equal ? "equal" : "DIFFERENT") << "\n";
            }
        t << (all ? "all components equal" : "some components differ") << "\n";
        out.report = {{"max_total_degree", max_total_degree}, {"components", rows}, {"passed", all}};
        out.text = t.str();
        out.exit_code = all ? kOk : kCheckFailed;
        return out;
    });
}

inline Outcome cmd_lemmas(std::vector<std::string> selected, bool extended, unsigned max_theorem_degree) {
    return detail::guarded("lemmas", [&] {
        if (selected.empty()) selected = lemmas::names();
        for (const auto& s : selected) {
            const auto known = lemmas::names();
            if (std::find(known.begin(), known.end(), s) == known.end())
                throw std::invalid_argument("unknown lemma '" + s + "'");
        }
        check_degree(max_theorem_degree, "lemmas");
        lemmas::Options opt;
        opt.extended = extended;
        opt.max_theorem_degree = max_theorem_degree;
        Outcome out;
        json checks = json::array();
        bool all = true;
        std::ostringstream t;
        for (const auto& s : selected)
            for (const auto& r : lemmas::run(s, opt)) {
                all = all && r.passed;
                checks.push_back({{"lemma", r.lemma}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
                t << (r.passed ? "PASS " : "FAIL ") << r.lemma << ": " << r.name << " [" << r.detail << "]\n";
            }
        t << (all ? "all checks passed" : "some checks failed") << "\n";
        out.report = {{"lemmas", selected}, {"checks", checks}, {"passed", all}};
        out.text = t.str();
        out.exit_code = all ? kOk : kCheckFailed;
        return out;
    });
}

inline Outcome cmd_normalize(const std::string& text) {
    return detail::guarded("normalize", [&] {
        const LiePoly p = expr::parse(text);
        Outcome out;
        const std::string printed = expr::print(p);
        out.report = {{"input", text}, {"normalized", printed}, {"passed", true}};
        out.text = printed + "\n";
        return out;
    });
}

/// Parses the command line, runs one subcommand, writes its report, and
/// returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& os, std::ostream& err) {
    CLI::App app{"Identities of gl2 in characteristic two: free Lie algebra and T-ideal calculus"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Write the report as JSON");

    std::string expression, algebra = "gl2", mdeg, gens_file;
    bool basis = false, extended = false;
    std::optional<unsigned> max_degree;
    std::vector<std::string> lemma_names;

    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", as_json, "Write the report as JSON");
        sub->add_option("--max-total-degree", max_degree, "Total-degree bound");
    };

    auto* verify = app.add_subcommand("verify", "Decide whether an expression is an identity");
    verify->add_option("expression", expression, "Lie expression, e.g. \"(x1 x2)(x3 x4) x5\"")->required();
    verify->add_option("--algebra", algebra, "gl2 or sl2");
    add_common(verify);

    auto* idents = app.add_subcommand("identities", "Identity space of one multidegree");
    idents->add_option("--multidegree", mdeg, "Comma-separated multiplicities, e.g. 1,1,1,1")->required();
    idents->add_option("--algebra", algebra, "gl2 or sl2");
    idents->add_flag("--basis", basis, "Print a basis");
    add_common(idents);

    auto* conseq = app.add_subcommand("consequences", "T-ideal component generated by a generator file");
    conseq->add_option("--gens", gens_file, "Generator file")->required();
    conseq->add_option("--multidegree", mdeg, "Comma-separated multiplicities")->required();
    conseq->add_flag("--basis", basis, "Print a basis");
    add_common(conseq);

    auto* theorem = app.add_subcommand("check-theorem", "Compare generator consequences with identities");
    add_common(theorem);

    auto* lemma = app.add_subcommand("lemmas", "Run the lemma reproduction checks");
    lemma->add_option("--run", lemma_names, "Lemma name (repeatable); default all")->delimiter(',');
    lemma->add_flag("--extended", extended, "Include the slower cases");
    add_common(lemma);

    auto* normalize = app.add_subcommand("normalize", "Parse and print in canonical form");
    normalize->add_option("expression", expression, "Lie expression")->required();
    add_common(normalize);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, x;
        const int code = app.exit(e, o, x);
        os << o.str();
        err << x.str();
        return code == 0 ? kOk : kInputError;
    }

    Outcome out;
    const bool is_theorem = theorem->parsed();
    if (max_degree && !is_theorem) {
        try {
            set_degree_cap(*max_degree);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kInputError;
        }
    }
    if (verify->parsed())
        out = cmd_verify(expression, algebra);
    else if (idents->parsed())
        out = cmd_identities(mdeg, algebra, basis);
    else if (conseq->parsed())
        out = cmd_consequences(gens_file, mdeg, basis);
    else if (is_theorem)
        out = cmd_check_theorem(max_degree.value_or(6));
    else if (lemma->parsed())
        out = cmd_lemmas(lemma_names, extended, 6);
    else if (normalize->parsed())
        out = cmd_normalize(expression);

    if (as_json)
        os << out.report.dump(2) << "\n";
    else if (out.exit_code == kInputError || out.exit_code == kCapExceeded)
        err << out.text;
    else
        os << out.text;
    return out.exit_code;
}

} // namespace lieid::cli
