#include "pam/classical.hpp"
#include "pam/magnus.hpp"
#include "pam/measure.hpp"
#include "pam/octagon.hpp"
#include "pam/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace pam;

namespace {

struct Flags {
    std::optional<long> p;
    std::optional<int> nmax;
    std::optional<int> n;
    std::optional<long> sigma_rep;
    std::optional<int> degree;
    std::optional<int> terms;
    std::optional<int> level;
    std::optional<long> mod_exp;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out;
    std::string word;
    std::string measure = "M";
    std::string c = "7";
    std::string a = "0";
    std::string factor = "A";
    bool tamper = false;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--p", f.p, "prime");
    cmd->add_option("--nmax", f.nmax, "highest stored level");
    cmd->add_option("--n", f.n, "level");
    cmd->add_option("--sigma-rep", f.sigma_rep, "unit residue s with chi = s + p^n t");
    cmd->add_option("--degree", f.degree, "truncation degree");
    cmd->add_option("--terms", f.terms, "number of transform coefficients per variable");
    cmd->add_option("--level", f.level, "evaluation level");
    cmd->add_option("--mod-exp", f.mod_exp, "comparison exponent");
    cmd->add_option("--seed", f.seed, "random seed");
    cmd->add_option("--format", f.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", f.out, "write to FILE instead of stdout");
    cmd->add_option("--word", f.word, "free group word, e.g. \"[x,y0] y1^-1\"");
    cmd->add_option("--measure", f.measure, "dirac, M, E1, N2 or D2");
    cmd->add_option("--c", f.c, "rational parameter num/den");
    cmd->add_option("--a", f.a, "point for dirac, comma separated");
    cmd->add_option("--factor", f.factor, "octagon factor A..J, or product");
    cmd->add_flag("--tamper", f.tamper, "inject one fault (negative control)");
}

void write_out(const Flags& f, const std::string& text) {
    if (f.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(f.out);
    if (!os) throw PadicError("cannot write " + f.out);
    os << text;
}

Point parse_point(const std::string& s) {
    Point a;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        Q v = parse_rational(tok);
        if (v.get_den() != 1) throw PadicError("point coordinate '" + tok + "' is not an integer");
        a.push_back(v.get_num().get_si());
    }
    if (a.empty()) throw PadicError("empty point");
    return a;
}

LevelFamily build_measure(const Flags& f, const PrimeContext& ctx) {
    const std::string& m = f.measure;
    if (m == "dirac") return make_dirac(parse_point(f.a), ctx);
    Q c = parse_rational(f.c);
    if (m == "M") return make_M(c, ctx);
    if (m == "E1") return make_E1(c, ctx);
    if (m == "N2") return make_N2(c, ctx);
    if (m == "D2") {
        std::string w = f.word.empty() ? "[x,y0]" : f.word;
        FreeWord g = parse_word(w, ctx.p, ctx.n_max);
        return make_D2(alpha_gamma_tables(g, ctx), ctx);
    }
    throw PadicError("unknown measure '" + m + "' (dirac, M, E1, N2, D2)");
}

std::string sym_series_json(const SymSeries& s, const OctagonConfig& cfg, const std::string& name) {
    SymTable tab(cfg.N());
    nlohmann::ordered_json j;
    j["config"] = {{"p", cfg.p}, {"n", cfg.n}, {"s", cfg.s}};
    j["factor"] = name;
    auto arr = nlohmann::ordered_json::array();
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i].is_zero()) continue;
        arr.push_back({{"mono", mono_name(s.mono(i))}, {"poly", s[i].str(tab)}});
    }
    j["terms"] = arr;
    return j.dump(2) + "\n";
}

std::string iwasawa_text(const IwasawaPoly& P) {
    std::ostringstream os;
    for (size_t i = 0; i < P.size(); ++i) {
        auto e = P.exponent(i);
        os << "(";
        for (size_t k = 0; k < e.size(); ++k) os << (k ? "," : "") << e[k];
        os << ") " << to_string(P.coeffs[i]) << " mod p^"
           << (P.guarantee[i] == kInfinity ? std::string("inf") : std::to_string(P.guarantee[i])) << "\n";
    }
    return os.str();
}

int cmd_emit(const std::string& object, const Flags& f) {
    long p = f.p.value_or(3);
    if (object == "measure" || object == "iwasawa" || object == "F-series") {
        int top = f.nmax ? *f.nmax : f.level.value_or(3);
        PrimeContext ctx(p, top);
        LevelFamily mu = build_measure(f, ctx);
        if (object == "measure") {
            write_out(f, f.format == "json" ? [&] {
                nlohmann::ordered_json j;
                j["p"] = p;
                j["dim"] = mu.dim();
                j["n_max"] = mu.n_max();
                auto levels = nlohmann::ordered_json::array();
                for (int n = 0; n <= mu.n_max(); ++n) {
                    auto vals = nlohmann::ordered_json::array();
                    for (const auto& v : mu.table(n)) vals.push_back(to_string(v));
                    levels.push_back(vals);
                }
                j["levels"] = levels;
                return j.dump(2) + "\n";
            }()
                                            : level_table_csv(mu));
            return 0;
        }
        int level = f.level.value_or(top);
        int K = f.terms.value_or(6);
        IwasawaPoly P = object == "iwasawa" ? iwasawa_P(mu, K, level) : transform_F(mu, K, level);
        write_out(f, f.format == "json" ? iwasawa_json(P) + "\n" : iwasawa_text(P));
        return 0;
    }
    if (object == "nc-series") {
        int n = f.n.value_or(f.level.value_or(1));
        if (f.word.empty()) throw PadicError("nc-series needs --word");
        FreeWord w = parse_word(f.word, p, n);
        NcSeries s = embed_E(w, f.degree.value_or(3));
        if (f.format == "json") {
            write_out(f, nc_series_json(s) + "\n");
        } else {
            std::ostringstream os;
            for (size_t i = 0; i < s.size(); ++i)
                if (s[i] != 0) os << mono_name(s.mono(i)) << " " << to_string(s[i]) << "\n";
            write_out(f, os.str());
        }
        return 0;
    }
    if (object == "octagon-factor") {
        OctagonConfig cfg{p, f.n.value_or(1), f.sigma_rep.value_or(1)};
        cfg.validate();
        SymSeries s = f.factor == "product" ? octagon_product(cfg) : [&] {
            if (f.factor.size() != 1) throw PadicError("unknown factor '" + f.factor + "'");
            return build_factor(f.factor[0], cfg);
        }();
        write_out(f, sym_series_json(s, cfg, f.factor));
        return 0;
    }
    throw PadicError("unknown object '" + object + "' (measure, iwasawa, F-series, nc-series, octagon-factor)");
}

int cmd_verify(const std::string& suite, const Flags& f) {
    SuiteOptions opt;
    opt.p = f.p;
    opt.nmax = f.nmax;
    opt.n = f.n;
    opt.s = f.sigma_rep;
    opt.degree = f.degree;
    opt.terms = f.terms;
    opt.mod_exp = f.mod_exp;
    opt.seed = f.seed;
    opt.tamper = f.tamper;
    SuiteReport r = run_suite(suite, opt);
    std::string text = f.format == "json" ? report_json(r) : f.format == "csv" ? report_csv(r) : report_text(r);
    write_out(f, text);
    if (const CheckLine* bad = r.checks.first_failure()) {
        std::cerr << "FAIL: " << bad->name << (bad->detail.empty() ? "" : " -- " + bad->detail) << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact p-adic measure and octagon verifier"};
    app.require_subcommand(1);
    Flags vf, ef;
    std::string suite, object;
    auto* verify = app.add_subcommand("verify", "run a verification suite: octagon, measures, magnus, transforms, corrections, all");
    verify->add_option("suite", suite, "suite name")->required();
    add_common(verify, vf);
    auto* emit = app.add_subcommand("emit", "serialize an object: measure, iwasawa, F-series, nc-series, octagon-factor");
    emit->add_option("object", object, "object kind")->required();
    add_common(emit, ef);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        if (verify->parsed()) return cmd_verify(suite, vf);
        return cmd_emit(object, ef);
    } catch (const UnknownSuite& e) {
        std::cerr << e.what() << "\n" << verify->help();
        return 2;
    } catch (const PadicError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
