// One line per acceptance criterion; exit status 1 if any line fails.
#include "pam/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace pam;

namespace {

struct Outcome {
    bool pass;
    std::string note;
};

Outcome summarize(const CheckList& c, bool want_pass = true) {
    const CheckLine* bad = c.first_failure();
    std::string n = std::to_string(c.lines.size()) + " checks";
    if (want_pass) {
        if (bad) n += "; first failure: " + bad->name + (bad->detail.empty() ? "" : " (" + bad->detail + ")");
        return {bad == nullptr, n};
    }
    if (bad) n += "; caught: " + bad->name;
    return {bad != nullptr, n};
}

bool run(int id, const std::string& title, double limit_s, const std::function<Outcome()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = f();
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = o.pass && (limit_s <= 0 || dt < limit_s);
    std::string lim = limit_s > 0 ? " (limit " + std::to_string(static_cast<int>(limit_s)) + " s)" : "";
    std::printf("criterion %2d: %s  %s  [%.2f s%s] %s\n", id, ok ? "PASS" : "FAIL", title.c_str(), dt, lim.c_str(),
                o.note.c_str());
    std::fflush(stdout);
    return ok;
}

}  // namespace

int main() {
    const std::uint64_t seed = 1;
    bool all = true;
    all &= run(1, "Iwasawa transform of M(c)", 5, [] { return summarize(check_iwasawa_M()); });
    all &= run(2, "relations between E_{1,c}, M(c) and the Dirac masses", 10, [&] { return summarize(check_reflection_relations(seed)); });
    all &= run(3, "E_{1,c} moments", 0, [] { return summarize(check_e1_moments()); });
    all &= run(4, "distribution relation for the named measures", 0, [] { return summarize(check_distributions()); });

    auto grid = octagon_grid();
    // time limit applies per configuration
    double slowest = 0;
    all &= run(5, "octagon symbolic suite", 0, [&] {
        CheckList total;
        for (const auto& cfg : grid) {
            auto t0 = std::chrono::steady_clock::now();
            total.append(check_octagon({cfg}));
            slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        }
        Outcome o = summarize(total);
        o.note += "; " + std::to_string(grid.size()) + " configurations, slowest " + std::to_string(slowest) + " s";
        o.pass = o.pass && slowest < 60;
        return o;
    });
    all &= run(6, "C, E, G from the generator substitutions", 0,
               [&] { return summarize(check_derive_factors(grid, "CEG")); });
    all &= run(7, "Magnus suite", 0, [&] {
        CheckList c = check_magnus(seed, 2, 2, 3);
        c.append(check_magnus(seed, 3, 1, 3));
        return summarize(c);
    });
    all &= run(8, "synthetic group sum and its transform identity", 0, [&] { return summarize(check_group_sum(seed)); });
    all &= run(9, "change of variables identities", 0, [&] { return summarize(check_change_of_variables(seed)); });
    all &= run(10, "negative controls", 0, [&] {
        Outcome o{true, ""};
        for (const auto& name : suite_names()) {
            SuiteOptions opt;
            opt.tamper = true;
            SuiteReport r = run_suite(name, opt);
            const CheckLine* bad = r.checks.first_failure();
            bool caught = bad != nullptr && !bad->detail.empty();
            o.pass = o.pass && caught;
            o.note += name + (caught ? " caught" : " MISSED") + "; ";
        }
        return o;
    });
    std::printf("%s\n", all ? "all criteria pass" : "some criteria fail");
    return all ? 0 : 1;
}
