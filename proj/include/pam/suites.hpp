#pragma once

#include "pam/classical.hpp"
#include "pam/magnus.hpp"
#include "pam/octagon.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pam {

struct SuiteOptions {
    std::optional<long> p;
    std::optional<int> nmax;
    std::optional<int> n;
    std::optional<long> s;
    std::optional<int> degree;
    std::optional<int> terms;
    std::optional<long> mod_exp;
    std::uint64_t seed = 1;
    bool tamper = false;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    CheckList checks;
    std::vector<std::string> documents;  // JSON payloads, e.g. octagon residuals
};

class UnknownSuite : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt);

std::string report_json(const SuiteReport& r);
std::string report_text(const SuiteReport& r);
std::string report_csv(const SuiteReport& r);

// Seeded generators shared by the suites.
using Rng = std::mt19937_64;
long rand_int(Rng& rng, long lo, long hi);
Q rand_unit(Rng& rng, long p);
FreeWord rand_kernel_word(Rng& rng, long p, int level, int letters);
DiracCombination rand_dirac(Rng& rng, int dim, int atoms, long spread);
DiracCombination even_part(const DiracCombination& g);

// One battery per acceptance criterion. tamper injects a single fault.
CheckList check_iwasawa_M(bool tamper = false);
CheckList check_reflection_relations(std::uint64_t seed, bool tamper = false, long e = 3);
CheckList check_e1_moments(bool tamper = false);
CheckList check_distributions(long p = 3, int nmax = 3, bool tamper = false);
CheckList check_octagon(const std::vector<OctagonConfig>& cfgs, bool tamper = false,
                        std::vector<std::string>* documents = nullptr);
// Strict coefficientwise comparison of derived and printed factors.
CheckList check_derive_factors(const std::vector<OctagonConfig>& cfgs, const std::string& names = "CEG");
CheckList check_magnus(std::uint64_t seed, long p, int nmax, int degree, int words = 10, bool tamper = false);
CheckList check_group_sum(std::uint64_t seed, bool tamper = false);
CheckList check_change_of_variables(std::uint64_t seed, long p = 3, bool tamper = false);
CheckList check_padic_laws(std::uint64_t seed);
CheckList check_transform_laws(std::uint64_t seed);
// h_m is a measure, and zero on even input.
CheckList check_prop86(std::uint64_t seed);
// Every factor against its display, allowing only the known X-term errata.
CheckList check_display_errata(const std::vector<OctagonConfig>& cfgs);
// Inversion formula and display corrections.
CheckList check_display_corrections(std::uint64_t seed, bool tamper = false);

std::vector<OctagonConfig> octagon_grid();
std::vector<OctagonConfig> octagon_configs(long p, int n, std::optional<long> s);

// Change of variables integrand: ((a_1 - x_1)/N + off0)^{n_0} F_a(x) ((x_r - a_r)/N + offr)^{n_r}
MPoly change_of_variable_integrand(const std::vector<int>& shape, const std::vector<Q>& a, long N, const Q& off0,
                                   const Q& offr);

}  // namespace pam
