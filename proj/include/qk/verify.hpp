#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qk/bivariate.hpp"
#include "qk/cyclo.hpp"
#include "qk/point.hpp"

namespace qk {

// First offending coefficient of a failed identity.
struct Witness {
    std::string where;     // locator: "q^-1", "x^2*y^0", "order -1", ...
    std::string monomial;  // lambda monomial
    int q_exponent = 0;
    std::string expected;
    std::string got;
};

struct IdentityReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> params;  // ordered
    bool pass = true;
    std::optional<Witness> witness;
};

// Deliberate corruptions used as negative controls; each identity check has
// one that flips it to FAIL.
enum class Corruption {
    none,
    flip_t_sign,      // the misprinted S: opposite sign on the t-branch
    drop_term,        // remove one numerator term of S
    flip_eval_sign,   // wrong sign on the (f_+(1), f_+(1)) term
    skip_adams,       // drop the -Psi^2(t)/2 correction in F0
    perturb_input,    // add a stray non-cyclotomic pole to the tested loop
};

IdentityReport check_sstar_s(const TheoryParams& p, Corruption c = Corruption::none);
IdentityReport check_wdvv_kernel(const TheoryParams& p, Corruption c = Corruption::none);
IdentityReport check_ancestor_shift(const TheoryParams& p, Corruption c = Corruption::none);
IdentityReport check_hamiltonian_identity(const RationalLoop& f, const PairingData& pairing,
                                          Corruption c = Corruption::none);
IdentityReport check_cone(const TheoryParams& p, Corruption c = Corruption::none);
IdentityReport check_string_flow(const TheoryParams& p, const LambdaElem& eps);
IdentityReport check_ruling(const TheoryParams& p);
IdentityReport check_adelic(const TheoryParams& p, const std::vector<int>& conductors);
IdentityReport check_f0(const LambdaElem& t, Corruption c = Corruption::none);
IdentityReport check_tangent(const LambdaElem& t);
IdentityReport check_w_form(const TheoryParams& p, std::uint64_t seed, int random_pairs = 20);

// The quantization W-form: double residue of (G S(x) S(y) - 1)/(1 - xy)
// against a(x) (x) b(y).
LambdaElem w_form(const LaurentPoly& a, const LaurentPoly& b, const TheoryParams& p);

// Deterministic generators for the randomized suites.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    int uniform(int lo, int hi);  // inclusive
};

LambdaElem random_lambda(Rng& rng, const ConfigPtr& cfg, int min_fdeg = 0);
LaurentPoly random_laurent(Rng& rng, const ConfigPtr& cfg, int rank = 1);
RationalLoop random_loop(Rng& rng, const ConfigPtr& cfg, int rank = 1);

IdentityReport check_hamiltonian_random(const ConfigPtr& cfg, std::uint64_t seed, int cases);
IdentityReport check_projection_omega_random(const ConfigPtr& cfg, std::uint64_t seed, int cases);

struct SuiteConfig {
    ConfigPtr ring;
    std::vector<LambdaElem> taus;
    std::vector<LambdaElem> ts;
    std::vector<LambdaElem> epss;
    std::vector<int> conductors{2, 3, 4};
    std::set<std::string> checks;  // empty = all
    std::uint64_t seed = 20260401;
    int hamiltonian_cases = 100;
    int infra_cases = 1000;
    bool corrupt_t_sign = false;  // negative-control toggle
    static SuiteConfig defaults();
};

std::vector<IdentityReport> run_suite(const SuiteConfig& config);

}  // namespace qk
