#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qk/loop.hpp"
#include "qk/qpoly.hpp"
#include "qk/ring.hpp"

namespace qk {

int euler_phi(int m);
// m-th cyclotomic polynomial, computed by dividing q^m - 1 by the lower ones.
QPoly cyclotomic_polynomial(int m);

// Element of the cyclotomic field Q(zeta_m): a polynomial in zeta reduced
// modulo Phi_m. Arithmetic between different conductors coerces to the lcm.
class CycloNumber {
  public:
    CycloNumber() : m_(1) {}
    CycloNumber(const Rat& r);
    CycloNumber(int m, std::vector<Rat> coeffs);
    static CycloNumber zeta(int m);  // canonical primitive m-th root

    int conductor() const { return m_; }
    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }
    Rat to_rational() const;
    CycloNumber promoted(int M) const;  // embed via zeta_m = zeta_M^{M/m}

    CycloNumber operator-() const;
    friend CycloNumber operator+(const CycloNumber& a, const CycloNumber& b);
    friend CycloNumber operator-(const CycloNumber& a, const CycloNumber& b);
    friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b);
    friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b);
    CycloNumber inverse() const;
    CycloNumber pow(int n) const;
    // Substitute zeta -> zeta^j, gcd(j, m) = 1.
    CycloNumber galois_conjugate(int j) const;
    bool operator==(const CycloNumber& o) const;
    bool operator!=(const CycloNumber& o) const { return !(*this == o); }

    std::string str() const;

  private:
    void reduce();
    int m_;
    std::vector<Rat> c_;  // ascending powers of zeta, deg < phi(m)
};

using CycloLambda = BasicLambda<CycloNumber>;
using CycloVec = std::vector<CycloLambda>;  // rank-N vector

CycloLambda embed_cyclo(const LambdaElem& e, int m);
CycloLambda galois_conjugate(const CycloLambda& e, int j);
bool cvec_is_zero(const CycloVec& v);

// Laurent series window with coefficients in K^0 (x) Lambda (x) Q(zeta_m).
struct CycloSeries {
    int conductor = 1;
    int v_min = 0;
    std::vector<CycloVec> coeffs;
    int v_max() const { return v_min + static_cast<int>(coeffs.size()) - 1; }
    const CycloVec& coeff(int v) const;
};

// Expansion of a loop near q = zeta_m^{-1} in powers of (q - zeta^{-1}).
struct RootExpansion {
    int conductor = 1;
    int pole_order = 0;  // multiplicity of the center in the stored denominator
    CycloSeries series;
};

// Result of the pole classification (adelic test (iii) at the level of the
// denominator): cyclotomic factors with orders, plus any non-cyclotomic
// remainder.
struct AdelicProfile {
    std::vector<std::pair<int, int>> poles;  // (conductor, order), ascending
    bool pass_iii = true;
    QPoly non_cyclotomic{Rat(1)};  // offending factor; 1 when none
    int order_of(int m) const;
};

AdelicProfile classify_poles(const QPoly& den);
AdelicProfile classify_poles(const RationalLoop& f);

RootExpansion expand_at_root(const RationalLoop& f, int m, int v_min, int v_max);

// Substitute the local coordinate w = q - zeta^{-1} of an expansion at a
// primitive m-th root by zeta^{-1}(1+u)^{1/m} - zeta^{-1}, u = q - 1, with
// the principal branch (1+u)^{1/m} = 1 + u/m + ... . The result is a Laurent
// series in u on the same window.
CycloSeries adelic_localize(const RootExpansion& e);
// Same, demanding output orders up to out_max; throws (naming the required
// input order) when the input window is too short.
CycloSeries adelic_localize(const RootExpansion& e, int out_max);

// X = pt shadow of adelic test (ii): for E(q) = sum_k Psi^k(t)/(k(1-q^k)),
// the polar part of E at the primitive m-th root, localized by the
// substitution above, must equal (1/m) Psi^m of the polar part of E at q=1.
struct PsiLocalizationReport {
    bool pass = true;
    int conductor = 1;
    CycloSeries localized;   // left-hand side, negative orders
    CycloSeries adams_side;  // right-hand side, negative orders
    std::string detail;
};

PsiLocalizationReport psi_localization_check(const LambdaElem& t, int m);

// The loop E(q) itself (also used by the J-function exponent).
RationalLoop adams_descendant_sum(const LambdaElem& t);

}  // namespace qk
