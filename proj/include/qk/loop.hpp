#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qk/qpoly.hpp"
#include "qk/ring.hpp"

namespace qk {

using LambdaMatrix = std::vector<std::vector<LambdaElem>>;

// Poincare pairing data for a rank-N coefficient space K^0(X): the constant
// metric g (exact, symmetric, invertible) and, optionally, the variable
// metric G congruent to g modulo positive filtration.
struct PairingData {
    int rank = 1;
    std::vector<std::string> labels;
    std::vector<std::vector<Rat>> metric;
    std::optional<LambdaMatrix> variable_metric;

    static PairingData point();  // rank 1, g = (1)
    void validate() const;
    std::vector<std::vector<Rat>> metric_inverse() const;
};

// Exact inverse of a rational matrix (Gauss-Jordan); throws if singular.
std::vector<std::vector<Rat>> rat_matrix_inverse(const std::vector<std::vector<Rat>>& m);

// Element of K^0(X) (x) Lambda in coordinates against a fixed basis.
class KVector {
  public:
    KVector() = default;
    explicit KVector(int rank) : v_(rank) {}
    explicit KVector(std::vector<LambdaElem> coords) : v_(std::move(coords)) {}
    static KVector scalar(LambdaElem e) { return KVector(std::vector<LambdaElem>{std::move(e)}); }

    int rank() const { return static_cast<int>(v_.size()); }
    const LambdaElem& operator[](int i) const { return v_[i]; }
    LambdaElem& operator[](int i) { return v_[i]; }

    bool is_zero() const;
    int filtration_degree() const;
    KVector degree_part(int d) const;

    KVector operator-() const;
    friend KVector operator+(const KVector& a, const KVector& b);
    friend KVector operator-(const KVector& a, const KVector& b);
    KVector scaled(const LambdaElem& s) const;
    KVector scaled(const Rat& s) const;
    bool operator==(const KVector& o) const { return v_ == o.v_; }

  private:
    std::vector<LambdaElem> v_;
};

// Finitely supported map Z -> KVector: an element of K_+ (vector-valued
// Laurent polynomials in q).
class LaurentPoly {
  public:
    explicit LaurentPoly(int rank = 1) : rank_(rank) {}
    static LaurentPoly scalar(LambdaElem coeff, int exponent = 0);
    static LaurentPoly one(const ConfigPtr& cfg) { return scalar(LambdaElem(cfg, Rat(1))); }
    static LaurentPoly q_power(const ConfigPtr& cfg, int e) { return scalar(LambdaElem(cfg, Rat(1)), e); }
    static LaurentPoly from_qpoly(const QPoly& p, const ConfigPtr& cfg);

    int rank() const { return rank_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<int, KVector>& terms() const { return terms_; }
    KVector coeff(int e) const;
    void set_coeff(int e, KVector v);
    int min_exp() const;
    int max_exp() const;

    LaurentPoly operator-() const;
    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly scaled(const LambdaElem& s) const;
    LaurentPoly scaled(const Rat& s) const;
    LaurentPoly mul_qpoly(const QPoly& p) const;
    LaurentPoly shifted(int e) const;
    LaurentPoly subst_power(int k) const;  // q -> q^k
    LaurentPoly subst_inverse() const;     // q -> 1/q
    KVector eval(const Rat& c) const;      // c != 0 if negative exponents present
    KVector eval_at_one() const;
    LaurentPoly degree_part(int d) const;
    int filtration_degree() const;
    bool operator==(const LaurentPoly& o) const { return rank_ == o.rank_ && terms_ == o.terms_; }

    // Product with a scalar-valued (rank-1) Laurent polynomial on either side.
    friend LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b);

  private:
    int rank_;
    std::map<int, KVector> terms_;
};

// The loop space K: Laurent-polynomial numerator over a scalar denominator
// in q with rational coefficients and constant term 1. Reduction of the
// fraction is best-effort (common scalar content is cancelled); equality is
// decided by cross-multiplication.
class RationalLoop {
  public:
    explicit RationalLoop(int rank = 1) : num_(rank), den_{Rat(1)} {}
    RationalLoop(LaurentPoly num, QPoly den);
    explicit RationalLoop(LaurentPoly num) : RationalLoop(std::move(num), QPoly(Rat(1))) {}
    static RationalLoop from_lambda(const LambdaElem& e) { return RationalLoop(LaurentPoly::scalar(e)); }
    static RationalLoop one(const ConfigPtr& cfg) { return RationalLoop(LaurentPoly::one(cfg)); }

    const LaurentPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }
    int rank() const { return num_.rank(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }
    int filtration_degree() const { return num_.filtration_degree(); }
    RationalLoop degree_part(int d) const;

    RationalLoop operator-() const;
    friend RationalLoop operator+(const RationalLoop& a, const RationalLoop& b);
    friend RationalLoop operator-(const RationalLoop& a, const RationalLoop& b);
    RationalLoop scaled(const LambdaElem& s) const;
    RationalLoop scaled(const Rat& s) const;

  private:
    void normalize();
    LaurentPoly num_;
    QPoly den_;
};

// Field-of-fractions product; at least one factor must be scalar-valued.
RationalLoop mul(const RationalLoop& a, const RationalLoop& b);

// Reciprocal of a scalar loop whose numerator has a common lambda-unit
// content times a rational Laurent polynomial; throws otherwise.
RationalLoop reciprocal(const RationalLoop& f);

bool loop_equal(const RationalLoop& a, const RationalLoop& b);  // cross-multiplication

RationalLoop substitute_q_inverse(const RationalLoop& f);
RationalLoop substitute_q_power(const RationalLoop& f, int k);

// Series/Laurent expansion of a loop at q=0, q=infinity (in 1/q), or a
// rational point c != 0.
struct ExpansionPoint {
    enum class Kind { Zero, Infinity, At };
    Kind kind = Kind::Zero;
    Rat c;
    static ExpansionPoint zero() { return {Kind::Zero, Rat(0)}; }
    static ExpansionPoint infinity() { return {Kind::Infinity, Rat(0)}; }
    static ExpansionPoint at(const Rat& c);
};

struct SeriesWindow {
    ExpansionPoint point;
    int v_min = 0;
    std::vector<KVector> coeffs;  // coeffs[i] belongs to exponent v_min + i
    int v_max() const { return v_min + static_cast<int>(coeffs.size()) - 1; }
    KVector coeff(int v) const;
};

SeriesWindow expand(const RationalLoop& f, const ExpansionPoint& at, int v_min, int v_max);

// Res_{q=0} f dq + Res_{q=infinity} f dq (vector-valued).
KVector residues_zero_infinity(const RationalLoop& f);

// Poincare pairing (a, b) = sum a_i g_{ij} b_j.
LambdaElem pairing_value(const KVector& a, const KVector& b, const PairingData& p);

// Symplectic form Omega(f,g) = -Res_{q=0,infinity} (f(1/q), g(q)) dq/q.
LambdaElem omega(const RationalLoop& f, const RationalLoop& g, const PairingData& p);

// Projection K = K_+ (+) K_-: plus is a Laurent polynomial, minus is regular
// at q=0 and vanishes at q=infinity. The decomposition is unique.
struct SplitParts {
    LaurentPoly plus;
    RationalLoop minus;
};
SplitParts project_split(const RationalLoop& f);

// exp of a scalar loop whose numerator has positive filtration degree; the
// sum terminates by truncation.
RationalLoop exp_loop(const RationalLoop& f, ConfigPtr cfg = nullptr);

// Inverse of G = g + Delta with g an invertible rational matrix and Delta of
// positive filtration, by the alternating geometric series.
LambdaMatrix metric_inverse(const LambdaMatrix& G);
// Same for the variable metric attached to a pairing (the constant metric
// when no variable one is present); cfg names the ring of the result.
LambdaMatrix metric_inverse(const PairingData& p, const ConfigPtr& cfg);

}  // namespace qk
