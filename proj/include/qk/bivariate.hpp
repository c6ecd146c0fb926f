#pragma once

#include <map>
#include <utility>

#include "qk/loop.hpp"

namespace qk {

// Laurent polynomial in two loop variables x, y with Lambda coefficients.
class BiPoly {
  public:
    const std::map<std::pair<int, int>, LambdaElem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(int ex, int ey, const LambdaElem& c);

    static BiPoly from_x(const LaurentPoly& p);  // scalar loop numerator into the x slot
    static BiPoly from_y(const LaurentPoly& p);

    BiPoly operator-() const;
    friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    BiPoly scaled(const LambdaElem& s) const;
    BiPoly shifted(int dx, int dy) const;
    BiPoly swapped() const;  // x <-> y
    BiPoly mul_xpoly(const QPoly& p) const;
    BiPoly mul_ypoly(const QPoly& p) const;
    BiPoly y_negated() const;  // y -> 1/y on exponents
    bool operator==(const BiPoly& o) const { return terms_ == o.terms_; }

  private:
    std::map<std::pair<int, int>, LambdaElem> terms_;
};

// N(x,y) / (den_x(x) den_y(y)); all denominators arising from the S-operator
// kernels are scalar and separate by variable.
struct BiRational {
    BiPoly num;
    QPoly den_x{Rat(1)};
    QPoly den_y{Rat(1)};

    static BiRational from_loop_x(const RationalLoop& f);
    static BiRational from_loop_y(const RationalLoop& f);
    BiRational swapped() const;
};

BiRational bi_mul(const BiRational& a, const BiRational& b);
BiRational bi_sub(const BiRational& a, const BiRational& b);
bool bi_equal(const BiRational& a, const BiRational& b);  // cross-multiplication

// Division of the numerator by (1 - x y) as a polynomial in y over Laurent
// polynomials in x. The remainder is the numerator evaluated at y = 1/x;
// the quotient is only meaningful when the remainder vanishes.
struct BiDivision {
    BiRational quotient;
    BiPoly remainder;  // Laurent in x, y-degree 0
};
BiDivision divide_one_minus_xy(const BiRational& k);

// Res_{y=0} B dy + Res_{y=infinity} B dy, a scalar loop in x.
RationalLoop residues_y(const BiRational& b);

}  // namespace qk
