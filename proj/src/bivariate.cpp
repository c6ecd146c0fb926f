#include "qk/bivariate.hpp"

#include <algorithm>

namespace qk {

void BiPoly::add_term(int ex, int ey, const LambdaElem& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(ex, ey);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

BiPoly BiPoly::from_x(const LaurentPoly& p) {
    if (p.rank() != 1) throw error("BiPoly: loop numerator must be scalar-valued");
    BiPoly out;
    for (const auto& [e, v] : p.terms()) out.add_term(e, 0, v[0]);
    return out;
}

BiPoly BiPoly::from_y(const LaurentPoly& p) {
    if (p.rank() != 1) throw error("BiPoly: loop numerator must be scalar-valued");
    BiPoly out;
    for (const auto& [e, v] : p.terms()) out.add_term(0, e, v[0]);
    return out;
}

BiPoly BiPoly::operator-() const {
    BiPoly out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
    return out;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly out(a);
    for (const auto& [k, c] : b.terms_) out.add_term(k.first, k.second, c);
    return out;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly out;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

BiPoly BiPoly::scaled(const LambdaElem& s) const {
    BiPoly out;
    for (const auto& [k, c] : terms_) out.add_term(k.first, k.second, c * s);
    return out;
}

BiPoly BiPoly::shifted(int dx, int dy) const {
    BiPoly out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(std::make_pair(k.first + dx, k.second + dy), c);
    return out;
}

BiPoly BiPoly::swapped() const {
    BiPoly out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(std::make_pair(k.second, k.first), c);
    return out;
}

BiPoly BiPoly::mul_xpoly(const QPoly& p) const {
    BiPoly out;
    for (int i = 0; i <= p.degree(); ++i) {
        if (rat_is_zero(p.coeff(i))) continue;
        for (const auto& [k, c] : terms_) out.add_term(k.first + i, k.second, c.scaled(p.coeff(i)));
    }
    return out;
}

BiPoly BiPoly::mul_ypoly(const QPoly& p) const {
    BiPoly out;
    for (int i = 0; i <= p.degree(); ++i) {
        if (rat_is_zero(p.coeff(i))) continue;
        for (const auto& [k, c] : terms_) out.add_term(k.first, k.second + i, c.scaled(p.coeff(i)));
    }
    return out;
}

BiPoly BiPoly::y_negated() const {
    BiPoly out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(std::make_pair(k.first, -k.second), c);
    return out;
}

BiRational BiRational::from_loop_x(const RationalLoop& f) {
    return {BiPoly::from_x(f.num()), f.den(), QPoly(Rat(1))};
}

BiRational BiRational::from_loop_y(const RationalLoop& f) {
    return {BiPoly::from_y(f.num()), QPoly(Rat(1)), f.den()};
}

BiRational BiRational::swapped() const { return {num.swapped(), den_y, den_x}; }

BiRational bi_mul(const BiRational& a, const BiRational& b) {
    return {a.num * b.num, a.den_x * b.den_x, a.den_y * b.den_y};
}

BiRational bi_sub(const BiRational& a, const BiRational& b) {
    BiPoly left = a.num.mul_xpoly(b.den_x).mul_ypoly(b.den_y);
    BiPoly right = b.num.mul_xpoly(a.den_x).mul_ypoly(a.den_y);
    return {left - right, a.den_x * b.den_x, a.den_y * b.den_y};
}

bool bi_equal(const BiRational& a, const BiRational& b) {
    return a.num.mul_xpoly(b.den_x).mul_ypoly(b.den_y) == b.num.mul_xpoly(a.den_x).mul_ypoly(a.den_y);
}

BiDivision divide_one_minus_xy(const BiRational& k) {
    // collect the numerator as a polynomial in y with Laurent-x coefficients
    int ymin = 0;
    for (const auto& [key, c] : k.num.terms()) ymin = std::min(ymin, key.second);
    std::map<int, std::map<int, LambdaElem>> rows;  // ydeg -> (xexp -> coeff)
    for (const auto& [key, c] : k.num.terms()) rows[key.second - ymin][key.first] = c;
    BiPoly quot;
    while (!rows.empty()) {
        auto top = std::prev(rows.end());
        int d = top->first;
        if (d == 0) break;
        // eliminate y^d with the quotient term e(x) y^{d-1}, e = -x^{-1} c
        std::map<int, LambdaElem> c = top->second;
        rows.erase(top);
        auto& row = rows[d - 1];
        for (const auto& [ex, coeff] : c) {
            quot.add_term(ex - 1, d - 1 + ymin, -coeff);
            auto it = row.find(ex - 1);
            if (it == row.end()) {
                row.emplace(ex - 1, coeff);
            } else {
                it->second += coeff;
                if (it->second.is_zero()) row.erase(it);
            }
        }
        if (rows[d - 1].empty()) rows.erase(d - 1);
    }
    BiPoly rem;
    if (!rows.empty())
        for (const auto& [ex, c] : rows.begin()->second) rem.add_term(ex, ymin, c);
    BiDivision out;
    out.remainder = rem;
    out.quotient = {quot, k.den_x, k.den_y};
    return out;
}

RationalLoop residues_y(const BiRational& b) {
    // coefficient of y^target in num/den_y expanded at y = 0, as x data
    auto y_coeff = [](const BiPoly& num, const QPoly& dy, int target) {
        std::map<int, LambdaElem> out;
        int ymin = 0;
        for (const auto& [key, c] : num.terms()) ymin = std::min(ymin, key.second);
        if (target < ymin) return out;
        std::vector<Rat> inv = series_inverse(dy.coeffs(), target - ymin);
        for (const auto& [key, c] : num.terms()) {
            int j = target - key.second;
            if (j < 0 || j > target - ymin) continue;
            if (rat_is_zero(inv[j])) continue;
            LambdaElem add = c.scaled(inv[j]);
            auto it = out.find(key.first);
            if (it == out.end())
                out.emplace(key.first, add);
            else
                it->second += add;
        }
        return out;
    };

    std::map<int, LambdaElem> at_zero = y_coeff(b.num, b.den_y, -1);
    // y -> 1/u: num(x, 1/u) * u^d / rev(u), normalized to constant term 1
    int d = b.den_y.degree();
    Rat lead = b.den_y.leading();
    BiPoly tn = b.num.y_negated().shifted(0, d);
    QPoly rev = b.den_y.reversed().scaled(Rat(1) / lead);
    std::map<int, LambdaElem> at_inf = y_coeff(tn, rev, 1);
    for (auto& [ex, c] : at_inf) c = c.scaled(Rat(1) / lead);

    LaurentPoly num(1);
    for (const auto& [ex, c] : at_zero) {
        KVector cur = num.coeff(ex) + KVector::scalar(c);
        num.set_coeff(ex, cur);
    }
    for (const auto& [ex, c] : at_inf) {
        KVector cur = num.coeff(ex) - KVector::scalar(c);
        num.set_coeff(ex, cur);
    }
    return RationalLoop(std::move(num), b.den_x);
}

}  // namespace qk
