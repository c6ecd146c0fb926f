#include "qk/loop.hpp"

#include <algorithm>

namespace qk {

namespace {

Rat rat_pow(const Rat& c, int e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (rat_is_zero(c)) throw error("negative power of zero");
        return Rat(1) / rat_pow(c, -e);
    }
    Rat out(1), base(c);
    int n = e;
    while (n > 0) {
        if (n & 1) out *= base;
        base *= base;
        n >>= 1;
    }
    return out;
}

using VecPoly = std::vector<KVector>;  // dense, ascending

void vec_strip(VecPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// lp == q^shift * (returned dense polynomial)
std::pair<VecPoly, int> laurent_to_vec(const LaurentPoly& lp) {
    if (lp.is_zero()) return {VecPoly{}, 0};
    int lo = lp.min_exp(), hi = lp.max_exp();
    VecPoly p(hi - lo + 1, KVector(lp.rank()));
    for (const auto& [e, v] : lp.terms()) p[e - lo] = v;
    return {p, lo};
}

LaurentPoly vec_to_laurent(const VecPoly& p, int shift, int rank) {
    LaurentPoly out(rank);
    for (size_t i = 0; i < p.size(); ++i)
        if (!p[i].is_zero()) out.set_coeff(shift + static_cast<int>(i), p[i]);
    return out;
}

VecPoly vec_mul_qpoly(const VecPoly& p, const QPoly& d, int rank) {
    if (p.empty() || d.is_zero()) return {};
    VecPoly out(p.size() + d.degree(), KVector(rank));
    for (int i = 0; i <= d.degree(); ++i) {
        if (rat_is_zero(d.coeff(i))) continue;
        for (size_t j = 0; j < p.size(); ++j) {
            if (p[j].is_zero()) continue;
            out[i + j] = out[i + j] + p[j].scaled(d.coeff(i));
        }
    }
    vec_strip(out);
    return out;
}

// Long division of a vector-coefficient polynomial by a scalar polynomial.
std::pair<VecPoly, VecPoly> vecpoly_divrem(VecPoly p, const QPoly& d, int rank) {
    if (d.is_zero()) throw error("division by zero polynomial");
    vec_strip(p);
    const int dd = d.degree();
    VecPoly quot;
    if (static_cast<int>(p.size()) - 1 >= dd)
        quot.assign(p.size() - dd, KVector(rank));
    const Rat lead_inv = Rat(1) / d.leading();
    while (!p.empty() && static_cast<int>(p.size()) - 1 >= dd) {
        int shift = static_cast<int>(p.size()) - 1 - dd;
        KVector f = p.back().scaled(lead_inv);
        quot[shift] = f;
        for (int i = 0; i < dd; ++i) {
            if (rat_is_zero(d.coeff(i))) continue;
            p[shift + i] = p[shift + i] - f.scaled(d.coeff(i));
        }
        p.pop_back();
        vec_strip(p);
    }
    return {quot, p};
}

// Coefficients of p(c + u) in u up to u^order (inclusive).
VecPoly vec_taylor(VecPoly cur, const Rat& c, int order, int rank) {
    VecPoly out(order + 1, KVector(rank));
    vec_strip(cur);
    for (int j = 0; j <= order && !cur.empty(); ++j) {
        KVector val(rank);
        for (auto it = cur.rbegin(); it != cur.rend(); ++it) val = val.scaled(c) + *it;
        out[j] = val;
        if (cur.size() == 1) break;
        // synthetic division by (q - c)
        VecPoly next(cur.size() - 1, KVector(rank));
        KVector carry(rank);
        for (int i = static_cast<int>(cur.size()) - 1; i >= 1; --i) {
            carry = cur[i] + carry.scaled(c);
            next[i - 1] = carry;
        }
        cur = std::move(next);
        vec_strip(cur);
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------- PairingData

PairingData PairingData::point() {
    PairingData p;
    p.rank = 1;
    p.labels = {"phi1"};
    p.metric = {{Rat(1)}};
    return p;
}

void PairingData::validate() const {
    if (rank < 1) throw error("pairing: rank must be >= 1");
    if (static_cast<int>(metric.size()) != rank) throw error("pairing: metric must be rank x rank");
    for (const auto& row : metric)
        if (static_cast<int>(row.size()) != rank) throw error("pairing: metric must be rank x rank");
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < i; ++j)
            if (metric[i][j] != metric[j][i]) throw error("pairing: metric must be symmetric");
    rat_matrix_inverse(metric);  // throws if singular
    if (variable_metric) {
        const LambdaMatrix& g = *variable_metric;
        if (static_cast<int>(g.size()) != rank) throw error("pairing: variable metric must be rank x rank");
        for (int i = 0; i < rank; ++i) {
            if (static_cast<int>(g[i].size()) != rank)
                throw error("pairing: variable metric must be rank x rank");
            for (int j = 0; j < rank; ++j)
                if (g[i][j].constant_part() != metric[i][j])
                    throw error("pairing: variable metric must be congruent to g modulo positive filtration");
        }
    }
}

std::vector<std::vector<Rat>> PairingData::metric_inverse() const { return rat_matrix_inverse(metric); }

std::vector<std::vector<Rat>> rat_matrix_inverse(const std::vector<std::vector<Rat>>& m) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<Rat>> a(m), inv(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!rat_is_zero(a[r][col])) { pivot = r; break; }
        if (pivot < 0) throw error("matrix is singular");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        Rat s = Rat(1) / a[col][col];
        for (int j = 0; j < n; ++j) { a[col][j] *= s; inv[col][j] *= s; }
        for (int r = 0; r < n; ++r) {
            if (r == col || rat_is_zero(a[r][col])) continue;
            Rat f = a[r][col];
            for (int j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

// ------------------------------------------------------------------- KVector

bool KVector::is_zero() const {
    for (const auto& e : v_)
        if (!e.is_zero()) return false;
    return true;
}

int KVector::filtration_degree() const {
    int best = kInfiniteDegree;
    for (const auto& e : v_) best = std::min(best, e.filtration_degree());
    return best;
}

KVector KVector::degree_part(int d) const {
    KVector out(rank());
    for (int i = 0; i < rank(); ++i) out.v_[i] = v_[i].degree_part(d);
    return out;
}

KVector KVector::operator-() const {
    KVector out(rank());
    for (int i = 0; i < rank(); ++i) out.v_[i] = -v_[i];
    return out;
}

KVector operator+(const KVector& a, const KVector& b) {
    if (a.rank() != b.rank()) throw error("KVector rank mismatch");
    KVector out(a.rank());
    for (int i = 0; i < a.rank(); ++i) out.v_[i] = a.v_[i] + b.v_[i];
    return out;
}

KVector operator-(const KVector& a, const KVector& b) { return a + (-b); }

KVector KVector::scaled(const LambdaElem& s) const {
    KVector out(rank());
    for (int i = 0; i < rank(); ++i) out.v_[i] = v_[i] * s;
    return out;
}

KVector KVector::scaled(const Rat& s) const {
    KVector out(rank());
    if (rat_is_zero(s)) return out;
    for (int i = 0; i < rank(); ++i) out.v_[i] = v_[i].scaled(s);
    return out;
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::scalar(LambdaElem coeff, int exponent) {
    LaurentPoly out(1);
    out.set_coeff(exponent, KVector::scalar(std::move(coeff)));
    return out;
}

LaurentPoly LaurentPoly::from_qpoly(const QPoly& p, const ConfigPtr& cfg) {
    LaurentPoly out(1);
    for (int i = 0; i <= p.degree(); ++i)
        if (!rat_is_zero(p.coeff(i))) out.set_coeff(i, KVector::scalar(LambdaElem(cfg, p.coeff(i))));
    return out;
}

KVector LaurentPoly::coeff(int e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? KVector(rank_) : it->second;
}

void LaurentPoly::set_coeff(int e, KVector v) {
    if (v.rank() != rank_) throw error("LaurentPoly: coefficient rank mismatch");
    if (v.is_zero())
        terms_.erase(e);
    else
        terms_[e] = std::move(v);
}

int LaurentPoly::min_exp() const {
    if (terms_.empty()) throw error("min_exp of zero Laurent polynomial");
    return terms_.begin()->first;
}

int LaurentPoly::max_exp() const {
    if (terms_.empty()) throw error("max_exp of zero Laurent polynomial");
    return terms_.rbegin()->first;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out(rank_);
    for (const auto& [e, v] : terms_) out.terms_.emplace(e, -v);
    return out;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.rank_ != b.rank_) throw error("LaurentPoly rank mismatch");
    LaurentPoly out(a);
    for (const auto& [e, v] : b.terms_) {
        auto it = out.terms_.find(e);
        if (it == out.terms_.end()) {
            out.terms_.emplace(e, v);
        } else {
            it->second = it->second + v;
            if (it->second.is_zero()) out.terms_.erase(it);
        }
    }
    return out;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly LaurentPoly::scaled(const LambdaElem& s) const {
    LaurentPoly out(rank_);
    for (const auto& [e, v] : terms_) out.set_coeff(e, v.scaled(s));
    return out;
}

LaurentPoly LaurentPoly::scaled(const Rat& s) const {
    LaurentPoly out(rank_);
    if (rat_is_zero(s)) return out;
    for (const auto& [e, v] : terms_) out.set_coeff(e, v.scaled(s));
    return out;
}

LaurentPoly LaurentPoly::mul_qpoly(const QPoly& p) const {
    LaurentPoly out(rank_);
    for (int i = 0; i <= p.degree(); ++i) {
        if (rat_is_zero(p.coeff(i))) continue;
        for (const auto& [e, v] : terms_) {
            KVector cur = out.coeff(e + i) + v.scaled(p.coeff(i));
            out.set_coeff(e + i, cur);
        }
    }
    return out;
}

LaurentPoly LaurentPoly::shifted(int e) const {
    LaurentPoly out(rank_);
    for (const auto& [k, v] : terms_) out.terms_.emplace(k + e, v);
    return out;
}

LaurentPoly LaurentPoly::subst_power(int k) const {
    if (k < 1) throw error("subst_power: k must be >= 1");
    LaurentPoly out(rank_);
    for (const auto& [e, v] : terms_) out.terms_.emplace(e * k, v);
    return out;
}

LaurentPoly LaurentPoly::subst_inverse() const {
    LaurentPoly out(rank_);
    for (const auto& [e, v] : terms_) out.terms_.emplace(-e, v);
    return out;
}

KVector LaurentPoly::eval(const Rat& c) const {
    KVector out(rank_);
    for (const auto& [e, v] : terms_) out = out + v.scaled(rat_pow(c, e));
    return out;
}

KVector LaurentPoly::eval_at_one() const {
    KVector out(rank_);
    for (const auto& [e, v] : terms_) out = out + v;
    return out;
}

LaurentPoly LaurentPoly::degree_part(int d) const {
    LaurentPoly out(rank_);
    for (const auto& [e, v] : terms_) out.set_coeff(e, v.degree_part(d));
    return out;
}

int LaurentPoly::filtration_degree() const {
    int best = kInfiniteDegree;
    for (const auto& [e, v] : terms_) best = std::min(best, v.filtration_degree());
    return best;
}

LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.rank_ != 1 && b.rank_ != 1)
        throw error("LaurentPoly: product of two vector-valued factors is not defined");
    const LaurentPoly& s = (a.rank_ == 1) ? a : b;
    const LaurentPoly& t = (a.rank_ == 1) ? b : a;
    LaurentPoly out(t.rank_);
    for (const auto& [e1, v1] : s.terms_) {
        const LambdaElem& c = v1[0];
        for (const auto& [e2, v2] : t.terms_) {
            KVector add = v2.scaled(c);
            if (add.is_zero()) continue;
            KVector cur = out.coeff(e1 + e2) + add;
            out.set_coeff(e1 + e2, cur);
        }
    }
    return out;
}

// --------------------------------------------------------------- RationalLoop

RationalLoop::RationalLoop(LaurentPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw error("RationalLoop: zero denominator");
    normalize();
}

void RationalLoop::normalize() {
    // move q-power content of the denominator into the numerator
    int val = 0;
    while (val <= den_.degree() && rat_is_zero(den_.coeff(val))) ++val;
    if (val > 0) {
        std::vector<Rat> c(den_.coeffs().begin() + val, den_.coeffs().end());
        den_ = QPoly(std::move(c));
        num_ = num_.shifted(-val);
    }
    // constant term 1
    Rat c0 = den_.coeff(0);
    if (c0 != 1) {
        Rat s = Rat(1) / c0;
        den_ = den_.scaled(s);
        num_ = num_.scaled(s);
    }
    if (num_.is_zero()) {
        den_ = QPoly(Rat(1));
        return;
    }
    if (den_.is_one()) return;
    // best-effort reduction: cancel the common scalar content of the
    // numerator against the denominator
    std::map<std::pair<int, Monomial>, std::map<int, Rat>> comps;
    for (const auto& [e, v] : num_.terms())
        for (int a = 0; a < v.rank(); ++a)
            for (const auto& [mono, c] : v[a].terms()) comps[{a, mono}][e] = c;
    QPoly g = den_;
    for (const auto& [key, comp] : comps) {
        int lo = comp.begin()->first, hi = comp.rbegin()->first;
        std::vector<Rat> coeffs(hi - lo + 1, Rat(0));
        for (const auto& [e, c] : comp) coeffs[e - lo] = c;
        g = QPoly::gcd(g, QPoly(std::move(coeffs)));
        if (g.degree() <= 0) return;
    }
    g = g.scaled(Rat(1) / g(Rat(0)));
    den_ = den_.divide_exact(g);
    auto [p, shift] = laurent_to_vec(num_);
    auto [quot, rem] = vecpoly_divrem(std::move(p), g, num_.rank());
    if (!rem.empty()) throw error("internal: content division left a remainder");
    num_ = vec_to_laurent(quot, shift, num_.rank());
}

RationalLoop RationalLoop::degree_part(int d) const { return RationalLoop(num_.degree_part(d), den_); }

RationalLoop RationalLoop::operator-() const { return RationalLoop(-num_, den_); }

RationalLoop operator+(const RationalLoop& a, const RationalLoop& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.rank() != b.rank()) throw error("RationalLoop rank mismatch");
    QPoly g = QPoly::gcd(a.den(), b.den());
    g = g.scaled(Rat(1) / g(Rat(0)));
    QPoly aq = a.den().divide_exact(g), bq = b.den().divide_exact(g);
    return RationalLoop(a.num().mul_qpoly(bq) + b.num().mul_qpoly(aq), a.den() * bq);
}

RationalLoop operator-(const RationalLoop& a, const RationalLoop& b) { return a + (-b); }

RationalLoop RationalLoop::scaled(const LambdaElem& s) const { return RationalLoop(num_.scaled(s), den_); }
RationalLoop RationalLoop::scaled(const Rat& s) const { return RationalLoop(num_.scaled(s), den_); }

RationalLoop mul(const RationalLoop& a, const RationalLoop& b) {
    if (a.rank() != 1 && b.rank() != 1)
        throw error("RationalLoop: product requires a scalar-valued factor");
    return RationalLoop(mul(a.num(), b.num()), a.den() * b.den());
}

RationalLoop reciprocal(const RationalLoop& f) {
    if (f.rank() != 1) throw error("reciprocal: loop is not scalar-valued");
    if (f.is_zero()) throw error("reciprocal: division by zero loop");
    // numerator must be (lambda unit) * (rational Laurent polynomial)
    const LaurentPoly& n = f.num();
    int lo = n.min_exp();
    LambdaElem content = n.coeff(lo)[0];
    if (rat_is_zero(content.constant_part()))
        throw error("reciprocal: numerator content is not a unit");
    LambdaElem cinv = inverse_unit(content);
    std::vector<Rat> scalar_coeffs(n.max_exp() - lo + 1, Rat(0));
    for (const auto& [e, v] : n.terms()) {
        LambdaElem ratio = v[0] * cinv;
        if (!ratio.is_constant())
            throw error("reciprocal: numerator is not a scalar polynomial times a unit");
        scalar_coeffs[e - lo] = ratio.constant_part();
    }
    // f = content * q^lo * p(q) / den  =>  1/f = cinv * q^{-lo} * den / p(q)
    QPoly p(std::move(scalar_coeffs));
    LaurentPoly num = LaurentPoly::from_qpoly(f.den(), content.config()).scaled(cinv).shifted(-lo);
    return RationalLoop(std::move(num), p);
}

bool loop_equal(const RationalLoop& a, const RationalLoop& b) {
    if (a.rank() != b.rank()) return false;
    return a.num().mul_qpoly(b.den()) == b.num().mul_qpoly(a.den());
}

RationalLoop substitute_q_inverse(const RationalLoop& f) {
    int d = f.den().degree();
    return RationalLoop(f.num().subst_inverse().shifted(d), f.den().reversed());
}

RationalLoop substitute_q_power(const RationalLoop& f, int k) {
    return RationalLoop(f.num().subst_power(k), f.den().compose_power(k));
}

// --------------------------------------------------------------------- expand

ExpansionPoint ExpansionPoint::at(const Rat& c) {
    if (rat_is_zero(c)) return zero();
    return {Kind::At, c};
}

KVector SeriesWindow::coeff(int v) const {
    int i = v - v_min;
    if (i < 0 || i >= static_cast<int>(coeffs.size())) throw error("SeriesWindow: exponent outside window");
    return coeffs[i];
}

SeriesWindow expand(const RationalLoop& f, const ExpansionPoint& at, int v_min, int v_max) {
    if (v_min > v_max) throw error("expand: malformed window");
    if (at.kind == ExpansionPoint::Kind::Infinity) {
        SeriesWindow w = expand(substitute_q_inverse(f), ExpansionPoint::zero(), v_min, v_max);
        w.point = at;
        return w;
    }
    SeriesWindow w;
    w.point = at;
    w.v_min = v_min;
    w.coeffs.assign(v_max - v_min + 1, KVector(f.rank()));
    if (f.is_zero()) return w;
    auto [p, shift] = laurent_to_vec(f.num());
    if (at.kind == ExpansionPoint::Kind::Zero) {
        int order = v_max - shift;
        if (order < 0) return w;
        std::vector<Rat> inv = series_inverse(f.den().coeffs(), order);
        for (int v = v_min; v <= v_max; ++v) {
            KVector acc(f.rank());
            for (int i = 0; i < static_cast<int>(p.size()); ++i) {
                int j = v - shift - i;
                if (j < 0 || j > order) continue;
                acc = acc + p[i].scaled(inv[j]);
            }
            w.coeffs[v - v_min] = acc;
        }
        return w;
    }
    // expansion at a nonzero rational point c
    const Rat& c = at.c;
    QPoly den = f.den();
    VecPoly numer = p;
    if (shift < 0) {
        den = den * QPoly::monomial(-shift);
    } else if (shift > 0) {
        VecPoly padded(numer.size() + shift, KVector(f.rank()));
        for (size_t i = 0; i < numer.size(); ++i) padded[i + shift] = numer[i];
        numer = std::move(padded);
    }
    QPoly reduced;
    int mu = den.deflate_at(c, &reduced);
    if (mu > 0 && v_min >= 0)
        throw error("expand: the expansion point is a pole; request a Laurent window");
    int order = v_max + mu;
    if (order < 0) return w;
    std::vector<Rat> etay = reduced.taylor_at(c, order);
    std::vector<Rat> inv = series_inverse(etay, order);
    VecPoly ptay = vec_taylor(numer, c, order, f.rank());
    for (int v = v_min; v <= v_max; ++v) {
        int j = v + mu;
        if (j < 0 || j > order) continue;
        KVector acc(f.rank());
        for (int i = 0; i <= j && i < static_cast<int>(ptay.size()); ++i)
            acc = acc + ptay[i].scaled(inv[j - i]);
        w.coeffs[v - v_min] = acc;
    }
    return w;
}

// ------------------------------------------------------------------- residues

KVector residues_zero_infinity(const RationalLoop& f) {
    KVector at_zero = expand(f, ExpansionPoint::zero(), -1, -1).coeff(-1);
    KVector at_inf = expand(substitute_q_inverse(f), ExpansionPoint::zero(), 1, 1).coeff(1);
    return at_zero - at_inf;
}

// ---------------------------------------------------------------------- omega

namespace {
LaurentPoly pair_contract(const LaurentPoly& a, const LaurentPoly& b, const PairingData& p) {
    if (a.rank() != p.rank || b.rank() != p.rank) throw error("omega: rank mismatch with pairing");
    LaurentPoly out(1);
    for (const auto& [e1, v1] : a.terms()) {
        for (const auto& [e2, v2] : b.terms()) {
            LambdaElem acc;
            for (int i = 0; i < p.rank; ++i) {
                if (v1[i].is_zero()) continue;
                for (int j = 0; j < p.rank; ++j) {
                    if (rat_is_zero(p.metric[i][j])) continue;
                    acc += (v1[i] * v2[j]).scaled(p.metric[i][j]);
                }
            }
            if (acc.is_zero()) continue;
            KVector cur = out.coeff(e1 + e2) + KVector::scalar(acc);
            out.set_coeff(e1 + e2, cur);
        }
    }
    return out;
}
}  // namespace

LambdaElem pairing_value(const KVector& a, const KVector& b, const PairingData& p) {
    if (a.rank() != p.rank || b.rank() != p.rank) throw error("pairing_value: rank mismatch");
    LambdaElem out;
    for (int i = 0; i < p.rank; ++i)
        for (int j = 0; j < p.rank; ++j) {
            if (rat_is_zero(p.metric[i][j])) continue;
            out += (a[i] * b[j]).scaled(p.metric[i][j]);
        }
    return out;
}

LambdaElem omega(const RationalLoop& f, const RationalLoop& g, const PairingData& p) {
    if (f.rank() != g.rank()) throw error("omega: rank mismatch");
    RationalLoop fi = substitute_q_inverse(f);
    RationalLoop h(pair_contract(fi.num(), g.num(), p).shifted(-1), fi.den() * g.den());
    KVector r = residues_zero_infinity(h);
    return -r[0];
}

// -------------------------------------------------------------- project_split

SplitParts project_split(const RationalLoop& f) {
    SplitParts out{LaurentPoly(f.rank()), RationalLoop(f.rank())};
    if (f.is_zero()) return out;
    const int rank = f.rank();
    const QPoly& den = f.den();
    if (den.is_one()) {
        out.plus = f.num();
        return out;
    }
    auto [p, shift] = laurent_to_vec(f.num());
    int m = std::max(0, -shift);
    if (shift > 0) {
        VecPoly padded(p.size() + shift, KVector(rank));
        for (size_t i = 0; i < p.size(); ++i) padded[i + shift] = p[i];
        p = std::move(padded);
    }
    // f = P / (q^m den) with P ordinary; first P = s*den + r
    auto [s, r] = vecpoly_divrem(std::move(p), den, rank);
    out.plus = vec_to_laurent(s, -m, rank);
    if (m == 0) {
        out.minus = RationalLoop(vec_to_laurent(r, 0, rank), den);
        return out;
    }
    // r/(q^m den) = r*u/den + r*v/q^m with u*q^m + v*den == 1
    auto [g, u, v] = QPoly::xgcd(QPoly::monomial(m), den);
    if (!g.is_one()) throw error("internal: q^m and the denominator are not coprime");
    out.plus = out.plus + vec_to_laurent(vec_mul_qpoly(r, v, rank), -m, rank);
    auto [s2, r2] = vecpoly_divrem(vec_mul_qpoly(r, u, rank), den, rank);
    out.plus = out.plus + vec_to_laurent(s2, 0, rank);
    out.minus = RationalLoop(vec_to_laurent(r2, 0, rank), den);
    return out;
}

// ------------------------------------------------------------------- exp_loop

RationalLoop exp_loop(const RationalLoop& f, ConfigPtr cfg) {
    if (f.rank() != 1) throw error("exp_loop: loop must be scalar-valued");
    if (!cfg) {
        for (const auto& [e, v] : f.num().terms()) {
            if (v[0].config()) { cfg = v[0].config(); break; }
        }
    }
    if (!cfg) throw error("exp_loop: no ring config available");
    if (!f.is_zero() && f.filtration_degree() < 1)
        throw error("exp_loop: numerator must have positive filtration degree");
    const int D = cfg->truncation;
    RationalLoop out = RationalLoop::one(cfg);
    RationalLoop power = out;
    Rat factorial(1);
    for (int j = 1; j <= D; ++j) {
        power = mul(power, f);
        if (power.is_zero()) break;
        factorial *= j;
        out = out + power.scaled(Rat(1) / factorial);
    }
    return out;
}

// ------------------------------------------------------------- metric_inverse

namespace {
LambdaMatrix mat_mul(const LambdaMatrix& a, const LambdaMatrix& b) {
    const int n = static_cast<int>(a.size());
    LambdaMatrix out(n, std::vector<LambdaElem>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            LambdaElem acc;
            for (int k = 0; k < n; ++k) acc += a[i][k] * b[k][j];
            out[i][j] = acc;
        }
    return out;
}
bool mat_is_zero(const LambdaMatrix& a) {
    for (const auto& row : a)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}
}  // namespace

LambdaMatrix metric_inverse(const LambdaMatrix& G) {
    const int n = static_cast<int>(G.size());
    if (n == 0) throw error("metric_inverse: empty matrix");
    ConfigPtr cfg;
    for (const auto& row : G) {
        if (static_cast<int>(row.size()) != n) throw error("metric_inverse: matrix must be square");
        for (const auto& e : row)
            if (!cfg && e.config()) cfg = e.config();
    }
    if (!cfg) throw error("metric_inverse: matrix carries no ring");
    std::vector<std::vector<Rat>> g(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[i][j] = G[i][j].constant_part();
    std::vector<std::vector<Rat>> ginv;
    try {
        ginv = rat_matrix_inverse(g);
    } catch (const error&) {
        throw error("metric_inverse: matrix is not unit-plus-positive-filtration");
    }
    // M = -g^{-1} Delta, Delta = G - g
    LambdaMatrix M(n, std::vector<LambdaElem>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            LambdaElem acc;
            for (int k = 0; k < n; ++k) {
                LambdaElem delta = G[k][j] - LambdaElem(cfg, g[k][j]);
                acc += delta.scaled(-ginv[i][k]);
            }
            M[i][j] = acc;
        }
    LambdaMatrix acc(n, std::vector<LambdaElem>(n)), term(n, std::vector<LambdaElem>(n));
    for (int i = 0; i < n; ++i) {
        acc[i][i] = LambdaElem(cfg, Rat(1));
        term[i][i] = LambdaElem(cfg, Rat(1));
    }
    for (int j = 1; j <= cfg->truncation; ++j) {
        term = mat_mul(M, term);
        if (mat_is_zero(term)) break;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) acc[i][k] += term[i][k];
    }
    // out = acc * g^{-1}
    LambdaMatrix out(n, std::vector<LambdaElem>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            LambdaElem e;
            for (int k = 0; k < n; ++k) e += acc[i][k].scaled(ginv[k][j]);
            out[i][j] = e;
        }
    return out;
}

LambdaMatrix metric_inverse(const PairingData& p, const ConfigPtr& cfg) {
    if (p.variable_metric) return metric_inverse(*p.variable_metric);
    auto ginv = p.metric_inverse();
    LambdaMatrix out(p.rank, std::vector<LambdaElem>(p.rank));
    for (int i = 0; i < p.rank; ++i)
        for (int j = 0; j < p.rank; ++j) out[i][j] = LambdaElem(cfg, ginv[i][j]);
    return out;
}

}  // namespace qk
