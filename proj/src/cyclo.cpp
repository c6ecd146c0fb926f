#include "qk/cyclo.hpp"

#include <algorithm>
#include <map>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <sstream>

namespace qk {

int euler_phi(int m) {
    if (m < 1) throw error("euler_phi: m must be >= 1");
    int result = m;
    int n = m;
    for (int p = 2; static_cast<long>(p) * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

QPoly cyclotomic_polynomial(int m) {
    static std::map<int, QPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto compute = [](auto&& self, int k) -> const QPoly& {
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
        // q^k - 1
        std::vector<Rat> c(k + 1, Rat(0));
        c[0] = -1;
        c[k] = 1;
        QPoly p{std::vector<Rat>(c)};
        for (int d = 1; d < k; ++d)
            if (k % d == 0) p = p.divide_exact(self(self, d));
        return cache.emplace(k, std::move(p)).first->second;
    };
    if (m < 1) throw error("cyclotomic_polynomial: m must be >= 1");
    return compute(compute, m);
}

// ---------------------------------------------------------------- CycloNumber

CycloNumber::CycloNumber(const Rat& r) : m_(1) {
    if (!rat_is_zero(r)) c_.push_back(r);
}

CycloNumber::CycloNumber(int m, std::vector<Rat> coeffs) : m_(m), c_(std::move(coeffs)) {
    if (m < 1) throw error("CycloNumber: conductor must be >= 1");
    reduce();
}

void CycloNumber::reduce() {
    while (!c_.empty() && rat_is_zero(c_.back())) c_.pop_back();
    int phi = euler_phi(m_);
    if (static_cast<int>(c_.size()) > phi) {
        QPoly rem = QPoly(std::move(c_)).divrem(cyclotomic_polynomial(m_)).second;
        c_ = rem.coeffs();
    }
}

CycloNumber CycloNumber::zeta(int m) { return CycloNumber(m, {Rat(0), Rat(1)}); }

Rat CycloNumber::to_rational() const {
    if (!is_rational()) throw error("CycloNumber: not rational");
    return c_.empty() ? Rat(0) : c_[0];
}

CycloNumber CycloNumber::promoted(int M) const {
    if (M == m_) return *this;
    if (M % m_ != 0) throw error("CycloNumber: conductor does not divide target");
    int k = M / m_;
    std::vector<Rat> out(c_.empty() ? 0 : (c_.size() - 1) * k + 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) out[i * k] = c_[i];
    return CycloNumber(M, std::move(out));
}

CycloNumber CycloNumber::operator-() const {
    CycloNumber out(*this);
    for (auto& c : out.c_) c = -c;
    return out;
}

CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) {
    int L = std::lcm(a.m_, b.m_);
    CycloNumber x = a.promoted(L), y = b.promoted(L);
    std::vector<Rat> c(std::max(x.c_.size(), y.c_.size()), Rat(0));
    for (size_t i = 0; i < x.c_.size(); ++i) c[i] += x.c_[i];
    for (size_t i = 0; i < y.c_.size(); ++i) c[i] += y.c_[i];
    return CycloNumber(L, std::move(c));
}

CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) { return a + (-b); }

CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
    int L = std::lcm(a.m_, b.m_);
    CycloNumber x = a.promoted(L), y = b.promoted(L);
    QPoly p = QPoly(std::vector<Rat>(x.c_)) * QPoly(std::vector<Rat>(y.c_));
    return CycloNumber(L, p.coeffs());
}

CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) { return a * b.inverse(); }

CycloNumber CycloNumber::inverse() const {
    if (is_zero()) throw error("CycloNumber: division by zero");
    auto [g, u, v] = QPoly::xgcd(QPoly(std::vector<Rat>(c_)), cyclotomic_polynomial(m_));
    if (!g.is_one()) throw error("CycloNumber: element is not invertible");
    return CycloNumber(m_, u.coeffs());
}

CycloNumber CycloNumber::pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    CycloNumber out(Rat(1)), base(*this);
    while (n > 0) {
        if (n & 1) out = out * base;
        base = base * base;
        n >>= 1;
    }
    return out;
}

CycloNumber CycloNumber::galois_conjugate(int j) const {
    j = ((j % m_) + m_) % m_;
    if (std::gcd(j, m_) != 1) throw error("galois_conjugate: exponent not coprime to the conductor");
    std::vector<Rat> out(m_, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) out[(i * j) % m_] += c_[i];
    return CycloNumber(m_, std::move(out));
}

bool CycloNumber::operator==(const CycloNumber& o) const {
    if (m_ == o.m_) return c_ == o.c_;
    int L = std::lcm(m_, o.m_);
    return promoted(L).c_ == o.promoted(L).c_;
}

std::string CycloNumber::str() const {
    if (is_rational()) return rat_str(to_rational());
    std::ostringstream os;
    os << QPoly(std::vector<Rat>(c_)).str("z") << " (z = zeta_" << m_ << ")";
    return os.str();
}

CycloLambda embed_cyclo(const LambdaElem& e, int m) {
    CycloLambda out(e.config());
    for (const auto& [mono, c] : e.terms()) out.insert(mono, CycloNumber(c).promoted(m));
    return out;
}

CycloLambda galois_conjugate(const CycloLambda& e, int j) {
    CycloLambda out(e.config());
    for (const auto& [mono, c] : e.terms()) out.insert(mono, c.galois_conjugate(j));
    return out;
}

bool cvec_is_zero(const CycloVec& v) {
    for (const auto& e : v)
        if (!e.is_zero()) return false;
    return true;
}

const CycloVec& CycloSeries::coeff(int v) const {
    int i = v - v_min;
    if (i < 0 || i >= static_cast<int>(coeffs.size())) throw error("CycloSeries: exponent outside window");
    return coeffs[i];
}

int AdelicProfile::order_of(int m) const {
    for (const auto& [cond, ord] : poles)
        if (cond == m) return ord;
    return 0;
}

// -------------------------------------------------------------- classify_poles

AdelicProfile classify_poles(const QPoly& den) {
    AdelicProfile out;
    QPoly rem = den;
    if (rem.is_zero()) throw error("classify_poles: zero denominator");
    if (rem.degree() <= 0) return out;
    const long cap = 2L * rem.degree() * rem.degree() + 2;
    for (long m = 1; m <= cap && rem.degree() > 0; ++m) {
        if (euler_phi(static_cast<int>(m)) > rem.degree()) continue;
        QPoly phi = cyclotomic_polynomial(static_cast<int>(m));
        int order = 0;
        for (;;) {
            auto [q, r] = rem.divrem(phi);
            if (!r.is_zero()) break;
            rem = q;
            ++order;
        }
        if (order > 0) out.poles.emplace_back(static_cast<int>(m), order);
    }
    if (rem.degree() > 0) {
        out.pass_iii = false;
        out.non_cyclotomic = rem.scaled(Rat(1) / rem(Rat(0)));
    }
    return out;
}

AdelicProfile classify_poles(const RationalLoop& f) { return classify_poles(f.den()); }

// ------------------------------------------------------- cyclo series helpers

namespace {

using CPoly = std::vector<CycloNumber>;  // dense ascending scalar polynomial

void cpoly_strip(CPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

CycloNumber cpoly_eval(const CPoly& p, const CycloNumber& c) {
    CycloNumber acc;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * c + *it;
    return acc;
}

// deflate at root c: p = (q - c)^mult * reduced
int cpoly_deflate(CPoly p, const CycloNumber& c, CPoly* reduced) {
    cpoly_strip(p);
    int mult = 0;
    while (!p.empty() && cpoly_eval(p, c).is_zero()) {
        CPoly next(p.size() - 1);
        CycloNumber carry;
        for (int i = static_cast<int>(p.size()) - 1; i >= 1; --i) {
            carry = p[i] + carry * c;
            next[i - 1] = carry;
        }
        p = std::move(next);
        ++mult;
        cpoly_strip(p);
    }
    if (reduced) *reduced = p;
    return mult;
}

std::vector<CycloNumber> cpoly_taylor(CPoly cur, const CycloNumber& c, int order) {
    std::vector<CycloNumber> out(order + 1);
    cpoly_strip(cur);
    for (int j = 0; j <= order && !cur.empty(); ++j) {
        out[j] = cpoly_eval(cur, c);
        if (cur.size() == 1) break;
        CPoly next(cur.size() - 1);
        CycloNumber carry;
        for (int i = static_cast<int>(cur.size()) - 1; i >= 1; --i) {
            carry = cur[i] + carry * c;
            next[i - 1] = carry;
        }
        cur = std::move(next);
        cpoly_strip(cur);
    }
    return out;
}

std::vector<CycloNumber> cseries_inverse(const std::vector<CycloNumber>& f, int order) {
    if (f.empty() || f[0].is_zero()) throw error("cyclo series inverse: constant term is zero");
    std::vector<CycloNumber> g(order + 1);
    CycloNumber inv0 = f[0].inverse();
    g[0] = inv0;
    for (int n = 1; n <= order; ++n) {
        CycloNumber acc;
        for (int i = 1; i <= n && i < static_cast<int>(f.size()); ++i) acc = acc + f[i] * g[n - i];
        g[n] = -acc * inv0;
    }
    return g;
}

std::vector<CycloNumber> cseries_mul(const std::vector<CycloNumber>& a, const std::vector<CycloNumber>& b,
                                     int order) {
    std::vector<CycloNumber> out(order + 1);
    for (int i = 0; i < static_cast<int>(a.size()) && i <= order; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j + i <= order && j < static_cast<int>(b.size()); ++j)
            out[i + j] = out[i + j] + a[i] * b[j];
    }
    return out;
}

CycloVec cvec_zero(int rank) { return CycloVec(rank); }

CycloVec cvec_add(const CycloVec& a, const CycloVec& b) {
    CycloVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

CycloVec cvec_scale(const CycloVec& a, const CycloNumber& s) {
    CycloVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i].scaled(s);
    return out;
}

using CVecPoly = std::vector<CycloVec>;

void cvec_poly_strip(CVecPoly& p) {
    while (!p.empty() && cvec_is_zero(p.back())) p.pop_back();
}

CVecPoly cvec_taylor(CVecPoly cur, const CycloNumber& c, int order, int rank) {
    CVecPoly out(order + 1, cvec_zero(rank));
    cvec_poly_strip(cur);
    for (int j = 0; j <= order && !cur.empty(); ++j) {
        CycloVec val = cvec_zero(rank);
        for (auto it = cur.rbegin(); it != cur.rend(); ++it) val = cvec_add(cvec_scale(val, c), *it);
        out[j] = val;
        if (cur.size() == 1) break;
        CVecPoly next(cur.size() - 1, cvec_zero(rank));
        CycloVec carry = cvec_zero(rank);
        for (int i = static_cast<int>(cur.size()) - 1; i >= 1; --i) {
            carry = cvec_add(cur[i], cvec_scale(carry, c));
            next[i - 1] = carry;
        }
        cur = std::move(next);
        cvec_poly_strip(cur);
    }
    return out;
}

}  // namespace

// -------------------------------------------------------------- expand_at_root

RootExpansion expand_at_root(const RationalLoop& f, int m, int v_min, int v_max) {
    if (m < 1) throw error("expand_at_root: conductor must be >= 1");
    if (v_min > v_max) throw error("expand_at_root: malformed window");
    RootExpansion out;
    out.conductor = m;
    out.series.conductor = m;
    out.series.v_min = v_min;
    out.series.coeffs.assign(v_max - v_min + 1, cvec_zero(f.rank()));
    const CycloNumber center = CycloNumber::zeta(m).inverse();
    // denominator as a cyclo polynomial, with q-power content from the
    // numerator shift folded in
    int shift = f.is_zero() ? 0 : f.num().min_exp();
    CPoly den;
    for (const Rat& c : f.den().coeffs()) den.emplace_back(c);
    if (shift < 0) {
        CPoly padded(den.size() - shift);
        for (size_t i = 0; i < den.size(); ++i) padded[i - shift] = den[i];
        den = std::move(padded);
    }
    CPoly reduced;
    out.pole_order = cpoly_deflate(den, center, &reduced);
    if (f.is_zero()) return out;
    const int mu = out.pole_order;
    const int order = v_max + mu;
    if (order < 0) return out;
    // numerator as an ordinary cyclo vector polynomial
    int lo = std::min(f.num().min_exp(), 0);
    CVecPoly numer(f.num().max_exp() + 1 - lo, cvec_zero(f.rank()));
    for (const auto& [e, v] : f.num().terms()) {
        CycloVec cv(f.rank());
        for (int i = 0; i < f.rank(); ++i) cv[i] = embed_cyclo(v[i], m);
        numer[e - lo] = std::move(cv);
    }
    std::vector<CycloNumber> etay = cpoly_taylor(reduced, center, order);
    std::vector<CycloNumber> inv = cseries_inverse(etay, order);
    CVecPoly ptay = cvec_taylor(numer, center, order, f.rank());
    for (int v = v_min; v <= v_max; ++v) {
        int j = v + mu;
        if (j < 0 || j > order) continue;
        CycloVec acc = cvec_zero(f.rank());
        for (int i = 0; i <= j && i < static_cast<int>(ptay.size()); ++i)
            acc = cvec_add(acc, cvec_scale(ptay[i], inv[j - i]));
        out.series.coeffs[v - v_min] = acc;
    }
    return out;
}

// ------------------------------------------------------------- adelic_localize

CycloSeries adelic_localize(const RootExpansion& e) { return adelic_localize(e, e.series.v_max()); }

CycloSeries adelic_localize(const RootExpansion& e, int out_max) {
    const int m = e.conductor;
    const int in_min = e.series.v_min, in_max = e.series.v_max();
    if (out_max > in_max)
        throw error("adelic_localize: window too short; output order " + std::to_string(out_max) +
                    " requires input orders up to " + std::to_string(out_max));
    CycloSeries out;
    out.conductor = m;
    out.v_min = in_min;
    int rank = 0;
    for (const auto& cv : e.series.coeffs) rank = std::max(rank, static_cast<int>(cv.size()));
    if (rank == 0) rank = 1;
    out.coeffs.assign(out_max - in_min + 1, cvec_zero(rank));
    if (out_max < in_min) { out.coeffs.clear(); return out; }
    const CycloNumber zinv = CycloNumber::zeta(m).inverse();
    const int L = out_max - in_min;  // highest inner series order needed
    // w(u) = zinv * ((1+u)^{1/m} - 1) = u * W(u), W(0) = zinv/m
    std::vector<CycloNumber> W(L + 1);
    Rat binom(1);  // binom(1/m, j) running value, starting at j=1 below
    Rat inv_m = Rat(1) / Rat(m);
    for (int j = 0; j <= L; ++j) {
        // binom(1/m, j+1) = binom(1/m, j) * (1/m - j)/(j+1)
        binom = (j == 0) ? inv_m : binom * (inv_m - Rat(j)) / Rat(j + 1);
        W[j] = CycloNumber(binom) * zinv;
    }
    std::vector<CycloNumber> Winv = cseries_inverse(W, L);
    for (int v = in_min; v <= out_max; ++v) {
        // W(u)^v up to order L
        std::vector<CycloNumber> wp(L + 1);
        wp[0] = CycloNumber(Rat(1));
        const std::vector<CycloNumber>& base = (v >= 0) ? W : Winv;
        for (int rep = 0; rep < std::abs(v); ++rep) wp = cseries_mul(wp, base, L);
        CycloVec av = e.series.coeff(v);
        av.resize(rank);
        if (cvec_is_zero(av)) continue;
        for (int j = std::max(v, in_min); j <= out_max; ++j) {
            int inner = j - v;
            if (inner < 0 || inner > L) continue;
            if (wp[inner].is_zero()) continue;
            out.coeffs[j - in_min] = cvec_add(out.coeffs[j - in_min], cvec_scale(av, wp[inner]));
        }
    }
    return out;
}

// ------------------------------------------------------ psi_localization_check

RationalLoop adams_descendant_sum(const LambdaElem& t) {
    RationalLoop out(1);
    if (t.is_zero()) return out;
    const ConfigPtr& cfg = t.config();
    for (int k = 1; k <= cfg->truncation; ++k) {
        LambdaElem coeff = adams(k, t).scaled(Rat(1, k));
        if (coeff.is_zero()) continue;
        std::vector<Rat> den(k + 1, Rat(0));
        den[0] = 1;
        den[k] = -1;
        out = out + RationalLoop(LaurentPoly::scalar(coeff), QPoly(std::move(den)));
    }
    return out;
}

namespace {
int pole_order_at_root(const QPoly& den, int m) {
    CPoly p;
    for (const Rat& c : den.coeffs()) p.emplace_back(c);
    return cpoly_deflate(p, CycloNumber::zeta(m).inverse(), nullptr);
}
}  // namespace

PsiLocalizationReport psi_localization_check(const LambdaElem& t, int m) {
    PsiLocalizationReport rep;
    rep.conductor = m;
    if (t.is_zero()) {
        rep.detail = "t = 0: both sides vanish";
        return rep;
    }
    if (t.filtration_degree() < 1)
        throw error("psi_localization_check: t must have positive filtration degree");
    RationalLoop E = adams_descendant_sum(t);
    const int mu1 = E.den().deflate_at(Rat(1), nullptr);
    const int mum = pole_order_at_root(E.den(), m);
    // left side: polar part at the primitive m-th root, localized to u = q-1
    if (mum > 0) {
        RootExpansion re = expand_at_root(E, m, -mum, -1);
        rep.localized = adelic_localize(re);
    } else {
        rep.localized.conductor = m;
        rep.localized.v_min = -1;
        rep.localized.coeffs.clear();
    }
    // right side: (1/m) Psi^m of the polar part at q = 1
    rep.adams_side.conductor = m;
    rep.adams_side.v_min = -std::max(mu1, 1);
    rep.adams_side.coeffs.assign(std::max(mu1, 1), CycloVec(1));
    if (mu1 > 0) {
        SeriesWindow w1 = expand(E, ExpansionPoint::at(Rat(1)), -mu1, -1);
        for (int v = -mu1; v <= -1; ++v) {
            LambdaElem b = w1.coeff(v)[0];
            CycloVec cv(1);
            cv[0] = embed_cyclo(adams(m, b).scaled(Rat(1, m)), m);
            rep.adams_side.coeffs[v + mu1] = std::move(cv);
        }
    }
    // compare with zero padding on negative orders
    int lo = std::min(rep.localized.coeffs.empty() ? -1 : rep.localized.v_min, rep.adams_side.v_min);
    for (int v = lo; v <= -1; ++v) {
        CycloLambda left, right;
        if (!rep.localized.coeffs.empty() && v >= rep.localized.v_min && v <= rep.localized.v_max())
            left = rep.localized.coeff(v)[0];
        if (v >= rep.adams_side.v_min && v <= rep.adams_side.v_max()) right = rep.adams_side.coeff(v)[0];
        if (!(left == right)) {
            rep.pass = false;
            rep.detail = "mismatch at order " + std::to_string(v);
            return rep;
        }
    }
    rep.detail = "polar parts agree";
    return rep;
}

}  // namespace qk
