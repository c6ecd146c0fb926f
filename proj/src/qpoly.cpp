#include "qk/qpoly.hpp"

#include <sstream>
#include <tuple>

namespace qk {

QPoly::QPoly(const Rat& constant) {
    if (!rat_is_zero(constant)) c_.push_back(constant);
}

QPoly::QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { strip(); }

QPoly QPoly::monomial(int degree, const Rat& c) {
    if (degree < 0) throw error("QPoly::monomial: negative degree");
    QPoly p;
    if (rat_is_zero(c)) return p;
    p.c_.assign(degree + 1, Rat(0));
    p.c_[degree] = c;
    return p;
}

void QPoly::strip() {
    while (!c_.empty() && rat_is_zero(c_.back())) c_.pop_back();
}

Rat QPoly::operator()(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

QPoly QPoly::operator-() const {
    QPoly p(*this);
    for (auto& c : p.c_) c = -c;
    return p;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    QPoly out;
    out.c_.resize(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) out.c_[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) out.c_[i] += b.c_[i];
    out.strip();
    return out;
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    QPoly out;
    out.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (rat_is_zero(a.c_[i])) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    out.strip();
    return out;
}

QPoly QPoly::scaled(const Rat& c) const {
    if (rat_is_zero(c)) return QPoly();
    QPoly out(*this);
    for (auto& x : out.c_) x *= c;
    return out;
}

std::pair<QPoly, QPoly> QPoly::divrem(const QPoly& d) const {
    if (d.is_zero()) throw error("QPoly::divrem: division by zero");
    QPoly rem(*this), quot;
    const int dd = d.degree();
    if (rem.degree() >= dd) quot.c_.assign(rem.degree() - dd + 1, Rat(0));
    const Rat lead_inv = Rat(1) / d.leading();
    while (!rem.is_zero() && rem.degree() >= dd) {
        int shift = rem.degree() - dd;
        Rat f = rem.leading() * lead_inv;
        quot.c_[shift] = f;
        for (int i = 0; i <= dd; ++i) rem.c_[shift + i] -= f * d.c_[i];
        rem.strip();
    }
    quot.strip();
    return {quot, rem};
}

QPoly QPoly::divide_exact(const QPoly& d) const {
    auto [q, r] = divrem(d);
    if (!r.is_zero()) throw error("QPoly::divide_exact: remainder is nonzero");
    return q;
}

int QPoly::deflate_at(const Rat& c, QPoly* deflated) const {
    QPoly cur(*this);
    int mult = 0;
    while (!cur.is_zero() && rat_is_zero(cur(c))) {
        // synthetic division by (q - c)
        std::vector<Rat> out(cur.c_.size() - 1, Rat(0));
        Rat carry(0);
        for (int i = cur.degree(); i >= 1; --i) {
            carry = cur.c_[i] + carry * c;
            out[i - 1] = carry;
        }
        cur = QPoly(std::move(out));
        ++mult;
        if (cur.is_zero()) break;
    }
    if (deflated) *deflated = cur;
    return mult;
}

QPoly QPoly::pow(int n) const {
    if (n < 0) throw error("QPoly::pow: negative exponent");
    QPoly out{Rat(1)};
    QPoly base(*this);
    while (n > 0) {
        if (n & 1) out = out * base;
        base = base * base;
        n >>= 1;
    }
    return out;
}

QPoly QPoly::compose_power(int k) const {
    if (k < 1) throw error("QPoly::compose_power: k must be >= 1");
    if (is_zero()) return QPoly();
    QPoly out;
    out.c_.assign((c_.size() - 1) * k + 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) out.c_[i * k] = c_[i];
    out.strip();
    return out;
}

QPoly QPoly::reversed() const {
    QPoly out(*this);
    std::reverse(out.c_.begin(), out.c_.end());
    out.strip();
    return out;
}

std::vector<Rat> QPoly::taylor_at(const Rat& c, int order) const {
    std::vector<Rat> out(order + 1, Rat(0));
    QPoly cur(*this);
    for (int j = 0; j <= order && !cur.is_zero(); ++j) {
        out[j] = cur(c);
        // divide (cur - cur(c)) by (q - c) synthetically
        if (cur.degree() < 1) break;
        std::vector<Rat> next(cur.c_.size() - 1, Rat(0));
        Rat carry(0);
        for (int i = cur.degree(); i >= 1; --i) {
            carry = cur.c_[i] + carry * c;
            next[i - 1] = carry;
        }
        cur = QPoly(std::move(next));
    }
    return out;
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a.divrem(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(Rat(1) / a.leading());  // monic
}

std::tuple<QPoly, QPoly, QPoly> QPoly::xgcd(const QPoly& a, const QPoly& b) {
    QPoly r0 = a, r1 = b;
    QPoly u0{Rat(1)}, u1, v0, v1{Rat(1)};
    while (!r1.is_zero()) {
        auto [q, r] = r0.divrem(r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        QPoly u2 = u0 - q * u1, v2 = v0 - q * v1;
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    if (r0.is_zero()) return {r0, u0, v0};
    Rat s = Rat(1) / r0.leading();
    return {r0.scaled(s), u0.scaled(s), v0.scaled(s)};
}

std::string QPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (rat_is_zero(c_[i])) continue;
        Rat c = c_[i];
        if (first) {
            if (sgn(c) < 0) { os << "-"; c = -c; }
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
            if (sgn(c) < 0) c = -c;
        }
        first = false;
        if (i == 0) {
            os << rat_str(c);
        } else {
            if (c != 1) os << rat_str(c) << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::vector<Rat> series_inverse(const std::vector<Rat>& f, int order) {
    if (f.empty() || rat_is_zero(f[0])) throw error("series_inverse: constant term is zero");
    std::vector<Rat> g(order + 1, Rat(0));
    Rat inv0 = Rat(1) / f[0];
    g[0] = inv0;
    for (int n = 1; n <= order; ++n) {
        Rat acc(0);
        for (int i = 1; i <= n && i < static_cast<int>(f.size()); ++i) acc += f[i] * g[n - i];
        g[n] = -acc * inv0;
    }
    return g;
}

}  // namespace qk
