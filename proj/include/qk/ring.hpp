#pragma once

#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qk/rational.hpp"

namespace qk {

constexpr int kInfiniteDegree = std::numeric_limits<int>::max();

// Truncated lambda-ring Lambda = Q[[Q_1..Q_n; N_1..N_R]] / (weighted degree > D).
// Generator indices: [0, novikov) are the Novikov variables Q_i, then
// [novikov, novikov+sym) are the symmetric-function generators N_r.
// Adams operations act by Q_i^d -> Q_i^{kd}, N_r -> N_{kr}.
struct RingConfig {
    int novikov = 1;
    int sym = 0;
    int truncation = 4;           // D >= 1
    std::vector<int> weights;     // one per generator, all >= 1

    RingConfig() = default;
    RingConfig(int novikov_count, int sym_cutoff, int truncation_degree);

    int generator_count() const { return novikov + sym; }
    bool is_novikov(int g) const { return g < novikov; }
    int sym_index(int g) const { return g - novikov + 1; }  // r of N_r
    std::string generator_name(int g) const;
    int generator_index(const std::string& name) const;     // -1 if unknown

    // Checks D >= 1, weights >= 1, and the Adams compatibility
    // weight(N_{kr}) == k * weight(N_r) whenever both generators exist.
    void validate() const;

    bool operator==(const RingConfig& o) const = default;
};

using ConfigPtr = std::shared_ptr<const RingConfig>;

ConfigPtr make_config(int novikov_count, int sym_cutoff, int truncation_degree);

// Exponent vector over the generators of a RingConfig.
using Monomial = std::vector<int>;

inline int monomial_weight(const Monomial& m, const RingConfig& cfg) {
    long w = 0;
    for (size_t i = 0; i < m.size(); ++i) w += static_cast<long>(m[i]) * cfg.weights[i];
    return static_cast<int>(w);
}

namespace detail {
inline bool compatible(const ConfigPtr& a, const ConfigPtr& b) {
    if (!a || !b || a == b) return true;
    return *a == *b;
}
template <class S>
bool scalar_is_zero(const S& s) {
    return s == S{};
}
inline bool scalar_is_zero(const Rat& s) { return rat_is_zero(s); }
}  // namespace detail

// Element of the truncated lambda-ring with coefficients in S (exact
// rationals for the main theory; cyclotomic numbers for the adelic
// expansions). Values are immutable in spirit: every operation returns a
// fresh element, no stored monomial exceeds the truncation degree, and no
// zero coefficients are stored.
template <class S>
class BasicLambda {
  public:
    BasicLambda() = default;  // zero with no ring attached
    explicit BasicLambda(ConfigPtr cfg) : cfg_(std::move(cfg)) {}
    BasicLambda(ConfigPtr cfg, S constant) : cfg_(std::move(cfg)) {
        insert(Monomial(cfg_->generator_count(), 0), std::move(constant));
    }

    static BasicLambda generator(ConfigPtr cfg, int index, int power = 1) {
        if (index < 0 || index >= cfg->generator_count())
            throw error("generator index out of range");
        if (power < 0) throw error("negative generator power");
        BasicLambda x(cfg);
        Monomial m(cfg->generator_count(), 0);
        m[index] = power;
        x.insert(std::move(m), S(Rat(1)));
        return x;
    }

    const std::map<Monomial, S>& terms() const { return terms_; }
    const ConfigPtr& config() const { return cfg_; }
    bool is_zero() const { return terms_.empty(); }

    S constant_part() const {
        if (terms_.empty()) return S{};
        auto it = terms_.begin();
        for (int e : it->first)
            if (e != 0) return S{};
        return it->second;
    }

    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        for (int e : terms_.begin()->first)
            if (e != 0) return false;
        return true;
    }

    int filtration_degree() const {
        if (terms_.empty()) return kInfiniteDegree;
        int best = kInfiniteDegree;
        for (const auto& [m, c] : terms_) best = std::min(best, monomial_weight(m, *cfg_));
        return best;
    }

    BasicLambda degree_part(int d) const {
        BasicLambda out(cfg_);
        for (const auto& [m, c] : terms_)
            if (monomial_weight(m, *cfg_) == d) out.terms_.emplace(m, c);
        return out;
    }

    BasicLambda operator-() const {
        BasicLambda out(cfg_);
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, S{} - c);
        return out;
    }

    BasicLambda& operator+=(const BasicLambda& o) {
        merge_config(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    BasicLambda& operator-=(const BasicLambda& o) {
        merge_config(o);
        for (const auto& [m, c] : o.terms_) add_term(m, S{} - c);
        return *this;
    }
    friend BasicLambda operator+(BasicLambda a, const BasicLambda& b) { return a += b; }
    friend BasicLambda operator-(BasicLambda a, const BasicLambda& b) { return a -= b; }

    friend BasicLambda operator*(const BasicLambda& a, const BasicLambda& b) {
        if (!detail::compatible(a.cfg_, b.cfg_)) throw error("ring config mismatch");
        ConfigPtr cfg = a.cfg_ ? a.cfg_ : b.cfg_;
        BasicLambda out(cfg);
        if (!cfg) return out;
        const int D = cfg->truncation;
        for (const auto& [ma, ca] : a.terms_) {
            const int wa = monomial_weight(ma, *cfg);
            for (const auto& [mb, cb] : b.terms_) {
                if (wa + monomial_weight(mb, *cfg) > D) continue;
                Monomial m(ma);
                for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
                out.add_term(m, ca * cb);
            }
        }
        return out;
    }

    BasicLambda scaled(const S& s) const {
        BasicLambda out(cfg_);
        if (detail::scalar_is_zero(s)) return out;
        for (const auto& [m, c] : terms_) out.insert(m, c * s);
        return out;
    }

    bool operator==(const BasicLambda& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        return terms_ == o.terms_;
    }
    bool operator!=(const BasicLambda& o) const { return !(*this == o); }

    // Total ordering for use as a map key (config assumed shared).
    bool operator<(const BasicLambda& o) const { return terms_ < o.terms_; }

    void insert(Monomial m, S c) {
        if (detail::scalar_is_zero(c)) return;
        if (cfg_ && monomial_weight(m, *cfg_) > cfg_->truncation) return;
        add_term(std::move(m), std::move(c));
    }

  private:
    void merge_config(const BasicLambda& o) {
        if (!detail::compatible(cfg_, o.cfg_)) throw error("ring config mismatch");
        if (!cfg_) cfg_ = o.cfg_;
    }
    void add_term(Monomial m, S c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!detail::scalar_is_zero(c)) terms_.emplace(std::move(m), std::move(c));
        } else {
            it->second = it->second + c;
            if (detail::scalar_is_zero(it->second)) terms_.erase(it);
        }
    }

    ConfigPtr cfg_;
    std::map<Monomial, S> terms_;
};

using LambdaElem = BasicLambda<Rat>;

template <class S>
int filtration_degree(const BasicLambda<S>& a) {
    return a.filtration_degree();
}

// Adams operation Psi^k: Q_i^d -> Q_i^{kd}, N_r -> N_{kr}; coefficients are
// untouched. A term whose image exceeds the truncation degree is dropped;
// a surviving term that needs N_{kr} beyond the cutoff is an error.
template <class S>
BasicLambda<S> adams(int k, const BasicLambda<S>& a) {
    if (k < 1) throw error("adams: k must be >= 1");
    if (k == 1 || a.is_zero()) return a;
    const ConfigPtr& cfg = a.config();
    BasicLambda<S> out(cfg);
    const int D = cfg->truncation;
    for (const auto& [m, c] : a.terms()) {
        long w = static_cast<long>(k) * monomial_weight(m, *cfg);
        if (w > D) continue;  // truncated away, exact zero
        Monomial target(cfg->generator_count(), 0);
        for (int g = 0; g < cfg->generator_count(); ++g) {
            if (m[g] == 0) continue;
            if (cfg->is_novikov(g)) {
                target[g] += k * m[g];
            } else {
                int r = cfg->sym_index(g);
                long kr = static_cast<long>(k) * r;
                if (kr > cfg->sym) throw error("adams: cutoff too small for N" + std::to_string(kr));
                target[cfg->novikov + static_cast<int>(kr) - 1] += m[g];
            }
        }
        out.insert(std::move(target), c);
    }
    return out;
}

// exp on the positive-filtration part: the series terminates because a^j has
// filtration degree >= j.
template <class S>
BasicLambda<S> exp_filtered(const BasicLambda<S>& a) {
    if (a.is_zero()) {
        if (!a.config()) throw error("exp_filtered: element carries no ring");
        return BasicLambda<S>(a.config(), S(Rat(1)));
    }
    if (a.filtration_degree() < 1) throw error("exp_filtered: argument must have positive filtration degree");
    const int D = a.config()->truncation;
    BasicLambda<S> out(a.config(), S(Rat(1)));
    BasicLambda<S> power = out;
    Rat factorial(1);
    for (int j = 1; j <= D; ++j) {
        power = power * a;
        if (power.is_zero()) break;
        factorial *= j;
        out += power.scaled(S(Rat(1) / factorial));
    }
    return out;
}

// Inverse of exp_filtered on 1 + Lambda_+.
template <class S>
BasicLambda<S> log_filtered(const BasicLambda<S>& u) {
    if (!u.config()) throw error("log_filtered: element carries no ring");
    BasicLambda<S> v = u - BasicLambda<S>(u.config(), S(Rat(1)));
    if (!v.is_zero() && v.filtration_degree() < 1)
        throw error("log_filtered: argument must be 1 + positive filtration");
    const int D = u.config()->truncation;
    BasicLambda<S> out(u.config());
    BasicLambda<S> power(u.config(), S(Rat(1)));
    for (int j = 1; j <= D; ++j) {
        power = power * v;
        if (power.is_zero()) break;
        Rat c(j % 2 == 1 ? 1 : -1, j);
        c.canonicalize();
        out += power.scaled(S(c));
    }
    return out;
}

// Inverse of a unit c + (positive filtration), via the geometric series.
template <class S>
BasicLambda<S> inverse_unit(const BasicLambda<S>& u) {
    if (!u.config()) throw error("inverse_unit: element carries no ring");
    S c0 = u.constant_part();
    if (detail::scalar_is_zero(c0)) throw error("inverse_unit: not a unit (zero constant term)");
    S c0inv = S(Rat(1)) / c0;
    BasicLambda<S> v = (u - BasicLambda<S>(u.config(), c0)).scaled(S{} - c0inv);  // -(u-c0)/c0
    const int D = u.config()->truncation;
    BasicLambda<S> out(u.config(), S(Rat(1)));
    BasicLambda<S> power(u.config(), S(Rat(1)));
    for (int j = 1; j <= D; ++j) {
        power = power * v;
        if (power.is_zero()) break;
        out += power;
    }
    return out.scaled(c0inv);
}

template <class S>
BasicLambda<S> pow(const BasicLambda<S>& a, int n) {
    if (n < 0) return pow(inverse_unit(a), -n);
    BasicLambda<S> out(a.config(), S(Rat(1)));
    for (int i = 0; i < n; ++i) out = out * a;
    return out;
}

}  // namespace qk
