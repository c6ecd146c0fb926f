#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qk/rational.hpp"

namespace qk {

// Dense polynomial in q over the exact rationals. Coefficients ascending;
// no trailing zeros; the zero polynomial has an empty coefficient vector.
class QPoly {
  public:
    QPoly() = default;
    QPoly(const Rat& constant);
    explicit QPoly(std::vector<Rat> coeffs);
    static QPoly monomial(int degree, const Rat& c = Rat(1));

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    Rat coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rat(0); }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    Rat operator()(const Rat& x) const;

    QPoly operator-() const;
    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    QPoly scaled(const Rat& c) const;
    bool operator==(const QPoly& o) const { return c_ == o.c_; }
    bool operator!=(const QPoly& o) const { return !(*this == o); }

    // Euclidean division by a nonzero divisor: *this == quot*d + rem,
    // deg rem < deg d.
    std::pair<QPoly, QPoly> divrem(const QPoly& d) const;
    QPoly divide_exact(const QPoly& d) const;  // throws if remainder nonzero

    // Number of times (q - c) divides, deflating as it goes.
    int deflate_at(const Rat& c, QPoly* deflated = nullptr) const;

    QPoly pow(int n) const;
    QPoly compose_power(int k) const;  // p(q^k)
    QPoly reversed() const;            // q^deg * p(1/q)

    // Coefficients of p(c + u) in u, up to u^order.
    std::vector<Rat> taylor_at(const Rat& c, int order) const;

    static QPoly gcd(QPoly a, QPoly b);  // monic (or zero)
    // Extended Euclid: returns (g, u, v) with u*a + v*b == g, g monic.
    static std::tuple<QPoly, QPoly, QPoly> xgcd(const QPoly& a, const QPoly& b);

    std::string str(const std::string& var = "q") const;

  private:
    void strip();
    std::vector<Rat> c_;
};

// Multiplicative inverse of a series 1/f to the given order; f must have
// nonzero constant term. Returned vector has order+1 entries.
std::vector<Rat> series_inverse(const std::vector<Rat>& f, int order);

}  // namespace qk
