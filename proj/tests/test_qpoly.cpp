#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qk/cyclo.hpp"
#include "qk/qpoly.hpp"

using namespace qk;

namespace {
QPoly rand_poly(std::mt19937_64& g, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg), num(-5, 5), den(1, 3);
    std::vector<Rat> c(deg(g) + 1, Rat(0));
    for (auto& x : c) x = rat(num(g), den(g));
    return QPoly(std::move(c));
}
}  // namespace

TEST_CASE("division, gcd, xgcd") {
    std::mt19937_64 g(99);
    for (int i = 0; i < 500; ++i) {
        QPoly a = rand_poly(g, 6), b = rand_poly(g, 4);
        if (b.is_zero()) continue;
        auto [q, r] = a.divrem(b);
        REQUIRE(q * b + r == a);
        REQUIRE(r.degree() < b.degree());
        auto [gg, u, v] = QPoly::xgcd(a, b);
        REQUIRE(u * a + v * b == gg);
        if (!gg.is_zero()) {
            REQUIRE(a.divrem(gg).second.is_zero());
            REQUIRE(b.divrem(gg).second.is_zero());
            REQUIRE(gg.leading() == 1);
        }
        REQUIRE(QPoly::gcd(a, b) == gg);
    }
}

TEST_CASE("taylor shift and series inverse") {
    // p = (q-2)^2 (q+1)
    QPoly p = QPoly(std::vector<Rat>{Rat(-2), Rat(1)}).pow(2) * QPoly(std::vector<Rat>{Rat(1), Rat(1)});
    auto t = p.taylor_at(Rat(2), 3);
    CHECK(t[0] == 0);
    CHECK(t[1] == 0);
    CHECK(t[2] == 3);
    CHECK(t[3] == 1);
    QPoly red;
    CHECK(p.deflate_at(Rat(2), &red) == 2);
    CHECK(red == QPoly(std::vector<Rat>{Rat(1), Rat(1)}));
    auto inv = series_inverse({Rat(1), Rat(-1)}, 4);
    for (int i = 0; i <= 4; ++i) CHECK(inv[i] == 1);
    CHECK_THROWS_AS(series_inverse({Rat(0), Rat(1)}, 2), error);
}

TEST_CASE("reversal and power substitution") {
    QPoly p(std::vector<Rat>{Rat(1), Rat(0), Rat(-3), Rat(2)});
    CHECK(p.reversed() == QPoly(std::vector<Rat>{Rat(2), Rat(-3), Rat(0), Rat(1)}));
    CHECK(p.compose_power(2).degree() == 6);
    CHECK(p.compose_power(2)(Rat(3)) == p(Rat(9)));
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == QPoly(std::vector<Rat>{Rat(-1), Rat(1)}));
    CHECK(cyclotomic_polynomial(2) == QPoly(std::vector<Rat>{Rat(1), Rat(1)}));
    CHECK(cyclotomic_polynomial(4) == QPoly(std::vector<Rat>{Rat(1), Rat(0), Rat(1)}));
    CHECK(cyclotomic_polynomial(6) == QPoly(std::vector<Rat>{Rat(1), Rat(-1), Rat(1)}));
    CHECK(cyclotomic_polynomial(12) == QPoly(std::vector<Rat>{Rat(1), Rat(0), Rat(-1), Rat(0), Rat(1)}));
    for (int m : {6, 8, 12}) {
        QPoly prod{Rat(1)};
        for (int d = 1; d <= m; ++d)
            if (m % d == 0) prod = prod * cyclotomic_polynomial(d);
        std::vector<Rat> c(m + 1, Rat(0));
        c[0] = -1;
        c[m] = 1;
        CHECK(prod == QPoly(std::move(c)));
    }
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(9) == 6);
}
