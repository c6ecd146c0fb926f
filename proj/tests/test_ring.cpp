#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qk/expr.hpp"
#include "qk/ring.hpp"
#include "qk/verify.hpp"

using namespace qk;

namespace {
LambdaElem gen(const ConfigPtr& cfg, const std::string& name, int power = 1) {
    return LambdaElem::generator(cfg, cfg->generator_index(name), power);
}
}  // namespace

TEST_CASE("config validation") {
    CHECK_THROWS_AS(make_config(0, 0, 4), error);
    CHECK_THROWS_AS(make_config(1, 2, 0), error);
    RingConfig bad(1, 4, 4);
    bad.weights[1 + 1] = 7;  // weight(N2) != 2 * weight(N1)
    CHECK_THROWS_AS(bad.validate(), error);
    CHECK_NOTHROW(RingConfig(1, 4, 4).validate());
}

TEST_CASE("basic arithmetic and truncation") {
    auto cfg = make_config(1, 2, 2);
    LambdaElem n1 = gen(cfg, "N1"), q = gen(cfg, "Q"), one(cfg, Rat(1));
    CHECK(n1 * n1 == gen(cfg, "N1", 2));
    CHECK((one + n1) * (one - n1) == one - gen(cfg, "N1", 2));
    auto cfg1 = make_config(1, 1, 1);
    CHECK((gen(cfg1, "Q") * gen(cfg1, "N1")).is_zero());  // degree 2 truncated at D=1
    CHECK((q * n1).filtration_degree() == 2);             // survives at D=2
    // no stored monomial above the truncation degree
    LambdaElem big = (one + n1 + q) * (one + n1 + q) * (one + n1 + q);
    for (const auto& [m, c] : big.terms()) CHECK(monomial_weight(m, *cfg) <= cfg->truncation);
    CHECK_THROWS_AS(n1 + LambdaElem(make_config(2, 2, 2), Rat(1)), error);  // config mismatch
}

TEST_CASE("adams action on generators") {
    auto cfg = make_config(1, 4, 4);
    LambdaElem n1 = gen(cfg, "N1"), q = gen(cfg, "Q");
    CHECK(adams(2, n1 + q) == gen(cfg, "N2") + gen(cfg, "Q", 2));
    CHECK(adams(1, n1 + q * q) == n1 + q * q);
    auto cfg6 = make_config(1, 6, 6);
    CHECK(adams(2, adams(3, gen(cfg6, "N1"))) == gen(cfg6, "N6"));
    CHECK(adams(6, gen(cfg6, "N1")) == gen(cfg6, "N6"));
    CHECK_THROWS_AS(adams(0, n1), error);
}

TEST_CASE("adams cutoff handling") {
    // N2 would be needed at weight 2 <= D, but sym stops at N1: loud error
    auto small = make_config(1, 1, 4);
    CHECK_THROWS_WITH_AS(adams(2, gen(small, "N1")), "adams: cutoff too small for N2", error);
    // whole image exceeds the truncation degree: silently zero
    auto tight = make_config(1, 1, 1);
    CHECK(adams(2, gen(tight, "N1")).is_zero());
    auto cfg = make_config(1, 4, 4);
    CHECK(adams(3, gen(cfg, "N2")).is_zero());  // N6 at weight 6 > D=4
}

TEST_CASE("filtration degree") {
    auto cfg = make_config(1, 4, 4);
    CHECK((gen(cfg, "N1") + gen(cfg, "N2")).filtration_degree() == 1);
    CHECK(LambdaElem(cfg).filtration_degree() == kInfiniteDegree);
    LambdaElem n1 = gen(cfg, "N1");
    CHECK(adams(2, n1).filtration_degree() == 2);
    CHECK(adams(2, n1).filtration_degree() > n1.filtration_degree());
}

TEST_CASE("exp and log") {
    auto cfg = make_config(1, 2, 2);
    LambdaElem n1 = gen(cfg, "N1"), one(cfg, Rat(1));
    CHECK(exp_filtered(n1) == one + n1 + gen(cfg, "N1", 2).scaled(rat(1, 2)));
    CHECK(exp_filtered(LambdaElem(cfg)) == one);
    auto cfg4 = make_config(1, 4, 4);
    LambdaElem x = gen(cfg4, "Q") + gen(cfg4, "N2");
    CHECK(log_filtered(exp_filtered(x)) == x);
    CHECK_THROWS_AS(exp_filtered(one + n1), error);
    CHECK_THROWS_AS(log_filtered(n1), error);
}

TEST_CASE("unit inverse") {
    auto cfg = make_config(1, 3, 3);
    LambdaElem u = LambdaElem(cfg, rat(2)) + gen(cfg, "N1");
    CHECK(u * inverse_unit(u) == LambdaElem(cfg, Rat(1)));
    CHECK_THROWS_AS(inverse_unit(gen(cfg, "N1")), error);
}

TEST_CASE("ring axioms and adams homomorphism on random inputs") {
    auto cfg = make_config(2, 4, 4);
    Rng rng(411);
    LambdaElem one(cfg, Rat(1));
    for (int i = 0; i < 1000; ++i) {
        LambdaElem a = random_lambda(rng, cfg), b = random_lambda(rng, cfg), c = random_lambda(rng, cfg);
        REQUIRE(a + b == b + a);
        REQUIRE(a * b == b * a);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE(a * one == a);
        REQUIRE((a - a).is_zero());
        int k = 2 + (i % 3);
        REQUIRE(adams(k, a * b) == adams(k, a) * adams(k, b));
        REQUIRE(adams(k, a + b) == adams(k, a) + adams(k, b));
        REQUIRE(adams(2, adams(2, a)) == adams(4, a));
        // degree superadditivity
        if (!a.is_zero() && !b.is_zero() && !(a * b).is_zero())
            REQUIRE((a * b).filtration_degree() >= a.filtration_degree() + b.filtration_degree());
        // adams strictly increases positive filtration
        LambdaElem pos = random_lambda(rng, cfg, 1);
        if (!pos.is_zero() && !adams(k, pos).is_zero())
            REQUIRE(adams(k, pos).filtration_degree() > pos.filtration_degree());
    }
}

TEST_CASE("exp is a homomorphism from addition to multiplication") {
    auto cfg = make_config(1, 4, 4);
    Rng rng(412);
    for (int i = 0; i < 300; ++i) {
        LambdaElem a = random_lambda(rng, cfg, 1), b = random_lambda(rng, cfg, 1);
        REQUIRE(exp_filtered(a + b) == exp_filtered(a) * exp_filtered(b));
        REQUIRE(log_filtered(exp_filtered(a)) == a);
    }
}
