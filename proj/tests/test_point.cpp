#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qk/expr.hpp"
#include "qk/point.hpp"

using namespace qk;

namespace {
ConfigPtr cfg3() {
    static ConfigPtr c = make_config(1, 3, 3);
    return c;
}
LambdaElem E3(const std::string& s) { return parse_lambda(s, cfg3()); }
RationalLoop L3(const std::string& s) { return parse_value(s, cfg3()).as_loop(); }
}  // namespace

TEST_CASE("j_function closed form") {
    auto c2 = make_config(1, 2, 2);
    TheoryParams trivial{LambdaElem(c2), LambdaElem(c2)};
    CHECK(loop_equal(j_function(trivial), parse_value("1-q", c2).as_loop()));

    TheoryParams p{LambdaElem(c2), parse_lambda("N1", c2)};
    RationalLoop expect = parse_value("(1-q) + N1 + N1^2/(2*(1-q)) + N2/(2*(1+q))", c2).as_loop();
    CHECK(loop_equal(j_function(p), expect));

    TheoryParams pq{parse_lambda("Q", c2), LambdaElem(c2)};
    CHECK(loop_equal(j_function(pq), parse_value("(1-q) + Q + Q^2/(2*(1-q))", c2).as_loop()));

    CHECK_THROWS_AS(TheoryParams(parse_lambda("1+Q", c2), LambdaElem(c2)), error);
}

TEST_CASE("[J]_+ = 1 - q + t + tau on a grid") {
    for (const char* tau : {"0", "Q", "N1", "Q+N1"}) {
        for (const char* t : {"0", "Q", "N1", "Q+N1"}) {
            TheoryParams p{E3(tau), E3(t)};
            SplitParts parts = project_split(j_function(p));
            RationalLoop expect = L3("1-q") + RationalLoop::from_lambda(E3(tau) + E3(t));
            REQUIRE(loop_equal(RationalLoop(parts.plus), expect));
        }
    }
}

TEST_CASE("metric_scalar") {
    auto c2 = make_config(1, 2, 2);
    CHECK(metric_scalar({LambdaElem(c2), LambdaElem(c2)}) == LambdaElem(c2, Rat(1)));
    CHECK(metric_scalar({LambdaElem(c2), parse_lambda("N1", c2)}) ==
          parse_lambda("1 + N1 + N2/2 + N1^2/2", c2));
    auto c1 = make_config(1, 1, 1);
    CHECK(metric_scalar({parse_lambda("Q", c1), LambdaElem(c1)}) == parse_lambda("1+Q", c1));
}

TEST_CASE("s_operators and unitarity") {
    auto c0 = make_config(1, 1, 1);
    SOperators triv = s_operators({LambdaElem(c0), LambdaElem(c0)});
    CHECK(loop_equal(triv.S, RationalLoop::one(c0)));
    CHECK(loop_equal(triv.S_inv, RationalLoop::one(c0)));

    TheoryParams p{E3("Q"), E3("N1")};
    SOperators ops = s_operators(p);
    CHECK(loop_equal(mul(ops.S, ops.S_inv), RationalLoop::one(cfg3())));
    CHECK(loop_equal(ops.S_inv, RationalLoop(j_function(p).num(), j_function(p).den() *
                                                  QPoly(std::vector<Rat>{Rat(1), Rat(-1)}))));
    // S^*(1/q) S(q) = 1 with S^* = G S across the metrics g = 1 and G
    LambdaElem G = metric_scalar(p);
    CHECK(loop_equal(mul(substitute_q_inverse(ops.S), ops.S).scaled(G), RationalLoop::one(cfg3())));
}

TEST_CASE("cone_point and the ruling through J") {
    TheoryParams p{E3("Q"), E3("N1")};
    LaurentPoly one = LaurentPoly::one(cfg3());
    CHECK(loop_equal(cone_point(E3("Q"), one, E3("N1")), j_function(p)));
    CHECK(loop_equal(cone_point(E3("0"), one, E3("0")), L3("1-q")));
    // linearity in y
    LaurentPoly y = parse_value("q^-1 + 2 + N1*q", cfg3()).as_loop().num();
    RationalLoop lhs = cone_point(E3("Q"), y, E3("N1")).scaled(rat(5, 3));
    RationalLoop rhs = cone_point(E3("Q"), y.scaled(rat(5, 3)), E3("N1"));
    CHECK(loop_equal(lhs, rhs));
}

TEST_CASE("cone_membership solves for tau and y") {
    TheoryParams p{E3("Q"), E3("N1")};
    ConeCertificate cert = cone_membership(j_function(p), E3("N1"));
    CHECK(cert.on_cone);
    CHECK(cert.tau == E3("Q"));
    CHECK(cert.y == LaurentPoly::one(cfg3()));
    CHECK(cert.residual.is_zero());
    CHECK(loop_equal(cone_point(cert.tau, cert.y, E3("N1")), j_function(p)));

    // a nontrivial ruling point: y with mixed exponents
    LaurentPoly y = parse_value("q^-1 + 1 + (N1+Q)*q^2", cfg3()).as_loop().num();
    RationalLoop f = cone_point(E3("N1"), y, E3("Q"));
    ConeCertificate c2 = cone_membership(f, E3("Q"));
    CHECK(c2.on_cone);
    CHECK(c2.tau == E3("N1"));
    CHECK(c2.y == y);

    // string flow shifts tau
    RationalLoop shifted = string_flow(j_function(p), E3("N1+Q"));
    ConeCertificate c3 = cone_membership(shifted, E3("N1"));
    CHECK(c3.on_cone);
    CHECK(c3.tau == E3("Q") + E3("N1+Q"));

    // no dilaton structure: f/(1-q) keeps a pole at filtration degree 0
    ConeCertificate bad = cone_membership(L3("1+q"), E3("0"));
    CHECK_FALSE(bad.on_cone);

    // wrong permutable parameter: J(0,N1) does not lie on L_0
    ConeCertificate wrong = cone_membership(j_function({E3("0"), E3("N1")}), E3("0"));
    CHECK_FALSE(wrong.on_cone);

    // degenerate: y0(1) = 0
    ConeCertificate degen = cone_membership(L3("(1-q)*(1-q)"), E3("0"));
    CHECK_FALSE(degen.on_cone);
    CHECK(degen.message.find("degenerate") != std::string::npos);
}

TEST_CASE("string_flow") {
    TheoryParams p{E3("0"), E3("N1")};
    RationalLoop j = j_function(p);
    CHECK(loop_equal(string_flow(j, E3("0")), j));
    CHECK(loop_equal(string_flow(j, E3("Q")), j_function({E3("Q"), E3("N1")})));
    CHECK(loop_equal(string_flow(string_flow(j, E3("Q")), E3("N1")),
                     string_flow(j, E3("Q+N1"))));
    CHECK_THROWS_AS(string_flow(j, E3("1")), error);
}

TEST_CASE("f0 reconstruction") {
    CHECK(f0_reconstruct(LambdaElem(cfg3())).is_zero());
    LambdaElem f0 = f0_reconstruct(E3("N1"));
    CHECK(f0.degree_part(1).is_zero());
    CHECK(f0.degree_part(2).is_zero());
    CHECK(f0.degree_part(3) == E3("N1^3/6 + N1*N2/2 + N3/3"));
    CHECK(f0.degree_part(3) == sym_trace_three_point(E3("N1")));
}

TEST_CASE("symmetrized trace oracles") {
    CHECK(sym_trace_three_point(E3("N1")) == E3("(N1^3 + 3*N1*N2 + 2*N3)/6"));
    CHECK(sym_trace_three_point(LambdaElem(cfg3())).is_zero());
    RationalLoop two = sym_trace_two_point_descendant(E3("N1"));
    CHECK(loop_equal(two, L3("N1^2/(2*(1-q)) + N2/(2*(1+q))")));
    // matches the degree-2 tail of J(0, N1)
    RationalLoop j = j_function({E3("0"), E3("N1")});
    RationalLoop tail = (j - L3("1-q") - RationalLoop::from_lambda(E3("N1"))).degree_part(2);
    CHECK(loop_equal(tail, two.degree_part(2)));
}

TEST_CASE("tangent parameter and its inverse") {
    CHECK(tangent_parameter(E3("N1")) == E3("N1 + N2/4 + N3/9"));
    CHECK(tangent_parameter_inverse(E3("N1 + N2/4 + N3/9")) == E3("N1"));
    CHECK(tangent_parameter(LambdaElem(cfg3())).is_zero());
    for (const char* t : {"Q", "N1", "Q+N1", "N2-Q^2"}) {
        LambdaElem x = E3(t);
        REQUIRE(tangent_parameter_inverse(tangent_parameter(x)) == x);
        REQUIRE(tangent_parameter(tangent_parameter_inverse(x)) == x);
    }
    CHECK_THROWS_AS(tangent_parameter(E3("1+N1")), error);
    CHECK_THROWS_AS(tangent_parameter_inverse(E3("2")), error);
}
