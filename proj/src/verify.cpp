#include "qk/verify.hpp"

#include <algorithm>

#include "qk/expr.hpp"

namespace qk {

namespace {

QPoly one_minus_q() { return QPoly(std::vector<Rat>{Rat(1), Rat(-1)}); }

std::vector<std::pair<std::string, std::string>> grid_params(const TheoryParams& p) {
    return {{"tau", lambda_str(p.tau)},
            {"t", lambda_str(p.t)},
            {"D", std::to_string(p.config()->truncation)}};
}

// First differing series coefficient of two loops (window at q = 0).
std::optional<Witness> loop_mismatch(const RationalLoop& got, const RationalLoop& expected) {
    RationalLoop diff = got - expected;
    if (diff.is_zero()) return std::nullopt;
    int e = diff.num().min_exp();  // valuation at q=0 since den(0) = 1
    KVector g = expand(got, ExpansionPoint::zero(), e, e).coeff(e);
    KVector x = expand(expected, ExpansionPoint::zero(), e, e).coeff(e);
    for (int i = 0; i < g.rank(); ++i) {
        LambdaElem d = g[i] - x[i];
        if (d.is_zero()) continue;
        const Monomial& mono = d.terms().begin()->first;
        Witness w;
        w.where = "q^" + std::to_string(e) + (g.rank() > 1 ? " [coord " + std::to_string(i) + "]" : "");
        w.q_exponent = e;
        w.monomial = mono.empty() || monomial_str(mono, *d.config()).empty() ? "1" : monomial_str(mono, *d.config());
        Rat ge(0), xe(0);
        auto it = g[i].terms().find(mono);
        if (it != g[i].terms().end()) ge = it->second;
        auto jt = x[i].terms().find(mono);
        if (jt != x[i].terms().end()) xe = jt->second;
        w.got = rat_str(ge);
        w.expected = rat_str(xe);
        return w;
    }
    return std::nullopt;
}

std::optional<Witness> lambda_mismatch(const LambdaElem& got, const LambdaElem& expected) {
    LambdaElem d = got - expected;
    if (d.is_zero()) return std::nullopt;
    const Monomial& mono = d.terms().begin()->first;
    Witness w;
    w.where = "q^0";
    w.monomial = monomial_str(mono, *d.config()).empty() ? "1" : monomial_str(mono, *d.config());
    Rat ge(0), xe(0);
    if (auto it = got.terms().find(mono); it != got.terms().end()) ge = it->second;
    if (auto it = expected.terms().find(mono); it != expected.terms().end()) xe = it->second;
    w.got = rat_str(ge);
    w.expected = rat_str(xe);
    return w;
}

Witness bipoly_witness(const BiPoly& diff, const std::string& expected) {
    const auto& [key, c] = *diff.terms().begin();
    Witness w;
    w.where = "x^" + std::to_string(key.first) + "*y^" + std::to_string(key.second);
    w.q_exponent = key.first;
    w.monomial = c.is_zero() ? "1" : (monomial_str(c.terms().begin()->first, *c.config()).empty()
                                          ? "1"
                                          : monomial_str(c.terms().begin()->first, *c.config()));
    w.got = c.is_zero() ? "0" : rat_str(c.terms().begin()->second);
    w.expected = expected;
    return w;
}

RationalLoop drop_one_term(const RationalLoop& f) {
    LaurentPoly n = f.num();
    if (n.terms().size() > 1) {
        n.set_coeff(n.max_exp(), KVector(n.rank()));
        return RationalLoop(n, f.den());
    }
    return -f;
}

BiRational bi_one(const ConfigPtr& cfg) {
    BiPoly one;
    one.add_term(0, 0, LambdaElem(cfg, Rat(1)));
    return {one, QPoly(Rat(1)), QPoly(Rat(1))};
}

BiRational wdvv_kernel_raw(const RationalLoop& s_at_inverse_q, const LambdaElem& g_metric,
                           const ConfigPtr& cfg) {
    BiRational kx = BiRational::from_loop_x(s_at_inverse_q);
    BiRational ky = BiRational::from_loop_y(s_at_inverse_q);
    BiRational k = bi_mul(kx, ky);
    k.num = k.num.scaled(g_metric);
    return bi_sub(k, bi_one(cfg));
}

}  // namespace

int Rng::uniform(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(gen);
}

LambdaElem random_lambda(Rng& rng, const ConfigPtr& cfg, int min_fdeg) {
    LambdaElem out(cfg);
    const int gens = cfg->generator_count();
    const int terms = rng.uniform(1, 3);
    for (int i = 0; i < terms; ++i) {
        Monomial m(gens, 0);
        int factors = rng.uniform(min_fdeg > 0 ? 1 : 0, 2);
        for (int j = 0; j < factors; ++j) m[rng.uniform(0, gens - 1)] += 1;
        if (min_fdeg > 0 && monomial_weight(m, *cfg) < min_fdeg) m[0] += min_fdeg;
        if (monomial_weight(m, *cfg) > cfg->truncation) continue;
        Rat c = rat(rng.uniform(-6, 6), rng.uniform(1, 4));
        LambdaElem term(cfg);
        term.insert(std::move(m), c);
        out += term;
    }
    return out;
}

LaurentPoly random_laurent(Rng& rng, const ConfigPtr& cfg, int rank) {
    LaurentPoly out(rank);
    const int terms = rng.uniform(1, 4);
    for (int i = 0; i < terms; ++i) {
        int e = rng.uniform(-3, 3);
        KVector v(rank);
        for (int r = 0; r < rank; ++r)
            v[r] = rng.uniform(0, 2) ? random_lambda(rng, cfg) : LambdaElem(cfg);
        KVector cur = out.coeff(e) + v;
        out.set_coeff(e, cur);
    }
    return out;
}

RationalLoop random_loop(Rng& rng, const ConfigPtr& cfg, int rank) {
    // plus part
    RationalLoop out(RationalLoop(random_laurent(rng, cfg, rank)));
    // proper part with cyclotomic poles
    QPoly den{Rat(1)};
    const int factors = rng.uniform(1, 2);
    static const int conductors[] = {1, 2, 3, 4, 6};
    for (int i = 0; i < factors; ++i) den = den * cyclotomic_polynomial(conductors[rng.uniform(0, 4)]);
    LaurentPoly numer(rank);
    for (int i = 0; i < den.degree(); ++i) {
        KVector v(rank);
        bool any = false;
        for (int r = 0; r < rank; ++r) {
            if (rng.uniform(0, 2) == 0) continue;
            v[r] = random_lambda(rng, cfg);
            any = true;
        }
        if (any) numer.set_coeff(i, v);
    }
    if (!numer.is_zero()) out = out + RationalLoop(numer, den);
    return out;
}

// ------------------------------------------------------------------ sstar_s

IdentityReport check_sstar_s(const TheoryParams& p, Corruption c) {
    IdentityReport rep;
    rep.name = "sstar_s";
    rep.params = grid_params(p);
    SOperators ops = (c == Corruption::flip_t_sign) ? s_operators_t_sign_flipped(p) : s_operators(p);
    RationalLoop s = ops.S;
    if (c == Corruption::drop_term) s = drop_one_term(s);
    LambdaElem g = metric_scalar(p);
    RationalLoop lhs = mul(substitute_q_inverse(s), s).scaled(g);
    RationalLoop one = RationalLoop::one(p.config());
    if (auto w = loop_mismatch(lhs, one)) {
        rep.pass = false;
        rep.witness = w;
        return rep;
    }
    // S^{-1}(q) = S^*(q^{-1}) = G S(1/q)
    RationalLoop claim = substitute_q_inverse(s).scaled(g);
    if (auto w = loop_mismatch(claim, ops.S_inv)) {
        rep.pass = false;
        rep.witness = w;
    }
    return rep;
}

// -------------------------------------------------------------- wdvv kernel

IdentityReport check_wdvv_kernel(const TheoryParams& p, Corruption c) {
    IdentityReport rep;
    rep.name = "wdvv_kernel";
    rep.params = grid_params(p);
    SOperators ops = (c == Corruption::flip_t_sign) ? s_operators_t_sign_flipped(p) : s_operators(p);
    LambdaElem g = metric_scalar(p);
    BiRational k = wdvv_kernel_raw(substitute_q_inverse(ops.S), g, p.config());
    BiDivision div = divide_one_minus_xy(k);
    if (!div.remainder.is_zero()) {
        rep.pass = false;
        rep.witness = bipoly_witness(div.remainder, "0 (kernel must vanish on xy = 1)");
        return rep;
    }
    BiRational t = div.quotient, ts = t.swapped();
    if (!bi_equal(t, ts)) {
        BiPoly diff = t.num.mul_xpoly(ts.den_x).mul_ypoly(ts.den_y) - ts.num.mul_xpoly(t.den_x).mul_ypoly(t.den_y);
        rep.pass = false;
        rep.witness = bipoly_witness(diff, "symmetric quotient");
    }
    return rep;
}

// -------------------------------------------------------------------- w_form

LambdaElem w_form(const LaurentPoly& a, const LaurentPoly& b, const TheoryParams& p) {
    SOperators ops = s_operators(p);
    LambdaElem g = metric_scalar(p);
    BiRational k;
    {
        BiRational kx = BiRational::from_loop_x(ops.S);
        BiRational ky = BiRational::from_loop_y(ops.S);
        k = bi_mul(kx, ky);
        k.num = k.num.scaled(g);
        k = bi_sub(k, bi_one(p.config()));
    }
    BiDivision div = divide_one_minus_xy(k);
    if (!div.remainder.is_zero()) throw error("w_form: kernel does not vanish on xy = 1");
    BiRational integrand = div.quotient;
    integrand.num = integrand.num * BiPoly::from_x(a) * BiPoly::from_y(b);
    RationalLoop inner = residues_y(integrand);
    KVector outer = residues_zero_infinity(inner);
    return -outer[0];
}

IdentityReport check_w_form(const TheoryParams& p, std::uint64_t seed, int random_pairs) {
    IdentityReport rep;
    rep.name = "w_form";
    rep.params = grid_params(p);
    rep.params.emplace_back("seed", std::to_string(seed));
    LaurentPoly one = LaurentPoly::one(p.config());
    LambdaElem w11 = w_form(one, one, p);
    LambdaElem expected = metric_scalar(p) - LambdaElem(p.config(), Rat(1));
    if (auto w = lambda_mismatch(w11, expected)) {
        rep.pass = false;
        rep.witness = w;
        rep.witness->where = "W(1,1) vs G-1";
        return rep;
    }
    Rng rng(seed);
    for (int i = 0; i < random_pairs; ++i) {
        LaurentPoly a = random_laurent(rng, p.config(), 1);
        LaurentPoly b = random_laurent(rng, p.config(), 1);
        LambdaElem wab = w_form(a, b, p), wba = w_form(b, a, p);
        if (auto w = lambda_mismatch(wab, wba)) {
            rep.pass = false;
            rep.witness = w;
            rep.witness->where = "symmetry, case " + std::to_string(i);
            return rep;
        }
    }
    return rep;
}

// ------------------------------------------------------------ ancestor shift

IdentityReport check_ancestor_shift(const TheoryParams& p, Corruption c) {
    IdentityReport rep;
    rep.name = "ancestor_shift";
    rep.params = grid_params(p);
    SOperators ops = (c == Corruption::flip_t_sign) ? s_operators_t_sign_flipped(p) : s_operators(p);
    const ConfigPtr& cfg = p.config();
    LaurentPoly input(1);
    input.set_coeff(1, KVector::scalar(LambdaElem(cfg, Rat(1))));
    input.set_coeff(0, KVector::scalar(LambdaElem(cfg, Rat(-1)) - p.t - p.tau));
    RationalLoop prod = mul(ops.S, RationalLoop(input));
    LaurentPoly plus = project_split(prod).plus;
    LaurentPoly expected(1);
    expected.set_coeff(1, KVector::scalar(LambdaElem(cfg, Rat(1))));
    expected.set_coeff(0, KVector::scalar(LambdaElem(cfg, Rat(-1))));
    if (auto w = loop_mismatch(RationalLoop(plus), RationalLoop(expected))) {
        rep.pass = false;
        rep.witness = w;
    }
    return rep;
}

// -------------------------------------------------------- hamiltonian of W

IdentityReport check_hamiltonian_identity(const RationalLoop& f, const PairingData& pairing, Corruption c) {
    IdentityReport rep;
    rep.name = "hamiltonian";
    rep.params = {};
    SplitParts parts = project_split(f);
    LambdaElem lhs = omega(f, RationalLoop(f.num(), f.den() * one_minus_q()), pairing);
    KVector f1 = parts.plus.eval_at_one();
    LambdaElem pv = pairing_value(f1, f1, pairing);
    LaurentPoly centered = parts.plus;
    {
        KVector c0 = centered.coeff(0) - f1;
        centered.set_coeff(0, c0);
    }
    SplitParts quotient = project_split(RationalLoop(centered, one_minus_q()));
    if (!quotient.minus.is_zero()) throw error("internal: (f+ - f+(1)) is not divisible by (1-q)");
    LaurentPoly arg = quotient.plus - parts.plus.scaled(Rat(1, 2));
    LambdaElem rhs = omega(parts.minus, RationalLoop(arg), pairing).scaled(Rat(2));
    rhs = (c == Corruption::flip_eval_sign) ? rhs + pv : rhs - pv;
    if (auto w = lambda_mismatch(lhs, rhs)) {
        rep.pass = false;
        rep.witness = w;
        rep.witness->where = "Omega(f, f/(1-q))";
    }
    return rep;
}

IdentityReport check_hamiltonian_random(const ConfigPtr& cfg, std::uint64_t seed, int cases) {
    IdentityReport rep;
    rep.name = "hamiltonian_random";
    rep.params = {{"seed", std::to_string(seed)}, {"cases", std::to_string(cases)}};
    Rng rng(seed);
    PairingData point = PairingData::point();
    PairingData rank2;
    rank2.rank = 2;
    rank2.labels = {"phi1", "phi2"};
    rank2.metric = {{Rat(1), Rat(1)}, {Rat(1), Rat(2)}};
    for (int i = 0; i < cases; ++i) {
        const PairingData& pairing = (i % 5 == 4) ? rank2 : point;
        RationalLoop f = random_loop(rng, cfg, pairing.rank);
        IdentityReport inner = check_hamiltonian_identity(f, pairing);
        if (!inner.pass) {
            rep.pass = false;
            rep.witness = inner.witness;
            rep.witness->where += " (case " + std::to_string(i) + ")";
            return rep;
        }
    }
    return rep;
}

// ----------------------------------------------------------------- the cone

IdentityReport check_cone(const TheoryParams& p, Corruption c) {
    IdentityReport rep;
    rep.name = "cone";
    rep.params = grid_params(p);
    const ConfigPtr& cfg = p.config();
    RationalLoop j = j_function(p);
    if (c == Corruption::perturb_input)
        j = j + RationalLoop(LaurentPoly::scalar(LambdaElem::generator(cfg, 0)),
                             QPoly(std::vector<Rat>{Rat(1), rat(-1, 2)}));
    auto fail = [&](const std::string& what, const std::string& got) {
        rep.pass = false;
        rep.witness = Witness{"cone solver", "", 0, what, got};
    };
    ConeCertificate cert = cone_membership(j, p.t);
    if (!cert.on_cone) {
        fail("on cone", cert.message);
        return rep;
    }
    if (cert.tau != p.tau) {
        fail("tau* = tau", lambda_str(cert.tau));
        return rep;
    }
    if (!(cert.y == LaurentPoly::one(cfg))) {
        fail("y = 1", laurent_str(cert.y));
        return rep;
    }
    if (!loop_equal(cone_point(cert.tau, cert.y, p.t), j)) {
        fail("certificate reconstructs f", "mismatch");
        return rep;
    }
    // cone scaling: rational, unit, and non-unit scalars
    ConeCertificate c2 = cone_membership(j.scaled(Rat(2)), p.t);
    if (!c2.on_cone || c2.tau != p.tau || !(c2.y == LaurentPoly::scalar(LambdaElem(cfg, Rat(2))))) {
        fail("2*f on cone with y = 2", c2.message);
        return rep;
    }
    LambdaElem unit = LambdaElem(cfg, Rat(1)) + LambdaElem::generator(cfg, 0);
    ConeCertificate c3 = cone_membership(j.scaled(unit), p.t);
    if (!c3.on_cone || c3.tau != p.tau || !(c3.y == LaurentPoly::scalar(unit))) {
        fail("(1+gen)*f on cone with y = 1+gen", c3.message);
        return rep;
    }
    LambdaElem nonunit = LambdaElem::generator(cfg, 0);
    if (!loop_equal(j.scaled(nonunit), cone_point(p.tau, LaurentPoly::scalar(nonunit), p.t))) {
        fail("gen*J = cone_point(tau, gen)", "mismatch");
        return rep;
    }
    return rep;
}

IdentityReport check_string_flow(const TheoryParams& p, const LambdaElem& eps) {
    IdentityReport rep;
    rep.name = "string_flow";
    rep.params = grid_params(p);
    rep.params.emplace_back("eps", lambda_str(eps));
    RationalLoop j = j_function(p);
    RationalLoop lhs = string_flow(j, eps);
    RationalLoop rhs = j_function(TheoryParams(p.tau + eps, p.t));
    if (auto w = loop_mismatch(lhs, rhs)) {
        rep.pass = false;
        rep.witness = w;
        return rep;
    }
    // one-parameter group law
    if (!eps.is_zero()) {
        RationalLoop twice = string_flow(string_flow(j, eps), eps);
        if (auto w = loop_mismatch(twice, string_flow(j, eps + eps))) {
            rep.pass = false;
            rep.witness = w;
            rep.witness->where += " (group law)";
            return rep;
        }
    }
    ConeCertificate cert = cone_membership(lhs, p.t);
    if (!cert.on_cone || cert.tau != p.tau + eps) {
        rep.pass = false;
        rep.witness = Witness{"cone solver", "", 0, "tau* = tau + eps",
                              cert.on_cone ? lambda_str(cert.tau) : cert.message};
    }
    return rep;
}

IdentityReport check_ruling(const TheoryParams& p) {
    IdentityReport rep;
    rep.name = "ruling";
    rep.params = grid_params(p);
    RationalLoop j = j_function(p);
    SOperators ops = s_operators(p);
    RationalLoop r = mul(ops.S, RationalLoop(j.num(), j.den() * one_minus_q()));
    if (auto w = loop_mismatch(r, RationalLoop::one(p.config()))) {
        rep.pass = false;
        rep.witness = w;
    }
    return rep;
}

// -------------------------------------------------------------------- adelic

IdentityReport check_adelic(const TheoryParams& p, const std::vector<int>& conductors) {
    IdentityReport rep;
    rep.name = "adelic";
    rep.params = grid_params(p);
    SOperators ops = s_operators(p);
    RationalLoop j = j_function(p);
    const std::pair<const char*, const RationalLoop*> loops[] = {
        {"J", &j}, {"S", &ops.S}, {"Sinv", &ops.S_inv}};
    for (const auto& [name, loop] : loops) {
        AdelicProfile profile = classify_poles(*loop);
        if (!profile.pass_iii) {
            rep.pass = false;
            rep.witness = Witness{std::string("poles of ") + name, "", 0, "cyclotomic denominator",
                                  profile.non_cyclotomic.str("q")};
            return rep;
        }
    }
    for (int m : conductors) {
        PsiLocalizationReport r = psi_localization_check(p.t, m);
        if (!r.pass) {
            rep.pass = false;
            rep.witness = Witness{"psi localization, m = " + std::to_string(m), "", 0, "polar parts agree", r.detail};
            return rep;
        }
    }
    return rep;
}

// ------------------------------------------------------------ reconstruction

IdentityReport check_f0(const LambdaElem& t, Corruption c) {
    IdentityReport rep;
    rep.name = "f0_reconstruct";
    rep.params = {{"t", lambda_str(t)}};
    if (t.is_zero() || !t.config()) {
        if (!f0_reconstruct(t).is_zero()) {
            rep.pass = false;
            rep.witness = Witness{"t=0", "1", 0, "0", "nonzero"};
        }
        return rep;
    }
    const ConfigPtr& cfg = t.config();
    rep.params.emplace_back("D", std::to_string(cfg->truncation));
    TheoryParams p(LambdaElem(cfg), t);
    RationalLoop j = j_function(p);
    LambdaElem f0;
    {
        SplitParts parts = project_split(j);
        LambdaElem half = omega(parts.minus, RationalLoop(parts.plus), PairingData::point()).scaled(Rat(1, 2));
        f0 = (c == Corruption::skip_adams) ? half : half - adams(2, t).scaled(Rat(1, 2));
    }
    if (auto w = lambda_mismatch(f0.degree_part(2), LambdaElem(cfg))) {
        rep.pass = false;
        rep.witness = w;
        rep.witness->where = "degree 2";
        return rep;
    }
    if (auto w = lambda_mismatch(f0.degree_part(3), sym_trace_three_point(t).degree_part(3))) {
        rep.pass = false;
        rep.witness = w;
        rep.witness->where = "degree 3 vs S3 trace oracle";
        return rep;
    }
    // 1 - q + t, both the dilaton-identity pairing slot and the J head
    LaurentPoly shift(1);
    shift.set_coeff(0, KVector::scalar(LambdaElem(cfg, Rat(1)) + t));
    shift.set_coeff(1, KVector::scalar(LambdaElem(cfg, Rat(-1))));
    // dilaton identity: Omega(J(0,t), 1-q+t) = 2 F0 + Psi^2(t)
    LambdaElem lhs = omega(j, RationalLoop(shift), PairingData::point());
    LambdaElem rhs = f0.scaled(Rat(2)) + adams(2, t);
    if (auto w = lambda_mismatch(lhs, rhs)) {
        rep.pass = false;
        rep.witness = w;
        rep.witness->where = "dilaton identity";
        return rep;
    }
    // degree-2 part of J - (1-q) - t matches the S2 descendant trace
    RationalLoop tail = (j - RationalLoop(shift)).degree_part(2);
    if (auto w = loop_mismatch(tail, sym_trace_two_point_descendant(t).degree_part(2))) {
        rep.pass = false;
        rep.witness = w;
        rep.witness->where = "two-point descendant trace";
    }
    return rep;
}

IdentityReport check_tangent(const LambdaElem& t) {
    IdentityReport rep;
    rep.name = "tangent_parameter";
    rep.params = {{"t", lambda_str(t)}};
    LambdaElem s = tangent_parameter(t);
    if (auto w = lambda_mismatch(tangent_parameter_inverse(s), t)) {
        rep.pass = false;
        rep.witness = w;
        rep.witness->where = "inverse(forward(t)) = t";
        return rep;
    }
    if (auto w = lambda_mismatch(tangent_parameter(tangent_parameter_inverse(s)), s)) {
        rep.pass = false;
        rep.witness = w;
        rep.witness->where = "forward(inverse(s)) = s";
    }
    return rep;
}

// -------------------------------------------------- randomized infrastructure

IdentityReport check_projection_omega_random(const ConfigPtr& cfg, std::uint64_t seed, int cases) {
    IdentityReport rep;
    rep.name = "projection_omega_random";
    rep.params = {{"seed", std::to_string(seed)}, {"cases", std::to_string(cases)}};
    Rng rng(seed);
    PairingData point = PairingData::point();
    PairingData rank2;
    rank2.rank = 2;
    rank2.labels = {"phi1", "phi2"};
    rank2.metric = {{Rat(1), Rat(1)}, {Rat(1), Rat(2)}};
    auto fail = [&](const std::string& where, int i) {
        rep.pass = false;
        rep.witness = Witness{where + " (case " + std::to_string(i) + ")", "", 0, "0", "nonzero"};
    };
    for (int i = 0; i < cases; ++i) {
        const PairingData& pairing = (i % 4 == 3) ? rank2 : point;
        RationalLoop f = random_loop(rng, cfg, pairing.rank);
        RationalLoop g = random_loop(rng, cfg, pairing.rank);
        // antisymmetry
        if (!(omega(f, g, pairing) + omega(g, f, pairing)).is_zero()) {
            fail("antisymmetry", i);
            return rep;
        }
        SplitParts pf = project_split(f), pg = project_split(g);
        // split exactness, idempotence, uniqueness
        if (!loop_equal(RationalLoop(pf.plus) + pf.minus, f)) {
            fail("plus + minus = f", i);
            return rep;
        }
        SplitParts again = project_split(RationalLoop(pf.plus));
        if (!again.minus.is_zero() || !(again.plus == pf.plus)) {
            fail("split of a plus part", i);
            return rep;
        }
        SplitParts again2 = project_split(pf.minus);
        if (!again2.plus.is_zero() || !loop_equal(again2.minus, pf.minus)) {
            fail("split of a minus part", i);
            return rep;
        }
        // Lagrangian subspaces
        if (!omega(RationalLoop(pf.plus), RationalLoop(pg.plus), pairing).is_zero()) {
            fail("Omega on K+ x K+", i);
            return rep;
        }
        if (!omega(pf.minus, pg.minus, pairing).is_zero()) {
            fail("Omega on K- x K-", i);
            return rep;
        }
        // Cauchy consistency: Omega against Laurent monomials extracts
        // series coefficients of the minus part
        if (i % 7 == 0 && !pf.minus.is_zero()) {
            for (int a = -2; a <= 3; ++a) {
                LaurentPoly mono(pairing.rank);
                KVector unit(pairing.rank);
                int coord = i % pairing.rank;
                unit[coord] = LambdaElem(cfg, Rat(1));
                mono.set_coeff(a, unit);
                LambdaElem got = omega(pf.minus, RationalLoop(mono), pairing);
                KVector zero_side(pairing.rank), inf_side(pairing.rank);
                if (a >= 0) zero_side = expand(pf.minus, ExpansionPoint::zero(), a, a).coeff(a);
                if (a <= -1) inf_side = expand(pf.minus, ExpansionPoint::infinity(), -a, -a).coeff(-a);
                LambdaElem expected = pairing_value(zero_side - inf_side, unit, pairing);
                if (!(got == expected)) {
                    fail("Cauchy coefficient extraction at q^" + std::to_string(a), i);
                    return rep;
                }
            }
        }
    }
    return rep;
}

// ----------------------------------------------------------------- the suite

SuiteConfig SuiteConfig::defaults() {
    SuiteConfig c;
    c.ring = make_config(1, 4, 4);
    LambdaElem zero(c.ring);
    LambdaElem Q = LambdaElem::generator(c.ring, 0);
    LambdaElem N1 = LambdaElem::generator(c.ring, 1);
    c.taus = {zero, Q, N1, Q + N1};
    c.ts = {zero, Q, N1, Q + N1};
    c.epss = {Q};
    return c;
}

std::vector<IdentityReport> run_suite(const SuiteConfig& config) {
    if (!config.ring) throw error("run_suite: missing ring config");
    if (config.taus.empty() && config.ts.empty()) return {};  // empty grid, empty report
    auto enabled = [&](const std::string& name) {
        return config.checks.empty() || config.checks.count(name) > 0 || config.checks.count("all") > 0;
    };
    Corruption s_corruption = config.corrupt_t_sign ? Corruption::flip_t_sign : Corruption::none;
    std::vector<IdentityReport> out;
    int case_index = 0;
    for (const LambdaElem& tau : config.taus) {
        for (const LambdaElem& t : config.ts) {
            TheoryParams p(tau, t);
            ++case_index;
            if (enabled("sstar")) out.push_back(check_sstar_s(p, s_corruption));
            if (enabled("wdvv")) out.push_back(check_wdvv_kernel(p, s_corruption));
            if (enabled("wform")) out.push_back(check_w_form(p, config.seed + case_index, 5));
            if (enabled("ancestor")) out.push_back(check_ancestor_shift(p, s_corruption));
            if (enabled("cone")) out.push_back(check_cone(p));
            if (enabled("string_flow"))
                for (const LambdaElem& eps : config.epss) out.push_back(check_string_flow(p, eps));
            if (enabled("ruling")) out.push_back(check_ruling(p));
            if (enabled("adelic")) out.push_back(check_adelic(p, config.conductors));
        }
    }
    if (enabled("f0"))
        for (const LambdaElem& t : config.ts) out.push_back(check_f0(t));
    if (enabled("tangent"))
        for (const LambdaElem& t : config.ts)
            if (!t.is_zero()) out.push_back(check_tangent(t));
    if (enabled("hamiltonian"))
        out.push_back(check_hamiltonian_random(config.ring, config.seed, config.hamiltonian_cases));
    if (enabled("infra"))
        out.push_back(check_projection_omega_random(config.ring, config.seed + 1, config.infra_cases));
    return out;
}

}  // namespace qk
