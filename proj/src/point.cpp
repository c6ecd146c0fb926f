#include "qk/point.hpp"

namespace qk {

namespace {

QPoly one_minus_q() { return QPoly(std::vector<Rat>{Rat(1), Rat(-1)}); }

// tau/(1-q) + sum_{k>0} Psi^k(t)/(k(1-q^k)) as a scalar rational loop
RationalLoop dilaton_exponent(const LambdaElem& tau, const LambdaElem& t) {
    RationalLoop out(1);
    if (!tau.is_zero()) out = out + RationalLoop(LaurentPoly::scalar(tau), one_minus_q());
    return out + adams_descendant_sum(t);
}

}  // namespace

TheoryParams::TheoryParams(LambdaElem tau_in, LambdaElem t_in) : tau(std::move(tau_in)), t(std::move(t_in)) {
    if (!config()) throw error("TheoryParams: parameters carry no ring");
    if (!tau.is_zero() && tau.filtration_degree() < 1)
        throw error("TheoryParams: tau must have positive filtration degree");
    if (!t.is_zero() && t.filtration_degree() < 1)
        throw error("TheoryParams: t must have positive filtration degree");
}

ConfigPtr TheoryParams::config() const { return tau.config() ? tau.config() : t.config(); }

RationalLoop j_function(const TheoryParams& p) {
    RationalLoop e = exp_loop(dilaton_exponent(p.tau, p.t), p.config());
    return mul(RationalLoop(LaurentPoly::from_qpoly(one_minus_q(), p.config())), e);
}

LambdaElem metric_scalar(const TheoryParams& p) {
    LambdaElem expo = p.tau;
    const int D = p.config()->truncation;
    for (int k = 1; k <= D; ++k) expo += adams(k, p.t).scaled(Rat(1, k));
    return exp_filtered(expo);
}

SOperators s_operators(const TheoryParams& p) {
    RationalLoop x = dilaton_exponent(p.tau, p.t);
    return {exp_loop(-x, p.config()), exp_loop(x, p.config())};
}

SOperators s_operators_t_sign_flipped(const TheoryParams& p) {
    RationalLoop tau_part(1);
    if (!p.tau.is_zero()) tau_part = RationalLoop(LaurentPoly::scalar(p.tau), one_minus_q());
    RationalLoop t_part = adams_descendant_sum(p.t);
    return {exp_loop(-tau_part + t_part, p.config()), exp_loop(tau_part - t_part, p.config())};
}

RationalLoop cone_point(const LambdaElem& tau, const LaurentPoly& y, const LambdaElem& t) {
    TheoryParams p(tau, t);
    RationalLoop s_inv = s_operators(p).S_inv;
    RationalLoop out = mul(s_inv, RationalLoop(y));
    return mul(RationalLoop(LaurentPoly::from_qpoly(one_minus_q(), p.config())), out);
}

RationalLoop string_flow(const RationalLoop& f, const LambdaElem& eps) {
    if (eps.is_zero()) return f;
    if (eps.filtration_degree() < 1) throw error("string_flow: eps must have positive filtration degree");
    RationalLoop factor = exp_loop(RationalLoop(LaurentPoly::scalar(eps), one_minus_q()), eps.config());
    return mul(factor, f);
}

ConeCertificate cone_membership(const RationalLoop& f, const LambdaElem& t) {
    ConeCertificate cert;
    if (f.rank() != 1) throw error("cone_membership: loop must be scalar-valued (X = pt)");
    ConfigPtr cfg = t.config();
    if (!cfg) {
        for (const auto& [e, v] : f.num().terms())
            if (v[0].config()) { cfg = v[0].config(); break; }
    }
    if (!cfg) throw error("cone_membership: no ring config available");
    const int D = cfg->truncation;
    if (f.is_zero()) {  // the cone vertex
        cert.on_cone = true;
        cert.tau = LambdaElem(cfg);
        cert.message = "on cone (vertex)";
        return cert;
    }

    RationalLoop base(f.num(), f.den() * one_minus_q());  // f/(1-q)
    // degree-0 part must already be a Laurent polynomial with invertible
    // value at q = 1
    SplitParts deg0 = project_split(base.degree_part(0));
    if (!deg0.minus.is_zero()) {
        cert.message = "not on cone: f/(1-q) has a pole surviving at filtration degree 0";
        cert.residual = deg0.minus;
        return cert;
    }
    Rat y0_at_1(0);
    if (!deg0.plus.is_zero()) y0_at_1 = deg0.plus.eval_at_one()[0].constant_part();
    if (rat_is_zero(y0_at_1)) {
        cert.message = "degenerate input: y0(1) is not invertible";
        return cert;
    }

    LambdaElem tau(cfg);
    int last_fdeg = 0;
    for (int iter = 0; iter <= D + 1; ++iter) {
        SOperators ops = s_operators(TheoryParams(tau, t));
        RationalLoop m = mul(ops.S, base);
        SplitParts parts = project_split(m);
        if (parts.minus.is_zero()) {
            cert.on_cone = true;
            cert.tau = tau;
            cert.y = parts.plus;
            cert.residual = RationalLoop(1);
            cert.message = "on cone";
            return cert;
        }
        cert.residual = parts.minus;
        int fdeg = parts.minus.filtration_degree();
        if (fdeg < 1 || fdeg == kInfiniteDegree || (iter > 0 && fdeg <= last_fdeg)) {
            cert.message = "not on cone: residual stabilizes at filtration degree " + std::to_string(fdeg);
            return cert;
        }
        last_fdeg = fdeg;
        // residue of the residual at q = 1 drives the tau update
        const int mu = parts.minus.den().deflate_at(Rat(1), nullptr);
        LambdaElem res;
        if (mu > 0) res = expand(parts.minus, ExpansionPoint::at(Rat(1)), -mu, -1).coeff(-1)[0];
        if (res.is_zero()) {
            cert.message = "not on cone: residual has no pole at q = 1 to absorb";
            return cert;
        }
        tau += res.scaled(Rat(-1) / y0_at_1);
    }
    cert.message = "not on cone: no convergence within the truncation order";
    return cert;
}

LambdaElem f0_reconstruct(const LambdaElem& t) {
    if (!t.config()) return t;  // zero with no ring: F0 = 0
    TheoryParams p(LambdaElem(t.config()), t);
    RationalLoop j = j_function(p);
    SplitParts parts = project_split(j);
    LambdaElem half_omega = omega(parts.minus, RationalLoop(parts.plus), PairingData::point()).scaled(Rat(1, 2));
    return half_omega - adams(2, t).scaled(Rat(1, 2));
}

LambdaElem sym_trace_three_point(const LambdaElem& t) {
    LambdaElem t3 = t * t * t;
    LambdaElem out = t3 + (t * adams(2, t)).scaled(Rat(3)) + adams(3, t).scaled(Rat(2));
    return out.scaled(Rat(1, 6));
}

RationalLoop sym_trace_two_point_descendant(const LambdaElem& t) {
    RationalLoop a(LaurentPoly::scalar((t * t).scaled(Rat(1, 2))), one_minus_q());
    RationalLoop b(LaurentPoly::scalar(adams(2, t).scaled(Rat(1, 2))),
                   QPoly(std::vector<Rat>{Rat(1), Rat(1)}));
    return a + b;
}

LambdaElem tangent_parameter(const LambdaElem& t) {
    if (t.is_zero()) return t;
    if (t.filtration_degree() < 1) throw error("tangent_parameter: input must have positive filtration degree");
    LambdaElem out;
    const int D = t.config()->truncation;
    for (int k = 1; k <= D; ++k) out += adams(k, t).scaled(Rat(1, static_cast<long>(k) * k));
    return out;
}

LambdaElem tangent_parameter_inverse(const LambdaElem& s) {
    if (s.is_zero()) return s;
    if (s.filtration_degree() < 1)
        throw error("tangent_parameter_inverse: input must have positive filtration degree");
    const int D = s.config()->truncation;
    LambdaElem t = s;
    for (int iter = 0; iter < D; ++iter) {
        LambdaElem tail;
        for (int k = 2; k <= D; ++k) tail += adams(k, t).scaled(Rat(1, static_cast<long>(k) * k));
        t = s - tail;
    }
    return t;
}

}  // namespace qk
