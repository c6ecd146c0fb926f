#pragma once

#include <string>

#include "qk/cyclo.hpp"
#include "qk/loop.hpp"
#include "qk/ring.hpp"

namespace qk {

// Parameters of the X = pt theory: tau (non-permutable) and t (permutable),
// both q-independent elements of positive filtration.
struct TheoryParams {
    LambdaElem tau;
    LambdaElem t;

    TheoryParams(LambdaElem tau_in, LambdaElem t_in);
    ConfigPtr config() const;
};

// J(tau, t) = (1-q) e^{tau/(1-q) + sum_{k>0} Psi^k(t)/(k(1-q^k))}
RationalLoop j_function(const TheoryParams& p);

// G(tau) = e^{tau + sum_{k>0} Psi^k(t)/k}
LambdaElem metric_scalar(const TheoryParams& p);

struct SOperators {
    RationalLoop S;
    RationalLoop S_inv;  // = J / (1-q)
};
SOperators s_operators(const TheoryParams& p);

// The same with the sign of the t-branch of the exponent flipped; breaks
// unitarity and the ancestor shift and is used as a negative control.
SOperators s_operators_t_sign_flipped(const TheoryParams& p);

// (1-q) S_tau^{-1} y, a point of the ruling space through J.
RationalLoop cone_point(const LambdaElem& tau, const LaurentPoly& y, const LambdaElem& t);

// Multiplication by e^{eps/(1-q)}.
RationalLoop string_flow(const RationalLoop& f, const LambdaElem& eps);

// Witness that f lies on the overruled cone L_t: on success
// f == (1-q) S_{tau}^{-1} y exactly and residual == 0.
struct ConeCertificate {
    bool on_cone = false;
    LambdaElem tau;
    LaurentPoly y{1};
    RationalLoop residual{1};
    std::string message;
};

// Order-by-order solve for (tau, y); the correction at each filtration
// degree is dtau = -Res_{q=1} r(q) dq / y0(1), validated against the
// J(tau,t) family.
ConeCertificate cone_membership(const RationalLoop& f, const LambdaElem& t);

// F_0(0,t) = (1/2) Omega([J]_-, [J]_+) - Psi^2(t)/2.
LambdaElem f0_reconstruct(const LambdaElem& t);

// Independent small-n correlator oracles over a point target:
//   three_point        = (t^3 + 3 t Psi^2(t) + 2 Psi^3(t)) / 6
//   two_point_descendant = (1/2) [ t^2/(1-q) + Psi^2(t)/(1+q) ]
LambdaElem sym_trace_three_point(const LambdaElem& t);
RationalLoop sym_trace_two_point_descendant(const LambdaElem& t);

// sum_{k>0} Psi^k(t)/k^2 and its inverse by the filtration fixed point.
LambdaElem tangent_parameter(const LambdaElem& t);
LambdaElem tangent_parameter_inverse(const LambdaElem& s);

}  // namespace qk
