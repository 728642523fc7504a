#pragma once

#include <optional>

#include "ruledmotion/primal_solver.hpp"

namespace ruledmotion {

// ---------------------------------------------------------------------------
// Closed formulas for the translational part.
// ---------------------------------------------------------------------------

// Solves  -Q k conj(D) - D k conj(Q) = K_d  for D.
//
// Requires the generic frame: q3 != 0 and m3 != 0 as polynomials,
// gcd(q0, q3) = 1, and K_d orthogonal to M = Q k conj(Q) coefficient-wise
// (the Plücker relation m1 k5 + m2 k6 + m3 k7 = 0). With a, b the Bézout pair
// of (q0, q3):
//
//   d0 = -k7 a / 4
//   d1 =  (k5 (b q2^2 - a q1 q2 - q3) + k6 (-b q1 q2 - a q2^2 + q0)) / (2 m3)
//   d2 =  (k5 (-b q1 q2 + a q1^2 - q0) + k6 (b q1^2 + a q1 q2 - q3)) / (2 m3)
//   d3 = -b k7 / 4
//
// Both divisions by 2 m3 are exact; this is asserted.
inline QuatPoly<Rat> dual_part_raw(const QuatPoly<Rat>& Q, const QuatPoly<Rat>& Kd) {
    if (!Kd.is_vectorial()) throw PreconditionError("dual target must be vectorial");
    const RPoly &q0 = Q.w, &q1 = Q.x, &q2 = Q.y, &q3 = Q.z;
    if (q3.is_zero()) throw GenericityError("q3 vanishes identically");
    QuatPoly<Rat> M = Q * QuatPoly<Rat>::unit_k() * Q.conj();
    const RPoly m3 = M.z;
    if (m3.is_zero()) throw GenericityError("m3 vanishes identically");
    const RPoly &k5 = Kd.x, &k6 = Kd.y, &k7 = Kd.z;
    if (!(M.x * k5 + M.y * k6 + m3 * k7).is_zero())
        throw PreconditionError("dual target violates the Plücker relation against M");
    auto bez = ext_gcd(q0, q3);
    if (!bez.g.is_constant() || bez.g.coeff(0) != Rat(1))
        throw GenericityError("q0 and q3 are not coprime");
    const RPoly &a = bez.u, &b = bez.v;
    RPoly d0 = Rat(-1, 4) * (k7 * a);
    RPoly d3 = Rat(-1, 4) * (b * k7);
    RPoly n1 = k5 * (b * q2 * q2 - a * q1 * q2 - q3) + k6 * (-(b * q1 * q2) - a * q2 * q2 + q0);
    RPoly n2 = k5 * (-(b * q1 * q2) + a * q1 * q1 - q0) + k6 * (b * q1 * q1 + a * q1 * q2 - q3);
    const RPoly two_m3 = Rat(2) * m3;
    auto [d1, r1] = divmod(n1, two_m3);
    auto [d2, r2] = divmod(n2, two_m3);
    if (!r1.is_zero() || !r2.is_zero())
        throw InternalConsistencyError("division by 2 m3 not exact");
    QuatPoly<Rat> D{d0, d1, d2, d3};
    QuatPoly<Rat> K = QuatPoly<Rat>::unit_k();
    if (!((-(Q * K * D.conj()) - D * K * Q.conj()) == Kd))
        throw InternalConsistencyError("dual defining identity failed");
    return D;
}

// Adds the multiple of the homogeneous solution Q k that removes the high
// powers of t: with d0 = lambda q3 + rho, D + lambda Q k has degree <= deg P.
inline QuatPoly<Rat> reduce_degree(const QuatPoly<Rat>& D, const QuatPoly<Rat>& Q, int target_deg) {
    RPoly lambda = divmod(D.w, Q.z).first;
    QuatPoly<Rat> out = D + lambda * (Q * QuatPoly<Rat>::unit_k());
    if (out.degree() > target_deg)
        throw InternalConsistencyError("degree reduction missed the target degree");
    return out;
}

// ---------------------------------------------------------------------------
// Verification and minimality.
// ---------------------------------------------------------------------------

struct VerifyResult {
    RPoly h;  // monic real cofactor
    Rat c;    // constant; positive for pipeline outputs
};

// Checks eps-conj(C) k conj(eps-conj(C)) == c h L exactly and extracts (h, c).
inline VerifyResult verify_solution(const MotionPoly<Rat>& C, const LinePoly<Rat>& L) {
    DualQuatPoly<Rat> e = C.dq().econj();
    DualQuatPoly<Rat> K{QuatPoly<Rat>::unit_k(), QuatPoly<Rat>{}};
    DualQuatPoly<Rat> T = e * K * e.conj();
    const std::pair<const RPoly*, const RPoly*> comps[] = {
        {&T.p.x, &L.primal.x}, {&T.p.y, &L.primal.y}, {&T.p.z, &L.primal.z},
        {&T.d.x, &L.dual.x},   {&T.d.y, &L.dual.y},   {&T.d.z, &L.dual.z}};
    RPoly phi;
    for (auto [t, l] : comps) {
        if (l->is_zero()) continue;
        auto [q, r] = divmod(*t, *l);
        if (!r.is_zero())
            throw VerificationFailure("trajectory is not a polynomial multiple of the surface, residual " +
                                      to_string(r));
        phi = q;
        break;
    }
    if (phi.is_zero()) throw VerificationFailure("trajectory vanishes against a nonzero surface");
    DualQuatPoly<Rat> scaled{phi * L.primal, phi * L.dual};
    DualQuatPoly<Rat> diff = T - scaled;
    if (!diff.is_zero()) throw VerificationFailure("residual after matching the cofactor is nonzero");
    Rat c = phi.lc();
    return {monic(phi), c};
}

struct ApproxVerifyResult {
    bool ok = false;
    FPoly h;
    double c = 0;
    double residual = 0;
};

// Floating-point variant: matches the trajectory against c h L and reports
// the normalized residual instead of demanding exactness.
inline ApproxVerifyResult verify_solution_approx(const MotionPoly<double>& C, const LinePoly<double>& L,
                                                 double tol = kDefaultTolerance) {
    DualQuatPoly<double> e = C.dq().econj();
    DualQuatPoly<double> K{QuatPoly<double>::unit_k(), QuatPoly<double>{}};
    DualQuatPoly<double> T = e * K * e.conj();
    const FPoly* lcomp[6] = {&L.primal.x, &L.primal.y, &L.primal.z, &L.dual.x, &L.dual.y, &L.dual.z};
    const FPoly* tcomp[6] = {&T.p.x, &T.p.y, &T.p.z, &T.d.x, &T.d.y, &T.d.z};
    int best = -1;
    double best_scale = 0;
    for (int i = 0; i < 6; ++i)
        if (max_abs_coeff(*lcomp[i]) > best_scale) {
            best_scale = max_abs_coeff(*lcomp[i]);
            best = i;
        }
    ApproxVerifyResult out;
    if (best < 0) return out;
    FPoly phi = divmod(*tcomp[best], *lcomp[best]).first;
    DualQuatPoly<double> diff = T - DualQuatPoly<double>{phi * L.primal, phi * L.dual};
    out.residual = max_abs_coeff(diff) / std::max(1.0, max_abs_coeff(T));
    out.ok = out.residual <= tol;
    if (!phi.is_zero()) {
        out.c = phi.lc();
        out.h = (1.0 / phi.lc()) * phi;
    }
    return out;
}

struct SynthesisResult {
    MotionPoly<Rat> C;
    RPoly h;    // real cofactor: the trajectory of k equals c * h * L_reduced
    Rat c;      // positive rational normalizer
    RPoly ell;  // minimal saturating factor of the direction part (diagnostic)
    RPoly removed_content;            // real content divided out of the input
    int family_translation_degree;    // max degree of the free polynomial nu
    Quat<Rat> rotation;               // frame repair that was applied, identity if none
    QuatPoly<Rat> Qfin;               // cofactor of the primal part: primal = Qfin * h
    LinePoly<Rat> Lhat;               // the reduced input; the verified right-hand side
};

struct SynthesizeOptions {
    std::uint64_t seed = 0;
    const QuatPoly<Rat>* inject_Q = nullptr;
};

// Full pipeline: reduce, solve the primal equation with the cofactor
// h = rgcd(L_p), compute the translational part from the closed formulas,
// reduce its degree, undo the frame rotation and verify everything.
inline SynthesisResult synthesize(const LinePoly<Rat>& L, const SynthesizeOptions& opts = {}) {
    auto [Lred, removed] = reduce(L);
    if (Lred.dual.degree() > Lred.primal.degree())
        throw PreconditionError(
            "moment degree exceeds direction degree; surface is not a line trajectory");
    SaturationReport rep = saturation_analysis(Lred);
    BuildOptions bopts;
    bopts.need_dual_genericity = true;
    bopts.seed = opts.seed;
    bopts.inject_Q = opts.inject_Q;
    PrimalBuild pb = build_primal_part(Lred, bopts);

    QuatPoly<Rat> Kd = pb.c * pb.rotated.dual;
    QuatPoly<Rat> Draw = dual_part_raw(pb.Q, Kd);
    QuatPoly<Rat> P = pb.rotated_primal_part();
    QuatPoly<Rat> D = reduce_degree(Draw, pb.Q, P.degree());

    // back to the input frame; rotation scales fold into the normalizer,
    // which verification recomputes exactly
    QuatPoly<Rat> Pfin = pb.u * P;
    QuatPoly<Rat> Dfin = pb.u * D;
    MotionPoly<Rat> C{DualQuatPoly<Rat>{Pfin, Dfin}};
    VerifyResult vr = verify_solution(C, Lred);
    if (!(vr.h == pb.hhat)) throw InternalConsistencyError("achieved cofactor differs from rgcd");
    if (sgn(vr.c) <= 0) throw InternalConsistencyError("normalizer must be positive");
    if (2 * C.degree() != Lred.degree() + vr.h.degree())
        throw InternalConsistencyError("degree formula violated");
    if (C.dual().degree() > C.primal().degree())
        throw InternalConsistencyError("dual part degree exceeds primal part degree");
    QuatPoly<Rat> Qfin = exact_div(Pfin, pb.hhat);
    return SynthesisResult{std::move(C), pb.hhat,          vr.c,   rep.ell, removed,
                           pb.hhat.degree(), pb.u, std::move(Qfin), std::move(Lred)};
}

// The residual freedom of a minimal-degree solution: translations along the
// moving line (nu) and rotations about it (the unit v0 + v3 k).
inline MotionPoly<Rat> solution_family(const SynthesisResult& res, const RPoly& nu,
                                       const Quat<Rat>& unit) {
    if (nu.degree() > res.family_translation_degree)
        throw FamilyBoundError("family parameter degree exceeds the minimal-degree bound");
    if (!scalar_is_zero(unit.x) || !scalar_is_zero(unit.y))
        throw PreconditionError("family unit must lie in the (1, k)-plane");
    Quat<Rat> v = unit;
    Rat n = v.norm();
    if (scalar_is_zero(n)) throw PreconditionError("zero family unit");
    if (auto s = rat_sqrt(n)) {
        v = (Rat(1) / *s) * v;
    } else {
        throw PreconditionError("family unit norm must be a rational square");
    }
    QuatPoly<Rat> shift = nu * (res.Qfin * QuatPoly<Rat>::unit_k());
    DualQuatPoly<Rat> moved{res.C.primal(), res.C.dual() + shift};
    DualQuatPoly<Rat> out{moved.p * QuatPoly<Rat>::constant(v), moved.d * QuatPoly<Rat>::constant(v)};
    return MotionPoly<Rat>{out};
}

struct MinimalityReport {
    bool minimal = false;
    bool unique = false;  // rgcd(L_p) == 1 for the saturated surface
};

inline MinimalityReport minimality_check(const SynthesisResult& res) {
    MinimalityReport rep;
    RPoly g = rgcd(res.Lhat.primal);
    rep.minimal = (res.h == g) &&
                  (2 * res.C.degree() == res.Lhat.degree() + res.h.degree());
    rep.unique = g.is_constant();
    return rep;
}

}  // namespace ruledmotion
