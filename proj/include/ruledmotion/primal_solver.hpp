#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ruledmotion/line_geometry.hpp"

namespace ruledmotion {

inline Rat rat_gcd(const Rat& a, const Rat& b) {
    if (scalar_is_zero(a)) return abs(b);
    if (scalar_is_zero(b)) return abs(a);
    mpz_class num = gcd(a.get_num() * b.get_den(), b.get_num() * a.get_den());
    Rat r(num, a.get_den() * b.get_den());
    r.canonicalize();
    return abs(r);
}

inline Rat rational_content(const QuatPoly<Rat>& q) {
    Rat c(0);
    for (const RPoly* comp : {&q.w, &q.x, &q.y, &q.z}) c = rat_gcd(c, rational_content(*comp));
    return c;
}

// ---------------------------------------------------------------------------
// Coordinate rotations of the moving-frame problem.
// ---------------------------------------------------------------------------

// conj(u) q u for a constant rotation quaternion u (not necessarily unit).
template <ScalarField S>
QuatPoly<S> rotate_conjugate(const QuatPoly<S>& q, const Quat<S>& u) {
    return u.conj() * q * u;
}

// Rotates the surface into a new frame: conj(u) L u, divided by |u|^2 when
// that is a perfect square so that unit-norm rotations act exactly. A
// non-square norm only rescales the homogeneous coordinates.
inline LinePoly<Rat> rotate_problem(const LinePoly<Rat>& L, const Quat<Rat>& u) {
    if (u.is_zero()) throw PreconditionError("rotation by zero quaternion");
    QuatPoly<Rat> p = rotate_conjugate(L.primal, u);
    QuatPoly<Rat> d = rotate_conjugate(L.dual, u);
    if (rat_sqrt(u.norm())) {
        Rat inv = Rat(1) / u.norm();
        p = inv * p;
        d = inv * d;
    }
    return LinePoly<Rat>{p, d};
}

// Deterministic rotation candidates: identity, two axis half-turns, then a
// seeded pseudo-random tail of quaternion squares (their norm is always a
// perfect square, so rotations stay exactly rescalable).
class RotationSchedule {
public:
    explicit RotationSchedule(std::uint64_t seed = 0) : rng_(seed) {}

    Quat<Rat> next() {
        const std::size_t i = index_++;
        if (i == 0) return {Rat(1), Rat(0), Rat(0), Rat(0)};
        if (i == 1) return {Rat(0), Rat(1), Rat(0), Rat(1)};  // i + k
        if (i == 2) return {Rat(0), Rat(0), Rat(1), Rat(1)};  // j + k
        std::uniform_int_distribution<int> dist(-4, 4);
        while (true) {
            Quat<Rat> v{Rat(dist(rng_)), Rat(dist(rng_)), Rat(dist(rng_)), Rat(dist(rng_))};
            if (scalar_is_zero(v.w) || (scalar_is_zero(v.x) && scalar_is_zero(v.y) && scalar_is_zero(v.z)))
                continue;
            return v * v;
        }
    }

private:
    std::mt19937_64 rng_;
    std::size_t index_ = 0;
};

inline constexpr int kMaxRotationAttempts = 40;

// ---------------------------------------------------------------------------
// Solving Q k conj(Q) = c M for a vectorial M with trivial real content.
// ---------------------------------------------------------------------------

struct PrimalSolution {
    QuatPoly<Rat> Q;  // rgcd(Q) = 1, sign- and unit-canonicalized
    Rat c;            // positive; 1 whenever a rational representative exists
    QuatPoly<Rat> M;  // the right-hand side that was solved
};

namespace detail {

// Right-multiplication canonicalization: pull a k-plane unit so that the
// leading coefficient has a nonzero scalar component when possible, then fix
// the overall sign by the first nonzero entry in (w, z, y, x) order. Vectorial
// solutions stay vectorial: swapping their components into the scalar slot
// would zero out the k-component the dual formulas divide by.
inline void canonicalize_unit(QuatPoly<Rat>& Q) {
    Quat<Rat> lead = Q.coeff(Q.degree());
    if (scalar_is_zero(lead.w) && !scalar_is_zero(lead.z) && !Q.w.is_zero())
        Q = Q * Quat<Rat>{Rat(0), Rat(0), Rat(0), Rat(-1)};
    lead = Q.coeff(Q.degree());
    for (const Rat* v : {&lead.w, &lead.z, &lead.y, &lead.x}) {
        if (scalar_is_zero(*v)) continue;
        if (sgn(*v) < 0) Q = -Q;
        break;
    }
}

}  // namespace detail

// Constructs Q with Q k conj(Q) = c M, c a positive rational constant.
//
// With sigma the exact square root of norm(M), the helper A := M + sigma k
// satisfies A k conj(A) = 2 (sigma + m3) M and factors as A = 2 Q w with w in
// the commutative plane spanned by 1 and k. Cancelling w — the gcd of the
// k-plane components of A — leaves a polynomial Q whose k-norm is a constant
// multiple of M. Throws GenericityError when sigma + m3 vanishes identically;
// a rotated frame always repairs that.
inline PrimalSolution solve_primal(const QuatPoly<Rat>& M) {
    if (!M.is_vectorial()) throw PreconditionError("solve_primal: input must be vectorial");
    if (M.is_zero()) throw PreconditionError("solve_primal: zero input");
    if (!rgcd(M).is_constant()) throw PreconditionError("solve_primal: rgcd(M) != 1");
    auto sigma_opt = poly_sqrt(M.norm());
    if (!sigma_opt) throw NotKinematicError("norm of M is not a rational square");
    const RPoly sigma = *sigma_opt;
    const RPoly a3 = M.z + sigma;
    if (a3.is_zero() && M.x.is_zero() && M.y.is_zero())
        throw GenericityError("sigma + m3 vanishes identically");
    QuatPoly<Rat> A{RPoly(), M.x, M.y, a3};
    auto [alpha, beta] = split_k_plane(A);
    CxPoly G = cx_gcd(alpha, beta);
    const RPoly G2 = G.norm();
    CxPoly Gc = G.conj();
    QuatPoly<Rat> Q = join_k_plane(divmod(alpha * Gc, CxPoly{G2, RPoly()}).first,
                                   divmod(beta * Gc, CxPoly{G2, RPoly()}).first);
    {
        // the divisions above must be exact
        QuatPoly<Rat> back = join_k_plane(alpha * Gc, beta * Gc);
        if (!(G2 * Q == back)) throw InternalConsistencyError("k-plane gcd division not exact");
    }
    RPoly cpoly = exact_div(Rat(2) * (sigma + M.z), G2);
    if (!cpoly.is_constant())
        throw GenericityError("normalizer is not constant in this frame");
    Rat c = cpoly.coeff(0);
    // tidy the representative: strip content, fold square factors of c into Q
    Rat r = rational_content(Q);
    if (!scalar_is_zero(r) && r != Rat(1)) {
        Q = (Rat(1) / r) * Q;
        c /= r * r;
    }
    Rat s = rat_square_part(c);
    if (s != Rat(1)) {
        Q = (Rat(1) / s) * Q;
        c /= s * s;
    }
    detail::canonicalize_unit(Q);
    if (sgn(c) <= 0) throw InternalConsistencyError("normalizer must be positive");
    if (!rgcd(Q).is_constant()) throw InternalConsistencyError("solution has real content");
    QuatPoly<Rat> K = QuatPoly<Rat>::unit_k();
    if (!(Q * K * Q.conj() == c * M))
        throw InternalConsistencyError("primal defining identity failed");
    return {Q, c, M};
}

// ---------------------------------------------------------------------------
// Primal part of the motion for a whole surface.
// ---------------------------------------------------------------------------

struct PrimalBuild {
    LinePoly<Rat> rotated;  // rotate(L, u)
    RPoly hhat;        // rgcd of rotated.primal == rgcd(L_p)
    QuatPoly<Rat> Q;   // frame of `rotated`: Q k conj(Q) = c * rotated.primal / hhat
    Rat c;
    Quat<Rat> u;       // accumulated rotation; solutions map back as C -> u C'

    QuatPoly<Rat> rotated_primal_part() const { return hhat * Q; }
    // Primal part in the input frame.
    QuatPoly<Rat> primal_part() const { return u * rotated_primal_part(); }
};

struct BuildOptions {
    bool need_dual_genericity = true;
    std::uint64_t seed = 0;
    const QuatPoly<Rat>* inject_Q = nullptr;  // bypasses solve_primal, pins the frame
};

namespace detail {

inline bool dual_genericity_ok(const QuatPoly<Rat>& Q, const QuatPoly<Rat>& M) {
    if (Q.z.is_zero() || M.z.is_zero()) return false;
    return gcd(Q.w, Q.z).is_constant();
}

inline Rat constant_ratio(const QuatPoly<Rat>& T, const QuatPoly<Rat>& M) {
    // T == c*M for a constant c; throws otherwise
    const std::pair<const RPoly*, const RPoly*> comps[] = {
        {&T.x, &M.x}, {&T.y, &M.y}, {&T.z, &M.z}, {&T.w, &M.w}};
    for (auto [t, m] : comps) {
        if (m->is_zero()) continue;
        auto [q, rem] = divmod(*t, *m);
        if (!rem.is_zero() || !q.is_constant()) throw PreconditionError("ratio is not constant");
        Rat c = q.coeff(0);
        if (!(T == c * M)) throw PreconditionError("not a constant multiple");
        return c;
    }
    throw PreconditionError("zero right-hand side");
}

}  // namespace detail

// Rotates until the construction is generic and solves the primal equation
// with the real cofactor h = rgcd(L_p): the cofactor itself evens out the
// multiplicities of its real roots on the right-hand side h L_p, so no extra
// saturating factor is ever multiplied onto the surface. The surface must be
// kinematic and reduced.
inline PrimalBuild build_primal_part(const LinePoly<Rat>& L, const BuildOptions& opts = {}) {
    if (opts.inject_Q) {
        PrimalBuild b{L, rgcd(L.primal), *opts.inject_Q, Rat(1),
                      Quat<Rat>{Rat(1), Rat(0), Rat(0), Rat(0)}};
        QuatPoly<Rat> M = exact_div(L.primal, b.hhat);
        QuatPoly<Rat> K = QuatPoly<Rat>::unit_k();
        b.c = detail::constant_ratio(b.Q * K * b.Q.conj(), M);
        if (sgn(b.c) <= 0) throw PreconditionError("injected Q yields a non-positive normalizer");
        if (!rgcd(b.Q).is_constant()) throw PreconditionError("injected Q has real content");
        if (opts.need_dual_genericity && !detail::dual_genericity_ok(b.Q, M))
            throw GenericityError("injected Q violates the genericity assumptions");
        return b;
    }
    RotationSchedule schedule(opts.seed);
    Quat<Rat> u_acc{Rat(1), Rat(0), Rat(0), Rat(0)};
    for (int attempt = 0; attempt < kMaxRotationAttempts; ++attempt) {
        Quat<Rat> u = schedule.next();
        u_acc = (attempt == 0) ? u : u_acc * u;
        LinePoly<Rat> Lrot = rotate_problem(L, u_acc);
        RPoly hhat = rgcd(Lrot.primal);
        QuatPoly<Rat> M = exact_div(Lrot.primal, hhat);
        try {
            PrimalSolution sol = solve_primal(M);
            if (opts.need_dual_genericity && sol.Q.z.is_zero() && !sol.Q.w.is_zero()) {
                // a k-plane unit swaps the scalar slot into the k slot
                sol.Q = sol.Q * Quat<Rat>::unit_k();
                detail::canonicalize_unit(sol.Q);
            }
            if (opts.need_dual_genericity && !detail::dual_genericity_ok(sol.Q, M)) continue;
            return PrimalBuild{Lrot, hhat, sol.Q, sol.c, u_acc};
        } catch (const GenericityError&) {
            continue;
        }
    }
    throw InternalConsistencyError("no frame in the rotation schedule was generic");
}

// ---------------------------------------------------------------------------
// Minimal-degree primal carrier: P with P k conj(P) = c * ell * L_p. Uses a
// k-plane factor W with W conj(W) = hhat instead of the full real cofactor,
// which is what makes the degree minimal.
// ---------------------------------------------------------------------------

struct CarrierResult {
    QuatPoly<Rat> P;
    Rat c;
};

namespace detail {

// W in the (1,k)-plane with W conj(W) = h; h must be monic with all
// odd-multiplicity factors free of real roots.
inline CxPoly axis_norm_factor(const RPoly& h) {
    CxPoly W{RPoly(Rat(1)), RPoly()};
    for (const auto& [f, mult] : squarefree_decompose(h)) {
        for (int i = 0; i < mult / 2; ++i) W = W * CxPoly{f, RPoly()};
        if (mult % 2 == 0) continue;
        if (sturm_real_root_count(f) > 0)
            throw UnsupportedSplittingError("odd real-rooted factor cannot be generated: " + to_string(f));
        if (f.degree() != 2)
            throw UnsupportedSplittingError("cannot express norm factor over the rationals: " + to_string(f));
        // f = t^2 + p t + q  ->  (t + p/2) + s k with s^2 = q - p^2/4
        Rat p = f.coeff(1), q = f.coeff(0);
        auto s = rat_sqrt(q - p * p / 4);
        if (!s) throw UnsupportedSplittingError("norm factor is not a rational sum of two squares: " +
                                                to_string(f));
        W = W * CxPoly{RPoly(std::vector<Rat>{p / 2, Rat(1)}), RPoly(*s)};
    }
    return W;
}

}  // namespace detail

// The shortest primal part that sweeps the surface: deg P = (deg of L_p*ell)/2.
inline CarrierResult minimal_line_carrier(const LinePoly<Rat>& L, const SaturationReport& rep,
                                          std::uint64_t seed = 0) {
    const RPoly hhat = rep.ell * rep.g;
    QuatPoly<Rat> M = exact_div(L.primal, rep.g);
    RotationSchedule schedule(seed);
    Quat<Rat> u_acc{Rat(1), Rat(0), Rat(0), Rat(0)};
    for (int attempt = 0; attempt < kMaxRotationAttempts; ++attempt) {
        Quat<Rat> u = schedule.next();
        u_acc = (attempt == 0) ? u : u_acc * u;
        QuatPoly<Rat> Mrot = rotate_conjugate(M, u_acc);
        Rat r = rational_content(Mrot);
        Mrot = (Rat(1) / r) * Mrot;
        try {
            PrimalSolution sol = solve_primal(Mrot);
            // back to the input frame: (u Q) k conj(u Q) = c |u|^2 M_rot-unrotated
            QuatPoly<Rat> Qback = u_acc * sol.Q;
            QuatPoly<Rat> K = QuatPoly<Rat>::unit_k();
            Rat c = detail::constant_ratio(Qback * K * Qback.conj(), M);
            CxPoly W = detail::axis_norm_factor(hhat);
            return CarrierResult{Qback * W.as_quat(), c};
        } catch (const GenericityError&) {
            continue;
        }
    }
    throw InternalConsistencyError("no frame in the rotation schedule was generic");
}

}  // namespace ruledmotion
