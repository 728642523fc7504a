#pragma once

#include <optional>
#include <utility>

#include "ruledmotion/quaternion.hpp"

namespace ruledmotion {

// A single line in homogeneous Plücker coordinates: nonzero direction and a
// moment orthogonal to it. Stored as vectorial quaternions.
template <ScalarField S>
struct PluckerLine {
    Quat<S> direction, moment;

    PluckerLine(Quat<S> dir, Quat<S> mom, double tol = kDefaultTolerance)
        : direction(std::move(dir)), moment(std::move(mom)) {
        if constexpr (is_exact_v<S>) {
            if (!scalar_is_zero(direction.w) || !scalar_is_zero(moment.w))
                throw NotVectorialError("Plücker coordinates must be vectorial");
        } else {
            double scale = std::sqrt(std::max(to_double(direction.norm()), to_double(moment.norm())));
            if (std::abs(to_double(direction.w)) > tol * std::max(1.0, scale) ||
                std::abs(to_double(moment.w)) > tol * std::max(1.0, scale))
                throw NotVectorialError("Plücker coordinates must be vectorial");
            direction.w = S(0);
            moment.w = S(0);
        }
        if (direction.is_zero()) throw DegenerateLineError("line with zero direction");
        S dot = direction.x * moment.x + direction.y * moment.y + direction.z * moment.z;
        if constexpr (is_exact_v<S>) {
            if (!scalar_is_zero(dot)) throw PluckerViolationError("direction · moment != 0");
        } else {
            double scale = std::sqrt(to_double(direction.norm()) * to_double(moment.norm()));
            if (std::abs(to_double(dot)) > tol * std::max(1.0, scale))
                throw PluckerViolationError("direction · moment != 0 beyond tolerance");
        }
    }

    static PluckerLine axis_k() { return {Quat<S>::unit_k(), Quat<S>{}}; }

    // Same line up to a nonzero homogeneous factor? All 2x2 minors of the
    // stacked 6-vectors must vanish.
    bool same_line(const PluckerLine& o, double tol = kDefaultTolerance) const {
        const S av[6] = {direction.x, direction.y, direction.z, moment.x, moment.y, moment.z};
        const S bv[6] = {o.direction.x, o.direction.y, o.direction.z, o.moment.x, o.moment.y, o.moment.z};
        double residual = 0, scale = 0;
        for (int i = 0; i < 6; ++i) {
            scale = std::max({scale, std::abs(to_double(av[i])), std::abs(to_double(bv[i]))});
            for (int j = i + 1; j < 6; ++j) {
                S r = av[i] * bv[j] - av[j] * bv[i];
                if constexpr (is_exact_v<S>) {
                    if (!scalar_is_zero(r)) return false;
                } else {
                    residual = std::max(residual, std::abs(to_double(r)));
                }
            }
        }
        if constexpr (is_exact_v<S>) return true;
        return residual <= tol * std::max(1.0, scale * scale);
    }
};

// Vectorial dual-quaternionic polynomial satisfying the Plücker condition
// identically: a rational ruled surface in homogeneous line coordinates.
template <ScalarField S>
struct LinePoly {
    QuatPoly<S> primal, dual;

    int degree() const { return std::max(primal.degree(), dual.degree()); }

    DualQuatPoly<S> as_dq() const { return {primal, dual}; }

    PluckerLine<S> ruling_at(const S& t, double tol = kDefaultTolerance) const {
        return PluckerLine<S>(primal(t), dual(t), tol);
    }

    friend bool operator==(const LinePoly& a, const LinePoly& b) = default;
};

// Checks the three defining identities and returns the validated surface.
template <ScalarField S>
LinePoly<S> validate_line_poly(const QuatPoly<S>& primal, const QuatPoly<S>& dual,
                               double tol = kDefaultTolerance) {
    const double scale = std::max(max_abs_coeff(primal), max_abs_coeff(dual));
    auto check_zero = [&](const Poly<S>& p, const char* what, auto make_error) {
        if constexpr (is_exact_v<S>) {
            if (!p.is_zero()) throw make_error(what);
        } else {
            if (!approx_zero(p, tol, scale * scale))
                throw make_error(what);
        }
    };
    auto nv = [](const char* w) { return NotVectorialError(w); };
    auto pv = [](const char* w) { return PluckerViolationError(w); };
    check_zero(primal.w, "scalar part of primal component does not vanish", nv);
    check_zero(dual.w, "scalar part of dual component does not vanish", nv);
    if (primal.is_zero()) throw DegenerateLineError("zero primal part");
    // Plücker condition L_p conj(L_d) + L_d conj(L_p) = 0 reduces to the dot
    // product of the vector parts.
    Poly<S> dot = primal.x * dual.x + primal.y * dual.y + primal.z * dual.z;
    check_zero(dot, "Plücker condition violated", pv);
    return LinePoly<S>{primal, dual};
}

template <ScalarField S>
LinePoly<S> line_poly_from_ruling(const PluckerLine<S>& l) {
    return LinePoly<S>{QuatPoly<S>::constant(l.direction), QuatPoly<S>::constant(l.moment)};
}

// Trajectory of a fixed line of the moving frame under the motion C.
template <ScalarField S>
LinePoly<S> act_on_line(const MotionPoly<S>& C, const PluckerLine<S>& axis = PluckerLine<S>::axis_k(),
                        double tol = kDefaultTolerance) {
    DualQuatPoly<S> a{QuatPoly<S>::constant(axis.direction), QuatPoly<S>::constant(axis.moment)};
    DualQuatPoly<S> e = C.dq().econj();
    DualQuatPoly<S> T = e * a * e.conj();
    try {
        return validate_line_poly(T.p, T.d, tol);
    } catch (const Error& err) {
        throw InternalConsistencyError(std::string("line action produced an invalid line polynomial: ") +
                                       err.what());
    }
}

// Whether norm(L_p) is a square over the coefficient field; returns the exact
// square root when it is. Over the rationals this refuses surfaces whose
// spherical image needs an irrational scaling.
inline std::pair<bool, std::optional<RPoly>> is_kinematic(const LinePoly<Rat>& L) {
    auto s = poly_sqrt(L.primal.norm());
    return {s.has_value(), s};
}

// Common real content of primal and dual parts; a zero dual part contributes
// everything, so that (g·k, 0) reduces to (k, 0).
inline RPoly line_content(const LinePoly<Rat>& L) {
    RPoly gp = rgcd(L.primal);
    if (L.dual.is_zero()) return gp;
    return gcd(gp, rgcd(L.dual));
}

inline bool is_reduced(const LinePoly<Rat>& L) { return line_content(L).is_constant(); }

// Divides out the common real content; the removed factor is monic.
inline std::pair<LinePoly<Rat>, RPoly> reduce(const LinePoly<Rat>& L) {
    RPoly r = line_content(L);
    if (r.is_constant()) return {L, RPoly(Rat(1))};
    LinePoly<Rat> out{exact_div(L.primal, r), L.dual.is_zero() ? L.dual : exact_div(L.dual, r)};
    return {out, r};
}

struct SaturationReport {
    RPoly g;       // rgcd of the direction part
    RPoly ell;     // minimal saturating factor
    RPoly sigma;   // exact square root of norm(L_p)
    bool is_kinematic = false;
    bool is_saturated = false;
    bool is_reduced = false;
};

namespace detail {
// Product of the real-rooted linear factors of a squarefree f. Whole f when
// all of its roots are real; throws when the real part does not split off
// over the rationals.
inline RPoly real_rooted_part(const RPoly& f) {
    const int nreal = sturm_real_root_count(f);
    if (nreal == 0) return RPoly(Rat(1));
    if (nreal == f.degree()) return monic(f);
    auto roots = rational_roots(f);
    if (!roots)
        throw UnsupportedSplittingError("cannot enumerate rational roots of " + to_string(f));
    RPoly part(Rat(1));
    RPoly rest = monic(f);
    for (const auto& r : *roots) {
        RPoly lin = RPoly::monomial(1) - RPoly(r);
        part = part * lin;
        rest = exact_div(rest, lin);
    }
    if (!rest.is_constant() && sturm_real_root_count(rest) > 0)
        throw UnsupportedSplittingError(
            "odd-multiplicity factor mixes rational and irrational real roots: " + to_string(f));
    return part;
}
}  // namespace detail

// Structural analysis of a kinematic surface: real content g of the direction
// part, the minimal saturating factor ell (odd-multiplicity real-rooted part
// of g), and the square root sigma of the norm.
inline SaturationReport saturation_analysis(const LinePoly<Rat>& L) {
    SaturationReport rep;
    auto [kin, sigma] = is_kinematic(L);
    rep.is_kinematic = kin;
    if (!kin) throw NotKinematicError("norm of the direction part is not a rational square");
    rep.sigma = *sigma;
    rep.g = rgcd(L.primal);
    rep.ell = RPoly(Rat(1));
    for (const auto& [f, mult] : squarefree_decompose(rep.g))
        if (mult % 2 == 1) rep.ell = rep.ell * detail::real_rooted_part(f);
    rep.is_saturated = rep.ell.is_constant();
    rep.is_reduced = is_reduced(L);
    return rep;
}

}  // namespace ruledmotion
