#pragma once

#include <array>
#include <vector>

#include "ruledmotion/line_geometry.hpp"
#include "ruledmotion/numeric.hpp"

namespace ruledmotion {

// Point trajectory: evaluates the motion at t and applies the dual-quaternion
// sandwich to 1 + eps(x i + y j + z k).
template <ScalarField S>
std::array<S, 3> act_on_point(const MotionPoly<S>& C, const S& x, const S& y, const S& z,
                              const S& t) {
    DualQuat<S> c = C.dq()(t);
    S n = c.p.norm();
    if (scalar_is_zero(n)) throw SingularParameterError("motion is singular at this parameter value");
    Quat<S> xq{S(0), x, y, z};
    // eps-conj(c) (1 + eps x) conj(c) = n + eps(p x conj(p) + p conj(d) - d conj(p))
    Quat<S> img = c.p * xq * c.p.conj() + c.p * c.d.conj() - c.d * c.p.conj();
    S inv = S(1) / n;
    return {inv * img.x, inv * img.y, inv * img.z};
}

// A monic linear right factor t - h of a motion polynomial; its norm is a
// real quadratic.
template <ScalarField S>
struct LinearFactor {
    DualQuat<S> h;

    DualQuatPoly<S> as_poly() const {
        return DualQuatPoly<S>::from_coeffs({-h, DualQuat<S>{Quat<S>{S(1), S(0), S(0), S(0)}}});
    }
    Poly<S> norm() const {
        // (t - h) conj(t - h) = t^2 - 2 Sc(h) t + |h|^2, real for factor
        // candidates (d0 = 0, Study pairing 0)
        return Poly<S>(std::vector<S>{h.p.norm(), S(-2) * h.p.w, S(1)});
    }
};

namespace detail {

template <ScalarField S>
std::vector<DualQuat<S>> dq_coeffs(const DualQuatPoly<S>& C) {
    std::vector<DualQuat<S>> cs;
    for (int i = 0; i <= C.degree(); ++i) cs.push_back(C.coeff(i));
    return cs;
}

template <ScalarField S>
double dq_scale(const DualQuatPoly<S>& C) {
    return std::max(1.0, max_abs_coeff(C));
}

inline Eigen::Vector<double, 8> dq_vec(const DualQuat<double>& q) {
    Eigen::Vector<double, 8> v;
    v << q.p.w, q.p.x, q.p.y, q.p.z, q.d.w, q.d.x, q.d.y, q.d.z;
    return v;
}

inline DualQuat<double> dq_unvec(const Eigen::Vector<double, 8>& v) {
    return {Quat<double>{v(0), v(1), v(2), v(3)}, Quat<double>{v(4), v(5), v(6), v(7)}};
}

// Matrix of left multiplication x -> q x on the 8-dimensional algebra.
inline Eigen::Matrix<double, 8, 8> dq_left_mat(const DualQuat<double>& q) {
    Eigen::Matrix<double, 8, 8> m;
    const DualQuat<double> basis[8] = {
        {Quat<double>{1, 0, 0, 0}, {}}, {Quat<double>{0, 1, 0, 0}, {}},
        {Quat<double>{0, 0, 1, 0}, {}}, {Quat<double>{0, 0, 0, 1}, {}},
        {{}, Quat<double>{1, 0, 0, 0}}, {{}, Quat<double>{0, 1, 0, 0}},
        {{}, Quat<double>{0, 0, 1, 0}}, {{}, Quat<double>{0, 0, 0, 1}}};
    for (int c = 0; c < 8; ++c) m.col(c) = dq_vec(q * basis[c]);
    return m;
}

inline Eigen::Matrix<double, 8, 8> dq_right_mat(const DualQuat<double>& q) {
    Eigen::Matrix<double, 8, 8> m;
    const DualQuat<double> basis[8] = {
        {Quat<double>{1, 0, 0, 0}, {}}, {Quat<double>{0, 1, 0, 0}, {}},
        {Quat<double>{0, 0, 1, 0}, {}}, {Quat<double>{0, 0, 0, 1}, {}},
        {{}, Quat<double>{1, 0, 0, 0}}, {{}, Quat<double>{0, 1, 0, 0}},
        {{}, Quat<double>{0, 0, 1, 0}}, {{}, Quat<double>{0, 0, 0, 1}}};
    for (int c = 0; c < 8; ++c) m.col(c) = dq_vec(basis[c] * q);
    return m;
}

// Newton refinement of a right root: drives r(h) = sum_i C_i h^i to machine
// precision. Floating inputs are consistent motion polynomials only up to
// their data precision; the exact right factor of the perturbed polynomial
// lies within Newton range of the classical construction.
inline DualQuat<double> refine_right_root(const std::vector<DualQuat<double>>& cs,
                                          DualQuat<double> h) {
    for (int iter = 0; iter < 8; ++iter) {
        const int n = static_cast<int>(cs.size()) - 1;
        std::vector<DualQuat<double>> hpow(static_cast<size_t>(n) + 1);
        hpow[0] = DualQuat<double>{Quat<double>{1, 0, 0, 0}, {}};
        for (int i = 1; i <= n; ++i) hpow[static_cast<size_t>(i)] = hpow[static_cast<size_t>(i - 1)] * h;
        DualQuat<double> r{};
        for (int i = 0; i <= n; ++i) r = r + cs[static_cast<size_t>(i)] * hpow[static_cast<size_t>(i)];
        Eigen::Vector<double, 8> rv = dq_vec(r);
        if (rv.lpNorm<Eigen::Infinity>() < 1e-14 * std::max(1.0, dq_vec(cs.back()).lpNorm<Eigen::Infinity>()))
            break;
        Eigen::Matrix<double, 8, 8> J = Eigen::Matrix<double, 8, 8>::Zero();
        for (int i = 1; i <= n; ++i)
            for (int a = 0; a < i; ++a)
                J += dq_left_mat(cs[static_cast<size_t>(i)] * hpow[static_cast<size_t>(a)]) *
                     dq_right_mat(hpow[static_cast<size_t>(i - 1 - a)]);
        Eigen::Vector<double, 8> delta = J.fullPivLu().solve(-rv);
        if (!delta.allFinite()) break;
        h = dq_unvec(dq_vec(h) + delta);
    }
    return h;
}

}  // namespace detail

// Splits off the unique monic linear right factor whose norm is the given
// monic quadratic f: C = C_rest * (t - h). Generic case: the linear remainder
// of C modulo f has an invertible leading coefficient.
template <ScalarField S>
std::pair<MotionPoly<S>, LinearFactor<S>> extract_right_factor_quadratic(const MotionPoly<S>& C,
                                                                         const Poly<S>& f,
                                                                         double tol = kDefaultTolerance) {
    if (f.degree() != 2) throw PreconditionError("factor norm must be quadratic");
    if constexpr (is_exact_v<S>) {
        if (f.lc() != S(1)) throw PreconditionError("factor norm must be monic");
        if (!divides(f, C.norm())) throw InvalidFactorError("quadratic does not divide the norm");
    } else {
        if (std::abs(to_double(f.lc()) - 1.0) > tol) throw PreconditionError("factor norm must be monic");
        auto [q, r] = divmod(C.norm(), f);
        if (!approx_zero(r, tol, max_abs_coeff(C.norm())))
            throw InvalidFactorError("quadratic does not divide the norm within tolerance");
    }
    const DualQuatPoly<S>& dq = C.dq();
    // remainder of C modulo the real quadratic f
    DualQuatPoly<S> rem{{divmod(dq.p.w, f).second, divmod(dq.p.x, f).second, divmod(dq.p.y, f).second,
                         divmod(dq.p.z, f).second},
                        {divmod(dq.d.w, f).second, divmod(dq.d.x, f).second, divmod(dq.d.y, f).second,
                         divmod(dq.d.z, f).second}};
    DualQuat<S> c1 = rem.coeff(1), c0 = rem.coeff(0);
    bool invertible;
    if constexpr (is_exact_v<S>)
        invertible = !scalar_is_zero(c1.p.norm());
    else
        invertible = to_double(c1.p.norm()) > tol * detail::dq_scale<S>(dq);
    if (!invertible)
        throw NonGenericFactorizationError("linear remainder has a non-invertible leading coefficient");
    DualQuat<S> h = -(c1.inverse() * c0);
    auto cs = detail::dq_coeffs(dq);
    if constexpr (!is_exact_v<S>) h = detail::refine_right_root(cs, h);
    // synthetic right division by t - h
    const int n = static_cast<int>(cs.size()) - 1;
    if (n < 1) throw PreconditionError("cannot extract a factor from a constant");
    std::vector<DualQuat<S>> rest(static_cast<size_t>(n));
    rest[static_cast<size_t>(n - 1)] = cs[static_cast<size_t>(n)];
    for (int i = n - 1; i >= 1; --i)
        rest[static_cast<size_t>(i - 1)] = cs[static_cast<size_t>(i)] + rest[static_cast<size_t>(i)] * h;
    DualQuat<S> tail = cs[0] + rest[0] * h;
    if constexpr (is_exact_v<S>) {
        if (!tail.is_zero()) throw NonGenericFactorizationError("division by the linear factor is inexact");
    } else {
        DualQuatPoly<S> tp = DualQuatPoly<S>::constant(tail);
        if (max_abs_coeff(tp) > tol * detail::dq_scale<S>(dq))
            throw NonGenericFactorizationError("division by the linear factor is inexact beyond tolerance");
    }
    LinearFactor<S> E{h};
    // norm bookkeeping: (t-h) conj(t-h) must equal f
    Poly<S> nf = E.norm() - f;
    Poly<S> dual_norm{std::vector<S>{S(2) * (h.p.w * h.d.w + h.p.x * h.d.x + h.p.y * h.d.y + h.p.z * h.d.z),
                                     S(-2) * h.d.w}};
    if constexpr (is_exact_v<S>) {
        if (!nf.is_zero() || !dual_norm.is_zero())
            throw NonGenericFactorizationError("extracted factor is not a motion polynomial with norm f");
    } else {
        double sc = detail::dq_scale<S>(dq);
        if (!approx_zero(nf, tol, sc * sc) || !approx_zero(dual_norm, tol, sc * sc))
            throw NonGenericFactorizationError("extracted factor norm deviates from f beyond tolerance");
    }
    return {MotionPoly<S>{DualQuatPoly<S>::from_coeffs(rest), tol}, E};
}

// Splits off a pure-translation right factor E = f^m + eps e7 k when the
// primal part is Q f^m with f coprime to both rgcd(Q) and norm(Q).
inline std::pair<MotionPoly<Rat>, DualQuatPoly<Rat>> peel_translation_factor(const MotionPoly<Rat>& C,
                                                                             const RPoly& f, int m) {
    if (m < 1) throw PreconditionError("multiplicity must be positive");
    RPoly fm(Rat(1));
    for (int i = 0; i < m; ++i) fm = fm * f;
    const QuatPoly<Rat>& P = C.primal();
    QuatPoly<Rat> Q{divmod(P.w, fm).first, divmod(P.x, fm).first, divmod(P.y, fm).first,
                    divmod(P.z, fm).first};
    if (!(fm * Q == P)) throw PreconditionError("primal part is not divisible by f^m");
    if (!gcd(rgcd(Q), f).is_constant())
        throw PreconditionError("cofactor shares real content with f");
    RPoly nq = Q.norm();
    if (!gcd(nq, f).is_constant()) throw PreconditionError("norm of the cofactor is not coprime to f");
    // F = conj(Q) D w mod f^m with w the inverse of norm(Q) modulo f^m
    auto bez = ext_gcd(nq, fm);
    if (!bez.g.is_constant())
        throw PreconditionError("norm of the cofactor is not invertible modulo f^m");
    RPoly w = (Rat(1) / bez.g.coeff(0)) * bez.u;
    QuatPoly<Rat> qd = Q.conj() * C.dual();
    auto red = [&](const RPoly& p) { return divmod(w * p, fm).second; };
    QuatPoly<Rat> F{red(qd.w), red(qd.x), red(qd.y), red(qd.z)};
    if (!F.w.is_zero() || !F.x.is_zero() || !F.y.is_zero())
        throw InternalConsistencyError("translation factor is not of the e7 k form");
    QuatPoly<Rat> K = exact_div(C.dual() - Q * F, fm);
    DualQuatPoly<Rat> E{QuatPoly<Rat>{fm, RPoly(), RPoly(), RPoly()}, F};
    MotionPoly<Rat> rest{DualQuatPoly<Rat>{Q, K}};
    if (!(rest.dq() * E == C.dq())) throw InternalConsistencyError("re-multiplication mismatch");
    return {std::move(rest), std::move(E)};
}

template <ScalarField S>
struct Factorization {
    DualQuat<S> leading;
    std::vector<LinearFactor<S>> factors;  // C = leading * factors[0] * factors[1] * ...

    DualQuatPoly<S> remultiply() const {
        DualQuatPoly<S> out = DualQuatPoly<S>::constant(leading);
        for (const auto& f : factors) out = out * f.as_poly();
        return out;
    }
};

// Peels linear right factors in the order of the given norm quadratics
// (order[0] is the norm of the rightmost factor).
template <ScalarField S>
Factorization<S> factor_into_linear(const MotionPoly<S>& C, const std::vector<Poly<S>>& order,
                                    double tol = kDefaultTolerance) {
    if (static_cast<int>(order.size()) != C.degree())
        throw PreconditionError("need one quadratic per degree of the motion polynomial");
    Factorization<S> out;
    MotionPoly<S> cur = C;
    std::vector<LinearFactor<S>> rev;
    for (const auto& f : order) {
        auto [rest, e] = extract_right_factor_quadratic(cur, f, tol);
        rev.push_back(e);
        cur = std::move(rest);
    }
    if (cur.degree() != 0)
        throw NonGenericFactorizationError("leftover factor of positive degree");
    out.leading = cur.dq().coeff(0);
    out.factors.assign(rev.rbegin(), rev.rend());
    return out;
}

// Conjugate-paired quadratic factors of the norm polynomial, ordered by their
// linear coefficient. Real roots mean a non-generic motion.
inline std::vector<FPoly> norm_quadratics(const MotionPoly<double>& C, double tol = kDefaultTolerance) {
    FPoly nrm = C.norm();
    auto roots = poly_roots(nrm);
    double scale = 0;
    for (const auto& r : roots) scale = std::max(scale, std::abs(r));
    std::vector<FPoly> quads;
    for (const auto& r : roots) {
        if (std::abs(r.imag()) <= tol * std::max(1.0, scale)) {
            throw NonGenericFactorizationError("norm polynomial has a (numerically) real root");
        }
        if (r.imag() < 0) continue;  // keep one of each conjugate pair
        quads.push_back(FPoly(std::vector<double>{std::norm(r), -2.0 * r.real(), 1.0}));
    }
    if (2 * quads.size() != roots.size())
        throw NonGenericFactorizationError("norm roots do not pair into conjugate quadratics");
    std::sort(quads.begin(), quads.end(),
              [](const FPoly& a, const FPoly& b) { return a.coeff(1) < b.coeff(1); });
    return quads;
}

// Plücker coordinates of a factor's axis: the eps-conjugate of its vector
// part, optionally transformed by the inverse of the leading coefficient.
template <ScalarField S>
PluckerLine<S> factor_axis(const LinearFactor<S>& f, double tol = kDefaultTolerance) {
    Quat<S> dir{S(0), f.h.p.x, f.h.p.y, f.h.p.z};
    Quat<S> mom{S(0), -f.h.d.x, -f.h.d.y, -f.h.d.z};
    return PluckerLine<S>(dir, mom, tol);
}

}  // namespace ruledmotion
