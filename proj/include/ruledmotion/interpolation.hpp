#pragma once

#include <array>
#include <cmath>

#include "ruledmotion/motion_ops.hpp"

namespace ruledmotion {

// One solution p of p k conj(p) = dir: the half-turn about the bisector of k
// and dir, scaled by sqrt(|dir|), rotated about k by phi. dir antiparallel to
// k falls back to the half-turn about i.
inline Quat<double> preimage_half_turn(const Quat<double>& dir, double phi = 0.0,
                                       double tol = kDefaultTolerance) {
    if (!scalar_is_zero(dir.w)) throw PreconditionError("direction must be vectorial");
    const double n = std::sqrt(dir.norm());
    if (n == 0.0) throw PreconditionError("zero direction");
    Quat<double> u{0.0, dir.x / n, dir.y / n, dir.z / n};
    Quat<double> b = u + Quat<double>::unit_k();
    const double bn = std::sqrt(b.norm());
    Quat<double> base;
    if (bn <= tol) {
        base = std::sqrt(n) * Quat<double>::unit_i();  // maps k to -k
    } else {
        base = (std::sqrt(n) / bn) * b;
    }
    return base * Quat<double>{std::cos(phi), 0.0, 0.0, std::sin(phi)};
}

struct BennettResult {
    MotionPoly<double> C;              // canonical representative (minimum-norm dual part)
    DualQuat<double> leading;          // shared leading coefficient of both factorizations
    Factorization<double> factorization_a, factorization_b;
    std::array<PluckerLine<double>, 4> axes;  // a.left, a.right, b.left, b.right
    LinePoly<double> L;                // interpolating kinematic ruled surface
    QuatPoly<double> family_direction; // P k; dual parts D + lambda0 * P k stay solutions
    std::array<Quat<double>, 3> preimages;
    double surface_residual = 0;       // moment interpolation system
    double dual_residual = 0;          // motion dual-part system
};

struct InterpolateOptions {
    std::array<double, 3> phis{0.0, 0.0, 0.0};
    double tolerance = kDefaultTolerance;
    bool axes_in_base_frame = false;  // transform axes by the inverse leading coefficient
};

namespace detail {

inline FPoly lagrange_basis(const std::array<double, 3>& knots, int i) {
    FPoly num(1.0);
    double den = 1.0;
    for (int j = 0; j < 3; ++j) {
        if (j == i) continue;
        num = num * FPoly(std::vector<double>{-knots[static_cast<size_t>(j)], 1.0});
        den *= knots[static_cast<size_t>(i)] - knots[static_cast<size_t>(j)];
    }
    return (1.0 / den) * num;
}

}  // namespace detail

// Degree-2 motion through three prescribed lines: its coupler is a Bennett
// linkage whose axes come from the two factorizations into linear factors.
inline BennettResult interpolate_three_lines(const std::array<PluckerLine<double>, 3>& lines_in,
                                             const std::array<double, 3>& knots,
                                             const std::array<double, 3>& weights,
                                             const InterpolateOptions& opts = {}) {
    const double tol = opts.tolerance;
    if (!(knots[0] < knots[1] && knots[1] < knots[2]))
        throw PreconditionError("knots must be strictly increasing");
    for (double w : weights)
        if (w == 0.0) throw PreconditionError("weights must be nonzero");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (lines_in[static_cast<size_t>(i)].same_line(lines_in[static_cast<size_t>(j)], tol))
                throw DegenerateInputError("prescribed lines must be pairwise distinct");

    // negative weights flip the homogeneous line coordinates instead
    std::array<Quat<double>, 3> dirs, moms;
    std::array<double, 3> w_abs{};
    for (int i = 0; i < 3; ++i) {
        const double s = weights[static_cast<size_t>(i)] < 0 ? -1.0 : 1.0;
        w_abs[static_cast<size_t>(i)] = std::abs(weights[static_cast<size_t>(i)]);
        dirs[static_cast<size_t>(i)] = s * lines_in[static_cast<size_t>(i)].direction;
        moms[static_cast<size_t>(i)] = s * lines_in[static_cast<size_t>(i)].moment;
    }

    std::array<Quat<double>, 3> pre;
    QuatPoly<double> P;
    for (int i = 0; i < 3; ++i) {
        pre[static_cast<size_t>(i)] =
            std::sqrt(w_abs[static_cast<size_t>(i)]) *
            preimage_half_turn(dirs[static_cast<size_t>(i)], opts.phis[static_cast<size_t>(i)], tol);
        FPoly li = detail::lagrange_basis(knots, i);
        P = P + QuatPoly<double>{li * FPoly(pre[static_cast<size_t>(i)].w),
                                 li * FPoly(pre[static_cast<size_t>(i)].x),
                                 li * FPoly(pre[static_cast<size_t>(i)].y),
                                 li * FPoly(pre[static_cast<size_t>(i)].z)};
    }
    QuatPoly<double> K = QuatPoly<double>::unit_k();
    QuatPoly<double> Lp = P * K * P.conj();
    const int ld_deg = 4, ld_unknowns = 3 * (ld_deg + 1);
    const double lp_scale = std::max(1.0, max_abs_coeff(Lp));

    // moment part: Plücker condition coefficient-wise plus the three
    // interpolation conditions
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(9 + 9, ld_unknowns);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(9 + 9);
    const FPoly* lp_comp[3] = {&Lp.x, &Lp.y, &Lp.z};
    for (int mdeg = 0; mdeg < 9; ++mdeg)
        for (int j = 0; j <= ld_deg; ++j) {
            int i = mdeg - j;
            if (i < 0 || i > 4) continue;
            for (int comp = 0; comp < 3; ++comp)
                A(mdeg, 3 * j + comp) += lp_comp[comp]->coeff(i);
        }
    int row = 9;
    for (int i = 0; i < 3; ++i) {
        const double ti = knots[static_cast<size_t>(i)];
        const double target[3] = {moms[static_cast<size_t>(i)].x, moms[static_cast<size_t>(i)].y,
                                  moms[static_cast<size_t>(i)].z};
        for (int comp = 0; comp < 3; ++comp) {
            for (int j = 0; j <= ld_deg; ++j) A(row, 3 * j + comp) = std::pow(ti, j);
            rhs(row) = w_abs[static_cast<size_t>(i)] * target[comp];
            ++row;
        }
    }
    LstsqResult ld = lstsq_min_norm(A, rhs);
    if (ld.rank < ld_unknowns)
        throw InterpolationFailure("moment system is rank deficient (rank " + std::to_string(ld.rank) + ")");
    if (ld.residual > 1e3 * tol * lp_scale)
        throw InterpolationFailure("moment system residual " + to_string(ld.residual));
    QuatPoly<double> Ld;
    {
        std::vector<double> cx, cy, cz;
        for (int j = 0; j <= ld_deg; ++j) {
            cx.push_back(ld.x(3 * j + 0));
            cy.push_back(ld.x(3 * j + 1));
            cz.push_back(ld.x(3 * j + 2));
        }
        Ld = QuatPoly<double>{FPoly(), FPoly(cx), FPoly(cy), FPoly(cz)};
    }
    LinePoly<double> L = validate_line_poly(Lp, Ld, 1e3 * tol);

    // dual part of the motion: linear system from the translational equation
    // and the Study condition, deg D = deg P = 2
    const int d_unknowns = 12;
    const int nrows = 5 * 3 + 5;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nrows, d_unknowns);
    Eigen::VectorXd brhs = Eigen::VectorXd::Zero(nrows);
    for (int e = 0; e < d_unknowns; ++e) {
        std::vector<Quat<double>> dc(3);
        double unit[12] = {};
        unit[e] = 1.0;
        for (int j = 0; j < 3; ++j)
            dc[static_cast<size_t>(j)] = {unit[4 * j + 0], unit[4 * j + 1], unit[4 * j + 2],
                                          unit[4 * j + 3]};
        QuatPoly<double> D = QuatPoly<double>::from_coeffs(dc);
        QuatPoly<double> e5 = -(P * K * D.conj()) - D * K * P.conj();
        QuatPoly<double> e6 = P * D.conj() + D * P.conj();
        for (int mdeg = 0; mdeg < 5; ++mdeg) {
            B(3 * mdeg + 0, e) = e5.x.coeff(mdeg);
            B(3 * mdeg + 1, e) = e5.y.coeff(mdeg);
            B(3 * mdeg + 2, e) = e5.z.coeff(mdeg);
            B(15 + mdeg, e) = e6.w.coeff(mdeg);
        }
    }
    for (int mdeg = 0; mdeg < 5; ++mdeg) {
        brhs(3 * mdeg + 0) = Ld.x.coeff(mdeg);
        brhs(3 * mdeg + 1) = Ld.y.coeff(mdeg);
        brhs(3 * mdeg + 2) = Ld.z.coeff(mdeg);
    }
    LstsqResult ds = lstsq_min_norm(B, brhs);
    if (ds.rank < d_unknowns - 1)
        throw InterpolationFailure("dual-part system is rank deficient (rank " + std::to_string(ds.rank) +
                                   ")");
    if (ds.residual > 1e3 * tol * std::max(1.0, max_abs_coeff(Ld)))
        throw InterpolationFailure("dual-part system residual " + to_string(ds.residual));
    std::vector<Quat<double>> dcoef(3);
    for (int j = 0; j < 3; ++j)
        dcoef[static_cast<size_t>(j)] = {ds.x(4 * j + 0), ds.x(4 * j + 1), ds.x(4 * j + 2),
                                         ds.x(4 * j + 3)};
    QuatPoly<double> D = QuatPoly<double>::from_coeffs(dcoef);

    MotionPoly<double> C{DualQuatPoly<double>{P, D}, 1e3 * tol};
    auto quads = norm_quadratics(C, tol);
    if (quads.size() != 2) throw NonGenericFactorizationError("expected two quadratic norm factors");
    Factorization<double> fa = factor_into_linear(C, {quads[0], quads[1]}, 1e3 * tol);
    Factorization<double> fb = factor_into_linear(C, {quads[1], quads[0]}, 1e3 * tol);

    auto axis_of = [&](const LinearFactor<double>& f) {
        if (!opts.axes_in_base_frame) return factor_axis(f, 1e3 * tol);
        DualQuat<double> lead_inv = fa.leading.inverse();
        MotionPoly<double> move{DualQuatPoly<double>::constant(lead_inv), 1e3 * tol};
        LinePoly<double> moved = act_on_line(move, factor_axis(f, 1e3 * tol), 1e3 * tol);
        return moved.ruling_at(0.0, 1e3 * tol);
    };
    BennettResult out{
        std::move(C),
        fa.leading,
        fa,
        fb,
        {axis_of(fa.factors[0]), axis_of(fa.factors[1]), axis_of(fb.factors[0]), axis_of(fb.factors[1])},
        std::move(L),
        P * K,
        pre,
        ld.residual,
        ds.residual};
    return out;
}

}  // namespace ruledmotion
