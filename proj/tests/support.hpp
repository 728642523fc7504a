#pragma once

#include <array>
#include <initializer_list>
#include <random>
#include <vector>

#include "ruledmotion/dual_solver.hpp"
#include "ruledmotion/line_geometry.hpp"

namespace rmtest {

using namespace ruledmotion;

inline RPoly rp(std::initializer_list<long> cs) {
    std::vector<Rat> v;
    for (long c : cs) v.push_back(Rat(c));
    return RPoly(v);
}

inline Quat<Rat> qk() { return Quat<Rat>::unit_k(); }

// ---------------------------------------------------------------------------
// Golden data: a reduced kinematic surface of degree six, the degree-4 motion
// that sweeps it, two padded variants with known right factors, the
// cylindroid, and the three-line interpolation data set.
// ---------------------------------------------------------------------------
namespace golden {

inline RPoly cofactor() { return rp({10, -6, 1}); }  // t^2 - 6t + 10

inline QuatPoly<Rat> line6_primal() {
    return cofactor() * QuatPoly<Rat>{RPoly(), rp({-14, 2, -4, 2}), rp({-8, -4, 6, -2}),
                                      rp({-8, 14, 1, 0, 1})};
}

inline QuatPoly<Rat> line6_dual() {
    return {RPoly(), rp({0, 112}), rp({-104, 42, -51, 0, 0, 0, 1}), rp({104, -4, -14, 2, -6, 2})};
}

inline LinePoly<Rat> line6() { return validate_line_poly(line6_primal(), line6_dual()); }

// primal cofactor of the minimal motion for line6
inline QuatPoly<Rat> quartic_Q() {
    return {rp({1, 0, 1}), rp({-2, 1}), rp({-3, 1}), rp({2, 1})};
}

inline QuatPoly<Rat> quartic_P() { return cofactor() * quartic_Q(); }

inline QuatPoly<Rat> quartic_D() {
    return {RPoly(Rat(6)), Rat(1, 2) * rp({-8, -33, 7, -1, 1}), Rat(-1) * rp({6, -8, 4}),
            Rat(-1, 2) * rp({32, -17, 11, -5, 1})};
}

inline MotionPoly<Rat> quartic_motion() {
    return MotionPoly<Rat>{DualQuatPoly<Rat>{quartic_P(), quartic_D()}};
}

// raw translational part before the degree reduction
inline QuatPoly<Rat> quartic_D_raw() {
    return {Rat(-1, 10) * rp({52, -2, -7, 1, -3, 1}), Rat(1, 10) * rp({-208, -22, -27, 21, -3, 1}),
            Rat(-1, 10) * rp({-52, 34, -11, 21, -7, 1}),
            Rat(1, 10) * (rp({52, -2, -7, 1, -3, 1}) * rp({-2, 1}))};
}

inline RPoly quartic_lambda() { return Rat(-1, 10) * rp({56, -29, 11, -5, 1}); }

// E = 1 + t k + eps (t - k): a revolute right factor with norm t^2 + 1
inline DualQuatPoly<Rat> revolute_factor() {
    return {QuatPoly<Rat>{rp({1}), RPoly(), RPoly(), rp({0, 1})},
            QuatPoly<Rat>{rp({0, 1}), RPoly(), RPoly(), rp({-1})}};
}

// E = t^2 + 1 + eps k: a translation right factor
inline DualQuatPoly<Rat> translation_factor() {
    return {QuatPoly<Rat>{rp({1, 0, 1}), RPoly(), RPoly(), RPoly()},
            QuatPoly<Rat>{RPoly(), RPoly(), RPoly(), rp({1})}};
}

inline MotionPoly<Rat> quintic_padded() {
    return MotionPoly<Rat>{quartic_motion().dq() * revolute_factor()};
}

inline MotionPoly<Rat> sextic_padded() {
    return MotionPoly<Rat>{quartic_motion().dq() * translation_factor()};
}

// direction-only surface whose content carries an odd real linear factor
inline LinePoly<Rat> saturation_demo() {
    RPoly g = rp({-2, 1}) * rp({1, -1}) * rp({1, -1}) * rp({1, 0, 1});
    QuatPoly<Rat> prim =
        g * QuatPoly<Rat>{RPoly(), rp({0, 8, 8, -2}), rp({0, -8, 8, 2}), rp({-8, 0, 2, 0, 1})};
    return validate_line_poly(prim, QuatPoly<Rat>{});
}

inline RPoly saturation_demo_g() { return rp({-2, 1}) * rp({1, -1}) * rp({1, -1}) * rp({1, 0, 1}); }

// cylindroid, two-to-one rational parametrization, directions in the (j,k)-plane
inline LinePoly<Rat> cylindroid_jk() {
    RPoly g = rp({1, 0, 1}) * rp({1, 0, 1});
    QuatPoly<Rat> prim = g * QuatPoly<Rat>{RPoly(), RPoly(), rp({0, 2}), rp({1, 0, -1})};
    RPoly s = rp({0, -4}) * rp({1, 0, -1});
    QuatPoly<Rat> dual = s * QuatPoly<Rat>{RPoly(), RPoly(), Rat(-1) * rp({1, 0, -1}), rp({0, 2})};
    return validate_line_poly(prim, dual);
}

// same surface with directions in the (i,j)-plane; the generic frame needs a
// coordinate rotation here
inline LinePoly<Rat> cylindroid_ij() {
    RPoly g = rp({1, 0, 1}) * rp({1, 0, 1});
    QuatPoly<Rat> prim = g * QuatPoly<Rat>{RPoly(), rp({1, 0, -1}), rp({0, 2}), RPoly()};
    RPoly s = rp({0, -4}) * rp({1, 0, -1});
    QuatPoly<Rat> dual = s * QuatPoly<Rat>{RPoly(), rp({0, 2}), Rat(-1) * rp({1, 0, -1}), RPoly()};
    return validate_line_poly(prim, dual);
}

// cubic parametrization of the cylindroid: valid line polynomial, spherical
// image not rational, so no rational motion exists
inline LinePoly<Rat> cylindroid_cubic() {
    QuatPoly<Rat> prim{RPoly(), rp({0, 1}) * rp({1, 0, 1}), rp({1, 0, 1}), RPoly()};
    QuatPoly<Rat> dual{RPoly(), rp({0, -2}), rp({0, 0, 2}), RPoly()};
    return validate_line_poly(prim, dual);
}

inline QuatPoly<Rat> cylindroid_Q() {
    return {RPoly(), RPoly(), Rat(-1) * rp({0, 1}), rp({-1})};  // -t j - k
}

inline MotionPoly<Rat> cylindroid_motion() {
    RPoly g = rp({1, 0, 1}) * rp({1, 0, 1});
    QuatPoly<Rat> P = g * cylindroid_Q();
    RPoly s = rp({0, 2}) * rp({-1, 0, 1});  // 2t(t^2-1)
    QuatPoly<Rat> D{RPoly(), RPoly(), Rat(-1) * s, rp({0, 1}) * s};
    return MotionPoly<Rat>{DualQuatPoly<Rat>{P, D}};
}

// three-line interpolation data set and its reference results
inline std::array<PluckerLine<double>, 3> bennett_lines() {
    using Q = Quat<double>;
    return {PluckerLine<double>(Q{0, -0.5692893982, 0.1879452202, 0.8003662757},
                                Q{0, 2.394938124, -1.698415049, 2.102314808}, 1e-8),
            PluckerLine<double>(Q{0, -0.9543899389, 0.1373020929, 0.2651188032},
                                Q{0, 0.8624265591, 1.131167268, 2.518793799}, 1e-8),
            PluckerLine<double>(Q{0, -0.9834592139, -0.04634208347, -0.1751010735},
                                Q{0, -0.4177553080, 2.772307919, 1.612615937}, 1e-8)};
}

inline std::array<std::array<double, 3>, 3> bennett_preimages() {
    return {{{-0.3000113351, 0.09904575183, 0.9487798153},
             {-0.5999916401, 0.08631703309, 0.7953360307},
             {-0.7656688635, -0.03607947323, 0.6422222851}}};
}

// dual part coefficients (w, x, y, z), ascending degree
inline std::array<std::array<double, 4>, 3> bennett_dual() {
    return {{{-10.49908633, 0.0, 7.295181813, -0.7917388696},
             {2.837641695, -0.4807564566, 1.302422976, -0.0368980596},
             {-0.9525313145, -0.4263398024, -0.521506355, 0.2008885718}}};
}

struct BennettFactors {
    std::array<double, 8> c2, h1, h2, k1, k2;  // (pw,px,py,pz,dw,dx,dy,dz)
};

inline BennettFactors bennett_factors() {
    return {{0, 0.0671515410, -0.05483389380, 0.0001650193, -0.9525313145, -0.4263398024,
             -0.5215063550, 0.2008885718},
            {3.437729498, 0.4245869672, -0.6826178148, -1.925681116, 0, -39.06204587, -23.42489306,
             -0.3089744570},
            {-1.847095642, 0.6951435567, 2.046951289, -0.3765517306, 0, 47.58933550, -20.43787422,
             -23.24757084},
            {-1.847095642, 1.867767136, 1.089422750, -0.3736701032, 0, 23.23952734, -50.18964901,
             -30.16489659},
            {3.437729498, -0.7480366121, 0.2749107239, -1.928562744, 0, -14.71223772, 6.326881730,
             6.608351290}};
}

}  // namespace golden

// ---------------------------------------------------------------------------
// Deterministic random generators.
// ---------------------------------------------------------------------------

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    long int_in(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng); }

    Rat rat_small() { return rat(int_in(-5, 5), int_in(1, 3)); }

    double real_in(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng); }
};

inline RPoly random_rpoly(Rng& rng, int deg, bool force_degree = false) {
    std::vector<Rat> cs(static_cast<size_t>(deg) + 1);
    for (auto& c : cs) c = rng.rat_small();
    if (force_degree && scalar_is_zero(cs.back())) cs.back() = Rat(rng.int_in(1, 4));
    return RPoly(cs);
}

inline RPoly random_nonzero_rpoly(Rng& rng, int deg) {
    while (true) {
        RPoly p = random_rpoly(rng, deg);
        if (!p.is_zero()) return p;
    }
}

inline QuatPoly<Rat> random_quatpoly(Rng& rng, int deg) {
    return {random_rpoly(rng, deg), random_rpoly(rng, deg), random_rpoly(rng, deg),
            random_rpoly(rng, deg)};
}

inline QuatPoly<Rat> random_nonzero_quatpoly(Rng& rng, int deg) {
    while (true) {
        QuatPoly<Rat> q = random_quatpoly(rng, deg);
        if (!q.is_zero()) return q;
    }
}

inline Quat<Rat> random_quat(Rng& rng) {
    return {rng.rat_small(), rng.rat_small(), rng.rat_small(), rng.rat_small()};
}

// rational unit quaternion: v^2 / |v|^2
inline Quat<Rat> random_unit_quat(Rng& rng) {
    while (true) {
        Quat<Rat> v{Rat(rng.int_in(-3, 3)), Rat(rng.int_in(-3, 3)), Rat(rng.int_in(-3, 3)),
                    Rat(rng.int_in(-3, 3))};
        if (v.is_zero()) continue;
        Quat<Rat> u = v * v;
        if (u.is_zero()) continue;
        return (Rat(1) / v.norm()) * u;
    }
}

// unit of the form v0 + v3 k (rotation about the moving line)
inline Quat<Rat> random_k_unit(Rng& rng) {
    static const std::pair<long, long> pyth[] = {{1, 0}, {0, 1}, {3, 4}, {4, 3}, {5, 12}, {8, 15}};
    auto [a, b] = pyth[static_cast<size_t>(rng.int_in(0, 5))];
    Rat s = rat_sqrt(Rat(a * a + b * b)).value();
    long sa = rng.int_in(0, 1) ? 1 : -1, sb = rng.int_in(0, 1) ? 1 : -1;
    return {Rat(sa * a) / s, Rat(0), Rat(0), Rat(sb * b) / s};
}

// Linear motion factor t - (p + eps d): real norm needs d0 = 0 and the vector
// of d orthogonal to the vector of p. With `translational`, p is a real
// scalar, which plants a real root into the swept surface's content.
inline DualQuat<Rat> random_motion_root(Rng& rng, bool translational = false) {
    while (true) {
        Quat<Rat> p = translational
                          ? Quat<Rat>{Rat(rng.int_in(-3, 3)), Rat(0), Rat(0), Rat(0)}
                          : random_quat(rng);
        if (p.is_zero()) continue;
        Quat<Rat> r = random_quat(rng);
        // d = vec(p) x vec(r), extended by zero scalar
        Quat<Rat> d{Rat(0), p.y * r.z - p.z * r.y, p.z * r.x - p.x * r.z, p.x * r.y - p.y * r.x};
        if (translational) d = Quat<Rat>{Rat(0), r.x, r.y, r.z};
        return DualQuat<Rat>{p, d};
    }
}

inline MotionPoly<Rat> random_motion(Rng& rng, int degree, bool allow_translational = true) {
    DualQuatPoly<Rat> C = DualQuatPoly<Rat>::constant(DualQuat<Rat>{random_unit_quat(rng)});
    for (int i = 0; i < degree; ++i) {
        bool trans = allow_translational && rng.int_in(0, 4) == 0;
        DualQuat<Rat> h = random_motion_root(rng, trans);
        DualQuatPoly<Rat> lin = DualQuatPoly<Rat>::from_coeffs(
            {-h, DualQuat<Rat>{Quat<Rat>{Rat(1), Rat(0), Rat(0), Rat(0)}}});
        C = C * lin;
    }
    return MotionPoly<Rat>{C};
}

}  // namespace rmtest
