#pragma once

#include <array>
#include <vector>

#include "ruledmotion/polynomial.hpp"

namespace ruledmotion {

template <ScalarField S>
struct Quat {
    S w{0}, x{0}, y{0}, z{0};

    Quat() = default;
    Quat(S w_, S x_, S y_, S z_) : w(std::move(w_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

    static Quat unit_i() { return {S(0), S(1), S(0), S(0)}; }
    static Quat unit_j() { return {S(0), S(0), S(1), S(0)}; }
    static Quat unit_k() { return {S(0), S(0), S(0), S(1)}; }

    bool is_zero() const {
        return scalar_is_zero(w) && scalar_is_zero(x) && scalar_is_zero(y) && scalar_is_zero(z);
    }

    friend Quat operator+(const Quat& a, const Quat& b) { return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Quat operator-(const Quat& a, const Quat& b) { return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z}; }
    Quat operator-() const { return {-w, -x, -y, -z}; }
    friend Quat operator*(const Quat& a, const Quat& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }
    friend Quat operator*(const S& s, const Quat& q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }

    Quat conj() const { return {w, -x, -y, -z}; }
    S norm() const { return w * w + x * x + y * y + z * z; }
    Quat inverse() const {
        S n = norm();
        if (scalar_is_zero(n)) throw DivisionByZeroError("inverse of zero quaternion");
        S inv = S(1) / n;
        return inv * conj();
    }

    friend bool operator==(const Quat& a, const Quat& b) = default;
};

// Dual quaternion constant: primal + eps * dual with eps^2 = 0.
template <ScalarField S>
struct DualQuat {
    Quat<S> p, d;

    DualQuat() = default;
    DualQuat(Quat<S> p_, Quat<S> d_ = {}) : p(std::move(p_)), d(std::move(d_)) {}

    bool is_zero() const { return p.is_zero() && d.is_zero(); }

    friend DualQuat operator+(const DualQuat& a, const DualQuat& b) { return {a.p + b.p, a.d + b.d}; }
    friend DualQuat operator-(const DualQuat& a, const DualQuat& b) { return {a.p - b.p, a.d - b.d}; }
    DualQuat operator-() const { return {-p, -d}; }
    friend DualQuat operator*(const DualQuat& a, const DualQuat& b) {
        return {a.p * b.p, a.p * b.d + a.d * b.p};
    }
    friend DualQuat operator*(const S& s, const DualQuat& q) { return {s * q.p, s * q.d}; }

    DualQuat conj() const { return {p.conj(), d.conj()}; }
    DualQuat econj() const { return {p, -d}; }

    // Inverse exists iff the primal norm is nonzero.
    DualQuat inverse() const {
        S n = p.norm();
        if (scalar_is_zero(n)) throw DivisionByZeroError("dual quaternion with zero primal norm");
        S b = S(2) * (p.w * d.w + p.x * d.x + p.y * d.y + p.z * d.z);  // dual part of the norm
        S inv = S(1) / n;
        DualQuat cj = conj();
        return {inv * cj.p, inv * cj.d - (b * inv * inv) * cj.p};
    }

    friend bool operator==(const DualQuat& a, const DualQuat& b) = default;
};

// Quaternionic polynomial P = w + x i + y j + z k with Poly<S> components.
// The indeterminate commutes with the coefficients.
template <ScalarField S>
class QuatPoly {
public:
    Poly<S> w, x, y, z;

    QuatPoly() = default;
    QuatPoly(Poly<S> w_, Poly<S> x_, Poly<S> y_, Poly<S> z_)
        : w(std::move(w_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

    static QuatPoly constant(const Quat<S>& q) {
        return {Poly<S>(q.w), Poly<S>(q.x), Poly<S>(q.y), Poly<S>(q.z)};
    }
    static QuatPoly unit_k() { return constant(Quat<S>::unit_k()); }
    static QuatPoly from_coeffs(const std::vector<Quat<S>>& cs) {
        std::vector<S> cw, cx, cy, cz;
        for (const auto& q : cs) {
            cw.push_back(q.w);
            cx.push_back(q.x);
            cy.push_back(q.y);
            cz.push_back(q.z);
        }
        return {Poly<S>(cw), Poly<S>(cx), Poly<S>(cy), Poly<S>(cz)};
    }

    int degree() const {
        return std::max(std::max(w.degree(), x.degree()), std::max(y.degree(), z.degree()));
    }
    bool is_zero() const { return w.is_zero() && x.is_zero() && y.is_zero() && z.is_zero(); }
    bool is_vectorial() const { return w.is_zero(); }

    Quat<S> coeff(int i) const { return {w.coeff(i), x.coeff(i), y.coeff(i), z.coeff(i)}; }
    Quat<S> operator()(const S& t) const { return {w(t), x(t), y(t), z(t)}; }

    QuatPoly conj() const { return {w, -x, -y, -z}; }
    Poly<S> norm() const { return w * w + x * x + y * y + z * z; }

    friend QuatPoly operator+(const QuatPoly& a, const QuatPoly& b) {
        return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend QuatPoly operator-(const QuatPoly& a, const QuatPoly& b) {
        return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    QuatPoly operator-() const { return {-w, -x, -y, -z}; }
    friend QuatPoly operator*(const QuatPoly& a, const QuatPoly& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }
    friend QuatPoly operator*(const Poly<S>& r, const QuatPoly& q) {
        return {r * q.w, r * q.x, r * q.y, r * q.z};
    }
    friend QuatPoly operator*(const S& s, const QuatPoly& q) {
        return {s * q.w, s * q.x, s * q.y, s * q.z};
    }
    friend QuatPoly operator*(const QuatPoly& a, const Quat<S>& q) { return a * constant(q); }
    friend QuatPoly operator*(const Quat<S>& q, const QuatPoly& a) { return constant(q) * a; }

    friend bool operator==(const QuatPoly& a, const QuatPoly& b) = default;

    friend double max_abs_coeff(const QuatPoly& q) {
        return std::max(std::max(max_abs_coeff(q.w), max_abs_coeff(q.x)),
                        std::max(max_abs_coeff(q.y), max_abs_coeff(q.z)));
    }
};

// Greatest common (monic) real divisor of the four components.
inline RPoly rgcd(const QuatPoly<Rat>& p) {
    if (p.is_zero()) throw PreconditionError("rgcd of zero polynomial");
    RPoly g;
    for (const RPoly* c : {&p.w, &p.x, &p.y, &p.z})
        if (!c->is_zero()) g = g.is_zero() ? monic(*c) : gcd(g, *c);
    return g;
}

inline QuatPoly<Rat> exact_div(const QuatPoly<Rat>& p, const RPoly& r) {
    return {exact_div(p.w, r), exact_div(p.x, r), exact_div(p.y, r), exact_div(p.z, r)};
}

// Dual quaternionic polynomial C = P + eps D; multiplication uses eps^2 = 0.
template <ScalarField S>
class DualQuatPoly {
public:
    QuatPoly<S> p, d;

    DualQuatPoly() = default;
    DualQuatPoly(QuatPoly<S> p_, QuatPoly<S> d_) : p(std::move(p_)), d(std::move(d_)) {}

    static DualQuatPoly constant(const DualQuat<S>& q) {
        return {QuatPoly<S>::constant(q.p), QuatPoly<S>::constant(q.d)};
    }
    static DualQuatPoly from_coeffs(const std::vector<DualQuat<S>>& cs) {
        std::vector<Quat<S>> ps, ds;
        for (const auto& c : cs) {
            ps.push_back(c.p);
            ds.push_back(c.d);
        }
        return {QuatPoly<S>::from_coeffs(ps), QuatPoly<S>::from_coeffs(ds)};
    }

    int degree() const { return std::max(p.degree(), d.degree()); }
    bool is_zero() const { return p.is_zero() && d.is_zero(); }

    DualQuat<S> coeff(int i) const { return {p.coeff(i), d.coeff(i)}; }
    DualQuat<S> operator()(const S& t) const { return {p(t), d(t)}; }

    DualQuatPoly conj() const { return {p.conj(), d.conj()}; }
    DualQuatPoly econj() const { return {p, -d}; }

    friend DualQuatPoly operator+(const DualQuatPoly& a, const DualQuatPoly& b) {
        return {a.p + b.p, a.d + b.d};
    }
    friend DualQuatPoly operator-(const DualQuatPoly& a, const DualQuatPoly& b) {
        return {a.p - b.p, a.d - b.d};
    }
    DualQuatPoly operator-() const { return {-p, -d}; }
    friend DualQuatPoly operator*(const DualQuatPoly& a, const DualQuatPoly& b) {
        return {a.p * b.p, a.p * b.d + a.d * b.p};
    }
    friend DualQuatPoly operator*(const Poly<S>& r, const DualQuatPoly& c) { return {r * c.p, r * c.d}; }
    friend DualQuatPoly operator*(const S& s, const DualQuatPoly& c) { return {s * c.p, s * c.d}; }
    friend DualQuatPoly operator*(const DualQuatPoly& a, const DualQuat<S>& q) {
        return a * constant(q);
    }
    friend DualQuatPoly operator*(const DualQuat<S>& q, const DualQuatPoly& a) {
        return constant(q) * a;
    }

    friend bool operator==(const DualQuatPoly& a, const DualQuatPoly& b) = default;

    // Dual part of the norm; zero iff the Study condition holds.
    QuatPoly<S> study_residual() const { return p * d.conj() + d * p.conj(); }

    friend double max_abs_coeff(const DualQuatPoly& c) {
        return std::max(max_abs_coeff(c.p), max_abs_coeff(c.d));
    }
};

// A motion polynomial: nonzero primal part and identically vanishing Study
// condition, so that the norm is a nonzero real polynomial.
template <ScalarField S>
class MotionPoly {
public:
    explicit MotionPoly(DualQuatPoly<S> c, double tol = kDefaultTolerance) : c_(std::move(c)) {
        if (c_.p.is_zero()) throw PreconditionError("motion polynomial with zero primal part");
        auto sr = c_.study_residual();
        if constexpr (is_exact_v<S>) {
            if (!sr.is_zero()) throw PreconditionError("Study condition violated");
        } else {
            if (max_abs_coeff(sr) > tol * std::max(1.0, max_abs_coeff(c_) * max_abs_coeff(c_)))
                throw PreconditionError("Study condition violated beyond tolerance");
        }
    }

    const DualQuatPoly<S>& dq() const { return c_; }
    const QuatPoly<S>& primal() const { return c_.p; }
    const QuatPoly<S>& dual() const { return c_.d; }
    int degree() const { return c_.degree(); }
    Poly<S> norm() const { return c_.p.norm(); }

    friend bool operator==(const MotionPoly& a, const MotionPoly& b) { return a.c_ == b.c_; }

private:
    DualQuatPoly<S> c_;
};

// ---------------------------------------------------------------------------
// The commutative subring Q[k][t] (isomorphic to Gaussian-rational
// polynomials). Elements re + im*k commute with each other and with k.
// ---------------------------------------------------------------------------

struct CxRat {
    Rat re{0}, im{0};
    bool is_zero() const { return scalar_is_zero(re) && scalar_is_zero(im); }
    friend CxRat operator*(const CxRat& a, const CxRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    CxRat inverse() const {
        Rat n = re * re + im * im;
        if (scalar_is_zero(n)) throw DivisionByZeroError("inverse of zero");
        return {re / n, -im / n};
    }
};

struct CxPoly {
    RPoly re, im;

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    int degree() const { return std::max(re.degree(), im.degree()); }
    CxRat coeff(int i) const { return {re.coeff(i), im.coeff(i)}; }
    CxPoly conj() const { return {re, -im}; }
    RPoly norm() const { return re * re + im * im; }

    friend CxPoly operator+(const CxPoly& a, const CxPoly& b) { return {a.re + b.re, a.im + b.im}; }
    friend CxPoly operator-(const CxPoly& a, const CxPoly& b) { return {a.re - b.re, a.im - b.im}; }
    friend CxPoly operator*(const CxPoly& a, const CxPoly& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CxPoly operator*(const CxRat& s, const CxPoly& p) {
        return CxPoly{s.re * p.re, s.re * p.im} + CxPoly{-(s.im * p.im), s.im * p.re};
    }
    friend bool operator==(const CxPoly& a, const CxPoly& b) = default;

    // As a quaternionic polynomial a + b k.
    QuatPoly<Rat> as_quat() const { return {re, RPoly(), RPoly(), im}; }
};

inline std::pair<CxPoly, CxPoly> divmod(const CxPoly& a, const CxPoly& b) {
    if (b.is_zero()) throw DivisionByZeroError();
    CxPoly q{}, r = a;
    const CxRat lb_inv = b.coeff(b.degree()).inverse();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const int k = r.degree() - b.degree();
        CxRat c = lb_inv * r.coeff(r.degree());
        CxPoly term{RPoly::monomial(k, c.re), RPoly::monomial(k, c.im)};
        q = q + term;
        r = r - term * b;
    }
    return {q, r};
}

// Monic gcd over Q[k][t].
inline CxPoly cx_gcd(const CxPoly& a, const CxPoly& b) {
    CxPoly x = a, y = b;
    while (!y.is_zero()) {
        auto r = divmod(x, y).second;
        x = y;
        y = r;
    }
    if (x.is_zero()) throw PreconditionError("gcd of two zero polynomials");
    return x.coeff(x.degree()).inverse() * x;
}

// Decompose a quaternionic polynomial as alpha + i*beta with alpha, beta in
// Q[k][t]: alpha = w + z k, beta = x - y k.
inline std::pair<CxPoly, CxPoly> split_k_plane(const QuatPoly<Rat>& q) {
    return {CxPoly{q.w, q.z}, CxPoly{q.x, -q.y}};
}

// Reassemble alpha + i*beta.
inline QuatPoly<Rat> join_k_plane(const CxPoly& alpha, const CxPoly& beta) {
    return {alpha.re, beta.re, -beta.im, alpha.im};
}

}  // namespace ruledmotion
