#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "ruledmotion/errors.hpp"
#include "ruledmotion/scalar.hpp"

namespace ruledmotion {

// Degree of the zero polynomial. Kept far from -1 so that accidental
// arithmetic on it stays obviously out of range.
inline constexpr int kNegInfDegree = std::numeric_limits<int>::min() / 4;

inline int deg_add(int a, int b) {
    if (a == kNegInfDegree || b == kNegInfDegree) return kNegInfDegree;
    return a + b;
}

// Univariate polynomial with coefficients in S, stored ascending by degree.
// The zero polynomial is the empty coefficient list.
template <ScalarField S>
class Poly {
public:
    Poly() = default;
    Poly(const S& constant) {  // NOLINT: implicit by design
        if (!scalar_is_zero(constant)) c_.push_back(constant);
    }
    Poly(long constant) : Poly(S(constant)) {}
    explicit Poly(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(int deg, const S& coeff = S(1)) {
        if (scalar_is_zero(coeff)) return Poly();
        Poly p;
        p.c_.assign(static_cast<size_t>(deg) + 1, S(0));
        p.c_.back() = coeff;
        return p;
    }

    int degree() const { return c_.empty() ? kNegInfDegree : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    const S& lc() const {
        if (c_.empty()) throw PreconditionError("leading coefficient of zero polynomial");
        return c_.back();
    }

    S coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return S(0);
        return c_[static_cast<size_t>(i)];
    }

    const std::vector<S>& coeffs() const { return c_; }

    S operator()(const S& t) const {
        S acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    Poly derivative() const {
        Poly d;
        for (size_t i = 1; i < c_.size(); ++i) d.c_.push_back(S(static_cast<long>(i)) * c_[i]);
        d.trim();
        return d;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), S(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        Poly r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, S(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        r.trim();
        return r;
    }
    friend Poly operator*(const S& s, const Poly& p) {
        if (scalar_is_zero(s)) return Poly();
        Poly r = p;
        for (auto& x : r.c_) x = s * x;
        return r;
    }
    friend Poly operator*(const Poly& p, const S& s) { return s * p; }

    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    friend bool operator==(const Poly& a, const Poly& b) = default;

private:
    void trim() {
        while (!c_.empty() && scalar_is_zero(c_.back())) c_.pop_back();
    }
    std::vector<S> c_;
};

using RPoly = Poly<Rat>;
using FPoly = Poly<double>;

// a = q*b + r with deg r < deg b. Exact over the rationals.
template <ScalarField S>
std::pair<Poly<S>, Poly<S>> divmod(const Poly<S>& a, const Poly<S>& b) {
    if (b.is_zero()) throw DivisionByZeroError();
    if (a.degree() < b.degree()) return {Poly<S>(), a};
    std::vector<S> rem(a.coeffs());
    std::vector<S> quot(static_cast<size_t>(a.degree() - b.degree()) + 1, S(0));
    const S inv_lc = S(1) / b.lc();
    for (int i = a.degree() - b.degree(); i >= 0; --i) {
        S q = rem[static_cast<size_t>(i + b.degree())] * inv_lc;
        quot[static_cast<size_t>(i)] = q;
        if (scalar_is_zero(q)) continue;
        for (int j = 0; j <= b.degree(); ++j) rem[static_cast<size_t>(i + j)] -= q * b.coeff(j);
    }
    return {Poly<S>(std::move(quot)), Poly<S>(std::move(rem))};
}

// Quotient of an exact division; throws if the remainder is nonzero.
template <ScalarField S>
Poly<S> exact_div(const Poly<S>& a, const Poly<S>& b) {
    auto [q, r] = divmod(a, b);
    if constexpr (is_exact_v<S>) {
        if (!r.is_zero()) throw InternalConsistencyError("inexact polynomial division");
    }
    return q;
}

template <ScalarField S>
bool divides(const Poly<S>& b, const Poly<S>& a) {
    if (b.is_zero()) return a.is_zero();
    return divmod(a, b).second.is_zero();
}

inline RPoly monic(const RPoly& p) {
    if (p.is_zero()) return p;
    return (Rat(1) / p.lc()) * p;
}

inline RPoly gcd(const RPoly& a, const RPoly& b) {
    RPoly x = a, y = b;
    while (!y.is_zero()) {
        auto r = divmod(x, y).second;
        x = y;
        y = r;
    }
    return monic(x);
}

struct ExtGcd {
    RPoly g, u, v;  // u*a + v*b = g, g monic
};

// Extended Euclid with the canonical minimal-degree pair:
// deg u < deg b - deg g and deg v < deg a - deg g (when both inputs are
// nonzero and neither divides the other trivially).
inline ExtGcd ext_gcd(const RPoly& a, const RPoly& b) {
    if (a.is_zero() && b.is_zero()) throw PreconditionError("ext_gcd of two zero polynomials");
    if (b.is_zero()) return {monic(a), RPoly(Rat(1) / a.lc()), RPoly()};
    if (a.is_zero()) return {monic(b), RPoly(), RPoly(Rat(1) / b.lc())};
    RPoly r0 = a, r1 = b;
    RPoly u0(Rat(1)), u1;
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        RPoly u2 = u0 - q * u1;
        r0 = r1; r1 = r2;
        u0 = u1; u1 = u2;
    }
    Rat s = Rat(1) / r0.lc();
    RPoly g = s * r0;
    RPoly u = s * u0;
    // reduce u modulo b/g for the minimal-degree representative
    RPoly bg = exact_div(b, g);
    if (!bg.is_constant()) u = divmod(u, bg).second;
    RPoly v = exact_div(g - u * a, b);
    return {g, u, v};
}

// Yun's algorithm: p = lc * prod f_i^{m_i} with the f_i monic, squarefree and
// pairwise coprime.
inline std::vector<std::pair<RPoly, int>> squarefree_decompose(const RPoly& p) {
    if (p.is_zero()) throw PreconditionError("squarefree decomposition of zero");
    std::vector<std::pair<RPoly, int>> out;
    RPoly f = monic(p);
    if (f.is_constant()) return out;
    RPoly fp = f.derivative();
    RPoly a = gcd(f, fp);
    RPoly b = exact_div(f, a);
    RPoly c = exact_div(fp, a);
    RPoly d = c - b.derivative();
    int m = 1;
    while (!(b.is_constant())) {
        RPoly g = gcd(b, d);
        if (!g.is_constant()) out.emplace_back(g, m);
        b = exact_div(b, g);
        c = exact_div(d, g);
        d = c - b.derivative();
        ++m;
    }
    return out;
}

namespace detail {
inline int sign_at_inf(const RPoly& p, bool plus_inf) {
    if (p.is_zero()) return 0;
    int s = sgn(p.lc());
    if (!plus_inf && p.degree() % 2 != 0) s = -s;
    return s;
}
inline int sign_variations(const std::vector<int>& signs) {
    int v = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}
}  // namespace detail

// Number of distinct real roots of a squarefree p in (lo, hi]; an absent
// bound means the corresponding infinity.
inline int sturm_real_root_count(const RPoly& p, std::optional<Rat> lo = {},
                                 std::optional<Rat> hi = {}) {
    if (p.is_zero()) throw PreconditionError("Sturm count of zero polynomial");
    if (p.is_constant()) return 0;
    if (!gcd(p, p.derivative()).is_constant())
        throw PreconditionError("Sturm count requires a squarefree polynomial");
    std::vector<RPoly> chain{p, p.derivative()};
    while (!chain.back().is_zero()) {
        auto r = divmod(chain[chain.size() - 2], chain.back()).second;
        chain.push_back(-r);
    }
    chain.pop_back();
    auto variations_at = [&](const std::optional<Rat>& x, bool plus_inf) {
        std::vector<int> signs;
        signs.reserve(chain.size());
        for (const auto& q : chain)
            signs.push_back(x ? sgn(q(*x)) : detail::sign_at_inf(q, plus_inf));
        return detail::sign_variations(signs);
    };
    return variations_at(lo, false) - variations_at(hi, true);
}

// Exact square root in Q[t]: s with s*s == p and positive leading
// coefficient, or nullopt when p is not a square over the rationals.
inline std::optional<RPoly> poly_sqrt(const RPoly& p) {
    if (p.is_zero()) throw PreconditionError("square root of zero polynomial");
    if (p.degree() % 2 != 0) return std::nullopt;
    auto lead = rat_sqrt(p.lc());
    if (!lead) return std::nullopt;
    const int m = p.degree() / 2;
    std::vector<Rat> s(static_cast<size_t>(m) + 1, Rat(0));
    s[static_cast<size_t>(m)] = *lead;
    // match coefficients from the top down
    for (int k = m - 1; k >= 0; --k) {
        Rat acc = p.coeff(m + k);
        for (int i = k + 1; i < m; ++i) {
            int j = m + k - i;
            if (j > k && j < m) acc -= s[static_cast<size_t>(i)] * s[static_cast<size_t>(j)];
        }
        s[static_cast<size_t>(k)] = acc / (Rat(2) * *lead);
    }
    RPoly cand((std::vector<Rat>(s)));
    if (cand * cand == p) return cand;
    return std::nullopt;
}

// All rational roots of p (without multiplicity). nullopt when the divisor
// enumeration is infeasible, which the caller must treat as "unknown".
inline std::optional<std::vector<Rat>> rational_roots(const RPoly& p) {
    if (p.is_zero() || p.is_constant()) return std::vector<Rat>{};
    // clear denominators and content
    mpz_class den(1);
    for (const auto& c : p.coeffs()) den = den / gcd(den, c.get_den()) * c.get_den();
    std::vector<mpz_class> zc;
    zc.reserve(p.coeffs().size());
    mpz_class cont(0);
    for (const auto& c : p.coeffs()) {
        mpz_class v = c.get_num() * (den / c.get_den());
        cont = gcd(cont, v);
        zc.push_back(v);
    }
    if (cont != 0)
        for (auto& v : zc) v /= cont;
    std::vector<Rat> roots;
    RPoly q = p;
    while (!q.is_zero() && scalar_is_zero(q.coeff(0))) {  // root at 0
        if (roots.empty()) roots.push_back(Rat(0));
        q = exact_div(q, RPoly::monomial(1));
    }
    auto divisors = [](mpz_class n) -> std::optional<std::vector<mpz_class>> {
        n = abs(n);
        std::vector<std::pair<mpz_class, int>> fac;
        for (unsigned long d = 2; mpz_class(d) * d <= n && d < 2'000'000; d = (d == 2 ? 3 : d + 2)) {
            int e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
                n /= d;
                ++e;
            }
            if (e) fac.emplace_back(d, e);
        }
        if (n > 1) {
            if (!mpz_probab_prime_p(n.get_mpz_t(), 30)) return std::nullopt;  // cannot factor
            fac.emplace_back(n, 1);
        }
        std::vector<mpz_class> ds{1};
        for (const auto& [pr, e] : fac) {
            const size_t base = ds.size();
            mpz_class pw(1);
            for (int i = 1; i <= e; ++i) {
                pw *= pr;
                for (size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pw);
            }
        }
        return ds;
    };
    mpz_class a0(0), an(0);
    {
        // coefficients of the primitive integer polynomial for q
        mpz_class dn(1);
        for (const auto& c : q.coeffs()) dn = dn / gcd(dn, c.get_den()) * c.get_den();
        mpz_class ct(0);
        std::vector<mpz_class> zq;
        for (const auto& c : q.coeffs()) {
            mpz_class v = c.get_num() * (dn / c.get_den());
            ct = gcd(ct, v);
            zq.push_back(v);
        }
        if (ct != 0)
            for (auto& v : zq) v /= ct;
        if (zq.empty()) return roots;
        a0 = zq.front();
        an = zq.back();
    }
    if (a0 == 0) return roots;  // constant after trailing-root removal
    auto d0 = divisors(a0);
    auto dn = divisors(an);
    if (!d0 || !dn) return std::nullopt;
    for (const auto& pnum : *d0)
        for (const auto& qden : *dn)
            for (int sign : {1, -1}) {
                Rat cand(sign * pnum, qden);
                cand.canonicalize();
                if (scalar_is_zero(q(cand))) {
                    if (std::find(roots.begin(), roots.end(), cand) == roots.end())
                        roots.push_back(cand);
                }
            }
    return roots;
}

// Positive rational r with p = r * (primitive integer polynomial).
inline Rat rational_content(const RPoly& p) {
    if (p.is_zero()) return Rat(0);
    mpz_class den(1);
    for (const auto& c : p.coeffs()) den = den / gcd(den, c.get_den()) * c.get_den();
    mpz_class num(0);
    for (const auto& c : p.coeffs()) num = gcd(num, c.get_num() * (den / c.get_den()));
    Rat r(num, den);
    r.canonicalize();
    return r;
}

template <ScalarField S>
double max_abs_coeff(const Poly<S>& p) {
    double m = 0;
    for (const auto& c : p.coeffs()) m = std::max(m, std::abs(to_double(c)));
    return m;
}

template <ScalarField S>
bool approx_zero(const Poly<S>& p, double tol, double scale = 1.0) {
    return max_abs_coeff(p) <= tol * std::max(scale, 1.0);
}

template <ScalarField S>
std::string to_string(const Poly<S>& p, const std::string& var = "t") {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = 0; i <= p.degree(); ++i) {
        S c = p.coeff(i);
        if (scalar_is_zero(c)) continue;
        std::string cs = ruledmotion::to_string(c);
        bool neg = cs.front() == '-';
        if (neg) cs.erase(0, 1);
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        const bool unit = cs == "1";
        if (i == 0) {
            out += cs;
        } else {
            if (!unit) out += cs + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace ruledmotion
