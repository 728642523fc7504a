#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>

#include <gmpxx.h>

#include "ruledmotion/errors.hpp"

namespace ruledmotion {

// Exact coefficient field: arbitrary-precision rationals. GMP keeps values
// reduced with positive denominator after every canonicalize().
using Rat = mpq_class;

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rat>;

template <class S>
concept ScalarField = std::is_same_v<S, Rat> || std::is_same_v<S, double>;

// Default comparison tolerance for float-mode data normalized to unit scale.
inline constexpr double kDefaultTolerance = 1e-9;

inline Rat rat(long n, long d = 1) {
    if (d == 0) throw DivisionByZeroError("rational with zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

// Accepts "p", "p/q", or a decimal literal such as "-1.25" or "3e-2".
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    const auto epos = s.find_first_of("eE");
    const auto dot = s.find('.');
    if (dot != std::string::npos || epos != std::string::npos) {
        // decimal literal: mantissa scaled by a power of ten
        std::string mant = epos == std::string::npos ? s : s.substr(0, epos);
        long exp10 = 0;
        if (epos != std::string::npos) exp10 = std::stol(s.substr(epos + 1));
        const auto d2 = mant.find('.');
        if (d2 != std::string::npos) {
            exp10 -= static_cast<long>(mant.size() - d2 - 1);
            mant.erase(d2, 1);
        }
        if (mant.empty() || mant == "-" || mant == "+") throw ParseError("bad decimal literal: " + s);
        try {
            mpz_class m(mant);
            Rat r(m);
            mpz_class p10;
            mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(exp10)));
            if (exp10 >= 0)
                r *= Rat(p10);
            else
                r /= Rat(p10);
            r.canonicalize();
            return r;
        } catch (const std::invalid_argument&) {
            throw ParseError("bad decimal literal: " + s);
        }
    }
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0) throw ParseError("bad rational literal: " + s);
    if (r.get_den() == 0) throw DivisionByZeroError("rational with zero denominator: " + s);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

// Shortest round-trip decimal form.
inline std::string to_string(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline double to_double(const Rat& r) { return r.get_d(); }
inline double to_double(double x) { return x; }

template <ScalarField S>
inline S scalar_from_string(const std::string& s) {
    if constexpr (is_exact_v<S>) {
        return rat_from_string(s);
    } else {
        double v = 0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size())
            throw ParseError("bad float literal: " + s);
        return v;
    }
}

template <ScalarField S>
inline bool scalar_is_zero(const S& s) {
    if constexpr (is_exact_v<S>)
        return sgn(s) == 0;
    else
        return s == 0.0;
}

inline std::optional<Rat> rat_sqrt(const Rat& r) {
    if (sgn(r) < 0) return std::nullopt;
    const mpz_class num = r.get_num(), den = r.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    Rat s(sn, sd);
    s.canonicalize();
    return s;
}

// Largest s with s^2 dividing r "visibly": exact square root when r is a
// perfect square, otherwise square factors found by trial division up to a
// small bound. Used only to keep carried normalizers small.
inline Rat rat_square_part(const Rat& r) {
    if (sgn(r) <= 0) return Rat(1);
    if (auto s = rat_sqrt(r)) return *s;
    auto square_part_z = [](mpz_class n) {
        mpz_class s(1);
        for (unsigned long p = 2; p < 1000; p = (p == 2 ? 3 : p + 2)) {
            mpz_class p2 = mpz_class(p) * p;
            while (mpz_divisible_p(n.get_mpz_t(), p2.get_mpz_t())) {
                n /= p2;
                s *= p;
            }
        }
        return s;
    };
    Rat s(square_part_z(r.get_num()), square_part_z(r.get_den()));
    s.canonicalize();
    return s;
}

}  // namespace ruledmotion
