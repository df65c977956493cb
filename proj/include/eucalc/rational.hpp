#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "eucalc/errors.hpp"

namespace eucalc {

// Arbitrary-precision rational. mpq_class keeps values canonical
// (lowest terms, positive denominator) as long as we canonicalize
// after raw construction, which parse_rational does.
using Rational = mpq_class;

using Vec = std::vector<Rational>;

inline Rational parse_rational(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw ParseError("bad rational literal: '" + s + "'");
    if (q.get_den() == 0)
        throw ParseError("zero denominator in rational: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline int sgn(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational rational_from_double(double x) {
    // doubles are dyadic rationals; this conversion is exact
    mpq_class q(x);
    q.canonicalize();
    return q;
}

inline Rational dot(const Vec& a, const Vec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scale(const Rational& c, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline bool is_zero(const Vec& a) {
    for (const auto& x : a)
        if (sgn(x) != 0) return false;
    return true;
}

// Scale a nonzero vector by a positive rational so the entries become
// coprime integers. Used everywhere a ray/normal needs a canonical form.
inline Vec primitive(const Vec& a) {
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& x : a) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
    }
    if (num_gcd == 0) return a; // zero vector
    Rational f(den_lcm, num_gcd);
    f.canonicalize();
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] * f;
        r[i].canonicalize();
    }
    return r;
}

// Primitive scaling with the free sign fixed so the first nonzero
// entry is positive (projective points, hyperplane normals).
inline Vec primitive_signed(const Vec& a) {
    Vec r = primitive(a);
    for (const auto& x : r) {
        int s = sgn(x);
        if (s > 0) return r;
        if (s < 0) {
            for (auto& y : r) y = -y;
            return r;
        }
    }
    return r;
}

inline bool lex_less(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return a.size() < b.size();
}

} // namespace eucalc
