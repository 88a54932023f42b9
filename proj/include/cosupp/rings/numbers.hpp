#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <string>

#include "cosupp/rings/errors.hpp"

namespace cosupp {

using Integer = mpz_class;
using Rational = mpq_class;

// Prime field element. The modulus travels with the value so that
// polynomials over F_p need no global state.
struct Fp {
    uint64_t v = 0;
    uint64_t p = 2;

    Fp() = default;
    Fp(int64_t x, uint64_t mod) : p(mod) {
        int64_t r = x % static_cast<int64_t>(mod);
        if (r < 0) r += static_cast<int64_t>(mod);
        v = static_cast<uint64_t>(r);
    }

    friend Fp operator+(Fp a, Fp b) { a.v = (a.v + b.v) % a.p; return a; }
    friend Fp operator-(Fp a, Fp b) { a.v = (a.v + a.p - b.v) % a.p; return a; }
    friend Fp operator*(Fp a, Fp b) {
        a.v = static_cast<uint64_t>((static_cast<unsigned __int128>(a.v) * b.v) % a.p);
        return a;
    }
    Fp operator-() const { Fp r = *this; r.v = (p - v) % p; return r; }
    Fp& operator+=(Fp b) { return *this = *this + b; }
    Fp& operator-=(Fp b) { return *this = *this - b; }
    Fp& operator*=(Fp b) { return *this = *this * b; }
    friend bool operator==(Fp a, Fp b) { return a.v == b.v && a.p == b.p; }
    friend bool operator!=(Fp a, Fp b) { return !(a == b); }
};

inline Fp pow(Fp a, uint64_t e) {
    Fp r(1, a.p);
    while (e) {
        if (e & 1) r *= a;
        a *= a;
        e >>= 1;
    }
    return r;
}

inline Fp inverse(const Fp& a) {
    if (a.v == 0) fail(ErrorKind::PreconditionViolation, "division by zero in F_p");
    return pow(a, a.p - 2);
}
inline Fp operator/(Fp a, Fp b) { return a * inverse(b); }

inline bool is_zero(const Fp& a) { return a.v == 0; }
inline Fp zero_like(const Fp& a) { return Fp(0, a.p); }
inline Fp one_like(const Fp& a) { return Fp(1, a.p); }
inline std::string to_string(const Fp& a) { return std::to_string(a.v); }

inline bool is_zero(const Rational& a) { return sgn(a) == 0; }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline Rational inverse(const Rational& a) {
    if (sgn(a) == 0) fail(ErrorKind::PreconditionViolation, "division by zero in Q");
    return Rational(1) / a;
}
inline std::string to_string(const Rational& a) { return a.get_str(); }

inline bool is_zero(const Integer& a) { return sgn(a) == 0; }
inline Integer zero_like(const Integer&) { return Integer(0); }
inline Integer one_like(const Integer&) { return Integer(1); }
inline std::string to_string(const Integer& a) { return a.get_str(); }

// p-adic valuation of a nonzero integer.
inline int valuation(Integer n, const Integer& p) {
    if (n == 0) return INT32_MAX;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline int valuation(const Rational& q, const Integer& p) {
    if (sgn(q) == 0) return INT32_MAX;
    return valuation(Integer(q.get_num()), p) - valuation(Integer(q.get_den()), p);
}

// Trial division up to `bound`; numbers whose square root exceeds the
// bound are accepted if no factor was found.
inline bool passes_trial_division(const Integer& n, uint64_t bound = 1000) {
    Integer a = abs(n);
    if (a < 2) return false;
    for (uint64_t d = 2; d <= bound; ++d) {
        Integer D(static_cast<unsigned long>(d));
        if (D * D > a) return true;
        if (a % D == 0) return a == D;
    }
    return true;
}

inline bool is_small_prime(uint64_t p) {
    if (p < 2) return false;
    for (uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace cosupp
