#pragma once

#include <algorithm>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cosupp/rings/numbers.hpp"

namespace cosupp {

// Dense univariate polynomial over a field F. Coefficients are stored
// low degree first with no trailing zeros; `one_` carries the field
// context (the modulus, for F_p).
template <class F>
class Poly {
public:
    Poly() : one_(one_like(F())) {}
    explicit Poly(const F& unit) : one_(one_like(unit)) {}
    Poly(std::vector<F> c, const F& unit) : c_(std::move(c)), one_(one_like(unit)) { trim(); }

    static Poly constant(const F& a) { return Poly(std::vector<F>{a}, a); }
    static Poly monomial(const F& a, int deg) {
        std::vector<F> c(static_cast<size_t>(deg) + 1, zero_like(a));
        c[static_cast<size_t>(deg)] = a;
        return Poly(std::move(c), a);
    }
    static Poly x(const F& unit) { return monomial(one_like(unit), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    F coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(i)] : zero_like(one_);
    }
    F lead() const { return c_.empty() ? zero_like(one_) : c_.back(); }
    const std::vector<F>& coeffs() const { return c_; }
    const F& unit() const { return one_; }
    Poly zero() const { return Poly(one_); }
    Poly one() const { return constant(one_); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<F> c(std::max(a.c_.size(), b.c_.size()), zero_like(a.one_));
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
        return Poly(std::move(c), a.one_);
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return a.zero();
        std::vector<F> c(a.c_.size() + b.c_.size() - 1, zero_like(a.one_));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (cosupp::is_zero(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(std::move(c), a.one_);
    }
    Poly scaled(const F& s) const {
        Poly r = *this;
        for (auto& x : r.c_) x = x * s;
        r.trim();
        return r;
    }
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Long division; b must be nonzero.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) fail(ErrorKind::PreconditionViolation, "polynomial division by zero");
        Poly r = a;
        if (a.degree() < b.degree()) return {a.zero(), r};
        std::vector<F> q(static_cast<size_t>(a.degree() - b.degree() + 1), zero_like(a.one_));
        F inv = inverse(b.lead());
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int s = r.degree() - b.degree();
            F t = r.lead() * inv;
            q[static_cast<size_t>(s)] = t;
            for (int i = 0; i <= b.degree(); ++i) {
                auto& x = r.c_[static_cast<size_t>(i + s)];
                x = x - t * b.c_[static_cast<size_t>(i)];
            }
            r.trim();
        }
        return {Poly(std::move(q), a.one_), r};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    Poly monic() const { return is_zero() ? *this : scaled(inverse(lead())); }

    F eval(const F& t) const {
        F r = zero_like(one_);
        for (size_t i = c_.size(); i-- > 0;) r = r * t + c_[i];
        return r;
    }

    std::string str(const std::string& var = "x") const;

private:
    void trim() {
        while (!c_.empty() && cosupp::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<F> c_;
    F one_;
};

template <class F>
bool is_zero(const Poly<F>& p) { return p.is_zero(); }
template <class F>
Poly<F> zero_like(const Poly<F>& p) { return p.zero(); }
template <class F>
Poly<F> one_like(const Poly<F>& p) { return p.one(); }

template <class F>
Poly<F> pow(Poly<F> a, unsigned e) {
    Poly<F> r = a.one();
    while (e) {
        if (e & 1u) r *= a;
        a *= a;
        e >>= 1;
    }
    return r;
}

template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        Poly<F> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Returns (g, s, t) with s*a + t*b = g monic.
template <class F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> xgcd(const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r0 = a, r1 = b, s0 = a.one(), s1 = a.zero(), t0 = a.zero(), t1 = a.one();
    while (!r1.is_zero()) {
        auto [q, r] = Poly<F>::divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<F> s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    F inv = inverse(r0.lead());
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

template <class F>
std::string coeff_str(const F& c) { return to_string(c); }

template <class F>
bool coeff_negative(const F&) { return false; }
inline bool coeff_negative(const Rational& c) { return sgn(c) < 0; }

template <class F>
std::string Poly<F>::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        F c = c_[static_cast<size_t>(i)];
        if (cosupp::is_zero(c)) continue;
        bool neg = coeff_negative(c);
        if (neg) c = -c;
        if (out.empty()) out = neg ? "-" : "";
        else out += neg ? " - " : " + ";
        bool unit = (c == one_like(c));
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        if (i == 0) out += coeff_str(c);
        else if (unit) out += mono;
        else out += coeff_str(c) + "*" + mono;
    }
    return out;
}

// Multiplicity of the irreducible `f` in nonzero `a`.
template <class F>
int valuation(Poly<F> a, const Poly<F>& f) {
    if (a.is_zero()) return INT32_MAX;
    int v = 0;
    for (;;) {
        auto [q, r] = Poly<F>::divmod(a, f);
        if (!r.is_zero()) return v;
        a = std::move(q);
        ++v;
    }
}

using PolyFp = Poly<Fp>;
using PolyQ = Poly<Rational>;

} // namespace cosupp
