#pragma once

#include "cosupp/rings/poly.hpp"

namespace cosupp {

// Element of k(x): reduced quotient with monic denominator.
template <class F>
class Frac {
public:
    Frac() : num_(), den_(num_.one()) {}
    explicit Frac(const Poly<F>& n) : num_(n), den_(n.one()) {}
    Frac(const Poly<F>& n, const Poly<F>& d) : num_(n), den_(d) { normalize(); }

    const Poly<F>& num() const { return num_; }
    const Poly<F>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    Frac zero() const { return Frac(num_.zero()); }
    Frac one() const { return Frac(num_.one()); }

    friend Frac operator+(const Frac& a, const Frac& b) {
        return Frac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Frac operator-(const Frac& a, const Frac& b) {
        return Frac(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    Frac operator-() const { return Frac(-num_, den_, true); }
    friend Frac operator*(const Frac& a, const Frac& b) {
        return Frac(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Frac operator/(const Frac& a, const Frac& b) {
        if (b.is_zero()) fail(ErrorKind::PreconditionViolation, "division by zero in k(x)");
        return Frac(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const Frac& a, const Frac& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }

    std::string str(const std::string& var = "x") const {
        if (den_.degree() == 0) return num_.str(var);
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

private:
    Frac(Poly<F> n, Poly<F> d, bool) : num_(std::move(n)), den_(std::move(d)) {}
    void normalize() {
        if (den_.is_zero()) fail(ErrorKind::PreconditionViolation, "zero denominator");
        if (num_.is_zero()) {
            den_ = num_.one();
            return;
        }
        Poly<F> g = gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
        F l = inverse(den_.lead());
        num_ = num_.scaled(l);
        den_ = den_.scaled(l);
    }
    Poly<F> num_, den_;
};

template <class F>
bool is_zero(const Frac<F>& a) { return a.is_zero(); }
template <class F>
Frac<F> zero_like(const Frac<F>& a) { return a.zero(); }
template <class F>
Frac<F> one_like(const Frac<F>& a) { return a.one(); }
template <class F>
Frac<F> inverse(const Frac<F>& a) { return a.one() / a; }

template <class F>
int valuation(const Frac<F>& a, const Poly<F>& f) {
    if (a.is_zero()) return INT32_MAX;
    return valuation(a.num(), f) - valuation(a.den(), f);
}

using FracFp = Frac<Fp>;
using FracQ = Frac<Rational>;

} // namespace cosupp
