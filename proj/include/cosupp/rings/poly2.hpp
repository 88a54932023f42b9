#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cosupp/rings/numbers.hpp"

namespace cosupp {

// Sparse polynomial in F_p[x,y]. Keys are (deg_x, deg_y).
class Poly2 {
public:
    using Mono = std::pair<int, int>;

    Poly2() = default;
    explicit Poly2(uint64_t p) : p_(p) {}
    static Poly2 constant(int64_t c, uint64_t p) {
        Poly2 r(p);
        r.add_term({0, 0}, Fp(c, p).v);
        return r;
    }
    static Poly2 monomial(int i, int j, uint64_t p, uint64_t c = 1) {
        Poly2 r(p);
        r.add_term({i, j}, c % p);
        return r;
    }

    uint64_t modulus() const { return p_; }
    const std::map<Mono, uint64_t>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    uint64_t coeff(Mono m) const {
        auto it = t_.find(m);
        return it == t_.end() ? 0 : it->second;
    }
    uint64_t constant_term() const { return coeff({0, 0}); }
    int total_degree() const {
        int d = -1;
        for (auto& [m, c] : t_) d = std::max(d, m.first + m.second);
        return d;
    }
    // True iff every monomial has positive degree in the given variable (0 = x, 1 = y).
    bool divisible_by_var(int var) const {
        for (auto& [m, c] : t_)
            if ((var == 0 ? m.first : m.second) == 0) return false;
        return true;
    }
    bool is_monomial() const { return t_.size() == 1; }

    void add_term(Mono m, uint64_t c) {
        c %= p_;
        if (c == 0) return;
        uint64_t& slot = t_[m];
        slot = (slot + c) % p_;
        if (slot == 0) t_.erase(m);
    }

    friend Poly2 operator+(const Poly2& a, const Poly2& b) {
        Poly2 r = a;
        for (auto& [m, c] : b.t_) r.add_term(m, c);
        return r;
    }
    Poly2 operator-() const {
        Poly2 r(p_);
        for (auto& [m, c] : t_) r.add_term(m, p_ - c);
        return r;
    }
    friend Poly2 operator-(const Poly2& a, const Poly2& b) { return a + (-b); }
    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        Poly2 r(a.p_);
        for (auto& [m1, c1] : a.t_)
            for (auto& [m2, c2] : b.t_)
                r.add_term({m1.first + m2.first, m1.second + m2.second},
                           static_cast<uint64_t>((static_cast<unsigned __int128>(c1) * c2) % a.p_));
        return r;
    }
    friend bool operator==(const Poly2& a, const Poly2& b) { return a.p_ == b.p_ && a.t_ == b.t_; }
    friend bool operator!=(const Poly2& a, const Poly2& b) { return !(a == b); }

    // Drops every monomial of total degree >= n.
    Poly2 truncated(int n) const {
        Poly2 r(p_);
        for (auto& [m, c] : t_)
            if (m.first + m.second < n) r.t_[m] = c;
        return r;
    }

    // Terms sorted by total degree, then by x-degree, both descending.
    std::string str(const std::string& x = "x", const std::string& y = "y") const;

private:
    uint64_t p_ = 2;
    std::map<Mono, uint64_t> t_;
};

inline std::string Poly2::str(const std::string& x, const std::string& y) const {
    if (t_.empty()) return "0";
    std::vector<std::pair<Mono, uint64_t>> v(t_.begin(), t_.end());
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) {
        int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
        if (da != db) return da > db;
        return a.first.first > b.first.first;
    });
    std::string out;
    for (auto& [m, c] : v) {
        if (!out.empty()) out += " + ";
        std::string mono;
        auto part = [&](const std::string& var, int e) {
            if (e == 0) return;
            if (!mono.empty()) mono += "*";
            mono += e == 1 ? var : var + "^" + std::to_string(e);
        };
        part(x, m.first);
        part(y, m.second);
        if (mono.empty()) out += std::to_string(c);
        else if (c == 1) out += mono;
        else out += std::to_string(c) + "*" + mono;
    }
    return out;
}

inline bool is_zero(const Poly2& a) { return a.is_zero(); }

// Inverse of a unit of the local ring at (x,y), modulo total degree N.
inline Poly2 series_inverse(const Poly2& u, int N) {
    uint64_t p = u.modulus();
    uint64_t c = u.constant_term();
    if (c == 0) fail(ErrorKind::PreconditionViolation, "denominator is not a unit at (x,y)");
    Fp ci = inverse(Fp(static_cast<int64_t>(c), p));
    Poly2 ci2 = Poly2::constant(static_cast<int64_t>(ci.v), p);
    Poly2 t = Poly2::constant(1, p) - u * ci2;
    Poly2 s = Poly2::constant(1, p), pw = s;
    for (int k = 1; k < N; ++k) {
        pw = (pw * t).truncated(N);
        s = s + pw;
    }
    return (s * ci2).truncated(N);
}


} // namespace cosupp
