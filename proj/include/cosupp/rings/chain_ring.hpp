#pragma once

#include <string>
#include <vector>

#include "cosupp/rings/matrix.hpp"
#include "cosupp/rings/poly.hpp"

namespace cosupp {

// Z/p^N with p^N < 2^62.
class ZpnRing {
public:
    using Elem = uint64_t;

    ZpnRing(uint64_t p, int N) : p_(p), N_(N) {
        if (N < 1) fail(ErrorKind::PreconditionViolation, "stage must be positive");
        pow_.push_back(1);
        for (int k = 1; k <= N; ++k) {
            unsigned __int128 next = static_cast<unsigned __int128>(pow_.back()) * p;
            if (next >= (static_cast<unsigned __int128>(1) << 62))
                fail(ErrorKind::WindowOverflow, "p^N exceeds the 62-bit backend for p=" + std::to_string(p) +
                                                    ", N=" + std::to_string(N));
            pow_.push_back(static_cast<uint64_t>(next));
        }
        mod_ = pow_.back();
    }

    uint64_t p() const { return p_; }
    int stage() const { return N_; }
    uint64_t modulus() const { return mod_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % mod_; }
    Elem from_int(int64_t x) const {
        int64_t r = x % static_cast<int64_t>(mod_);
        return static_cast<Elem>(r < 0 ? r + static_cast<int64_t>(mod_) : r);
    }
    Elem from_integer(const Integer& x) const {
        static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long expected");
        return mpz_fdiv_ui(x.get_mpz_t(), mod_);
    }
    Elem add(Elem a, Elem b) const { return (a + b) % mod_; }
    Elem sub(Elem a, Elem b) const { return (a + mod_ - b) % mod_; }
    Elem neg(Elem a) const { return (mod_ - a) % mod_; }
    Elem mul(Elem a, Elem b) const {
        return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % mod_);
    }
    bool is_zero(Elem a) const { return a == 0; }
    int val(Elem a) const {
        if (a == 0) return N_;
        int v = 0;
        while (a % p_ == 0) {
            a /= p_;
            ++v;
        }
        return v;
    }
    Elem pi_pow(int k) const { return k >= N_ ? 0 : pow_[static_cast<size_t>(k)]; }
    // a / pi^k for val(a) >= k
    Elem div_pi(Elem a, int k) const { return k >= N_ ? 0 : a / pow_[static_cast<size_t>(k)]; }
    Elem unit_inv(Elem u) const {
        __int128 r0 = static_cast<__int128>(mod_), r1 = static_cast<__int128>(u), s0 = 0, s1 = 1;
        while (r1 != 0) {
            __int128 q = r0 / r1, t = r0 - q * r1;
            r0 = r1;
            r1 = t;
            t = s0 - q * s1;
            s0 = s1;
            s1 = t;
        }
        if (r0 != 1) fail(ErrorKind::PreconditionViolation, "non-unit inverted in Z/p^N");
        __int128 m = static_cast<__int128>(mod_);
        return static_cast<Elem>(((s0 % m) + m) % m);
    }
    // Reduction to a lower stage.
    Elem reduce(Elem a, int M) const { return a % pow_[static_cast<size_t>(std::min(M, N_))]; }
    std::string str(Elem a) const { return std::to_string(a); }
    std::string pi_str() const { return std::to_string(p_); }

private:
    uint64_t p_;
    int N_;
    uint64_t mod_ = 1;
    std::vector<uint64_t> pow_;
};

// k[x]/(f^N) for a monic irreducible f.
template <class F>
class PolyPnRing {
public:
    using Elem = Poly<F>;

    PolyPnRing(const Poly<F>& f, int N) : f_(f.monic()), N_(N) {
        if (N < 1) fail(ErrorKind::PreconditionViolation, "stage must be positive");
        if (f_.degree() < 1) fail(ErrorKind::PreconditionViolation, "chain ring needs a nonconstant prime");
        pow_.push_back(f_.one());
        for (int k = 1; k <= N; ++k) pow_.push_back(pow_.back() * f_);
        mod_ = pow_.back();
    }

    const Poly<F>& pi() const { return f_; }
    int stage() const { return N_; }

    Elem zero() const { return f_.zero(); }
    Elem one() const { return f_.one(); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return (a * b) % mod_; }
    Elem reduce_full(const Elem& a) const { return a % mod_; }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    int val(const Elem& a) const {
        if (a.is_zero()) return N_;
        int v = valuation(a, f_);
        return v > N_ ? N_ : v;
    }
    Elem pi_pow(int k) const { return k >= N_ ? zero() : pow_[static_cast<size_t>(k)]; }
    Elem div_pi(const Elem& a, int k) const { return k >= N_ ? zero() : a / pow_[static_cast<size_t>(k)]; }
    Elem unit_inv(const Elem& u) const {
        auto [g, s, t] = xgcd(u, mod_);
        if (g.degree() != 0) fail(ErrorKind::PreconditionViolation, "non-unit inverted in k[x]/(f^N)");
        return s % mod_;
    }
    Elem reduce(const Elem& a, int M) const { return a % pow_[static_cast<size_t>(std::min(M, N_))]; }
    std::string str(const Elem& a) const { return a.str(); }
    std::string pi_str() const { return "(" + f_.str() + ")"; }

private:
    Poly<F> f_;
    int N_;
    Poly<F> mod_;
    std::vector<Poly<F>> pow_;
};

} // namespace cosupp
