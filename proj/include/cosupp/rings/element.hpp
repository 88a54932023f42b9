#pragma once

#include <memory>
#include <string>
#include <variant>

#include "cosupp/rings/chain_ring.hpp"
#include "cosupp/rings/frac.hpp"
#include "cosupp/rings/poly2.hpp"

namespace cosupp {

// Unreduced quotient in F_p(x,y); equality is by cross-multiplication.
struct Frac2 {
    Poly2 num, den;
};

struct TruncZ {
    std::shared_ptr<const ZpnRing> R;
    uint64_t a = 0;
};
template <class F>
struct TruncPoly {
    std::shared_ptr<const PolyPnRing<F>> R;
    Poly<F> a;
};
// F_p[x,y]/m^N, kept as a polynomial of total degree < N.
struct TruncBi {
    int N = 1;
    Poly2 a;
};
// Window of Q_p: p^v * u known modulo p^stage, with v >= -depth.
struct WinQp {
    uint64_t p = 2;
    int depth = 0, stage = 1;
    int v = INT32_MAX;  // INT32_MAX encodes zero
    uint64_t u = 0;     // unit modulo p^(stage - v)
};

using Element = std::variant<Integer, Rational, Fp, PolyFp, PolyQ, FracFp, FracQ, Poly2, Frac2, TruncZ,
                             TruncPoly<Fp>, TruncPoly<Rational>, TruncBi, WinQp>;

Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element operator*(const Element& a, const Element& b);
Element operator/(const Element& a, const Element& b);
Element operator-(const Element& a);
bool operator==(const Element& a, const Element& b);
inline bool operator!=(const Element& a, const Element& b) { return !(a == b); }
bool is_zero(const Element& a);
Element zero_like(const Element& a);
Element one_like(const Element& a);
Element inverse(const Element& a);

// Integer -> Rational, polynomial -> fraction; other kinds unchanged.
Element to_fraction(const Element& a);

std::string element_str(const Element& a, const std::string& x = "x", const std::string& y = "y");

// Windowed Q_p helpers.
WinQp winqp_make(uint64_t p, int depth, int stage, const Rational& q);
// Reduce a truncated element to a lower stage.
Element reduce_stage(const Element& a, int M);

} // namespace cosupp
