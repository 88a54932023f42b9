#include "cosupp/rings/element.hpp"

#include <optional>
#include <type_traits>

namespace cosupp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

uint64_t upow(uint64_t p, int e) {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

uint64_t invmod(uint64_t u, uint64_t m) {
    if (m == 1) return 0;
    __int128 r0 = static_cast<__int128>(m), r1 = static_cast<__int128>(u % m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        __int128 q = r0 / r1, t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1) fail(ErrorKind::PreconditionViolation, "non-unit in windowed Q_p");
    __int128 mm = static_cast<__int128>(m);
    return static_cast<uint64_t>(((s0 % mm) + mm) % mm);
}

WinQp win_normalize(WinQp w, int v, unsigned __int128 raw) {
    // raw is known modulo p^(stage - v)
    w.v = INT32_MAX;
    w.u = 0;
    if (v >= w.stage) return w;
    uint64_t mod = upow(w.p, w.stage - v);
    uint64_t x = static_cast<uint64_t>(raw % mod);
    if (x == 0) return w;
    while (x % w.p == 0) {
        x /= w.p;
        ++v;
    }
    if (v >= w.stage) return w;
    w.v = v;
    w.u = x % upow(w.p, w.stage - v);
    return w;
}

void same_window(const WinQp& a, const WinQp& b) {
    if (a.p != b.p || a.depth != b.depth || a.stage != b.stage)
        fail(ErrorKind::PreconditionViolation, "windowed Q_p operands from different windows");
}

WinQp win_add(const WinQp& a, const WinQp& b) {
    same_window(a, b);
    if (a.v == INT32_MAX) return b;
    if (b.v == INT32_MAX) return a;
    int m = std::min(a.v, b.v);
    uint64_t mod = upow(a.p, a.stage - m);
    unsigned __int128 x = static_cast<unsigned __int128>(a.u) * upow(a.p, a.v - m) % mod;
    unsigned __int128 y = static_cast<unsigned __int128>(b.u) * upow(b.p, b.v - m) % mod;
    return win_normalize(a, m, (x + y) % mod);
}

WinQp win_neg(const WinQp& a) {
    if (a.v == INT32_MAX) return a;
    WinQp r = a;
    uint64_t mod = upow(a.p, a.stage - a.v);
    r.u = (mod - a.u) % mod;
    return r;
}

WinQp win_mul(const WinQp& a, const WinQp& b) {
    same_window(a, b);
    if (a.v == INT32_MAX || b.v == INT32_MAX) return win_normalize(a, a.stage, 0);
    int v = a.v + b.v;
    if (v < -a.depth) fail(ErrorKind::WindowOverflow, "product leaves the windowed range");
    if (v >= a.stage) return win_normalize(a, a.stage, 0);
    uint64_t mod = upow(a.p, a.stage - v);
    return win_normalize(a, v, static_cast<unsigned __int128>(a.u % mod) * (b.u % mod) % mod);
}

WinQp win_inv(const WinQp& a) {
    if (a.v == INT32_MAX) fail(ErrorKind::PreconditionViolation, "division by zero in windowed Q_p");
    int v = -a.v;
    if (v < -a.depth) fail(ErrorKind::WindowOverflow, "inverse leaves the windowed range");
    if (v >= a.stage) return win_normalize(a, a.stage, 0);
    uint64_t mod = upow(a.p, a.stage - v);
    return win_normalize(a, v, invmod(a.u % mod, mod));
}

Frac2 frac2_norm(Poly2 n, Poly2 d) {
    if (d.is_zero()) fail(ErrorKind::PreconditionViolation, "zero denominator in F_p(x,y)");
    if (d.total_degree() == 0) {
        Fp c(static_cast<int64_t>(d.constant_term()), d.modulus());
        Fp ci = inverse(c);
        n = n * Poly2::constant(static_cast<int64_t>(ci.v), d.modulus());
        d = Poly2::constant(1, d.modulus());
    }
    return {n, d};
}

[[noreturn]] void mismatch(const char* op) {
    fail(ErrorKind::UnsupportedRing, std::string("operands of '") + op + "' live in different rings");
}

template <class T>
void same_ring(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, TruncZ>) {
        if (a.R->p() != b.R->p() || a.R->stage() != b.R->stage()) mismatch("trunc");
    } else if constexpr (std::is_same_v<T, TruncPoly<Fp>> || std::is_same_v<T, TruncPoly<Rational>>) {
        if (a.R->pi() != b.R->pi() || a.R->stage() != b.R->stage()) mismatch("trunc");
    } else if constexpr (std::is_same_v<T, TruncBi>) {
        if (a.N != b.N) mismatch("trunc");
    }
}

// Bring both operands to a common alternative (integer/rational and
// polynomial/fraction promotions).
std::pair<Element, Element> unify(const Element& a, const Element& b) {
    if (a.index() == b.index()) return {a, b};
    Element fa = to_fraction(a), fb = to_fraction(b);
    if (fa.index() == fb.index()) return {fa, fb};
    // constants against polynomials
    auto lift = [](const Element& c, const Element& like) -> std::optional<Element> {
        if (auto* q = std::get_if<Rational>(&c))
            if (std::holds_alternative<FracQ>(like)) return Element(FracQ(PolyQ::constant(*q)));
        if (auto* x = std::get_if<Fp>(&c)) {
            if (std::holds_alternative<FracFp>(like)) return Element(FracFp(PolyFp::constant(*x)));
        }
        return std::nullopt;
    };
    if (auto l = lift(fa, fb)) return {*l, fb};
    if (auto l = lift(fb, fa)) return {fa, *l};
    mismatch("unify");
}

Element simplify(const Element& e) {
    if (auto* f = std::get_if<Frac2>(&e)) return frac2_norm(f->num, f->den);
    return e;
}

} // namespace

Element to_fraction(const Element& a) {
    return std::visit(overloaded{
                          [](const Integer& x) -> Element { return Rational(x); },
                          [](const PolyFp& x) -> Element { return FracFp(x); },
                          [](const PolyQ& x) -> Element { return FracQ(x); },
                          [](const Poly2& x) -> Element { return Frac2{x, Poly2::constant(1, x.modulus())}; },
                          [](const auto& x) -> Element { return x; },
                      },
                      a);
}

#define COSUPP_BINOP(NAME, OP, SYM)                                                                       \
    Element NAME(const Element& a0, const Element& b0) {                                                  \
        auto [a, b] = unify(a0, b0);                                                                      \
        return std::visit(                                                                                \
            [&](const auto& x) -> Element {                                                               \
                using T = std::decay_t<decltype(x)>;                                                      \
                const T& y = std::get<T>(b);                                                              \
                if constexpr (std::is_same_v<T, Frac2>) {                                                 \
                    return OP##_frac2(x, y);                                                              \
                } else if constexpr (std::is_same_v<T, TruncZ>) {                                         \
                    same_ring(x, y);                                                                      \
                    return TruncZ{x.R, x.R->OP(x.a, y.a)};                                                \
                } else if constexpr (std::is_same_v<T, TruncPoly<Fp>> || std::is_same_v<T, TruncPoly<Rational>>) { \
                    same_ring(x, y);                                                                      \
                    return T{x.R, x.R->reduce_full(x.R->OP(x.a, y.a))};                                   \
                } else if constexpr (std::is_same_v<T, TruncBi>) {                                        \
                    same_ring(x, y);                                                                      \
                    return TruncBi{x.N, (x.a SYM y.a).truncated(x.N)};                                    \
                } else if constexpr (std::is_same_v<T, WinQp>) {                                          \
                    return win_##OP(x, y);                                                                \
                } else {                                                                                  \
                    return T(x SYM y);                                                                    \
                }                                                                                         \
            },                                                                                            \
            a);                                                                                           \
    }

namespace {
Element add_frac2(const Frac2& a, const Frac2& b) { return frac2_norm(a.num * b.den + b.num * a.den, a.den * b.den); }
Element sub_frac2(const Frac2& a, const Frac2& b) { return frac2_norm(a.num * b.den - b.num * a.den, a.den * b.den); }
Element mul_frac2(const Frac2& a, const Frac2& b) { return frac2_norm(a.num * b.num, a.den * b.den); }
WinQp win_sub(const WinQp& a, const WinQp& b) { return win_add(a, win_neg(b)); }
} // namespace

COSUPP_BINOP(operator+, add, +)
COSUPP_BINOP(operator-, sub, -)
COSUPP_BINOP(operator*, mul, *)

#undef COSUPP_BINOP

Element operator-(const Element& a) { return zero_like(a) - a; }

Element inverse(const Element& a) {
    return std::visit(overloaded{
                          [](const Integer& x) -> Element {
                              if (x == 1 || x == -1) return x;
                              if (x == 0) fail(ErrorKind::PreconditionViolation, "division by zero");
                              return Rational(1) / Rational(x);
                          },
                          [](const Rational& x) -> Element { return cosupp::inverse(x); },
                          [](const Fp& x) -> Element { return cosupp::inverse(x); },
                          [](const PolyFp& x) -> Element { return cosupp::inverse(FracFp(x)); },
                          [](const PolyQ& x) -> Element { return cosupp::inverse(FracQ(x)); },
                          [](const FracFp& x) -> Element { return cosupp::inverse(x); },
                          [](const FracQ& x) -> Element { return cosupp::inverse(x); },
                          [](const Poly2& x) -> Element { return frac2_norm(Poly2::constant(1, x.modulus()), x); },
                          [](const Frac2& x) -> Element {
                              if (x.num.is_zero()) fail(ErrorKind::PreconditionViolation, "division by zero");
                              return frac2_norm(x.den, x.num);
                          },
                          [](const TruncZ& x) -> Element { return TruncZ{x.R, x.R->unit_inv(x.a)}; },
                          [](const TruncPoly<Fp>& x) -> Element { return TruncPoly<Fp>{x.R, x.R->unit_inv(x.a)}; },
                          [](const TruncPoly<Rational>& x) -> Element {
                              return TruncPoly<Rational>{x.R, x.R->unit_inv(x.a)};
                          },
                          [](const TruncBi& x) -> Element {
                              // geometric series: u = c(1 - t), u^{-1} = c^{-1} sum t^k
                              uint64_t p = x.a.modulus();
                              uint64_t c = x.a.constant_term();
                              if (c == 0) fail(ErrorKind::PreconditionViolation, "non-unit inverted in F_p[x,y]/m^N");
                              Fp ci = cosupp::inverse(Fp(static_cast<int64_t>(c), p));
                              Poly2 ci2 = Poly2::constant(static_cast<int64_t>(ci.v), p);
                              Poly2 t = Poly2::constant(1, p) - x.a * ci2;
                              Poly2 s = Poly2::constant(1, p), pw = s;
                              for (int k = 1; k < x.N; ++k) {
                                  pw = (pw * t).truncated(x.N);
                                  s = s + pw;
                              }
                              return TruncBi{x.N, (s * ci2).truncated(x.N)};
                          },
                          [](const WinQp& x) -> Element { return win_inv(x); },
                      },
                      a);
}

Element operator/(const Element& a, const Element& b) {
    if (is_zero(b)) fail(ErrorKind::PreconditionViolation, "division by zero");
    Element r = a * inverse(b);
    // keep integral quotients integral where possible
    if (auto* q = std::get_if<Rational>(&r))
        if (std::holds_alternative<Integer>(a) && std::holds_alternative<Integer>(b) && q->get_den() == 1)
            return Integer(q->get_num());
    return simplify(r);
}

bool is_zero(const Element& a) {
    return std::visit(overloaded{
                          [](const Frac2& x) { return x.num.is_zero(); },
                          [](const TruncZ& x) { return x.a == 0; },
                          [](const TruncPoly<Fp>& x) { return x.a.is_zero(); },
                          [](const TruncPoly<Rational>& x) { return x.a.is_zero(); },
                          [](const TruncBi& x) { return x.a.is_zero(); },
                          [](const WinQp& x) { return x.v == INT32_MAX; },
                          [](const auto& x) { return cosupp::is_zero(x); },
                      },
                      a);
}

bool operator==(const Element& a0, const Element& b0) {
    auto [a, b] = unify(a0, b0);
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const T& y = std::get<T>(b);
            if constexpr (std::is_same_v<T, Frac2>) {
                return x.num * y.den == y.num * x.den;
            } else if constexpr (std::is_same_v<T, TruncZ>) {
                return x.R->stage() == y.R->stage() && x.R->p() == y.R->p() && x.a == y.a;
            } else if constexpr (std::is_same_v<T, TruncPoly<Fp>> || std::is_same_v<T, TruncPoly<Rational>>) {
                return x.R->stage() == y.R->stage() && x.a == y.a;
            } else if constexpr (std::is_same_v<T, TruncBi>) {
                return x.N == y.N && x.a == y.a;
            } else if constexpr (std::is_same_v<T, WinQp>) {
                return x.p == y.p && x.v == y.v && x.u == y.u;
            } else {
                return x == y;
            }
        },
        a);
}

Element zero_like(const Element& a) {
    return std::visit(overloaded{
                          [](const Frac2& x) -> Element { return Frac2{Poly2(x.num.modulus()), Poly2::constant(1, x.num.modulus())}; },
                          [](const Poly2& x) -> Element { return Poly2(x.modulus()); },
                          [](const TruncZ& x) -> Element { return TruncZ{x.R, 0}; },
                          [](const TruncPoly<Fp>& x) -> Element { return TruncPoly<Fp>{x.R, x.R->zero()}; },
                          [](const TruncPoly<Rational>& x) -> Element { return TruncPoly<Rational>{x.R, x.R->zero()}; },
                          [](const TruncBi& x) -> Element { return TruncBi{x.N, Poly2(x.a.modulus())}; },
                          [](const WinQp& x) -> Element { return win_normalize(x, x.stage, 0); },
                          [](const auto& x) -> Element { return cosupp::zero_like(x); },
                      },
                      a);
}

Element one_like(const Element& a) {
    return std::visit(overloaded{
                          [](const Frac2& x) -> Element {
                              auto one = Poly2::constant(1, x.num.modulus());
                              return Frac2{one, one};
                          },
                          [](const Poly2& x) -> Element { return Poly2::constant(1, x.modulus()); },
                          [](const TruncZ& x) -> Element { return TruncZ{x.R, x.R->one()}; },
                          [](const TruncPoly<Fp>& x) -> Element { return TruncPoly<Fp>{x.R, x.R->one()}; },
                          [](const TruncPoly<Rational>& x) -> Element { return TruncPoly<Rational>{x.R, x.R->one()}; },
                          [](const TruncBi& x) -> Element { return TruncBi{x.N, Poly2::constant(1, x.a.modulus())}; },
                          [](const WinQp& x) -> Element { return win_normalize(x, 0, 1); },
                          [](const auto& x) -> Element { return cosupp::one_like(x); },
                      },
                      a);
}

std::string element_str(const Element& a, const std::string& xv, const std::string& yv) {
    return std::visit(overloaded{
                          [](const Integer& x) { return x.get_str(); },
                          [](const Rational& x) { return x.get_str(); },
                          [](const Fp& x) { return std::to_string(x.v); },
                          [&](const PolyFp& x) { return x.str(xv); },
                          [&](const PolyQ& x) { return x.str(xv); },
                          [&](const FracFp& x) { return x.str(xv); },
                          [&](const FracQ& x) { return x.str(xv); },
                          [&](const Poly2& x) { return x.str(xv, yv); },
                          [&](const Frac2& x) {
                              if (x.den.total_degree() == 0) return x.num.str(xv, yv);
                              return "(" + x.num.str(xv, yv) + ")/(" + x.den.str(xv, yv) + ")";
                          },
                          [](const TruncZ& x) {
                              int v = x.R->val(x.a);
                              std::string pv = x.R->pi_str() + "^" + std::to_string(v);
                              return pv + " * " + std::to_string(x.R->div_pi(x.a, v)) + " mod " + x.R->pi_str() +
                                     "^" + std::to_string(x.R->stage());
                          },
                          [&](const TruncPoly<Fp>& x) {
                              int v = x.R->val(x.a);
                              return x.R->pi_str() + "^" + std::to_string(v) + " * (" + x.R->div_pi(x.a, v).str(xv) +
                                     ") mod " + x.R->pi_str() + "^" + std::to_string(x.R->stage());
                          },
                          [&](const TruncPoly<Rational>& x) {
                              int v = x.R->val(x.a);
                              return x.R->pi_str() + "^" + std::to_string(v) + " * (" + x.R->div_pi(x.a, v).str(xv) +
                                     ") mod " + x.R->pi_str() + "^" + std::to_string(x.R->stage());
                          },
                          [&](const TruncBi& x) { return x.a.str(xv, yv) + " mod m^" + std::to_string(x.N); },
                          [](const WinQp& x) {
                              std::string p = std::to_string(x.p);
                              if (x.v == INT32_MAX) return "0 mod " + p + "^" + std::to_string(x.stage);
                              return p + "^" + std::to_string(x.v) + " * " + std::to_string(x.u) + " mod " + p + "^" +
                                     std::to_string(x.stage);
                          },
                      },
                      a);
}

WinQp winqp_make(uint64_t p, int depth, int stage, const Rational& q) {
    WinQp w;
    w.p = p;
    w.depth = depth;
    w.stage = stage;
    if (upow(p, stage + depth) == 0 || stage + depth > 62)
        fail(ErrorKind::WindowOverflow, "window too large for the 64-bit Q_p backend");
    if (sgn(q) == 0) return win_normalize(w, stage, 0);
    Integer P(static_cast<unsigned long>(p));
    int v = valuation(q, P);
    if (v < -depth) fail(ErrorKind::WindowOverflow, "denominator exceeds the window depth");
    if (v >= stage) return win_normalize(w, stage, 0);
    Integer num = q.get_num(), den = q.get_den();
    for (int i = 0; i < v; ++i) num /= P;
    for (int i = 0; i > v; --i) den /= P;
    uint64_t mod = upow(p, stage - v);
    Integer M(std::to_string(mod));
    Integer n = num % M, d = den % M;
    if (n < 0) n += M;
    if (d < 0) d += M;
    uint64_t nn = std::stoull(n.get_str()), dd = std::stoull(d.get_str());
    return win_normalize(w, v, static_cast<unsigned __int128>(nn) * invmod(dd, mod) % mod);
}

Element reduce_stage(const Element& a, int M) {
    return std::visit(overloaded{
                          [&](const TruncZ& x) -> Element {
                              auto R = std::make_shared<const ZpnRing>(x.R->p(), M);
                              return TruncZ{R, x.R->reduce(x.a, M)};
                          },
                          [&](const TruncPoly<Fp>& x) -> Element {
                              auto R = std::make_shared<const PolyPnRing<Fp>>(x.R->pi(), M);
                              return TruncPoly<Fp>{R, x.R->reduce(x.a, M)};
                          },
                          [&](const TruncPoly<Rational>& x) -> Element {
                              auto R = std::make_shared<const PolyPnRing<Rational>>(x.R->pi(), M);
                              return TruncPoly<Rational>{R, x.R->reduce(x.a, M)};
                          },
                          [&](const TruncBi& x) -> Element { return TruncBi{M, x.a.truncated(M)}; },
                          [](const auto&) -> Element {
                              fail(ErrorKind::UnsupportedRing, "stage reduction needs a truncated element");
                          },
                      },
                      a);
}

} // namespace cosupp
