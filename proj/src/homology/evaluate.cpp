#include "cosupp/homology/evaluate.hpp"

#include <algorithm>
#include <functional>

#include "cosupp/rings/chain_linalg.hpp"
#include "cosupp/rings/field_linalg.hpp"

namespace cosupp {

namespace {

enum class Variant { Full, Sub, Quotient };

struct Layout {
    int lo = 0;
    std::vector<std::vector<size_t>> keep;  // atom indices with a nonzero piece
    std::vector<std::vector<Piece>> pcs;
    size_t n(int i) const {
        int k = i - lo;
        return k < 0 || k >= static_cast<int>(keep.size()) ? 0 : keep[static_cast<size_t>(k)].size();
    }
};

Layout layout(const Complex& X, int pi, int a, int b, int g, Variant v) {
    Layout L;
    L.lo = X.lo;
    for (int i = X.lo; i <= X.hi(); ++i) {
        std::vector<size_t> keep;
        std::vector<Piece> pcs;
        const Term& t = X.term(i);
        for (size_t k = 0; k < t.size(); ++k) {
            auto pc = window_piece(*X.F, t[k], pi, a, b);
            if (!pc) continue;
            if (v == Variant::Sub && pc->kind == Piece::Kind::Divisible) pc->lo = -a + g;
            if (v == Variant::Quotient) pc->hi = std::min(pc->hi, b - g);
            keep.push_back(k);
            pcs.push_back(*pc);
        }
        L.keep.push_back(keep);
        L.pcs.push_back(pcs);
    }
    return L;
}

template <class CR>
using Conv = std::function<std::pair<int, typename CR::Elem>(const Element&)>;

template <class CR>
struct Local {
    const CR& R;
    Conv<CR> conv;
    std::string where;

    using M = Matrix<typename CR::Elem>;

    std::vector<M> diffs(const Complex& X, const Layout& L) const {
        std::vector<M> out;
        for (int i = X.lo; i <= X.hi(); ++i) {
            size_t k = static_cast<size_t>(i - X.lo);
            Mat D = X.diff(i);
            const auto& ks = L.keep[k];
            static const std::vector<size_t> none;
            const auto& kt = i + 1 <= X.hi() ? L.keep[k + 1] : none;
            M m(kt.size(), ks.size(), R.zero());
            for (size_t r = 0; r < kt.size(); ++r)
                for (size_t c = 0; c < ks.size(); ++c) {
                    const Element& e = D(kt[r], ks[c]);
                    if (is_zero(e)) continue;
                    const Piece& s = L.pcs[k][c];
                    const Piece& t = L.pcs[k + 1][r];
                    auto [v, u] = conv(e);
                    int sh = v + s.lo - t.lo;
                    if (sh < 0 || v + s.hi < t.hi)
                        fail(ErrorKind::WindowOverflow, "coefficient " + element_str(e, X.F->home()) + " in degree " +
                                                            std::to_string(i) + " leaves the window at " + where);
                    if (sh >= t.len()) continue;
                    m(r, c) = R.reduce(R.mul(u, R.pi_pow(sh)), t.len());
                }
            out.push_back(m);
        }
        return out;
    }

    M rel(const Layout& L, int i) const {
        size_t n = L.n(i);
        M m(n, n, R.zero());
        for (size_t k = 0; k < n; ++k) m(k, k) = R.pi_pow(L.pcs[static_cast<size_t>(i - L.lo)][k].len());
        return m;
    }

    M dget(const std::vector<M>& d, const Layout& L, int i) const {
        int k = i - L.lo;
        if (k < 0 || k >= static_cast<int>(d.size())) return M(L.n(i + 1), L.n(i), R.zero());
        return d[static_cast<size_t>(k)];
    }

    M cycles(const std::vector<M>& d, const Layout& L, int i) const {
        size_t n = L.n(i);
        if (L.n(i + 1) == 0) return M::identity(n, R.zero(), R.one());
        M K = chain_kernel(R, M::hcat(dget(d, L, i), rel(L, i + 1)));
        return K.row_range(0, n);
    }

    M boundaries(const std::vector<M>& d, const Layout& L, int i) const {
        return M::hcat(dget(d, L, i - 1), rel(L, i));
    }

    std::map<int, std::vector<int>> cohomology(const Complex& X, const Layout& L, const std::vector<M>& d) const {
        std::map<int, std::vector<int>> h;
        for (int i = X.lo; i <= X.hi(); ++i) {
            if (L.n(i) == 0) {
                h[i] = {};
                continue;
            }
            h[i] = chain_quotient_invariants(R, cycles(d, L, i), boundaries(d, L, i));
        }
        return h;
    }

    std::map<int, std::vector<int>> persistent(const Complex& X, const Layout& S, const std::vector<M>& dS, const Layout& Q,
                                               const std::vector<M>& dQ) const {
        std::map<int, std::vector<int>> h;
        for (int i = X.lo; i <= X.hi(); ++i) {
            size_t n = S.n(i);
            if (n == 0) {
                h[i] = {};
                continue;
            }
            M Z = cycles(dS, S, i);
            const auto& ps = S.pcs[static_cast<size_t>(i - X.lo)];
            const auto& pq = Q.pcs[static_cast<size_t>(i - X.lo)];
            for (size_t r = 0; r < n; ++r) {
                auto f = R.pi_pow(ps[r].lo - pq[r].lo);
                for (size_t c = 0; c < Z.cols(); ++c) Z(r, c) = R.reduce(R.mul(Z(r, c), f), pq[r].len());
            }
            h[i] = chain_quotient_invariants(R, Z, boundaries(dQ, Q, i));
        }
        return h;
    }

    void run(const Complex& X, int pi, const Window& w, LocalResult& out) const {
        Layout full = layout(X, pi, w.a, w.b, w.g, Variant::Full);
        out.raw = cohomology(X, full, diffs(X, full));
        Layout S = layout(X, pi, w.a, w.b, w.g, Variant::Sub), Q = layout(X, pi, w.a, w.b, w.g, Variant::Quotient);
        out.inner = persistent(X, S, diffs(X, S), Q, diffs(X, Q));
    }
};

template <class CR>
void run_twice(const Complex& X, int pi, const Window& w, const std::function<std::unique_ptr<CR>(int)>& make,
               const std::function<Conv<CR>(const CR&)>& conv, LocalResult& out) {
    std::string where = out.prime;
    {
        auto R = make(w.a + w.b);
        Local<CR> L{*R, conv(*R), where};
        L.run(X, pi, w, out);
    }
    {
        Window w2{w.a + 2, w.b + 2, w.g};
        auto R = make(w2.a + w2.b);
        Local<CR> L{*R, conv(*R), where};
        LocalResult tmp;
        L.run(X, pi, w2, tmp);
        out.inner2 = tmp.inner;
    }
}

// ---------------------------------------------------------------- coefficient conversion

Rational as_rational(const Element& e) {
    Element f = to_fraction(e);
    if (auto* q = std::get_if<Rational>(&f)) return *q;
    fail(ErrorKind::UnsupportedRing, "coefficient is not rational");
}

template <class F>
Frac<F> as_frac(const Element& e, const F& one) {
    Element f = to_fraction(e);
    if (auto* r = std::get_if<Frac<F>>(&f)) return *r;
    if constexpr (std::is_same_v<F, Rational>) {
        if (auto* q = std::get_if<Rational>(&f)) return Frac<F>(Poly<F>::constant(*q));
    } else {
        if (auto* q = std::get_if<Fp>(&f)) return Frac<F>(Poly<F>::constant(*q));
        if (auto* n = std::get_if<Integer>(&f)) return Frac<F>(Poly<F>::constant(F(Integer(*n % one.p).get_si(), one.p)));
    }
    fail(ErrorKind::UnsupportedRing, "coefficient is not in the polynomial fraction field");
}

Conv<ZpnRing> z_conv(const ZpnRing& R) {
    return [&R](const Element& e) {
        Rational q = as_rational(e);
        Integer p(static_cast<unsigned long>(R.p()));
        Integer num = q.get_num(), den = q.get_den();
        int v = 0;
        while (num % p == 0) {
            num /= p;
            ++v;
        }
        while (den % p == 0) {
            den /= p;
            --v;
        }
        return std::make_pair(v, R.mul(R.from_integer(num), R.unit_inv(R.from_integer(den))));
    };
}

template <class F>
Conv<PolyPnRing<F>> poly_conv(const PolyPnRing<F>& R, F one) {
    return [&R, one](const Element& e) {
        Frac<F> fr = as_frac<F>(e, one);
        Poly<F> num = fr.num(), den = fr.den();
        const Poly<F>& f = R.pi();
        int v = 0;
        while ((num % f).is_zero()) {
            num = num / f;
            ++v;
        }
        while ((den % f).is_zero()) {
            den = den / f;
            --v;
        }
        return std::make_pair(v, R.mul(R.reduce_full(num), R.unit_inv(R.reduce_full(den))));
    };
}

// ---------------------------------------------------------------- bivariate monomial engine

using MonoIndex = std::map<std::pair<size_t, Poly2::Mono>, size_t>;

struct MonoLayout {
    std::vector<std::vector<std::pair<size_t, Poly2::Mono>>> basis;
    std::vector<MonoIndex> index;
    std::vector<std::vector<MonoBox>> boxes;
};

MonoLayout mono_layout(const Complex& X, int a, int b) {
    MonoLayout L;
    for (int i = X.lo; i <= X.hi(); ++i) {
        std::vector<std::pair<size_t, Poly2::Mono>> basis;
        MonoIndex idx;
        std::vector<MonoBox> boxes;
        const Term& t = X.term(i);
        for (size_t k = 0; k < t.size(); ++k) {
            MonoBox box = mono_box(*X.F, t[k], a, b);
            boxes.push_back(box);
            for (int ex = box.lx; ex < b - box.ly; ++ex)
                for (int ey = box.ly; ex + ey < b; ++ey) {
                    idx[{k, {ex, ey}}] = basis.size();
                    basis.push_back({k, {ex, ey}});
                }
        }
        L.basis.push_back(basis);
        L.index.push_back(idx);
        L.boxes.push_back(boxes);
    }
    return L;
}

Poly2 expand(const Element& e, uint64_t p, int deg) {
    Element f = to_fraction(e);
    if (auto* r = std::get_if<Frac2>(&f)) return (r->num * series_inverse(r->den, deg)).truncated(deg);
    if (auto* q = std::get_if<Poly2>(&f)) return q->truncated(deg);
    if (auto* c = std::get_if<Fp>(&f)) return Poly2::constant(static_cast<int64_t>(c->v), p);
    if (auto* n = std::get_if<Integer>(&f)) return Poly2::constant(Integer(*n % Integer(static_cast<unsigned long>(p))).get_si(), p);
    fail(ErrorKind::UnsupportedRing, "coefficient is not in the bivariate local ring");
}

std::map<int, long> mono_dims(const Complex& X, int a, int b) {
    const uint64_t p = characteristic(X.F->home());
    MonoLayout L = mono_layout(X, a, b);
    std::vector<size_t> ranks;
    for (int i = X.lo; i <= X.hi(); ++i) {
        size_t k = static_cast<size_t>(i - X.lo);
        if (i == X.hi()) {
            ranks.push_back(0);
            break;
        }
        Mat D = X.diff(i);
        const auto& src = L.basis[k];
        const auto& tgt = L.basis[k + 1];
        Matrix<Fp> M(tgt.size(), src.size(), Fp(0, p));
        for (size_t c = 0; c < src.size(); ++c) {
            auto [atom, mono] = src[c];
            for (size_t r = 0; r < D.rows(); ++r) {
                if (is_zero(D(r, atom))) continue;
                Poly2 poly = expand(D(r, atom), p, b + 2 * a + 2);
                const MonoBox& tb = L.boxes[k + 1][r];
                for (auto& [m, coef] : poly.terms()) {
                    Poly2::Mono out{mono.first + m.first, mono.second + m.second};
                    if (out.first + out.second >= b) continue;
                    if (out.first < tb.lx || out.second < tb.ly)
                        fail(ErrorKind::WindowOverflow, "monomial leaves the window in degree " + std::to_string(i));
                    size_t row = L.index[k + 1].at({r, out});
                    M(row, c) = M(row, c) + Fp(static_cast<int64_t>(coef), p);
                }
            }
        }
        ranks.push_back(field_rank(M));
    }
    std::map<int, long> dims;
    for (int i = X.lo; i <= X.hi(); ++i) {
        size_t k = static_cast<size_t>(i - X.lo);
        long n = static_cast<long>(L.basis[k].size());
        long in = k > 0 ? static_cast<long>(ranks[k - 1]) : 0;
        dims[i] = n - static_cast<long>(ranks[k]) - in;
    }
    return dims;
}

} // namespace

std::string status_of(const std::vector<int>& inner, const std::vector<int>& inner2) {
    if (inner.empty() && inner2.empty()) return "zero";
    if (!inner.empty() && !inner2.empty()) return "nonzero";
    return "inconclusive";
}

std::vector<int> evaluation_primes(const SpecFragment& F) {
    std::vector<int> out;
    for (int i : max_w(F, F.all()))
        if (F.prime(i).kind != PrimeIdeal::Kind::Zero) out.push_back(i);
    return out;
}

LocalResult evaluate_at(const Complex& X, int pi, const Window& w) {
    const SpecFragment& F = *X.F;
    const PrimeIdeal& P = F.prime(pi);
    LocalResult out;
    out.pi = pi;
    out.prime = F.name(pi);
    if (P.kind == PrimeIdeal::Kind::MaximalPair) {
        out.monomial = true;
        auto d1 = mono_dims(X, w.a, w.b), d2 = mono_dims(X, w.a + 2, w.b + 2);
        for (auto& [deg, n] : d1) {
            out.raw[deg] = std::vector<int>(static_cast<size_t>(n), 1);
            out.inner[deg] = out.raw[deg];
            out.inner2[deg] = std::vector<int>(static_cast<size_t>(d2[deg]), 1);
        }
    } else if (P.kind == PrimeIdeal::Kind::Principal) {
        switch (family(F.home())) {
        case Family::Z: {
            Integer g = abs(Integer(as_rational(P.gen).get_num()));
            uint64_t p = g.get_ui();
            run_twice<ZpnRing>(
                X, pi, w, [p](int N) { return std::make_unique<ZpnRing>(p, N); }, z_conv, out);
            break;
        }
        case Family::PolyFp: {
            Fp one(1, characteristic(F.home()));
            PolyFp f = as_frac<Fp>(P.gen, one).num();
            run_twice<PolyPnRing<Fp>>(
                X, pi, w, [f](int N) { return std::make_unique<PolyPnRing<Fp>>(f, N); },
                [one](const PolyPnRing<Fp>& R) { return poly_conv<Fp>(R, one); }, out);
            break;
        }
        case Family::PolyQ: {
            Rational one(1);
            PolyQ f = as_frac<Rational>(P.gen, one).num();
            run_twice<PolyPnRing<Rational>>(
                X, pi, w, [f](int N) { return std::make_unique<PolyPnRing<Rational>>(f, N); },
                [one](const PolyPnRing<Rational>& R) { return poly_conv<Rational>(R, one); }, out);
            break;
        }
        case Family::Bivariate:
            fail(ErrorKind::UnsupportedShape, "windows over the bivariate ring are taken at (x,y) only");
        default: fail(ErrorKind::UnsupportedRing, "no maximal primes over a field");
        }
    } else {
        fail(ErrorKind::PreconditionViolation, "windows are taken at nonzero primes");
    }
    for (auto& [deg, v] : out.inner) out.status[deg] = status_of(v, out.inner2[deg]);
    return out;
}

GenericResult evaluate_generic(const Complex& X) {
    const SpecFragment& F = *X.F;
    GenericResult g;
    std::vector<std::vector<size_t>> keep;
    for (int i = X.lo; i <= X.hi(); ++i) {
        std::vector<size_t> k;
        const Term& t = X.term(i);
        for (size_t j = 0; j < t.size(); ++j) {
            Rank r = generic_rank(F, t[j]);
            if (r.infinite) {
                g.checked = false;
                g.note = "not checked at (0): " + atom_str(F, t[j]) + " has infinite rank over the fraction field";
                return g;
            }
            if (r.value > 0) k.push_back(j);
        }
        keep.push_back(k);
    }
    g.checked = true;
    std::vector<size_t> ranks;
    for (int i = X.lo; i <= X.hi(); ++i) {
        size_t k = static_cast<size_t>(i - X.lo);
        if (i == X.hi()) {
            ranks.push_back(0);
            break;
        }
        Mat D = X.diff(i);
        Mat M(keep[k + 1].size(), keep[k].size(), X.zero());
        for (size_t r = 0; r < keep[k + 1].size(); ++r)
            for (size_t c = 0; c < keep[k].size(); ++c) M(r, c) = to_fraction(D(keep[k + 1][r], keep[k][c]));
        ranks.push_back(field_rank(M));
    }
    for (int i = X.lo; i <= X.hi(); ++i) {
        size_t k = static_cast<size_t>(i - X.lo);
        long in = k > 0 ? static_cast<long>(ranks[k - 1]) : 0;
        g.ranks[i] = static_cast<long>(keep[k].size()) - static_cast<long>(ranks[k]) - in;
    }
    return g;
}

} // namespace cosupp
