#include "cosupp/blocks/blocks.hpp"

#include <algorithm>

namespace cosupp {

namespace {

const Ring& home(const SpecFragment& F) { return F.home(); }

Element denominator_of(const Element& e) {
    Element f = to_fraction(e);
    if (auto* r = std::get_if<Rational>(&f)) return Integer(r->get_den());
    if (auto* r = std::get_if<FracFp>(&f)) return r->den();
    if (auto* r = std::get_if<FracQ>(&f)) return r->den();
    if (auto* r = std::get_if<Frac2>(&f)) return r->den;
    return one_like(f);
}

Element product(const std::vector<Element>& xs, const Ring& R) {
    Element p = ring_one(core_ring(R));
    for (auto& x : xs) p = p * x;
    return p;
}

// Is s a unit after inverting S?
bool localizer_inverts(const Localizer& S, const Element& s, const Ring& R) {
    if (is_zero(s)) return false;
    if (is_unit_in(s, R)) return true;
    if (S.complement && !is_in_prime(s, *S.complement)) return true;
    if (S.inverted.empty()) return false;
    Element prod = product(S.inverted, R), r = s;
    for (int it = 0; it < 64; ++it) {
        Element g = ring_gcd(r, prod, R);
        if (is_unit_in(g, R)) break;
        r = r / g;
    }
    return is_unit_in(r, R);
}

bool localizer_contains(const Localizer& big, const Localizer& small, const Ring& R) {
    for (auto& s : small.inverted)
        if (!localizer_inverts(big, s, R)) return false;
    if (small.complement) {
        if (!big.complement) return false;
        if (!prime_contained(*big.complement, *small.complement)) return false;
    }
    return true;
}

Base normalized(Base b, const Ring& R) {
    if (b.kind != Base::Kind::Localized) return b;
    std::vector<Element> keep;
    for (auto& s : b.S.inverted)
        if (!is_unit_in(s, R)) keep.push_back(s);
    b.S.inverted = keep;
    if (keep.empty() && !b.S.complement) return Base::free();
    return b;
}

bool is_subsequence(const Chain& c, const Chain& d) {
    size_t k = 0;
    for (int x : d)
        if (k < c.size() && c[k] == x) ++k;
    return k == c.size();
}

std::optional<Atom> prune(const SpecFragment& F, Atom a) {
    if (is_zero(a.ann)) return a;
    if (is_unit_in(a.ann, home(F))) return std::nullopt;
    if (a.base.kind == Base::Kind::Block && !is_in_prime(a.ann, F.prime(a.base.last()))) return std::nullopt;
    if (a.base.kind == Base::Kind::Localized && localizer_inverts(a.base.S, a.ann, home(F))) return std::nullopt;
    return a;
}

} // namespace

Base Base::localized(Localizer S) {
    Base b;
    b.kind = Kind::Localized;
    b.S = std::move(S);
    return b;
}

Base Base::block(Chain c) {
    Base b;
    b.kind = Kind::Block;
    b.chain = std::move(c);
    return b;
}

Localizer powers_of(std::vector<Element> gens) { return {std::move(gens), nullptr}; }
Localizer complement_of(const Prime& p) { return {{}, p}; }

bool same_base(const Base& a, const Base& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Base::Kind::Free: return true;
    case Base::Kind::Block: return a.chain == b.chain;
    case Base::Kind::Localized: {
        if (a.S.inverted.size() != b.S.inverted.size()) return false;
        for (size_t i = 0; i < a.S.inverted.size(); ++i)
            if (a.S.inverted[i] != b.S.inverted[i]) return false;
        if (bool(a.S.complement) != bool(b.S.complement)) return false;
        return !a.S.complement || same_prime(*a.S.complement, *b.S.complement);
    }
    }
    return false;
}

bool same_atom(const Atom& a, const Atom& b) { return same_base(a.base, b.base) && a.ann == b.ann; }

std::string base_str(const SpecFragment& F, const Base& b) {
    switch (b.kind) {
    case Base::Kind::Free: return "R";
    case Base::Kind::Localized: {
        std::string s = "R";
        if (b.S.complement) s += "_" + prime_str(*b.S.complement);
        if (!b.S.inverted.empty()) {
            s += "[";
            for (size_t i = 0; i < b.S.inverted.size(); ++i) {
                if (i) s += ",";
                s += "1/" + element_str(b.S.inverted[i], home(F));
            }
            s += "]";
        }
        return s;
    }
    case Base::Kind::Block: {
        std::string s = "T[";
        for (size_t i = 0; i < b.chain.size(); ++i) {
            if (i) s += ",";
            s += F.name(b.chain[i]);
        }
        return s + "]";
    }
    }
    return "?";
}

std::string atom_str(const SpecFragment& F, const Atom& a) {
    std::string s = base_str(F, a.base);
    if (!is_zero(a.ann)) s += "/(" + element_str(a.ann, home(F)) + ")";
    return s;
}

std::string term_str(const SpecFragment& F, const Term& t) {
    if (t.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < t.size();) {
        size_t j = i;
        while (j < t.size() && same_atom(t[i], t[j])) ++j;
        if (!s.empty()) s += " x ";
        s += atom_str(F, t[i]) + (j - i > 1 ? "^" + std::to_string(j - i) : "");
        i = j;
    }
    return s;
}

std::string block_nickname(const SpecFragment& F, const Base& b) {
    if (b.kind != Base::Kind::Block || family(home(F)) != Family::Z) return "";
    auto gen = [&](int i) {
        std::string s = F.name(i);
        return s.substr(1, s.size() - 2);
    };
    const Chain& c = b.chain;
    if (c.size() == 1) return F.prime(c[0]).kind == PrimeIdeal::Kind::Zero ? "Q" : "Z_" + gen(c[0]);
    if (c.size() == 2 && F.prime(c[1]).kind == PrimeIdeal::Kind::Zero) return "Q_" + gen(c[0]);
    return "";
}

bool in_US(const Localizer& S, const PrimeIdeal& q) {
    for (auto& s : S.inverted)
        if (is_in_prime(s, q)) return false;
    if (S.complement && !prime_contained(q, *S.complement)) return false;
    return true;
}

std::optional<Base> apply_lambda_point(const SpecFragment& F, const Base& B, int q) {
    switch (B.kind) {
    case Base::Kind::Free: return Base::block({q});
    case Base::Kind::Localized:
        if (in_US(B.S, F.prime(q))) return Base::block({q});
        return std::nullopt;
    case Base::Kind::Block: {
        int last = B.last();
        if (q == last) return B;
        if (F.lt(q, last)) {
            Chain c = B.chain;
            c.push_back(q);
            return Base::block(c);
        }
        return std::nullopt;
    }
    }
    return std::nullopt;
}

std::optional<Atom> apply_lambda_point(const SpecFragment& F, const Atom& A, int q) {
    auto b = apply_lambda_point(F, A.base, q);
    if (!b) return std::nullopt;
    return prune(F, Atom{*b, A.ann});
}

bool canonical_map_exists(const SpecFragment& F, const Base& s, const Base& t) {
    switch (s.kind) {
    case Base::Kind::Free: return true;
    case Base::Kind::Localized:
        if (t.kind == Base::Kind::Free) return false;
        if (t.kind == Base::Kind::Localized) return localizer_contains(t.S, s.S, home(F));
        return in_US(s.S, F.prime(t.last()));
    case Base::Kind::Block: return t.kind == Base::Kind::Block && is_subsequence(s.chain, t.chain);
    }
    return false;
}

Base tensor_base(const SpecFragment& F, const Base& s, const Base& t) {
    const Ring& R = home(F);
    if (s.kind == Base::Kind::Free) return t;
    if (t.kind == Base::Kind::Free) return s;
    if (s.kind == Base::Kind::Localized && t.kind == Base::Kind::Localized) {
        Localizer S = s.S;
        for (auto& x : t.S.inverted) S.inverted.push_back(x);
        if (t.S.complement) {
            if (!S.complement || prime_contained(*t.S.complement, *S.complement)) S.complement = t.S.complement;
            else if (!prime_contained(*S.complement, *t.S.complement))
                fail(ErrorKind::UnsupportedShape, "tensor of localizations at incomparable primes");
        }
        return normalized(Base::localized(S), R);
    }
    if (s.kind == Base::Kind::Block && t.kind == Base::Kind::Block)
        fail(ErrorKind::UnsupportedShape, "tensor of two completed blocks is outside the block calculus");
    const Base& L = s.kind == Base::Kind::Localized ? s : t;
    const Base& B = s.kind == Base::Kind::Block ? s : t;
    int last = B.last();
    if (in_US(L.S, F.prime(last))) return B;
    // S meets the last prime: over a one-dimensional ring the block becomes
    // a vector space over the fraction field.
    int z = F.zero_index();
    bool height_one = z >= 0 && z != last && family(R) != Family::Bivariate;
    for (int k = 0; height_one && k < F.size(); ++k)
        if (F.lt(z, k) && F.lt(k, last)) height_one = false;
    if (!height_one)
        fail(ErrorKind::UnsupportedShape, "localizing " + base_str(F, B) + " needs a one-dimensional fragment with (0)");
    Chain c = B.chain;
    c.push_back(z);
    return Base::block(c);
}

std::optional<Atom> tensor_atom(const SpecFragment& F, const Atom& s, const Atom& t) {
    Base b = tensor_base(F, s.base, t.base);
    Element ann = ring_gcd(s.ann, t.ann, home(F));
    return prune(F, Atom{b, ann});
}

Rank enochs_rank(const SpecFragment& F, const Base& B, long r, int p) {
    switch (B.kind) {
    case Base::Kind::Free: return {false, r};
    case Base::Kind::Localized: return {false, in_US(B.S, F.prime(p)) ? r : 0};
    case Base::Kind::Block:
        if (!F.le(p, B.last())) return {false, 0};
        if (p == B.last() && B.chain.size() == 1) return {false, r};
        if (r == 0) return {false, 0};
        return {true, 0};
    }
    return {};
}

Rank generic_rank(const SpecFragment& F, const Atom& a) {
    if (!is_zero(a.ann)) return {false, 0};
    if (a.base.kind != Base::Kind::Block) return {false, 1};
    if (a.base.chain.size() == 1 && F.prime(a.base.chain[0]).kind == PrimeIdeal::Kind::Zero) return {false, 1};
    return {true, 0};
}

// ---------------------------------------------------------------- f.g. modules

FgModule FgModule::free(const Ring& R, size_t n) { return {n, Matrix<Element>(n, 0, ring_zero(R))}; }

FgModule FgModule::cyclic(const Ring& R, const Element& d) {
    Matrix<Element> m(1, 1, ring_zero(R));
    m(0, 0) = d;
    return {1, m};
}

Element ring_gcd(const Element& a, const Element& b, const Ring& R) {
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    Matrix<Element> m(1, 2, ring_zero(R));
    m(0, 0) = a;
    m(0, 1) = b;
    return smith_normal_form(m, R).invariants[0];
}

FgNormal normalize(const FgModule& M, const Ring& R) {
    const size_t g = M.gens;
    const Element zero = ring_zero(R), one = ring_one(R);
    FgNormal n;
    if (M.rel.cols() == 0 || g == 0) {
        n.ann.assign(g, zero);
        n.to = Matrix<Element>::identity(g, zero, one);
        n.from = n.to;
        return n;
    }
    if (M.rel.rows() != g) fail(ErrorKind::Validation, "presentation matrix has the wrong number of rows");
    auto s = smith_normal_form(M.rel, R);
    std::vector<size_t> keep;
    for (size_t k = 0; k < g; ++k) {
        Element d = k < s.invariants.size() ? s.invariants[k] : zero;
        if (!is_zero(d) && is_unit_in(d, R)) continue;
        keep.push_back(k);
        n.ann.push_back(d);
    }
    n.to = Matrix<Element>(keep.size(), g, zero);
    n.from = Matrix<Element>(g, keep.size(), zero);
    for (size_t r = 0; r < keep.size(); ++r)
        for (size_t j = 0; j < g; ++j) {
            n.to(r, j) = s.U(keep[r], j);
            n.from(j, r) = s.Uinv(j, keep[r]);
        }
    return n;
}

Term twist(const Base& b, const FgNormal& n) {
    Term t;
    for (auto& d : n.ann) t.push_back(Atom{b, d});
    return t;
}

bool divisible_in_atom(const SpecFragment& F, const Element& c, const Atom& target) {
    if (is_zero(c)) return true;
    if (is_zero(target.ann)) return false;
    Element den = denominator_of(c / target.ann);
    const Ring& R = home(F);
    if (is_unit_in(den, R)) return true;
    switch (target.base.kind) {
    case Base::Kind::Free: return false;
    case Base::Kind::Localized: return localizer_inverts(target.base.S, den, R);
    case Base::Kind::Block: return !is_in_prime(den, F.prime(target.base.last()));
    }
    return false;
}

// ---------------------------------------------------------------- filters

Term hom_from_localization(const SpecFragment& F, const Localizer& S, const Term& P) {
    Term out;
    for (auto& a : P) {
        if (a.base.kind != Base::Kind::Block)
            fail(ErrorKind::PreconditionViolation, "Hom out of a localization is modelled on block products only");
        if (in_US(S, F.prime(a.base.last()))) out.push_back(a);
    }
    return out;
}

Term completion_filter(const SpecFragment& F, int a, const Term& P) {
    Term out;
    for (auto& x : P) {
        if (x.base.kind != Base::Kind::Block)
            fail(ErrorKind::PreconditionViolation, "completion filter applies to block products only");
        if (F.le(a, x.base.last())) out.push_back(x);
    }
    return out;
}

Term tensor_fg(const SpecFragment& F, const Term& P, const FgModule& M) {
    FgNormal n = normalize(M, home(F));
    Term out;
    for (auto& a : P)
        for (auto& d : n.ann)
            if (auto t = tensor_atom(F, a, Atom{Base::free(), d})) out.push_back(*t);
    return out;
}

// ---------------------------------------------------------------- windows

std::string Window::str() const {
    return "(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ",g=" + std::to_string(g) + ")";
}

void validate_window(const Window& w, bool certify, int max_total) {
    if (w.a < 0 || w.b < 1 || w.g < 0) fail(ErrorKind::Validation, "window needs a >= 0, b >= 1, g >= 0");
    if (w.a + w.b > max_total)
        fail(ErrorKind::Validation, "window a+b=" + std::to_string(w.a + w.b) + " exceeds the maximum " + std::to_string(max_total));
    if (certify && w.g > 0 && w.g >= std::min(w.a, w.b))
        fail(ErrorKind::Validation, "guard g=" + std::to_string(w.g) + " must be below min(a,b)");
}

std::optional<Piece> window_piece(const SpecFragment& F, const Atom& A, int pi, int a, int b) {
    const PrimeIdeal& P = F.prime(pi);
    bool divisible = false;
    switch (A.base.kind) {
    case Base::Kind::Free: break;
    case Base::Kind::Localized: divisible = !in_US(A.base.S, P); break;
    case Base::Kind::Block:
        if (!F.le(A.base.chain[0], pi)) return std::nullopt;
        divisible = A.base.last() != pi;
        break;
    }
    if (!is_zero(A.ann)) {
        if (divisible) return std::nullopt;
        int e = prime_valuation(A.ann, P);
        if (e == 0) return std::nullopt;
        return Piece{Piece::Kind::Torsion, 0, std::min(e, b)};
    }
    if (divisible) return Piece{Piece::Kind::Divisible, -a, b};
    return Piece{Piece::Kind::Lattice, 0, b};
}

MonoBox mono_box(const SpecFragment& F, const Atom& A, int a, int b) {
    const Ring& R = home(F);
    if (!is_zero(A.ann)) fail(ErrorKind::UnsupportedShape, "torsion twists are not evaluated over the bivariate ring");
    Ring c = core_ring(R);
    Element x = parse_element(c->var, R), y = parse_element(c->var2, R);
    MonoBox box;
    box.b = b;
    auto inverted = [&](const Element& v) -> bool {
        switch (A.base.kind) {
        case Base::Kind::Free: return false;
        case Base::Kind::Localized:
            if (!A.base.S.inverted.empty())
                fail(ErrorKind::UnsupportedShape, "element localizations are not evaluated over the bivariate ring");
            return !is_in_prime(v, *A.base.S.complement);
        case Base::Kind::Block: return !is_in_prime(v, F.prime(A.base.last()));
        }
        return false;
    };
    box.lx = inverted(x) ? -a : 0;
    box.ly = inverted(y) ? -a : 0;
    return box;
}

std::vector<int> evaluate_block(const SpecFragment& F, const Term& P, int pi, const Window& w) {
    std::vector<int> lens;
    for (auto& x : P)
        if (auto pc = window_piece(F, x, pi, w.a, w.b)) lens.push_back(pc->len());
    std::sort(lens.begin(), lens.end());
    return lens;
}

} // namespace cosupp
