#include "cosupp/rings/ring.hpp"

#include <cctype>
#include <functional>

namespace cosupp {

namespace {

Ring make(RingDescriptor d) { return std::make_shared<const RingDescriptor>(std::move(d)); }

RingDescriptor desc(RingKind k) {
    RingDescriptor d;
    d.kind = k;
    return d;
}

[[noreturn]] void unsupported(const std::string& what) { fail(ErrorKind::UnsupportedRing, what); }

} // namespace

Ring integers() { return make(desc(RingKind::Integers)); }
Ring rationals() { return make(desc(RingKind::Rationals)); }

Ring prime_field(uint64_t p) {
    if (!is_small_prime(p)) fail(ErrorKind::Validation, "F_p needs a prime p, got " + std::to_string(p));
    RingDescriptor d = desc(RingKind::PrimeField);
    d.p = p;
    return make(d);
}

Ring poly_ring(const Ring& field, const std::string& var) {
    if (field->kind != RingKind::Rationals && field->kind != RingKind::PrimeField)
        unsupported("polynomial rings are supported over Q and F_p only");
    RingDescriptor d = desc(RingKind::PolyRing);
    d.base = field;
    d.var = var;
    d.p = field->p;
    return make(d);
}

Ring bivariate(uint64_t p, const std::string& x, const std::string& y) {
    if (!is_small_prime(p)) fail(ErrorKind::Validation, "F_p needs a prime p");
    RingDescriptor d = desc(RingKind::BivariatePolyRing);
    d.p = p;
    d.var = x;
    d.var2 = y;
    return make(d);
}

bool is_field(const Ring& R) {
    switch (R->kind) {
    case RingKind::PrimeField:
    case RingKind::Rationals:
    case RingKind::FractionField: return true;
    case RingKind::Localization: return R->prime->kind == PrimeIdeal::Kind::Zero;
    default: return false;
    }
}

bool is_domain(const Ring& R) { return R->kind != RingKind::TruncatedCompletion; }

Ring fraction_field(const Ring& D) {
    if (!is_domain(D)) {
        // Fraction field of a truncated completion: the windowed Q_p backend.
        if (family(D->base) != Family::Z) unsupported("windowed fractions exist over Z-completions only");
        RingDescriptor d = desc(RingKind::FractionField);
        d.base = D;
        return make(d);
    }
    switch (D->kind) {
    case RingKind::Integers: return rationals();
    case RingKind::Rationals:
    case RingKind::PrimeField:
    case RingKind::FractionField: return D;
    case RingKind::Localization: return fraction_field(D->base);
    default: break;
    }
    RingDescriptor d = desc(RingKind::FractionField);
    d.base = D;
    return make(d);
}

Ring core_ring(const Ring& R) {
    Ring r = R;
    while (r->kind == RingKind::Localization || r->kind == RingKind::TruncatedCompletion) r = r->base;
    return r;
}

Family family(const Ring& R) {
    Ring c = core_ring(R);
    switch (c->kind) {
    case RingKind::Integers: return Family::Z;
    case RingKind::Rationals: return Family::FieldQ;
    case RingKind::PrimeField: return Family::FieldFp;
    case RingKind::PolyRing: return c->base->kind == RingKind::Rationals ? Family::PolyQ : Family::PolyFp;
    case RingKind::BivariatePolyRing: return Family::Bivariate;
    case RingKind::FractionField: {
        Family f = family(c->base);
        if (f == Family::Z) return Family::FieldQ;
        return f;  // k(x) behaves like its polynomial ring for parsing purposes
    }
    default: break;
    }
    unsupported("unknown ring family");
}

uint64_t characteristic(const Ring& R) {
    Ring c = core_ring(R);
    if (c->kind == RingKind::FractionField) c = core_ring(c->base);
    if (c->kind == RingKind::PrimeField || c->kind == RingKind::BivariatePolyRing) return c->p;
    if (c->kind == RingKind::PolyRing) return c->base->kind == RingKind::PrimeField ? c->base->p : 0;
    return 0;
}

std::string ring_str(const Ring& R) {
    switch (R->kind) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::PrimeField: return "F_" + std::to_string(R->p);
    case RingKind::PolyRing: return ring_str(R->base) + "[" + R->var + "]";
    case RingKind::BivariatePolyRing: return "F_" + std::to_string(R->p) + "[" + R->var + "," + R->var2 + "]";
    case RingKind::FractionField: return "Frac(" + ring_str(R->base) + ")";
    case RingKind::Localization: return ring_str(R->base) + "_" + prime_str(*R->prime);
    case RingKind::TruncatedCompletion:
        return "Trunc(" + ring_str(R->base) + ", " + prime_str(*R->prime) + ", " + std::to_string(R->stage) + ")";
    }
    return "?";
}

std::string carrier_str(const Ring& R) {
    if (R->kind != RingKind::TruncatedCompletion) return ring_str(R);
    const PrimeIdeal& p = *R->prime;
    Ring c = core_ring(R);
    if (p.kind == PrimeIdeal::Kind::MaximalPair)
        return ring_str(c) + "/(" + c->var + "," + c->var2 + ")^" + std::to_string(R->stage);
    if (family(R) == Family::Z) {
        Integer g = abs(Integer(std::get<Rational>(to_fraction(p.gen)).get_num()));
        Integer m;
        mpz_pow_ui(m.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(R->stage));
        return "Z/" + m.get_str();
    }
    return ring_str(c) + "/" + prime_str(p) + "^" + std::to_string(R->stage);
}

bool same_ring(const Ring& a, const Ring& b) { return a == b || ring_str(a) == ring_str(b); }

// ---------------------------------------------------------------- elements

namespace {

struct Lexer {
    const std::string& s;
    size_t i = 0;
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
    [[noreturn]] void error(const std::string& what) {
        fail(ErrorKind::Parse, what + " at column " + std::to_string(i + 1) + " in '" + s + "'");
    }
};

// Generic expression evaluator over a value type V.
template <class V>
struct ExprParser {
    Lexer lx;
    std::function<V(const Integer&)> num;
    std::function<V(const std::string&)> var;

    V parse() {
        V v = sum();
        if (lx.peek() != '\0') lx.error("unexpected character");
        return v;
    }
    V sum() {
        V v;
        char c = lx.peek();
        if (c == '-' || c == '+') {
            ++lx.i;
            v = term();
            if (c == '-') v = num(Integer(0)) - v;
        } else {
            v = term();
        }
        for (;;) {
            c = lx.peek();
            if (c == '+') {
                ++lx.i;
                v = v + term();
            } else if (c == '-') {
                ++lx.i;
                v = v - term();
            } else {
                return v;
            }
        }
    }
    V term() {
        V v = power();
        for (;;) {
            char c = lx.peek();
            if (c == '*') {
                ++lx.i;
                v = v * power();
            } else if (c == '/') {
                ++lx.i;
                V d = power();
                if (is_zero(d)) lx.error("division by zero");
                v = v / d;
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '(') {
                v = v * power();  // implicit product, e.g. 3x
            } else {
                return v;
            }
        }
    }
    V power() {
        V b = atom();
        if (lx.peek() == '^') {
            ++lx.i;
            lx.skip();
            size_t st = lx.i;
            while (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) ++lx.i;
            if (st == lx.i) lx.error("expected exponent");
            unsigned e = static_cast<unsigned>(std::stoul(lx.s.substr(st, lx.i - st)));
            V r = num(Integer(1));
            for (unsigned k = 0; k < e; ++k) r = r * b;
            return r;
        }
        return b;
    }
    V atom() {
        char c = lx.peek();
        if (c == '(') {
            ++lx.i;
            V v = sum();
            if (lx.peek() != ')') lx.error("expected ')'");
            ++lx.i;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t st = lx.i;
            while (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) ++lx.i;
            return num(Integer(lx.s.substr(st, lx.i - st)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t st = lx.i;
            while (lx.i < lx.s.size() && (std::isalnum(static_cast<unsigned char>(lx.s[lx.i])) || lx.s[lx.i] == '_')) ++lx.i;
            return var(lx.s.substr(st, lx.i - st));
        }
        lx.error("unexpected token");
    }
};

Fp fp_of(const Integer& n, uint64_t p) {
    Integer r = n % Integer(static_cast<unsigned long>(p));
    if (r < 0) r += Integer(static_cast<unsigned long>(p));
    return Fp(static_cast<int64_t>(r.get_ui()), p);
}

Element parse_in_core(const std::string& text, const Ring& core) {
    auto bad_var = [&](const std::string& v) -> Element {
        fail(ErrorKind::Parse, "unknown symbol '" + v + "' for ring " + ring_str(core));
    };
    switch (core->kind) {
    case RingKind::Integers:
    case RingKind::Rationals: {
        ExprParser<Element> ep{Lexer{text}, [](const Integer& n) -> Element { return Rational(n); },
                               [&](const std::string& v) -> Element { return bad_var(v); }};
        return ep.parse();
    }
    case RingKind::PrimeField: {
        uint64_t p = core->p;
        ExprParser<Element> ep{Lexer{text}, [p](const Integer& n) -> Element { return fp_of(n, p); },
                               [&](const std::string& v) -> Element { return bad_var(v); }};
        return ep.parse();
    }
    case RingKind::PolyRing: {
        if (core->base->kind == RingKind::PrimeField) {
            uint64_t p = core->base->p;
            ExprParser<Element> ep{
                Lexer{text}, [p](const Integer& n) -> Element { return FracFp(PolyFp::constant(fp_of(n, p))); },
                [&](const std::string& v) -> Element {
                    if (v != core->var) return bad_var(v);
                    return FracFp(PolyFp::x(Fp(1, p)));
                }};
            return ep.parse();
        }
        ExprParser<Element> ep{Lexer{text}, [](const Integer& n) -> Element { return FracQ(PolyQ::constant(Rational(n))); },
                               [&](const std::string& v) -> Element {
                                   if (v != core->var) return bad_var(v);
                                   return FracQ(PolyQ::x(Rational(1)));
                               }};
        return ep.parse();
    }
    case RingKind::BivariatePolyRing: {
        uint64_t p = core->p;
        auto one = Poly2::constant(1, p);
        ExprParser<Element> ep{Lexer{text},
                               [p, one](const Integer& n) -> Element {
                                   return Frac2{Poly2::constant(static_cast<int64_t>(fp_of(n, p).v), p), one};
                               },
                               [&, p, one](const std::string& v) -> Element {
                                   if (v == core->var) return Frac2{Poly2::monomial(1, 0, p), one};
                                   if (v == core->var2) return Frac2{Poly2::monomial(0, 1, p), one};
                                   return bad_var(v);
                               }};
        return ep.parse();
    }
    case RingKind::FractionField: return parse_in_core(text, core_ring(core->base));
    default: break;
    }
    unsupported("cannot parse elements of " + ring_str(core));
}

// Simplest representation of a fraction-field value inside ring R.
Element demote(const Element& e, const Ring& R) {
    if (auto* q = std::get_if<Rational>(&e)) {
        if (R->kind == RingKind::Integers && q->get_den() == 1) return Integer(q->get_num());
        return e;
    }
    if (auto* f = std::get_if<FracFp>(&e)) {
        if (R->kind == RingKind::FractionField) return e;
        if (f->den().degree() == 0) return f->num();
        return e;
    }
    if (auto* f = std::get_if<FracQ>(&e)) {
        if (R->kind == RingKind::FractionField) return e;
        if (f->den().degree() == 0) return f->num();
        return e;
    }
    if (auto* f = std::get_if<Frac2>(&e)) {
        if (R->kind == RingKind::FractionField) return e;
        if (f->den.total_degree() == 0) return f->num;
        return e;
    }
    return e;
}


} // namespace

Element parse_element(const std::string& text, const Ring& R) {
    if (R->kind == RingKind::TruncatedCompletion) {
        Element e = parse_in_core(text, core_ring(R));
        const PrimeIdeal& p = *R->prime;
        switch (family(R)) {
        case Family::Z: {
            auto q = std::get<Rational>(e);
            Integer g = Integer(std::get<Rational>(to_fraction(p.gen)).get_num());
            auto ring = std::make_shared<const ZpnRing>(Integer(abs(g)).get_ui(), R->stage);
            if (valuation(Integer(q.get_den()), g) > 0) fail(ErrorKind::Parse, "denominator not a unit in " + ring_str(R));
            auto a = ring->from_integer(Integer(q.get_num()));
            auto b = ring->from_integer(Integer(q.get_den()));
            return TruncZ{ring, ring->mul(a, ring->unit_inv(b))};
        }
        case Family::PolyFp: {
            auto f = std::get<FracFp>(e);
            auto ring = std::make_shared<const PolyPnRing<Fp>>(std::get<PolyFp>(demote(p.gen, core_ring(R))), R->stage);
            return TruncPoly<Fp>{ring, ring->mul(ring->reduce_full(f.num()), ring->unit_inv(ring->reduce_full(f.den())))};
        }
        case Family::PolyQ: {
            auto f = std::get<FracQ>(e);
            auto ring = std::make_shared<const PolyPnRing<Rational>>(std::get<PolyQ>(demote(p.gen, core_ring(R))), R->stage);
            return TruncPoly<Rational>{ring, ring->mul(ring->reduce_full(f.num()), ring->unit_inv(ring->reduce_full(f.den())))};
        }
        case Family::Bivariate: {
            auto f = std::get<Frac2>(e);
            return TruncBi{R->stage, (f.num * series_inverse(f.den, R->stage)).truncated(R->stage)};
        }
        default: unsupported("truncated completion of a field");
        }
    }
    if (R->kind == RingKind::FractionField && R->base->kind == RingKind::TruncatedCompletion) {
        Element e = parse_in_core(text, core_ring(R->base));
        Integer g = Integer(std::get<Rational>(to_fraction(R->base->prime->gen)).get_num());
        int N = R->base->stage;
        return winqp_make(Integer(abs(g)).get_ui(), N, N, std::get<Rational>(e));
    }
    return demote(parse_in_core(text, core_ring(R)), R);
}

Element ring_zero(const Ring& R) { return parse_element("0", R); }
Element ring_one(const Ring& R) { return parse_element("1", R); }
Element ring_int(const Ring& R, int64_t n) { return parse_element(std::to_string(n), R); }

std::string element_str(const Element& e, const Ring& R) {
    Ring c = core_ring(R);
    if (c->kind == RingKind::FractionField) c = core_ring(c->base);
    std::string x = c->var.empty() ? "x" : c->var, y = c->var2.empty() ? "y" : c->var2;
    return element_str(e, x, y);
}

namespace {

bool member_core(const Element& e, const PrimeIdeal& p);

// Is the denominator-like element d outside the prime q (so a unit in R_q)?
bool outside_prime(const Element& d, const PrimeIdeal& q) { return !is_zero(d) && !member_core(d, q); }

} // namespace

bool in_ring(const Element& e, const Ring& R) {
    switch (R->kind) {
    case RingKind::Integers:
        if (std::holds_alternative<Integer>(e)) return true;
        if (auto* q = std::get_if<Rational>(&e)) return q->get_den() == 1;
        return false;
    case RingKind::Rationals:
    case RingKind::PrimeField:
    case RingKind::FractionField: return true;
    case RingKind::PolyRing:
        if (auto* f = std::get_if<FracFp>(&e)) return f->den().degree() == 0;
        if (auto* f = std::get_if<FracQ>(&e)) return f->den().degree() == 0;
        return true;
    case RingKind::BivariatePolyRing:
        if (auto* f = std::get_if<Frac2>(&e)) return f->den.total_degree() <= 0;
        return true;
    case RingKind::Localization: {
        const PrimeIdeal& q = *R->prime;
        Element f = to_fraction(e);
        if (auto* r = std::get_if<Rational>(&f)) return outside_prime(Integer(r->get_den()), q);
        if (auto* r = std::get_if<FracFp>(&f)) return outside_prime(r->den(), q);
        if (auto* r = std::get_if<FracQ>(&f)) return outside_prime(r->den(), q);
        if (auto* r = std::get_if<Frac2>(&f)) return outside_prime(r->den, q);
        return false;
    }
    case RingKind::TruncatedCompletion: return true;
    }
    return false;
}

bool is_unit_in(const Element& e, const Ring& R) {
    if (is_zero(e) || !in_ring(e, R)) return false;
    if (is_field(R)) return true;
    return in_ring(inverse(e), R);
}

// ---------------------------------------------------------------- primes

Prime zero_prime(const Ring& home) {
    auto p = std::make_shared<PrimeIdeal>();
    p->kind = PrimeIdeal::Kind::Zero;
    p->gen = ring_zero(home);
    p->home = home;
    return p;
}

namespace {

// Monic irreducibility spot-check by trial division over F_p, degree <= 3
// candidates exhaustively (bounded by 10^3 trial divisors).
bool poly_spot_irreducible_fp(const PolyFp& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    uint64_t p = f.unit().p;
    size_t tried = 0;
    for (int d = 1; d <= f.degree() / 2 && tried < 1000; ++d) {
        // enumerate monic polys of degree d
        uint64_t count = 1;
        for (int k = 0; k < d; ++k) count *= p;
        for (uint64_t code = 0; code < count && tried < 1000; ++code, ++tried) {
            std::vector<Fp> c;
            uint64_t t = code;
            for (int k = 0; k < d; ++k) {
                c.push_back(Fp(static_cast<int64_t>(t % p), p));
                t /= p;
            }
            c.push_back(Fp(1, p));
            PolyFp g(c, Fp(1, p));
            if ((f % g).is_zero()) return false;
        }
    }
    return true;
}

// Over Q: rational-root test on the monic clearing (spot check only).
bool poly_spot_irreducible_q(const PolyQ& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    // scale to integer coefficients and test candidate roots n/d, |n|,|d| small
    for (int n = -30; n <= 30; ++n)
        for (int d = 1; d <= 30; ++d) {
            if (f.eval(Rational(n, d)) == 0) return false;
        }
    return true;
}

} // namespace

Prime principal_prime(const Ring& home, const Element& gen0) {
    Element gen = gen0;
    if (is_zero(gen)) return zero_prime(home);
    if (!in_ring(gen, home)) fail(ErrorKind::Validation, "prime generator is not in " + ring_str(home));
    if (is_unit_in(gen, home)) fail(ErrorKind::Validation, "prime generator " + element_str(gen, home) + " is a unit");
    Ring c = core_ring(home);
    switch (family(home)) {
    case Family::Z: {
        Rational q = std::get<Rational>(to_fraction(gen));
        if (q.get_den() != 1) fail(ErrorKind::Validation, "prime generator must be an integer");
        Integer n = abs(Integer(q.get_num()));
        if (!passes_trial_division(n)) fail(ErrorKind::Validation, "generator " + n.get_str() + " is not irreducible (trial division)");
        gen = n;
        break;
    }
    case Family::PolyFp: {
        auto f = std::get<PolyFp>(demote(to_fraction(gen), c)).monic();
        if (!poly_spot_irreducible_fp(f)) fail(ErrorKind::Validation, "generator " + f.str(c->var) + " is reducible");
        gen = f;
        break;
    }
    case Family::PolyQ: {
        auto f = std::get<PolyQ>(demote(to_fraction(gen), c)).monic();
        if (!poly_spot_irreducible_q(f)) fail(ErrorKind::Validation, "generator " + f.str(c->var) + " is reducible");
        gen = f;
        break;
    }
    case Family::Bivariate: {
        Element g = demote(to_fraction(gen), c);
        auto* f = std::get_if<Poly2>(&g);
        if (!f || !f->is_monomial() || f->total_degree() != 1)
            unsupported("bivariate principal primes are limited to a single variable");
        gen = Poly2::monomial(f->terms().begin()->first.first, f->terms().begin()->first.second, f->modulus());
        break;
    }
    default: fail(ErrorKind::Validation, "fields have only the zero prime");
    }
    auto p = std::make_shared<PrimeIdeal>();
    p->kind = PrimeIdeal::Kind::Principal;
    p->gen = gen;
    p->home = home;
    return p;
}

Prime maximal_pair(const Ring& home) {
    if (family(home) != Family::Bivariate) unsupported("the maximal pair exists only in the bivariate ring");
    auto p = std::make_shared<PrimeIdeal>();
    p->kind = PrimeIdeal::Kind::MaximalPair;
    p->gen = ring_zero(home);
    p->home = home;
    return p;
}

Prime parse_prime(const std::string& text0, const Ring& home) {
    std::string text;
    for (char ch : text0)
        if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
        fail(ErrorKind::Parse, "prime must be written in parentheses: '" + text0 + "'");
    std::string inner = text.substr(1, text.size() - 2);
    // split at top-level commas
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : inner) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() == 2) {
        Ring c = core_ring(home);
        if (family(home) != Family::Bivariate ||
            !((parts[0] == c->var && parts[1] == c->var2) || (parts[0] == c->var2 && parts[1] == c->var)))
            unsupported("two-generator primes are limited to (x,y) in the bivariate ring");
        return maximal_pair(home);
    }
    if (parts.size() != 1) fail(ErrorKind::Parse, "bad prime '" + text0 + "'");
    Element g = parse_element(parts[0], home);
    if (is_zero(g)) return zero_prime(home);
    return principal_prime(home, g);
}

std::string prime_str(const PrimeIdeal& p) {
    switch (p.kind) {
    case PrimeIdeal::Kind::Zero: return "(0)";
    case PrimeIdeal::Kind::MaximalPair: {
        Ring c = core_ring(p.home);
        return "(" + c->var + "," + c->var2 + ")";
    }
    case PrimeIdeal::Kind::Principal: {
        std::string s = element_str(p.gen, p.home);
        std::string t;
        for (char ch : s)
            if (ch != ' ') t += ch;
        return "(" + t + ")";
    }
    }
    return "(?)";
}

bool same_prime(const PrimeIdeal& a, const PrimeIdeal& b) { return a.kind == b.kind && prime_str(a) == prime_str(b); }

int prime_valuation(const Element& e0, const PrimeIdeal& p) {
    if (p.kind != PrimeIdeal::Kind::Principal) unsupported("valuations need a principal prime");
    Element e = to_fraction(e0);
    if (is_zero(e)) return INT32_MAX;
    Element g = to_fraction(p.gen);
    if (auto* q = std::get_if<Rational>(&e)) return valuation(*q, Integer(std::get<Rational>(g).get_num()));
    if (auto* f = std::get_if<FracFp>(&e)) {
        if (auto* gf = std::get_if<FracFp>(&g)) return valuation(*f, gf->num());
    }
    if (auto* f = std::get_if<FracQ>(&e)) {
        if (auto* gf = std::get_if<FracQ>(&g)) return valuation(*f, gf->num());
    }
    if (auto* f = std::get_if<Frac2>(&e)) {
        auto* gp = std::get_if<Frac2>(&g);
        int var = gp->num.terms().begin()->first.first == 1 ? 0 : 1;
        auto mindeg = [var](const Poly2& a) {
            int m = INT32_MAX;
            for (auto& [mono, c] : a.terms()) m = std::min(m, var == 0 ? mono.first : mono.second);
            return m;
        };
        return mindeg(f->num) - mindeg(f->den);
    }
    unsupported("valuation: element and prime live in different rings");
}

namespace {

bool member_core(const Element& e, const PrimeIdeal& p) {
    switch (p.kind) {
    case PrimeIdeal::Kind::Zero: return is_zero(e);
    case PrimeIdeal::Kind::MaximalPair: {
        Element f = to_fraction(e);
        auto* r = std::get_if<Frac2>(&f);
        if (!r) fail(ErrorKind::UnsupportedRing, "maximal pair needs a bivariate element");
        if (r->den.constant_term() == 0)
            fail(ErrorKind::UnsupportedRing, "element is not in the local ring at (x,y)");
        return r->num.constant_term() == 0;
    }
    case PrimeIdeal::Kind::Principal:
        if (is_zero(e)) return true;
        return prime_valuation(e, p) >= 1;
    }
    return false;
}

} // namespace

bool is_in_prime(const Element& e, const PrimeIdeal& p) {
    if (!in_ring(e, p.home))
        fail(ErrorKind::UnsupportedRing, "element " + element_str(e, p.home) + " is not in " + ring_str(p.home));
    return member_core(e, p);
}

bool prime_contained(const PrimeIdeal& p, const PrimeIdeal& q) {
    switch (p.kind) {
    case PrimeIdeal::Kind::Zero: return true;
    case PrimeIdeal::Kind::MaximalPair: return q.kind == PrimeIdeal::Kind::MaximalPair;
    case PrimeIdeal::Kind::Principal: {
        if (q.kind == PrimeIdeal::Kind::Zero) return false;
        if (q.kind == PrimeIdeal::Kind::MaximalPair) {
            Element f = to_fraction(p.gen);
            return std::get<Frac2>(f).num.constant_term() == 0;
        }
        return is_in_prime(p.gen, q);
    }
    }
    return false;
}

Ring residue_field(const PrimeIdeal& p) {
    Ring home = p.home;
    Ring c = core_ring(home);
    if (p.kind == PrimeIdeal::Kind::Zero) return fraction_field(c);
    switch (family(home)) {
    case Family::Z: return prime_field(Integer(abs(Integer(std::get<Rational>(to_fraction(p.gen)).get_num()))).get_ui());
    case Family::PolyFp:
    case Family::PolyQ: {
        Element g = demote(to_fraction(p.gen), c);
        int deg = std::holds_alternative<PolyFp>(g) ? std::get<PolyFp>(g).degree() : std::get<PolyQ>(g).degree();
        if (deg != 1) unsupported("residue field of a degree-" + std::to_string(deg) + " prime is outside the ring tower");
        return c->base;
    }
    case Family::Bivariate: {
        if (p.kind == PrimeIdeal::Kind::MaximalPair) return prime_field(c->p);
        auto g = std::get<Poly2>(demote(to_fraction(p.gen), c));
        bool is_x = g.terms().begin()->first.first == 1;
        Ring k = prime_field(c->p);
        return fraction_field(poly_ring(k, is_x ? c->var2 : c->var));
    }
    default: return fraction_field(c);
    }
}

Ring localize(const Ring& R, const Prime& p) {
    if (!is_domain(R)) fail(ErrorKind::UnsupportedComposition, "localization of a non-domain");
    if (!same_ring(p->home, R) && !same_ring(p->home, core_ring(R)))
        fail(ErrorKind::PreconditionViolation, "prime " + prime_str(*p) + " is not declared in " + ring_str(R));
    if (R->kind == RingKind::Localization && !prime_contained(*p, *R->prime))
        fail(ErrorKind::UnsupportedComposition, "prime not contained in the localizing prime");
    if (p->kind == PrimeIdeal::Kind::Zero) return fraction_field(R);
    if (is_field(R)) fail(ErrorKind::UnsupportedComposition, "fields have no nonzero primes");
    RingDescriptor d = desc(RingKind::Localization);
    d.base = R->kind == RingKind::Localization ? R->base : R;
    d.prime = p;
    return make(d);
}

Ring complete_trunc(const Ring& R, const Prime& p, int N) {
    if (N < 1) fail(ErrorKind::Validation, "stage must be at least 1");
    if (p->kind == PrimeIdeal::Kind::Zero) return fraction_field(R);
    if (is_field(R)) fail(ErrorKind::UnsupportedComposition, "cannot complete a field at a nonzero prime");
    if (!same_ring(p->home, R) && !same_ring(p->home, core_ring(R)) &&
        !(R->kind == RingKind::Localization && same_ring(p->home, R->base)))
        fail(ErrorKind::PreconditionViolation, "prime " + prime_str(*p) + " is not declared in " + ring_str(R));
    if (R->kind == RingKind::Localization && !prime_contained(*p, *R->prime))
        fail(ErrorKind::UnsupportedComposition, "prime not contained in the localizing prime");
    if (family(R) == Family::Z) {
        Integer g = abs(Integer(std::get<Rational>(to_fraction(p->gen)).get_num()));
        ZpnRing probe(g.get_ui(), N);  // validates the 62-bit range
        (void)probe;
    }
    RingDescriptor d = desc(RingKind::TruncatedCompletion);
    d.base = R->kind == RingKind::Localization ? R->base : R;
    d.prime = p;
    d.stage = N;
    return make(d);
}

// ---------------------------------------------------------------- SNF

namespace {

template <class D>
ElementSnf snf_via(const Matrix<Element>& A, const std::function<D(const Element&)>& to, const std::function<Element(const D&)>& from,
                   const D& zero, const D& one) {
    Matrix<D> M(A.rows(), A.cols(), zero);
    for (size_t i = 0; i < A.rows(); ++i)
        for (size_t j = 0; j < A.cols(); ++j) M(i, j) = to(A(i, j));
    auto s = smith_normal_form(M, zero, one);
    auto conv = [&](const Matrix<D>& X) {
        Matrix<Element> Y(X.rows(), X.cols(), from(zero));
        for (size_t i = 0; i < X.rows(); ++i)
            for (size_t j = 0; j < X.cols(); ++j) Y(i, j) = from(X(i, j));
        return Y;
    };
    ElementSnf r;
    for (auto& d : s.invariants) r.invariants.push_back(from(d));
    r.U = conv(s.U);
    r.Uinv = conv(s.Uinv);
    r.V = conv(s.V);
    r.rank = s.rank;
    return r;
}

} // namespace

ElementSnf smith_normal_form(const Matrix<Element>& A0, const Ring& R) {
    Ring c = core_ring(R);
    Matrix<Element> A = A0;
    for (size_t i = 0; i < A.rows(); ++i)
        for (size_t j = 0; j < A.cols(); ++j)
            if (!in_ring(A(i, j), R))
                fail(ErrorKind::NonPidBackend, "entry " + element_str(A(i, j), R) + " is not in " + ring_str(R));
    // clear unit denominators column by column (localizations)
    std::vector<Element> colscale(A.cols(), ring_one(c));
    if (R->kind == RingKind::Localization) {
        for (size_t j = 0; j < A.cols(); ++j) {
            Element l = ring_one(c);
            for (size_t i = 0; i < A.rows(); ++i) {
                Element f = to_fraction(A(i, j));
                Element den = std::visit(
                    [&](const auto& x) -> Element {
                        using T = std::decay_t<decltype(x)>;
                        if constexpr (std::is_same_v<T, Rational>) return Integer(x.get_den());
                        else if constexpr (std::is_same_v<T, FracFp> || std::is_same_v<T, FracQ>) return x.den();
                        else return one_like(x);
                    },
                    f);
                l = l * den;
            }
            colscale[j] = l;
            for (size_t i = 0; i < A.rows(); ++i) A(i, j) = demote(to_fraction(A(i, j) * l), c);
        }
    }
    ElementSnf r;
    switch (family(R)) {
    case Family::Z:
        r = snf_via<Integer>(
            A, [](const Element& e) { return Integer(std::get<Rational>(to_fraction(e)).get_num()); },
            [](const Integer& x) -> Element { return x; }, Integer(0), Integer(1));
        break;
    case Family::PolyFp: {
        Fp u(1, c->base->p);
        r = snf_via<PolyFp>(
            A, [](const Element& e) { return std::get<FracFp>(to_fraction(e)).num(); },
            [](const PolyFp& x) -> Element { return x; }, PolyFp(u), PolyFp::constant(u));
        break;
    }
    case Family::PolyQ:
        r = snf_via<PolyQ>(
            A, [](const Element& e) { return std::get<FracQ>(to_fraction(e)).num(); },
            [](const PolyQ& x) -> Element { return x; }, PolyQ(Rational(1)), PolyQ::constant(Rational(1)));
        break;
    case Family::FieldQ:
        r = snf_via<PolyQ>(
            A, [](const Element& e) { return PolyQ::constant(std::get<Rational>(to_fraction(e))); },
            [](const PolyQ& x) -> Element { return x.coeff(0); }, PolyQ(Rational(1)), PolyQ::constant(Rational(1)));
        break;
    case Family::FieldFp: {
        Fp u(1, c->p);
        r = snf_via<PolyFp>(
            A, [](const Element& e) { return PolyFp::constant(std::get<Fp>(e)); },
            [](const PolyFp& x) -> Element { return x.coeff(0); }, PolyFp(u), PolyFp::constant(u));
        break;
    }
    case Family::Bivariate: fail(ErrorKind::NonPidBackend, ring_str(R) + " is not a principal ideal domain");
    }
    if (R->kind == RingKind::Localization) {
        // V absorbs the column scaling; invariants become prime powers.
        for (size_t j = 0; j < r.V.rows(); ++j)
            for (size_t k = 0; k < r.V.cols(); ++k) r.V(j, k) = colscale[j] * r.V(j, k);
        const PrimeIdeal& q = *R->prime;
        for (size_t k = 0; k < r.invariants.size(); ++k) {
            Element d = r.invariants[k];
            if (is_zero(d)) continue;
            int v = prime_valuation(d, q);
            Element pk = ring_one(c);
            for (int t = 0; t < v; ++t) pk = pk * q.gen;
            Element u = d / pk;  // unit of R
            r.invariants[k] = pk;
            for (size_t j = 0; j < r.U.cols(); ++j) r.U(k, j) = r.U(k, j) / u;
            for (size_t i = 0; i < r.Uinv.rows(); ++i) r.Uinv(i, k) = r.Uinv(i, k) * u;
        }
    }
    return r;
}

} // namespace cosupp

namespace cosupp {

namespace {

struct RingParser {
    std::string s;
    size_t i = 0;

    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorKind::Parse, "ring '" + s + "' at offset " + std::to_string(i) + ": " + what);
    }
    bool eat(const std::string& t) {
        if (s.compare(i, t.size(), t) == 0) {
            i += t.size();
            return true;
        }
        return false;
    }
    void expect(const std::string& t) {
        if (!eat(t)) error("expected '" + t + "'");
    }
    std::string ident() {
        size_t j = i;
        while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
        if (i == j) error("expected a variable name");
        return s.substr(j, i - j);
    }
    uint64_t number() {
        size_t j = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == j) error("expected a number");
        return std::stoull(s.substr(j, i - j));
    }
    // balanced "( ... )" starting at i
    std::string paren() {
        if (i >= s.size() || s[i] != '(') error("expected '('");
        size_t j = i;
        int depth = 0;
        for (; i < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            if (s[i] == ')' && --depth == 0) {
                ++i;
                return s.substr(j, i - j);
            }
        }
        error("unbalanced parentheses");
    }
    Ring atom() {
        if (eat("Frac(")) {
            Ring r = ring();
            expect(")");
            return fraction_field(r);
        }
        if (eat("Trunc(")) {
            Ring r = ring();
            expect(",");
            Prime p = parse_prime(paren(), r);
            expect(",");
            int n = static_cast<int>(number());
            expect(")");
            return complete_trunc(r, p, n);
        }
        if (eat("Z")) return integers();
        if (eat("Q")) return rationals();
        if (eat("F_")) {
            uint64_t p = number();
            if (eat("[")) {
                std::string x = ident();
                if (eat(",")) {
                    std::string y = ident();
                    expect("]");
                    return bivariate(p, x, y);
                }
                expect("]");
                return poly_ring(prime_field(p), x);
            }
            return prime_field(p);
        }
        error("unknown ring");
    }
    Ring ring() {
        Ring r = atom();
        for (;;) {
            if (i < s.size() && s[i] == '[') {
                ++i;
                std::string x = ident();
                expect("]");
                r = poly_ring(r, x);
            } else if (eat("_")) {
                r = localize(r, parse_prime(paren(), r));
            } else {
                return r;
            }
        }
    }
};

} // namespace

Ring parse_ring(const std::string& text) {
    RingParser P;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) P.s += c;
    Ring r = P.ring();
    if (P.i != P.s.size()) P.error("trailing characters");
    return r;
}

} // namespace cosupp
