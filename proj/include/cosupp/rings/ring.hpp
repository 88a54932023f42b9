#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cosupp/rings/element.hpp"
#include "cosupp/rings/snf.hpp"

namespace cosupp {

enum class RingKind {
    Integers,
    PrimeField,
    Rationals,
    PolyRing,
    BivariatePolyRing,
    FractionField,
    Localization,
    TruncatedCompletion,
};

struct RingDescriptor;
struct PrimeIdeal;
using Ring = std::shared_ptr<const RingDescriptor>;
using Prime = std::shared_ptr<const PrimeIdeal>;

struct RingDescriptor {
    RingKind kind = RingKind::Integers;
    uint64_t p = 0;          // PrimeField, BivariatePolyRing
    std::string var, var2;   // PolyRing, BivariatePolyRing
    Ring base;               // PolyRing: coefficient field; other wrappers: the domain
    Prime prime;             // Localization, TruncatedCompletion
    int stage = 0;           // TruncatedCompletion
};

struct PrimeIdeal {
    enum class Kind { Zero, Principal, MaximalPair };
    Kind kind = Kind::Zero;
    Element gen;  // Principal only
    Ring home;
};

// Which arithmetic engine a domain uses once localizations are stripped.
enum class Family { Z, PolyFp, PolyQ, Bivariate, FieldQ, FieldFp };

Ring integers();
Ring rationals();
Ring prime_field(uint64_t p);
Ring poly_ring(const Ring& field, const std::string& var = "x");
Ring bivariate(uint64_t p, const std::string& x = "x", const std::string& y = "y");
Ring fraction_field(const Ring& domain);
Ring localize(const Ring& R, const Prime& p);
Ring complete_trunc(const Ring& R, const Prime& p, int N);

bool is_field(const Ring& R);
bool is_domain(const Ring& R);
// Underlying global domain (localizations removed).
Ring core_ring(const Ring& R);
Family family(const Ring& R);
uint64_t characteristic(const Ring& R);
std::string ring_str(const Ring& R);
// Inverse of ring_str: Z, Q, F_p, K[x], F_p[x,y], Frac(R), R_(p), Trunc(R, (p), N).
Ring parse_ring(const std::string& text);
// Carrier of a truncated completion, e.g. "Z/343".
std::string carrier_str(const Ring& R);
bool same_ring(const Ring& a, const Ring& b);

Element ring_zero(const Ring& R);
Element ring_one(const Ring& R);
Element ring_int(const Ring& R, int64_t n);
// Parses an element of R (or of its fraction field) from text.
Element parse_element(const std::string& text, const Ring& R);
std::string element_str(const Element& e, const Ring& R);
// True iff e lies in R itself rather than only in its fraction field.
bool in_ring(const Element& e, const Ring& R);
bool is_unit_in(const Element& e, const Ring& R);

Prime zero_prime(const Ring& home);
Prime principal_prime(const Ring& home, const Element& gen);
Prime maximal_pair(const Ring& home);
// Parses "(0)", "(5)", "(x^2+1)", "(x,y)".
Prime parse_prime(const std::string& text, const Ring& home);
std::string prime_str(const PrimeIdeal& p);
bool same_prime(const PrimeIdeal& a, const PrimeIdeal& b);

bool is_in_prime(const Element& e, const PrimeIdeal& p);
// p subset of q, computed generator-wise.
bool prime_contained(const PrimeIdeal& p, const PrimeIdeal& q);
Ring residue_field(const PrimeIdeal& p);
// pi-adic valuation of a nonzero fraction-field element at a principal prime.
int prime_valuation(const Element& e, const PrimeIdeal& p);

// Smith normal form over the PID underlying R, entries given as Elements of
// R (denominators that are units of R are cleared column-wise first).
struct ElementSnf {
    std::vector<Element> invariants;  // min(rows, cols) entries
    Matrix<Element> U, Uinv, V;
    size_t rank = 0;
};
ElementSnf smith_normal_form(const Matrix<Element>& A, const Ring& R);

} // namespace cosupp
