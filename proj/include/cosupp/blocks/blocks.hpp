#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cosupp/spec/fragment.hpp"

namespace cosupp {

// Fragment indices p_0 > p_1 > ... > p_m (strictly decreasing).
using Chain = std::vector<int>;

// Multiplicative set: powers of the listed elements, and optionally the
// complement of a prime.
struct Localizer {
    std::vector<Element> inverted;
    Prime complement;  // may be null
};

struct Base {
    enum class Kind { Free, Localized, Block };
    Kind kind = Kind::Free;
    Localizer S;  // Localized
    Chain chain;  // Block

    static Base free() { return {}; }
    static Base localized(Localizer S);
    static Base block(Chain c);
    int last() const { return chain.back(); }
};

// Base tensored with the cyclic module R/(ann); ann = 0 means free of rank 1.
struct Atom {
    Base base;
    Element ann;
};

using Term = std::vector<Atom>;

bool same_base(const Base& a, const Base& b);
bool same_atom(const Atom& a, const Atom& b);
std::string base_str(const SpecFragment& F, const Base& b);
std::string atom_str(const SpecFragment& F, const Atom& a);
std::string term_str(const SpecFragment& F, const Term& t);

// q in U_S, i.e. S meets q trivially.
bool in_US(const Localizer& S, const PrimeIdeal& q);
Localizer powers_of(std::vector<Element> gens);
Localizer complement_of(const Prime& p);

// The rewrite rule for lambda^{q} on a single base/atom; nullopt is zero.
std::optional<Base> apply_lambda_point(const SpecFragment& F, const Base& B, int q);
std::optional<Atom> apply_lambda_point(const SpecFragment& F, const Atom& A, int q);

// Whether a canonical (unit) map base s -> base t exists.
bool canonical_map_exists(const SpecFragment& F, const Base& s, const Base& t);

// s (x) t; fails with unsupported-shape for two blocks.
Base tensor_base(const SpecFragment& F, const Base& s, const Base& t);
std::optional<Atom> tensor_atom(const SpecFragment& F, const Atom& s, const Atom& t);

struct Rank {
    bool infinite = false;
    long value = 0;
    std::string str() const { return infinite ? "infinite" : std::to_string(value); }
};
// dim_{k(p)} of (base^r) (x) k(p).
Rank enochs_rank(const SpecFragment& F, const Base& B, long r, int p);
// Rank over the fraction field (p = (0)); infinite for completions.
Rank generic_rank(const SpecFragment& F, const Atom& a);

// ---------------------------------------------------------------- f.g. modules

struct FgModule {
    size_t gens = 0;
    Matrix<Element> rel;  // gens x (#relations), columns are relations

    static FgModule free(const Ring& R, size_t n);
    static FgModule cyclic(const Ring& R, const Element& d);
    static FgModule presented(size_t gens, Matrix<Element> rel) { return {gens, std::move(rel)}; }
};

// Cyclic decomposition: new coordinates = to * old, old images of new
// generators = columns of from. Unit annihilators are dropped.
struct FgNormal {
    std::vector<Element> ann;
    Matrix<Element> to, from;
};
FgNormal normalize(const FgModule& M, const Ring& R);

// Atoms of base (x) M and the normalization used.
Term twist(const Base& b, const FgNormal& n);

Element ring_gcd(const Element& a, const Element& b, const Ring& R);
// c lies in d*B where B is the ring underlying the atom.
bool divisible_in_atom(const SpecFragment& F, const Element& c, const Atom& target);

// ---------------------------------------------------------------- filters

// Keeps blocks whose last prime lies in U_S.
Term hom_from_localization(const SpecFragment& F, const Localizer& S, const Term& P);
// Keeps blocks whose last prime contains the fragment prime a.
Term completion_filter(const SpecFragment& F, int a, const Term& P);
Term tensor_fg(const SpecFragment& F, const Term& P, const FgModule& M);

// ---------------------------------------------------------------- windows

struct Window {
    int a = 4, b = 8, g = 2;
    std::string str() const;
};
void validate_window(const Window& w, bool certify, int max_total = 40);

// Valuation window [lo, hi) of one atom at a maximal principal prime.
struct Piece {
    enum class Kind { Lattice, Divisible, Torsion };
    Kind kind;
    int lo, hi;
    int len() const { return hi - lo; }
};
std::optional<Piece> window_piece(const SpecFragment& F, const Atom& A, int pi, int a, int b);

// Monomial box for the bivariate local ring: exponents >= lx, ly, total < b.
struct MonoBox {
    int lx = 0, ly = 0, b = 1;
};
MonoBox mono_box(const SpecFragment& F, const Atom& A, int a, int b);

// Invariant lengths (exponents of pi) of an evaluated term.
std::vector<int> evaluate_block(const SpecFragment& F, const Term& P, int pi, const Window& w);

// Friendly name like Z_2 or Q_5 when one exists.
std::string block_nickname(const SpecFragment& F, const Base& b);

} // namespace cosupp
