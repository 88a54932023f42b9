#pragma once

#include <string>
#include <vector>

#include "cosupp/homology/cohomology.hpp"

namespace cosupp {

// One summand of tot L X: the word lambda^{q_m} ... lambda^{q_0} applied to
// atom xatom of X^xdeg, with q_k chosen from slice seq[k] (q_0 applied first).
struct CechLabel {
    std::vector<int> seq;
    std::vector<int> choice;
    int xdeg = 0;
    size_t xatom = 0;
    int column() const { return static_cast<int>(seq.size()) - 1; }
};

struct CechComplex {
    Slices slices;  // non-empty slices only
    Complex input;
    Complex tot;
    ChainMap ell;  // input -> tot
    std::vector<std::vector<CechLabel>> labels;  // per tot degree, aligned with tot terms
    const std::vector<CechLabel>& labels_at(int deg) const;
};

// prod_{q in Wi} lambda^{q} applied atomwise; zero atoms are pruned.
Term lambda_bar_slice(const SpecFragment& F, const Subset& Wi, const Term& input);

CechComplex cech_apply_complex(const Complex& X, const Slices& S);
CechComplex cech_apply_module(FragPtr F, const FgModule& M, const Slices& S);
// Slices from system_of_slices(W); W empty gives the zero complex.
CechComplex lambda_w(const Complex& X, const Subset& W);
// Componentwise image of f: X -> Y; CX and CY must be built on the same slices.
ChainMap cech_apply_map(const ChainMap& f, const CechComplex& CX, const CechComplex& CY);

// lambda^W X -> lambda^{W1}Y (+) lambda^{W0}Y -> lambda^{W1}lambda^{W0}Y with Y = lambda^W X.
struct MvTriangle {
    Triangle T;
    int condition = 0;  // 1: W0 specialization-closed in W, 2: W1 generalization-closed in W
    Subset W, W0, W1;
};
MvTriangle mv_triangle(const Complex& X, const Subset& W0, const Subset& W1);

// X -> X_x (+) lambda^{V(x)}X -> (lambda^{V(x)}X)_x, with V(x) taken inside the fragment.
Triangle adelic_triangle(const Complex& X, const Element& x);

// X (x) S^{-1}R together with the natural map; atoms killed by S are dropped.
struct LocalizedComplex {
    Complex C;
    ChainMap eta;
    std::vector<std::vector<size_t>> kept;  // per degree: source atom of each surviving atom
};
LocalizedComplex localize_complex(const Complex& X, const Localizer& S);
ChainMap localize_map(const ChainMap& f, const LocalizedComplex& LX, const LocalizedComplex& LY);

// Block form of an atom when it has one (fraction-field localizations become T[(0)]).
std::optional<Atom> as_block_atom(const SpecFragment& F, const Atom& a);

struct GammaSplit {
    Complex gamma;  // atoms with last prime outside V (a subcomplex)
    Complex lambda;  // atoms with last prime in V (the quotient)
    ChainMap inc, proj;
};
GammaSplit gamma_split(const Complex& X, const Subset& V);

struct Membership {
    bool member = false;
    std::string status;  // certified | inconclusive
    Certificate cert;
};
Membership support_membership(const Complex& X, int p, const std::vector<Window>& ws);
Membership cosupport_membership(const Complex& X, int p, const std::vector<Window>& ws);

// X tensored with the classical Cech complex on gens.
Complex element_cech_complex(FragPtr F, const std::vector<Element>& gens);
Complex local_cohomology_oracle(const std::vector<Element>& gens, const Complex& X);

struct Resolution {
    CechComplex cech;
    Certificate cert;  // acyclicity of cone(ell)
};
Resolution pure_injective_resolution(const Complex& N, const Subset& W, const std::vector<Window>& ws);

// Hom(S^{-1}R, X) for a complex of block products: the blocks whose last prime lies in U_S.
Complex hom_from_localization_complex(const Complex& X, const Localizer& S);

// Exhaustive check that the insertion differential squares to zero for
// n + 1 slices with `width` primes each; empty string on success.
std::string check_insertion_identities(int n, int width);

} // namespace cosupp
