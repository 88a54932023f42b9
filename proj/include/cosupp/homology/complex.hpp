#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cosupp/blocks/blocks.hpp"

namespace cosupp {

using Mat = Matrix<Element>;
using FragPtr = std::shared_ptr<const SpecFragment>;

inline constexpr int kMaxDegreeSpan = 64;

// Bounded cochain complex of atom sums. d[k] maps degree lo+k to lo+k+1;
// entries are fraction-field coefficients of the canonical base maps.
struct Complex {
    FragPtr F;
    int lo = 0;
    std::vector<Term> terms;
    std::vector<Mat> d;

    int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
    const Term& term(int i) const;
    Mat diff(int i) const;
    Element zero() const { return ring_zero(F->home()); }
    bool is_zero_object() const;
    std::string str() const;
};

// Missing differentials are filled with zero matrices; shapes are checked.
Complex make_complex(FragPtr F, int lo, std::vector<Term> terms, std::vector<Mat> d = {});
Complex concentrated(FragPtr F, Term t, int degree = 0);
Complex zero_complex(FragPtr F);
// Complex of f.g. modules given by presentations, differentials on the
// given generators; terms are brought to cyclic form.
Complex fg_complex(FragPtr F, int lo, const std::vector<FgModule>& mods, const std::vector<Mat>& d);

Mat zero_mat(const Complex& X, size_t r, size_t c);
Mat scaled(const Mat& M, const Element& c);

// f^i : X^i -> Y^i
struct ChainMap {
    int lo = 0;
    std::vector<Mat> f;
    Mat at(int i, const Complex& X, const Complex& Y) const;
};

ChainMap identity_map(const Complex& X);
ChainMap zero_map(const Complex& X, const Complex& Y);
ChainMap compose(const ChainMap& g, const ChainMap& f, const Complex& X, const Complex& Y, const Complex& Z);
ChainMap scaled(const ChainMap& f, const Element& c, const Complex& X, const Complex& Y);
ChainMap add(const ChainMap& f, const ChainMap& g, const Complex& X, const Complex& Y);
// (f1, f2) : X -> Y1 (+) Y2
ChainMap pair_map(const ChainMap& f1, const ChainMap& f2, const Complex& X, const Complex& Y1, const Complex& Y2);
// [g1 g2] : X1 (+) X2 -> Y
ChainMap copair_map(const ChainMap& g1, const ChainMap& g2, const Complex& X1, const Complex& X2, const Complex& Y);

Complex shift(const Complex& X, int k);
Complex direct_sum(const Complex& X, const Complex& Y);
// cone^i = X^{i+1} (+) Y^i, d = [[-d_X, 0], [f, d_Y]]
Complex cone(const ChainMap& f, const Complex& X, const Complex& Y);

enum class Side { AtMost, Above };
Complex truncate_stupid(const Complex& X, int n, Side side);
// Needs terms with free base (complexes of f.g. modules).
Complex truncate_smart(const Complex& X, int n, Side side);

// Commuting squares; the sign (-1)^p is applied to dv at totalization.
struct DoubleComplex {
    FragPtr F;
    int p0 = 0, q0 = 0;
    std::vector<std::vector<Term>> terms;  // [p][q]
    std::vector<std::vector<Mat>> dh, dv;  // (p,q)->(p+1,q) and (p,q)->(p,q+1)

    int np() const { return static_cast<int>(terms.size()); }
    int nq() const { return terms.empty() ? 0 : static_cast<int>(terms[0].size()); }
};
Complex totalize(const DoubleComplex& D);
DoubleComplex transpose(const DoubleComplex& D);
// d = d_X (x) 1 + (-1)^i 1 (x) d_Y
Complex tensor_complex(const Complex& X, const Complex& Y);

// Symbolic checks; return an empty string on success, else a description.
std::string check_d2(const Complex& X);
std::string check_chain_map(const ChainMap& f, const Complex& X, const Complex& Y);
std::string check_canonical(const Complex& X);
std::string check_double(const DoubleComplex& D);

} // namespace cosupp
