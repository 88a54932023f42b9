#pragma once

#include <map>
#include <string>
#include <vector>

#include "cosupp/homology/complex.hpp"

namespace cosupp {

// Windowed cohomology of a complex at one maximal prime.
//   raw    : invariant lengths (exponents of pi) at (a, b)
//   inner  : image of H(sub-window) -> H(quotient window) at (a, b, g)
//   inner2 : the same at (a+2, b+2, g)
// For the bivariate local ring every summand is a copy of the residue
// field, so the lists hold 1's and their length is the dimension.
struct LocalResult {
    int pi = -1;
    std::string prime;
    bool monomial = false;
    std::map<int, std::vector<int>> raw, inner, inner2;
    std::map<int, std::string> status;  // zero | nonzero | inconclusive
};

struct GenericResult {
    bool checked = false;
    std::string note;
    std::map<int, long> ranks;
};

// Maximal nonzero primes of the fragment at which windows are evaluated.
std::vector<int> evaluation_primes(const SpecFragment& F);

LocalResult evaluate_at(const Complex& X, int pi, const Window& w);
GenericResult evaluate_generic(const Complex& X);

std::string status_of(const std::vector<int>& inner, const std::vector<int>& inner2);

} // namespace cosupp
