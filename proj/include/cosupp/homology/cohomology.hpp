#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cosupp/homology/evaluate.hpp"

namespace cosupp {

struct CohomologyTable {
    Window w;
    std::vector<LocalResult> local;  // one per evaluation prime
    GenericResult generic;

    // zero | nonzero | inconclusive, combined over every degree and prime
    std::string overall() const;
    // first (degree, prime) whose status is not zero, as text; empty if none
    std::string first_nonzero() const;
    std::string str() const;
};

CohomologyTable cohomology(const Complex& X, const Window& w);
// Only at the listed fragment indices (which must be evaluation primes).
CohomologyTable cohomology_at(const Complex& X, const Window& w, const std::vector<int>& primes);

struct Certificate {
    std::string status;  // certified | failed | inconclusive
    std::string detail;
    std::vector<CohomologyTable> tables;
    bool certified() const { return status == "certified"; }
};

// Vanishing of windowed cohomology at every window, every evaluation prime,
// and (when it is checkable) over the fraction field.
Certificate certify_acyclic(const Complex& X, const std::vector<Window>& ws);
Certificate certify_acyclic_at(const Complex& X, const std::vector<Window>& ws, const std::vector<int>& primes);

// Nonvanishing counterpart: certified when some degree is nonzero at both
// window sizes (or has positive generic rank), failed when everything is zero.
Certificate certify_nonzero(const Complex& X, const std::vector<Window>& ws);

// A -> B -> C. The comparison psi: cone(f) -> C is certified to be a
// windowed quasi-isomorphism; when psi is absent it is (0, g), which needs
// g f = 0 on the nose.
struct Triangle {
    Complex A, B, C;
    ChainMap f, g;
    std::optional<ChainMap> psi;
};
Complex triangle_comparison_cone(const Triangle& T);
Certificate verify_triangle(const Triangle& T, const std::vector<Window>& ws);

// A -> B -> cone(f), compared through the identity, and its two rotations
//   B -> cone(f) -> A[1]      (inclusion, projection)
//   cone(f) -> A[1] -> B[1]   (projection, -f[1]), compared through (0, -1, -f)
std::vector<Triangle> standard_rotations(const ChainMap& f, const Complex& A, const Complex& B);

} // namespace cosupp
