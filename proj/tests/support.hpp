#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "cosupp/cli/commands.hpp"

namespace tsupport {

using namespace cosupp;

inline FragPtr z_fragment(std::vector<int> primes, bool with_zero = true) {
    Ring Z = integers();
    std::vector<Prime> v;
    if (with_zero) v.push_back(zero_prime(Z));
    for (int p : primes) v.push_back(principal_prime(Z, ring_int(Z, p)));
    return std::make_shared<const SpecFragment>(Z, v);
}

// Z_(p) with fragment {(0), (p)}
inline FragPtr zp_fragment(int p) {
    Ring Z = integers();
    Ring R = localize(Z, principal_prime(Z, ring_int(Z, p)));
    return std::make_shared<const SpecFragment>(R, std::vector<Prime>{zero_prime(R), principal_prime(R, ring_int(R, p))});
}

inline FragPtr fragment_of(const std::string& ring, const std::vector<std::string>& primes) {
    Ring R = parse_ring(ring);
    std::vector<Prime> v;
    for (const auto& p : primes) v.push_back(parse_prime(p, R));
    return std::make_shared<const SpecFragment>(R, v);
}

inline Atom free_atom(const SpecFragment& F) { return {Base::free(), ring_zero(F.home())}; }
inline Atom block(const SpecFragment& F, Chain c) { return {Base::block(std::move(c)), ring_zero(F.home())}; }

inline Complex unit_complex(FragPtr F) { return concentrated(F, {free_atom(*F)}); }

inline const std::vector<Window>& two_windows() {
    static const std::vector<Window> ws{{4, 8, 2}, {6, 12, 2}};
    return ws;
}

inline std::vector<int> raw_at(const Complex& X, int pi, const Window& w, int deg) {
    LocalResult r = evaluate_at(X, pi, w);
    auto it = r.raw.find(deg);
    std::vector<int> v = it == r.raw.end() ? std::vector<int>{} : it->second;
    std::sort(v.begin(), v.end());
    return v;
}

// ------------------------------------------------------------ oracles

// Determinant by cofactor expansion; only for small matrices.
inline mpz_class det(const std::vector<std::vector<mpz_class>>& A) {
    size_t n = A.size();
    if (n == 0) return 1;
    if (n == 1) return A[0][0];
    mpz_class s = 0;
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<mpz_class>> m;
        for (size_t i = 1; i < n; ++i) {
            std::vector<mpz_class> row;
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(A[i][k]);
            m.push_back(row);
        }
        mpz_class t = A[0][j] * det(m);
        s += (j % 2 ? -t : t);
    }
    return s;
}

inline void subsets(size_t n, size_t k, size_t start, std::vector<size_t>& cur, std::vector<std::vector<size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// Invariant factors over Z from determinantal divisors d_k = gcd of k-minors.
inline std::vector<mpz_class> invariant_factors(const std::vector<std::vector<mpz_class>>& A) {
    size_t m = A.size(), n = m ? A[0].size() : 0;
    std::vector<mpz_class> d{1}, out;
    for (size_t k = 1; k <= std::min(m, n); ++k) {
        std::vector<std::vector<size_t>> rs, cs;
        std::vector<size_t> cur;
        subsets(m, k, 0, cur, rs);
        subsets(n, k, 0, cur, cs);
        mpz_class g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                std::vector<std::vector<mpz_class>> minor;
                for (size_t i : r) {
                    std::vector<mpz_class> row;
                    for (size_t j : c) row.push_back(A[i][j]);
                    minor.push_back(row);
                }
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), mpz_class(det(minor)).get_mpz_t());
            }
        d.push_back(g);
        out.push_back(d[k - 1] == 0 ? mpz_class(0) : mpz_class(g / d[k - 1]));
    }
    return out;
}

inline int vp(mpz_class n, long p) {
    if (n == 0) return 1 << 20;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// Lengths of the cyclic summands of coker(A) (x) Z/p^N, A with `gens` rows.
inline std::vector<int> coker_lengths_mod(const std::vector<std::vector<mpz_class>>& A, size_t gens, long p, int N) {
    std::vector<int> out;
    std::vector<mpz_class> inv = A.empty() || A[0].empty() ? std::vector<mpz_class>{} : invariant_factors(A);
    for (size_t i = 0; i < gens; ++i) {
        int v = i < inv.size() ? std::min(vp(inv[i], p), N) : N;
        if (v > 0) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline Mat to_mat(const std::vector<std::vector<mpz_class>>& A, size_t rows, size_t cols, const Ring& R) {
    Mat M(rows, cols, ring_zero(R));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) M(i, j) = Element(Integer(A[i][j]));
    return M;
}

} // namespace tsupport
