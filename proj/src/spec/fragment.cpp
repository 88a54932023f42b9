#include "cosupp/spec/fragment.hpp"

#include <algorithm>
#include <functional>

namespace cosupp {

SpecFragment::SpecFragment(Ring home, std::vector<Prime> primes) : home_(std::move(home)), primes_(std::move(primes)) {
    const size_t n = primes_.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < i; ++j)
            if (same_prime(*primes_[i], *primes_[j]))
                fail(ErrorKind::Validation, "prime " + prime_str(*primes_[i]) + " listed twice in the fragment");
    le_.assign(n, std::vector<bool>(n, false));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) le_[i][j] = (i == j) || prime_contained(*primes_[i], *primes_[j]);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i != j && le_[i][j] && le_[j][i])
                fail(ErrorKind::Validation, "containment is not antisymmetric for " + prime_str(*primes_[i]) + " and " +
                                                prime_str(*primes_[j]) + " (are both generators really irreducible?)");
            for (size_t k = 0; k < n; ++k)
                if (le_[i][j] && le_[j][k] && !le_[i][k])
                    fail(ErrorKind::Validation, "containment is not transitive at " + prime_str(*primes_[j]));
        }
    int z = zero_index();
    if (z >= 0)
        for (size_t j = 0; j < n; ++j)
            if (!le_[static_cast<size_t>(z)][j]) fail(ErrorKind::Validation, "(0) is not the minimum of the fragment");
}

int SpecFragment::index_of(const PrimeIdeal& p) const {
    for (int i = 0; i < size(); ++i)
        if (same_prime(prime(i), p)) return i;
    return -1;
}

int SpecFragment::index_of(const std::string& text) const { return index_of(*parse_prime(text, home_)); }

Subset SpecFragment::all() const {
    Subset s;
    for (int i = 0; i < size(); ++i) s.push_back(i);
    return s;
}

bool SpecFragment::is_local() const { return max_w(*this, all()).size() == 1; }

int SpecFragment::zero_index() const {
    for (int i = 0; i < size(); ++i)
        if (prime(i).kind == PrimeIdeal::Kind::Zero) return i;
    return -1;
}

Subset make_subset(std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
}

Subset subset_union(const Subset& a, const Subset& b) {
    Subset r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}
Subset subset_intersection(const Subset& a, const Subset& b) {
    Subset r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}
Subset subset_difference(const Subset& a, const Subset& b) {
    Subset r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}
bool subset_contains(const Subset& a, int i) { return std::binary_search(a.begin(), a.end(), i); }
bool subset_includes(const Subset& big, const Subset& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::string subset_str(const SpecFragment& F, const Subset& W) {
    std::string s = "{";
    for (size_t k = 0; k < W.size(); ++k) {
        if (k) s += ",";
        s += F.name(W[k]);
    }
    return s + "}";
}

Subset specialization_of(const SpecFragment& F, int p) {
    Subset s;
    for (int q = 0; q < F.size(); ++q)
        if (F.le(p, q)) s.push_back(q);
    return s;
}

Subset generalization_of(const SpecFragment& F, int p) {
    Subset s;
    for (int q = 0; q < F.size(); ++q)
        if (F.le(q, p)) s.push_back(q);
    return s;
}

Subset specialization_closure_in(const SpecFragment& F, const Subset& W0, const Subset& W) {
    Subset r;
    for (int q : W)
        for (int p : W0)
            if (F.le(p, q)) {
                r.push_back(q);
                break;
            }
    return r;
}

Subset generalization_closure_in(const SpecFragment& F, const Subset& W1, const Subset& W) {
    Subset r;
    for (int q : W)
        for (int p : W1)
            if (F.le(q, p)) {
                r.push_back(q);
                break;
            }
    return r;
}

bool is_specialization_closed_in(const SpecFragment& F, const Subset& W0, const Subset& W) {
    return specialization_closure_in(F, W0, W) == W0;
}
bool is_generalization_closed_in(const SpecFragment& F, const Subset& W1, const Subset& W) {
    return generalization_closure_in(F, W1, W) == W1;
}

int dim_w(const SpecFragment& F, const Subset& W) {
    if (W.empty()) return -1;
    // longest chain by memoized DFS over the strict order restricted to W
    std::vector<int> memo(static_cast<size_t>(F.size()), -1);
    std::function<int(int)> up = [&](int p) {
        int& m = memo[static_cast<size_t>(p)];
        if (m >= 0) return m;
        int best = 0;
        for (int q : W)
            if (F.lt(p, q)) best = std::max(best, 1 + up(q));
        return m = best;
    };
    int d = 0;
    for (int p : W) d = std::max(d, up(p));
    return d;
}

Subset max_w(const SpecFragment& F, const Subset& W) {
    Subset r;
    for (int p : W) {
        bool maximal = true;
        for (int q : W)
            if (F.lt(p, q)) maximal = false;
        if (maximal) r.push_back(p);
    }
    return r;
}

Subset min_w(const SpecFragment& F, const Subset& W) {
    Subset r;
    for (int p : W) {
        bool minimal = true;
        for (int q : W)
            if (F.lt(q, p)) minimal = false;
        if (minimal) r.push_back(p);
    }
    return r;
}

Slices system_of_slices(const SpecFragment& F, const Subset& W) {
    Slices s;
    Subset rest = W;
    while (!rest.empty()) {
        Subset m = max_w(F, rest);
        s.push_back(m);
        rest = subset_difference(rest, m);
    }
    return s;
}

SliceCheck validate_slices(const SpecFragment& F, const Slices& S, const Subset& W) {
    Subset u;
    for (auto& w : S) u = subset_union(u, w);
    if (u != W) return {false, 1, "union of slices differs from W"};
    for (size_t i = 0; i < S.size(); ++i)
        for (size_t j = i + 1; j < S.size(); ++j)
            if (!subset_intersection(S[i], S[j]).empty())
                return {false, 2, "slices " + std::to_string(i) + " and " + std::to_string(j) + " overlap"};
    for (size_t i = 0; i < S.size(); ++i)
        if (dim_w(F, S[i]) > 0) return {false, 3, "slice " + std::to_string(i) + " has positive dimension"};
    for (size_t i = 0; i < S.size(); ++i) {
        Subset later;
        for (size_t j = i; j < S.size(); ++j) later = subset_union(later, S[j]);
        if (!is_specialization_closed_in(F, S[i], later))
            return {false, 4, "slice " + std::to_string(i) + " is not specialization-closed in the later slices"};
    }
    return {};
}

std::string slices_str(const SpecFragment& F, const Slices& S) {
    std::string s = "[";
    for (size_t i = 0; i < S.size(); ++i) {
        if (i) s += ", ";
        s += subset_str(F, S[i]);
    }
    return s + "]";
}

} // namespace cosupp
