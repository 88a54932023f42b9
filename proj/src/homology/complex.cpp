#include "cosupp/homology/complex.hpp"

#include <algorithm>

namespace cosupp {

namespace {

const Term kEmptyTerm;

void put(Mat& M, size_t r0, size_t c0, const Mat& B) {
    for (size_t i = 0; i < B.rows(); ++i)
        for (size_t j = 0; j < B.cols(); ++j) M(r0 + i, c0 + j) = B(i, j);
}

Element minus_one(const Complex& X) { return ring_int(X.F->home(), -1); }

std::pair<int, int> joint_range(const Complex& X, const Complex& Y) {
    return {std::min(X.lo, Y.lo), std::max(X.hi(), Y.hi())};
}

Term concat(const Term& a, const Term& b) {
    Term t = a;
    t.insert(t.end(), b.begin(), b.end());
    return t;
}

void check_span(int lo, int hi) {
    if (hi - lo + 1 > kMaxDegreeSpan)
        fail(ErrorKind::DegreeRange, "degree range [" + std::to_string(lo) + "," + std::to_string(hi) + "] is too wide");
}

// Y with G Y = B over R, G of full column rank.
Mat solve_exact(const Mat& G, const Mat& B, const Ring& R) {
    const size_t g = G.rows(), k = G.cols();
    Mat Y(k, B.cols(), ring_zero(R));
    if (k == 0 || B.cols() == 0) return Y;
    auto s = smith_normal_form(G, R);
    if (s.rank != k) fail(ErrorKind::PreconditionViolation, "kernel basis is not of full rank");
    Mat UB = s.U * B;
    Mat Z(k, B.cols(), ring_zero(R));
    for (size_t r = 0; r < g; ++r)
        for (size_t c = 0; c < B.cols(); ++c) {
            if (r >= k) {
                if (!is_zero(UB(r, c))) fail(ErrorKind::PreconditionViolation, "vector outside the kernel lattice");
                continue;
            }
            Element q = UB(r, c) / s.invariants[r];
            if (!in_ring(q, R)) fail(ErrorKind::PreconditionViolation, "vector outside the kernel lattice");
            Z(r, c) = q;
        }
    return s.V * Z;
}

Mat ann_diag(const Term& t, const Ring& R, bool nonzero_only) {
    std::vector<size_t> cols;
    for (size_t k = 0; k < t.size(); ++k)
        if (!nonzero_only || !is_zero(t[k].ann)) cols.push_back(k);
    Mat D(t.size(), cols.size(), ring_zero(R));
    for (size_t c = 0; c < cols.size(); ++c) D(cols[c], c) = t[cols[c]].ann;
    return D;
}

} // namespace

const Term& Complex::term(int i) const {
    if (i < lo || i > hi()) return kEmptyTerm;
    return terms[static_cast<size_t>(i - lo)];
}

Mat Complex::diff(int i) const {
    size_t r = term(i + 1).size(), c = term(i).size();
    if (i >= lo && i <= hi()) {
        const Mat& m = d[static_cast<size_t>(i - lo)];
        if (m.rows() == r && m.cols() == c) return m;
    }
    return Mat(r, c, zero());
}

bool Complex::is_zero_object() const {
    for (auto& t : terms)
        if (!t.empty()) return false;
    return true;
}

std::string Complex::str() const {
    std::string s;
    for (int i = lo; i <= hi(); ++i) s += "  " + std::to_string(i) + ": " + term_str(*F, term(i)) + "\n";
    return s;
}

Complex make_complex(FragPtr F, int lo, std::vector<Term> terms, std::vector<Mat> d) {
    Complex X;
    X.F = std::move(F);
    X.lo = lo;
    X.terms = std::move(terms);
    if (X.terms.empty()) X.terms.emplace_back();
    check_span(X.lo, X.hi());
    Element z = X.zero();
    for (size_t k = 0; k < X.terms.size(); ++k) {
        size_t r = k + 1 < X.terms.size() ? X.terms[k + 1].size() : 0, c = X.terms[k].size();
        if (k < d.size() && (d[k].rows() != r || d[k].cols() != c)) {
            if (!(k + 1 == X.terms.size() && d[k].rows() == 0))
                fail(ErrorKind::Validation, "differential in degree " + std::to_string(lo + static_cast<int>(k)) +
                                                " has shape " + std::to_string(d[k].rows()) + "x" + std::to_string(d[k].cols()) +
                                                ", expected " + std::to_string(r) + "x" + std::to_string(c));
        }
        X.d.push_back(k < d.size() && d[k].rows() == r && d[k].cols() == c ? d[k] : Mat(r, c, z));
    }
    return X;
}

Complex concentrated(FragPtr F, Term t, int degree) { return make_complex(std::move(F), degree, {std::move(t)}); }

Complex zero_complex(FragPtr F) { return make_complex(std::move(F), 0, {Term{}}); }

Complex fg_complex(FragPtr F, int lo, const std::vector<FgModule>& mods, const std::vector<Mat>& d) {
    const Ring& R = F->home();
    std::vector<FgNormal> ns;
    std::vector<Term> terms;
    for (auto& m : mods) {
        ns.push_back(normalize(m, R));
        terms.push_back(twist(Base::free(), ns.back()));
    }
    std::vector<Mat> dd;
    for (size_t k = 0; k + 1 < mods.size() && k < d.size(); ++k) {
        if (d[k].rows() != mods[k + 1].gens || d[k].cols() != mods[k].gens)
            fail(ErrorKind::Validation, "differential in degree " + std::to_string(lo + static_cast<int>(k)) + " has the wrong shape");
        dd.push_back(ns[k + 1].to * d[k] * ns[k].from);
    }
    Complex X = make_complex(std::move(F), lo, std::move(terms), std::move(dd));
    std::string bad = check_d2(X);
    if (!bad.empty()) fail(ErrorKind::Validation, bad);
    return X;
}

Mat zero_mat(const Complex& X, size_t r, size_t c) { return Mat(r, c, X.zero()); }

Mat scaled(const Mat& M, const Element& c) {
    Mat N = M;
    for (size_t i = 0; i < M.rows(); ++i)
        for (size_t j = 0; j < M.cols(); ++j)
            if (!is_zero(M(i, j))) N(i, j) = M(i, j) * c;
    return N;
}

// ---------------------------------------------------------------- maps

Mat ChainMap::at(int i, const Complex& X, const Complex& Y) const {
    size_t r = Y.term(i).size(), c = X.term(i).size();
    int k = i - lo;
    if (k >= 0 && k < static_cast<int>(f.size()) && f[static_cast<size_t>(k)].rows() == r &&
        f[static_cast<size_t>(k)].cols() == c)
        return f[static_cast<size_t>(k)];
    return Mat(r, c, X.zero());
}

namespace {

template <class Fn>
ChainMap build_map(const Complex& X, const Complex& Y, Fn fn) {
    auto [lo, hi] = joint_range(X, Y);
    ChainMap m;
    m.lo = lo;
    for (int i = lo; i <= hi; ++i) m.f.push_back(fn(i));
    return m;
}

} // namespace

ChainMap identity_map(const Complex& X) {
    Element one = ring_one(X.F->home());
    return build_map(X, X, [&](int i) { return Mat::identity(X.term(i).size(), X.zero(), one); });
}

ChainMap zero_map(const Complex& X, const Complex& Y) {
    return build_map(X, Y, [&](int i) { return zero_mat(X, Y.term(i).size(), X.term(i).size()); });
}

ChainMap compose(const ChainMap& g, const ChainMap& f, const Complex& X, const Complex& Y, const Complex& Z) {
    return build_map(X, Z, [&](int i) { return g.at(i, Y, Z) * f.at(i, X, Y); });
}

ChainMap scaled(const ChainMap& f, const Element& c, const Complex& X, const Complex& Y) {
    return build_map(X, Y, [&](int i) { return scaled(f.at(i, X, Y), c); });
}

ChainMap add(const ChainMap& f, const ChainMap& g, const Complex& X, const Complex& Y) {
    return build_map(X, Y, [&](int i) { return f.at(i, X, Y) + g.at(i, X, Y); });
}

ChainMap pair_map(const ChainMap& f1, const ChainMap& f2, const Complex& X, const Complex& Y1, const Complex& Y2) {
    Complex S = direct_sum(Y1, Y2);
    return build_map(X, S, [&](int i) {
        Mat M = zero_mat(X, S.term(i).size(), X.term(i).size());
        put(M, 0, 0, f1.at(i, X, Y1));
        put(M, Y1.term(i).size(), 0, f2.at(i, X, Y2));
        return M;
    });
}

ChainMap copair_map(const ChainMap& g1, const ChainMap& g2, const Complex& X1, const Complex& X2, const Complex& Y) {
    Complex S = direct_sum(X1, X2);
    return build_map(S, Y, [&](int i) {
        Mat M = zero_mat(Y, Y.term(i).size(), S.term(i).size());
        put(M, 0, 0, g1.at(i, X1, Y));
        put(M, 0, X1.term(i).size(), g2.at(i, X2, Y));
        return M;
    });
}

// ---------------------------------------------------------------- constructions

Complex shift(const Complex& X, int k) {
    Complex Y = X;
    Y.lo = X.lo - k;
    if (k % 2 != 0)
        for (auto& m : Y.d) m = scaled(m, minus_one(X));
    return Y;
}

Complex direct_sum(const Complex& X, const Complex& Y) {
    auto [lo, hi] = joint_range(X, Y);
    std::vector<Term> terms;
    std::vector<Mat> d;
    for (int i = lo; i <= hi; ++i) terms.push_back(concat(X.term(i), Y.term(i)));
    for (int i = lo; i <= hi; ++i) {
        Mat M = zero_mat(X, X.term(i + 1).size() + Y.term(i + 1).size(), X.term(i).size() + Y.term(i).size());
        put(M, 0, 0, X.diff(i));
        put(M, X.term(i + 1).size(), X.term(i).size(), Y.diff(i));
        d.push_back(M);
    }
    return make_complex(X.F, lo, std::move(terms), std::move(d));
}

Complex cone(const ChainMap& f, const Complex& X, const Complex& Y) {
    int lo = std::min(X.lo - 1, Y.lo), hi = std::max(X.hi() - 1, Y.hi());
    std::vector<Term> terms;
    std::vector<Mat> d;
    for (int i = lo; i <= hi; ++i) terms.push_back(concat(X.term(i + 1), Y.term(i)));
    for (int i = lo; i <= hi; ++i) {
        size_t xs = X.term(i + 1).size(), xt = X.term(i + 2).size();
        Mat M = zero_mat(X, xt + Y.term(i + 1).size(), xs + Y.term(i).size());
        put(M, 0, 0, scaled(X.diff(i + 1), minus_one(X)));
        put(M, xt, 0, f.at(i + 1, X, Y));
        put(M, xt, xs, Y.diff(i));
        d.push_back(M);
    }
    return make_complex(X.F, lo, std::move(terms), std::move(d));
}

Complex truncate_stupid(const Complex& X, int n, Side side) {
    int lo = side == Side::AtMost ? X.lo : std::max(X.lo, n + 1);
    int hi = side == Side::AtMost ? std::min(X.hi(), n) : X.hi();
    if (lo > hi) return zero_complex(X.F);
    std::vector<Term> terms;
    std::vector<Mat> d;
    for (int i = lo; i <= hi; ++i) {
        terms.push_back(X.term(i));
        d.push_back(i < hi ? X.diff(i) : zero_mat(X, 0, X.term(i).size()));
    }
    return make_complex(X.F, lo, std::move(terms), std::move(d));
}

Complex truncate_smart(const Complex& X, int n, Side side) {
    const Ring& R = X.F->home();
    if (side == Side::AtMost && n >= X.hi()) return X;
    if (side == Side::AtMost && n < X.lo) return zero_complex(X.F);
    if (side == Side::Above && n < X.lo) return X;
    if (side == Side::Above && n >= X.hi()) return zero_complex(X.F);
    for (int i = X.lo; i <= X.hi(); ++i)
        for (auto& a : X.term(i))
            if (a.base.kind != Base::Kind::Free)
                fail(ErrorKind::UnsupportedShape, "smart truncation needs a complex of finitely generated modules");
    const Term& Xn = X.term(n);
    const size_t g = Xn.size();
    // L = {x : d x in relations of X^{n+1}}, a free lattice containing the relations of X^n
    Mat A = Mat::hcat(X.diff(n), ann_diag(X.term(n + 1), R, true));
    Mat G(g, 0, X.zero());
    if (A.rows() == 0) {
        G = Mat::identity(g, X.zero(), ring_one(R));
    } else {
        auto s = smith_normal_form(A, R);
        G = Mat(g, A.cols() - s.rank, X.zero());
        for (size_t j = s.rank; j < A.cols(); ++j)
            for (size_t i = 0; i < g; ++i) G(i, j - s.rank) = s.V(i, j);
    }
    std::vector<Term> terms;
    std::vector<Mat> d;
    if (side == Side::AtMost) {
        Mat Y = solve_exact(G, ann_diag(Xn, R, true), R);
        FgNormal N = normalize(FgModule::presented(G.cols(), Y), R);
        for (int i = X.lo; i < n; ++i) terms.push_back(X.term(i));
        terms.push_back(twist(Base::free(), N));
        for (int i = X.lo; i < n - 1; ++i) d.push_back(X.diff(i));
        if (n - 1 >= X.lo) d.push_back(N.to * solve_exact(G, X.diff(n - 1), R));
        return make_complex(X.F, X.lo, std::move(terms), std::move(d));
    }
    FgNormal N = normalize(FgModule::presented(g, G), R);
    terms.push_back(twist(Base::free(), N));
    d.push_back(X.diff(n) * N.from);
    for (int i = n + 1; i <= X.hi(); ++i) {
        terms.push_back(X.term(i));
        d.push_back(X.diff(i));
    }
    return make_complex(X.F, n, std::move(terms), std::move(d));
}

// ---------------------------------------------------------------- double complexes

namespace {

Mat grid_mat(const DoubleComplex& D, const std::vector<std::vector<Mat>>& m, int p, int q, size_t r, size_t c) {
    if (p >= 0 && q >= 0 && p < static_cast<int>(m.size()) && q < static_cast<int>(m[static_cast<size_t>(p)].size())) {
        const Mat& M = m[static_cast<size_t>(p)][static_cast<size_t>(q)];
        if (M.rows() == r && M.cols() == c) return M;
    }
    return Mat(r, c, ring_zero(D.F->home()));
}

const Term& grid_term(const DoubleComplex& D, int p, int q) {
    if (p < 0 || q < 0 || p >= D.np() || q >= D.nq()) return kEmptyTerm;
    return D.terms[static_cast<size_t>(p)][static_cast<size_t>(q)];
}

} // namespace

Complex totalize(const DoubleComplex& D) {
    if (D.np() == 0 || D.nq() == 0) return zero_complex(D.F);
    const int kmax = D.np() + D.nq() - 2;
    std::vector<Term> terms;
    std::vector<std::vector<size_t>> off(static_cast<size_t>(kmax + 2));
    for (int k = 0; k <= kmax + 1; ++k) {
        Term t;
        for (int p = 0; p < D.np(); ++p) {
            off[static_cast<size_t>(k)].push_back(t.size());
            const Term& g = grid_term(D, p, k - p);
            t.insert(t.end(), g.begin(), g.end());
        }
        if (k <= kmax) terms.push_back(t);
    }
    Element mone = ring_int(D.F->home(), -1);
    std::vector<Mat> d;
    for (int k = 0; k <= kmax; ++k) {
        size_t r = k + 1 <= kmax ? terms[static_cast<size_t>(k + 1)].size() : 0;
        Mat M(r, terms[static_cast<size_t>(k)].size(), ring_zero(D.F->home()));
        for (int p = 0; p < D.np() && r > 0; ++p) {
            int q = k - p;
            const Term& src = grid_term(D, p, q);
            if (src.empty()) continue;
            size_t c0 = off[static_cast<size_t>(k)][static_cast<size_t>(p)];
            if (p + 1 < D.np()) {
                const Term& th = grid_term(D, p + 1, q);
                put(M, off[static_cast<size_t>(k + 1)][static_cast<size_t>(p + 1)], c0, grid_mat(D, D.dh, p, q, th.size(), src.size()));
            }
            const Term& tv = grid_term(D, p, q + 1);
            Mat V = grid_mat(D, D.dv, p, q, tv.size(), src.size());
            if ((D.p0 + p) % 2 != 0) V = scaled(V, mone);
            put(M, off[static_cast<size_t>(k + 1)][static_cast<size_t>(p)], c0, V);
        }
        d.push_back(M);
    }
    return make_complex(D.F, D.p0 + D.q0, std::move(terms), std::move(d));
}

DoubleComplex transpose(const DoubleComplex& D) {
    DoubleComplex T;
    T.F = D.F;
    T.p0 = D.q0;
    T.q0 = D.p0;
    T.terms.assign(static_cast<size_t>(D.nq()), std::vector<Term>(static_cast<size_t>(D.np())));
    T.dh.assign(static_cast<size_t>(D.nq()), std::vector<Mat>(static_cast<size_t>(D.np())));
    T.dv = T.dh;
    for (int p = 0; p < D.np(); ++p)
        for (int q = 0; q < D.nq(); ++q) {
            const Term& s = grid_term(D, p, q);
            T.terms[static_cast<size_t>(q)][static_cast<size_t>(p)] = s;
            T.dh[static_cast<size_t>(q)][static_cast<size_t>(p)] = grid_mat(D, D.dv, p, q, grid_term(D, p, q + 1).size(), s.size());
            T.dv[static_cast<size_t>(q)][static_cast<size_t>(p)] = grid_mat(D, D.dh, p, q, grid_term(D, p + 1, q).size(), s.size());
        }
    return T;
}

Complex tensor_complex(const Complex& X, const Complex& Y) {
    const SpecFragment& F = *X.F;
    DoubleComplex D;
    D.F = X.F;
    D.p0 = X.lo;
    D.q0 = Y.lo;
    const int np = static_cast<int>(X.terms.size()), nq = static_cast<int>(Y.terms.size());
    // surviving pairs (a, b) per grid cell
    std::vector<std::vector<std::vector<std::pair<size_t, size_t>>>> pairs(
        static_cast<size_t>(np), std::vector<std::vector<std::pair<size_t, size_t>>>(static_cast<size_t>(nq)));
    D.terms.assign(static_cast<size_t>(np), std::vector<Term>(static_cast<size_t>(nq)));
    for (int p = 0; p < np; ++p)
        for (int q = 0; q < nq; ++q) {
            const Term& tx = X.term(X.lo + p);
            const Term& ty = Y.term(Y.lo + q);
            for (size_t a = 0; a < tx.size(); ++a)
                for (size_t b = 0; b < ty.size(); ++b)
                    if (auto t = tensor_atom(F, tx[a], ty[b])) {
                        D.terms[static_cast<size_t>(p)][static_cast<size_t>(q)].push_back(*t);
                        pairs[static_cast<size_t>(p)][static_cast<size_t>(q)].push_back({a, b});
                    }
        }
    D.dh.assign(static_cast<size_t>(np), std::vector<Mat>(static_cast<size_t>(nq)));
    D.dv = D.dh;
    for (int p = 0; p < np; ++p)
        for (int q = 0; q < nq; ++q) {
            auto& src = pairs[static_cast<size_t>(p)][static_cast<size_t>(q)];
            Mat dx = X.diff(X.lo + p), dy = Y.diff(Y.lo + q);
            if (p + 1 < np) {
                auto& tgt = pairs[static_cast<size_t>(p + 1)][static_cast<size_t>(q)];
                Mat M(tgt.size(), src.size(), X.zero());
                for (size_t t = 0; t < tgt.size(); ++t)
                    for (size_t s = 0; s < src.size(); ++s)
                        if (tgt[t].second == src[s].second) M(t, s) = dx(tgt[t].first, src[s].first);
                D.dh[static_cast<size_t>(p)][static_cast<size_t>(q)] = M;
            }
            if (q + 1 < nq) {
                auto& tgt = pairs[static_cast<size_t>(p)][static_cast<size_t>(q + 1)];
                Mat M(tgt.size(), src.size(), X.zero());
                for (size_t t = 0; t < tgt.size(); ++t)
                    for (size_t s = 0; s < src.size(); ++s)
                        if (tgt[t].first == src[s].first) M(t, s) = dy(tgt[t].second, src[s].second);
                D.dv[static_cast<size_t>(p)][static_cast<size_t>(q)] = M;
            }
        }
    return totalize(D);
}

// ---------------------------------------------------------------- checks

namespace {

std::string zero_against(const SpecFragment& F, const Mat& P, const Term& target, const std::string& what) {
    for (size_t t = 0; t < P.rows(); ++t)
        for (size_t s = 0; s < P.cols(); ++s)
            if (!divisible_in_atom(F, P(t, s), target[t]))
                return what + ": entry (" + std::to_string(t) + "," + std::to_string(s) + ") = " +
                       element_str(P(t, s), F.home()) + " is not zero in " + atom_str(F, target[t]);
    return "";
}

} // namespace

std::string check_d2(const Complex& X) {
    for (int i = X.lo; i + 1 <= X.hi(); ++i) {
        std::string e = zero_against(*X.F, X.diff(i + 1) * X.diff(i), X.term(i + 2), "d^2 in degree " + std::to_string(i));
        if (!e.empty()) return e;
    }
    return "";
}

std::string check_chain_map(const ChainMap& f, const Complex& X, const Complex& Y) {
    auto [lo, hi] = joint_range(X, Y);
    Element mone = ring_int(X.F->home(), -1);
    for (int i = lo - 1; i <= hi; ++i) {
        Mat P = Y.diff(i) * f.at(i, X, Y) + scaled(f.at(i + 1, X, Y) * X.diff(i), mone);
        std::string e = zero_against(*X.F, P, Y.term(i + 1), "chain map square in degree " + std::to_string(i));
        if (!e.empty()) return e;
    }
    return "";
}

std::string check_canonical(const Complex& X) {
    const SpecFragment& F = *X.F;
    for (int i = X.lo; i <= X.hi(); ++i) {
        Mat M = X.diff(i);
        const Term &s = X.term(i), &t = X.term(i + 1);
        for (size_t r = 0; r < M.rows(); ++r)
            for (size_t c = 0; c < M.cols(); ++c)
                if (!divisible_in_atom(F, M(r, c), t[r]) && !canonical_map_exists(F, s[c].base, t[r].base))
                    return "no canonical map " + base_str(F, s[c].base) + " -> " + base_str(F, t[r].base) + " in degree " +
                           std::to_string(i);
    }
    return "";
}

std::string check_double(const DoubleComplex& D) {
    const SpecFragment& F = *D.F;
    for (int p = 0; p < D.np(); ++p)
        for (int q = 0; q < D.nq(); ++q) {
            auto sz = [&](int a, int b) { return grid_term(D, a, b).size(); };
            Mat h1 = grid_mat(D, D.dh, p, q, sz(p + 1, q), sz(p, q)), h2 = grid_mat(D, D.dh, p + 1, q, sz(p + 2, q), sz(p + 1, q));
            Mat v1 = grid_mat(D, D.dv, p, q, sz(p, q + 1), sz(p, q)), v2 = grid_mat(D, D.dv, p, q + 1, sz(p, q + 2), sz(p, q + 1));
            Mat vh = grid_mat(D, D.dv, p + 1, q, sz(p + 1, q + 1), sz(p + 1, q));
            Mat hv = grid_mat(D, D.dh, p, q + 1, sz(p + 1, q + 1), sz(p, q + 1));
            std::string e = zero_against(F, h2 * h1, grid_term(D, p + 2, q), "horizontal d^2");
            if (e.empty()) e = zero_against(F, v2 * v1, grid_term(D, p, q + 2), "vertical d^2");
            if (e.empty())
                e = zero_against(F, vh * h1 + scaled(hv * v1, ring_int(F.home(), -1)), grid_term(D, p + 1, q + 1),
                                 "square at (" + std::to_string(p) + "," + std::to_string(q) + ")");
            if (!e.empty()) return e;
        }
    return "";
}

} // namespace cosupp
