#include "cosupp/cech/cech.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

namespace cosupp {

namespace {

using Key = std::tuple<std::vector<int>, std::vector<int>, size_t>;

struct Cell {
    Term atoms;
    std::vector<CechLabel> labels;
    std::map<Key, size_t> index;
};

Key key_of(const CechLabel& l) { return {l.seq, l.choice, l.xatom}; }

// increasing sequences of length len drawn from 0..n-1
void sequences(int n, int len, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == len) {
        out.push_back(cur);
        return;
    }
    int start = cur.empty() ? 0 : cur.back() + 1;
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        sequences(n, len, cur, out);
        cur.pop_back();
    }
}

void choices(const Slices& S, const std::vector<int>& seq, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (cur.size() == seq.size()) {
        out.push_back(cur);
        return;
    }
    for (int q : S[static_cast<size_t>(seq[cur.size()])]) {
        cur.push_back(q);
        choices(S, seq, cur, out);
        cur.pop_back();
    }
}

template <class V>
V omit(const V& v, size_t s) {
    V out = v;
    out.erase(out.begin() + static_cast<long>(s));
    return out;
}

Element sign(const Ring& R, size_t s) { return ring_int(R, s % 2 == 0 ? 1 : -1); }

Slices nonempty(const Slices& S) {
    Slices out;
    for (auto& w : S)
        if (!w.empty()) out.push_back(w);
    return out;
}

} // namespace

const std::vector<CechLabel>& CechComplex::labels_at(int deg) const {
    static const std::vector<CechLabel> none;
    int k = deg - tot.lo;
    if (k < 0 || k >= static_cast<int>(labels.size())) return none;
    return labels[static_cast<size_t>(k)];
}

Term lambda_bar_slice(const SpecFragment& F, const Subset& Wi, const Term& input) {
    if (dim_w(F, Wi) > 0) fail(ErrorKind::PreconditionViolation, "a slice must have dimension 0, got " + subset_str(F, Wi));
    Term out;
    for (int q : Wi)
        for (auto& a : input)
            if (auto b = apply_lambda_point(F, a, q)) out.push_back(*b);
    return out;
}

CechComplex cech_apply_complex(const Complex& X, const Slices& S0) {
    const SpecFragment& F = *X.F;
    const Ring& R = F.home();
    CechComplex C;
    C.slices = nonempty(S0);
    C.input = X;
    for (auto& w : C.slices)
        if (dim_w(F, w) > 0) fail(ErrorKind::PreconditionViolation, "a slice must have dimension 0, got " + subset_str(F, w));
    const int n1 = static_cast<int>(C.slices.size());
    if (n1 == 0) {
        C.tot = zero_complex(X.F);
        C.labels = {{}};
        C.ell = zero_map(X, C.tot);
        return C;
    }
    const int nq = static_cast<int>(X.terms.size());
    std::vector<std::vector<Cell>> cells(static_cast<size_t>(n1), std::vector<Cell>(static_cast<size_t>(nq)));
    for (int m = 0; m < n1; ++m) {
        std::vector<std::vector<int>> seqs;
        std::vector<int> cur;
        sequences(n1, m + 1, cur, seqs);
        for (auto& seq : seqs) {
            std::vector<std::vector<int>> chs;
            std::vector<int> c2;
            choices(C.slices, seq, c2, chs);
            for (auto& ch : chs)
                for (int j = 0; j < nq; ++j) {
                    const Term& t = X.terms[static_cast<size_t>(j)];
                    for (size_t k = 0; k < t.size(); ++k) {
                        std::optional<Atom> a = t[k];
                        for (int q : ch) {
                            a = apply_lambda_point(F, *a, q);
                            if (!a) break;
                        }
                        if (!a) continue;
                        Cell& cell = cells[static_cast<size_t>(m)][static_cast<size_t>(j)];
                        CechLabel l{seq, ch, X.lo + j, k};
                        cell.index[key_of(l)] = cell.atoms.size();
                        cell.atoms.push_back(*a);
                        cell.labels.push_back(l);
                    }
                }
        }
    }

    DoubleComplex D;
    D.F = X.F;
    D.p0 = 0;
    D.q0 = X.lo;
    D.terms.assign(static_cast<size_t>(n1), std::vector<Term>(static_cast<size_t>(nq)));
    D.dh.assign(static_cast<size_t>(n1), std::vector<Mat>(static_cast<size_t>(nq)));
    D.dv = D.dh;
    for (int m = 0; m < n1; ++m)
        for (int j = 0; j < nq; ++j) {
            const Cell& src = cells[static_cast<size_t>(m)][static_cast<size_t>(j)];
            D.terms[static_cast<size_t>(m)][static_cast<size_t>(j)] = src.atoms;
            if (m + 1 < n1) {
                const Cell& tgt = cells[static_cast<size_t>(m + 1)][static_cast<size_t>(j)];
                Mat M(tgt.atoms.size(), src.atoms.size(), X.zero());
                for (size_t r = 0; r < tgt.labels.size(); ++r) {
                    const CechLabel& l = tgt.labels[r];
                    for (size_t s = 0; s < l.seq.size(); ++s) {
                        auto it = src.index.find({omit(l.seq, s), omit(l.choice, s), l.xatom});
                        if (it != src.index.end()) M(r, it->second) = sign(R, s);
                    }
                }
                D.dh[static_cast<size_t>(m)][static_cast<size_t>(j)] = M;
            }
            if (j + 1 < nq) {
                const Cell& tgt = cells[static_cast<size_t>(m)][static_cast<size_t>(j + 1)];
                Mat dx = X.diff(X.lo + j);
                Mat M(tgt.atoms.size(), src.atoms.size(), X.zero());
                for (size_t r = 0; r < tgt.labels.size(); ++r)
                    for (size_t c = 0; c < src.labels.size(); ++c) {
                        const CechLabel& a = tgt.labels[r];
                        const CechLabel& b = src.labels[c];
                        if (a.seq == b.seq && a.choice == b.choice) M(r, c) = dx(a.xatom, b.xatom);
                    }
                D.dv[static_cast<size_t>(m)][static_cast<size_t>(j)] = M;
            }
        }
    C.tot = totalize(D);

    // labels in the order totalize lays out terms: column-major per degree
    for (int d = C.tot.lo; d <= C.tot.hi(); ++d) {
        std::vector<CechLabel> ls;
        for (int m = 0; m < n1; ++m) {
            int j = d - X.lo - m;
            if (j < 0 || j >= nq) continue;
            const auto& cl = cells[static_cast<size_t>(m)][static_cast<size_t>(j)].labels;
            ls.insert(ls.end(), cl.begin(), cl.end());
        }
        C.labels.push_back(ls);
    }

    C.ell.lo = X.lo;
    Element one = ring_one(R);
    for (int j = X.lo; j <= X.hi(); ++j) {
        const auto& ls = C.labels_at(j);
        Mat M(C.tot.term(j).size(), X.term(j).size(), X.zero());
        for (size_t r = 0; r < ls.size(); ++r)
            if (ls[r].column() == 0 && ls[r].xdeg == j) M(r, ls[r].xatom) = one;
        C.ell.f.push_back(M);
    }
    return C;
}

CechComplex cech_apply_module(FragPtr F, const FgModule& M, const Slices& S) {
    return cech_apply_complex(fg_complex(std::move(F), 0, {M}, {}), S);
}

CechComplex lambda_w(const Complex& X, const Subset& W) {
    if (W.empty()) return cech_apply_complex(X, {});
    return cech_apply_complex(X, system_of_slices(*X.F, W));
}

ChainMap cech_apply_map(const ChainMap& f, const CechComplex& CX, const CechComplex& CY) {
    if (CX.slices != CY.slices) fail(ErrorKind::PreconditionViolation, "Cech complexes are built on different slices");
    ChainMap g;
    int lo = std::min(CX.tot.lo, CY.tot.lo), hi = std::max(CX.tot.hi(), CY.tot.hi());
    g.lo = lo;
    for (int d = lo; d <= hi; ++d) {
        const auto& lx = CX.labels_at(d);
        const auto& ly = CY.labels_at(d);
        Mat M(CY.tot.term(d).size(), CX.tot.term(d).size(), CX.tot.zero());
        for (size_t r = 0; r < ly.size(); ++r)
            for (size_t c = 0; c < lx.size(); ++c)
                if (ly[r].seq == lx[c].seq && ly[r].choice == lx[c].choice && ly[r].xdeg == lx[c].xdeg)
                    M(r, c) = f.at(lx[c].xdeg, CX.input, CY.input)(ly[r].xatom, lx[c].xatom);
        g.f.push_back(M);
    }
    return g;
}

// ---------------------------------------------------------------- triangles

MvTriangle mv_triangle(const Complex& X, const Subset& W0, const Subset& W1) {
    const SpecFragment& F = *X.F;
    MvTriangle out;
    out.W0 = W0;
    out.W1 = W1;
    out.W = subset_union(W0, W1);
    if (is_specialization_closed_in(F, W0, out.W))
        out.condition = 1;
    else if (is_generalization_closed_in(F, W1, out.W))
        out.condition = 2;
    else
        fail(ErrorKind::PreconditionViolation, subset_str(F, W0) + " is not specialization-closed in " + subset_str(F, out.W) +
                                                  " and " + subset_str(F, W1) + " is not generalization-closed in it");
    CechComplex CW = lambda_w(X, out.W);
    const Complex& Y = CW.tot;
    CechComplex C1 = lambda_w(Y, W1), C0 = lambda_w(Y, W0);
    CechComplex C10 = lambda_w(C0.tot, W1);
    Complex B = direct_sum(C1.tot, C0.tot);
    ChainMap f = pair_map(C1.ell, C0.ell, Y, C1.tot, C0.tot);
    ChainMap g1 = cech_apply_map(C0.ell, C1, C10);
    ChainMap g2 = scaled(C10.ell, ring_int(F.home(), -1), C0.tot, C10.tot);
    ChainMap g = copair_map(g1, g2, C1.tot, C0.tot, C10.tot);
    out.T = Triangle{Y, B, C10.tot, f, g, std::nullopt};
    return out;
}

LocalizedComplex localize_complex(const Complex& X, const Localizer& S) {
    const SpecFragment& F = *X.F;
    Atom loc{Base::localized(S), ring_zero(F.home())};
    LocalizedComplex L;
    std::vector<Term> terms;
    for (int i = X.lo; i <= X.hi(); ++i) {
        Term t;
        std::vector<size_t> kept;
        const Term& src = X.term(i);
        for (size_t k = 0; k < src.size(); ++k)
            if (auto a = tensor_atom(F, src[k], loc)) {
                t.push_back(*a);
                kept.push_back(k);
            }
        terms.push_back(t);
        L.kept.push_back(kept);
    }
    std::vector<Mat> d;
    for (int i = X.lo; i < X.hi(); ++i) {
        size_t k = static_cast<size_t>(i - X.lo);
        Mat D = X.diff(i);
        Mat M(L.kept[k + 1].size(), L.kept[k].size(), X.zero());
        for (size_t r = 0; r < M.rows(); ++r)
            for (size_t c = 0; c < M.cols(); ++c) M(r, c) = D(L.kept[k + 1][r], L.kept[k][c]);
        d.push_back(M);
    }
    L.C = make_complex(X.F, X.lo, std::move(terms), std::move(d));
    L.eta.lo = X.lo;
    for (int i = X.lo; i <= X.hi(); ++i) {
        const auto& kept = L.kept[static_cast<size_t>(i - X.lo)];
        Mat M(kept.size(), X.term(i).size(), X.zero());
        for (size_t r = 0; r < kept.size(); ++r) M(r, kept[r]) = ring_one(F.home());
        L.eta.f.push_back(M);
    }
    return L;
}

ChainMap localize_map(const ChainMap& f, const LocalizedComplex& LX, const LocalizedComplex& LY) {
    ChainMap g;
    int lo = std::min(LX.C.lo, LY.C.lo), hi = std::max(LX.C.hi(), LY.C.hi());
    g.lo = lo;
    static const std::vector<size_t> none;
    auto kept = [](const LocalizedComplex& L, int i) -> const std::vector<size_t>& {
        int k = i - L.C.lo;
        return k < 0 || k >= static_cast<int>(L.kept.size()) ? none : L.kept[static_cast<size_t>(k)];
    };
    // source complexes of LX and LY, recovered from the natural maps' shapes
    for (int i = lo; i <= hi; ++i) {
        const auto& kx = kept(LX, i);
        const auto& ky = kept(LY, i);
        Mat M(ky.size(), kx.size(), LX.C.zero());
        int k = i - f.lo;
        if (k >= 0 && k < static_cast<int>(f.f.size())) {
            const Mat& F = f.f[static_cast<size_t>(k)];
            for (size_t r = 0; r < ky.size(); ++r)
                for (size_t c = 0; c < kx.size(); ++c)
                    if (ky[r] < F.rows() && kx[c] < F.cols()) M(r, c) = F(ky[r], kx[c]);
        }
        g.f.push_back(M);
    }
    return g;
}

Triangle adelic_triangle(const Complex& X, const Element& x) {
    const SpecFragment& F = *X.F;
    Subset V;
    for (int i = 0; i < F.size(); ++i)
        if (is_in_prime(x, F.prime(i))) V.push_back(i);
    Localizer S = powers_of({x});
    LocalizedComplex LX = localize_complex(X, S);
    CechComplex CL = lambda_w(X, V);
    LocalizedComplex LL = localize_complex(CL.tot, S);
    Complex B = direct_sum(LX.C, CL.tot);
    ChainMap f = pair_map(LX.eta, CL.ell, X, LX.C, CL.tot);
    // ell_x on the first summand, minus the localization map on the second
    ChainMap lx = localize_map(CL.ell, LX, LL);
    ChainMap neg = scaled(LL.eta, ring_int(F.home(), -1), CL.tot, LL.C);
    ChainMap g = copair_map(lx, neg, LX.C, CL.tot, LL.C);
    return Triangle{X, B, LL.C, f, g, std::nullopt};
}

// ---------------------------------------------------------------- splitting and membership

std::optional<Atom> as_block_atom(const SpecFragment& F, const Atom& a) {
    if (a.base.kind == Base::Kind::Block) return a;
    if (a.base.kind == Base::Kind::Localized && a.base.S.complement && a.base.S.complement->kind == PrimeIdeal::Kind::Zero) {
        int z = F.zero_index();
        if (z < 0) return std::nullopt;
        return Atom{Base::block({z}), a.ann};
    }
    return std::nullopt;
}

namespace {

Complex block_form(const Complex& X, const std::string& what) {
    Complex Y = X;
    for (auto& t : Y.terms)
        for (auto& a : t) {
            auto b = as_block_atom(*X.F, a);
            if (!b) fail(ErrorKind::PreconditionViolation, what + " needs block products, found " + atom_str(*X.F, a));
            a = *b;
        }
    return Y;
}

// Restriction to the atoms selected by keep; returns the complex and per-degree kept indices.
std::pair<Complex, std::vector<std::vector<size_t>>> restrict(const Complex& X, const std::function<bool(const Atom&)>& keep) {
    std::vector<Term> terms;
    std::vector<std::vector<size_t>> idx;
    for (int i = X.lo; i <= X.hi(); ++i) {
        Term t;
        std::vector<size_t> k;
        const Term& src = X.term(i);
        for (size_t j = 0; j < src.size(); ++j)
            if (keep(src[j])) {
                t.push_back(src[j]);
                k.push_back(j);
            }
        terms.push_back(t);
        idx.push_back(k);
    }
    std::vector<Mat> d;
    for (int i = X.lo; i < X.hi(); ++i) {
        size_t k = static_cast<size_t>(i - X.lo);
        Mat D = X.diff(i);
        Mat M(idx[k + 1].size(), idx[k].size(), X.zero());
        for (size_t r = 0; r < M.rows(); ++r)
            for (size_t c = 0; c < M.cols(); ++c) M(r, c) = D(idx[k + 1][r], idx[k][c]);
        d.push_back(M);
    }
    return {make_complex(X.F, X.lo, std::move(terms), std::move(d)), idx};
}

Membership membership_from(const Complex& Y, const std::vector<Window>& ws) {
    Membership m;
    m.cert = certify_nonzero(Y, ws);
    if (m.cert.status == "certified") {
        m.member = true;
        m.status = "certified";
    } else if (m.cert.status == "failed") {
        m.member = false;
        m.status = "certified";
    } else {
        m.status = "inconclusive";
    }
    return m;
}

} // namespace

GammaSplit gamma_split(const Complex& X0, const Subset& V) {
    const SpecFragment& F = *X0.F;
    if (!is_specialization_closed_in(F, V, F.all()))
        fail(ErrorKind::PreconditionViolation, subset_str(F, V) + " is not specialization-closed in the fragment");
    Complex X = block_form(X0, "gamma-split");
    auto inV = [&](const Atom& a) { return subset_contains(V, a.base.last()); };
    for (int i = X.lo; i < X.hi(); ++i) {
        Mat D = X.diff(i);
        const Term& s = X.term(i);
        const Term& t = X.term(i + 1);
        for (size_t r = 0; r < t.size(); ++r)
            for (size_t c = 0; c < s.size(); ++c)
                if (!inV(s[c]) && inV(t[r]) && !divisible_in_atom(F, D(r, c), t[r]))
                    fail(ErrorKind::NonzeroForbiddenComponent, "degree " + std::to_string(i) + ": " + atom_str(F, s[c]) +
                                                                   " -> " + atom_str(F, t[r]) + " has coefficient " +
                                                                   element_str(D(r, c), F.home()));
    }
    GammaSplit out;
    auto [G, gi] = restrict(X, [&](const Atom& a) { return !inV(a); });
    auto [L, li] = restrict(X, inV);
    out.gamma = G;
    out.lambda = L;
    out.inc.lo = out.proj.lo = X.lo;
    Element one = ring_one(F.home());
    for (int i = X.lo; i <= X.hi(); ++i) {
        size_t k = static_cast<size_t>(i - X.lo);
        Mat I(X.term(i).size(), gi[k].size(), X.zero()), P(li[k].size(), X.term(i).size(), X.zero());
        for (size_t r = 0; r < gi[k].size(); ++r) I(gi[k][r], r) = one;
        for (size_t r = 0; r < li[k].size(); ++r) P(r, li[k][r]) = one;
        out.inc.f.push_back(I);
        out.proj.f.push_back(P);
    }
    return out;
}

Membership support_membership(const Complex& X, int p, const std::vector<Window>& ws) {
    return membership_from(cech_apply_complex(X, {Subset{p}}).tot, ws);
}

Membership cosupport_membership(const Complex& X0, int p, const std::vector<Window>& ws) {
    const SpecFragment& F = *X0.F;
    Complex X = block_form(X0, "cosupport");
    Complex H = hom_from_localization_complex(X, complement_of(F.prime_ptr(p)));
    auto [Y, idx] = restrict(H, [&](const Atom& a) { return F.le(p, a.base.last()); });
    (void)idx;
    return membership_from(Y, ws);
}

Complex hom_from_localization_complex(const Complex& X0, const Localizer& S) {
    const SpecFragment& F = *X0.F;
    Complex X = block_form(X0, "Hom out of a localization");
    return restrict(X, [&](const Atom& a) { return in_US(S, F.prime(a.base.last())); }).first;
}

// ---------------------------------------------------------------- oracle and resolutions

Complex element_cech_complex(FragPtr F, const std::vector<Element>& gens) {
    const Ring& R = F->home();
    const int r = static_cast<int>(gens.size());
    std::vector<std::vector<std::vector<int>>> subsets(static_cast<size_t>(r + 1));
    for (int k = 0; k <= r; ++k) {
        std::vector<int> cur;
        sequences(r, k, cur, subsets[static_cast<size_t>(k)]);
    }
    auto atom = [&](const std::vector<int>& I) {
        if (I.empty()) return Atom{Base::free(), ring_zero(R)};
        std::vector<Element> xs;
        for (int i : I) xs.push_back(gens[static_cast<size_t>(i)]);
        return Atom{Base::localized(powers_of(xs)), ring_zero(R)};
    };
    std::vector<Term> terms;
    for (auto& level : subsets) {
        Term t;
        for (auto& I : level) t.push_back(atom(I));
        terms.push_back(t);
    }
    std::vector<Mat> d;
    for (int k = 0; k < r; ++k) {
        auto& src = subsets[static_cast<size_t>(k)];
        auto& tgt = subsets[static_cast<size_t>(k + 1)];
        Mat M(tgt.size(), src.size(), ring_zero(R));
        for (size_t t = 0; t < tgt.size(); ++t)
            for (size_t s = 0; s < tgt[t].size(); ++s) {
                auto I = omit(tgt[t], s);
                auto it = std::find(src.begin(), src.end(), I);
                M(t, static_cast<size_t>(it - src.begin())) = sign(R, s);
            }
        d.push_back(M);
    }
    return make_complex(std::move(F), 0, std::move(terms), std::move(d));
}

Complex local_cohomology_oracle(const std::vector<Element>& gens, const Complex& X) {
    return tensor_complex(X, element_cech_complex(X.F, gens));
}

Resolution pure_injective_resolution(const Complex& N, const Subset& W, const std::vector<Window>& ws) {
    const SpecFragment& F = *N.F;
    bool blocks = true;
    for (auto& t : N.terms)
        for (auto& a : t) blocks &= bool(as_block_atom(F, a));
    if (blocks) {
        for (int p = 0; p < F.size(); ++p) {
            if (subset_contains(W, p)) continue;
            Membership m = cosupport_membership(N, p, ws);
            if (m.member || m.status != "certified")
                fail(ErrorKind::CosupportViolation, F.name(p) + " outside " + subset_str(F, W) + " is " +
                                                        (m.member ? "in the cosupport" : "not excluded from the cosupport"));
        }
    } else if (W != F.all() || !F.is_local()) {
        fail(ErrorKind::CosupportViolation, "the cosupport of a non-block input is only known to lie in the full fragment of a local ring");
    }
    Resolution r;
    r.cech = lambda_w(N, W);
    r.cert = certify_acyclic(cone(r.cech.ell, N, r.cech.tot), ws);
    return r;
}

std::string check_insertion_identities(int n, int width) {
    // integer-valued insertion matrices between (seq, choice) labels
    std::vector<std::vector<std::pair<std::vector<int>, std::vector<int>>>> cols(static_cast<size_t>(n + 1));
    for (int m = 0; m <= n; ++m) {
        std::vector<std::vector<int>> seqs;
        std::vector<int> cur;
        sequences(n + 1, m + 1, cur, seqs);
        for (auto& s : seqs) {
            size_t total = 1;
            for (size_t i = 0; i < s.size(); ++i) total *= static_cast<size_t>(width);
            for (size_t code = 0; code < total; ++code) {
                std::vector<int> ch;
                size_t c = code;
                for (size_t i = 0; i < s.size(); ++i) {
                    ch.push_back(s[i] * width + static_cast<int>(c % static_cast<size_t>(width)));
                    c /= static_cast<size_t>(width);
                }
                cols[static_cast<size_t>(m)].push_back({s, ch});
            }
        }
    }
    auto delta = [&](int m) {
        auto& src = cols[static_cast<size_t>(m)];
        auto& tgt = cols[static_cast<size_t>(m + 1)];
        std::map<std::pair<std::vector<int>, std::vector<int>>, size_t> where;
        for (size_t i = 0; i < src.size(); ++i) where[src[i]] = i;
        std::vector<std::vector<long>> M(tgt.size(), std::vector<long>(src.size(), 0));
        for (size_t t = 0; t < tgt.size(); ++t)
            for (size_t s = 0; s < tgt[t].first.size(); ++s)
                M[t][where.at({omit(tgt[t].first, s), omit(tgt[t].second, s)})] += s % 2 == 0 ? 1 : -1;
        return M;
    };
    for (int m = 0; m + 2 <= n; ++m) {
        auto A = delta(m), B = delta(m + 1);
        for (size_t i = 0; i < B.size(); ++i)
            for (size_t j = 0; j < A[0].size(); ++j) {
                long acc = 0;
                for (size_t k = 0; k < A.size(); ++k) acc += B[i][k] * A[k][j];
                if (acc != 0)
                    return "n=" + std::to_string(n) + ": composite of columns " + std::to_string(m) + "->" + std::to_string(m + 2) +
                           " is nonzero at (" + std::to_string(i) + "," + std::to_string(j) + ")";
            }
    }
    return "";
}

} // namespace cosupp
