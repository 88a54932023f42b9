#include "cosupp/homology/cohomology.hpp"

#include <sstream>

namespace cosupp {

namespace {

std::string lengths_str(const std::vector<int>& v) {
    if (v.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return "[" + s + "]";
}

} // namespace

std::string CohomologyTable::overall() const {
    bool nonzero = false, unsure = false;
    for (const auto& r : local)
        for (const auto& [deg, st] : r.status) {
            nonzero |= st == "nonzero";
            unsure |= st == "inconclusive";
        }
    if (generic.checked)
        for (const auto& [deg, n] : generic.ranks) nonzero |= n != 0;
    if (nonzero) return "nonzero";
    return unsure ? "inconclusive" : "zero";
}

std::string CohomologyTable::first_nonzero() const {
    for (const auto& r : local)
        for (const auto& [deg, st] : r.status)
            if (st != "zero") return "H^" + std::to_string(deg) + " at " + r.prime + " is " + st + " at window " + w.str();
    if (generic.checked)
        for (const auto& [deg, n] : generic.ranks)
            if (n != 0) return "H^" + std::to_string(deg) + " has rank " + std::to_string(n) + " over the fraction field";
    return "";
}

std::string CohomologyTable::str() const {
    std::ostringstream os;
    os << "window " << w.str() << "\n";
    for (const auto& r : local) {
        os << "  at " << r.prime << ":";
        for (const auto& [deg, v] : r.inner) os << "  H^" << deg << "=" << lengths_str(v) << "(" << r.status.at(deg) << ")";
        os << "\n";
    }
    if (generic.checked) {
        os << "  at (0):";
        for (const auto& [deg, n] : generic.ranks) os << "  rank H^" << deg << "=" << n;
        os << "\n";
    } else {
        os << "  " << generic.note << "\n";
    }
    return os.str();
}

CohomologyTable cohomology_at(const Complex& X, const Window& w, const std::vector<int>& primes) {
    CohomologyTable t;
    t.w = w;
    for (int p : primes) t.local.push_back(evaluate_at(X, p, w));
    t.generic = evaluate_generic(X);
    return t;
}

CohomologyTable cohomology(const Complex& X, const Window& w) { return cohomology_at(X, w, evaluation_primes(*X.F)); }

Certificate certify_acyclic_at(const Complex& X, const std::vector<Window>& ws, const std::vector<int>& primes) {
    Certificate c;
    c.status = "certified";
    for (const auto& w : ws) {
        validate_window(w, true);
        CohomologyTable t = cohomology_at(X, w, primes);
        std::string o = t.overall();
        if (o == "nonzero") {
            c.status = "failed";
            c.detail = t.first_nonzero();
        } else if (o == "inconclusive" && c.status == "certified") {
            c.status = "inconclusive";
            c.detail = t.first_nonzero();
        }
        c.tables.push_back(std::move(t));
    }
    return c;
}

Certificate certify_acyclic(const Complex& X, const std::vector<Window>& ws) {
    return certify_acyclic_at(X, ws, evaluation_primes(*X.F));
}

Certificate certify_nonzero(const Complex& X, const std::vector<Window>& ws) {
    Certificate c;
    c.status = "failed";
    c.detail = "cohomology vanishes at every window";
    bool unsure = false;
    for (const auto& w : ws) {
        validate_window(w, true);
        CohomologyTable t = cohomology(X, w);
        std::string o = t.overall();
        if (o == "nonzero" && c.status != "certified") {
            c.status = "certified";
            c.detail = t.first_nonzero();
        }
        unsure |= o == "inconclusive";
        c.tables.push_back(std::move(t));
    }
    if (c.status == "failed" && unsure) {
        c.status = "inconclusive";
        c.detail = "nonvanishing only at the window margin";
    }
    return c;
}

Complex triangle_comparison_cone(const Triangle& T) {
    Complex K = cone(T.f, T.A, T.B);
    ChainMap psi;
    if (T.psi) {
        psi = *T.psi;
    } else {
        ChainMap gf = compose(T.g, T.f, T.A, T.B, T.C);
        for (int i = std::min(T.A.lo, T.C.lo); i <= std::max(T.A.hi(), T.C.hi()); ++i) {
            Mat P = gf.at(i, T.A, T.C);
            const Term& tgt = T.C.term(i);
            for (size_t r = 0; r < P.rows(); ++r)
                for (size_t s = 0; s < P.cols(); ++s)
                    if (!divisible_in_atom(*T.A.F, P(r, s), tgt[r]))
                        fail(ErrorKind::PreconditionViolation,
                             "the maps of the triangle do not compose to zero in degree " + std::to_string(i));
        }
        psi.lo = K.lo;
        for (int i = K.lo; i <= K.hi(); ++i) {
            Mat M(T.C.term(i).size(), K.term(i).size(), K.zero());
            M.paste(0, T.A.term(i + 1).size(), T.g.at(i, T.B, T.C));
            psi.f.push_back(M);
        }
    }
    std::string e = check_chain_map(psi, K, T.C);
    if (!e.empty()) fail(ErrorKind::PreconditionViolation, "comparison map is not a chain map: " + e);
    return cone(psi, K, T.C);
}

Certificate verify_triangle(const Triangle& T, const std::vector<Window>& ws) {
    for (const auto* m : {&T.f, &T.g}) {
        const Complex& X = m == &T.f ? T.A : T.B;
        const Complex& Y = m == &T.f ? T.B : T.C;
        std::string e = check_chain_map(*m, X, Y);
        if (!e.empty()) fail(ErrorKind::PreconditionViolation, "triangle map is not a chain map: " + e);
    }
    Certificate c = certify_acyclic(triangle_comparison_cone(T), ws);
    if (!c.certified() && !c.detail.empty()) c.detail = "comparison cone: " + c.detail;
    return c;
}

std::vector<Triangle> standard_rotations(const ChainMap& f, const Complex& A, const Complex& B) {
    Complex K = cone(f, A, B);
    Complex A1 = shift(A, 1), B1 = shift(B, 1);
    // inclusion B -> cone(f) and projection cone(f) -> A[1]
    ChainMap inc, proj, negf1;
    inc.lo = proj.lo = K.lo;
    for (int i = K.lo; i <= K.hi(); ++i) {
        size_t na = A.term(i + 1).size(), nb = B.term(i).size();
        Mat I(K.term(i).size(), nb, K.zero()), P(na, K.term(i).size(), K.zero());
        I.paste(na, 0, Mat::identity(nb, K.zero(), ring_one(A.F->home())));
        P.paste(0, 0, Mat::identity(na, K.zero(), ring_one(A.F->home())));
        inc.f.push_back(I);
        proj.f.push_back(P);
    }
    negf1.lo = A1.lo;
    for (int i = A1.lo; i <= A1.hi(); ++i) negf1.f.push_back(scaled(f.at(i + 1, A, B), ring_int(A.F->home(), -1)));

    std::vector<Triangle> out;
    out.push_back({A, B, K, f, inc, identity_map(K)});
    out.push_back({B, K, A1, inc, proj, std::nullopt});

    Triangle t3{K, A1, B1, proj, negf1, std::nullopt};
    Complex K2 = cone(proj, K, A1);
    ChainMap psi;
    psi.lo = K2.lo;
    for (int i = K2.lo; i <= K2.hi(); ++i) {
        size_t na2 = A.term(i + 2).size(), nb = B.term(i + 1).size(), na1 = A.term(i + 1).size();
        Mat M(nb, na2 + nb + na1, K.zero());
        M.paste(0, na2, Mat::identity(nb, K.zero(), ring_int(A.F->home(), -1)));
        M.paste(0, na2 + nb, scaled(f.at(i + 1, A, B), ring_int(A.F->home(), -1)));
        psi.f.push_back(M);
    }
    t3.psi = psi;
    out.push_back(t3);
    return out;
}

} // namespace cosupp
