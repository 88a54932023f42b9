#include <doctest.h>

#include "support.hpp"

using namespace tsupport;

namespace {

Subset named(const SpecFragment& F, std::vector<std::string> ps) {
    Subset s;
    for (const auto& p : ps) s.push_back(F.index_of(p));
    return make_subset(s);
}

Mat scalar(const Ring& R, int v) {
    Mat M(1, 1, ring_zero(R));
    M(0, 0) = ring_int(R, v);
    return M;
}

std::vector<int> inner_at(const Complex& X, int pi, const Window& w, int deg) {
    LocalResult r = evaluate_at(X, pi, w);
    auto it = r.inner.find(deg);
    std::vector<int> v = it == r.inner.end() ? std::vector<int>{} : it->second;
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST_SUITE("cech") {
    TEST_CASE("slice products") {
        auto F = z_fragment({2, 3});
        Ring Z = F->home();
        Term R{free_atom(*F)};
        CHECK(term_str(*F, lambda_bar_slice(*F, named(*F, {"(2)", "(3)"}), R)) == "T[(2)] x T[(3)]");
        CHECK(term_str(*F, lambda_bar_slice(*F, named(*F, {"(0)"}), R)) == "T[(0)]");
        Term t12 = lambda_bar_slice(*F, named(*F, {"(2)"}), {Atom{Base::free(), ring_int(Z, 12)}});
        for (int b : {3, 8}) CHECK(evaluate_block(*F, t12, 1, Window{0, b, 0}) == std::vector<int>{2});
        CHECK(evaluate_block(*F, t12, 2, Window{0, 8, 0}).empty());
    }

    TEST_CASE("Cech complex of modules") {
        auto F = zp_fragment(5);
        Ring R = F->home();
        CechComplex C = cech_apply_module(F, FgModule::free(R, 1), {{1}, {0}});
        REQUIRE(C.tot.lo == 0);
        REQUIRE(C.tot.hi() == 1);
        CHECK(term_str(*F, C.tot.term(0)) == "T[(5)] x T[(0)]");
        CHECK(term_str(*F, C.tot.term(1)) == "T[(5),(0)]");
        CHECK(check_d2(C.tot).empty());
        CHECK(check_chain_map(C.ell, C.input, C.tot).empty());
        CHECK(certify_acyclic(cone(C.ell, C.input, C.tot), two_windows()).certified());
        // labels carry the column and the sign pattern of the two insertions
        REQUIRE(C.labels_at(1).size() == 1);
        CHECK(C.labels_at(1)[0].column() == 1);
        Mat d = C.tot.diff(0);
        REQUIRE(d.cols() == 2);
        CHECK(d(0, 0) + d(0, 1) == ring_zero(R));
        CHECK((d(0, 0) == ring_one(R) || d(0, 1) == ring_one(R)));

        auto G = z_fragment({2});
        Ring Z = G->home();
        CechComplex T = cech_apply_module(G, FgModule::cyclic(Z, ring_int(Z, 12)), {{1}, {0}});
        for (const auto& w : two_windows()) {
            CHECK(raw_at(T.tot, 1, w, 0) == std::vector<int>{2});
            CHECK(raw_at(T.tot, 1, w, 1).empty());
        }
        CHECK(evaluate_generic(T.tot).ranks.at(0) == 0);

        CechComplex one = cech_apply_module(G, FgModule::free(Z, 2), {{1}});
        CHECK(one.tot.lo == one.tot.hi());
        CHECK(term_str(*G, one.tot.term(0)) == "T[(2)]^2");
    }

    TEST_CASE("Cech complex of a complex") {
        auto F = z_fragment({2});
        Ring Z = F->home();
        Complex X = fg_complex(F, 0, {FgModule::free(Z, 1), FgModule::free(Z, 1)}, {scalar(Z, 2)});
        CechComplex C = cech_apply_complex(X, {{1}, {0}});
        CHECK(C.tot.lo == X.lo);
        CHECK(C.tot.hi() == X.hi() + 1);
        CHECK(check_d2(C.tot).empty());
        CHECK(check_chain_map(C.ell, X, C.tot).empty());
        // cohomology Z/2 is 2-complete, so l is a quasi-isomorphism
        Certificate c = certify_acyclic(cone(C.ell, X, C.tot), two_windows());
        CHECK_MESSAGE(c.certified(), c.detail);
        CHECK(lambda_w(X, {}).tot.is_zero_object());

        Complex R = unit_complex(F);
        CHECK(lambda_w(R, F->all()).tot.str() == cech_apply_module(F, FgModule::free(Z, 1), system_of_slices(*F, F->all())).tot.str());
    }

    TEST_CASE("Mayer-Vietoris triangles") {
        auto F = z_fragment({2, 3});
        Complex Z = unit_complex(F);
        MvTriangle mv = mv_triangle(Z, named(*F, {"(2)"}), named(*F, {"(0)", "(3)"}));
        CHECK(mv.condition == 1);
        CHECK(term_str(*F, mv.T.C.term(0)) == "T[(2),(0)]");
        Certificate c = verify_triangle(mv.T, two_windows());
        CHECK_MESSAGE(c.certified(), c.detail);

        MvTriangle deg = mv_triangle(Z, F->all(), {});
        CHECK(deg.T.C.is_zero_object());
        CHECK(verify_triangle(deg.T, two_windows()).certified());

        auto G = zp_fragment(5);
        MvTriangle sh = mv_triangle(unit_complex(G), {1}, {0});
        Certificate c5 = verify_triangle(sh.T, two_windows());
        CHECK_MESSAGE(c5.certified(), c5.detail);

        auto H = z_fragment({2});
        CHECK_THROWS_AS(mv_triangle(unit_complex(H), named(*H, {"(0)"}), named(*H, {"(2)"})), Error);

        Triangle ad = adelic_triangle(unit_complex(z_fragment({2, 3, 5})), ring_int(Z.F->home(), 2));
        CHECK(verify_triangle(ad, two_windows()).certified());
    }

    TEST_CASE("gamma split") {
        auto F = z_fragment({2});
        Ring Z = F->home();
        Term src{block(*F, {0}), block(*F, {1})}, tgt{block(*F, {1, 0})};
        Mat d(1, 2, ring_zero(Z));
        d(0, 0) = ring_int(Z, 1);
        d(0, 1) = ring_int(Z, -1);
        Complex X = make_complex(F, 0, {src, tgt}, {d});
        GammaSplit G = gamma_split(X, named(*F, {"(2)"}));
        CHECK(term_str(*F, G.gamma.term(0)) == "T[(0)]");
        CHECK(term_str(*F, G.gamma.term(1)) == "T[(2),(0)]");
        CHECK(term_str(*F, G.lambda.term(0)) == "T[(2)]");
        CHECK(G.lambda.term(1).empty());
        Triangle T{G.gamma, X, G.lambda, G.inc, G.proj, std::nullopt};
        CHECK(verify_triangle(T, two_windows()).certified());

        GammaSplit all = gamma_split(X, F->all());
        CHECK(all.gamma.is_zero_object());
        CHECK(all.lambda.str() == X.str());
        GammaSplit none = gamma_split(X, {});
        CHECK(none.lambda.is_zero_object());
        CHECK(none.gamma.str() == X.str());

        CHECK_THROWS_AS(gamma_split(X, named(*F, {"(0)"})), Error);
        Complex bad = make_complex(F, 0, {{block(*F, {0})}, {block(*F, {1})}}, {scalar(Z, 1)});
        try {
            gamma_split(bad, named(*F, {"(2)"}));
            FAIL("expected a forbidden component");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NonzeroForbiddenComponent);
        }
    }

    TEST_CASE("support and cosupport memberships") {
        auto F = z_fragment({2, 3});
        Complex T2 = concentrated(F, {block(*F, {1})});
        Complex Q2 = concentrated(F, {block(*F, {1, 0})});
        auto co = [&](const Complex& X, const char* p) { return cosupport_membership(X, F->index_of(p), two_windows()); };
        auto su = [&](const Complex& X, const char* p) { return support_membership(X, F->index_of(p), two_windows()); };
        CHECK(co(T2, "(2)").member);
        CHECK_FALSE(co(T2, "(0)").member);
        CHECK_FALSE(co(T2, "(3)").member);
        CHECK(su(T2, "(0)").member);
        CHECK(su(T2, "(2)").member);
        CHECK_FALSE(su(T2, "(3)").member);
        CHECK(co(Q2, "(0)").member);
        CHECK_FALSE(co(Q2, "(2)").member);
        for (const char* p : {"(0)", "(2)", "(3)"}) {
            CHECK(co(T2, p).status == "certified");
            CHECK(su(T2, p).status == "certified");
            CHECK(co(Q2, p).status == "certified");
        }
    }

    TEST_CASE("element Cech oracle") {
        auto F = zp_fragment(5);
        Ring R = F->home();
        Complex G = local_cohomology_oracle({ring_int(R, 5)}, unit_complex(F));
        CHECK(term_str(*F, G.term(1)) == "R[1/5]");
        for (int a : {2, 4}) {
            Window w{a, 8, 2};
            CHECK(raw_at(G, 1, w, 1) == std::vector<int>{a});
            CHECK(raw_at(G, 1, w, 0).empty());
        }
        CHECK(certify_nonzero(G, two_windows()).certified());
        CHECK(certify_acyclic(local_cohomology_oracle({ring_one(R)}, unit_complex(F)), two_windows()).certified());

        auto Z6 = z_fragment({2, 3});
        Ring Z = Z6->home();
        Complex X = unit_complex(Z6);
        CechComplex L = lambda_w(X, named(*Z6, {"(2)", "(3)"}));
        CHECK(term_str(*Z6, L.tot.term(0)) == "T[(2)] x T[(3)]");
        Complex K = cone(L.ell, X, L.tot);
        CHECK(certify_acyclic_at(local_cohomology_oracle({ring_int(Z, 6)}, K), two_windows(), {1, 2}).certified());
        CHECK(check_d2(element_cech_complex(Z6, {ring_int(Z, 2), ring_int(Z, 3)})).empty());
    }

    TEST_CASE("pure-injective resolutions") {
        auto F = zp_fragment(5);
        Resolution r = pure_injective_resolution(unit_complex(F), F->all(), two_windows());
        CHECK(r.cert.certified());
        CHECK(term_str(*F, r.cech.tot.term(0)) == "T[(5)] x T[(0)]");
        CHECK(term_str(*F, r.cech.tot.term(1)) == "T[(5),(0)]");

        Complex T5 = concentrated(F, {block(*F, {1})});
        Resolution t = pure_injective_resolution(T5, {1}, two_windows());
        CHECK(t.cert.certified());
        CHECK(t.cech.tot.str() == T5.str());

        // cosupport of Q is (0), outside W = {m}
        CHECK_THROWS_AS(pure_injective_resolution(concentrated(F, {block(*F, {0})}), {1}, two_windows()), Error);
    }

    TEST_CASE("Hom from flat modules") {
        auto F = z_fragment({2, 3});
        Ring Z = F->home();
        Complex T2 = concentrated(F, {block(*F, {1})});
        for (int q : {2, 3, 6}) {
            Localizer S = powers_of({ring_int(Z, q)});
            Complex H = hom_from_localization_complex(T2, S);
            long B = enochs_rank(*F, Base::localized(S), 1, 1).value;
            for (const auto& w : two_windows()) CHECK(raw_at(H, 1, w, 0) == std::vector<int>(static_cast<size_t>(B), w.b));
        }
        // Ext^i(Z[1/3], lambda^W Z) = 0 for i > dim W
        Complex L = lambda_w(unit_complex(F), named(*F, {"(0)", "(2)"})).tot;
        Complex H = hom_from_localization_complex(L, powers_of({ring_int(Z, 3)}));
        Certificate c = restrict_certificate(certify_acyclic(H, two_windows()), false, DegreeRange{std::pair{2, kMaxDegreeSpan}});
        CHECK(c.certified());
        for (const auto& w : two_windows())
            for (int pi : {1, 2}) CHECK(inner_at(H, pi, w, 2).empty());
    }

    TEST_CASE("insertion identities") {
        for (int n = 0; n <= 4; ++n)
            for (int width = 1; width <= 2; ++width) CHECK(check_insertion_identities(n, width).empty());
    }
}
