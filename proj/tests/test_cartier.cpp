#include "ffgs/cartier.hpp"
#include "ffgs/error.hpp"
#include "ffgs/iso.hpp"

#include <doctest.h>

#include <random>

using namespace ffgs;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::Precondition;
}

bool iso(const DieudonneModule& a, const DieudonneModule& b) {
    const auto r = module_iso_test(a, b);
    REQUIRE_MESSAGE(r.verdict != IsoVerdict::Indeterminate, r.reason);
    return r.verdict == IsoVerdict::Isomorphic;
}

CartierModule single(const FieldPtr& f, const CartierSummand& s) { return {f, {s}, 6, 6}; }

ChainMatrix random_unit_matrix(const FieldPtr& f, int r, int m, std::mt19937_64& rng) {
    auto R = WittRing::get(f, m, true);
    while (true) {
        ChainMatrix u(R, r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                u(i, j) = R->random(rng);
        const auto d = elementary_divisors(u.with_ring(WittRing::get(f, 1, true)));
        if (std::all_of(d.begin(), d.end(), [](int e) { return e == 0; }))
            return u;
    }
}

} // namespace

TEST_CASE("truncation closed forms") {
    auto F2 = Field::make(2, 1);
    auto add = cm_trunc(single(F2, CartierSummand::make_additive(1)), 3);
    CHECK(add == dm_alpha(F2, 3));
    CHECK(add.F().is_zero());

    auto unit = cm_trunc(single(F2, CartierSummand::make_unit(F2, 1, 6)), 2);
    CHECK(unit == dm_mu(F2, 2));

    auto formal = cm_trunc(single(F2, CartierSummand::make_formal(1)), 2);
    CHECK(formal.profile() == Profile{1, 1});
    CHECK(iso(formal, dm_ss_kernel(F2)));

    auto fin = cm_trunc(single(F2, CartierSummand::make_finite(dm_zmod(F2, 2))), 4);
    CHECK(fin == dm_zmod(F2, 2));

    CHECK(code_of([&] { cm_trunc(single(F2, CartierSummand::make_additive(1)), 7); }) ==
          ErrorCode::PrecisionExceeded);
    CartierModule low{F2, {CartierSummand::make_unit(F2, 1, 3)}, 6, 3};
    CHECK(code_of([&] { cm_trunc(low, 4); }) == ErrorCode::PrecisionExceeded);
    CHECK(code_of([&] { cm_validate(single(F2, CartierSummand::make_formal(0))); }) ==
          ErrorCode::BadParameter);
    auto R = WittRing::get(F2, 6, true);
    CHECK(code_of([&] {
              cm_validate(single(F2, CartierSummand::make_unit(ChainMatrix::from_rows(R, {{R->from_int(2)}}))));
          }) == ErrorCode::BadParameter);
}

TEST_CASE("formal truncations against the rewriting rules") {
    // F M = V^h M, so coker F has length min(h, N); coker V has length 1;
    // coker p = M / V^(h+1) M has length min(h + 1, N); M[V^n] has length n.
    for (auto [p, n] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
        auto f = Field::make(p, n);
        for (int h = 1; h <= 3; ++h)
            for (int N = 1; N <= 6; ++N) {
                auto t = cm_trunc(single(f, CartierSummand::make_formal(h)), N);
                CHECK(t.length() == N);
                CHECK(endo_cokernel(t, {Endo::Kind::FPow, 1}).length() == std::min(h, N));
                CHECK(endo_cokernel(t, {Endo::Kind::VPow, 1}).length() == 1);
                CHECK(endo_cokernel(t, {Endo::Kind::MultP, 1}).length() == std::min(h + 1, N));
                for (int k = 1; k <= N; ++k)
                    CHECK(dm_word_kernel(t, Letter::V, k).length() == k);
            }
    }
}

TEST_CASE("truncation towers are compatible") {
    std::mt19937_64 rng(41);
    for (auto [p, n] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
        auto f = Field::make(p, n);
        std::vector<CartierSummand> kinds{
            CartierSummand::make_unit(random_unit_matrix(f, 1, 6, rng)),
            CartierSummand::make_additive(1),
            CartierSummand::make_formal(1),
            CartierSummand::make_formal(2),
            CartierSummand::make_finite(dm_alpha(f, 2)),
        };
        for (const auto& s : kinds)
            for (int N = 1; N <= 4; ++N) {
                auto m = single(f, s);
                auto lower = cm_trunc(m, N);
                auto upper = cm_trunc(m, N + 1);
                CHECK(iso(dm_word_cokernel(upper, Letter::V, N), dm_word_cokernel(lower, Letter::V, N)));
                if (s.kind != CartierSummand::Kind::Finite)
                    CHECK(iso(dm_word_cokernel(upper, Letter::V, N), lower));
            }
    }
}

TEST_CASE("unit summands") {
    // (W^r, U sigma) is split multiplicative exactly when U = g sigma(g)^-1.
    std::mt19937_64 rng(43);
    for (auto [p, n] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
        auto f = Field::make(p, n);
        for (int t = 0; t < 5; ++t) {
            auto g = random_unit_matrix(f, 2, 6, rng);
            auto gi = *solve(g, ChainMatrix::identity(g.ring(), 2));
            auto m = cm_trunc(single(f, CartierSummand::make_unit(g * sigma(gi, 1))), 2);
            CHECK(iso(m, direct_sum(dm_mu(f, 2), dm_mu(f, 2))));
        }
    }
    // Over F_2, sigma is trivial and a unipotent U gives a twisted form.
    auto F2 = Field::make(2, 1);
    auto R = WittRing::get(F2, 6, true);
    auto u = ChainMatrix::from_rows(R, {{R->one(), R->one()}, {R->zero(), R->one()}});
    auto twisted = cm_trunc(single(F2, CartierSummand::make_unit(u)), 2);
    CHECK_FALSE(iso(twisted, direct_sum(dm_mu(F2, 2), dm_mu(F2, 2))));
    CHECK(dm_fourway(twisted)[Cell::ConnectedMultiplicative].module.length() == 4);
}

TEST_CASE("V-torsion") {
    auto F3 = Field::make(3, 1);
    CHECK(cm_v_torsion(single(F3, CartierSummand::make_additive(1))).is_zero());
    CHECK(cm_v_torsion(single(F3, CartierSummand::make_finite(dm_mu(F3, 1)))) == dm_mu(F3, 1));
    CartierModule m{F3, {CartierSummand::make_unit(F3, 1, 6), CartierSummand::make_finite(dm_alpha(F3, 1))}, 6, 6};
    CHECK(iso(cm_v_torsion(m), dm_alpha(F3, 1)));
    auto clean = cm_mod_v_torsion(m);
    REQUIRE(clean.summands.size() == 1);
    CHECK(clean.summands[0].kind == CartierSummand::Kind::Unit);

    CartierModule mixed{F3, {CartierSummand::make_finite(direct_sum(dm_mu(F3, 1), dm_zmod(F3, 1)))}, 6, 6};
    CHECK(iso(cm_v_torsion(mixed), dm_mu(F3, 1)));
    auto rest = cm_mod_v_torsion(mixed);
    REQUIRE(rest.summands.size() == 1);
    CHECK(iso(*rest.summands[0].finite, dm_zmod(F3, 1)));
}

TEST_CASE("connected Dieudonne modules") {
    auto F2 = Field::make(2, 1);
    auto u = cm_connected_dm(single(F2, CartierSummand::make_unit(F2, 1, 6)));
    CHECK(u.multiplicative_corank == 1);
    CHECK(u.unipotent_dimension == 0);
    auto a = cm_connected_dm(single(F2, CartierSummand::make_additive(1)));
    CHECK(a.unipotent_dimension == 1);
    auto fm = cm_connected_dm(single(F2, CartierSummand::make_formal(1)));
    CHECK(fm.formal_dimension == 1);
    CHECK(fm.formal_heights == std::vector<int>{2});
    CHECK(fm.pieces[0].label == "1-dimensional formal group of height 2");
    for (int N = 1; N <= 6; ++N)
        CHECK(cm_trunc(single(F2, CartierSummand::make_formal(1)), N).length() == N);
    auto fin = cm_connected_dm(single(F2, CartierSummand::make_finite(dm_alpha(F2, 2))));
    CHECK(fin.finite_leftover == 2);
    CHECK_FALSE(fin.v_torsion_free);

    auto unit = single(F2, CartierSummand::make_unit(F2, 1, 6));
    for (int n = 1; n <= 3; ++n)
        CHECK(iso(cm_connected_level(unit, n), cm_tc_n(unit, n)));
}

TEST_CASE("TC_n") {
    auto F2 = Field::make(2, 1);
    auto unit = single(F2, CartierSummand::make_unit(F2, 1, 6));
    CHECK(iso(cm_tc_n(unit, 1), dm_mu(F2, 1)));
    CHECK(iso(cm_tc_n(single(F2, CartierSummand::make_additive(1)), 2), dm_alpha(F2, 2)));
    CHECK(code_of([&] { cm_tc_n(unit, 0); }) == ErrorCode::Precondition);
    CHECK(code_of([&] { cm_tc_n(unit, 6); }) == ErrorCode::PrecisionExceeded);
    CHECK(code_of([&] { cm_tc_n(unit, 5); }) == ErrorCode::UnstableTruncation);
    for (int n = 1; n <= 3; ++n)
        for (const auto& s : {CartierSummand::make_additive(2), CartierSummand::make_formal(2, 2),
                              CartierSummand::make_formal(3)})
            CHECK(cm_tc_n(single(F2, s), n).length() == n * s.rank);

    auto f = Field::make(3, 1);
    CartierModule all{f,
                      {CartierSummand::make_unit(f, 1, 6), CartierSummand::make_additive(1),
                       CartierSummand::make_formal(1), CartierSummand::make_formal(2)},
                      6, 6};
    for (int n = 1; n <= 2; ++n) {
        auto tc = cm_tc_n(all, n);
        std::vector<DieudonneModule> parts;
        for (const auto& s : all.summands)
            parts.push_back(cm_tc_n(single(f, s), n));
        CHECK(iso(tc, direct_sum(parts, f)));
        // V is injective on these summands, so DM[V^n] = M / V^n.
        CHECK(iso(tc, cm_connected_level(all, n)));
    }
}

TEST_CASE("two-term complexes") {
    auto F2 = Field::make(2, 1);
    CartierModule zero{F2, {}, 6, 6};
    auto unit = single(F2, CartierSummand::make_unit(F2, 1, 6));
    auto add = single(F2, CartierSummand::make_additive(1));

    auto h = cm_complex_h({Endo::Kind::VPow, 1}, zero, unit);
    CHECK(h.coker.is_zero());
    CHECK(iso(h.ker, dm_mu(F2, 1)));
    REQUIRE(h.assembled.has_value());
    CHECK(h.canonical);

    h = cm_complex_h({Endo::Kind::FPow, 1}, zero, add);
    CHECK(h.ker == cm_trunc(add, 6));

    h = cm_complex_h({Endo::Kind::MultP, 1}, unit, unit);
    CHECK(iso(h.coker, dm_mu(F2, 1)));
    CHECK(iso(h.ker, dm_mu(F2, 1)));
    CHECK_FALSE(h.canonical);
    CHECK_FALSE(h.assembled.has_value());
    h = cm_complex_h({Endo::Kind::MultP, 1}, unit, unit, ExtensionPolicy::Split);
    REQUIRE(h.assembled.has_value());
    CHECK(h.assembled->length() == 2);
}
