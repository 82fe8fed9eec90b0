#include "ffgs/dieudonne.hpp"
#include "ffgs/error.hpp"
#include "ffgs/iso.hpp"

#include <doctest.h>

#include <cmath>
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

ChainMatrix scalar(const WittRingPtr& R, long long v) {
    return ChainMatrix::from_rows(R, {{R->from_int(v)}});
}

bool iso(const DieudonneModule& a, const DieudonneModule& b) {
    const auto r = module_iso_test(a, b);
    REQUIRE_MESSAGE(r.verdict != IsoVerdict::Indeterminate, r.reason);
    if (r.verdict == IsoVerdict::Isomorphic) {
        REQUIRE(r.witness.has_value());
        CHECK(is_morphism(a, b, *r.witness));
    }
    return r.verdict == IsoVerdict::Isomorphic;
}

void check_relations(const DieudonneModule& m) {
    const auto fv = reduce_rows(m.F() * sigma(m.V(), 1), m.profile());
    const auto vf = reduce_rows(m.V() * sigma(m.F(), -1), m.profile());
    ChainMatrix p(m.ring(), m.rank(), m.rank());
    for (int i = 0; i < m.rank(); ++i)
        p(i, i) = m.ring()->from_int(m.field()->p());
    p = reduce_rows(p, m.profile());
    CHECK(fv == p);
    CHECK(vf == p);
}

/// Every element of W_e(k) whose valuation is at least `v`.
std::vector<WittElem> elements(const WittRing& R, int e, int v) {
    std::vector<WittElem> out;
    const long long q = static_cast<long long>(std::pow(R.p(), R.n()));
    long long count = 1;
    for (int i = 0; i < e; ++i)
        count *= q;
    for (long long idx = 0; idx < count; ++idx) {
        std::vector<FqElement> comps(static_cast<std::size_t>(R.length()));
        long long rest = idx;
        for (int i = 0; i < e; ++i) {
            comps[static_cast<std::size_t>(i)] = R.field()->element(static_cast<std::uint64_t>(rest % q));
            rest /= q;
        }
        const WittElem x = R.from_components(comps);
        if (R.valuation(x) >= v)
            out.push_back(x);
    }
    return out;
}

/// Counts Dieudonne morphisms M -> N by enumerating every W-linear map.
std::pair<long long, long long> brute_force_hom(const DieudonneModule& m, const DieudonneModule& n) {
    const auto R = common_ring(m, n);
    std::vector<std::vector<WittElem>> choices;
    for (int i = 0; i < n.rank(); ++i)
        for (int j = 0; j < m.rank(); ++j) {
            const int ei = n.profile()[static_cast<std::size_t>(i)];
            const int ej = m.profile()[static_cast<std::size_t>(j)];
            choices.push_back(elements(*R, ei, std::max(0, ei - ej)));
        }
    long long morphisms = 0, isos = 0;
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
        ChainMatrix phi(R, n.rank(), m.rank());
        for (std::size_t t = 0; t < pick.size(); ++t)
            phi(static_cast<int>(t) / m.rank(), static_cast<int>(t) % m.rank()) = choices[t][pick[t]];
        if (is_morphism(m, n, phi)) {
            ++morphisms;
            if (profile_length(kernel_between(phi, m.profile(), n.profile()).exps) == 0 &&
                m.length() == n.length())
                ++isos;
        }
        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == choices[k].size())
            pick[k++] = 0;
        if (k == pick.size())
            break;
    }
    return {morphisms, isos};
}

} // namespace

TEST_CASE("construction and validation") {
    auto F2 = Field::make(2, 1);
    auto R = WittRing::get(F2, 1, true);
    auto mu = DieudonneModule::make(F2, {1}, scalar(R, 1), scalar(R, 0));
    CHECK(mu == dm_mu(F2, 1));
    CHECK(dm_length(mu) == 1);
    CHECK(dm_order(mu).exponent == 1);

    auto alpha = DieudonneModule::make(F2, {1}, scalar(R, 0), scalar(R, 0));
    CHECK(alpha == dm_alpha(F2, 1));

    CHECK(code_of([&] { DieudonneModule::make(F2, {1}, scalar(R, 1), scalar(R, 1)); }) ==
          ErrorCode::RelationViolation);
    CHECK(code_of([&] {
              DieudonneModule::make(F2, {1}, SemilinearMap{scalar(R, 1), 0, {1}, {1}},
                                    SemilinearMap{scalar(R, 0), -1, {1}, {1}});
          }) == ErrorCode::TwistViolation);
}

TEST_CASE("length and order") {
    auto F3 = Field::make(3, 1);
    auto F9 = Field::make(3, 2);
    CHECK(dm_length(dm_mu(F3, 2)) == 2);
    CHECK(dm_order(dm_mu(F3, 2)).exponent == 2);
    CHECK(dm_order(dm_mu(F9, 2)).exponent == 2);
    CHECK(dm_length(DieudonneModule::zero(F3)) == 0);
    CHECK(dm_order(DieudonneModule::zero(F3)).exponent == 0);
}

TEST_CASE("atoms satisfy FV = VF = p") {
    for (auto [p, n] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 2}}) {
        auto f = Field::make(p, n);
        for (int a = 1; a <= 3; ++a) {
            check_relations(dm_mu(f, a));
            check_relations(dm_zmod(f, a));
            check_relations(dm_alpha(f, a));
        }
        check_relations(dm_ss_kernel(f));
    }
}

TEST_CASE("duality examples") {
    auto F2 = Field::make(2, 1);
    auto R1 = WittRing::get(F2, 1, true);
    auto R2 = WittRing::get(F2, 2, true);

    auto z = dm_dual(dm_mu(F2, 1));
    CHECK(z.profile() == Profile{1});
    CHECK(z.F() == scalar(R1, 0));
    CHECK(z.V() == scalar(R1, 1));
    CHECK(z == dm_zmod(F2, 1));

    CHECK(dm_dual(dm_alpha(F2, 1)) == dm_alpha(F2, 1));

    auto d2 = dm_dual(dm_mu(F2, 2));
    CHECK(d2.profile() == Profile{2});
    CHECK(d2.F() == scalar(R2, 2));
    CHECK(d2.V() == scalar(R2, 1));
    CHECK(dm_order(d2).exponent == 2);
}

TEST_CASE("duality is an involution") {
    for (auto [p, n] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
        auto f = Field::make(p, n);
        std::vector<DieudonneModule> atoms{dm_mu(f, 1),    dm_mu(f, 2),    dm_zmod(f, 2),
                                           dm_alpha(f, 1), dm_alpha(f, 2), dm_ss_kernel(f)};
        for (const auto& a : atoms)
            CHECK(iso(dm_dual(dm_dual(a)), a));
        std::mt19937_64 rng(1000 + p * 10 + n);
        for (int t = 0; t < 100; ++t) {
            auto m = random_module(f, 5, rng);
            check_relations(m);
            auto dd = dm_dual(dm_dual(m));
            CHECK_MESSAGE(iso(dd, m), to_string(m));
            CHECK(dm_length(dm_dual(m)) == dm_length(m));
        }
    }
}

TEST_CASE("supersingular kernel is self-dual") {
    for (int p : {2, 3, 5}) {
        auto f = Field::make(p, 1);
        CHECK(iso(dm_dual(dm_ss_kernel(f)), dm_ss_kernel(f)));
    }
}

TEST_CASE("word kernels and cokernels") {
    auto F2 = Field::make(2, 1);
    CHECK(iso(dm_word_kernel(dm_mu(F2, 2), Letter::V, 1), dm_mu(F2, 1)));
    CHECK(dm_word_kernel(dm_alpha(F2, 1), Letter::V, 1) == dm_alpha(F2, 1));
    CHECK(dm_word_cokernel(dm_zmod(F2, 1), Letter::V, 1).is_zero());
    CHECK(code_of([&] { dm_word_kernel(dm_mu(F2, 1), Letter::F, 0); }) == ErrorCode::BadParameter);

    std::mt19937_64 rng(7);
    for (int t = 0; t < 30; ++t) {
        auto m = random_module(F2, 5, rng);
        int prev = 0;
        for (int a = 1; a <= 5; ++a) {
            const int len = dm_length(dm_word_kernel(m, Letter::V, a));
            CHECK(len >= prev);
            prev = len;
            CHECK(dm_length(dm_word_kernel(m, Letter::V, a)) ==
                  dm_length(dm_word_cokernel(m, Letter::V, a)));
        }
        CHECK(prev == dm_length(dm_fourway(m)[Cell::ConnectedUnipotent].module) +
                          dm_length(dm_fourway(m)[Cell::ConnectedMultiplicative].module));
    }
}

TEST_CASE("four-way decomposition") {
    auto F2 = Field::make(2, 1);
    auto cell_lengths = [](const DieudonneModule& m) {
        auto s = dm_fourway(m);
        std::vector<int> out;
        for (const auto& c : s.cells)
            out.push_back(dm_length(c.module));
        return out;
    };
    CHECK(cell_lengths(dm_mu(F2, 1)) == std::vector<int>{0, 1, 0, 0});
    CHECK(cell_lengths(dm_alpha(F2, 1)) == std::vector<int>{1, 0, 0, 0});
    auto sum = direct_sum({dm_mu(F2, 1), dm_zmod(F2, 1), dm_alpha(F2, 1)}, F2);
    CHECK(cell_lengths(sum) == std::vector<int>{1, 1, 1, 0});
    CHECK(cell_lengths(dm_zmod(F2, 2)) == std::vector<int>{0, 0, 2, 0});

    std::mt19937_64 rng(11);
    for (auto [p, n] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
        auto f = Field::make(p, n);
        for (int t = 0; t < 25; ++t) {
            auto m = random_module(f, 5, rng);
            auto s = dm_fourway(m);
            std::vector<DieudonneModule> parts;
            for (const auto& c : s.cells) {
                parts.push_back(c.module);
                CHECK(is_morphism(c.module, m, c.embedding));
            }
            CHECK(iso(direct_sum(parts, f), m));
            const int L = std::max(1, m.length());
            const auto& cu = s[Cell::ConnectedUnipotent].module;
            const auto& cm = s[Cell::ConnectedMultiplicative].module;
            const auto& eu = s[Cell::EtaleUnipotent].module;
            CHECK(dm_length(dm_word_kernel(cu, Letter::V, L)) == cu.length());
            CHECK(dm_length(dm_word_kernel(cu, Letter::F, L)) == cu.length());
            CHECK(dm_length(dm_word_kernel(cm, Letter::F, 1)) == 0);
            CHECK(dm_length(dm_word_kernel(eu, Letter::V, 1)) == 0);

            auto d = dm_fourway(dm_dual(m));
            CHECK(d[Cell::ConnectedUnipotent].module.length() == s[Cell::ConnectedUnipotent].module.length());
            CHECK(d[Cell::EtaleUnipotent].module.length() == s[Cell::ConnectedMultiplicative].module.length());
            CHECK(d[Cell::ConnectedMultiplicative].module.length() == s[Cell::EtaleUnipotent].module.length());
            CHECK(d[Cell::EtaleMultiplicative].module.length() == s[Cell::EtaleMultiplicative].module.length());
        }
    }
}

TEST_CASE("exactness checks") {
    auto F2 = Field::make(2, 1);
    auto mu1 = dm_mu(F2, 1);
    auto mu2 = dm_mu(F2, 2);
    auto R1 = mu1.ring();
    auto R2 = mu2.ring();
    auto zero = DieudonneModule::zero(F2);
    auto Z = [&](int r, int c) { return ChainMatrix(R1, r, c); };

    auto rep = dm_exact_check({zero, mu2, mu2, zero}, {Z(1, 0), ChainMatrix::identity(R2, 1), Z(0, 1)});
    CHECK(rep.exact());

    rep = dm_exact_check({zero, mu1, mu1, zero}, {Z(1, 0), Z(1, 1), Z(0, 1)});
    CHECK_FALSE(rep.exact());
    CHECK(rep.defects == std::vector<int>{0, 1, 1, 0});

    rep = dm_exact_check({zero, mu1, mu2, mu2, mu1, zero},
                         {Z(1, 0), scalar(R2, 2), scalar(R2, 2), scalar(R2, 1), Z(0, 1)});
    CHECK(rep.is_complex);
    CHECK(rep.exact());

    CHECK(code_of([&] { dm_exact_check({mu1, mu1}, {Z(2, 1)}); }) == ErrorCode::NotComposable);
    // Z/p -> mu_p by 1 ignores F.
    CHECK(code_of([&] { dm_exact_check({dm_zmod(F2, 1), mu1}, {scalar(R1, 1)}); }) ==
          ErrorCode::NotEquivariant);
}

TEST_CASE("isomorphism test examples") {
    auto F2 = Field::make(2, 1);
    auto m = direct_sum(dm_mu(F2, 1), dm_ss_kernel(F2));
    CHECK(module_iso_test(m, m).verdict == IsoVerdict::Isomorphic);
    CHECK(module_iso_test(dm_mu(F2, 1), dm_alpha(F2, 1)).verdict == IsoVerdict::NotIsomorphic);

    auto split = direct_sum(dm_mu(F2, 1), dm_zmod(F2, 1));
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        auto [g, gi] = random_automorphism(split.ring(), split.profile(), rng);
        CHECK(iso(split, change_basis(split, g, gi)));
    }
    // Height-one modules with F-matrices in different sigma-conjugacy classes.
    auto F4 = Field::make(2, 2);
    CHECK(iso(dm_height_one(F4, {{F4->gen()}}), dm_mu(F4, 1)));
    CHECK_FALSE(iso(direct_sum(dm_alpha(F2, 1), dm_alpha(F2, 1)), dm_alpha(F2, 2)));
    CHECK_FALSE(iso(dm_mu(F2, 2), dm_zmod(F2, 2)));

    IsoBudget tight;
    tight.max_length = 2;
    CHECK(module_iso_test(dm_alpha(F2, 3), change_basis(dm_alpha(F2, 3),
                                                       ChainMatrix::identity(dm_alpha(F2, 3).ring(), 3),
                                                       ChainMatrix::identity(dm_alpha(F2, 3).ring(), 3)),
                          tight)
              .verdict != IsoVerdict::NotIsomorphic);
}

TEST_CASE("Hom modules against brute force") {
    std::mt19937_64 rng(5);
    for (auto [p, n] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
        auto f = Field::make(p, n);
        std::vector<DieudonneModule> small{dm_mu(f, 1), dm_zmod(f, 1), dm_alpha(f, 1), dm_mu(f, 2),
                                           dm_ss_kernel(f)};
        for (int t = 0; t < 3; ++t)
            small.push_back(random_module(f, 2, rng));
        for (const auto& a : small)
            for (const auto& b : small) {
                if (a.rank() * b.rank() * n * std::max(a.ring()->length(), b.ring()->length()) > 8)
                    continue;
                const auto hom = dm_hom(a, b);
                long long size = 1;
                for (int o : hom.orders)
                    for (int i = 0; i < o; ++i)
                        size *= p;
                for (const auto& phi : hom.basis)
                    CHECK(is_morphism(a, b, phi));
                auto [morphisms, isos] = brute_force_hom(a, b);
                CHECK_MESSAGE(size == morphisms, to_string(a), " -> ", to_string(b));
                CHECK((isos > 0) == (module_iso_test(a, b).verdict == IsoVerdict::Isomorphic));
            }
    }
}

TEST_CASE("Hom sizes of atoms") {
    auto hom_size = [](const DieudonneModule& a, const DieudonneModule& b) {
        long long s = 1;
        for (int o : dm_hom(a, b).orders)
            for (int i = 0; i < o; ++i)
                s *= a.field()->p();
        return s;
    };
    auto F4 = Field::make(2, 2);
    auto F3 = Field::make(3, 1);
    // End(mu_p) is the sigma-fixed part F_p; End(alpha_p) is all of k.
    CHECK(hom_size(dm_mu(F4, 1), dm_mu(F4, 1)) == 2);
    CHECK(hom_size(dm_alpha(F4, 1), dm_alpha(F4, 1)) == 4);
    CHECK(hom_size(dm_mu(F3, 2), dm_mu(F3, 2)) == 9);
    CHECK(hom_size(dm_mu(F3, 1), dm_zmod(F3, 1)) == 1);
    CHECK(hom_size(dm_mu(F3, 1), dm_mu(F3, 2)) == 3);
    CHECK(brute_force_hom(dm_mu(F3, 2), dm_mu(F3, 2)) == std::pair<long long, long long>{9, 6});
}
