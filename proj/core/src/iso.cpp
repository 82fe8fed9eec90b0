#include "ffgs/iso.hpp"

#include "ffgs/error.hpp"

#include <algorithm>
#include <functional>

namespace ffgs {

const char* verdict_name(IsoVerdict v) {
    switch (v) {
    case IsoVerdict::Isomorphic:
        return "isomorphic";
    case IsoVerdict::NotIsomorphic:
        return "not-isomorphic";
    case IsoVerdict::Indeterminate:
        return "indeterminate";
    }
    return "?";
}

std::vector<int> word_image_lengths(const DieudonneModule& m, int max_word) {
    std::vector<int> out;
    std::vector<Letter> word;
    std::function<void(int)> rec = [&](int left) {
        if (!word.empty())
            out.push_back(profile_length(semilinear_image(word_map(m, word)).exps));
        if (left == 0)
            return;
        for (Letter l : {Letter::F, Letter::V}) {
            word.push_back(l);
            rec(left - 1);
            word.pop_back();
        }
    };
    rec(max_word);
    return out;
}

HomModule dm_hom(const DieudonneModule& m, const DieudonneModule& n) {
    const auto R = common_ring(m, n);
    const int mm = R->length();
    const int deg = R->n();
    const int rm = m.rank();
    const int rn = n.rank();
    HomModule hom;
    if (rm == 0 || rn == 0)
        return hom;

    const auto zp = WittRing::get(Field::make(m.field()->p(), 1), mm, true);
    const ChainMatrix fm = m.F().with_ring(R), vm = m.V().with_ring(R);
    const ChainMatrix fn = n.F().with_ring(R), vn = n.V().with_ring(R);
    const auto& em = m.profile();
    const auto& en = n.profile();

    auto shift = [&](int i, int j) {
        return std::max(0, en[static_cast<std::size_t>(i)] - em[static_cast<std::size_t>(j)]);
    };
    auto var = [&](int i, int j, int t) { return ((i * rm) + j) * deg + t; };
    std::vector<WittElem> xpow(static_cast<std::size_t>(deg));
    for (int t = 0; t < deg; ++t)
        xpow[static_cast<std::size_t>(t)].c[static_cast<std::size_t>(t)] = 1;

    const int nvars = rn * rm * deg;
    ChainMatrix sys(zp, 2 * nvars, nvars);
    // Adds coeff * s^power(y_{ij}) to equation block `row0` (deg rows), scaled by `scale`.
    auto add_term = [&](int row0, const WittElem& coeff, long power, int i, int j, int scale) {
        for (int t = 0; t < deg; ++t) {
            const WittElem image =
                R->mul_p(R->mul(coeff, R->sigma(xpow[static_cast<std::size_t>(t)], power)), scale);
            for (int u = 0; u < deg; ++u) {
                WittElem& slot = sys(row0 + u, var(i, j, t));
                WittElem c{};
                c.c[0] = image.c[static_cast<std::size_t>(u)];
                slot = zp->add(slot, c);
            }
        }
    };
    for (int i = 0; i < rn; ++i) {
        const int scale = mm - en[static_cast<std::size_t>(i)];
        for (int j = 0; j < rm; ++j) {
            const int rowf = var(i, j, 0);
            const int rowv = nvars + var(i, j, 0);
            for (int k = 0; k < rm; ++k) {
                // (Phi F_M)_ij = Phi_ik (F_M)_kj with Phi_ik = p^s y_ik.
                add_term(rowf, R->mul_p(fm(k, j), shift(i, k)), 0, i, k, scale);
                add_term(rowv, R->mul_p(vm(k, j), shift(i, k)), 0, i, k, scale);
            }
            for (int k = 0; k < rn; ++k) {
                // (F_N sigma(Phi))_ij = (F_N)_ik p^s sigma(y_kj).
                add_term(rowf, R->neg(R->mul_p(fn(i, k), shift(k, j))), 1, k, j, scale);
                add_term(rowv, R->neg(R->mul_p(vn(i, k), shift(k, j))), -1, k, j, scale);
            }
        }
    }

    Profile yprof(static_cast<std::size_t>(nvars));
    for (int i = 0; i < rn; ++i)
        for (int j = 0; j < rm; ++j)
            for (int t = 0; t < deg; ++t)
                yprof[static_cast<std::size_t>(var(i, j, t))] =
                    std::min(en[static_cast<std::size_t>(i)], em[static_cast<std::size_t>(j)]);

    const Submodule h = submodule_span(matrix_kernel(sys), yprof);
    for (std::size_t g = 0; g < h.exps.size(); ++g) {
        ChainMatrix phi(R, rn, rm);
        for (int i = 0; i < rn; ++i)
            for (int j = 0; j < rm; ++j) {
                WittElem y{};
                for (int t = 0; t < deg; ++t)
                    y.c[static_cast<std::size_t>(t)] = h.basis(var(i, j, t), static_cast<int>(g)).c[0];
                phi(i, j) = R->reduce(R->mul_p(y, shift(i, j)), en[static_cast<std::size_t>(i)]);
            }
        hom.basis.push_back(phi);
        hom.orders.push_back(h.exps[g]);
    }
    return hom;
}

namespace {

int rank_over_field(const Field& f, std::vector<std::vector<FqElement>> a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (!f.is_zero(a[r][c])) {
                piv = r;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(a[rank], a[piv]);
        const FqElement inv = f.inv(a[rank][c]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || f.is_zero(a[r][c]))
                continue;
            const FqElement s = f.mul(a[r][c], inv);
            for (int k = c; k < cols; ++k)
                a[r][k] = f.sub(a[r][k], f.mul(s, a[rank][k]));
        }
        ++rank;
    }
    return rank;
}

} // namespace

IsoResult module_iso_test(const DieudonneModule& m, const DieudonneModule& n,
                          const IsoBudget& budget) {
    IsoResult res;
    if (!same_field(m.field(), n.field())) {
        res.verdict = IsoVerdict::NotIsomorphic;
        res.reason = "different base fields";
        return res;
    }
    if (m == n) {
        res.verdict = IsoVerdict::Isomorphic;
        res.witness = ChainMatrix::identity(m.ring(), m.rank());
        res.reason = "identical presentations";
        return res;
    }
    Profile pm = m.profile(), pn = n.profile();
    std::sort(pm.begin(), pm.end());
    std::sort(pn.begin(), pn.end());
    if (pm != pn) {
        res.verdict = IsoVerdict::NotIsomorphic;
        res.reason = "different W-module structure";
        return res;
    }
    if (m.length() > budget.max_length) {
        res.reason = "length above the search bound";
        return res;
    }
    if (word_image_lengths(m) != word_image_lengths(n)) {
        res.verdict = IsoVerdict::NotIsomorphic;
        res.reason = "different F/V word ranks";
        return res;
    }

    const HomModule hom = dm_hom(m, n);
    const auto& f = *m.field();
    const int p = f.p();
    const int rn = n.rank();
    const int rm = m.rank();
    const int g = static_cast<int>(hom.basis.size());
    std::vector<std::vector<std::vector<FqElement>>> residues;
    for (const auto& phi : hom.basis) {
        std::vector<std::vector<FqElement>> r(static_cast<std::size_t>(rn),
                                              std::vector<FqElement>(static_cast<std::size_t>(rm)));
        for (int i = 0; i < rn; ++i)
            for (int j = 0; j < rm; ++j)
                r[i][j] = phi.ring()->residue(phi(i, j));
        residues.push_back(std::move(r));
    }
    auto try_coeffs = [&](const std::vector<int>& a) {
        std::vector<std::vector<FqElement>> acc(static_cast<std::size_t>(rn),
                                                std::vector<FqElement>(static_cast<std::size_t>(rm)));
        for (int t = 0; t < g; ++t) {
            if (!a[static_cast<std::size_t>(t)])
                continue;
            const FqElement c = f.from_int(a[static_cast<std::size_t>(t)]);
            for (int i = 0; i < rn; ++i)
                for (int j = 0; j < rm; ++j)
                    acc[i][j] = f.add(acc[i][j], f.mul(c, residues[t][i][j]));
        }
        if (rank_over_field(f, acc) != rn)
            return false;
        ChainMatrix phi(hom.basis.empty() ? m.ring() : hom.basis[0].ring(), rn, rm);
        for (int t = 0; t < g; ++t)
            if (a[static_cast<std::size_t>(t)])
                phi = phi + scaled(phi.ring()->from_int(a[static_cast<std::size_t>(t)]),
                                   hom.basis[static_cast<std::size_t>(t)]);
        res.verdict = IsoVerdict::Isomorphic;
        res.witness = reduce_rows(phi, n.profile());
        return true;
    };

    if (rn == 0) {
        res.verdict = IsoVerdict::Isomorphic;
        res.witness = ChainMatrix(m.ring(), 0, 0);
        return res;
    }

    long double total = 1;
    for (int t = 0; t < g; ++t)
        total *= p;
    std::vector<int> a(static_cast<std::size_t>(g), 0);
    if (total <= static_cast<long double>(budget.max_enumeration)) {
        while (true) {
            if (try_coeffs(a)) {
                res.reason = "isomorphism found by enumeration";
                return res;
            }
            int k = 0;
            while (k < g && ++a[static_cast<std::size_t>(k)] == p)
                a[static_cast<std::size_t>(k++)] = 0;
            if (k == g)
                break;
        }
        res.verdict = IsoVerdict::NotIsomorphic;
        res.reason = "no morphism in Hom_D(M, N) is invertible";
        return res;
    }
    std::mt19937_64 rng(budget.seed);
    std::uniform_int_distribution<int> digit(0, p - 1);
    for (int s = 0; s < budget.samples; ++s) {
        for (auto& x : a)
            x = digit(rng);
        if (try_coeffs(a)) {
            res.reason = "isomorphism found by sampling";
            return res;
        }
    }
    res.verdict = IsoVerdict::Indeterminate;
    res.reason = "Hom_D(M, N) too large to enumerate and sampling found no isomorphism";
    return res;
}

} // namespace ffgs
