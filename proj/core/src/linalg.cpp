#include "ffgs/linalg.hpp"

#include "ffgs/error.hpp"

#include <algorithm>
#include <numeric>

namespace ffgs {

int profile_length(const Profile& profile) {
    return std::accumulate(profile.begin(), profile.end(), 0);
}

ChainMatrix reduce_rows(const ChainMatrix& a, const Profile& profile) {
    require(static_cast<int>(profile.size()) == a.rows(), ErrorCode::ShapeMismatch,
            "profile does not match the row count");
    ChainMatrix r = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r(i, j) = a.ring()->reduce(a(i, j), profile[static_cast<std::size_t>(i)]);
    return r;
}

ChainMatrix relation_matrix(const WittRingPtr& ring, const Profile& profile) {
    std::vector<WittElem> d;
    for (int e : profile)
        d.push_back(ring->mul_p(ring->one(), e));
    return ChainMatrix::diagonal(ring, d);
}

SmithForm smith_form(const ChainMatrix& a) {
    const auto& R = *a.ring();
    const int m = R.length();
    const int r = a.rows();
    const int c = a.cols();
    SmithForm s{ChainMatrix::identity(a.ring(), r), ChainMatrix::identity(a.ring(), r),
                ChainMatrix::identity(a.ring(), c), {}};
    ChainMatrix b = a;
    const int k = std::min(r, c);
    for (int t = 0; t < k; ++t) {
        int bi = -1, bj = -1, best = m;
        for (int i = t; i < r && best > 0; ++i)
            for (int j = t; j < c; ++j) {
                const int v = R.valuation(b(i, j));
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                    if (v == 0)
                        break;
                }
            }
        if (best == m) {
            s.d.resize(static_cast<std::size_t>(k), m);
            break;
        }
        b.swap_rows(t, bi);
        s.U.swap_rows(t, bi);
        s.U_inv.swap_cols(t, bi);
        b.swap_cols(t, bj);
        s.V.swap_cols(t, bj);

        const WittElem u = R.div_p(b(t, t), best);
        const WittElem u_inv = R.unit_inverse(u);
        b.scale_row(t, u_inv);
        s.U.scale_row(t, u_inv);
        s.U_inv.scale_col(t, u);

        for (int i = t + 1; i < r; ++i) {
            if (R.is_zero(b(i, t)))
                continue;
            const WittElem q = R.div_p(b(i, t), best);
            b.add_row_multiple(i, t, R.neg(q));
            s.U.add_row_multiple(i, t, R.neg(q));
            s.U_inv.add_col_multiple(t, i, q);
        }
        for (int j = t + 1; j < c; ++j) {
            if (R.is_zero(b(t, j)))
                continue;
            const WittElem q = R.div_p(b(t, j), best);
            b.add_col_multiple(j, t, R.neg(q));
            s.V.add_col_multiple(j, t, R.neg(q));
        }
        s.d.push_back(best);
    }
    return s;
}

std::vector<int> elementary_divisors(const ChainMatrix& a) { return smith_form(a).d; }

ChainMatrix howell_form(const ChainMatrix& a) {
    const auto& R = *a.ring();
    const int m = R.length();
    const int c = a.cols();
    std::vector<std::vector<WittElem>> rows;
    for (int i = 0; i < a.rows(); ++i) {
        std::vector<WittElem> row(static_cast<std::size_t>(c));
        for (int j = 0; j < c; ++j)
            row[static_cast<std::size_t>(j)] = a(i, j);
        rows.push_back(std::move(row));
    }
    auto axpy = [&](std::vector<WittElem>& y, const WittElem& s, const std::vector<WittElem>& x) {
        for (int j = 0; j < c; ++j)
            y[static_cast<std::size_t>(j)] =
                R.add(y[static_cast<std::size_t>(j)], R.mul(s, x[static_cast<std::size_t>(j)]));
    };

    std::vector<std::pair<int, int>> pivots; // (column, valuation)
    std::size_t k = 0;
    for (int col = 0; col < c; ++col) {
        std::size_t best_row = rows.size();
        int best = m;
        for (std::size_t i = k; i < rows.size(); ++i) {
            const int v = R.valuation(rows[i][static_cast<std::size_t>(col)]);
            if (v < best) {
                best = v;
                best_row = i;
            }
        }
        if (best == m)
            continue;
        std::swap(rows[k], rows[best_row]);
        const WittElem u_inv = R.unit_inverse(R.div_p(rows[k][static_cast<std::size_t>(col)], best));
        for (auto& e : rows[k])
            e = R.mul(u_inv, e);
        for (std::size_t i = k + 1; i < rows.size(); ++i) {
            const WittElem& e = rows[i][static_cast<std::size_t>(col)];
            if (!R.is_zero(e))
                axpy(rows[i], R.neg(R.div_p(e, best)), rows[k]);
        }
        if (best > 0) {
            std::vector<WittElem> sat = rows[k];
            for (auto& e : sat)
                e = R.mul_p(e, m - best);
            rows.push_back(std::move(sat));
        }
        pivots.emplace_back(col, best);
        ++k;
    }
    for (std::size_t i = 0; i < k; ++i) {
        const auto [col, v] = pivots[i];
        for (std::size_t h = 0; h < i; ++h) {
            const WittElem q = R.quotient(rows[h][static_cast<std::size_t>(col)], v);
            if (!R.is_zero(q))
                axpy(rows[h], R.neg(q), rows[i]);
        }
    }
    ChainMatrix out(a.ring(), static_cast<int>(k), c);
    for (std::size_t i = 0; i < k; ++i)
        for (int j = 0; j < c; ++j)
            out(static_cast<int>(i), j) = rows[i][static_cast<std::size_t>(j)];
    return out;
}

ChainMatrix matrix_kernel(const ChainMatrix& a) {
    const auto& R = *a.ring();
    const int m = R.length();
    const auto s = smith_form(a);
    const int c = a.cols();
    std::vector<int> cols;
    std::vector<int> shifts;
    for (int i = 0; i < c; ++i) {
        const int d = i < static_cast<int>(s.d.size()) ? s.d[static_cast<std::size_t>(i)] : m;
        if (d == 0)
            continue;
        cols.push_back(i);
        shifts.push_back(m - d);
    }
    ChainMatrix gens(a.ring(), c, static_cast<int>(cols.size()));
    for (std::size_t g = 0; g < cols.size(); ++g)
        for (int i = 0; i < c; ++i)
            gens(i, static_cast<int>(g)) = R.mul_p(s.V(i, cols[g]), shifts[g]);
    return gens;
}

std::optional<ChainMatrix> solve(const ChainMatrix& a, const ChainMatrix& b) {
    require(a.rows() == b.rows(), ErrorCode::ShapeMismatch, "right-hand side shape mismatch");
    const auto& R = *a.ring();
    const int m = R.length();
    const auto s = smith_form(a);
    const ChainMatrix ub = s.U * b;
    ChainMatrix y(a.ring(), a.cols(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        const int d = i < static_cast<int>(s.d.size()) ? s.d[static_cast<std::size_t>(i)] : m;
        for (int j = 0; j < b.cols(); ++j) {
            if (R.valuation(ub(i, j)) < d)
                return std::nullopt;
            if (d < m)
                y(i, j) = R.div_p(ub(i, j), d);
        }
    }
    return s.V * y;
}

namespace {

void sort_descending(Profile& exps, ChainMatrix& cols_of, ChainMatrix* rows_of) {
    std::vector<int> order(exps.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return exps[static_cast<std::size_t>(x)] > exps[static_cast<std::size_t>(y)];
    });
    Profile e;
    ChainMatrix c(cols_of.ring(), cols_of.rows(), cols_of.cols());
    ChainMatrix r;
    if (rows_of)
        r = ChainMatrix(rows_of->ring(), rows_of->rows(), rows_of->cols());
    for (std::size_t t = 0; t < order.size(); ++t) {
        const int o = order[t];
        e.push_back(exps[static_cast<std::size_t>(o)]);
        for (int i = 0; i < cols_of.rows(); ++i)
            c(i, static_cast<int>(t)) = cols_of(i, o);
        if (rows_of)
            for (int j = 0; j < rows_of->cols(); ++j)
                r(static_cast<int>(t), j) = (*rows_of)(o, j);
    }
    exps = std::move(e);
    cols_of = std::move(c);
    if (rows_of)
        *rows_of = std::move(r);
}

} // namespace

Submodule submodule_span(const ChainMatrix& gens, const Profile& ambient) {
    const auto& ring = gens.ring();
    const int m = ring->length();
    const int k = gens.cols();
    require(gens.rows() == static_cast<int>(ambient.size()), ErrorCode::ShapeMismatch,
            "generators do not match the ambient profile");
    const ChainMatrix ker = matrix_kernel(hstack(gens, relation_matrix(ring, ambient)));
    const ChainMatrix relations = ker.block(0, 0, k, ker.cols());
    const auto s = smith_form(relations);
    Profile exps;
    std::vector<int> keep;
    for (int i = 0; i < k; ++i) {
        const int c = i < static_cast<int>(s.d.size()) ? s.d[static_cast<std::size_t>(i)] : m;
        if (c == 0)
            continue;
        exps.push_back(c);
        keep.push_back(i);
    }
    const ChainMatrix images = gens * s.U_inv;
    ChainMatrix basis(ring, gens.rows(), static_cast<int>(keep.size()));
    for (std::size_t t = 0; t < keep.size(); ++t)
        for (int i = 0; i < gens.rows(); ++i)
            basis(i, static_cast<int>(t)) = images(i, keep[t]);
    basis = reduce_rows(basis, ambient);
    sort_descending(exps, basis, nullptr);
    return {exps, basis};
}

Quotient quotient_by(const ChainMatrix& gens, const Profile& ambient) {
    const auto& ring = gens.ring();
    const int r = static_cast<int>(ambient.size());
    require(gens.rows() == r, ErrorCode::ShapeMismatch,
            "generators do not match the ambient profile");
    const auto s = smith_form(hstack(relation_matrix(ring, ambient), gens));
    Profile exps;
    std::vector<int> keep;
    for (int i = 0; i < r; ++i) {
        const int d = s.d[static_cast<std::size_t>(i)];
        if (d == 0)
            continue;
        exps.push_back(d);
        keep.push_back(i);
    }
    const int q = static_cast<int>(keep.size());
    ChainMatrix proj(ring, q, r);
    ChainMatrix lift(ring, r, q);
    for (int t = 0; t < q; ++t)
        for (int i = 0; i < r; ++i) {
            proj(t, i) = s.U(keep[static_cast<std::size_t>(t)], i);
            lift(i, t) = s.U_inv(i, keep[static_cast<std::size_t>(t)]);
        }
    sort_descending(exps, lift, &proj);
    return {exps, reduce_rows(proj, exps), reduce_rows(lift, ambient)};
}

namespace {

std::optional<ChainMatrix> coordinates_opt(const Submodule& sub, const Profile& ambient,
                                           const ChainMatrix& vectors) {
    const auto& ring = vectors.ring();
    const int g = static_cast<int>(sub.exps.size());
    auto x = solve(hstack(sub.basis, relation_matrix(ring, ambient)), vectors);
    if (!x)
        return std::nullopt;
    return reduce_rows(x->block(0, 0, g, vectors.cols()), sub.exps);
}

} // namespace

ChainMatrix coordinates_in(const Submodule& sub, const Profile& ambient,
                           const ChainMatrix& vectors) {
    auto x = coordinates_opt(sub, ambient, vectors);
    require(x.has_value(), ErrorCode::BadParameter, "vector outside the submodule");
    return *x;
}

bool in_span(const Submodule& sub, const Profile& ambient, const ChainMatrix& vectors) {
    return coordinates_opt(sub, ambient, vectors).has_value();
}

void check_semilinear(const SemilinearMap& t) {
    require(t.matrix.rows() == static_cast<int>(t.target.size()) &&
                t.matrix.cols() == static_cast<int>(t.source.size()),
            ErrorCode::ShapeMismatch, "semilinear map shape does not match its profiles");
    const auto& R = *t.matrix.ring();
    for (int e : t.source)
        require(e >= 1 && e <= R.length(), ErrorCode::BadParameter, "profile exponent out of range");
    for (int e : t.target)
        require(e >= 1 && e <= R.length(), ErrorCode::BadParameter, "profile exponent out of range");
    for (int i = 0; i < t.matrix.rows(); ++i)
        for (int j = 0; j < t.matrix.cols(); ++j)
            require(R.valuation(t.matrix(i, j)) + t.source[static_cast<std::size_t>(j)] >=
                        t.target[static_cast<std::size_t>(i)],
                    ErrorCode::AnnihilatorViolation,
                    "column " + std::to_string(j) + " does not respect the annihilators");
}

ChainMatrix apply(const SemilinearMap& t, const ChainMatrix& vectors) {
    return reduce_rows(t.matrix * sigma(vectors, t.twist), t.target);
}

Submodule kernel_between(const ChainMatrix& a, const Profile& source, const Profile& target) {
    const ChainMatrix ker = matrix_kernel(hstack(a, relation_matrix(a.ring(), target)));
    return submodule_span(ker.block(0, 0, a.cols(), ker.cols()), source);
}

Submodule semilinear_kernel(const SemilinearMap& t) {
    check_semilinear(t);
    Submodule k = kernel_between(t.matrix, t.source, t.target);
    k.basis = sigma(k.basis, -t.twist);
    return k;
}

Submodule semilinear_image(const SemilinearMap& t) {
    check_semilinear(t);
    return submodule_span(t.matrix, t.target);
}

Quotient semilinear_cokernel(const SemilinearMap& t) {
    check_semilinear(t);
    return quotient_by(t.matrix, t.target);
}

} // namespace ffgs
