#include "ffgs/dieudonne.hpp"

#include "ffgs/error.hpp"

#include <algorithm>
#include <sstream>

namespace ffgs {

namespace {

WittRingPtr ring_for(const FieldPtr& field, const Profile& profile) {
    int m = 1;
    for (int e : profile)
        m = std::max(m, e);
    return WittRing::get(field, m, true);
}

ChainMatrix p_identity(const WittRingPtr& ring, int n) {
    return scaled(ring->from_int(ring->p()), ChainMatrix::identity(ring, n));
}

} // namespace

DieudonneModule DieudonneModule::make(const FieldPtr& field, const Profile& profile,
                                      const SemilinearMap& F, const SemilinearMap& V) {
    require(F.twist == 1, ErrorCode::TwistViolation, "F must be sigma-linear (twist +1)");
    require(V.twist == -1, ErrorCode::TwistViolation, "V must be sigma^-1-linear (twist -1)");
    for (int e : profile)
        require(e >= 1, ErrorCode::BadParameter, "profile exponents must be positive");
    const int r = static_cast<int>(profile.size());
    require(F.matrix.rows() == r && F.matrix.cols() == r && V.matrix.rows() == r &&
                V.matrix.cols() == r,
            ErrorCode::ShapeMismatch, "F and V must be square of the profile size");
    if (r > 0)
        require(same_field(F.matrix.ring()->field(), field) &&
                    same_field(V.matrix.ring()->field(), field),
                ErrorCode::FieldMismatch, "matrices over a different field");

    DieudonneModule out;
    out.field_ = field;
    out.ring_ = ring_for(field, profile);
    out.profile_ = profile;
    out.F_ = r ? F.matrix.with_ring(out.ring_) : ChainMatrix(out.ring_, 0, 0);
    out.V_ = r ? V.matrix.with_ring(out.ring_) : ChainMatrix(out.ring_, 0, 0);
    check_semilinear(out.F_map());
    check_semilinear(out.V_map());
    out.F_ = reduce_rows(out.F_, profile);
    out.V_ = reduce_rows(out.V_, profile);

    const ChainMatrix pI = reduce_rows(p_identity(out.ring_, r), profile);
    require(reduce_rows(out.F_ * sigma(out.V_, 1), profile) == pI, ErrorCode::RelationViolation,
            "FV != p");
    require(reduce_rows(out.V_ * sigma(out.F_, -1), profile) == pI, ErrorCode::RelationViolation,
            "VF != p");
    return out;
}

DieudonneModule DieudonneModule::make(const FieldPtr& field, const Profile& profile,
                                      const ChainMatrix& F, const ChainMatrix& V) {
    return make(field, profile, SemilinearMap{F, 1, profile, profile},
                SemilinearMap{V, -1, profile, profile});
}

DieudonneModule DieudonneModule::zero(const FieldPtr& field) {
    auto ring = WittRing::get(field, 1, true);
    return make(field, {}, ChainMatrix(ring, 0, 0), ChainMatrix(ring, 0, 0));
}

bool operator==(const DieudonneModule& a, const DieudonneModule& b) {
    return same_field(a.field_, b.field_) && a.profile_ == b.profile_ && a.F_ == b.F_ &&
           a.V_ == b.V_;
}

WittRingPtr common_ring(const DieudonneModule& a, const DieudonneModule& b) {
    require(same_field(a.field(), b.field()), ErrorCode::FieldMismatch,
            "modules over different fields");
    return a.ring()->length() >= b.ring()->length() ? a.ring() : b.ring();
}

int dm_length(const DieudonneModule& m) { return m.length(); }

GroupOrder dm_order(const DieudonneModule& m) {
    return {m.field()->p(), static_cast<long>(m.length())};
}

DieudonneModule direct_sum(const DieudonneModule& a, const DieudonneModule& b) {
    auto R = common_ring(a, b);
    Profile prof = a.profile();
    prof.insert(prof.end(), b.profile().begin(), b.profile().end());
    return DieudonneModule::make(a.field(), prof,
                                 block_diagonal(a.F().with_ring(R), b.F().with_ring(R)),
                                 block_diagonal(a.V().with_ring(R), b.V().with_ring(R)));
}

DieudonneModule direct_sum(const std::vector<DieudonneModule>& parts, const FieldPtr& field) {
    DieudonneModule acc = DieudonneModule::zero(field);
    for (const auto& p : parts)
        acc = direct_sum(acc, p);
    return acc;
}

DieudonneModule change_basis(const DieudonneModule& m, const ChainMatrix& g,
                             const ChainMatrix& g_inv) {
    const auto& R = m.ring();
    const ChainMatrix gg = g.with_ring(R);
    const ChainMatrix gi = g_inv.with_ring(R);
    require(reduce_rows(gi * gg, m.profile()) ==
                reduce_rows(ChainMatrix::identity(R, m.rank()), m.profile()),
            ErrorCode::BadParameter, "change of basis is not invertible");
    return DieudonneModule::make(m.field(), m.profile(), gi * m.F() * sigma(gg, 1),
                                 gi * m.V() * sigma(gg, -1));
}

DieudonneModule dm_dual(const DieudonneModule& m) {
    const auto& R = *m.ring();
    const auto& e = m.profile();
    const int r = m.rank();
    ChainMatrix F(m.ring(), r, r), V(m.ring(), r, r);
    // phi_k(x_j) = delta_kj p^{-e_k}; (F phi)(x) = sigma(phi(Vx)), (V phi)(x) = sigma^-1(phi(Fx)).
    auto rescale = [&](const WittElem& a, int j, int k) {
        const int shift = e[static_cast<std::size_t>(j)] - e[static_cast<std::size_t>(k)];
        const WittElem v = shift >= 0 ? R.mul_p(a, shift) : R.div_p(a, -shift);
        return R.reduce(v, e[static_cast<std::size_t>(j)]);
    };
    for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) {
            F(j, k) = rescale(R.sigma(m.V()(k, j), 1), j, k);
            V(j, k) = rescale(R.sigma(m.F()(k, j), -1), j, k);
        }
    return DieudonneModule::make(m.field(), e, F, V);
}

SemilinearMap word_map(const DieudonneModule& m, const std::vector<Letter>& word) {
    ChainMatrix a = ChainMatrix::identity(m.ring(), m.rank());
    long t = 0;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        const bool is_f = *it == Letter::F;
        const long s = is_f ? 1 : -1;
        a = (is_f ? m.F() : m.V()) * sigma(a, s);
        t += s;
    }
    return {reduce_rows(a, m.profile()), t, m.profile(), m.profile()};
}

SemilinearMap power_map(const DieudonneModule& m, Letter letter, int a) {
    require(a >= 0, ErrorCode::BadParameter, "negative word power");
    return word_map(m, std::vector<Letter>(static_cast<std::size_t>(a), letter));
}

SubModule dm_submodule(const DieudonneModule& m, const Submodule& sub) {
    const auto& prof = m.profile();
    const ChainMatrix f = coordinates_in(sub, prof, apply(m.F_map(), sub.basis));
    const ChainMatrix v = coordinates_in(sub, prof, apply(m.V_map(), sub.basis));
    return {DieudonneModule::make(m.field(), sub.exps, f, v), sub.basis};
}

QuotientModule dm_quotient(const DieudonneModule& m, const Quotient& q) {
    const ChainMatrix f = reduce_rows(q.proj * m.F() * sigma(q.lift, 1), q.exps);
    const ChainMatrix v = reduce_rows(q.proj * m.V() * sigma(q.lift, -1), q.exps);
    return {DieudonneModule::make(m.field(), q.exps, f, v), q.proj, q.lift};
}

namespace {

void require_power(int a) { require(a >= 1, ErrorCode::BadParameter, "word power must be >= 1"); }

} // namespace

SubModule dm_word_kernel_sub(const DieudonneModule& m, Letter letter, int a) {
    require_power(a);
    return dm_submodule(m, semilinear_kernel(power_map(m, letter, a)));
}

SubModule dm_word_image_sub(const DieudonneModule& m, Letter letter, int a) {
    require_power(a);
    return dm_submodule(m, semilinear_image(power_map(m, letter, a)));
}

QuotientModule dm_word_cokernel_quot(const DieudonneModule& m, Letter letter, int a) {
    require_power(a);
    return dm_quotient(m, semilinear_cokernel(power_map(m, letter, a)));
}

DieudonneModule dm_word_kernel(const DieudonneModule& m, Letter letter, int a) {
    return dm_word_kernel_sub(m, letter, a).module;
}

DieudonneModule dm_word_cokernel(const DieudonneModule& m, Letter letter, int a) {
    return dm_word_cokernel_quot(m, letter, a).module;
}

const char* cell_name(Cell c) {
    switch (c) {
    case Cell::ConnectedUnipotent:
        return "connected-unipotent";
    case Cell::ConnectedMultiplicative:
        return "connected-multiplicative";
    case Cell::EtaleUnipotent:
        return "etale-unipotent";
    case Cell::EtaleMultiplicative:
        return "etale-multiplicative";
    }
    return "?";
}

namespace {

SubModule compose(const DieudonneModule& ambient, const SubModule& outer, const SubModule& inner) {
    const ChainMatrix emb =
        outer.embedding * inner.embedding.with_ring(outer.embedding.ring());
    return {inner.module, reduce_rows(emb, ambient.profile())};
}

} // namespace

FourWaySplit dm_fourway(const DieudonneModule& m) {
    const int L = std::max(1, m.length());
    const SubModule conn = dm_word_kernel_sub(m, Letter::V, L);
    const SubModule etale = dm_word_image_sub(m, Letter::V, L);
    FourWaySplit s;
    s.cells.push_back(compose(m, conn, dm_word_kernel_sub(conn.module, Letter::F, L)));
    s.cells.push_back(compose(m, conn, dm_word_image_sub(conn.module, Letter::F, L)));
    s.cells.push_back(compose(m, etale, dm_word_kernel_sub(etale.module, Letter::F, L)));
    s.cells.push_back(compose(m, etale, dm_word_image_sub(etale.module, Letter::F, L)));
    return s;
}

namespace {

std::string equivariance_error(const DieudonneModule& source, const DieudonneModule& target,
                               const ChainMatrix& phi) {
    auto R = common_ring(source, target);
    if (phi.rows() != target.rank() || phi.cols() != source.rank())
        return "shape";
    const ChainMatrix ph = phi.with_ring(R);
    SemilinearMap as_map{ph, 0, source.profile(), target.profile()};
    try {
        check_semilinear(as_map);
    } catch (const Error&) {
        return "annihilator";
    }
    const ChainMatrix fm = source.F().with_ring(R), vm = source.V().with_ring(R);
    const ChainMatrix fn = target.F().with_ring(R), vn = target.V().with_ring(R);
    if (!reduce_rows(ph * fm - fn * sigma(ph, 1), target.profile()).is_zero())
        return "F";
    if (!reduce_rows(ph * vm - vn * sigma(ph, -1), target.profile()).is_zero())
        return "V";
    return {};
}

} // namespace

void check_morphism(const DieudonneModule& source, const DieudonneModule& target,
                    const ChainMatrix& phi) {
    const std::string err = equivariance_error(source, target, phi);
    if (err == "shape")
        fail(ErrorCode::ShapeMismatch, "morphism matrix has the wrong shape");
    if (err == "annihilator")
        fail(ErrorCode::AnnihilatorViolation, "morphism does not respect the annihilators");
    if (!err.empty())
        fail(ErrorCode::NotEquivariant, "morphism does not commute with " + err);
}

bool is_morphism(const DieudonneModule& source, const DieudonneModule& target,
                 const ChainMatrix& phi) {
    if (!same_field(source.field(), target.field()))
        return false;
    return equivariance_error(source, target, phi).empty();
}

bool ExactnessReport::exact() const {
    return is_complex && std::all_of(defects.begin(), defects.end(), [](int d) { return d == 0; });
}

ExactnessReport dm_exact_check(const std::vector<DieudonneModule>& modules,
                               const std::vector<ChainMatrix>& maps) {
    require(!modules.empty() && maps.size() + 1 == modules.size(), ErrorCode::NotComposable,
            "a sequence of k modules needs k - 1 maps");
    WittRingPtr R = modules[0].ring();
    for (const auto& m : modules) {
        require(same_field(m.field(), modules[0].field()), ErrorCode::NotComposable,
                "modules over different fields");
        if (m.ring()->length() > R->length())
            R = m.ring();
    }
    std::vector<ChainMatrix> f;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const auto& src = modules[i];
        const auto& tgt = modules[i + 1];
        require(maps[i].rows() == tgt.rank() && maps[i].cols() == src.rank(),
                ErrorCode::NotComposable, "map " + std::to_string(i) + " has the wrong shape");
        if (maps[i].rows() && maps[i].cols())
            require(same_field(maps[i].ring()->field(), src.field()), ErrorCode::NotComposable,
                    "map over a different field");
        const std::string err = equivariance_error(src, tgt, maps[i]);
        require(err.empty(), ErrorCode::NotEquivariant,
                "map " + std::to_string(i) + " is not a Dieudonne morphism (" + err + ")");
        f.push_back(maps[i].rows() && maps[i].cols() ? maps[i].with_ring(R)
                                                     : ChainMatrix(R, maps[i].rows(), maps[i].cols()));
    }

    ExactnessReport rep;
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
        if (!reduce_rows(f[i + 1] * f[i], modules[i + 2].profile()).is_zero())
            rep.is_complex = false;
    for (std::size_t i = 0; i < modules.size(); ++i) {
        const auto& prof = modules[i].profile();
        const int ker = i < f.size()
                            ? profile_length(kernel_between(f[i], prof, modules[i + 1].profile()).exps)
                            : profile_length(prof);
        const int im = i > 0 ? profile_length(submodule_span(f[i - 1], prof).exps) : 0;
        rep.defects.push_back(ker - im);
    }
    return rep;
}

DieudonneModule dm_mu(const FieldPtr& field, int a) {
    require(a >= 1, ErrorCode::BadParameter, "mu_{p^a} needs a >= 1");
    auto R = WittRing::get(field, a, true);
    return DieudonneModule::make(field, {a}, ChainMatrix::from_rows(R, {{R->one()}}),
                                 ChainMatrix::from_rows(R, {{R->from_int(field->p())}}));
}

DieudonneModule dm_zmod(const FieldPtr& field, int a) { return dm_dual(dm_mu(field, a)); }

DieudonneModule dm_alpha(const FieldPtr& field, int a) {
    require(a >= 1, ErrorCode::BadParameter, "alpha_{p^a} needs a >= 1");
    auto R = WittRing::get(field, 1, true);
    ChainMatrix v(R, a, a);
    for (int i = 0; i + 1 < a; ++i)
        v(i + 1, i) = R->one();
    return DieudonneModule::make(field, Profile(static_cast<std::size_t>(a), 1), ChainMatrix(R, a, a), v);
}

DieudonneModule dm_ss_kernel(const FieldPtr& field) {
    auto R = WittRing::get(field, 1, true);
    ChainMatrix n(R, 2, 2);
    n(1, 0) = R->one();
    return DieudonneModule::make(field, {1, 1}, n, n);
}

DieudonneModule dm_height_one(const FieldPtr& field,
                              const std::vector<std::vector<FqElement>>& rho) {
    const int d = static_cast<int>(rho.size());
    auto R = WittRing::get(field, 1, true);
    ChainMatrix f(R, d, d);
    for (int i = 0; i < d; ++i) {
        require(static_cast<int>(rho[static_cast<std::size_t>(i)].size()) == d,
                ErrorCode::ShapeMismatch, "rho must be square");
        for (int j = 0; j < d; ++j)
            f(i, j) = R->teichmuller(rho[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
    return DieudonneModule::make(field, Profile(static_cast<std::size_t>(d), 1), f, ChainMatrix(R, d, d));
}

std::pair<ChainMatrix, ChainMatrix> random_automorphism(const WittRingPtr& ring,
                                                        const Profile& profile,
                                                        std::mt19937_64& rng) {
    const auto& R = *ring;
    const int r = static_cast<int>(profile.size());
    ChainMatrix g = ChainMatrix::identity(ring, r);
    ChainMatrix gi = ChainMatrix::identity(ring, r);
    if (r == 0)
        return {g, gi};
    std::uniform_int_distribution<int> idx(0, r - 1);
    for (int t = 0; t < 4 * r; ++t) {
        const int i = idx(rng);
        const int j = idx(rng);
        if (i == j) {
            WittElem u = R.random(rng);
            if (!R.is_unit(u))
                u = R.add(u, R.one());
            if (!R.is_unit(u))
                continue;
            g.scale_col(i, u);
            gi.scale_row(i, R.unit_inverse(u));
            continue;
        }
        const int shift = std::max(0, profile[static_cast<std::size_t>(i)] -
                                          profile[static_cast<std::size_t>(j)]);
        const WittElem c = R.mul_p(R.random(rng), shift);
        // g <- g (I + c E_ij), g^-1 <- (I - c E_ij) g^-1
        g.add_col_multiple(j, i, c);
        gi.add_row_multiple(i, j, R.neg(c));
    }
    return {reduce_rows(g, profile), reduce_rows(gi, profile)};
}

DieudonneModule random_module(const FieldPtr& field, int max_length, std::mt19937_64& rng) {
    std::vector<DieudonneModule> parts;
    int len = 0;
    std::uniform_int_distribution<int> kind(0, 5);
    while (len < max_length) {
        const int room = max_length - len;
        std::uniform_int_distribution<int> size(1, std::min(2, room));
        DieudonneModule piece = DieudonneModule::zero(field);
        switch (kind(rng)) {
        case 0:
            piece = dm_mu(field, size(rng));
            break;
        case 1:
            piece = dm_zmod(field, size(rng));
            break;
        case 2:
            piece = dm_alpha(field, size(rng));
            break;
        case 3:
            if (room < 2)
                continue;
            piece = dm_ss_kernel(field);
            break;
        default: {
            const int d = size(rng);
            std::vector<std::vector<FqElement>> rho(static_cast<std::size_t>(d));
            for (auto& row : rho)
                for (int j = 0; j < d; ++j)
                    row.push_back(field->random(rng));
            piece = dm_height_one(field, rho);
        }
        }
        len += piece.length();
        parts.push_back(piece);
        if (rng() % 3 == 0)
            break;
    }
    DieudonneModule sum = direct_sum(parts, field);
    auto [g, gi] = random_automorphism(sum.ring(), sum.profile(), rng);
    return change_basis(sum, g, gi);
}

std::string to_string(const DieudonneModule& m) {
    std::ostringstream os;
    os << "profile [";
    for (std::size_t i = 0; i < m.profile().size(); ++i)
        os << (i ? "," : "") << m.profile()[i];
    os << "] F=" << m.F().to_string() << " V=" << m.V().to_string();
    return os.str();
}

} // namespace ffgs
