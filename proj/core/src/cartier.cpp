#include "ffgs/cartier.hpp"

#include "ffgs/error.hpp"
#include "ffgs/iso.hpp"

#include <algorithm>

namespace ffgs {

CartierSummand CartierSummand::make_unit(const ChainMatrix& u) {
    CartierSummand s;
    s.kind = Kind::Unit;
    s.rank = u.rows();
    s.unit = u;
    return s;
}

CartierSummand CartierSummand::make_unit(const FieldPtr& field, int rank, int witt_precision) {
    return make_unit(ChainMatrix::identity(WittRing::get(field, witt_precision, true), rank));
}

CartierSummand CartierSummand::make_additive(int rank) {
    CartierSummand s;
    s.kind = Kind::Additive;
    s.rank = rank;
    return s;
}

CartierSummand CartierSummand::make_formal(int h, int multiplicity) {
    CartierSummand s;
    s.kind = Kind::Formal;
    s.h = h;
    s.rank = multiplicity;
    return s;
}

CartierSummand CartierSummand::make_finite(const DieudonneModule& m) {
    CartierSummand s;
    s.kind = Kind::Finite;
    s.rank = m.rank();
    s.finite = m;
    return s;
}

const char* summand_kind_name(CartierSummand::Kind k) {
    switch (k) {
    case CartierSummand::Kind::Unit:
        return "unit";
    case CartierSummand::Kind::Additive:
        return "additive";
    case CartierSummand::Kind::Formal:
        return "formal";
    case CartierSummand::Kind::Finite:
        return "finite";
    }
    return "?";
}

void cm_validate(const CartierModule& m) {
    require(m.field != nullptr, ErrorCode::BadParameter, "Cartier module without a field");
    require(m.v_precision >= 1 && m.witt_precision >= 1, ErrorCode::BadParameter,
            "precisions must be positive");
    for (const auto& s : m.summands) {
        switch (s.kind) {
        case CartierSummand::Kind::Unit: {
            require(s.unit.has_value(), ErrorCode::BadParameter, "unit summand without F-matrix");
            const auto& u = *s.unit;
            require(u.rows() == u.cols() && u.rows() == s.rank && s.rank >= 1,
                    ErrorCode::ShapeMismatch, "unit F-matrix must be square of the rank");
            require(same_field(u.ring()->field(), m.field), ErrorCode::FieldMismatch,
                    "unit F-matrix over a different field");
            const auto d = elementary_divisors(u.with_ring(WittRing::get(m.field, 1, true)));
            require(std::all_of(d.begin(), d.end(), [](int e) { return e == 0; }),
                    ErrorCode::BadParameter, "unit F-matrix is not invertible mod p");
            break;
        }
        case CartierSummand::Kind::Additive:
            require(s.rank >= 1, ErrorCode::BadParameter, "additive rank must be >= 1");
            break;
        case CartierSummand::Kind::Formal:
            require(s.h >= 1 && s.rank >= 1, ErrorCode::BadParameter,
                    "formal summands need h >= 1 and multiplicity >= 1");
            break;
        case CartierSummand::Kind::Finite:
            require(s.finite.has_value(), ErrorCode::BadParameter, "finite summand without module");
            require(same_field(s.finite->field(), m.field), ErrorCode::FieldMismatch,
                    "finite summand over a different field");
            break;
        }
    }
}

namespace {

DieudonneModule repeat(const DieudonneModule& piece, int copies, const FieldPtr& field) {
    return direct_sum(std::vector<DieudonneModule>(static_cast<std::size_t>(copies), piece), field);
}

DieudonneModule trunc_formal(const FieldPtr& field, int h, int level) {
    // W-basis b_r = V^r g, 0 <= r <= min(h, level - 1); p b_r = V^(r+h+1) g.
    const int gens = std::min(h, level - 1) + 1;
    Profile prof;
    for (int r = 0; r < gens; ++r)
        prof.push_back((level - r + h) / (h + 1));
    auto R = WittRing::get(field, prof[0], true);
    const WittElem p = R->from_int(field->p());
    ChainMatrix F(R, gens, gens), V(R, gens, gens);
    for (int r = 0; r < gens; ++r) {
        if (r + 1 < gens)
            V(r + 1, r) = R->one();
        else if (r == h)
            V(0, r) = p;
        if (r > 0)
            F(r - 1, r) = p;
        else if (h < gens)
            F(h, 0) = R->one();
    }
    return DieudonneModule::make(field, prof, reduce_rows(F, prof), reduce_rows(V, prof));
}

} // namespace

DieudonneModule cm_trunc_summand(const FieldPtr& field, const CartierSummand& s, int level,
                                 int witt_precision) {
    require(level >= 1, ErrorCode::BadParameter, "truncation level must be >= 1");
    switch (s.kind) {
    case CartierSummand::Kind::Unit: {
        require(level <= witt_precision && level <= s.unit->ring()->length(),
                ErrorCode::PrecisionExceeded,
                "unit summand known to W_" + std::to_string(witt_precision) + " only, level " +
                    std::to_string(level) + " requested");
        auto R = WittRing::get(field, level, true);
        const ChainMatrix u = s.unit->with_ring(R);
        auto inv = solve(u, ChainMatrix::identity(R, s.rank));
        require(inv.has_value(), ErrorCode::BadParameter, "unit F-matrix is not invertible");
        const ChainMatrix v = scaled(R->from_int(field->p()), sigma(*inv, -1));
        return DieudonneModule::make(field, Profile(static_cast<std::size_t>(s.rank), level), u, v);
    }
    case CartierSummand::Kind::Additive:
        return repeat(dm_alpha(field, level), s.rank, field);
    case CartierSummand::Kind::Formal:
        return repeat(trunc_formal(field, s.h, level), s.rank, field);
    case CartierSummand::Kind::Finite:
        return *s.finite;
    }
    return DieudonneModule::zero(field);
}

DieudonneModule cm_trunc(const CartierModule& m, int level) {
    cm_validate(m);
    require(level <= m.v_precision, ErrorCode::PrecisionExceeded,
            "level " + std::to_string(level) + " beyond V-precision " + std::to_string(m.v_precision));
    std::vector<DieudonneModule> parts;
    for (const auto& s : m.summands)
        parts.push_back(cm_trunc_summand(m.field, s, level, m.witt_precision));
    return direct_sum(parts, m.field);
}

DieudonneModule cm_v_torsion(const CartierModule& m) {
    cm_validate(m);
    std::vector<DieudonneModule> parts;
    for (const auto& s : m.summands)
        if (s.kind == CartierSummand::Kind::Finite)
            parts.push_back(dm_word_kernel(*s.finite, Letter::V, std::max(1, s.finite->length())));
    return direct_sum(parts, m.field);
}

CartierModule cm_mod_v_torsion(const CartierModule& m) {
    cm_validate(m);
    CartierModule out = m;
    out.summands.clear();
    for (const auto& s : m.summands) {
        if (s.kind != CartierSummand::Kind::Finite) {
            out.summands.push_back(s);
            continue;
        }
        const auto& d = *s.finite;
        const auto tors = dm_word_kernel_sub(d, Letter::V, std::max(1, d.length()));
        const auto q = dm_quotient(d, quotient_by(tors.embedding, d.profile()));
        if (!q.module.is_zero())
            out.summands.push_back(CartierSummand::make_finite(q.module));
    }
    return out;
}

ConnectedDM cm_connected_dm(const CartierModule& m) {
    cm_validate(m);
    ConnectedDM c;
    for (const auto& s : m.summands) {
        const std::string r = std::to_string(s.rank);
        switch (s.kind) {
        case CartierSummand::Kind::Unit:
            c.pieces.push_back({"mu_{p^inf}-type of corank " + r, s.kind, s.rank});
            c.multiplicative_corank += s.rank;
            break;
        case CartierSummand::Kind::Additive:
            c.pieces.push_back({"G_a-hat-type of dimension " + r, s.kind, s.rank});
            c.unipotent_dimension += s.rank;
            break;
        case CartierSummand::Kind::Formal:
            c.pieces.push_back(
                {"1-dimensional formal group of height " + std::to_string(s.h + 1), s.kind, s.rank});
            c.formal_dimension += s.rank;
            for (int i = 0; i < s.rank; ++i)
                c.formal_heights.push_back(s.h + 1);
            break;
        case CartierSummand::Kind::Finite: {
            const int tors = dm_word_kernel(*s.finite, Letter::V, std::max(1, s.finite->length())).length();
            c.pieces.push_back({"finite (dies in the colimit)", s.kind, 1});
            c.finite_leftover += tors;
            if (tors > 0)
                c.v_torsion_free = false;
            break;
        }
        }
    }
    return c;
}

DieudonneModule cm_connected_level(const CartierModule& m, int n) {
    cm_validate(m);
    require(n >= 1, ErrorCode::Precondition, "level must be >= 1");
    std::vector<DieudonneModule> parts;
    for (const auto& s : m.summands)
        if (s.kind != CartierSummand::Kind::Finite)
            parts.push_back(cm_trunc_summand(m.field, s, n, m.witt_precision));
    return direct_sum(parts, m.field);
}

DieudonneModule cm_tc_n(const CartierModule& m, int n) {
    cm_validate(m);
    require(n >= 1, ErrorCode::Precondition, "TC_n needs n >= 1");
    require(n <= m.v_precision - 1, ErrorCode::PrecisionExceeded,
            "TC_" + std::to_string(n) + " needs V-precision at least " + std::to_string(n + 1));
    require(n + 2 <= m.v_precision, ErrorCode::UnstableTruncation,
            "V-precision " + std::to_string(m.v_precision) + " leaves no level to confirm TC_" +
                std::to_string(n));
    std::vector<DieudonneModule> parts;
    for (const auto& s : m.summands) {
        const DieudonneModule a =
            dm_word_kernel(cm_trunc_summand(m.field, s, n + 1, m.witt_precision), Letter::V, n);
        const DieudonneModule b =
            dm_word_kernel(cm_trunc_summand(m.field, s, n + 2, m.witt_precision), Letter::V, n);
        const IsoVerdict v = module_iso_test(a, b).verdict;
        bool stable = v == IsoVerdict::Isomorphic;
        if (v == IsoVerdict::Indeterminate) {
            Profile pa = a.profile(), pb = b.profile();
            std::sort(pa.begin(), pa.end());
            std::sort(pb.begin(), pb.end());
            stable = pa == pb && word_image_lengths(a) == word_image_lengths(b);
        }
        if (!stable)
            fail(ErrorCode::UnstableTruncation,
                 std::string("TC_") + std::to_string(n) + " of a " + summand_kind_name(s.kind) +
                     " summand differs between levels " + std::to_string(n + 1) + " and " +
                     std::to_string(n + 2));
        parts.push_back(a);
    }
    return direct_sum(parts, m.field);
}

std::string endo_name(const Endo& e) {
    const std::string n = std::to_string(e.n);
    switch (e.kind) {
    case Endo::Kind::MultP:
        return "p^" + n;
    case Endo::Kind::FPow:
        return "F^" + n;
    case Endo::Kind::VPow:
        return "V^" + n;
    }
    return "?";
}

namespace {

ChainMatrix p_power(const DieudonneModule& m, int n) {
    auto R = m.ring();
    return reduce_rows(scaled(R->mul_p(R->one(), n), ChainMatrix::identity(R, m.rank())), m.profile());
}

} // namespace

DieudonneModule endo_kernel(const DieudonneModule& m, const Endo& f) {
    require(f.n >= 1, ErrorCode::BadParameter, "endomorphism power must be >= 1");
    switch (f.kind) {
    case Endo::Kind::MultP:
        return dm_submodule(m, kernel_between(p_power(m, f.n), m.profile(), m.profile())).module;
    case Endo::Kind::FPow:
        return dm_word_kernel(m, Letter::F, f.n);
    case Endo::Kind::VPow:
        return dm_word_kernel(m, Letter::V, f.n);
    }
    return m;
}

DieudonneModule endo_cokernel(const DieudonneModule& m, const Endo& f) {
    require(f.n >= 1, ErrorCode::BadParameter, "endomorphism power must be >= 1");
    switch (f.kind) {
    case Endo::Kind::MultP:
        return dm_quotient(m, quotient_by(p_power(m, f.n), m.profile())).module;
    case Endo::Kind::FPow:
        return dm_word_cokernel(m, Letter::F, f.n);
    case Endo::Kind::VPow:
        return dm_word_cokernel(m, Letter::V, f.n);
    }
    return m;
}

ComplexCohomology cm_complex_h(const Endo& f, const CartierModule& prev, const CartierModule& cur,
                               ExtensionPolicy policy) {
    require(same_field(prev.field, cur.field), ErrorCode::FieldMismatch, "degrees over different fields");
    ComplexCohomology out{endo_cokernel(cm_trunc(prev, prev.v_precision), f),
                          endo_kernel(cm_trunc(cur, cur.v_precision), f), std::nullopt, false};
    out.canonical = out.coker.is_zero() || out.ker.is_zero();
    if (out.canonical || policy == ExtensionPolicy::Split)
        out.assembled = direct_sum(out.coker, out.ker);
    return out;
}

} // namespace ffgs
