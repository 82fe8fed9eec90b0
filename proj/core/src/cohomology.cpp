#include "ffgs/cohomology.hpp"

#include "ffgs/error.hpp"

#include <algorithm>

namespace ffgs {

namespace {

WittRingPtr k1(const FieldPtr& f) { return WittRing::get(f, 1, true); }

int fq_rank(const ChainMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0)
        return 0;
    const auto d = elementary_divisors(a);
    return static_cast<int>(std::count(d.begin(), d.end(), 0));
}

ChainMatrix zeros(const FieldPtr& f, int r, int c) { return ChainMatrix(k1(f), r, c); }

Profile ones(int n) { return Profile(static_cast<std::size_t>(n), 1); }

DieudonneModule alpha_power(const FieldPtr& f, int r) {
    std::vector<DieudonneModule> parts(static_cast<std::size_t>(r), dm_alpha(f, 1));
    return direct_sum(parts, f);
}

const OData& need_o(const DegreeData& d, int i) {
    require(d.o.has_value(), ErrorCode::MissingDeRhamData,
            "no H^" + std::to_string(i) + "(O) data");
    return *d.o;
}

const BData& need_b(const DegreeData& d, int i) {
    require(d.b.has_value(), ErrorCode::MissingDeRhamData,
            "no H^" + std::to_string(i) + "(B) data");
    return *d.b;
}

const ChainMatrix& need_d(const DegreeData& d, int i) {
    require(d.d.has_value(), ErrorCode::MissingDeRhamData, "no d_" + std::to_string(i));
    return *d.d;
}

ExtensionStatus status_for(bool both, ExtensionPolicy policy) {
    if (!both)
        return ExtensionStatus::Canonical;
    return policy == ExtensionPolicy::Split ? ExtensionStatus::SplitAssumed
                                            : ExtensionStatus::Undetermined;
}

CohomReport assemble(std::string coeff, int degree, const CWPiece& coker, const CWPiece& ker,
                     ExtensionPolicy policy) {
    CohomReport r{std::move(coeff), degree, direct_sum(coker.finite, ker.finite), 0, 0, 0,
                  std::nullopt, ExtensionStatus::Canonical};
    r.vector_dim_coker = coker.vector_dim;
    r.vector_dim_ker = ker.vector_dim;
    r.vector_dim = coker.vector_dim + ker.vector_dim;
    const bool left = !coker.finite.is_zero() || coker.vector_dim > 0;
    const bool right = !ker.finite.is_zero() || ker.vector_dim > 0;
    r.extension = status_for(left && right, policy);
    return r;
}

// ker or coker of f on colim_V of a V-torsion-free summand.
void colim_piece(const FieldPtr& field, const CartierSummand& s, const Endo& f, bool kernel, int wp,
                 std::vector<DieudonneModule>& finite, int& vector) {
    using K = CartierSummand::Kind;
    auto trunc = [&](int level) { finite.push_back(cm_trunc_summand(field, s, level, wp)); };
    switch (s.kind) {
    case K::Unit:
        if (kernel && f.kind != Endo::Kind::FPow)
            trunc(f.n);
        break;
    case K::Additive:
        if (kernel && f.kind == Endo::Kind::VPow)
            trunc(f.n);
        else if (f.kind != Endo::Kind::VPow)
            vector += s.rank;
        break;
    case K::Formal:
        if (!kernel)
            break;
        if (f.kind == Endo::Kind::VPow)
            trunc(f.n);
        else if (f.kind == Endo::Kind::FPow)
            trunc(f.n * s.h);
        else
            trunc(f.n * (s.h + 1));
        break;
    case K::Finite:
        break;
    }
}

CWPiece cw_piece(const GeometricPacket& p, int j, const Endo& f, bool kernel) {
    if (j < 0)
        return {DieudonneModule::zero(p.field), 0};
    const auto cur = p.degree(j);
    const auto next = p.degree(j + 1);
    std::vector<DieudonneModule> finite;
    int vector = 0;
    for (const auto& s : cm_mod_v_torsion(cur.wo).summands)
        colim_piece(p.field, s, f, kernel, cur.wo.witt_precision, finite, vector);
    const auto tors = cm_v_torsion(next.wo);
    finite.push_back(kernel ? endo_kernel(tors, f) : endo_cokernel(tors, f));
    return {direct_sum(finite, p.field), vector};
}

ChainMatrix product_norm(const ChainMatrix& a, int n) {
    auto out = a;
    for (int k = 1; k < n; ++k)
        out = out * sigma(a, k);
    return out;
}

} // namespace

DegreeData GeometricPacket::degree(int i) const {
    if (i < 0) {
        DegreeData d;
        d.wo = {field, {}, v_precision, witt_precision};
        d.o = OData{0, zeros(field, 0, 0), 1};
        d.b = BData{0, zeros(field, 0, 0), -1, 0};
        d.d = zeros(field, 0, 0);
        d.etale_corank = 0;
        return d;
    }
    const auto it = degrees.find(i);
    require(it != degrees.end(), ErrorCode::MissingDegree,
            "packet has no degree " + std::to_string(i));
    return it->second;
}

GeometricPacket with_precision(const GeometricPacket& p, int witt_precision, int v_precision) {
    auto out = p;
    out.witt_precision = witt_precision;
    out.v_precision = v_precision;
    const auto R = WittRing::get(p.field, witt_precision, true);
    for (auto& [i, d] : out.degrees) {
        d.wo.witt_precision = witt_precision;
        d.wo.v_precision = v_precision;
        for (auto& s : d.wo.summands)
            if (s.unit)
                s.unit = s.unit->with_ring(R);
    }
    return out;
}

const char* extension_status_name(ExtensionStatus s) {
    switch (s) {
    case ExtensionStatus::Canonical:
        return "canonical";
    case ExtensionStatus::SplitAssumed:
        return "split-assumed";
    case ExtensionStatus::Undetermined:
        return "undetermined";
    }
    return "?";
}

PacketValidation packet_validate(const GeometricPacket& p) {
    require(p.field != nullptr, ErrorCode::SchemaError, "packet without a field");
    require(p.witt_precision >= 1 && p.v_precision >= 1, ErrorCode::SchemaError,
            "precisions must be positive");
    PacketValidation out;
    auto shape = [](const ChainMatrix& m, int r, int c, const std::string& what) {
        require(m.rows() == r && m.cols() == c, ErrorCode::ShapeError,
                what + " must be " + std::to_string(r) + "x" + std::to_string(c));
    };
    for (const auto& [i, d] : p.degrees) {
        require(i >= 0, ErrorCode::SchemaError, "negative degree");
        require(same_field(d.wo.field, p.field), ErrorCode::SchemaError, "wo over a different field");
        cm_validate(d.wo);
        const auto tag = std::to_string(i);
        if (d.o) {
            require(d.o->twist == 1, ErrorCode::SchemaError, "o_" + tag + " must have twist +1");
            require(d.o->dim >= 0, ErrorCode::SchemaError, "negative dimension");
            shape(d.o->F, d.o->dim, d.o->dim, "o_" + tag + ".F");
        }
        if (d.b) {
            require(d.b->twist == -1, ErrorCode::SchemaError, "b_" + tag + " must have twist -1");
            require(d.b->dim >= 0 && d.b->divisible_rank >= 0, ErrorCode::SchemaError,
                    "negative dimension");
            shape(d.b->C, d.b->dim, d.b->dim, "b_" + tag + ".C");
        }
        if (d.d) {
            require(d.o && d.b, ErrorCode::SchemaError, "d_" + tag + " needs o and b");
            shape(*d.d, d.b->dim, d.o->dim, "d_" + tag);
            if (!(*d.d * d.o->F).is_zero())
                out.warnings.push_back("d_" + tag + " does not kill the image of F");
            if (!(d.b->C * sigma(*d.d, -1)).is_zero())
                out.warnings.push_back("C does not kill the image of d_" + tag);
        }
        if (d.ext) {
            require(d.o.has_value(), ErrorCode::SchemaError, "ext_" + tag + " needs o");
            const int bp = i == 0 ? 0 : (p.degrees.count(i - 1) && p.degrees.at(i - 1).b
                                             ? p.degrees.at(i - 1).b->dim
                                             : -1);
            require(bp >= 0, ErrorCode::SchemaError, "ext_" + tag + " needs b_" + std::to_string(i - 1));
            shape(d.ext->F, bp, d.o->dim, "ext_" + tag + ".F");
            shape(d.ext->C, bp, d.o->dim, "ext_" + tag + ".C");
        }
        if (d.etale_corank)
            require(*d.etale_corank >= 0, ErrorCode::SchemaError, "negative etale corank");
    }
    for (const auto& [i, d] : p.degrees) {
        if (!d.o || !d.d || !p.has_degree(i - 1))
            continue;
        const auto r = les_check(p, i);
        for (const auto& m : r.messages)
            out.warnings.push_back("degree " + std::to_string(i) + ": " + m);
    }
    return out;
}

DeRhamDegree de_rham_degree(const GeometricPacket& p, int i) {
    const auto f = p.field;
    const auto prev = p.degree(i - 1);
    const auto cur = p.degree(i);
    const auto& o = need_o(cur, i);
    need_b(cur, i);
    const auto& di = need_d(cur, i);
    const auto& bp = need_b(prev, i - 1);
    const auto& dp = need_d(prev, i - 1);

    const auto q = quotient_by(dp, ones(bp.dim));
    const auto K = kernel_between(di, ones(o.dim), ones(cur.b->dim));
    const int c = static_cast<int>(q.exps.size());
    const int k = static_cast<int>(K.exps.size());

    ChainMatrix coords;
    try {
        coords = coordinates_in(K, ones(o.dim), o.F);
    } catch (const Error&) {
        fail(ErrorCode::ShapeError, "F(H^" + std::to_string(i) + "(O)) is not in ker d_" +
                                        std::to_string(i));
    }
    const auto G = cur.ext ? cur.ext->F : zeros(f, bp.dim, o.dim);
    const auto H = cur.ext ? cur.ext->C : zeros(f, bp.dim, o.dim);

    DeRhamDegree out{DieudonneModule::make(f, ones(o.dim), o.F, zeros(f, o.dim, o.dim)),
                     DieudonneModule::make(f, ones(bp.dim), zeros(f, bp.dim, bp.dim), bp.C),
                     DieudonneModule::zero(f),
                     vstack(q.proj, zeros(f, k, bp.dim)),
                     hstack(zeros(f, o.dim, c), K.basis),
                     vstack(q.proj * G, coords),
                     hstack(bp.C * sigma(q.lift, -1), H * sigma(K.basis, -1)),
                     bp.divisible_rank,
                     ExtensionStatus::Canonical};
    out.h_c = DieudonneModule::make(f, ones(c + k), out.f_c * sigma(out.pi, 1), out.iota * out.c_c);
    if (!cur.ext)
        out.extension = status_for((c > 0 || out.vector_dim > 0) && k > 0, p.policy);
    return out;
}

CWPiece cw_kernel(const GeometricPacket& p, int j, const Endo& f) { return cw_piece(p, j, f, true); }
CWPiece cw_cokernel(const GeometricPacket& p, int j, const Endo& f) { return cw_piece(p, j, f, false); }

CohomReport h_alpha_p(const GeometricPacket& p, int i) {
    const auto dp = p.degree(i - 1);
    const auto dc = p.degree(i);
    const auto& prev = need_o(dp, i - 1);
    const auto& cur = need_o(dc, i);
    const int r = fq_rank(cur.F);
    CWPiece coker{DieudonneModule::zero(p.field), prev.dim - fq_rank(prev.F)};
    CWPiece ker{alpha_power(p.field, r), cur.dim - r};
    return assemble("alpha_p", i, coker, ker, p.policy);
}

CohomReport h_z_p(const GeometricPacket& p, int i) {
    const auto dc = p.degree(i);
    const auto& cur = need_o(dc, i);
    CohomReport r{"Z/p", i, DieudonneModule::zero(p.field), 0, 0, 0, std::nullopt,
                  ExtensionStatus::Canonical};
    r.etale_rank = cur.dim == 0 ? 0 : fq_rank(product_norm(cur.F, cur.dim));
    return r;
}

int zp_points_log(const GeometricPacket& p, int i, int t) {
    require(t >= 1, ErrorCode::BadParameter, "extension degree must be >= 1");
    const auto dc = p.degree(i);
    const auto& cur = need_o(dc, i);
    if (cur.dim == 0)
        return 0;
    const auto N = product_norm(cur.F, p.field->n());
    auto Nt = ChainMatrix::identity(N.ring(), cur.dim);
    for (int k = 0; k < t; ++k)
        Nt = Nt * N;
    return cur.dim - fq_rank(Nt - ChainMatrix::identity(N.ring(), cur.dim));
}

CohomReport h_mu_p(const GeometricPacket& p, int i, int n) {
    require(n >= 1, ErrorCode::Precondition, "n must be >= 1");
    auto r = [&]() -> CohomReport {
        if (n == 1) {
            const auto d = de_rham_degree(p, i);
            return {"mu_p", i, d.h_c, d.vector_dim, d.vector_dim, 0, std::nullopt, d.extension};
        }
        require(n <= p.v_precision - 2, ErrorCode::PrecisionExceeded,
                "n exceeds the V-precision of the packet");
        const Endo f{Endo::Kind::MultP, n};
        return assemble("mu_p^" + std::to_string(n), i, cw_cokernel(p, i - 1, f), cw_kernel(p, i, f),
                        p.policy);
    }();
    r.etale_rank = p.degree(i).etale_corank;
    return r;
}

CohomReport h_omega_nu(const GeometricPacket& p, int i, int n, OmegaNu which) {
    require(n >= 1, ErrorCode::Precondition, "n must be >= 1");
    require(n <= p.v_precision - 2, ErrorCode::PrecisionExceeded,
            "n exceeds the V-precision of the packet");
    if (which == OmegaNu::Omega) {
        const Endo f{Endo::Kind::VPow, n};
        return assemble("omega_" + std::to_string(n), i, cw_cokernel(p, i - 1, f), cw_kernel(p, i, f),
                        p.policy);
    }
    const Endo f{Endo::Kind::FPow, n};
    return assemble("nu_" + std::to_string(n), i, cw_cokernel(p, i, f), cw_kernel(p, i + 1, f),
                    p.policy);
}

CohomReport projective_bundle_mu(const GeometricPacket& p, int i) {
    auto a = h_mu_p(p, i);
    const auto b = h_z_p(p, i - 2);
    a.coefficient = "mu_p (projective line bundle)";
    if (a.etale_rank)
        *a.etale_rank += *b.etale_rank;
    return a;
}

FormalGroupReport phi_fl_report(const GeometricPacket& p, int i) {
    const auto cur = p.degree(i);
    const auto next = p.degree(i + 1);
    FormalGroupReport r{cm_connected_dm(cm_mod_v_torsion(cur.wo)), cm_v_torsion(next.wo), 0, 0, 0,
                        ExtensionStatus::Canonical};
    r.mult_corank = r.connected.multiplicative_corank;
    r.unipotent_dim = r.connected.unipotent_dimension;
    r.extension = status_for(!r.connected.pieces.empty() && !r.inf.is_zero(), p.policy);
    return r;
}

DieudonneModule phi_obstruction(const GeometricPacket& p, int i) { return cm_v_torsion(p.degree(i).wo); }

FormalGroupReport psi_report(const GeometricPacket& p, int i) {
    auto r = phi_fl_report(p, i);
    r.etale_corank = p.degree(i).etale_corank;
    const Endo f{Endo::Kind::FPow, 1};
    r.unipotent_dim = cw_cokernel(p, i - 1, f).vector_dim + cw_kernel(p, i, f).vector_dim;
    return r;
}

CheckReport les_check(const GeometricPacket& p, int i) {
    CheckReport r;
    auto bad = [&](int where, const std::string& msg) {
        r.ok = false;
        r.defects.push_back(where);
        r.messages.push_back(msg);
    };
    std::optional<DeRhamDegree> opt;
    try {
        opt = de_rham_degree(p, i);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::MissingDeRhamData || e.code() == ErrorCode::MissingDegree)
            throw;
        bad(3, e.what());
        return r;
    }
    const auto& D = *opt;
    const auto f = p.field;
    const auto prev = p.degree(i - 1);
    const auto cur = p.degree(i);
    const auto& op = *prev.o;
    const auto h_o_prev =
        DieudonneModule::make(f, ones(op.dim), op.F, zeros(f, op.dim, op.dim));
    const auto h_b = DieudonneModule::make(f, ones(cur.b->dim), zeros(f, cur.b->dim, cur.b->dim),
                                           cur.b->C);
    try {
        const auto e = dm_exact_check({h_o_prev, D.h_b_prev, D.h_c, D.h_o, h_b},
                                      {*prev.d, D.iota, D.pi, *cur.d});
        if (!e.is_complex)
            bad(2, "consecutive maps do not compose to zero");
        for (int k = 1; k <= 3; ++k)
            if (e.defects[static_cast<std::size_t>(k)] != 0)
                bad(k, "not exact at position " + std::to_string(k));
    } catch (const Error& e) {
        bad(3, std::string("d is not a map of Dieudonne modules: ") + e.what());
    }
    if (p.has_degree(i + 1)) {
        const Endo mp{Endo::Kind::MultP, 1};
        const auto coker = cw_cokernel(p, i - 1, mp);
        const auto ker = cw_kernel(p, i, mp);
        if (coker.finite.length() + ker.finite.length() != D.h_c.length() ||
            coker.vector_dim + ker.vector_dim != D.vector_dim)
            bad(2, "H^" + std::to_string(i) + "(mu_p) disagrees with the Witt data");
    }
    return r;
}

CheckReport parallelogram_check(const GeometricPacket& p, int i) {
    CheckReport r;
    auto check = [&](int id, bool cond, const std::string& msg) {
        if (!cond) {
            r.ok = false;
            r.defects.push_back(id);
            r.messages.push_back(msg);
        }
    };
    std::optional<DeRhamDegree> opt;
    try {
        opt = de_rham_degree(p, i);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::MissingDeRhamData || e.code() == ErrorCode::MissingDegree)
            throw;
        check(0, false, e.what());
        return r;
    }
    const auto& D = *opt;
    const auto prev = p.degree(i - 1);
    const auto cur = p.degree(i);
    check(1, D.pi * D.f_c == cur.o->F, "pi F differs from F on H(O)");
    check(2, D.c_c * sigma(D.iota, -1) == prev.b->C, "C iota differs from C on H(B)");
    check(3, (D.pi * D.iota).is_zero(), "pi iota is nonzero");
    check(4, (D.c_c * sigma(D.f_c, -1)).is_zero(), "C F is nonzero");
    check(5, D.h_c.F() == D.f_c * sigma(D.pi, 1), "F is not F after pi");
    check(6, D.h_c.V() == D.iota * D.c_c, "C is not iota after C");
    check(7, (D.h_c.F() * sigma(D.h_c.V(), 1)).is_zero(), "F C is nonzero");
    check(8, (D.h_c.V() * sigma(D.h_c.F(), -1)).is_zero(), "C F is nonzero on H(C)");
    check(9, (*cur.d * cur.o->F).is_zero(), "d F is nonzero");
    check(10, (cur.b->C * sigma(*cur.d, -1)).is_zero(), "C d is nonzero");
    return r;
}

} // namespace ffgs
