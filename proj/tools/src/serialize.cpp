#include "ffgs_cli/serialize.hpp"

#include "ffgs/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ffgs::io {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    fail(ErrorCode::SchemaError, path + ": " + what);
}

std::string sub(const std::string& path, const std::string& k) { return path + "." + k; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& key(const Json& j, const std::string& k, const std::string& path) {
    if (!j.is_object())
        bad(path, "expected an object");
    const auto it = j.find(k);
    if (it == j.end())
        bad(path, "missing key \"" + k + "\"");
    return *it;
}

const Json* opt_key(const Json& j, const std::string& k) {
    const auto it = j.find(k);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

long long as_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer())
        bad(path, "expected an integer");
    return j.get<long long>();
}

int as_small(const Json& j, const std::string& path, long long lo = 0) {
    const auto v = as_int(j, path);
    if (v < lo || v > (1 << 20))
        bad(path, "integer out of range");
    return static_cast<int>(v);
}

int get_int(const Json& j, const std::string& k, const std::string& path, long long lo = 0) {
    return as_small(key(j, k, path), sub(path, k), lo);
}

std::string get_string(const Json& j, const std::string& k, const std::string& path) {
    const auto& v = key(j, k, path);
    if (!v.is_string())
        bad(sub(path, k), "expected a string");
    return v.get<std::string>();
}

bool get_bool(const Json& j, const std::string& k, const std::string& path) {
    const auto& v = key(j, k, path);
    if (!v.is_boolean())
        bad(sub(path, k), "expected a boolean");
    return v.get<bool>();
}

const Json& as_array(const Json& j, const std::string& path, std::optional<std::size_t> size = {}) {
    if (!j.is_array())
        bad(path, "expected an array");
    if (size && j.size() != *size)
        bad(path, "expected " + std::to_string(*size) + " entries, found " + std::to_string(j.size()));
    return j;
}

FqElement element(const Field& f, const Json& j, const std::string& path) {
    const auto v = as_int(j, path);
    if (v < 0 || static_cast<std::uint64_t>(v) >= f.order())
        bad(path, "field element out of range");
    return f.element(static_cast<std::uint64_t>(v));
}

std::string bare(const Error& e) {
    const std::string w = e.what();
    const auto pos = w.find(": ");
    return pos == std::string::npos ? w : w.substr(pos + 2);
}

template <class T, class F>
T with_path(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaError)
            throw;
        throw Error(e.code(), path + ": " + bare(e));
    }
}

std::vector<int> int_list(const Json& j, const std::string& path, long long lo = 0) {
    std::vector<int> out;
    for (std::size_t i = 0; i < as_array(j, path).size(); ++i)
        out.push_back(as_small(j[i], at(path, i), lo));
    return out;
}

Json opt_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<int> parse_opt_int(const Json& j, const std::string& k, const std::string& path) {
    const auto* v = opt_key(j, k);
    if (!v)
        return std::nullopt;
    return as_small(*v, sub(path, k));
}

const char* policy_name(ExtensionPolicy p) {
    return p == ExtensionPolicy::Split ? "split" : "undetermined";
}

ExtensionStatus parse_status(const std::string& s, const std::string& path) {
    for (auto e : {ExtensionStatus::Canonical, ExtensionStatus::SplitAssumed, ExtensionStatus::Undetermined})
        if (s == extension_status_name(e))
            return e;
    bad(path, "unknown extension status \"" + s + "\"");
}

CartierSummand::Kind parse_kind(const std::string& s, const std::string& path) {
    using K = CartierSummand::Kind;
    for (auto k : {K::Unit, K::Additive, K::Formal, K::Finite})
        if (s == summand_kind_name(k))
            return k;
    bad(path, "unknown summand kind \"" + s + "\"");
}

Json wrap(const std::string& kind, const FieldPtr& f, Json value) {
    Json doc{{"schema", kObjectSchema}, {"kind", kind}, {"value", std::move(value)}};
    if (f)
        doc["field"] = field_json(*f);
    return doc;
}

const Json& unwrap(const Json& doc, const std::string& kind) {
    const auto k = document_kind(doc);
    if (k != kind)
        bad("$.kind", "expected a " + kind + " document, found " + k);
    return key(doc, "value", "$");
}

} // namespace

Json field_json(const Field& f) {
    return {{"p", f.p()}, {"n", f.n()}, {"modulus", f.modulus()}};
}

FieldPtr parse_field(const Json& j, const std::string& path) {
    const int p = get_int(j, "p", path, 2);
    const int n = get_int(j, "n", path, 1);
    std::optional<std::vector<int>> modulus;
    if (const auto* m = opt_key(j, "modulus"))
        modulus = int_list(*m, sub(path, "modulus"));
    return with_path<FieldPtr>(path, [&] { return Field::make(p, n, modulus); });
}

Json matrix_json(const ChainMatrix& a) {
    Json rows = Json::array();
    for (int i = 0; i < a.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < a.cols(); ++j) {
            Json comps = Json::array();
            for (const auto& c : a.ring()->components(a(i, j)))
                comps.push_back(a.ring()->field()->index(c));
            row.push_back(std::move(comps));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ChainMatrix parse_matrix(const Json& j, const WittRingPtr& ring, int rows, int cols,
                         const std::string& path) {
    ChainMatrix out(ring, rows, cols);
    const auto& f = *ring->field();
    as_array(j, path, static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r) {
        const auto rp = at(path, static_cast<std::size_t>(r));
        as_array(j[r], rp, static_cast<std::size_t>(cols));
        for (int c = 0; c < cols; ++c) {
            const auto ep = at(rp, static_cast<std::size_t>(c));
            const auto& e = as_array(j[r][c], ep);
            if (e.size() > static_cast<std::size_t>(ring->length()))
                bad(ep, "more Witt components than the precision " + std::to_string(ring->length()));
            std::vector<FqElement> comps(static_cast<std::size_t>(ring->length()));
            for (std::size_t k = 0; k < e.size(); ++k)
                comps[k] = element(f, e[k], at(ep, k));
            out(r, c) = ring->from_components(comps);
        }
    }
    return out;
}

Json fq_matrix_json(const ChainMatrix& a) {
    Json rows = Json::array();
    for (int i = 0; i < a.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < a.cols(); ++j)
            row.push_back(a.ring()->field()->index(a.ring()->residue(a(i, j))));
        rows.push_back(std::move(row));
    }
    return rows;
}

ChainMatrix parse_fq_matrix(const Json& j, const FieldPtr& f, int rows, int cols,
                            const std::string& path) {
    const auto R = WittRing::get(f, 1, true);
    ChainMatrix out(R, rows, cols);
    if (!j.is_array())
        bad(path, "expected an array");
    if (j.size() != static_cast<std::size_t>(rows))
        fail(ErrorCode::ShapeError, path + ": expected " + std::to_string(rows) + " rows, found " +
                                        std::to_string(j.size()));
    for (int r = 0; r < rows; ++r) {
        const auto rp = at(path, static_cast<std::size_t>(r));
        if (!j[r].is_array())
            bad(rp, "expected an array");
        if (j[r].size() != static_cast<std::size_t>(cols))
            fail(ErrorCode::ShapeError, rp + ": expected " + std::to_string(cols) + " columns, found " +
                                            std::to_string(j[r].size()));
        for (int c = 0; c < cols; ++c)
            out(r, c) = R->teichmuller(element(*f, j[r][c], at(rp, static_cast<std::size_t>(c))));
    }
    return out;
}

Json module_json(const DieudonneModule& m) {
    return {{"profile", m.profile()}, {"F", matrix_json(m.F())}, {"V", matrix_json(m.V())}};
}

DieudonneModule parse_module(const Json& j, const FieldPtr& f, const std::string& path) {
    const auto profile = int_list(key(j, "profile", path), sub(path, "profile"), 1);
    if (profile.empty())
        return DieudonneModule::zero(f);
    const int m = *std::max_element(profile.begin(), profile.end());
    const auto R = with_path<WittRingPtr>(path, [&] { return WittRing::get(f, m, true); });
    const int r = static_cast<int>(profile.size());
    const auto F = parse_matrix(key(j, "F", path), R, r, r, sub(path, "F"));
    const auto V = parse_matrix(key(j, "V", path), R, r, r, sub(path, "V"));
    return with_path<DieudonneModule>(path, [&] { return DieudonneModule::make(f, profile, F, V); });
}

Json summand_json(const CartierSummand& s) {
    Json j{{"kind", summand_kind_name(s.kind)}};
    switch (s.kind) {
    case CartierSummand::Kind::Unit:
        j["rank"] = s.rank;
        j["F"] = matrix_json(*s.unit);
        break;
    case CartierSummand::Kind::Additive:
        j["rank"] = s.rank;
        break;
    case CartierSummand::Kind::Formal:
        j["h"] = s.h;
        j["multiplicity"] = s.rank;
        break;
    case CartierSummand::Kind::Finite:
        j["module"] = module_json(*s.finite);
        break;
    }
    return j;
}

CartierSummand parse_summand(const Json& j, const FieldPtr& f, int witt_precision,
                             const std::string& path) {
    switch (parse_kind(get_string(j, "kind", path), sub(path, "kind"))) {
    case CartierSummand::Kind::Unit: {
        const int r = get_int(j, "rank", path, 1);
        const auto R = WittRing::get(f, witt_precision, true);
        return CartierSummand::make_unit(parse_matrix(key(j, "F", path), R, r, r, sub(path, "F")));
    }
    case CartierSummand::Kind::Additive:
        return CartierSummand::make_additive(get_int(j, "rank", path, 1));
    case CartierSummand::Kind::Formal: {
        const auto* mult = opt_key(j, "multiplicity");
        return CartierSummand::make_formal(get_int(j, "h", path, 1),
                                           mult ? as_small(*mult, sub(path, "multiplicity"), 1) : 1);
    }
    case CartierSummand::Kind::Finite:
        return CartierSummand::make_finite(parse_module(key(j, "module", path), f, sub(path, "module")));
    }
    bad(path, "unreachable");
}

Json connected_json(const ConnectedDM& c) {
    Json pieces = Json::array();
    for (const auto& p : c.pieces)
        pieces.push_back({{"label", p.label}, {"kind", summand_kind_name(p.kind)},
                          {"multiplicity", p.multiplicity}});
    return {{"pieces", pieces},
            {"unipotent_dimension", c.unipotent_dimension},
            {"multiplicative_corank", c.multiplicative_corank},
            {"formal_dimension", c.formal_dimension},
            {"formal_heights", c.formal_heights},
            {"finite_leftover", c.finite_leftover},
            {"v_torsion_free", c.v_torsion_free}};
}

ConnectedDM parse_connected(const Json& j, const std::string& path) {
    ConnectedDM c;
    const auto pp = sub(path, "pieces");
    const auto& pieces = as_array(key(j, "pieces", path), pp);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto ip = at(pp, i);
        c.pieces.push_back({get_string(pieces[i], "label", ip),
                            parse_kind(get_string(pieces[i], "kind", ip), sub(ip, "kind")),
                            get_int(pieces[i], "multiplicity", ip, 1)});
    }
    c.unipotent_dimension = get_int(j, "unipotent_dimension", path);
    c.multiplicative_corank = get_int(j, "multiplicative_corank", path);
    c.formal_dimension = get_int(j, "formal_dimension", path);
    c.formal_heights = int_list(key(j, "formal_heights", path), sub(path, "formal_heights"), 1);
    c.finite_leftover = get_int(j, "finite_leftover", path);
    c.v_torsion_free = get_bool(j, "v_torsion_free", path);
    return c;
}

Json to_document(const DieudonneModule& m) { return wrap("dieudonne_module", m.field(), module_json(m)); }

Json to_document(const GroupScheme& g) {
    return wrap("group_scheme", g.field(),
                {{"label", g.label}, {"p_part", module_json(g.p_part)}, {"coprime", g.coprime}});
}

Json to_document(const CartierModule& m) {
    Json summands = Json::array();
    for (const auto& s : m.summands)
        summands.push_back(summand_json(s));
    return wrap("cartier_module", m.field,
                {{"summands", summands}, {"v_precision", m.v_precision},
                 {"witt_precision", m.witt_precision}});
}

Json to_document(const GeometricPacket& p) {
    Json degrees = Json::array();
    for (const auto& [i, d] : p.degrees) {
        Json wo = Json::array();
        for (const auto& s : d.wo.summands)
            wo.push_back(summand_json(s));
        Json j{{"degree", i}, {"wo", wo}};
        if (d.o)
            j["o"] = {{"dim", d.o->dim}, {"F", fq_matrix_json(d.o->F)}, {"twist", d.o->twist}};
        if (d.b)
            j["b"] = {{"dim", d.b->dim},
                      {"C", fq_matrix_json(d.b->C)},
                      {"twist", d.b->twist},
                      {"divisible_rank", d.b->divisible_rank},
                      {"stabilized", d.b->stabilized}};
        if (d.d)
            j["d"] = fq_matrix_json(*d.d);
        if (d.etale_corank)
            j["etale_corank"] = *d.etale_corank;
        if (d.ext)
            j["ext"] = {{"F", fq_matrix_json(d.ext->F)}, {"C", fq_matrix_json(d.ext->C)}};
        degrees.push_back(std::move(j));
    }
    return {{"schema", kPacketSchema},
            {"name", p.name},
            {"field", field_json(*p.field)},
            {"witt_precision", p.witt_precision},
            {"v_precision", p.v_precision},
            {"extension_policy", policy_name(p.policy)},
            {"degrees", degrees}};
}

Json to_document(const CohomReport& r, const FieldPtr& f) {
    return wrap("cohom_report", f,
                {{"coefficient", r.coefficient},
                 {"degree", r.degree},
                 {"finite_part", module_json(r.finite_part)},
                 {"vector_dim", r.vector_dim},
                 {"vector_dim_coker", r.vector_dim_coker},
                 {"vector_dim_ker", r.vector_dim_ker},
                 {"etale_rank", opt_int(r.etale_rank)},
                 {"extension_status", extension_status_name(r.extension)}});
}

Json to_document(const FormalGroupReport& r, const FieldPtr& f) {
    return wrap("formal_group_report", f,
                {{"connected", connected_json(r.connected)},
                 {"inf_obstruction", module_json(r.inf)},
                 {"etale_corank", opt_int(r.etale_corank)},
                 {"mult_corank", r.mult_corank},
                 {"unipotent_dim", r.unipotent_dim},
                 {"extension_status", extension_status_name(r.extension)}});
}

Json to_document(const GroupSchemeReport& r, const FieldPtr& f) {
    Json cells = Json::object();
    for (int c = 0; c < 4; ++c)
        cells[cell_name(static_cast<Cell>(c))] = r.cell_lengths[static_cast<std::size_t>(c)];
    Json rho = nullptr;
    if (r.rho) {
        rho = Json::array();
        for (const auto& row : *r.rho) {
            Json jr = Json::array();
            for (const auto& x : row)
                jr.push_back(f->index(x));
            rho.push_back(std::move(jr));
        }
    }
    return wrap("group_scheme_report", f,
                {{"p_order", {{"p", r.p_order.p}, {"exponent", r.p_order.exponent}}},
                 {"coprime_order", r.coprime_order},
                 {"height", opt_int(r.height)},
                 {"cell_lengths", cells},
                 {"atoms", r.atoms ? Json(*r.atoms) : Json(nullptr)},
                 {"rho", rho},
                 {"self_dual", r.self_dual ? Json(*r.self_dual) : Json(nullptr)}});
}

Json to_document(const CheckReport& r) {
    return wrap("check_report", nullptr,
                {{"ok", r.ok}, {"defects", r.defects}, {"messages", r.messages}});
}

std::string document_kind(const Json& doc) {
    const auto schema = get_string(doc, "schema", "$");
    if (schema == kPacketSchema)
        return "packet";
    if (schema != kObjectSchema)
        bad("$.schema", "unsupported schema version \"" + schema + "\"");
    return get_string(doc, "kind", "$");
}

DieudonneModule parse_module_document(const Json& doc) {
    const auto& v = unwrap(doc, "dieudonne_module");
    return parse_module(v, parse_field(key(doc, "field", "$"), "$.field"), "$.value");
}

GroupScheme parse_group_scheme_document(const Json& doc) {
    const auto& v = unwrap(doc, "group_scheme");
    const auto f = parse_field(key(doc, "field", "$"), "$.field");
    GroupScheme g{parse_module(key(v, "p_part", "$.value"), f, "$.value.p_part"), {},
                  get_string(v, "label", "$.value")};
    const auto& c = as_array(key(v, "coprime", "$.value"), "$.value.coprime");
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto d = as_int(c[i], at("$.value.coprime", i));
        if (d < 2)
            bad(at("$.value.coprime", i), "coprime orders must be > 1");
        g.coprime.push_back(d);
    }
    return g;
}

CartierModule parse_cartier_document(const Json& doc) {
    const auto& v = unwrap(doc, "cartier_module");
    CartierModule m{parse_field(key(doc, "field", "$"), "$.field"), {},
                    get_int(v, "v_precision", "$.value", 1), get_int(v, "witt_precision", "$.value", 1)};
    const auto& s = as_array(key(v, "summands", "$.value"), "$.value.summands");
    for (std::size_t i = 0; i < s.size(); ++i)
        m.summands.push_back(parse_summand(s[i], m.field, m.witt_precision, at("$.value.summands", i)));
    cm_validate(m);
    return m;
}

GeometricPacket parse_packet_document(const Json& doc) {
    if (document_kind(doc) != "packet")
        bad("$.schema", std::string("expected \"") + kPacketSchema + "\"");
    GeometricPacket P;
    P.name = doc.contains("name") ? get_string(doc, "name", "$") : "";
    P.field = parse_field(key(doc, "field", "$"), "$.field");
    P.witt_precision = get_int(doc, "witt_precision", "$", 1);
    P.v_precision = get_int(doc, "v_precision", "$", 1);
    P.policy = ExtensionPolicy::Split;
    if (doc.contains("extension_policy")) {
        const auto s = get_string(doc, "extension_policy", "$");
        if (s == "undetermined")
            P.policy = ExtensionPolicy::Undetermined;
        else if (s != "split")
            bad("$.extension_policy", "expected \"split\" or \"undetermined\"");
    }
    const auto& degs = as_array(key(doc, "degrees", "$"), "$.degrees");
    std::vector<std::pair<int, const Json*>> ext;
    for (std::size_t k = 0; k < degs.size(); ++k) {
        const auto path = at("$.degrees", k);
        const auto& j = degs[k];
        const int i = get_int(j, "degree", path);
        if (P.degrees.count(i))
            bad(sub(path, "degree"), "duplicate degree " + std::to_string(i));
        DegreeData d;
        d.wo = {P.field, {}, P.v_precision, P.witt_precision};
        const auto& wo = as_array(key(j, "wo", path), sub(path, "wo"));
        for (std::size_t s = 0; s < wo.size(); ++s)
            d.wo.summands.push_back(parse_summand(wo[s], P.field, P.witt_precision, at(sub(path, "wo"), s)));
        if (const auto* o = opt_key(j, "o")) {
            const auto op = sub(path, "o");
            const int dim = get_int(*o, "dim", op);
            const int twist = o->contains("twist") ? static_cast<int>(as_int((*o)["twist"], sub(op, "twist"))) : 1;
            d.o = OData{dim, parse_fq_matrix(key(*o, "F", op), P.field, dim, dim, sub(op, "F")), twist};
        }
        if (const auto* b = opt_key(j, "b")) {
            const auto bp = sub(path, "b");
            const int dim = get_int(*b, "dim", bp);
            const int twist = b->contains("twist") ? static_cast<int>(as_int((*b)["twist"], sub(bp, "twist"))) : -1;
            d.b = BData{dim, parse_fq_matrix(key(*b, "C", bp), P.field, dim, dim, sub(bp, "C")), twist,
                        b->contains("divisible_rank") ? get_int(*b, "divisible_rank", bp) : 0,
                        b->contains("stabilized") ? get_bool(*b, "stabilized", bp) : true};
        }
        if (const auto* dm = opt_key(j, "d")) {
            if (!d.o || !d.b)
                bad(sub(path, "d"), "d needs both o and b");
            d.d = parse_fq_matrix(*dm, P.field, d.b->dim, d.o->dim, sub(path, "d"));
        }
        d.etale_corank = parse_opt_int(j, "etale_corank", path);
        if (const auto* e = opt_key(j, "ext"))
            ext.emplace_back(i, e);
        P.degrees[i] = std::move(d);
    }
    for (const auto& [i, e] : ext) {
        const auto path = "$.degrees[degree=" + std::to_string(i) + "].ext";
        auto& d = P.degrees[i];
        if (!d.o)
            bad(path, "ext needs o");
        int rows = 0;
        if (i > 0) {
            const auto it = P.degrees.find(i - 1);
            if (it == P.degrees.end() || !it->second.b)
                bad(path, "ext needs b in degree " + std::to_string(i - 1));
            rows = it->second.b->dim;
        }
        d.ext = ExtData{parse_fq_matrix(key(*e, "F", path), P.field, rows, d.o->dim, sub(path, "F")),
                        parse_fq_matrix(key(*e, "C", path), P.field, rows, d.o->dim, sub(path, "C"))};
    }
    packet_validate(P);
    return P;
}

CohomReport parse_cohom_report_document(const Json& doc) {
    const auto& v = unwrap(doc, "cohom_report");
    const auto f = parse_field(key(doc, "field", "$"), "$.field");
    const std::string p = "$.value";
    CohomReport r{get_string(v, "coefficient", p),
                  static_cast<int>(as_int(key(v, "degree", p), sub(p, "degree"))),
                  parse_module(key(v, "finite_part", p), f, sub(p, "finite_part")),
                  get_int(v, "vector_dim", p),
                  get_int(v, "vector_dim_coker", p),
                  get_int(v, "vector_dim_ker", p),
                  parse_opt_int(v, "etale_rank", p),
                  parse_status(get_string(v, "extension_status", p), sub(p, "extension_status"))};
    return r;
}

FormalGroupReport parse_formal_report_document(const Json& doc) {
    const auto& v = unwrap(doc, "formal_group_report");
    const auto f = parse_field(key(doc, "field", "$"), "$.field");
    const std::string p = "$.value";
    return {parse_connected(key(v, "connected", p), sub(p, "connected")),
            parse_module(key(v, "inf_obstruction", p), f, sub(p, "inf_obstruction")),
            parse_opt_int(v, "etale_corank", p),
            get_int(v, "mult_corank", p),
            get_int(v, "unipotent_dim", p),
            parse_status(get_string(v, "extension_status", p), sub(p, "extension_status"))};
}

GroupSchemeReport parse_gs_report_document(const Json& doc) {
    const auto& v = unwrap(doc, "group_scheme_report");
    const auto f = parse_field(key(doc, "field", "$"), "$.field");
    const std::string p = "$.value";
    GroupSchemeReport r;
    const auto& o = key(v, "p_order", p);
    r.p_order.p = get_int(o, "p", sub(p, "p_order"));
    r.p_order.exponent = as_int(key(o, "exponent", sub(p, "p_order")), sub(p, "p_order.exponent"));
    r.coprime_order = as_int(key(v, "coprime_order", p), sub(p, "coprime_order"));
    r.height = parse_opt_int(v, "height", p);
    const auto& cells = key(v, "cell_lengths", p);
    for (int c = 0; c < 4; ++c)
        r.cell_lengths[static_cast<std::size_t>(c)] =
            get_int(cells, cell_name(static_cast<Cell>(c)), sub(p, "cell_lengths"));
    if (const auto* a = opt_key(v, "atoms")) {
        std::vector<std::string> atoms;
        for (std::size_t i = 0; i < as_array(*a, sub(p, "atoms")).size(); ++i) {
            if (!(*a)[i].is_string())
                bad(at(sub(p, "atoms"), i), "expected a string");
            atoms.push_back((*a)[i].get<std::string>());
        }
        r.atoms = atoms;
    }
    if (const auto* rho = opt_key(v, "rho")) {
        std::vector<std::vector<FqElement>> m;
        const auto rp = sub(p, "rho");
        for (std::size_t i = 0; i < as_array(*rho, rp).size(); ++i) {
            std::vector<FqElement> row;
            for (std::size_t j = 0; j < as_array((*rho)[i], at(rp, i)).size(); ++j)
                row.push_back(element(*f, (*rho)[i][j], at(at(rp, i), j)));
            m.push_back(std::move(row));
        }
        r.rho = m;
    }
    if (opt_key(v, "self_dual"))
        r.self_dual = get_bool(v, "self_dual", p);
    return r;
}

CheckReport parse_check_report_document(const Json& doc) {
    const auto& v = unwrap(doc, "check_report");
    const std::string p = "$.value";
    CheckReport r;
    r.ok = get_bool(v, "ok", p);
    r.defects = int_list(key(v, "defects", p), sub(p, "defects"));
    const auto& m = as_array(key(v, "messages", p), sub(p, "messages"));
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m[i].is_string())
            bad(at(sub(p, "messages"), i), "expected a string");
        r.messages.push_back(m[i].get<std::string>());
    }
    return r;
}

Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail(ErrorCode::SchemaError, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                         ": malformed JSON");
    }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

GeometricPacket load_packet(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::SchemaError, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_packet_document(parse_text(ss.str()));
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + bare(e));
    }
}

} // namespace ffgs::io
