#include "ffgs_cli/cli.hpp"

#include "ffgs_cli/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef FFGS_PACKET_DIR
#define FFGS_PACKET_DIR "data/packets"
#endif

namespace ffgs::cli {

namespace fs = std::filesystem;
using io::Json;

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::PrecisionExceeded:
    case ErrorCode::UnstableTruncation:
        return Precision;
    case ErrorCode::BudgetExceeded:
        return Indeterminate;
    default:
        return Invalid;
    }
}

std::string packet_dir() {
    if (const char* env = std::getenv("FFGS_PACKET_DIR"))
        return env;
    return FFGS_PACKET_DIR;
}

std::vector<std::string> bundled_packets() {
    std::vector<std::string> out;
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(packet_dir(), ec))
        if (e.path().extension() == ".json")
            out.push_back(e.path().stem().string());
    std::sort(out.begin(), out.end());
    return out;
}

std::string resolve_packet(const std::string& arg) {
    if (fs::is_regular_file(arg))
        return arg;
    const auto stem = fs::path(arg).stem().string();
    const auto bundled = fs::path(packet_dir()) / (stem + ".json");
    if (fs::is_regular_file(bundled))
        return bundled.string();
    fail(ErrorCode::SchemaError, "no packet file or bundled packet named " + arg);
}

namespace {

struct Options {
    bool json = false;
    std::string precision;
    int p = 2;
    int field_degree = 1;

    std::string subverb;
    std::vector<std::string> objects;
    std::string packet;
    std::string file;
    int deg = 0;
    bool all_degrees = false;
    std::string coeff;
    int n = 1;
    int a = 1;
    int level = 1;
    int length = 4;
    std::uint64_t seed = 1;
};

struct Out {
    std::string text;
    Json doc;
    int exit_code = Ok;
};

std::pair<int, int> parse_precision(const std::string& s) {
    const auto comma = s.find(',');
    require(comma != std::string::npos, ErrorCode::BadParameter, "--precision expects m,N");
    try {
        const int m = std::stoi(s.substr(0, comma));
        const int N = std::stoi(s.substr(comma + 1));
        require(m >= 1 && N >= 1 && m <= 64 && N <= 64, ErrorCode::BadParameter,
                "--precision values must lie in 1..64");
        return {m, N};
    } catch (const std::logic_error&) {
        fail(ErrorCode::BadParameter, "--precision expects m,N");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorCode::SchemaError, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FieldPtr field_of(const Options& o) { return Field::make(o.p, o.field_degree); }

GeometricPacket packet_of(const Options& o) {
    require(!o.packet.empty(), ErrorCode::BadParameter, "--packet is required");
    auto P = io::load_packet(resolve_packet(o.packet));
    if (!o.precision.empty()) {
        const auto [m, N] = parse_precision(o.precision);
        P = with_precision(P, m, N);
    }
    return P;
}

GroupScheme object_of(const Options& o, const std::string& arg) {
    if (arg.ends_with(".json") || fs::is_regular_file(arg)) {
        const auto doc = io::parse_text(read_file(arg));
        const auto kind = io::document_kind(doc);
        if (kind == "group_scheme")
            return io::parse_group_scheme_document(doc);
        if (kind == "dieudonne_module")
            return {io::parse_module_document(doc), {}, fs::path(arg).stem().string()};
        fail(ErrorCode::SchemaError, arg + ": expected a group scheme or Dieudonne module");
    }
    return gs_atom(field_of(o), arg);
}

std::vector<GroupScheme> objects_of(const Options& o, std::size_t count) {
    require(o.objects.size() == count, ErrorCode::BadParameter,
            "expected " + std::to_string(count) + " object(s)");
    std::vector<GroupScheme> out;
    for (const auto& s : o.objects)
        out.push_back(object_of(o, s));
    return out;
}

std::string field_text(const Field& f) {
    return f.n() == 1 ? "F_" + std::to_string(f.p())
                      : "F_" + std::to_string(f.p()) + "^" + std::to_string(f.n());
}

std::string module_text(const DieudonneModule& m) {
    if (m.is_zero())
        return "0";
    return to_string(m);
}

std::string scheme_text(const GroupScheme& g) {
    std::ostringstream os;
    const auto ord = dm_order(g.p_part);
    os << (g.label.empty() ? "group scheme" : g.label) << " over " << field_text(*g.field()) << "\n";
    os << "  order " << ord.p << "^" << ord.exponent;
    if (g.coprime_order() > 1)
        os << " * " << g.coprime_order();
    os << "\n  DM: " << module_text(g.p_part) << "\n";
    return os.str();
}

std::string opt_text(const std::optional<int>& v) { return v ? std::to_string(*v) : "-"; }

std::string cohom_text(const CohomReport& r, const std::string& packet) {
    std::ostringstream os;
    os << "R^" << r.degree << " f_* " << r.coefficient << " (" << packet << ")\n";
    os << "  finite part : " << module_text(r.finite_part) << "\n";
    os << "  length      : " << r.finite_part.length() << "\n";
    os << "  vector_dim  : " << r.vector_dim << " (" << r.vector_dim_coker << " + " << r.vector_dim_ker
       << ")\n";
    os << "  etale rank  : " << opt_text(r.etale_rank) << "\n";
    os << "  extension   : " << extension_status_name(r.extension) << "\n";
    return os.str();
}

std::string formal_text(const FormalGroupReport& r, const std::string& title) {
    std::ostringstream os;
    os << title << "\n";
    for (const auto& p : r.connected.pieces)
        os << "  " << p.multiplicity << " x " << p.label << "\n";
    if (r.connected.pieces.empty())
        os << "  connected part trivial\n";
    os << "  mult corank   : " << r.mult_corank << "\n";
    os << "  unipotent dim : " << r.unipotent_dim << "\n";
    os << "  etale corank  : " << opt_text(r.etale_corank) << "\n";
    os << "  inf obstruction: " << module_text(r.inf) << "\n";
    os << "  extension     : " << extension_status_name(r.extension) << "\n";
    return os.str();
}

std::string check_text(const CheckReport& r, const std::string& what) {
    std::ostringstream os;
    os << what << ": " << (r.ok ? "ok" : "FAILED") << "\n";
    for (const auto& m : r.messages)
        os << "  " << m << "\n";
    return os.str();
}

std::string classify_text(const GroupSchemeReport& r) {
    std::ostringstream os;
    os << "  order " << r.p_order.p << "^" << r.p_order.exponent;
    if (r.coprime_order > 1)
        os << " * " << r.coprime_order;
    os << "\n  height " << opt_text(r.height) << "\n  cells";
    for (int c = 0; c < 4; ++c)
        os << " " << cell_name(static_cast<Cell>(c)) << "=" << r.cell_lengths[static_cast<std::size_t>(c)];
    os << "\n";
    if (r.atoms) {
        os << "  atoms";
        for (const auto& a : *r.atoms)
            os << " " << a;
        os << "\n";
    }
    if (r.self_dual)
        os << "  self-dual " << (*r.self_dual ? "yes" : "no") << "\n";
    return os.str();
}

Out do_atom(const Options& o) {
    const auto g = objects_of(o, 1)[0];
    return {scheme_text(g), io::to_document(g)};
}

Out do_dm(const Options& o) {
    const auto& v = o.subverb;
    if (v == "show" || v == "dual") {
        const auto g = objects_of(o, 1)[0];
        const auto m = v == "show" ? g.p_part : dm_dual(g.p_part);
        return {module_text(m) + "\n", io::to_document(m)};
    }
    if (v == "fourway") {
        const auto m = objects_of(o, 1)[0].p_part;
        const auto split = dm_fourway(m);
        std::ostringstream os;
        Json cells = Json::object();
        for (int c = 0; c < 4; ++c) {
            const auto& cell = split.cells[static_cast<std::size_t>(c)].module;
            os << cell_name(static_cast<Cell>(c)) << ": " << module_text(cell) << "\n";
            cells[cell_name(static_cast<Cell>(c))] = io::module_json(cell);
        }
        return {os.str(), Json{{"schema", io::kObjectSchema}, {"kind", "fourway"},
                               {"field", io::field_json(*m.field())}, {"value", cells}}};
    }
    if (v == "iso") {
        const auto gs = objects_of(o, 2);
        const auto r = module_iso_test(gs[0].p_part, gs[1].p_part);
        Json doc{{"schema", io::kObjectSchema},
                 {"kind", "iso_result"},
                 {"value", {{"verdict", verdict_name(r.verdict)}, {"reason", r.reason}}}};
        if (r.witness)
            doc["value"]["witness"] = io::matrix_json(*r.witness);
        Out out{std::string(verdict_name(r.verdict)) + (r.reason.empty() ? "" : " (" + r.reason + ")") + "\n",
                doc};
        if (r.verdict == IsoVerdict::Indeterminate)
            out.exit_code = Indeterminate;
        return out;
    }
    if (v == "random") {
        std::mt19937_64 rng(o.seed);
        const auto m = random_module(field_of(o), o.length, rng);
        return {module_text(m) + "\n", io::to_document(m)};
    }
    fail(ErrorCode::BadParameter, "unknown dm subcommand " + v);
}

Out do_gs(const Options& o) {
    const auto& v = o.subverb;
    if (v == "show")
        return do_atom(o);
    if (v == "classify") {
        const auto g = objects_of(o, 1)[0];
        const auto r = gs_classify(g);
        return {scheme_text(g) + classify_text(r), io::to_document(r, g.field())};
    }
    GroupScheme g = [&] {
        if (v == "dual")
            return gs_dual(objects_of(o, 1)[0]);
        if (v == "frobenius-kernel")
            return gs_frobenius_kernel(objects_of(o, 1)[0], o.a);
        if (v == "verschiebung-kernel")
            return gs_verschiebung_kernel(objects_of(o, 1)[0], o.a);
        if (v == "product") {
            const auto gs = objects_of(o, 2);
            return gs_product(gs[0], gs[1]);
        }
        fail(ErrorCode::BadParameter, "unknown gs subcommand " + v);
    }();
    return {scheme_text(g), io::to_document(g)};
}

CartierModule cartier_of(const Options& o) {
    CartierModule m = [&] {
        if (!o.file.empty())
            return io::parse_cartier_document(io::parse_text(read_file(o.file)));
        return packet_of(o).degree(o.deg).wo;
    }();
    if (!o.precision.empty() && o.packet.empty()) {
        const auto [wp, N] = parse_precision(o.precision);
        const auto R = WittRing::get(m.field, wp, true);
        m.witt_precision = wp;
        m.v_precision = N;
        for (auto& s : m.summands)
            if (s.unit)
                s.unit = s.unit->with_ring(R);
    }
    cm_validate(m);
    return m;
}

Out do_cartier(const Options& o) {
    const auto m = cartier_of(o);
    const auto& v = o.subverb;
    if (v == "show")
        return {"Cartier module with " + std::to_string(m.summands.size()) + " summand(s)\n",
                io::to_document(m)};
    if (v == "trunc" || v == "tc" || v == "v-torsion") {
        const auto d = v == "trunc" ? cm_trunc(m, o.level) : v == "tc" ? cm_tc_n(m, o.n) : cm_v_torsion(m);
        return {module_text(d) + "\n", io::to_document(d)};
    }
    if (v == "connected") {
        FormalGroupReport r{cm_connected_dm(m), cm_v_torsion(m), std::nullopt, 0, 0,
                            ExtensionStatus::Canonical};
        r.mult_corank = r.connected.multiplicative_corank;
        r.unipotent_dim = r.connected.unipotent_dimension;
        return {formal_text(r, "colim_V M / V^n"), io::to_document(r, m.field)};
    }
    fail(ErrorCode::BadParameter, "unknown cartier subcommand " + v);
}

CohomReport cohom_report(const GeometricPacket& P, int deg, const std::string& coeff, int n) {
    auto suffix = [&](const std::string& prefix) {
        if (coeff.size() > prefix.size())
            return std::stoi(coeff.substr(prefix.size()));
        return n;
    };
    if (coeff == "alpha_p")
        return h_alpha_p(P, deg);
    if (coeff == "Z/p" || coeff == "z_p" || coeff == "zp")
        return h_z_p(P, deg);
    if (coeff == "mu_p")
        return h_mu_p(P, deg, n);
    if (coeff.starts_with("mu_p^"))
        return h_mu_p(P, deg, suffix("mu_p^"));
    if (coeff.starts_with("omega"))
        return h_omega_nu(P, deg, suffix("omega_"), OmegaNu::Omega);
    if (coeff.starts_with("nu"))
        return h_omega_nu(P, deg, suffix("nu_"), OmegaNu::Nu);
    fail(ErrorCode::BadParameter, "unknown coefficient " + coeff);
}

Out do_cohom(const Options& o) {
    const auto P = packet_of(o);
    if (o.subverb == "bundle") {
        const auto r = projective_bundle_mu(P, o.deg);
        return {cohom_text(r, P.name), io::to_document(r, P.field)};
    }
    require(o.subverb == "report", ErrorCode::BadParameter, "unknown cohom subcommand " + o.subverb);
    require(!o.coeff.empty(), ErrorCode::BadParameter, "--coeff is required");
    CohomReport r = [&] {
        try {
            return cohom_report(P, o.deg, o.coeff, o.n);
        } catch (const std::logic_error&) {
            fail(ErrorCode::BadParameter, "bad coefficient " + o.coeff);
        }
    }();
    return {cohom_text(r, P.name), io::to_document(r, P.field)};
}

Out do_formal(const Options& o) {
    const auto P = packet_of(o);
    const auto tag = " degree " + std::to_string(o.deg) + " (" + P.name + ")";
    if (o.subverb == "phi-fl") {
        const auto r = phi_fl_report(P, o.deg);
        return {formal_text(r, "Phi_fl" + tag), io::to_document(r, P.field)};
    }
    if (o.subverb == "psi") {
        const auto r = psi_report(P, o.deg);
        return {formal_text(r, "Psi" + tag), io::to_document(r, P.field)};
    }
    if (o.subverb == "obstruction") {
        const auto m = phi_obstruction(P, o.deg);
        return {"obstruction" + tag + ": " + module_text(m) + "\n", io::to_document(m)};
    }
    fail(ErrorCode::BadParameter, "unknown formal subcommand " + o.subverb);
}

Out do_check(const Options& o) {
    const auto P = packet_of(o);
    if (o.subverb == "packet") {
        const auto v = packet_validate(P);
        CheckReport r{v.warnings.empty(), {}, v.warnings};
        return {check_text(r, "packet " + P.name), io::to_document(r), r.ok ? Ok : Invalid};
    }
    require(o.subverb == "les" || o.subverb == "parallelogram", ErrorCode::BadParameter,
            "unknown check subcommand " + o.subverb);
    auto one = [&](int deg) {
        return o.subverb == "les" ? les_check(P, deg) : parallelogram_check(P, deg);
    };
    if (!o.all_degrees) {
        const auto r = one(o.deg);
        return {check_text(r, o.subverb + " degree " + std::to_string(o.deg)), io::to_document(r), r.ok ? Ok : Invalid};
    }
    Out out{"", Json::array(), Ok};
    for (const auto& [i, d] : P.degrees) {
        if (!d.o || !d.d)
            continue;
        const auto r = one(i);
        out.text += check_text(r, o.subverb + " degree " + std::to_string(i));
        out.doc.push_back(io::to_document(r));
        if (!r.ok)
            out.exit_code = Invalid;
    }
    return out;
}

Out do_examples(const Options& o) {
    if (o.subverb == "list") {
        std::string text;
        for (const auto& n : bundled_packets())
            text += n + "\n";
        return {text, Json{{"schema", io::kObjectSchema}, {"kind", "example_list"},
                           {"value", bundled_packets()}}};
    }
    require(o.objects.size() == 1, ErrorCode::BadParameter, "expected one example name");
    const auto path = resolve_packet(o.objects[0]);
    if (o.subverb == "path")
        return {path + "\n", Json{{"schema", io::kObjectSchema}, {"kind", "path"}, {"value", path}}};
    if (o.subverb == "show") {
        const auto doc = io::to_document(io::load_packet(path));
        return {io::dump(doc), doc};
    }
    fail(ErrorCode::BadParameter, "unknown examples subcommand " + o.subverb);
}

} // namespace

Report run(const std::vector<std::string>& args) {
    Options o;
    CLI::App app{"ffgs: finite flat group schemes, Dieudonne and Cartier modules, flat cohomology"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", o.json, "Emit the machine (JSON) block instead of text");
    app.add_option("--precision", o.precision, "Override Witt and V precision as m,N");
    app.add_option("--p", o.p, "Characteristic for atoms and random modules")->check(CLI::Range(2, 255));
    app.add_option("--field-degree", o.field_degree, "Degree of F_q over F_p")->check(CLI::Range(1, 12));

    auto objects = [&](CLI::App* s, const std::string& what) {
        s->add_option("objects", o.objects, what);
    };
    auto packet_opts = [&](CLI::App* s) {
        s->add_option("--packet", o.packet, "Packet file or bundled packet name");
        s->add_option("--deg", o.deg, "Cohomological degree");
    };

    auto* atom = app.add_subcommand("atom", "Show a standard group scheme (mu_p, Z/p^a, alpha_p^a, M11, Z/d)");
    objects(atom, "Atom name");

    auto* dm = app.add_subcommand("dm", "Dieudonne module operations");
    dm->add_option("subverb", o.subverb, "show | dual | fourway | iso | random")->required();
    objects(dm, "Atom names or JSON files");
    dm->add_option("--length", o.length, "Maximal length for random modules");
    dm->add_option("--seed", o.seed, "Random seed");

    auto* gs = app.add_subcommand("gs", "Group scheme operations");
    gs->add_option("subverb", o.subverb,
                   "show | classify | dual | frobenius-kernel | verschiebung-kernel | product")
        ->required();
    objects(gs, "Atom names or JSON files");
    gs->add_option("--a", o.a, "Power for Frobenius / Verschiebung kernels");

    auto* cartier = app.add_subcommand("cartier", "Cartier module operations");
    cartier->add_option("subverb", o.subverb, "show | trunc | tc | v-torsion | connected")->required();
    cartier->add_option("--file", o.file, "Cartier module JSON file");
    packet_opts(cartier);
    cartier->add_option("--level", o.level, "Truncation level");
    cartier->add_option("--n", o.n, "n for TC_n");

    auto* cohom = app.add_subcommand("cohom", "Flat cohomology reports from a packet");
    cohom->add_option("subverb", o.subverb, "report | bundle")->required();
    packet_opts(cohom);
    cohom->add_option("--coeff", o.coeff, "alpha_p | Z/p | mu_p | mu_p^n | omega_n | nu_n");
    cohom->add_option("--n", o.n, "Level for mu_p^n, omega_n, nu_n");

    auto* formal = app.add_subcommand("formal", "Artin-Mazur formal group reports");
    formal->add_option("subverb", o.subverb, "phi-fl | psi | obstruction")->required();
    packet_opts(formal);

    auto* check = app.add_subcommand("check", "Consistency checks on a packet");
    check->add_option("subverb", o.subverb, "les | parallelogram | packet")->required();
    packet_opts(check);
    check->add_flag("--all-degrees", o.all_degrees, "Check every degree of the packet");

    auto* examples = app.add_subcommand("examples", "Bundled example packets");
    examples->add_option("subverb", o.subverb, "list | show | path")->required();
    objects(examples, "Example name");

    Report rep;
    std::vector<const char*> argv{"ffgs"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        rep.exit_code = app.exit(e, out, err) == 0 ? Ok : Invalid;
        rep.text = out.str() + err.str();
        return rep;
    }

    try {
        if (!o.precision.empty())
            parse_precision(o.precision);
        Out out;
        if (*atom)
            out = do_atom(o);
        else if (*dm)
            out = do_dm(o);
        else if (*gs)
            out = do_gs(o);
        else if (*cartier)
            out = do_cartier(o);
        else if (*cohom)
            out = do_cohom(o);
        else if (*formal)
            out = do_formal(o);
        else if (*check)
            out = do_check(o);
        else
            out = do_examples(o);
        rep.text = out.text;
        rep.exit_code = out.exit_code;
        if (o.json)
            rep.json = io::dump(out.doc);
    } catch (const Error& e) {
        rep.exit_code = exit_code_for(e.code());
        rep.text = std::string("error: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        rep.exit_code = Invalid;
        rep.text = std::string("error: ") + e.what() + "\n";
    }
    return rep;
}

} // namespace ffgs::cli
