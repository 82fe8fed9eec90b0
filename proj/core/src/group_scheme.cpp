#include "ffgs/group_scheme.hpp"

#include "ffgs/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <regex>

namespace ffgs {

long long GroupScheme::coprime_order() const {
    long long o = 1;
    for (long long d : coprime)
        o *= d;
    return o;
}

std::vector<long long> invariant_factors(const std::vector<long long>& cyclic_orders) {
    std::map<long long, std::vector<long long>> by_prime;
    for (long long d : cyclic_orders) {
        require(d >= 1, ErrorCode::BadParameter, "cyclic orders must be positive");
        for (long long q = 2; q * q <= d; ++q) {
            long long pp = 1;
            while (d % q == 0) {
                d /= q;
                pp *= q;
            }
            if (pp > 1)
                by_prime[q].push_back(pp);
        }
        if (d > 1)
            by_prime[d].push_back(d);
    }
    std::size_t count = 0;
    for (auto& [q, pps] : by_prime) {
        std::sort(pps.rbegin(), pps.rend());
        count = std::max(count, pps.size());
    }
    std::vector<long long> out(count, 1);
    for (const auto& [q, pps] : by_prime)
        for (std::size_t k = 0; k < pps.size(); ++k)
            out[count - 1 - k] *= pps[k];
    return out;
}

std::string atom_label(AtomKind kind, long long a) {
    const std::string exp = a == 1 ? "" : "^" + std::to_string(a);
    switch (kind) {
    case AtomKind::Mu:
        return "mu_p" + exp;
    case AtomKind::ZMod:
        return "Z/p" + exp;
    case AtomKind::Alpha:
        return "alpha_p" + exp;
    case AtomKind::ZModCoprime:
        return "Z/" + std::to_string(a);
    case AtomKind::SSKernel:
        return "M11";
    }
    return "?";
}

GroupScheme gs_atom(const FieldPtr& field, AtomKind kind, long long a) {
    GroupScheme g{DieudonneModule::zero(field), {}, atom_label(kind, a)};
    if (kind == AtomKind::ZModCoprime) {
        require(a >= 1 && a % field->p() != 0, ErrorCode::BadParameter,
                "coprime cyclic order must be prime to p");
        g.coprime = invariant_factors({a});
        return g;
    }
    if (kind != AtomKind::SSKernel)
        require(a >= 1 && a <= 64, ErrorCode::BadParameter, "atom exponent must be >= 1");
    switch (kind) {
    case AtomKind::Mu:
        g.p_part = dm_mu(field, static_cast<int>(a));
        break;
    case AtomKind::ZMod:
        g.p_part = dm_zmod(field, static_cast<int>(a));
        break;
    case AtomKind::Alpha:
        g.p_part = dm_alpha(field, static_cast<int>(a));
        break;
    default:
        g.p_part = dm_ss_kernel(field);
    }
    return g;
}

GroupScheme gs_atom(const FieldPtr& field, const std::string& name) {
    static const std::map<std::string, AtomKind> short_names{
        {"mu_p", AtomKind::Mu}, {"Z/p", AtomKind::ZMod}, {"alpha_p", AtomKind::Alpha}};
    if (name == "ss_kernel" || name == "M11")
        return gs_atom(field, AtomKind::SSKernel);
    static const std::regex short_re(R"((mu_p|Z/p|alpha_p)(?:\^(\d+))?)");
    static const std::regex call_re(R"((mu|zmod|alpha)\((?:p(?:\^(\d+))?|(\d+))\))");
    std::smatch mt;
    if (std::regex_match(name, mt, short_re))
        return gs_atom(field, short_names.at(mt[1]), mt[2].matched ? std::stoll(mt[2]) : 1);
    if (std::regex_match(name, mt, call_re)) {
        const std::string head = mt[1];
        const AtomKind kind = head == "mu" ? AtomKind::Mu : head == "zmod" ? AtomKind::ZMod : AtomKind::Alpha;
        if (!mt[3].matched)
            return gs_atom(field, kind, mt[2].matched ? std::stoll(mt[2]) : 1);
        long long n = std::stoll(mt[3]);
        const int p = field->p();
        if (n % p != 0) {
            require(kind == AtomKind::ZMod, ErrorCode::BadParameter,
                    name + ": only zmod takes an order prime to p");
            return gs_atom(field, AtomKind::ZModCoprime, n);
        }
        long long a = 0;
        while (n % p == 0) {
            n /= p;
            ++a;
        }
        require(n == 1, ErrorCode::BadParameter, name + ": order must be a power of p or prime to p");
        return gs_atom(field, kind, a);
    }
    fail(ErrorCode::BadParameter, "unknown atom '" + name + "'");
}

GroupScheme gs_height_one(const FieldPtr& field,
                          const std::vector<std::vector<FqElement>>& rho) {
    return {dm_height_one(field, rho), {}, {}};
}

GroupScheme gs_product(const GroupScheme& a, const GroupScheme& b) {
    require(same_field(a.field(), b.field()), ErrorCode::FieldMismatch, "product over different fields");
    std::vector<long long> orders = a.coprime;
    orders.insert(orders.end(), b.coprime.begin(), b.coprime.end());
    std::string label;
    if (!a.label.empty() && !b.label.empty())
        label = a.label + " x " + b.label;
    return {direct_sum(a.p_part, b.p_part), invariant_factors(orders), label};
}

namespace {

std::string dual_token(const std::string& t) {
    if (t.rfind("mu_p", 0) == 0)
        return "Z/p" + t.substr(4);
    if (t.rfind("Z/p", 0) == 0)
        return "mu_p" + t.substr(3);
    if (t.rfind("Z/", 0) == 0 || t.rfind("alpha_p", 0) == 0 || t == "M11")
        return t;
    return "D(" + t + ")";
}

} // namespace

GroupScheme gs_dual(const GroupScheme& g) {
    std::string label;
    if (!g.label.empty()) {
        std::size_t start = 0;
        while (true) {
            const std::size_t cut = g.label.find(" x ", start);
            label += dual_token(g.label.substr(start, cut - start));
            if (cut == std::string::npos)
                break;
            label += " x ";
            start = cut + 3;
        }
    }
    return {dm_dual(g.p_part), g.coprime, label};
}

GroupScheme gs_frobenius_kernel(const GroupScheme& g, int a) {
    return {dm_word_kernel(g.p_part, Letter::V, a), {}, {}};
}

GroupScheme gs_verschiebung_kernel(const GroupScheme& g, int a) {
    return {dm_word_kernel(g.p_part, Letter::F, a), {}, {}};
}

namespace {

std::optional<int> v_height(const DieudonneModule& m) {
    if (m.is_zero())
        return 0;
    for (int a = 1; a <= m.length(); ++a)
        if (reduce_rows(power_map(m, Letter::V, a).matrix, m.profile()).is_zero())
            return a;
    return std::nullopt;
}

struct Candidate {
    DieudonneModule module;
    std::vector<std::string> labels;
};

/// Decomposes one four-way cell into standard pieces, or nullopt.
std::optional<std::vector<std::string>> decompose_cell(const DieudonneModule& cell, Cell which,
                                                       const IsoBudget& budget) {
    const FieldPtr& f = cell.field();
    if (cell.is_zero())
        return std::vector<std::string>{};
    std::vector<Candidate> candidates;
    if (which == Cell::ConnectedMultiplicative || which == Cell::EtaleUnipotent) {
        Profile prof = cell.profile();
        std::sort(prof.rbegin(), prof.rend());
        Candidate c{DieudonneModule::zero(f), {}};
        for (int e : prof) {
            const bool mult = which == Cell::ConnectedMultiplicative;
            c.module = direct_sum(c.module, mult ? dm_mu(f, e) : dm_zmod(f, e));
            c.labels.push_back(atom_label(mult ? AtomKind::Mu : AtomKind::ZMod, e));
        }
        candidates.push_back(c);
    } else if (which == Cell::ConnectedUnipotent) {
        for (int e : cell.profile())
            if (e != 1)
                return std::nullopt;
        // Partitions of the length into alpha_p^a (size a) and M11 (size 2).
        std::vector<std::pair<std::string, DieudonneModule>> parts;
        parts.emplace_back("M11", dm_ss_kernel(f));
        for (int a = cell.length(); a >= 1; --a)
            parts.emplace_back(atom_label(AtomKind::Alpha, a), dm_alpha(f, a));
        std::function<void(std::size_t, int, Candidate)> rec = [&](std::size_t from, int left, Candidate c) {
            if (left == 0) {
                candidates.push_back(c);
                return;
            }
            for (std::size_t i = from; i < parts.size(); ++i) {
                const int len = parts[i].second.length();
                if (len > left)
                    continue;
                Candidate next{direct_sum(c.module, parts[i].second), c.labels};
                next.labels.push_back(parts[i].first);
                rec(i, left - len, next);
            }
        };
        rec(0, cell.length(), Candidate{DieudonneModule::zero(f), {}});
    }
    for (const auto& c : candidates)
        if (module_iso_test(c.module, cell, budget).verdict == IsoVerdict::Isomorphic)
            return c.labels;
    return std::nullopt;
}

} // namespace

GroupSchemeReport gs_classify(const GroupScheme& g, const IsoBudget& budget) {
    GroupSchemeReport r;
    const auto& m = g.p_part;
    r.p_order = dm_order(m);
    r.coprime_order = g.coprime_order();
    r.height = v_height(m);

    const FourWaySplit split = dm_fourway(m);
    std::vector<std::string> atoms;
    bool resolved = true;
    for (int c = 0; c < 4; ++c) {
        const auto& cell = split.cells[static_cast<std::size_t>(c)].module;
        r.cell_lengths[static_cast<std::size_t>(c)] = cell.length();
        if (!resolved)
            continue;
        auto parts = decompose_cell(cell, static_cast<Cell>(c), budget);
        if (!parts)
            resolved = false;
        else
            atoms.insert(atoms.end(), parts->begin(), parts->end());
    }
    if (resolved) {
        for (long long d : g.coprime)
            atoms.push_back(atom_label(AtomKind::ZModCoprime, d));
        r.atoms = atoms;
    }

    if (r.height == 1) {
        std::vector<std::vector<FqElement>> rho(static_cast<std::size_t>(m.rank()));
        for (int i = 0; i < m.rank(); ++i)
            for (int j = 0; j < m.rank(); ++j)
                rho[static_cast<std::size_t>(i)].push_back(m.ring()->residue(m.F()(i, j)));
        r.rho = rho;
    }

    const IsoResult sd = module_iso_test(dm_dual(m), m, budget);
    if (sd.verdict != IsoVerdict::Indeterminate)
        r.self_dual = sd.verdict == IsoVerdict::Isomorphic;
    return r;
}

} // namespace ffgs
