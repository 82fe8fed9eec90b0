#pragma once

#include "ffgs/dieudonne.hpp"
#include "ffgs/iso.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ffgs {

/// Finite commutative group scheme over F_q: the Dieudonne module of the
/// p-primary part and the invariant factors of the (constant) prime-to-p part.
struct GroupScheme {
    DieudonneModule p_part;
    std::vector<long long> coprime; // d_1 | d_2 | ..., all > 1 and prime to p
    std::string label;

    const FieldPtr& field() const { return p_part.field(); }
    long long coprime_order() const;
};

enum class AtomKind { Mu, ZMod, Alpha, ZModCoprime, SSKernel };

/// `a` is the p-exponent for Mu / ZMod / Alpha and the order d for ZModCoprime;
/// it is ignored for SSKernel.
GroupScheme gs_atom(const FieldPtr& field, AtomKind kind, long long a = 1);

/// Parses "mu(p^a)", "zmod(p^a)", "alpha(p^a)", "zmod(d)" (d prime to p),
/// "ss_kernel", and the shorthand "mu_p", "Z/p", "alpha_p", "M11".
GroupScheme gs_atom(const FieldPtr& field, const std::string& name);

std::string atom_label(AtomKind kind, long long a);

/// G_p(V, rho): height one with F = rho and V = 0.
GroupScheme gs_height_one(const FieldPtr& field,
                          const std::vector<std::vector<FqElement>>& rho);

GroupScheme gs_product(const GroupScheme& a, const GroupScheme& b);
GroupScheme gs_dual(const GroupScheme& g);
GroupScheme gs_frobenius_kernel(const GroupScheme& g, int a);
GroupScheme gs_verschiebung_kernel(const GroupScheme& g, int a);

/// Normalizes cyclic orders into an invariant-factor chain d_1 | d_2 | ...
std::vector<long long> invariant_factors(const std::vector<long long>& cyclic_orders);

struct GroupSchemeReport {
    GroupOrder p_order;
    long long coprime_order = 1;
    /// Least a with V^a = 0 on the p-part; nullopt when V is not nilpotent.
    std::optional<int> height;
    std::array<int, 4> cell_lengths{}; // indexed by Cell
    /// Atom labels whose sum is isomorphic to the p-part, when found.
    std::optional<std::vector<std::string>> atoms;
    /// rho (F mod p) when the height is exactly one.
    std::optional<std::vector<std::vector<FqElement>>> rho;
    std::optional<bool> self_dual;
};

GroupSchemeReport gs_classify(const GroupScheme& g, const IsoBudget& budget = {});

} // namespace ffgs
