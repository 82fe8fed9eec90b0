#pragma once

#include "ffgs/dieudonne.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ffgs {

/// One standard summand of a Cartier module over W(k)_sigma[F][[V]].
struct CartierSummand {
    enum class Kind { Unit, Additive, Formal, Finite };

    Kind kind = Kind::Additive;
    /// Unit: r; Additive: s; Formal: multiplicity c.
    int rank = 1;
    /// Unit only: the r x r F-matrix, invertible mod p.
    std::optional<ChainMatrix> unit;
    /// Formal only: relation (F - V^h) g = 0.
    int h = 1;
    /// Finite only.
    std::optional<DieudonneModule> finite;

    static CartierSummand make_unit(const ChainMatrix& u);
    static CartierSummand make_unit(const FieldPtr& field, int rank, int witt_precision);
    static CartierSummand make_additive(int rank);
    static CartierSummand make_formal(int h, int multiplicity = 1);
    static CartierSummand make_finite(const DieudonneModule& m);
};

const char* summand_kind_name(CartierSummand::Kind k);

struct CartierModule {
    FieldPtr field;
    std::vector<CartierSummand> summands;
    int v_precision = 6;
    int witt_precision = 6;
};

/// Validates shapes, unit invertibility and h >= 1.
void cm_validate(const CartierModule& m);

/// M / V^N as a finite-length Dieudonne module. Finite summands pass through.
DieudonneModule cm_trunc(const CartierModule& m, int level);
DieudonneModule cm_trunc_summand(const FieldPtr& field, const CartierSummand& s, int level,
                                 int witt_precision);

DieudonneModule cm_v_torsion(const CartierModule& m);
CartierModule cm_mod_v_torsion(const CartierModule& m);

struct ConnectedPiece {
    std::string label;
    CartierSummand::Kind kind;
    int multiplicity = 1;
};

/// colim_V M / V^n, described summand by summand.
struct ConnectedDM {
    std::vector<ConnectedPiece> pieces;
    int unipotent_dimension = 0;
    int multiplicative_corank = 0;
    int formal_dimension = 0;
    std::vector<int> formal_heights;
    /// Total length of the V-power torsion, which the colimit does not see.
    int finite_leftover = 0;
    bool v_torsion_free = true;
};

ConnectedDM cm_connected_dm(const CartierModule& m);
/// The V^n-torsion of colim_V M / V^k.
DieudonneModule cm_connected_level(const CartierModule& m, int n);

/// DM[V^n] computed on M / V^(n+1) and checked against M / V^(n+2).
DieudonneModule cm_tc_n(const CartierModule& m, int n);

struct Endo {
    enum class Kind { MultP, FPow, VPow };
    Kind kind = Kind::MultP;
    int n = 1;
};

std::string endo_name(const Endo& e);

enum class ExtensionPolicy { Undetermined, Split };

struct ComplexCohomology {
    DieudonneModule coker; // coker(f) on the previous degree
    DieudonneModule ker;   // ker(f) on the current degree
    /// Present when the extension 0 -> coker -> H -> ker -> 0 is known.
    std::optional<DieudonneModule> assembled;
    bool canonical = false;
};

/// The kernel or cokernel of f on a finite-length module, as Dieudonne modules.
DieudonneModule endo_kernel(const DieudonneModule& m, const Endo& f);
DieudonneModule endo_cokernel(const DieudonneModule& m, const Endo& f);

/// H of the two-term complex [M -f-> M] in one degree, from the truncations
/// of the previous and current degree modules at their V-precision.
ComplexCohomology cm_complex_h(const Endo& f, const CartierModule& prev, const CartierModule& cur,
                               ExtensionPolicy policy = ExtensionPolicy::Undetermined);

} // namespace ffgs
