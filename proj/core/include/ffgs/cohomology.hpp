#pragma once

#include "ffgs/cartier.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ffgs {

/// H^i(X, O_X) with its p-linear Frobenius x -> F sigma(x).
struct OData {
    int dim = 0;
    ChainMatrix F; // over W_1(k)
    int twist = 1;
};

/// H^i(X, B_inf Omega^1): a finite part with the Cartier operator
/// x -> C sigma^-1(x), plus `divisible_rank` copies of a C-divisible
/// vector-group piece that has no finite presentation.
struct BData {
    int dim = 0;
    ChainMatrix C;
    int twist = -1;
    int divisible_rank = 0;
    bool stabilized = true;
};

/// Off-diagonal data of 0 -> coker(d_{i-1}) -> H^i(O -> B) -> ker(d_i) -> 0,
/// both b_{i-1}-dim x o_i-dim in ambient coordinates: the B-component of the
/// map F: H^i(O) -> H^i(O -> B), and the map C: H^i(O -> B) -> H^{i-1}(B) on
/// the ker(d_i) part.
struct ExtData {
    ChainMatrix F;
    ChainMatrix C;
};

struct DegreeData {
    CartierModule wo;
    std::optional<OData> o;
    std::optional<BData> b;
    std::optional<ChainMatrix> d; // b_i-dim x o_i-dim
    std::optional<int> etale_corank;
    std::optional<ExtData> ext;
};

struct GeometricPacket {
    std::string name;
    FieldPtr field;
    int witt_precision = 6;
    int v_precision = 6;
    ExtensionPolicy policy = ExtensionPolicy::Split;
    std::map<int, DegreeData> degrees;

    /// Throws MissingDegree for a missing degree >= 0; negative degrees are zero.
    DegreeData degree(int i) const;
    bool has_degree(int i) const { return i < 0 || degrees.count(i) > 0; }
};

/// The same packet read at other Witt and V precisions.
GeometricPacket with_precision(const GeometricPacket& p, int witt_precision, int v_precision);

struct PacketValidation {
    std::vector<std::string> warnings;
};

/// Structural problems throw SchemaError / ShapeError; consistency problems
/// between the Witt data and the o/b/d data are warnings.
PacketValidation packet_validate(const GeometricPacket& p);

enum class ExtensionStatus { Canonical, SplitAssumed, Undetermined };
const char* extension_status_name(ExtensionStatus s);

struct CohomReport {
    std::string coefficient;
    int degree = 0;
    DieudonneModule finite_part;
    /// Vector-group dimension, from the previous degree (cokernel side) and
    /// the current degree (kernel side).
    int vector_dim = 0;
    int vector_dim_coker = 0;
    int vector_dim_ker = 0;
    std::optional<int> etale_rank;
    ExtensionStatus extension = ExtensionStatus::Canonical;
};

CohomReport h_alpha_p(const GeometricPacket& p, int i);
CohomReport h_z_p(const GeometricPacket& p, int i);
/// n = 1 uses the de Rham data; n > 1 the Witt data.
CohomReport h_mu_p(const GeometricPacket& p, int i, int n = 1);
enum class OmegaNu { Omega, Nu };
CohomReport h_omega_nu(const GeometricPacket& p, int i, int n, OmegaNu which);
CohomReport projective_bundle_mu(const GeometricPacket& p, int i);

/// log_p of #ker(x -> x - A x^(p)) on F_{q^t}^dim in degree i.
int zp_points_log(const GeometricPacket& p, int i, int t);

/// A piece of cohomology of CW O_X: a finite Dieudonne module plus a number of
/// vector-group (G_a-hat type) copies.
struct CWPiece {
    DieudonneModule finite;
    int vector_dim = 0;
};

/// ker / coker of f on H^j(X, CW O_X), modelled as colim_V of the V-torsion-free
/// part of wo_j plus the V-torsion of wo_{j+1}.
CWPiece cw_kernel(const GeometricPacket& p, int j, const Endo& f);
CWPiece cw_cokernel(const GeometricPacket& p, int j, const Endo& f);

struct FormalGroupReport {
    ConnectedDM connected;
    DieudonneModule inf;
    std::optional<int> etale_corank;
    int mult_corank = 0;
    int unipotent_dim = 0;
    ExtensionStatus extension = ExtensionStatus::Canonical;
};

FormalGroupReport phi_fl_report(const GeometricPacket& p, int i);
DieudonneModule phi_obstruction(const GeometricPacket& p, int i);
FormalGroupReport psi_report(const GeometricPacket& p, int i);

/// H^i(X, [O -> B_inf Omega^1]) as a Dieudonne module with the maps of both
/// triangles, all over W_1(k).
struct DeRhamDegree {
    DieudonneModule h_o;      // (o_i, F, 0)
    DieudonneModule h_b_prev; // (b_{i-1} finite part, 0, C)
    DieudonneModule h_c;      // H^i of the two-term complex
    ChainMatrix iota;         // b_{i-1} -> H^i(C)
    ChainMatrix pi;           // H^i(C) -> o_i
    ChainMatrix f_c;          // o_i -> H^i(C), sigma-linear
    ChainMatrix c_c;          // H^i(C) -> b_{i-1}, sigma^-1-linear
    int vector_dim = 0;       // divisible part of b_{i-1}
    ExtensionStatus extension = ExtensionStatus::Canonical;
};

/// Throws MissingDeRhamData when o/b/d data is absent in degree i-1 or i, and
/// ShapeError when F does not land in ker d.
DeRhamDegree de_rham_degree(const GeometricPacket& p, int i);

struct CheckReport {
    bool ok = true;
    std::vector<int> defects;
    std::vector<std::string> messages;
};

CheckReport les_check(const GeometricPacket& p, int i);
CheckReport parallelogram_check(const GeometricPacket& p, int i);

} // namespace ffgs
