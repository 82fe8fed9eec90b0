#pragma once

#include "ffgs/chain_matrix.hpp"

#include <optional>
#include <vector>

namespace ffgs {

/// Exponents e_i of a module sum_i W_{e_i}(k). Vectors in such a module are
/// columns whose i-th entry is read modulo p^{e_i}.
using Profile = std::vector<int>;

int profile_length(const Profile& profile);
/// Canonical form of a column block: row i reduced modulo p^{e_i}.
ChainMatrix reduce_rows(const ChainMatrix& a, const Profile& profile);
/// diag(p^{e_i}) over the ring of `a`.
ChainMatrix relation_matrix(const WittRingPtr& ring, const Profile& profile);

/// U * A * V = diag(p^{d_0}, p^{d_1}, ...) with U, V invertible; d has
/// min(rows, cols) entries, nondecreasing, and d_i = m marks a zero pivot.
struct SmithForm {
    ChainMatrix U;
    ChainMatrix U_inv;
    ChainMatrix V;
    std::vector<int> d;
};

SmithForm smith_form(const ChainMatrix& a);
std::vector<int> elementary_divisors(const ChainMatrix& a);

/// Howell normal form of the row span: echelon, pivots p^v, entries above a
/// pivot reduced below p^v, closed under the saturation p^{m-v} * row.
/// Zero rows are omitted, so the zero matrix has an empty form.
ChainMatrix howell_form(const ChainMatrix& a);

/// Columns generating {x : A x = 0} in W_m^cols.
ChainMatrix matrix_kernel(const ChainMatrix& a);
/// Some x with A x = b (b a column block), or nothing.
std::optional<ChainMatrix> solve(const ChainMatrix& a, const ChainMatrix& b);

/// A submodule of sum W_{e_i} with a basis adapted to its structure:
/// column j of `basis` has exact order p^{exps[j]}; exps is nonincreasing.
struct Submodule {
    Profile exps;
    ChainMatrix basis;
};

/// A quotient of sum W_{e_i}: `proj` maps ambient vectors to quotient
/// coordinates (row i read mod p^{exps[i]}); `lift` maps back to representatives.
struct Quotient {
    Profile exps;
    ChainMatrix proj;
    ChainMatrix lift;
};

Submodule submodule_span(const ChainMatrix& gens, const Profile& ambient);
Quotient quotient_by(const ChainMatrix& gens, const Profile& ambient);
/// Coordinates of `vectors` in the adapted basis of `sub`; throws
/// BadParameter if a vector does not lie in the submodule.
ChainMatrix coordinates_in(const Submodule& sub, const Profile& ambient,
                           const ChainMatrix& vectors);
bool in_span(const Submodule& sub, const Profile& ambient, const ChainMatrix& vectors);

/// x -> A sigma^twist(x) from sum W_{source} to sum W_{target}.
struct SemilinearMap {
    ChainMatrix matrix;
    long twist = 0;
    Profile source;
    Profile target;
};

/// Validates shapes and that every column respects the annihilators
/// (v(A_ij) + e_source(j) >= e_target(i)). Throws AnnihilatorViolation.
void check_semilinear(const SemilinearMap& t);
ChainMatrix apply(const SemilinearMap& t, const ChainMatrix& vectors);
Submodule semilinear_kernel(const SemilinearMap& t);
Submodule semilinear_image(const SemilinearMap& t);
Quotient semilinear_cokernel(const SemilinearMap& t);

/// Hom between profiled modules: kernel of a linear map as a Submodule.
Submodule kernel_between(const ChainMatrix& a, const Profile& source, const Profile& target);

} // namespace ffgs
