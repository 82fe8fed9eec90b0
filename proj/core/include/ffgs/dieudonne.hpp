#pragma once

#include "ffgs/linalg.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ffgs {

/// Finite-length module over the Dieudonne ring W(k)_sigma[F, V], realized
/// on sum_i W_{e_i}(k). F(x) = F * sigma(x), V(x) = V * sigma^-1(x).
class DieudonneModule {
  public:
    /// Validates twists (F: +1, V: -1), annihilators and FV = VF = p.
    static DieudonneModule make(const FieldPtr& field, const Profile& profile,
                                const SemilinearMap& F, const SemilinearMap& V);
    static DieudonneModule make(const FieldPtr& field, const Profile& profile,
                                const ChainMatrix& F, const ChainMatrix& V);
    static DieudonneModule zero(const FieldPtr& field);

    const FieldPtr& field() const noexcept { return field_; }
    /// W_m(k) with m = max(profile) (1 for the zero module).
    const WittRingPtr& ring() const noexcept { return ring_; }
    const Profile& profile() const noexcept { return profile_; }
    const ChainMatrix& F() const noexcept { return F_; }
    const ChainMatrix& V() const noexcept { return V_; }
    int rank() const noexcept { return static_cast<int>(profile_.size()); }
    int length() const { return profile_length(profile_); }
    bool is_zero() const noexcept { return profile_.empty(); }

    SemilinearMap F_map() const { return {F_, 1, profile_, profile_}; }
    SemilinearMap V_map() const { return {V_, -1, profile_, profile_}; }

    friend bool operator==(const DieudonneModule& a, const DieudonneModule& b);

  private:
    DieudonneModule() = default;

    FieldPtr field_;
    WittRingPtr ring_;
    Profile profile_;
    ChainMatrix F_;
    ChainMatrix V_;
};

/// The ring W_m for m the largest exponent of either module.
WittRingPtr common_ring(const DieudonneModule& a, const DieudonneModule& b);

struct GroupOrder {
    int p = 0;
    long exponent = 0; // order = p^exponent
};

int dm_length(const DieudonneModule& m);
GroupOrder dm_order(const DieudonneModule& m);

DieudonneModule direct_sum(const DieudonneModule& a, const DieudonneModule& b);
DieudonneModule direct_sum(const std::vector<DieudonneModule>& parts, const FieldPtr& field);

/// New coordinates y with x = g y; g and g_inv must respect the annihilators.
DieudonneModule change_basis(const DieudonneModule& m, const ChainMatrix& g,
                             const ChainMatrix& g_inv);

DieudonneModule dm_dual(const DieudonneModule& m);

enum class Letter { F, V };

/// The semilinear map of a word in F and V; the word acts right to left,
/// so {F, V} is F after V.
SemilinearMap word_map(const DieudonneModule& m, const std::vector<Letter>& word);
SemilinearMap power_map(const DieudonneModule& m, Letter letter, int a);

/// A Dieudonne submodule with the columns of `embedding` as its basis.
struct SubModule {
    DieudonneModule module;
    ChainMatrix embedding;
};

/// A Dieudonne quotient with its projection and a linear section.
struct QuotientModule {
    DieudonneModule module;
    ChainMatrix projection;
    ChainMatrix lift;
};

/// The submodule spanned by an F- and V-stable set of vectors.
SubModule dm_submodule(const DieudonneModule& m, const Submodule& sub);
QuotientModule dm_quotient(const DieudonneModule& m, const Quotient& q);

SubModule dm_word_kernel_sub(const DieudonneModule& m, Letter letter, int a);
SubModule dm_word_image_sub(const DieudonneModule& m, Letter letter, int a);
QuotientModule dm_word_cokernel_quot(const DieudonneModule& m, Letter letter, int a);
DieudonneModule dm_word_kernel(const DieudonneModule& m, Letter letter, int a);
DieudonneModule dm_word_cokernel(const DieudonneModule& m, Letter letter, int a);

enum class Cell { ConnectedUnipotent, ConnectedMultiplicative, EtaleUnipotent, EtaleMultiplicative };

const char* cell_name(Cell c);

/// Fitting decomposition along V then F; cells[c] embeds into the input and
/// the embeddings together give an isomorphism from the direct sum.
struct FourWaySplit {
    std::vector<SubModule> cells; // indexed by Cell
    const SubModule& operator[](Cell c) const { return cells[static_cast<std::size_t>(c)]; }
};

FourWaySplit dm_fourway(const DieudonneModule& m);

/// Throws NotEquivariant or AnnihilatorViolation when `phi` is not a
/// morphism of Dieudonne modules from `source` to `target`.
void check_morphism(const DieudonneModule& source, const DieudonneModule& target,
                    const ChainMatrix& phi);
bool is_morphism(const DieudonneModule& source, const DieudonneModule& target,
                 const ChainMatrix& phi);

struct ExactnessReport {
    /// defects[i] = length(ker out of module i) - length(im into module i),
    /// with zero maps implied before the first and after the last module.
    std::vector<int> defects;
    /// Whether consecutive maps compose to zero.
    bool is_complex = true;
    bool exact() const;
};

/// maps[i] goes from modules[i] to modules[i + 1]. Throws NotComposable on
/// shape or field mismatch and NotEquivariant when a map ignores F or V.
ExactnessReport dm_exact_check(const std::vector<DieudonneModule>& modules,
                               const std::vector<ChainMatrix>& maps);

// Standard modules.
DieudonneModule dm_mu(const FieldPtr& field, int a);
DieudonneModule dm_zmod(const FieldPtr& field, int a);
DieudonneModule dm_alpha(const FieldPtr& field, int a);
DieudonneModule dm_ss_kernel(const FieldPtr& field);
/// (k^d, F = rho, V = 0) for rho a d x d matrix over F_q.
DieudonneModule dm_height_one(const FieldPtr& field,
                              const std::vector<std::vector<FqElement>>& rho);

/// A random automorphism of sum W_{e_i} given as (g, g^-1).
std::pair<ChainMatrix, ChainMatrix> random_automorphism(const WittRingPtr& ring,
                                                        const Profile& profile,
                                                        std::mt19937_64& rng);
/// A random validated module of length at most max_length: a sum of
/// standard pieces presented in a random basis.
DieudonneModule random_module(const FieldPtr& field, int max_length, std::mt19937_64& rng);

std::string to_string(const DieudonneModule& m);

} // namespace ffgs
