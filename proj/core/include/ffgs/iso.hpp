#pragma once

#include "ffgs/dieudonne.hpp"

#include <cstdint>
#include <optional>

namespace ffgs {

enum class IsoVerdict { Isomorphic, NotIsomorphic, Indeterminate };

const char* verdict_name(IsoVerdict v);

struct IsoBudget {
    /// Largest Hom_D(M, N) / p Hom_D(M, N) that is enumerated exhaustively.
    std::uint64_t max_enumeration = 1u << 18;
    /// Random samples drawn above that size.
    int samples = 4096;
    std::uint64_t seed = 0x5eed;
    /// Modules of larger total length are refused (reported Indeterminate).
    int max_length = 8;
};

struct IsoResult {
    IsoVerdict verdict = IsoVerdict::Indeterminate;
    /// An isomorphism M -> N when the verdict is Isomorphic.
    std::optional<ChainMatrix> witness;
    std::string reason;
};

/// Lengths of w(M) for every word w in F, V of length 1..max_word.
std::vector<int> word_image_lengths(const DieudonneModule& m, int max_word = 4);

/// Hom_D(M, N) as a Z_p-module: basis morphisms with their exact p-orders.
struct HomModule {
    std::vector<ChainMatrix> basis;
    std::vector<int> orders;
};

HomModule dm_hom(const DieudonneModule& m, const DieudonneModule& n);

/// Decides M ~ N as Dieudonne modules. Invariant screening first, then a
/// search over Hom_D(M, N) modulo p for a map that is surjective mod p.
IsoResult module_iso_test(const DieudonneModule& m, const DieudonneModule& n,
                          const IsoBudget& budget = {});

} // namespace ffgs
