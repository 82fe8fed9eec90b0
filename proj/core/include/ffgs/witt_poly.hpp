#pragma once

#include "ffgs/field.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ffgs {

enum class WittPolyKind { Sum, Product };

/// A Witt structure polynomial reduced mod p, in X_0..X_i, Y_0..Y_i.
struct WittPoly {
    struct Term {
        std::vector<std::uint32_t> x_exp; // size i + 1
        std::vector<std::uint32_t> y_exp; // size i + 1
        int coeff;                        // in [1, p)

        friend bool operator==(const Term&, const Term&) = default;
    };

    int p = 0;
    int index = 0;
    WittPolyKind kind = WittPolyKind::Sum;
    std::vector<Term> terms; // by total degree, then X-heavy first

    std::string to_string() const;
    FqElement evaluate(const Field& field, std::span<const FqElement> x,
                       std::span<const FqElement> y) const;
};

/// Budget for the intermediate integer polynomials of the ghost recursion.
struct WittPolyBudget {
    std::size_t max_terms = 200000;
    std::size_t max_coeff_bits = 1 << 16;
};

/// S_i or P_i, computed over Z by the ghost recursion and reduced mod p.
/// Memoized per (p, kind, i); safe to call from several threads. Throws
/// OverflowGuard when an intermediate polynomial exceeds the budget.
const WittPoly& witt_poly(int p, int index, WittPolyKind kind,
                          const WittPolyBudget& budget = {});

} // namespace ffgs
