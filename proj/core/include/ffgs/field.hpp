#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace ffgs {

/// Hard storage capacity for the extension degree; the soft envelope is
/// smaller (see Envelope).
inline constexpr int kMaxDegree = 8;

/// Supported parameter envelope. Values outside it are rejected unless the
/// caller passes `allow_override`.
struct Envelope {
    int max_p = 97;
    int max_degree = 4;
    int max_length = 8;
};

inline constexpr Envelope kEnvelope{};

/// Element of F_{p^n}: coefficients of the polynomial representative modulo
/// the field modulus, lowest degree first. Unused slots stay zero.
struct FqElement {
    std::array<std::uint8_t, kMaxDegree> c{};

    friend bool operator==(const FqElement&, const FqElement&) = default;
    friend auto operator<=>(const FqElement&, const FqElement&) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// The finite field F_p[x]/(modulus). Immutable; shared through FieldPtr.
class Field {
  public:
    /// Validates p and the modulus. When `modulus` is omitted the smallest
    /// monic irreducible polynomial of degree n is chosen, ordering
    /// candidates by (c_{n-1}, ..., c_0) read as a base-p number.
    static FieldPtr make(int p, int n,
                         std::optional<std::vector<int>> modulus = std::nullopt,
                         bool allow_override = false);

    int p() const noexcept { return p_; }
    int n() const noexcept { return n_; }
    std::uint64_t order() const noexcept { return q_; }
    /// Monic modulus, coefficients lowest degree first (size n + 1).
    const std::vector<int>& modulus() const noexcept { return modulus_; }

    FqElement zero() const { return {}; }
    FqElement one() const;
    FqElement from_int(long long v) const;
    FqElement from_coeffs(std::span<const int> coeffs) const;
    /// The class of x (the primitive element of the presentation when n > 1).
    FqElement gen() const;

    FqElement add(const FqElement& a, const FqElement& b) const;
    FqElement sub(const FqElement& a, const FqElement& b) const;
    FqElement neg(const FqElement& a) const;
    FqElement mul(const FqElement& a, const FqElement& b) const;
    FqElement pow(const FqElement& a, std::uint64_t e) const;
    FqElement inv(const FqElement& a) const;
    /// x^(p^a); a may be negative, sigma is invertible on a finite field.
    FqElement frob(const FqElement& x, long a) const;
    bool is_zero(const FqElement& a) const { return a == FqElement{}; }

    /// Enumeration order: coefficient c_0 is the least significant digit.
    FqElement element(std::uint64_t index) const;
    std::uint64_t index(const FqElement& a) const;
    FqElement random(std::mt19937_64& rng) const;

    std::string to_string(const FqElement& a) const;

    bool same_as(const Field& other) const noexcept {
        return p_ == other.p_ && n_ == other.n_ && modulus_ == other.modulus_;
    }

  private:
    Field(int p, int n, std::vector<int> modulus);

    int p_;
    int n_;
    std::uint64_t q_;
    std::vector<int> modulus_;
    // frob_[a] is the F_p-matrix of x -> x^(p^a), column j = image of x^j.
    std::vector<std::array<std::array<std::uint8_t, kMaxDegree>, kMaxDegree>> frob_;
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
    return a == b || (a && b && a->same_as(*b));
}

bool is_prime(long long v);

/// Irreducibility over F_p of a monic polynomial given lowest degree first.
bool is_irreducible(int p, const std::vector<int>& monic);

} // namespace ffgs
