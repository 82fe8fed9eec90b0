#pragma once

#include "ffgs/field.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace ffgs {

/// Raw element of W_m(F_q), stored through W_m(F_q) = (Z/p^m)[x]/(f~) where f~
/// is the integer lift of the field modulus with digits in [0, p). Coefficients
/// are kept reduced into [0, p^m).
struct WittElem {
    std::array<std::uint64_t, kMaxDegree> c{};

    friend bool operator==(const WittElem&, const WittElem&) = default;
    friend auto operator<=>(const WittElem&, const WittElem&) = default;
};

class WittRing;
using WittRingPtr = std::shared_ptr<const WittRing>;

/// W_m(F_q) as a finite chain ring. All chain-ring linear algebra runs on
/// WittElem through one of these; instances are cached per (field, m).
class WittRing {
  public:
    static WittRingPtr get(const FieldPtr& field, int m, bool allow_override = false);

    const FieldPtr& field() const noexcept { return field_; }
    int length() const noexcept { return m_; }
    int p() const noexcept { return field_->p(); }
    int n() const noexcept { return field_->n(); }
    std::uint64_t modulus() const noexcept { return pm_[m_]; }
    std::uint64_t p_power(int k) const { return pm_[k]; }

    WittElem zero() const { return {}; }
    WittElem one() const;
    WittElem from_int(long long v) const;
    WittElem add(const WittElem& a, const WittElem& b) const;
    WittElem sub(const WittElem& a, const WittElem& b) const;
    WittElem neg(const WittElem& a) const;
    WittElem mul(const WittElem& a, const WittElem& b) const;
    WittElem pow(const WittElem& a, std::uint64_t e) const;
    bool is_zero(const WittElem& a) const { return a == WittElem{}; }

    /// p-adic valuation; m for zero.
    int valuation(const WittElem& a) const;
    bool is_unit(const WittElem& a) const { return valuation(a) == 0; }
    WittElem unit_inverse(const WittElem& a) const;
    /// p^k * a.
    WittElem mul_p(const WittElem& a, int k) const;
    /// The canonical y with p^k y = a (requires valuation(a) >= k); y has
    /// coefficients below p^(m-k).
    WittElem div_p(const WittElem& a, int k) const;
    /// Canonical representative of a modulo p^e.
    WittElem reduce(const WittElem& a, int e) const;
    /// Writes a = p^e q + reduce(a, e); returns q.
    WittElem quotient(const WittElem& a, int e) const;

    /// sigma^a, the Witt-functorial lift of the p-power Frobenius of F_q.
    WittElem sigma(const WittElem& a, long power) const;

    WittElem teichmuller(const FqElement& x) const;
    /// Reduction modulo p.
    FqElement residue(const WittElem& a) const;
    WittElem from_components(std::span<const FqElement> comps) const;
    std::vector<FqElement> components(const WittElem& a) const;

    WittElem random(std::mt19937_64& rng) const;
    std::string to_string(const WittElem& a) const;

  private:
    WittRing(FieldPtr field, int m);

    FieldPtr field_;
    int m_;
    std::vector<std::uint64_t> pm_;                 // p^0 .. p^m
    std::array<std::uint64_t, kMaxDegree + 1> lift_{}; // f~
    // sigma_pow_[a][j] = sigma^a(x)^j
    std::vector<std::array<WittElem, kMaxDegree>> sigma_pow_;
};

/// A length-m truncated Witt vector over F_q. Components are computed from
/// the ring representation on demand.
class WittVector {
  public:
    WittVector(WittRingPtr ring, WittElem value) : ring_(std::move(ring)), value_(value) {}

    static WittVector zero(const FieldPtr& field, int m);
    static WittVector from_components(const FieldPtr& field,
                                      const std::vector<FqElement>& comps);

    const WittRingPtr& ring() const noexcept { return ring_; }
    const FieldPtr& field() const noexcept { return ring_->field(); }
    int length() const noexcept { return ring_->length(); }
    const WittElem& value() const noexcept { return value_; }
    std::vector<FqElement> components() const { return ring_->components(value_); }

    friend bool operator==(const WittVector& a, const WittVector& b) {
        return a.length() == b.length() && same_field(a.field(), b.field()) &&
               a.value_ == b.value_;
    }

  private:
    WittRingPtr ring_;
    WittElem value_;
};

WittVector witt_add(const WittVector& u, const WittVector& v);
WittVector witt_mul(const WittVector& u, const WittVector& v);
WittVector witt_neg(const WittVector& u);

inline WittVector operator+(const WittVector& u, const WittVector& v) { return witt_add(u, v); }
inline WittVector operator*(const WittVector& u, const WittVector& v) { return witt_mul(u, v); }
inline WittVector operator-(const WittVector& u) { return witt_neg(u); }

enum class StructureMap { F, V, R };

/// F: componentwise p-th power (the base is perfect). V: the shift into
/// length m+1. R: restriction to target_length <= m.
WittVector witt_structure(const WittVector& u, StructureMap map,
                          std::optional<int> target_length = std::nullopt);

WittVector teichmuller(const FieldPtr& field, const FqElement& x, int m);

} // namespace ffgs
