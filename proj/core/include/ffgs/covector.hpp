#pragma once

#include "ffgs/field.hpp"
#include "ffgs/witt.hpp"

#include <vector>

namespace ffgs {

/// Unipotent Witt covector (..., 0, a_{-(s-1)}, ..., a_{-1}, a_0) with finite
/// support. `comps()[0]` is a_{-(s-1)} and `comps().back()` is a_0; the
/// leading stored component is nonzero unless s == 1.
class Covector {
  public:
    Covector(FieldPtr field, std::vector<FqElement> comps);

    static Covector zero(const FieldPtr& field) { return {field, {field->zero()}}; }
    /// The image of u in colim_V W_n.
    static Covector from_witt(const WittVector& u);

    const FieldPtr& field() const noexcept { return field_; }
    int support() const noexcept { return static_cast<int>(comps_.size()); }
    const std::vector<FqElement>& comps() const noexcept { return comps_; }
    /// a_{-k}; zero outside the support.
    FqElement at(int k) const;
    /// The representative in W_N (requires N >= support()).
    WittVector to_witt(int length) const;

    friend bool operator==(const Covector& a, const Covector& b) {
        return same_field(a.field_, b.field_) && a.comps_ == b.comps_;
    }

  private:
    FieldPtr field_;
    std::vector<FqElement> comps_;
};

enum class CovectorOp { Add, F, V, Scalar };

Covector covector_add(const Covector& a, const Covector& b);
Covector covector_frobenius(const Covector& a);
Covector covector_verschiebung(const Covector& a);
/// x . (..., a_{-1}, a_0) = (..., sigma^-1(x) a_{-1}, x a_0).
Covector covector_scalar(const FqElement& x, const Covector& a);

} // namespace ffgs
