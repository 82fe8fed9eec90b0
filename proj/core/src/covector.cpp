#include "ffgs/covector.hpp"

#include "ffgs/error.hpp"

#include <algorithm>

namespace ffgs {

namespace {

std::vector<FqElement> normalize(const Field& field, std::vector<FqElement> comps) {
    auto first = std::find_if(comps.begin(), comps.end(),
                              [&](const FqElement& c) { return !field.is_zero(c); });
    if (first == comps.end())
        return {field.zero()};
    comps.erase(comps.begin(), first);
    return comps;
}

} // namespace

Covector::Covector(FieldPtr field, std::vector<FqElement> comps)
    : field_(std::move(field)), comps_(normalize(*field_, std::move(comps))) {}

Covector Covector::from_witt(const WittVector& u) { return {u.field(), u.components()}; }

FqElement Covector::at(int k) const {
    if (k < 0 || k >= support())
        return field_->zero();
    return comps_[comps_.size() - 1 - static_cast<std::size_t>(k)];
}

WittVector Covector::to_witt(int length) const {
    require(length >= support(), ErrorCode::BadTarget,
            "Witt length below the covector support");
    std::vector<FqElement> b(static_cast<std::size_t>(length - support()), field_->zero());
    b.insert(b.end(), comps_.begin(), comps_.end());
    auto ring = WittRing::get(field_, length, true);
    return {ring, ring->from_components(b)};
}

Covector covector_add(const Covector& a, const Covector& b) {
    require(same_field(a.field(), b.field()), ErrorCode::FieldMismatch,
            "covectors over different fields");
    // Witt carries run toward a_0, so the sum lives in W_N for N = max support.
    const int len = std::max(a.support(), b.support());
    return Covector::from_witt(witt_add(a.to_witt(len), b.to_witt(len)));
}

Covector covector_frobenius(const Covector& a) {
    std::vector<FqElement> out = a.comps();
    for (auto& c : out)
        c = a.field()->frob(c, 1);
    return {a.field(), std::move(out)};
}

Covector covector_verschiebung(const Covector& a) {
    std::vector<FqElement> out = a.comps();
    out.pop_back();
    if (out.empty())
        return Covector::zero(a.field());
    return {a.field(), std::move(out)};
}

Covector covector_scalar(const FqElement& x, const Covector& a) {
    const Field& f = *a.field();
    std::vector<FqElement> out = a.comps();
    const int s = a.support();
    for (int idx = 0; idx < s; ++idx) {
        const int k = s - 1 - idx; // out[idx] is a_{-k}
        out[static_cast<std::size_t>(idx)] = f.mul(f.frob(x, -k), out[static_cast<std::size_t>(idx)]);
    }
    return {a.field(), std::move(out)};
}

} // namespace ffgs
