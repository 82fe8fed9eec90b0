#include "ffgs/witt.hpp"

#include "ffgs/error.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace ffgs {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

} // namespace

WittRingPtr WittRing::get(const FieldPtr& field, int m, bool allow_override) {
    require(field != nullptr, ErrorCode::BadParameter, "null field");
    require(m >= 1, ErrorCode::BadParameter, "Witt length must be at least 1");
    if (!allow_override)
        require(m <= kEnvelope.max_length, ErrorCode::BadParameter,
                "Witt length outside the supported envelope");
    // p^m must leave headroom for the 128-bit products.
    long double bound = 1;
    for (int i = 0; i < m; ++i)
        bound *= field->p();
    require(bound < 4.0e18L, ErrorCode::BadParameter, "p^m too large");

    using Key = std::tuple<int, int, std::vector<int>, int>;
    static std::mutex mu;
    static std::map<Key, WittRingPtr> cache;
    Key key{field->p(), field->n(), field->modulus(), m};
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    WittRingPtr ring(new WittRing(field, m));
    cache.emplace(std::move(key), ring);
    return ring;
}

WittRing::WittRing(FieldPtr field, int m) : field_(std::move(field)), m_(m) {
    const int p = field_->p();
    const int n = field_->n();
    pm_.resize(m_ + 1);
    pm_[0] = 1;
    for (int i = 1; i <= m_; ++i)
        pm_[i] = pm_[i - 1] * static_cast<std::uint64_t>(p);
    for (int i = 0; i <= n; ++i)
        lift_[i] = static_cast<std::uint64_t>(field_->modulus()[i]);

    sigma_pow_.resize(n);
    for (int a = 0; a < n; ++a) {
        sigma_pow_[a][0] = one();
        for (int j = 1; j < n; ++j)
            sigma_pow_[a][j] = WittElem{};
    }
    if (n == 1)
        return;
    // sigma(x) through the Witt components: apply frob to every component.
    WittElem x{};
    x.c[1] = 1;
    WittElem cur = x;
    for (int a = 0; a < n; ++a) {
        for (int j = 1; j < n; ++j)
            sigma_pow_[a][j] = mul(sigma_pow_[a][j - 1], cur);
        auto comps = components(cur);
        for (auto& c : comps)
            c = field_->frob(c, 1);
        cur = from_components(comps);
    }
}

WittElem WittRing::one() const {
    WittElem r{};
    r.c[0] = pm_[m_] == 1 ? 0 : 1;
    return r;
}

WittElem WittRing::from_int(long long v) const {
    const auto mod = static_cast<long long>(pm_[m_]);
    WittElem r{};
    r.c[0] = static_cast<std::uint64_t>(((v % mod) + mod) % mod);
    return r;
}

WittElem WittRing::add(const WittElem& a, const WittElem& b) const {
    WittElem r{};
    const std::uint64_t mod = pm_[m_];
    for (int i = 0; i < n(); ++i) {
        std::uint64_t s = a.c[i] + b.c[i];
        r.c[i] = s >= mod ? s - mod : s;
    }
    return r;
}

WittElem WittRing::sub(const WittElem& a, const WittElem& b) const {
    WittElem r{};
    const std::uint64_t mod = pm_[m_];
    for (int i = 0; i < n(); ++i)
        r.c[i] = a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : a.c[i] + mod - b.c[i];
    return r;
}

WittElem WittRing::neg(const WittElem& a) const { return sub(WittElem{}, a); }

WittElem WittRing::mul(const WittElem& a, const WittElem& b) const {
    const int nn = n();
    const std::uint64_t mod = pm_[m_];
    std::array<std::uint64_t, 2 * kMaxDegree> t{};
    for (int i = 0; i < nn; ++i) {
        if (!a.c[i])
            continue;
        for (int j = 0; j < nn; ++j) {
            if (!b.c[j])
                continue;
            t[i + j] = static_cast<std::uint64_t>(
                (static_cast<u128>(a.c[i]) * b.c[j] + t[i + j]) % mod);
        }
    }
    for (int k = 2 * nn - 2; k >= nn; --k) {
        const std::uint64_t c = t[k];
        if (!c)
            continue;
        t[k] = 0;
        for (int i = 0; i < nn; ++i) {
            const std::uint64_t d = mulmod(c, lift_[i], mod);
            std::uint64_t& slot = t[k - nn + i];
            slot = slot >= d ? slot - d : slot + mod - d;
        }
    }
    WittElem r{};
    for (int i = 0; i < nn; ++i)
        r.c[i] = t[i];
    return r;
}

WittElem WittRing::pow(const WittElem& a, std::uint64_t e) const {
    WittElem r = one();
    WittElem b = a;
    while (e) {
        if (e & 1)
            r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

int WittRing::valuation(const WittElem& a) const {
    int v = m_;
    const auto p = static_cast<std::uint64_t>(this->p());
    for (int i = 0; i < n(); ++i) {
        std::uint64_t c = a.c[i];
        if (!c)
            continue;
        int k = 0;
        while (c % p == 0) {
            c /= p;
            ++k;
        }
        v = std::min(v, k);
    }
    return v;
}

WittElem WittRing::unit_inverse(const WittElem& a) const {
    require(is_unit(a), ErrorCode::BadParameter, "element is not a unit");
    const FqElement r0 = field_->inv(residue(a));
    WittElem y{};
    for (int i = 0; i < n(); ++i)
        y.c[i] = r0.c[i];
    const WittElem two = from_int(2);
    // Newton: y <- y (2 - a y) doubles the p-adic precision each step.
    for (int prec = 1; prec < m_; prec *= 2)
        y = mul(y, sub(two, mul(a, y)));
    return y;
}

WittElem WittRing::mul_p(const WittElem& a, int k) const {
    if (k >= m_)
        return {};
    WittElem r{};
    for (int i = 0; i < n(); ++i)
        r.c[i] = mulmod(a.c[i], pm_[k], pm_[m_]);
    return r;
}

WittElem WittRing::div_p(const WittElem& a, int k) const {
    require(valuation(a) >= k, ErrorCode::BadParameter, "inexact division by p^k");
    WittElem r{};
    for (int i = 0; i < n(); ++i)
        r.c[i] = a.c[i] / pm_[k];
    return r;
}

WittElem WittRing::reduce(const WittElem& a, int e) const {
    if (e >= m_)
        return a;
    WittElem r{};
    for (int i = 0; i < n(); ++i)
        r.c[i] = a.c[i] % pm_[e];
    return r;
}

WittElem WittRing::quotient(const WittElem& a, int e) const {
    WittElem r{};
    if (e >= m_)
        return r;
    for (int i = 0; i < n(); ++i)
        r.c[i] = a.c[i] / pm_[e];
    return r;
}

WittElem WittRing::sigma(const WittElem& a, long power) const {
    const int nn = n();
    const long k = ((power % nn) + nn) % nn;
    if (k == 0)
        return a;
    const auto& pw = sigma_pow_[static_cast<std::size_t>(k)];
    WittElem r{};
    r.c[0] = a.c[0];
    for (int j = 1; j < nn; ++j) {
        if (!a.c[j])
            continue;
        WittElem t = pw[j];
        for (int i = 0; i < nn; ++i)
            t.c[i] = mulmod(t.c[i], a.c[j], pm_[m_]);
        r = add(r, t);
    }
    return r;
}

WittElem WittRing::teichmuller(const FqElement& x) const {
    WittElem r{};
    for (int i = 0; i < n(); ++i)
        r.c[i] = x.c[i];
    // Any lift raised to q^(m-1) is the Teichmueller representative mod p^m.
    for (int k = 1; k < m_; ++k)
        r = pow(r, field_->order());
    return r;
}

FqElement WittRing::residue(const WittElem& a) const {
    FqElement r{};
    const auto p = static_cast<std::uint64_t>(this->p());
    for (int i = 0; i < n(); ++i)
        r.c[i] = static_cast<std::uint8_t>(a.c[i] % p);
    return r;
}

WittElem WittRing::from_components(std::span<const FqElement> comps) const {
    require(static_cast<int>(comps.size()) == m_, ErrorCode::LengthMismatch,
            "component count does not match the Witt length");
    // (a_0, a_1, ...) = sum_i V^i [a_i] = sum_i p^i [a_i^(p^-i)] over a perfect base.
    WittElem r{};
    for (int i = 0; i < m_; ++i) {
        if (field_->is_zero(comps[i]))
            continue;
        r = add(r, mul_p(teichmuller(field_->frob(comps[i], -i)), i));
    }
    return r;
}

std::vector<FqElement> WittRing::components(const WittElem& a) const {
    std::vector<FqElement> out(m_);
    WittElem y = a;
    for (int i = 0; i < m_; ++i) {
        const FqElement r = residue(y);
        out[i] = field_->frob(r, i);
        y = div_p(sub(y, teichmuller(r)), 1);
    }
    return out;
}

WittElem WittRing::random(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::uint64_t> dist(0, pm_[m_] - 1);
    WittElem r{};
    for (int i = 0; i < n(); ++i)
        r.c[i] = dist(rng);
    return r;
}

std::string WittRing::to_string(const WittElem& a) const {
    std::ostringstream os;
    os << '(';
    auto comps = components(a);
    for (std::size_t i = 0; i < comps.size(); ++i)
        os << (i ? "," : "") << field_->to_string(comps[i]);
    os << ')';
    return os.str();
}

WittVector WittVector::zero(const FieldPtr& field, int m) {
    return {WittRing::get(field, m), WittElem{}};
}

WittVector WittVector::from_components(const FieldPtr& field,
                                       const std::vector<FqElement>& comps) {
    require(!comps.empty(), ErrorCode::LengthMismatch, "empty Witt vector");
    auto ring = WittRing::get(field, static_cast<int>(comps.size()));
    return {ring, ring->from_components(comps)};
}

namespace {

const WittRing& common_ring(const WittVector& u, const WittVector& v) {
    require(same_field(u.field(), v.field()), ErrorCode::FieldMismatch,
            "Witt vectors over different fields");
    require(u.length() == v.length(), ErrorCode::LengthMismatch,
            "Witt vectors of different lengths");
    return *u.ring();
}

} // namespace

WittVector witt_add(const WittVector& u, const WittVector& v) {
    const auto& ring = common_ring(u, v);
    return {u.ring(), ring.add(u.value(), v.value())};
}

WittVector witt_mul(const WittVector& u, const WittVector& v) {
    const auto& ring = common_ring(u, v);
    return {u.ring(), ring.mul(u.value(), v.value())};
}

WittVector witt_neg(const WittVector& u) { return {u.ring(), u.ring()->neg(u.value())}; }

WittVector witt_structure(const WittVector& u, StructureMap map,
                          std::optional<int> target_length) {
    const int m = u.length();
    switch (map) {
    case StructureMap::F:
        require(!target_length || *target_length == m, ErrorCode::BadTarget,
                "F preserves the length");
        return {u.ring(), u.ring()->sigma(u.value(), 1)};
    case StructureMap::V: {
        require(!target_length || *target_length == m + 1, ErrorCode::BadTarget,
                "V maps W_m to W_(m+1)");
        auto comps = u.components();
        comps.insert(comps.begin(), u.field()->zero());
        return WittVector::from_components(u.field(), comps);
    }
    case StructureMap::R: {
        const int t = target_length.value_or(m);
        require(t >= 1 && t <= m, ErrorCode::BadTarget, "restriction target out of range");
        auto comps = u.components();
        comps.resize(static_cast<std::size_t>(t));
        return WittVector::from_components(u.field(), comps);
    }
    }
    fail(ErrorCode::BadTarget, "unknown structure map");
}

WittVector teichmuller(const FieldPtr& field, const FqElement& x, int m) {
    auto ring = WittRing::get(field, m);
    return {ring, ring->teichmuller(x)};
}

} // namespace ffgs
