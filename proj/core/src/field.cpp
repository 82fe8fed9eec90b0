#include "ffgs/field.hpp"

#include "ffgs/error.hpp"

#include <algorithm>
#include <sstream>

namespace ffgs {

std::string_view error_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::NonPrime: return "NonPrime";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::OverflowGuard: return "OverflowGuard";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::BadTarget: return "BadTarget";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::RelationViolation: return "RelationViolation";
    case ErrorCode::TwistViolation: return "TwistViolation";
    case ErrorCode::AnnihilatorViolation: return "AnnihilatorViolation";
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::NotEquivariant: return "NotEquivariant";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::PrecisionExceeded: return "PrecisionExceeded";
    case ErrorCode::UnstableTruncation: return "UnstableTruncation";
    case ErrorCode::Precondition: return "Precondition";
    case ErrorCode::MissingDegree: return "MissingDegree";
    case ErrorCode::MissingDeRhamData: return "MissingDeRhamData";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ShapeError: return "ShapeError";
    }
    return "Unknown";
}

bool is_prime(long long v) {
    if (v < 2)
        return false;
    for (long long d = 2; d * d <= v; ++d)
        if (v % d == 0)
            return false;
    return true;
}

namespace {

using Poly = std::vector<int>; // over F_p, lowest degree first

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

int inv_mod(int a, int p) {
    int r = 1;
    int b = a % p;
    for (int e = p - 2; e > 0; e >>= 1) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
    }
    return r;
}

Poly poly_mod(Poly a, const Poly& m, int p) {
    trim(a);
    const int dm = static_cast<int>(m.size()) - 1;
    const int lead_inv = inv_mod(m.back(), p);
    while (static_cast<int>(a.size()) - 1 >= dm) {
        const int shift = static_cast<int>(a.size()) - 1 - dm;
        const int t = a.back() * lead_inv % p;
        for (int i = 0; i <= dm; ++i)
            a[shift + i] = ((a[shift + i] - t * m[i]) % p + p) % p;
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(r), m, p);
}

Poly poly_gcd(Poly a, Poly b, int p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

} // namespace

bool is_irreducible(int p, const std::vector<int>& monic) {
    const int n = static_cast<int>(monic.size()) - 1;
    if (n < 1)
        return false;
    if (n == 1)
        return true;
    // Ben-Or: f is irreducible iff gcd(f, x^(p^i) - x) = 1 for i <= n/2.
    Poly xp = {0, 1};
    for (int i = 1; i <= n / 2; ++i) {
        Poly acc = {1};
        Poly base = xp;
        for (int e = p; e > 0; e >>= 1) {
            if (e & 1)
                acc = poly_mulmod(acc, base, monic, p);
            base = poly_mulmod(base, base, monic, p);
        }
        xp = acc;
        Poly diff = xp;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = ((diff[1] - 1) % p + p) % p;
        Poly g = poly_gcd(monic, diff, p);
        if (g.size() > 1)
            return false;
    }
    return true;
}

FieldPtr Field::make(int p, int n, std::optional<std::vector<int>> modulus,
                     bool allow_override) {
    require(is_prime(p), ErrorCode::NonPrime, std::to_string(p) + " is not prime");
    require(n >= 1 && n <= kMaxDegree, ErrorCode::BadParameter,
            "extension degree out of range");
    require(p < 256, ErrorCode::BadParameter, "p must be below 256");
    if (!allow_override) {
        require(p <= kEnvelope.max_p, ErrorCode::BadParameter,
                "p outside the supported envelope");
        require(n <= kEnvelope.max_degree, ErrorCode::BadParameter,
                "degree outside the supported envelope");
    }
    std::vector<int> mod;
    if (modulus) {
        mod = *modulus;
        require(static_cast<int>(mod.size()) == n + 1, ErrorCode::BadParameter,
                "modulus must have degree n");
        for (int& c : mod)
            c = ((c % p) + p) % p;
        require(mod.back() == 1, ErrorCode::BadParameter, "modulus must be monic");
        require(is_irreducible(p, mod), ErrorCode::ReducibleModulus,
                "modulus is reducible over F_" + std::to_string(p));
    } else if (n == 1) {
        mod = {0, 1};
    } else {
        std::uint64_t count = 1;
        for (int i = 0; i < n; ++i)
            count *= static_cast<std::uint64_t>(p);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<int> cand(n + 1, 0);
            cand[n] = 1;
            std::uint64_t v = idx;
            // c_0 is the least significant digit, c_{n-1} the most.
            for (int i = 0; i < n; ++i) {
                cand[i] = static_cast<int>(v % p);
                v /= p;
            }
            if (cand[0] != 0 && is_irreducible(p, cand)) {
                mod = std::move(cand);
                break;
            }
        }
    }
    return FieldPtr(new Field(p, n, std::move(mod)));
}

Field::Field(int p, int n, std::vector<int> modulus)
    : p_(p), n_(n), q_(1), modulus_(std::move(modulus)) {
    for (int i = 0; i < n_; ++i)
        q_ *= static_cast<std::uint64_t>(p_);
    frob_.resize(n_);
    for (int a = 0; a < n_; ++a) {
        auto& mat = frob_[a];
        for (auto& row : mat)
            row.fill(0);
        std::uint64_t e = 1;
        for (int k = 0; k < a; ++k)
            e *= static_cast<std::uint64_t>(p_);
        for (int j = 0; j < n_; ++j) {
            FqElement xj{};
            if (j == 0)
                xj = one();
            else
                xj = pow(gen(), static_cast<std::uint64_t>(j));
            FqElement img = pow(xj, e);
            for (int i = 0; i < n_; ++i)
                mat[i][j] = img.c[i];
        }
    }
}

FqElement Field::one() const {
    FqElement r{};
    r.c[0] = 1;
    return r;
}

FqElement Field::from_int(long long v) const {
    FqElement r{};
    r.c[0] = static_cast<std::uint8_t>(((v % p_) + p_) % p_);
    return r;
}

FqElement Field::from_coeffs(std::span<const int> coeffs) const {
    // Reduce an arbitrary-length representative modulo the field modulus.
    Poly a(coeffs.begin(), coeffs.end());
    for (int& c : a)
        c = ((c % p_) + p_) % p_;
    a = poly_mod(std::move(a), modulus_, p_);
    FqElement r{};
    for (std::size_t i = 0; i < a.size(); ++i)
        r.c[i] = static_cast<std::uint8_t>(a[i]);
    return r;
}

FqElement Field::gen() const {
    if (n_ == 1)
        return from_int(-modulus_[0]);
    FqElement r{};
    r.c[1] = 1;
    return r;
}

FqElement Field::add(const FqElement& a, const FqElement& b) const {
    FqElement r{};
    for (int i = 0; i < n_; ++i)
        r.c[i] = static_cast<std::uint8_t>((a.c[i] + b.c[i]) % p_);
    return r;
}

FqElement Field::sub(const FqElement& a, const FqElement& b) const {
    FqElement r{};
    for (int i = 0; i < n_; ++i)
        r.c[i] = static_cast<std::uint8_t>((a.c[i] + p_ - b.c[i]) % p_);
    return r;
}

FqElement Field::neg(const FqElement& a) const { return sub(zero(), a); }

FqElement Field::mul(const FqElement& a, const FqElement& b) const {
    std::array<int, 2 * kMaxDegree> t{};
    for (int i = 0; i < n_; ++i) {
        if (!a.c[i])
            continue;
        for (int j = 0; j < n_; ++j)
            t[i + j] = (t[i + j] + a.c[i] * b.c[j]) % p_;
    }
    for (int k = 2 * n_ - 2; k >= n_; --k) {
        const int c = t[k];
        if (!c)
            continue;
        t[k] = 0;
        for (int i = 0; i < n_; ++i)
            t[k - n_ + i] = ((t[k - n_ + i] - c * modulus_[i]) % p_ + p_) % p_;
    }
    FqElement r{};
    for (int i = 0; i < n_; ++i)
        r.c[i] = static_cast<std::uint8_t>(t[i]);
    return r;
}

FqElement Field::pow(const FqElement& a, std::uint64_t e) const {
    FqElement r = one();
    FqElement b = a;
    while (e) {
        if (e & 1)
            r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

FqElement Field::inv(const FqElement& a) const {
    require(!is_zero(a), ErrorCode::BadParameter, "inverse of zero");
    return pow(a, q_ - 2);
}

FqElement Field::frob(const FqElement& x, long a) const {
    const long k = ((a % n_) + n_) % n_;
    if (k == 0)
        return x;
    const auto& mat = frob_[static_cast<std::size_t>(k)];
    FqElement r{};
    for (int i = 0; i < n_; ++i) {
        int s = 0;
        for (int j = 0; j < n_; ++j)
            s += mat[i][j] * x.c[j];
        r.c[i] = static_cast<std::uint8_t>(s % p_);
    }
    return r;
}

FqElement Field::element(std::uint64_t index) const {
    FqElement r{};
    for (int i = 0; i < n_; ++i) {
        r.c[i] = static_cast<std::uint8_t>(index % p_);
        index /= p_;
    }
    return r;
}

std::uint64_t Field::index(const FqElement& a) const {
    std::uint64_t v = 0;
    for (int i = n_ - 1; i >= 0; --i)
        v = v * p_ + a.c[i];
    return v;
}

FqElement Field::random(std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> dist(0, p_ - 1);
    FqElement r{};
    for (int i = 0; i < n_; ++i)
        r.c[i] = static_cast<std::uint8_t>(dist(rng));
    return r;
}

std::string Field::to_string(const FqElement& a) const {
    if (n_ == 1)
        return std::to_string(a.c[0]);
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < n_; ++i)
        os << (i ? "," : "") << int(a.c[i]);
    os << ']';
    return os.str();
}

} // namespace ffgs
