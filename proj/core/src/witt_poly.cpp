#include "ffgs/witt_poly.hpp"

#include "ffgs/error.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

namespace ffgs {

namespace {

constexpr int kMaxIndex = 16;
// Variable 2j is X_j, variable 2j+1 is Y_j.
using Monomial = std::array<std::uint32_t, 2 * kMaxIndex>;
using IntPoly = std::map<Monomial, mpz_class>;

void check_budget(const IntPoly& a, const WittPolyBudget& budget) {
    if (a.size() > budget.max_terms)
        fail(ErrorCode::OverflowGuard, "Witt polynomial exceeds the term budget");
    for (const auto& [mono, c] : a)
        if (mpz_sizeinbase(c.get_mpz_t(), 2) > budget.max_coeff_bits)
            fail(ErrorCode::OverflowGuard, "Witt polynomial coefficient exceeds the bit budget");
}

void add_into(IntPoly& acc, const IntPoly& b, const mpz_class& scale) {
    for (const auto& [mono, c] : b) {
        auto [it, inserted] = acc.try_emplace(mono, 0);
        it->second += scale * c;
        if (it->second == 0)
            acc.erase(it);
    }
}

IntPoly mul(const IntPoly& a, const IntPoly& b, const WittPolyBudget& budget) {
    IntPoly r;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            Monomial m;
            for (std::size_t k = 0; k < m.size(); ++k)
                m[k] = ma[k] + mb[k];
            auto [it, inserted] = r.try_emplace(m, 0);
            it->second += ca * cb;
            if (it->second == 0)
                r.erase(it);
        }
        if (r.size() > budget.max_terms)
            fail(ErrorCode::OverflowGuard, "Witt polynomial exceeds the term budget");
    }
    check_budget(r, budget);
    return r;
}

IntPoly pow(const IntPoly& a, std::uint64_t e, const WittPolyBudget& budget) {
    IntPoly r;
    r.emplace(Monomial{}, 1);
    IntPoly base = a;
    while (e) {
        if (e & 1)
            r = mul(r, base, budget);
        e >>= 1;
        if (e)
            base = mul(base, base, budget);
    }
    return r;
}

IntPoly variable(int var) {
    Monomial m{};
    m[static_cast<std::size_t>(var)] = 1;
    IntPoly r;
    r.emplace(m, 1);
    return r;
}

mpz_class ipow(int p, int e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

/// w_i over the variables of one side (offset 0 for X, 1 for Y).
IntPoly ghost(int p, int i, int side, const WittPolyBudget& budget) {
    IntPoly r;
    for (int j = 0; j <= i; ++j) {
        IntPoly t = pow(variable(2 * j + side), ipow(p, i - j).get_ui(), budget);
        add_into(r, t, ipow(p, j));
    }
    return r;
}

struct Cache {
    std::mutex mu;
    std::map<std::tuple<int, WittPolyKind>, std::vector<IntPoly>> integer;
    std::map<std::tuple<int, WittPolyKind, int>, std::unique_ptr<WittPoly>> reduced;
};

Cache& cache() {
    static Cache c;
    return c;
}

IntPoly compute(int p, int i, WittPolyKind kind, std::vector<IntPoly>& lower,
                const WittPolyBudget& budget) {
    IntPoly acc;
    if (kind == WittPolyKind::Sum) {
        acc = ghost(p, i, 0, budget);
        add_into(acc, ghost(p, i, 1, budget), 1);
    } else {
        acc = mul(ghost(p, i, 0, budget), ghost(p, i, 1, budget), budget);
    }
    for (int j = 0; j < i; ++j) {
        IntPoly t = pow(lower[static_cast<std::size_t>(j)], ipow(p, i - j).get_ui(), budget);
        add_into(acc, t, -ipow(p, j));
    }
    const mpz_class d = ipow(p, i);
    for (auto& [mono, c] : acc) {
        if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
            fail(ErrorCode::OverflowGuard, "ghost recursion produced a non-integral coefficient");
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    }
    check_budget(acc, budget);
    return acc;
}

} // namespace

const WittPoly& witt_poly(int p, int index, WittPolyKind kind, const WittPolyBudget& budget) {
    require(is_prime(p), ErrorCode::NonPrime, "witt_poly needs a prime");
    require(index >= 0 && index < kMaxIndex, ErrorCode::BadParameter, "index out of range");
    // Exponents are stored in 32 bits.
    require(ipow(p, index) < mpz_class(1u << 31), ErrorCode::OverflowGuard,
            "monomial degree exceeds the exponent width");

    auto& c = cache();
    std::lock_guard lock(c.mu);
    auto key = std::make_tuple(p, kind, index);
    if (auto it = c.reduced.find(key); it != c.reduced.end())
        return *it->second;

    auto& lower = c.integer[{p, kind}];
    while (static_cast<int>(lower.size()) <= index) {
        const int i = static_cast<int>(lower.size());
        lower.push_back(compute(p, i, kind, lower, budget));
    }

    auto out = std::make_unique<WittPoly>();
    out->p = p;
    out->index = index;
    out->kind = kind;
    const mpz_class pz = p;
    for (const auto& [mono, coeff] : lower[static_cast<std::size_t>(index)]) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), coeff.get_mpz_t(), pz.get_mpz_t());
        if (r == 0)
            continue;
        WittPoly::Term t;
        t.x_exp.resize(static_cast<std::size_t>(index) + 1);
        t.y_exp.resize(static_cast<std::size_t>(index) + 1);
        for (int j = 0; j <= index; ++j) {
            t.x_exp[j] = mono[2 * j];
            t.y_exp[j] = mono[2 * j + 1];
        }
        t.coeff = static_cast<int>(r.get_si());
        out->terms.push_back(std::move(t));
    }
    auto degree = [](const WittPoly::Term& t) {
        std::uint64_t d = 0;
        for (std::size_t j = 0; j < t.x_exp.size(); ++j)
            d += t.x_exp[j] + t.y_exp[j];
        return d;
    };
    std::sort(out->terms.begin(), out->terms.end(), [&](const auto& a, const auto& b) {
        const auto da = degree(a);
        const auto db = degree(b);
        if (da != db)
            return da < db;
        return std::tie(b.x_exp, b.y_exp) < std::tie(a.x_exp, a.y_exp);
    });
    auto [it, inserted] = c.reduced.emplace(key, std::move(out));
    return *it->second;
}

std::string WittPoly::to_string() const {
    std::ostringstream os;
    bool first = true;
    auto factor = [&os](char name, std::size_t j, std::uint32_t e, bool& any) {
        if (!e)
            return;
        if (any)
            os << '*';
        os << name << j;
        if (e > 1)
            os << '^' << e;
        any = true;
    };
    for (const auto& t : terms) {
        if (!first)
            os << " + ";
        first = false;
        bool any = false;
        if (t.coeff != 1) {
            os << t.coeff;
            any = true;
        }
        for (std::size_t j = 0; j < t.x_exp.size(); ++j)
            factor('X', j, t.x_exp[j], any);
        for (std::size_t j = 0; j < t.y_exp.size(); ++j)
            factor('Y', j, t.y_exp[j], any);
        if (!any)
            os << '1';
    }
    if (first)
        os << '0';
    return os.str();
}

FqElement WittPoly::evaluate(const Field& field, std::span<const FqElement> x,
                             std::span<const FqElement> y) const {
    require(static_cast<int>(x.size()) > index && static_cast<int>(y.size()) > index,
            ErrorCode::LengthMismatch, "not enough arguments for the Witt polynomial");
    FqElement acc = field.zero();
    for (const auto& t : terms) {
        FqElement v = field.from_int(t.coeff);
        for (int j = 0; j <= index; ++j) {
            if (t.x_exp[j])
                v = field.mul(v, field.pow(x[j], t.x_exp[j]));
            if (t.y_exp[j])
                v = field.mul(v, field.pow(y[j], t.y_exp[j]));
        }
        acc = field.add(acc, v);
    }
    return acc;
}

} // namespace ffgs
