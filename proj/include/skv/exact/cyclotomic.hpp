#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "skv/errors.hpp"
#include "skv/exact/rational.hpp"

namespace skv {

/// Largest cyclotomic order any operation may produce (lcm lifting included).
inline std::atomic<std::uint64_t>& cyclotomic_order_cap() {
    static std::atomic<std::uint64_t> cap{1'000'000};
    return cap;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

namespace detail {

using IntPoly = std::vector<Integer>;  // low degree first

// Exact division of a by monic b over Z.
inline IntPoly divide_monic(IntPoly a, const IntPoly& b) {
    const std::size_t db = b.size() - 1;
    IntPoly q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        Integer c = a[i];
        q[i - db] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    for (std::size_t i = 0; i < db; ++i)
        if (a[i] != 0) throw InternalError("cyclotomic division left a remainder");
    return q;
}

inline std::shared_ptr<const IntPoly> compute_cyclotomic(std::uint64_t n);

struct CyclotomicCache {
    std::mutex mu;
    std::map<std::uint64_t, std::shared_ptr<const IntPoly>> polys;
};

inline CyclotomicCache& cyclotomic_cache() {
    static CyclotomicCache cache;
    return cache;
}

}  // namespace detail

/// n-th cyclotomic polynomial, coefficients low degree first. Computed by
/// dividing x^n - 1 by the cyclotomic polynomials of the proper divisors;
/// memoized and safe to call concurrently.
inline std::shared_ptr<const detail::IntPoly> cyclotomic_polynomial(std::uint64_t n) {
    if (n == 0) throw InvalidArgument("cyclotomic order must be positive");
    auto& cache = detail::cyclotomic_cache();
    {
        std::lock_guard lock(cache.mu);
        if (auto it = cache.polys.find(n); it != cache.polys.end()) return it->second;
    }
    auto poly = detail::compute_cyclotomic(n);
    std::lock_guard lock(cache.mu);
    return cache.polys.emplace(n, std::move(poly)).first->second;
}

namespace detail {

inline std::shared_ptr<const IntPoly> compute_cyclotomic(std::uint64_t n) {
    IntPoly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (std::uint64_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        p = divide_monic(std::move(p), *cyclotomic_polynomial(d));
    }
    return std::make_shared<const IntPoly>(std::move(p));
}

}  // namespace detail

/// Element of Q(zeta_n) in the power basis 1, z, ..., z^(phi(n)-1).
///
/// Values are canonical: the coefficient vector always has length phi(n)
/// and is the remainder modulo the n-th cyclotomic polynomial. Operands of
/// different orders are lifted to the lcm of their orders.
class CyclotomicNumber {
public:
    CyclotomicNumber() : order_(1), c_(1) {}
    CyclotomicNumber(Rational r) : order_(1), c_{std::move(r)} {}  // NOLINT
    CyclotomicNumber(long v) : CyclotomicNumber(Rational(v)) {}     // NOLINT
    CyclotomicNumber(int v) : CyclotomicNumber(Rational(v)) {}      // NOLINT

    /// Canonical element from power-basis coefficients (length phi(n)).
    static CyclotomicNumber from_basis(std::uint64_t n, std::vector<Rational> coeffs) {
        check_order(n);
        if (coeffs.size() != euler_phi(n))
            throw InvalidArgument("coefficient vector length must equal phi(n)");
        CyclotomicNumber r;
        r.order_ = n;
        r.c_ = std::move(coeffs);
        return r;
    }

    /// Sum of powers[k] * z^k for k = 0..len-1, any length; reduced.
    static CyclotomicNumber from_powers(std::uint64_t n, std::vector<Rational> powers) {
        check_order(n);
        CyclotomicNumber r;
        r.order_ = n;
        r.c_ = reduce(n, std::move(powers));
        return r;
    }

    /// z_n^k for any integer k.
    static CyclotomicNumber root_of_unity(std::uint64_t n, std::int64_t k) {
        check_order(n);
        std::vector<Rational> p(n);
        p[static_cast<std::size_t>(mod_floor(k, static_cast<std::int64_t>(n)))] = Rational(1);
        return from_powers(n, std::move(p));
    }

    std::uint64_t order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (!c.is_zero()) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }

    std::optional<Rational> as_rational() const {
        if (!is_rational()) return std::nullopt;
        return c_[0];
    }

    /// Membership in Z[z_n], the full ring of integers of Q(z_n).
    bool is_algebraic_integer() const {
        for (const auto& c : c_)
            if (!c.is_integer()) return false;
        return true;
    }

    bool is_p_integral(const Integer& p) const {
        for (const auto& c : c_)
            if (!c.is_p_integral(p)) return false;
        return true;
    }

    /// Same value represented in Q(z_m); requires order() | m.
    CyclotomicNumber lift(std::uint64_t m) const {
        if (m == order_) return *this;
        if (m % order_ != 0) throw InvalidArgument("lift target must be a multiple of the order");
        check_order(m);
        const std::uint64_t step = m / order_;
        std::vector<Rational> p(m);
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) p[i * step] = c_[i];
        return from_powers(m, std::move(p));
    }

    /// Field automorphism z_n -> z_n^k.
    CyclotomicNumber galois(std::int64_t k) const {
        const auto n = static_cast<std::int64_t>(order_);
        const std::int64_t kk = mod_floor(k, n);
        if (std::gcd(kk, n) != 1) throw InvalidArgument("galois_apply: k must be coprime to the order");
        if (kk == 1 % n) return *this;
        std::vector<Rational> p(order_);
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero())
                p[static_cast<std::size_t>((static_cast<std::int64_t>(i) * kk) % n)] = c_[i];
        return from_powers(order_, std::move(p));
    }

    CyclotomicNumber conj() const { return galois(-1); }

    /// Inverse through the norm: the product of the other conjugates over N(a).
    CyclotomicNumber inverse() const {
        if (is_zero()) throw DivisionByZero();
        if (order_ <= 2) return CyclotomicNumber(c_[0].inverse()).lift(order_);
        CyclotomicNumber others(Rational(1));
        others = others.lift(order_);
        const auto n = static_cast<std::int64_t>(order_);
        for (std::int64_t k = 2; k < n; ++k)
            if (std::gcd(k, n) == 1) others *= galois(k);
        CyclotomicNumber norm = *this * others;
        auto q = norm.as_rational();
        if (!q) throw InternalError("norm of a cyclotomic number is not rational");
        return others * CyclotomicNumber(q->inverse());
    }

    CyclotomicNumber& operator+=(const CyclotomicNumber& o) {
        if (o.order_ == order_) {
            for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
            return *this;
        }
        if (o.order_ == 1) {
            if (!o.c_[0].is_zero()) *this = *this + o.lift(order_);
            return *this;
        }
        auto m = common_order(order_, o.order_);
        *this = lift(m) += o.lift(m);
        return *this;
    }

    CyclotomicNumber& operator-=(const CyclotomicNumber& o) { return *this += -o; }

    CyclotomicNumber& operator*=(const CyclotomicNumber& o) {
        *this = *this * o;
        return *this;
    }

    CyclotomicNumber& operator/=(const CyclotomicNumber& o) { return *this *= o.inverse(); }

    friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
    friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
    friend CyclotomicNumber operator/(CyclotomicNumber a, const CyclotomicNumber& b) { return a /= b; }

    friend CyclotomicNumber operator-(const CyclotomicNumber& a) {
        CyclotomicNumber r = a;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        if (b.order_ == 1) return a.scaled(b.c_[0]);
        if (a.order_ == 1) return b.scaled(a.c_[0]);
        if (a.order_ != b.order_) {
            auto m = common_order(a.order_, b.order_);
            return a.lift(m) * b.lift(m);
        }
        const std::size_t d = a.c_.size();
        std::vector<Rational> p(2 * d - 1);
        for (std::size_t i = 0; i < d; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < d; ++j) {
                if (b.c_[j].is_zero()) continue;
                p[i + j] += a.c_[i] * b.c_[j];
            }
        }
        CyclotomicNumber r;
        r.order_ = a.order_;
        r.c_ = reduce(a.order_, std::move(p));
        return r;
    }

    CyclotomicNumber scaled(const Rational& s) const {
        CyclotomicNumber r = *this;
        for (auto& c : r.c_) c *= s;
        return r;
    }

    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        if (a.order_ == b.order_) return a.c_ == b.c_;
        auto m = common_order(a.order_, b.order_);
        return a.lift(m).c_ == b.lift(m).c_;
    }

    /// Human-readable form, e.g. "1 + 2*z12^3 - 1/2*z12".
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const auto& c = c_[i];
            if (c.is_zero()) continue;
            std::string mag = (c.sign() < 0 ? (-c) : c).str();
            std::string term;
            if (i == 0) {
                term = mag;
            } else {
                std::string z = "z" + std::to_string(order_) + (i > 1 ? "^" + std::to_string(i) : "");
                term = (mag == "1") ? z : mag + "*" + z;
            }
            if (out.empty())
                out = (c.sign() < 0 ? "-" : "") + term;
            else
                out += (c.sign() < 0 ? " - " : " + ") + term;
        }
        return out;
    }

private:
    static void check_order(std::uint64_t n) {
        if (n == 0) throw InvalidArgument("cyclotomic order must be positive");
        if (n > cyclotomic_order_cap().load())
            throw ResourceError("cyclotomic order " + std::to_string(n) + " exceeds the configured cap");
    }

    static std::uint64_t common_order(std::uint64_t a, std::uint64_t b) {
        auto m = std::lcm(a, b);
        check_order(m);
        return m;
    }

    // Reduce an arbitrary polynomial in z_n to the canonical power basis.
    static std::vector<Rational> reduce(std::uint64_t n, std::vector<Rational> p) {
        const std::size_t phi = euler_phi(n);
        if (p.size() > n) {
            for (std::size_t i = n; i < p.size(); ++i)
                if (!p[i].is_zero()) p[i % n] += p[i];
            p.resize(n);
        }
        if (p.size() <= phi) {
            p.resize(phi);
            return p;
        }
        auto cyc = cyclotomic_polynomial(n);
        const auto& f = *cyc;
        for (std::size_t i = p.size(); i-- > phi;) {
            if (p[i].is_zero()) continue;
            Rational c = p[i];
            for (std::size_t j = 0; j < phi; ++j)
                if (f[j] != 0) p[i - phi + j] -= c * Rational(f[j]);
            p[i] = Rational();
        }
        p.resize(phi);
        return p;
    }

    std::uint64_t order_;
    std::vector<Rational> c_;
};

inline std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& a) { return os << a.str(); }

/// galois_apply as a free function.
inline CyclotomicNumber galois_apply(std::int64_t k, const CyclotomicNumber& a) { return a.galois(k); }

}  // namespace skv
