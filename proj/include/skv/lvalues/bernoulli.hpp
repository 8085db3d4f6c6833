#pragma once

#include <mutex>
#include <vector>

#include "skv/exact/rational.hpp"

namespace skv {

/// B_n(x) = sum_k binom(n, k) B_k x^(n-k), coefficients low degree first.
struct BernoulliData {
    unsigned n = 0;
    std::vector<Rational> coeffs;

    Rational operator()(const Rational& x) const {
        Rational s;
        for (std::size_t i = coeffs.size(); i-- > 0;) s = s * x + coeffs[i];
        return s;
    }
};

namespace detail {

struct BernoulliCache {
    std::mutex mu;
    std::vector<Rational> numbers{Rational(1)};  // B_0, B_1 = -1/2, ...
    std::vector<BernoulliData> polys;
};

inline BernoulliCache& bernoulli_cache() {
    static BernoulliCache c;
    return c;
}

inline Integer binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace detail

/// Bernoulli number B_n (B_1 = -1/2), from sum_{k<=n} binom(n+1, k) B_k = 0.
inline Rational bernoulli_number(unsigned n) {
    auto& c = detail::bernoulli_cache();
    std::lock_guard lock(c.mu);
    while (c.numbers.size() <= n) {
        const auto m = static_cast<unsigned>(c.numbers.size());
        Rational s;
        for (unsigned k = 0; k < m; ++k) s += Rational(detail::binomial(m + 1, k)) * c.numbers[k];
        c.numbers.push_back(-s / Rational(static_cast<long>(m) + 1));
    }
    return c.numbers[n];
}

inline BernoulliData bernoulli_polynomial(unsigned n) {
    {
        auto& c = detail::bernoulli_cache();
        std::lock_guard lock(c.mu);
        if (n < c.polys.size()) return c.polys[n];
    }
    std::vector<BernoulliData> fresh;
    for (unsigned m = 0; m <= n; ++m) {
        BernoulliData b{m, std::vector<Rational>(m + 1)};
        for (unsigned k = 0; k <= m; ++k) b.coeffs[m - k] = Rational(detail::binomial(m, k)) * bernoulli_number(k);
        fresh.push_back(std::move(b));
    }
    auto& c = detail::bernoulli_cache();
    std::lock_guard lock(c.mu);
    if (c.polys.size() < fresh.size()) c.polys = fresh;
    return c.polys[n];
}

}  // namespace skv
