#pragma once

// Reference computations used by the tests. Nothing here calls the library's
// numerics: exact rationals for tiering, Boost.Math for distributions, and
// literal textbook procedures for Holm and Bradley-Terry.

#include <boost/math/distributions/non_central_t.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace oracle {

// Exact rational with int64 parts, always reduced, positive denominator.
struct Q {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Q() = default;
    Q(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const auto g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    friend Q operator+(Q a, Q b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Q operator-(Q a, Q b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend Q operator*(Q a, Q b) { return {a.num * b.num, a.den * b.den}; }
    friend bool operator==(Q a, Q b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(Q a, Q b) { return a.num * b.den < b.num * a.den; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
};

// max(1, ceil(u)) on exact rationals.
inline std::int64_t ceil_tier(Q u) {
    std::int64_t c = u.num / u.den;
    if (u.num % u.den != 0 && u.num > 0) ++c;
    return std::max<std::int64_t>(1, c);
}

struct ExactPair {
    Q eu_x, eu_y, tier_x, tier_y;
};

// probabilities and utilities as rationals; one vector per lottery
inline ExactPair enumerate(const std::vector<std::pair<Q, Q>>& x, const std::vector<std::pair<Q, Q>>& y) {
    ExactPair r;
    for (auto [p, u] : x) {
        r.eu_x = r.eu_x + p * u;
        r.tier_x = r.tier_x + p * Q(ceil_tier(u));
    }
    for (auto [p, u] : y) {
        r.eu_y = r.eu_y + p * u;
        r.tier_y = r.tier_y + p * Q(ceil_tier(u));
    }
    return r;
}

inline double t_cdf(double t, double df) { return boost::math::cdf(boost::math::students_t(df), t); }

inline double t_two_sided(double t, double df) {
    return 2.0 * boost::math::cdf(boost::math::complement(boost::math::students_t(df), std::abs(t)));
}

// Mean and sd of Normal(mu, sigma) truncated to [lo, hi].
inline std::pair<double, double> truncated_moments(double mu, double sigma, double lo, double hi) {
    const boost::math::normal n;
    const double a = (lo - mu) / sigma, b = (hi - mu) / sigma;
    const double z = boost::math::cdf(n, b) - boost::math::cdf(n, a);
    const double pa = boost::math::pdf(n, a), pb = boost::math::pdf(n, b);
    const double mean = mu + sigma * (pa - pb) / z;
    const double var = sigma * sigma * (1.0 + (a * pa - b * pb) / z - ((pa - pb) / z) * ((pa - pb) / z));
    return {mean, std::sqrt(var)};
}

// P(two-sided one-sample t-test rejects at level alpha), noncentral t.
inline double t_test_power(double delta, double df, double alpha) {
    const double crit = boost::math::quantile(boost::math::complement(boost::math::students_t(df), alpha / 2.0));
    const boost::math::non_central_t nct(df, delta);
    return boost::math::cdf(boost::math::complement(nct, crit)) + boost::math::cdf(nct, -crit);
}

// Holm rejections by the literal step-down loop.
inline std::vector<bool> holm_reject(const std::vector<double>& p, double alpha) {
    const std::size_t m = p.size();
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return p[a] < p[b]; });
    std::vector<bool> rej(m, false);
    for (std::size_t k = 0; k < m; ++k) {
        if (p[idx[k]] < alpha / static_cast<double>(m - k))
            rej[idx[k]] = true;
        else
            break;
    }
    return rej;
}

// Probability that Holm at level alpha rejects hypothesis `target`, for
// independent tests with per-test rejection curves power(j, c) = P(p_j < c).
// Holm's outcome depends only on which threshold bin each p-value falls in,
// so summing over bin assignments is exact.
template <typename Power>
double holm_rejection_probability(std::size_t m, std::size_t target, double alpha, Power power) {
    std::vector<double> cut{0.0};
    for (std::size_t k = 1; k <= m; ++k) cut.push_back(alpha / static_cast<double>(m - k + 1));
    cut.push_back(1.0);
    const std::size_t bins = m + 1;  // bin b: cut[b] <= p < cut[b+1]
    std::vector<std::vector<double>> pb(m, std::vector<double>(bins));
    for (std::size_t j = 0; j < m; ++j) {
        double prev = 0.0;
        for (std::size_t b = 0; b < bins; ++b) {
            const double cur = b + 1 == bins ? 1.0 : power(j, cut[b + 1]);
            pb[j][b] = std::max(0.0, cur - prev);
            prev = cur;
        }
    }
    std::vector<std::size_t> assign(m, 0);
    double total = 0.0;
    while (true) {
        double prob = 1.0;
        for (std::size_t j = 0; j < m; ++j) prob *= pb[j][assign[j]];
        if (prob > 0.0) {
            std::vector<std::size_t> sorted = assign;
            std::sort(sorted.begin(), sorted.end());
            // p_(k) < cut[k] iff its bin <= k - 1
            std::size_t r = 0;
            while (r < m && sorted[r] <= r) ++r;
            if (r > 0 && assign[target] <= r - 1) total += prob;
        }
        std::size_t j = 0;
        while (j < m && ++assign[j] == bins) assign[j++] = 0;
        if (j == m) break;
    }
    return total;
}

}  // namespace oracle
