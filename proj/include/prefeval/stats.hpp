#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

// Student's t distribution, one-sample and paired t-tests, and Holm's
// step-down correction.
namespace prefeval {

inline constexpr double kMaxDegreesOfFreedom = 1e9;

namespace detail {

// lgamma(a) - lgamma(a + b), without the cancellation of the naive form
// when a is huge.
inline double log_gamma_ratio(double a, double b) {
    if (a < 1e6) return std::lgamma(a) - std::lgamma(a + b);
    const double s = a + b;
    return -(a - 0.5) * std::log1p(b / a) - b * std::log(s) + b + 1.0 / (12.0 * a) - 1.0 / (12.0 * s);
}

inline double log_beta(double a, double b) {
    // Put the large argument first so the ratio helper sees it.
    if (a < b) std::swap(a, b);
    return std::lgamma(b) + log_gamma_ratio(a, b);
}

// Continued fraction for I_x(a,b), modified Lentz. Converges quickly for
// x < (a+1)/(a+b+2).
inline double beta_continued_fraction(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-12;
    constexpr int max_iter = 200000;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return h;
}

}  // namespace detail

// Regularized incomplete beta I_x(a, b). Takes y = 1 - x separately so callers
// holding the complement exactly do not lose it to rounding.
inline double incomplete_beta(double a, double b, double x, double y) {
    if (!(a > 0.0 && b > 0.0)) throw range_error("incomplete beta needs a, b > 0");
    if (!(x >= 0.0 && x <= 1.0)) throw range_error("incomplete beta needs x in [0,1]");
    if (x == 0.0) return 0.0;
    if (y == 0.0) return 1.0;
    const double log_front = a * std::log(x) + b * std::log(y) - detail::log_beta(a, b);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * detail::beta_continued_fraction(b, a, y) / b;
}

inline double incomplete_beta(double a, double b, double x) { return incomplete_beta(a, b, x, 1.0 - x); }

namespace detail {
// P(T > t) for t >= 0.
inline double t_upper_tail(double t, double df) {
    const double t2 = t * t;
    const double x = df / (df + t2);
    const double y = t2 / (df + t2);
    return 0.5 * incomplete_beta(0.5 * df, 0.5, x, y);
}

inline double checked_df(std::size_t df) {
    if (df < 1) throw range_error("t distribution needs df >= 1");
    return std::min(static_cast<double>(df), kMaxDegreesOfFreedom);
}
}  // namespace detail

inline double t_cdf(double t, std::size_t df) {
    const double v = detail::checked_df(df);
    if (std::isnan(t)) throw range_error("t is NaN");
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    const double upper = detail::t_upper_tail(std::abs(t), v);
    return t >= 0 ? 1.0 - upper : upper;
}

// Two-sided tail probability P(|T| >= |t|).
inline double t_two_sided_p(double t, std::size_t df) {
    const double v = detail::checked_df(df);
    if (std::isinf(t)) return 0.0;
    return std::clamp(2.0 * detail::t_upper_tail(std::abs(t), v), 0.0, 1.0);
}

struct TestResult {
    double statistic = 0.0;
    std::size_t degrees_of_freedom = 0;
    double p_value = 1.0;  // two-sided
    double mean = 0.0;
    double null_value = 0.0;
    std::size_t n = 0;
};

inline double mean_of(std::span<const double> v) {
    if (v.empty()) throw degenerate_sample_error("mean of empty sample");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Sample standard deviation (n - 1 denominator), two-pass.
inline double sample_sd(std::span<const double> v) {
    if (v.size() < 2) throw degenerate_sample_error("standard deviation needs at least 2 values");
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

// A spread this small relative to the data is rounding noise, not variance.
inline bool negligible_spread(std::span<const double> v, double sd) {
    double scale = 1.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    return sd <= 1e-12 * scale;
}

inline TestResult one_sample_t(std::span<const double> values, double null_value) {
    if (values.size() < 2) throw degenerate_sample_error("t-test needs at least 2 values");
    const double m = mean_of(values);
    const double sd = sample_sd(values);
    if (negligible_spread(values, sd)) throw degenerate_sample_error("t-test sample has zero variance");
    TestResult r;
    r.n = values.size();
    r.degrees_of_freedom = r.n - 1;
    r.mean = m;
    r.null_value = null_value;
    r.statistic = (m - null_value) / (sd / std::sqrt(static_cast<double>(r.n)));
    r.p_value = t_two_sided_p(r.statistic, r.degrees_of_freedom);
    return r;
}

inline TestResult paired_t(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw validation_error("paired t-test needs equal-length samples");
    std::vector<double> diff(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
    return one_sample_t(diff, 0.0);
}

struct CorrectedFamily {
    std::vector<double> raw;
    std::vector<double> adjusted;
    std::vector<bool> reject;
    double alpha = 0.05;
};

// Holm step-down. Adjusted p_(k) = max_{j<=k} (m-j+1) p_(j), capped at 1;
// a hypothesis is rejected iff its adjusted p is below alpha, which is the
// step-down rule with strict comparisons. Ties in raw p keep input order.
inline CorrectedFamily holm_bonferroni(std::span<const double> raw, double alpha) {
    if (raw.empty()) throw validation_error("Holm correction needs at least one p-value");
    if (!(alpha > 0.0 && alpha < 1.0)) throw range_error("alpha must lie in (0,1)");
    for (double p : raw)
        if (!(p >= 0.0 && p <= 1.0)) throw range_error("p-value outside [0,1]");
    const std::size_t m = raw.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });

    CorrectedFamily f;
    f.raw.assign(raw.begin(), raw.end());
    f.adjusted.assign(m, 1.0);
    f.reject.assign(m, false);
    f.alpha = alpha;
    double running = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t idx = order[k];
        running = std::max(running, std::min(1.0, static_cast<double>(m - k) * raw[idx]));
        f.adjusted[idx] = running;
        f.reject[idx] = running < alpha;
    }
    return f;
}

// Plain Bonferroni rejections, p < alpha / m.
inline std::vector<bool> bonferroni_reject(std::span<const double> raw, double alpha) {
    std::vector<bool> out;
    for (double p : raw) out.push_back(p * static_cast<double>(raw.size()) < alpha);
    return out;
}

inline const std::vector<double>& star_levels() {
    static const std::vector<double> levels{0.01, 0.05, 0.10};
    return levels;
}

inline std::string stars_for(double adjusted_p) {
    if (adjusted_p < 0.01) return "***";
    if (adjusted_p < 0.05) return "**";
    if (adjusted_p < 0.10) return "*";
    return "";
}

// One star per level the adjusted p falls below.
inline std::string stars_for(double adjusted_p, std::span<const double> levels) {
    std::string out;
    for (double a : levels)
        if (adjusted_p < a) out += '*';
    return out;
}

inline std::vector<std::string> star_annotation(const CorrectedFamily& family,
                                                std::span<const double> levels = star_levels()) {
    std::vector<std::string> out;
    out.reserve(family.adjusted.size());
    for (double p : family.adjusted) out.push_back(stars_for(p, levels));
    return out;
}

}  // namespace prefeval
