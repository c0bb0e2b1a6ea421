#pragma once

#include <cmath>
#include <limits>

#include "episent/types.hpp"

namespace episent {

namespace stats_detail {

// Regularized lower incomplete gamma P(a, x) by power series; converges
// quickly for x < a + 1.
inline double gamma_p_series(double a, double x) {
    if (x <= 0.0) return 0.0;
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by Lentz's continued fraction;
// converges quickly for x >= a + 1.
inline double gamma_q_cf(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace stats_detail

inline double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw DomainError("gamma_p requires a > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return stats_detail::gamma_p_series(a, x);
    return 1.0 - stats_detail::gamma_q_cf(a, x);
}

inline double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw DomainError("gamma_q requires a > 0 and x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - stats_detail::gamma_p_series(a, x);
    return stats_detail::gamma_q_cf(a, x);
}

// Chi-square survival function: P(X >= stat) for df degrees of freedom.
inline double chi2_sf(double statistic, std::size_t df) {
    if (df == 0) throw DomainError("chi2_sf requires df >= 1");
    if (statistic < 0.0) throw DomainError("chi2_sf requires a non-negative statistic");
    return gamma_q(static_cast<double>(df) / 2.0, statistic / 2.0);
}

}  // namespace episent
