#pragma once

// Test-only reference computations. Nothing here calls into the library's
// closed forms, so these stay usable as independent checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hawkes::testing {

struct RunningStats {
    std::size_t n{0};
    double mean{0.0};
    double m2{0.0};

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    [[nodiscard]] double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    [[nodiscard]] double std_error() const { return std::sqrt(variance() / static_cast<double>(n)); }
};

/// Adaptive Simpson quadrature.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int depth = 40) {
    auto simpson = [&](double lo, double hi, double flo, double fmid, double fhi) {
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    };
    std::function<double(double, double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps,
            int d) {
            const double mid = 0.5 * (lo + hi);
            const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
            const double flm = f(lm), frm = f(rm);
            const double left = simpson(lo, mid, flo, flm, fmid);
            const double right = simpson(mid, hi, fmid, frm, fhi);
            if (d <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
                return left + right + (left + right - whole) / 15.0;
            }
            return rec(lo, mid, flo, flm, fmid, left, eps / 2.0, d - 1) +
                   rec(mid, hi, fmid, frm, fhi, right, eps / 2.0, d - 1);
        };
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return rec(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, depth);
}

/// 10-point Gauss-Legendre on [a, b]; exact enough for smooth exponentials
/// over short inter-event segments.
inline double gauss_legendre(const std::function<double(double)>& f, double a, double b) {
    static constexpr std::array<double, 5> x{0.1488743389816312, 0.4333953941292472,
                                             0.6794095682990244, 0.8650633666889845,
                                             0.9739065285171717};
    static constexpr std::array<double, 5> w{0.2955242247147529, 0.2692667193099963,
                                             0.2190863625159820, 0.1494513644519048,
                                             0.0666713443086881};
    const double half = 0.5 * (b - a), centre = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += w[i] * (f(centre - half * x[i]) + f(centre + half * x[i]));
    }
    return half * sum;
}

/// Piecewise-deterministic path of (lambda_t, N_t) rebuilt from event times
/// by integrating d lambda = beta (lambda_inf - lambda) dt between jumps.
struct PathModel {
    double alpha, beta, lambda_inf, lambda0;

    /// lambda just before time t (segment evolution from the last jump).
    [[nodiscard]] double lambda_between(double lambda_start, double dt) const {
        return lambda_inf + (lambda_start - lambda_inf) * std::exp(-beta * dt);
    }

    /// integral over [0, t] of g(lambda_u, N_u), segment by segment.
    [[nodiscard]] double integral(std::span<const double> times, double t,
                                  const std::function<double(double, double)>& g) const {
        double total = 0.0;
        double start = 0.0, lambda_start = lambda0, n = 0.0;
        auto segment = [&](double end) {
            if (end <= start) return;
            const double l0 = lambda_start, s0 = start, count = n;
            total += gauss_legendre(
                [&](double u) { return g(lambda_between(l0, u - s0), count); }, start, end);
        };
        for (double tk : times) {
            if (tk > t) break;
            segment(tk);
            lambda_start = lambda_between(lambda_start, tk - start) + alpha;
            start = tk;
            n += 1.0;
        }
        segment(t);
        return total;
    }

    /// (lambda_t, N_t) at time t, right-continuous.
    [[nodiscard]] std::array<double, 2> state(std::span<const double> times, double t) const {
        double start = 0.0, lambda_start = lambda0, n = 0.0;
        for (double tk : times) {
            if (tk > t) break;
            lambda_start = lambda_between(lambda_start, tk - start) + alpha;
            start = tk;
            n += 1.0;
        }
        return {lambda_between(lambda_start, t - start), n};
    }
};

/// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
inline double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

/// Asymptotic Kolmogorov p-value P(D_n > d).
inline double ks_p_value(double d, std::size_t n) {
    const double sq = std::sqrt(static_cast<double>(n));
    const double lambda = (sq + 0.12 + 0.11 / sq) * d;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        sum += (k % 2 == 1 ? 2.0 : -2.0) * std::exp(-2.0 * k * k * lambda * lambda);
    }
    return std::clamp(sum, 0.0, 1.0);
}

}  // namespace hawkes::testing
