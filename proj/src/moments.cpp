#include "hawkes/moments.hpp"

#include "hawkes/error.hpp"

#include <iterator>
#include <cmath>

namespace hawkes {

namespace {

void check_time(double t) {
    if (!(t >= 0.0)) throw HawkesError(ErrorCode::InvalidArgument, "time must be >= 0");
}

void check_delta(double delta) {
    if (!(delta > 0.0)) throw HawkesError(ErrorCode::InvalidArgument, "delta must be > 0");
}

// phi_n(x) = sum_{k>=0} (-x)^k / (k+n)!, i.e.
//   phi_1 = (1 - e^{-x}) / x
//   phi_2 = (e^{-x} - 1 + x) / x^2
//   phi_3 = (1 - x + x^2/2 - e^{-x}) / x^3
double phi_series(int n, double x) {
    double factorial = 1.0;
    for (int i = 2; i <= n; ++i) factorial *= i;
    double term = 1.0 / factorial;
    double sum = term;
    for (int k = 1; k < 20; ++k) {
        term *= -x / static_cast<double>(k + n);
        sum += term;
    }
    return sum;
}

// Laurent coefficients of the stationary third moment in x = (beta-alpha)*delta
// with u = beta*delta, v = lambda_inf*delta:
//   M3 = sum_j x^j sum c * u^p v^q.
// Obtained by symbolic expansion of the closed form; truncation error is below
// 1e-17 relative for x < kSeriesSwitch.
struct SeriesTerm {
    int order;
    int u_power;
    int v_power;
    double coefficient;
};

constexpr SeriesTerm kM3Series[] = {
    {-3, 3, 3, 1.0}, {-3, 4, 2, 3.0 / 2}, {-3, 5, 1, 1.0 / 2},
    {-2, 2, 2, 3.0}, {-2, 3, 1, 3.0 / 2}, {-2, 4, 1, -1.0 / 6}, {-2, 4, 2, -1.0 / 2},
    {-2, 5, 1, -1.0 / 4},
    {-1, 1, 1, 1.0}, {-1, 2, 2, -3.0 / 2}, {-1, 3, 1, -1.0}, {-1, 4, 2, 1.0 / 8},
    {-1, 5, 1, 3.0 / 40},
    {0, 1, 1, -3.0 / 2}, {0, 2, 1, -1.0 / 2}, {0, 2, 2, 1.0 / 2}, {0, 3, 1, 3.0 / 8},
    {0, 4, 1, 1.0 / 24}, {0, 4, 2, -1.0 / 40}, {0, 5, 1, -1.0 / 60},
    {1, 1, 1, 7.0 / 6}, {1, 2, 1, 1.0 / 2}, {1, 2, 2, -1.0 / 8}, {1, 3, 1, -1.0 / 10},
    {1, 4, 1, -1.0 / 40}, {1, 4, 2, 1.0 / 240}, {1, 5, 1, 1.0 / 336},
    {2, 1, 1, -5.0 / 8}, {2, 2, 1, -11.0 / 40}, {2, 2, 2, 1.0 / 40}, {2, 3, 1, 1.0 / 48},
    {2, 4, 1, 47.0 / 5040}, {2, 4, 2, -1.0 / 1680}, {2, 5, 1, -1.0 / 2240},
    {3, 1, 1, 31.0 / 120}, {3, 2, 1, 13.0 / 120}, {3, 2, 2, -1.0 / 240}, {3, 3, 1, -1.0 / 280},
    {3, 4, 1, -3.0 / 1120}, {3, 4, 2, 1.0 / 13440}, {3, 5, 1, 1.0 / 17280},
    {4, 1, 1, -7.0 / 80}, {4, 2, 1, -19.0 / 560}, {4, 2, 2, 1.0 / 1680}, {4, 3, 1, 1.0 / 1920},
    {4, 4, 1, 233.0 / 362880}, {4, 4, 2, -1.0 / 120960}, {4, 5, 1, -1.0 / 151200},
    {5, 1, 1, 127.0 / 5040}, {5, 2, 1, 1.0 / 112}, {5, 2, 2, -1.0 / 13440},
    {5, 3, 1, -1.0 / 15120}, {5, 4, 1, -3.0 / 22400}, {5, 4, 2, 1.0 / 1209600},
    {5, 5, 1, 1.0 / 1478400},
    {6, 1, 1, -17.0 / 2688}, {6, 2, 1, -247.0 / 120960}, {6, 2, 2, 1.0 / 120960},
    {6, 3, 1, 1.0 / 134400}, {6, 4, 1, 199.0 / 7983360}, {6, 4, 2, -1.0 / 13305600},
    {6, 5, 1, -1.0 / 15966720},
    {7, 1, 1, 73.0 / 51840}, {7, 2, 1, 251.0 / 604800}, {7, 2, 2, -1.0 / 1209600},
    {7, 3, 1, -1.0 / 1330560}, {7, 4, 1, -1.0 / 237600}, {7, 4, 2, 1.0 / 159667200},
    {7, 5, 1, 1.0 / 188697600},
    {8, 1, 1, -341.0 / 1209600}, {8, 2, 1, -1013.0 / 13305600}, {8, 2, 2, 1.0 / 13305600},
    {8, 3, 1, 1.0 / 14515200}, {8, 4, 1, 4061.0 / 6227020800.0},
    {8, 4, 2, -1.0 / 2075673600.0}, {8, 5, 1, -1.0 / 2421619200.0},
};

double stationary_m3_series(double x, double u, double v) {
    double sum = 0.0;
    // Largest orders first so the dominant x^{-3} terms are added last.
    for (auto it = std::rbegin(kM3Series); it != std::rend(kM3Series); ++it) {
        sum += it->coefficient * std::pow(x, it->order) * std::pow(u, it->u_power) *
               std::pow(v, it->v_power);
    }
    return sum;
}

}  // namespace

double mean_intensity(const HawkesParams& params, double t) {
    check_time(t);
    const double ls = params.lambda_star();
    return ls - (ls - params.lambda0()) * std::exp(-params.kappa() * t);
}

double second_moment_intensity(const HawkesParams& params, double t) {
    check_time(t);
    const double alpha = params.alpha();
    const double k = params.kappa();
    const double ls = params.lambda_star();
    const double l0 = params.lambda0();
    const double e1 = std::exp(-k * t);
    return ls * ls + alpha * alpha * ls / (2.0 * k) +
           (l0 - ls) * (alpha * alpha + 2.0 * params.beta() * params.lambda_inf()) / k * e1 +
           ((l0 - ls) * (l0 - ls) - alpha * alpha * (2.0 * l0 - ls) / (2.0 * k)) * e1 * e1;
}

double mean_count(const HawkesParams& params, double t) {
    check_time(t);
    const double k = params.kappa();
    const double ls = params.lambda_star();
    // (1 - e^{-kt}) / k, kept accurate for small k t.
    const double relaxed = -std::expm1(-k * t) / k;
    return ls * t - (ls - params.lambda0()) * relaxed;
}

double increment_mean_exact(const HawkesParams& params, double t, double delta) {
    check_time(t);
    check_delta(delta);
    const double k = params.kappa();
    const double ls = params.lambda_star();
    // e^{-kt} - e^{-k(t+delta)} = -e^{-kt} expm1(-k delta)
    const double window = -std::exp(-k * t) * std::expm1(-k * delta);
    return ls * delta + (params.lambda0() - ls) / k * window;
}

double stationary_m1(const HawkesParams& params, double delta) {
    check_delta(delta);
    return params.lambda_star() * delta;
}

double stationary_m2(const HawkesParams& params, double delta) {
    check_delta(delta);
    const double a = params.alpha();
    const double b = params.beta();
    const double li = params.lambda_inf();
    const double k = params.kappa();
    const double x = k * delta;

    if (x < kSeriesSwitch) {
        // Bracket regrouped as b^2 (e^{-x} - 1 + x) + k^2 (1 - e^{-x}) + delta^2 b li k^2.
        return b * li *
               (b * b * delta * delta * phi_series(2, x) / (k * k) + delta * phi_series(1, x) / k +
                delta * delta * b * li / (k * k));
    }
    const double bracket = a * (2.0 * b - a) * std::exp(-x) + a * (a - 2.0 * b) +
                           delta * b * b * k + delta * delta * b * li * k * k;
    return b * li / std::pow(k, 4) * bracket;
}

double stationary_m3(const HawkesParams& params, double delta) {
    check_delta(delta);
    const double a = params.alpha();
    const double b = params.beta();
    const double li = params.lambda_inf();
    const double k = params.kappa();
    const double x = k * delta;

    if (x < kSeriesSwitch) return stationary_m3_series(x, b * delta, li * delta);

    const double d = delta;
    const double e1 = std::exp(-x);
    const double e2 = std::exp(-2.0 * x);
    return d * d * d * b * b * b * li * li * li / std::pow(k, 3) +
           d * d * 3.0 * std::pow(b, 4) * li * li / std::pow(k, 4) +
           d * b * b * li / std::pow(k, 5) * (3.0 * li * a * (a - 2.0 * b) + b * b * (2.0 * a + b)) +
           3.0 * a * b * b * li / (2.0 * std::pow(k, 6)) * (a * a - a * b - 4.0 * b * b) +
           a * a * b * li * (2.0 * a - 3.0 * b) / (2.0 * std::pow(k, 5)) * e2 +
           a * b * li / std::pow(k, 6) *
               (a * a * a - 4.0 * a * a * b + 3.0 * a * b * b + 6.0 * b * b * b) * e1 -
           3.0 * a * b * b * li * (li + a) * (a - 2.0 * b) / std::pow(k, 5) * d * e1;
}

MomentTriple stationary_moments(const HawkesParams& params, double delta) {
    return {stationary_m1(params, delta), stationary_m2(params, delta),
            stationary_m3(params, delta)};
}

IntensityLimits limit_intensity_moments(const HawkesParams& params) {
    const double a = params.alpha();
    const double b = params.beta();
    const double li = params.lambda_inf();
    const double k = params.kappa();
    IntensityLimits out;
    out.lambda1 = b * li / k;
    out.lambda2 = b * li * (a * a + 2.0 * b * li) / (2.0 * k * k);
    out.lambda3 = a * a * a * b * li / (3.0 * k * k) +
                  b * li * (a * a + b * li) * (a * a + 2.0 * b * li) / (2.0 * k * k * k);
    return out;
}

HelperIntegrals helper_integrals(const HawkesParams& params, double delta) {
    check_delta(delta);
    const double k = params.kappa();
    const double x = k * delta;
    if (x < kSeriesSwitch) {
        return {delta * delta * delta * phi_series(3, x), delta * delta * phi_series(2, x)};
    }
    const double em1 = std::expm1(-x);
    return {delta * delta / (2.0 * k) - delta / (k * k) - em1 / (k * k * k),
            delta / k + em1 / (k * k)};
}

}  // namespace hawkes
