#pragma once

#include "hawkes/core.hpp"

namespace hawkes {

/// (E[dN], E[dN^2], E[dN^3]) for a window of length delta.
struct MomentTriple {
    double m1{0.0};
    double m2{0.0};
    double m3{0.0};
};

struct IntensityLimits {
    double lambda1{0.0};  ///< lim E[lambda_t]
    double lambda2{0.0};  ///< lim E[lambda_t^2]
    double lambda3{0.0};  ///< lim E[lambda_t^3]
};

struct HelperIntegrals {
    double i1{0.0};
    double i2{0.0};
};

/// Below this value of (beta - alpha) * delta the printed closed forms lose
/// too many digits to cancellation and series forms are used instead.
inline constexpr double kSeriesSwitch = 0.05;

/// E[lambda_t] = lambda* - (lambda* - lambda0) e^{-(beta-alpha) t}.
[[nodiscard]] double mean_intensity(const HawkesParams& params, double t);

/// E[lambda_t^2] from the deterministic start lambda0.
[[nodiscard]] double second_moment_intensity(const HawkesParams& params, double t);

/// E[N_t] = integral of E[lambda_s] over [0, t].
[[nodiscard]] double mean_count(const HawkesParams& params, double t);

/// E[N_{t+delta} - N_t] including the lambda0 transient.
[[nodiscard]] double increment_mean_exact(const HawkesParams& params, double t, double delta);

/// Stationary (t -> infinity) increment moments over a window of length delta.
[[nodiscard]] double stationary_m1(const HawkesParams& params, double delta);
[[nodiscard]] double stationary_m2(const HawkesParams& params, double delta);
[[nodiscard]] double stationary_m3(const HawkesParams& params, double delta);
[[nodiscard]] MomentTriple stationary_moments(const HawkesParams& params, double delta);

[[nodiscard]] IntensityLimits limit_intensity_moments(const HawkesParams& params);

/// I1 = triple integral of e^{-(beta-alpha)(u-s)}, I2 = the double integral,
/// both over the window [t, t + delta].
[[nodiscard]] HelperIntegrals helper_integrals(const HawkesParams& params, double delta);

}  // namespace hawkes
