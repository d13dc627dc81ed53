#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hawkes {

/// Stationary mean intensity and relaxation rate of the intensity mean.
struct DerivedQuantities {
    double lambda_star{0.0};  ///< beta * lambda_inf / (beta - alpha)
    double kappa{0.0};        ///< beta - alpha
};

/// Validated constants of the exponential Hawkes model
///   d lambda_t = beta (lambda_inf - lambda_t) dt + alpha dN_t.
///
/// Instances are only produced by validate_params(), so every live object
/// satisfies beta > alpha >= 0, lambda_inf > 0 and lambda0 >= 0.
class HawkesParams {
public:
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double beta() const noexcept { return beta_; }
    [[nodiscard]] double lambda_inf() const noexcept { return lambda_inf_; }
    [[nodiscard]] double lambda0() const noexcept { return lambda0_; }

    [[nodiscard]] const DerivedQuantities& derived() const noexcept { return derived_; }
    [[nodiscard]] double lambda_star() const noexcept { return derived_.lambda_star; }
    [[nodiscard]] double kappa() const noexcept { return derived_.kappa; }

    /// Same alpha/beta/lambda_inf with lambda0 set to the stationary mean.
    [[nodiscard]] HawkesParams with_stationary_start() const;
    [[nodiscard]] HawkesParams with_lambda0(double lambda0) const;

    friend bool operator==(const HawkesParams&, const HawkesParams&) = default;

private:
    friend HawkesParams validate_params(double, double, double, double);
    HawkesParams(double alpha, double beta, double lambda_inf, double lambda0);

    double alpha_;
    double beta_;
    double lambda_inf_;
    double lambda0_;
    DerivedQuantities derived_;
};

/// Throws HawkesError with ExplosionRisk (beta <= alpha), NonPositiveBase
/// (lambda_inf <= 0) or NegativeInput (alpha < 0, lambda0 < 0, non-finite).
[[nodiscard]] HawkesParams validate_params(double alpha, double beta, double lambda_inf,
                                           double lambda0);

/// Sorted event timestamps observed on [0, horizon].
class EventSequence {
public:
    EventSequence() = default;

    /// Requires nondecreasing, nonnegative times, all <= horizon.
    EventSequence(std::vector<double> times, double horizon, std::string unit = "minutes");

    /// Sorts the input first; horizon defaults to the last timestamp.
    [[nodiscard]] static EventSequence from_unsorted(std::vector<double> times,
                                                     std::string unit = "minutes");

    [[nodiscard]] std::span<const double> times() const noexcept { return times_; }
    [[nodiscard]] double horizon() const noexcept { return horizon_; }
    [[nodiscard]] const std::string& unit() const noexcept { return unit_; }
    [[nodiscard]] std::size_t size() const noexcept { return times_.size(); }
    [[nodiscard]] bool empty() const noexcept { return times_.empty(); }

    /// Events strictly beyond the new horizon are dropped.
    [[nodiscard]] EventSequence truncated(double horizon) const;

private:
    std::vector<double> times_;
    double horizon_{0.0};
    std::string unit_{"minutes"};
};

/// Left-continuous intensity: events at exactly t do not contribute.
/// O(k) direct summation over the events before t.
[[nodiscard]] double intensity_at(const HawkesParams& params, std::span<const double> times,
                                  double t);
[[nodiscard]] double intensity_at(const HawkesParams& params, const EventSequence& events,
                                  double t);

/// Number of events <= t (right-continuous, ties with multiplicity).
[[nodiscard]] std::size_t count_at(std::span<const double> times, double t);
[[nodiscard]] std::size_t count_at(const EventSequence& events, double t);

/// O(1)-per-step intensity evaluation for a forward sweep over time.
/// The excitation sum is carried forward and decayed between queries.
class IntensitySweep {
public:
    explicit IntensitySweep(const HawkesParams& params);

    /// Moves the clock forward; t must be >= the current time.
    void advance_to(double t);
    /// Registers an event at the current time.
    void add_event(std::size_t multiplicity = 1);

    [[nodiscard]] double time() const noexcept { return time_; }
    [[nodiscard]] double intensity() const noexcept;
    [[nodiscard]] double excitation() const noexcept { return excitation_; }

private:
    HawkesParams params_;
    double time_{0.0};
    double excitation_{0.0};
};

}  // namespace hawkes
