#include "hawkes/core.hpp"

#include "hawkes/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hawkes {

HawkesParams::HawkesParams(double alpha, double beta, double lambda_inf, double lambda0)
    : alpha_(alpha), beta_(beta), lambda_inf_(lambda_inf), lambda0_(lambda0) {
    derived_.kappa = beta - alpha;
    derived_.lambda_star = beta * lambda_inf / derived_.kappa;
}

HawkesParams HawkesParams::with_stationary_start() const {
    return HawkesParams(alpha_, beta_, lambda_inf_, derived_.lambda_star);
}

HawkesParams HawkesParams::with_lambda0(double lambda0) const {
    return validate_params(alpha_, beta_, lambda_inf_, lambda0);
}

HawkesParams validate_params(double alpha, double beta, double lambda_inf, double lambda0) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(lambda_inf) ||
        !std::isfinite(lambda0)) {
        throw HawkesError(ErrorCode::NegativeInput, "parameters must be finite");
    }
    if (alpha < 0.0 || lambda0 < 0.0) {
        std::ostringstream msg;
        msg << "alpha=" << alpha << ", lambda0=" << lambda0 << " must be nonnegative";
        throw HawkesError(ErrorCode::NegativeInput, msg.str());
    }
    if (beta <= alpha) {
        std::ostringstream msg;
        msg << "beta=" << beta << " must exceed alpha=" << alpha;
        throw HawkesError(ErrorCode::ExplosionRisk, msg.str());
    }
    if (lambda_inf <= 0.0) {
        std::ostringstream msg;
        msg << "lambda_inf=" << lambda_inf << " must be positive";
        throw HawkesError(ErrorCode::NonPositiveBase, msg.str());
    }
    return HawkesParams(alpha, beta, lambda_inf, lambda0);
}

EventSequence::EventSequence(std::vector<double> times, double horizon, std::string unit)
    : times_(std::move(times)), horizon_(horizon), unit_(std::move(unit)) {
    if (!std::isfinite(horizon_) || horizon_ < 0.0) {
        throw HawkesError(ErrorCode::InvalidArgument, "horizon must be finite and nonnegative");
    }
    if (!std::is_sorted(times_.begin(), times_.end())) {
        throw HawkesError(ErrorCode::InvalidArgument, "event times must be nondecreasing");
    }
    if (!times_.empty()) {
        if (!(times_.front() >= 0.0)) {
            throw HawkesError(ErrorCode::NegativeTimestamp, "event times must be nonnegative");
        }
        if (!(times_.back() <= horizon_)) {
            throw HawkesError(ErrorCode::InvalidArgument, "event time beyond horizon");
        }
    }
}

EventSequence EventSequence::from_unsorted(std::vector<double> times, std::string unit) {
    std::sort(times.begin(), times.end());
    const double horizon = times.empty() ? 0.0 : times.back();
    return EventSequence(std::move(times), horizon, std::move(unit));
}

EventSequence EventSequence::truncated(double horizon) const {
    auto end = std::upper_bound(times_.begin(), times_.end(), horizon);
    return EventSequence(std::vector<double>(times_.begin(), end), horizon, unit_);
}

double intensity_at(const HawkesParams& params, std::span<const double> times, double t) {
    const double beta = params.beta();
    double value = params.lambda_inf() + (params.lambda0() - params.lambda_inf()) * std::exp(-beta * t);
    for (double tk : times) {
        if (!(tk < t)) break;
        value += params.alpha() * std::exp(-beta * (t - tk));
    }
    return value;
}

double intensity_at(const HawkesParams& params, const EventSequence& events, double t) {
    return intensity_at(params, events.times(), t);
}

std::size_t count_at(std::span<const double> times, double t) {
    return static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
}

std::size_t count_at(const EventSequence& events, double t) { return count_at(events.times(), t); }

IntensitySweep::IntensitySweep(const HawkesParams& params) : params_(params) {}

void IntensitySweep::advance_to(double t) {
    if (t < time_) {
        throw HawkesError(ErrorCode::InvalidArgument, "IntensitySweep cannot move backwards");
    }
    excitation_ *= std::exp(-params_.beta() * (t - time_));
    time_ = t;
}

void IntensitySweep::add_event(std::size_t multiplicity) {
    excitation_ += params_.alpha() * static_cast<double>(multiplicity);
}

double IntensitySweep::intensity() const noexcept {
    return params_.lambda_inf() +
           (params_.lambda0() - params_.lambda_inf()) * std::exp(-params_.beta() * time_) +
           excitation_;
}

}  // namespace hawkes
