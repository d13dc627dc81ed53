#include "hawkes/simulate.hpp"

#include "hawkes/error.hpp"
#include "hawkes/parallel.hpp"
#include "hawkes/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hawkes {

namespace {

void check_horizon(double horizon) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw HawkesError(ErrorCode::InvalidArgument, "horizon must be positive and finite");
    }
}

void check_capacity(std::size_t size, const SimulationOptions& options) {
    if (size >= options.max_events) {
        std::ostringstream msg;
        msg << "trajectory exceeds " << options.max_events << " events";
        throw HawkesError(ErrorCode::CapacityExceeded, msg.str());
    }
}

}  // namespace

Trajectory simulate_exact(const HawkesParams& params, double horizon, std::uint64_t seed,
                          const SimulationOptions& options) {
    check_horizon(horizon);
    const double alpha = params.alpha();
    const double beta = params.beta();
    const double base = params.lambda_inf();

    Rng rng(seed);
    std::vector<double> times;
    std::vector<double> post_jump;

    double t = 0.0;
    // Intensity above base level, lambda_t - lambda_inf; decays as e^{-beta s}.
    double excess = params.lambda0() - base;

    while (true) {
        double s = 0.0;
        if (excess < 0.0) {
            // Below base: thin Exp(lambda_inf) candidates against the true rate.
            s = rng.exponential(base);
            const double decayed = excess * std::exp(-beta * s);
            if (rng.uniform() * base >= base + decayed) {
                t += s;
                excess = decayed;
                if (t > horizon) break;
                continue;
            }
        } else {
            const double background = -std::log(rng.uniform_positive()) / base;
            const double u1 = rng.uniform_positive();
            double self_excited = std::numeric_limits<double>::infinity();
            if (excess > 0.0) {
                const double d = 1.0 + beta * std::log(u1) / excess;
                if (d > 0.0) self_excited = -std::log(d) / beta;
            }
            s = std::min(self_excited, background);
        }

        t += s;
        if (t > horizon) break;
        check_capacity(times.size(), options);
        excess = excess * std::exp(-beta * s) + alpha;
        times.push_back(t);
        post_jump.push_back(base + excess);
    }

    return Trajectory{EventSequence(std::move(times), horizon), std::move(post_jump), seed};
}

Trajectory simulate_cluster(const HawkesParams& params, double horizon, std::uint64_t seed,
                            const SimulationOptions& options) {
    check_horizon(horizon);
    const double alpha = params.alpha();
    const double beta = params.beta();
    const double base = params.lambda_inf();
    const double transient = params.lambda0() - base;

    Rng rng(seed);
    std::vector<double> points;

    // Generation 0: inhomogeneous Poisson immigrants by thinning.
    const double bound = std::max(base, params.lambda0());
    for (double t = rng.exponential(bound); t <= horizon; t += rng.exponential(bound)) {
        const double rate = base + transient * std::exp(-beta * t);
        if (rng.uniform() * bound < rate) {
            check_capacity(points.size(), options);
            points.push_back(t);
        }
    }

    // Breadth-first over generations; points appended behind the cursor are
    // the next generation's parents.
    if (alpha > 0.0) {
        for (std::size_t parent = 0; parent < points.size(); ++parent) {
            const double origin = points[parent];
            // 1 - e^{-beta(H - T)} as a negative expm1 for small windows.
            const double tail = std::expm1(-beta * (horizon - origin));
            const std::uint64_t children = rng.poisson(-(alpha / beta) * tail);
            for (std::uint64_t k = 0; k < children; ++k) {
                const double child = origin - std::log1p(rng.uniform() * tail) / beta;
                check_capacity(points.size(), options);
                points.push_back(std::min(child, horizon));
            }
        }
    }

    std::sort(points.begin(), points.end());
    std::vector<double> post_jump;
    post_jump.reserve(points.size());
    IntensitySweep sweep(params);
    for (double t : points) {
        sweep.advance_to(t);
        sweep.add_event();
        post_jump.push_back(sweep.intensity());
    }
    return Trajectory{EventSequence(std::move(points), horizon), std::move(post_jump), seed};
}

std::vector<Trajectory> simulate_batch(const HawkesParams& params, double horizon,
                                       std::uint64_t base_seed, std::size_t count, Sampler sampler,
                                       const SimulationOptions& options, unsigned threads) {
    std::vector<Trajectory> out(count);
    parallel_for_index(
        count,
        [&](std::size_t i) {
            const std::uint64_t seed = base_seed + i;
            out[i] = sampler == Sampler::Exact ? simulate_exact(params, horizon, seed, options)
                                               : simulate_cluster(params, horizon, seed, options);
        },
        threads);
    return out;
}

std::size_t max_window_count(double horizon, double t0, double delta) {
    if (!(delta > 0.0) || !(t0 >= 0.0) || !(horizon >= t0)) return 0;
    const double ratio = (horizon - t0) / delta;
    return static_cast<std::size_t>(std::floor(ratio + kWindowBoundarySlack));
}

IncrementSample windowed_counts(const EventSequence& events, double t0, double delta,
                                std::size_t count) {
    if (!(t0 >= 0.0) || !(delta > 0.0) || !std::isfinite(t0) || !std::isfinite(delta)) {
        throw HawkesError(ErrorCode::WindowOutOfRange, "need t0 >= 0 and delta > 0");
    }
    if (count > max_window_count(events.horizon(), t0, delta)) {
        std::ostringstream msg;
        msg << count << " windows of length " << delta << " from " << t0
            << " exceed horizon " << events.horizon();
        throw HawkesError(ErrorCode::WindowOutOfRange, msg.str());
    }

    IncrementSample sample{t0, delta, std::vector<std::uint64_t>(count, 0)};
    if (count == 0) return sample;

    const auto times = events.times();
    const double slack = kWindowBoundarySlack;
    auto it = std::lower_bound(times.begin(), times.end(), t0 - slack * delta);
    for (; it != times.end(); ++it) {
        const double position = (*it - t0) / delta + slack;
        if (position < 0.0) continue;
        const double window = std::floor(position);
        if (window >= static_cast<double>(count)) break;
        ++sample.counts[static_cast<std::size_t>(window)];
    }
    return sample;
}

}  // namespace hawkes
