#pragma once

#include "hawkes/core.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hawkes {

struct SimulationOptions {
    /// Guard against near-critical parameters; CapacityExceeded beyond this.
    std::size_t max_events{10'000'000};
};

struct Trajectory {
    EventSequence events;
    /// Post-jump intensity lambda(T_k+) at each event.
    std::vector<double> intensity_at_events;
    std::uint64_t seed{0};
};

/// Exact sampler: after each event the interarrival time is the minimum of
/// the first jump of the decaying excess intensity (closed-form inversion)
/// and an Exp(lambda_inf) background arrival. No rejection is involved while
/// the intensity sits above its base level; a start below base (lambda0 <
/// lambda_inf) is handled by thinning against lambda_inf until the excess
/// becomes nonnegative.
[[nodiscard]] Trajectory simulate_exact(const HawkesParams& params, double horizon,
                                        std::uint64_t seed, const SimulationOptions& options = {});

/// Poisson-cluster sampler: immigrants from the deterministic part of the
/// intensity (thinning against max(lambda_inf, lambda0)), then generations
/// of offspring, each event spawning a Poisson(alpha e^{-beta(t-T)}) process
/// on (T, horizon].
[[nodiscard]] Trajectory simulate_cluster(const HawkesParams& params, double horizon,
                                          std::uint64_t seed, const SimulationOptions& options = {});

enum class Sampler { Exact, Cluster };

/// count trajectories with seeds base_seed + i, in index order regardless of
/// scheduling.
[[nodiscard]] std::vector<Trajectory> simulate_batch(const HawkesParams& params, double horizon,
                                                     std::uint64_t base_seed, std::size_t count,
                                                     Sampler sampler = Sampler::Exact,
                                                     const SimulationOptions& options = {},
                                                     unsigned threads = 0);

struct IncrementSample {
    double t0{0.0};
    double delta{0.0};
    /// counts[j] = events in [t0 + j*delta, t0 + (j+1)*delta).
    std::vector<std::uint64_t> counts;
};

/// Relative slack (in units of delta) used to decide which side of a window
/// boundary a timestamp falls on. Timestamps within this distance below a
/// boundary are placed in the later window, so grid-aligned data (e.g.
/// whole seconds expressed in minutes) is not split by rounding.
inline constexpr double kWindowBoundarySlack = 1e-9;

/// Number of whole windows of length delta fitting in [t0, horizon].
[[nodiscard]] std::size_t max_window_count(double horizon, double t0, double delta);

/// Counts in consecutive half-open windows. Throws WindowOutOfRange when
/// t0 < 0, delta <= 0 or t0 + count*delta exceeds the horizon.
[[nodiscard]] IncrementSample windowed_counts(const EventSequence& events, double t0, double delta,
                                              std::size_t count);

}  // namespace hawkes
