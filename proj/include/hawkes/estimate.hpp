#pragma once

#include "hawkes/core.hpp"
#include "hawkes/error.hpp"
#include "hawkes/moments.hpp"
#include "hawkes/simulate.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace hawkes {

/// (alpha, beta, lambda_inf); lambda0 is not identifiable from window moments.
struct FitParams {
    double alpha{0.0};
    double beta{0.0};
    double lambda_inf{0.0};

    friend bool operator==(const FitParams&, const FitParams&) = default;
};

struct EmpiricalMoments {
    MomentTriple triple;
    double delta{0.0};
    std::size_t window_count{0};
    double t0{0.0};
};

/// Below this many windows the moment estimates are flagged as unreliable.
inline constexpr std::size_t kMinReliableWindows = 30;

struct SolverOptions {
    double tolerance{1e-9};  ///< on the residual infinity norm
    int max_iterations{200};
    int max_step_rejections{30};  ///< damping increases per iteration before giving up
    double jacobian_step{1e-6};   ///< central differences in solver coordinates
    double initial_damping{1e-3};
    int polish_steps{4};  ///< further steps once the tolerance is met
};

struct EstimateReport {
    FitParams params_hat;
    std::array<double, 3> residuals{};
    double residual_norm{0.0};
    int iterations{0};
    FitParams init;
    bool converged{false};
    /// Excitation collapsed toward 0 (Poisson-like data); params_hat is then
    /// projected onto alpha = 0 when that does not worsen the residual.
    bool boundary_fit{false};
    EmpiricalMoments window_stats;
    std::vector<std::string> warnings;
};

/// Thrown when no start reaches the tolerance; carries the best attempt.
class NoConvergenceError : public HawkesError {
public:
    explicit NoConvergenceError(EstimateReport best);
    [[nodiscard]] const EstimateReport& report() const noexcept { return report_; }

private:
    EstimateReport report_;
};

/// Arithmetic means of counts^i, i = 1..3.
[[nodiscard]] EmpiricalMoments moments_from_counts(const IncrementSample& sample);

/// Uses the maximal number of whole windows in [t0, horizon].
/// Throws InsufficientData when none fits.
[[nodiscard]] EmpiricalMoments empirical_moments(const EventSequence& events, double t0,
                                                 double delta);

/// Levenberg-Marquardt damped Newton on r(theta) = stationary moments(theta,
/// delta) - target with a central-difference Jacobian, in coordinates
/// (logit(alpha/beta), log beta, log lambda*), so every iterate satisfies
/// beta > alpha > 0 and lambda_inf > 0. Converged means |r|_inf <= tolerance.
/// Throws NoConvergenceError or HawkesError(SingularJacobian).
[[nodiscard]] EstimateReport solve_moment_system(const MomentTriple& target, double delta,
                                                 const FitParams& init,
                                                 const SolverOptions& options = {});

struct EstimateConfig {
    double t0{3000.0};
    double delta{0.5};
    FitParams init{0.5, 1.5, 2.0};
    /// Extra starting points tried in order after init. When empty and
    /// use_default_multistart is set, default_multistart() is used.
    std::vector<FitParams> multistart;
    bool use_default_multistart{true};
    SolverOptions solver;
};

/// (0.5, 1.5, 2), (0.5, 1.5, 0.75) and (0.5, 1, M1/delta).
[[nodiscard]] std::vector<FitParams> default_multistart(const EmpiricalMoments& stats);

/// empirical_moments then solve_moment_system from init, falling back to the
/// multistart points; the first converged start wins, otherwise the best
/// residual is reported through NoConvergenceError.
[[nodiscard]] EstimateReport estimate(const EventSequence& events, const EstimateConfig& config);

/// Same, from precomputed window statistics.
[[nodiscard]] EstimateReport estimate_from_moments(const EmpiricalMoments& stats,
                                                   const EstimateConfig& config);

}  // namespace hawkes
