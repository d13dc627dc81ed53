#include "hawkes/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace hawkes {

namespace {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

constexpr double kBoundaryRatio = 1e-6;

// z = (logit(alpha / beta), log beta, log lambda*). M1 depends on lambda* alone,
// which keeps the valley of the moment system close to a coordinate line.
FitParams from_coords(const Vec3& z) {
    const double ratio = 1.0 / (1.0 + std::exp(-z[0]));
    const double beta = std::exp(z[1]);
    return {ratio * beta, beta, std::exp(z[2]) * (1.0 - ratio)};
}

Vec3 to_coords(const FitParams& p) {
    const double ratio = p.alpha / p.beta;
    return {std::log(ratio / (1.0 - ratio)), std::log(p.beta),
            std::log(p.beta * p.lambda_inf / (p.beta - p.alpha))};
}

Vec3 residual(const Vec3& z, const MomentTriple& target, double delta) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    const FitParams p = from_coords(z);
    if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !std::isfinite(p.lambda_inf)) {
        return {nan, nan, nan};
    }
    try {
        const auto params = validate_params(p.alpha, p.beta, p.lambda_inf, p.lambda_inf);
        const auto m = stationary_moments(params, delta);
        return {m.m1 - target.m1, m.m2 - target.m2, m.m3 - target.m3};
    } catch (const HawkesError&) {
        return {nan, nan, nan};
    }
}

double norm2(const Vec3& r) {
    const double s = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
    return std::isfinite(s) ? std::sqrt(s) : std::numeric_limits<double>::infinity();
}

double norm_inf(const Vec3& r) {
    double m = 0.0;
    for (double v : r) {
        if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
        m = std::max(m, std::abs(v));
    }
    return m;
}

// Gaussian elimination with partial pivoting; nullopt when singular.
std::optional<Vec3> solve3(Mat3 a, Vec3 b) {
    double scale = 0.0;
    for (const auto& row : a) {
        for (double v : row) {
            if (!std::isfinite(v)) return std::nullopt;
            scale = std::max(scale, std::abs(v));
        }
    }
    if (scale == 0.0) return std::nullopt;
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 3; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        }
        if (std::abs(a[pivot][col]) <= 1e-14 * scale) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (int row = col + 1; row < 3; ++row) {
            const double f = a[row][col] / a[col][col];
            for (int k = col; k < 3; ++k) a[row][k] -= f * a[col][k];
            b[row] -= f * b[col];
        }
    }
    Vec3 x{};
    for (int row = 2; row >= 0; --row) {
        double s = b[row];
        for (int k = row + 1; k < 3; ++k) s -= a[row][k] * x[k];
        x[row] = s / a[row][row];
    }
    return x;
}

Vec3 residual_at(const FitParams& p, const MomentTriple& target, double delta) {
    const auto m = stationary_moments(validate_params(p.alpha, p.beta, p.lambda_inf, p.lambda_inf), delta);
    return {m.m1 - target.m1, m.m2 - target.m2, m.m3 - target.m3};
}

// Negligible excitation, either relative to the decay or over one window.
bool on_boundary(const FitParams& p, double delta) {
    return p.alpha < kBoundaryRatio * p.beta || p.alpha * delta < kBoundaryRatio;
}

void finish_report(EstimateReport& report, const Vec3& z, const Vec3& r, const MomentTriple& target,
                   double delta, double tolerance) {
    report.params_hat = from_coords(z);
    report.residuals = r;
    report.residual_norm = norm_inf(r);
    report.boundary_fit = on_boundary(report.params_hat, delta);
    if (!report.boundary_fit) return;
    report.warnings.emplace_back(
        "alpha_hat collapsed toward 0: moments are consistent with a Poisson process");
    // Project onto alpha = 0, where lambda_inf is the stationary rate.
    const FitParams poisson{0.0, report.params_hat.beta, std::exp(z[2])};
    const Vec3 rp = residual_at(poisson, target, delta);
    if (norm_inf(rp) <= std::max(report.residual_norm, tolerance)) {
        report.params_hat = poisson;
        report.residuals = rp;
        report.residual_norm = norm_inf(rp);
    }
}

[[noreturn]] void throw_singular(const Vec3& z) {
    std::ostringstream msg;
    const FitParams p = from_coords(z);
    msg << "Jacobian singular at alpha=" << p.alpha << ", beta=" << p.beta
        << ", lambda_inf=" << p.lambda_inf;
    throw HawkesError(ErrorCode::SingularJacobian, msg.str());
}

bool better(const EstimateReport& a, const EstimateReport& b) {
    if (a.converged != b.converged) return a.converged;
    return a.residual_norm < b.residual_norm;
}

}  // namespace

NoConvergenceError::NoConvergenceError(EstimateReport best)
    : HawkesError(ErrorCode::NoConvergence,
                  "moment system not solved; best residual " + std::to_string(best.residual_norm)),
      report_(std::move(best)) {}

EmpiricalMoments moments_from_counts(const IncrementSample& sample) {
    if (sample.counts.empty()) {
        throw HawkesError(ErrorCode::InsufficientData, "no windows to average");
    }
    double s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (auto c : sample.counts) {
        const double x = static_cast<double>(c);
        s1 += x;
        s2 += x * x;
        s3 += x * x * x;
    }
    const double n = static_cast<double>(sample.counts.size());
    return {{s1 / n, s2 / n, s3 / n}, sample.delta, sample.counts.size(), sample.t0};
}

EmpiricalMoments empirical_moments(const EventSequence& events, double t0, double delta) {
    if (!(delta > 0.0) || !(t0 >= 0.0)) {
        throw HawkesError(ErrorCode::InvalidArgument, "need t0 >= 0 and delta > 0");
    }
    const std::size_t windows = max_window_count(events.horizon(), t0, delta);
    if (windows == 0) {
        std::ostringstream msg;
        msg << "no window of length " << delta << " fits in [" << t0 << ", " << events.horizon()
            << "]";
        throw HawkesError(ErrorCode::InsufficientData, msg.str());
    }
    return moments_from_counts(windowed_counts(events, t0, delta, windows));
}

EstimateReport solve_moment_system(const MomentTriple& target, double delta, const FitParams& init,
                                   const SolverOptions& options) {
    const bool finite = std::isfinite(target.m1) && std::isfinite(target.m2) &&
                        std::isfinite(target.m3);
    if (!finite || !(target.m1 > 0.0) || !(target.m2 > 0.0) || !(target.m3 > 0.0)) {
        throw HawkesError(ErrorCode::InvalidArgument, "target moments must be finite and positive");
    }
    if (!(delta > 0.0)) throw HawkesError(ErrorCode::InvalidArgument, "delta must be > 0");
    if (!(init.alpha > 0.0) || !(init.beta > init.alpha) || !(init.lambda_inf > 0.0)) {
        throw HawkesError(ErrorCode::InvalidArgument, "init needs beta > alpha > 0, lambda_inf > 0");
    }

    EstimateReport report;
    report.init = init;
    report.window_stats.triple = target;
    report.window_stats.delta = delta;

    Vec3 z = to_coords(init);
    Vec3 r = residual(z, target, delta);
    if (!std::isfinite(norm2(r))) {
        throw HawkesError(ErrorCode::InvalidArgument, "moments not finite at the initial point");
    }

    const double h = options.jacobian_step;
    double damping = options.initial_damping;
    int polish = 0;
    for (int iter = 0;; ++iter) {
        report.iterations = iter;
        if (norm_inf(r) <= options.tolerance) {
            report.converged = true;
            if (polish++ >= options.polish_steps) break;
        }
        if (iter >= options.max_iterations) break;

        Mat3 jac{};
        for (int col = 0; col < 3; ++col) {
            Vec3 zp = z, zm = z;
            zp[col] += h;
            zm[col] -= h;
            const Vec3 rp = residual(zp, target, delta);
            const Vec3 rm = residual(zm, target, delta);
            for (int row = 0; row < 3; ++row) jac[row][col] = (rp[row] - rm[row]) / (2.0 * h);
        }
        // Normal equations J'J s = -J'r with Marquardt scaling of the diagonal.
        Mat3 normal{};
        Vec3 gradient{};
        for (int i = 0; i < 3; ++i) {
            for (int k = 0; k < 3; ++k) gradient[i] += jac[k][i] * r[k];
            for (int j = 0; j < 3; ++j) {
                for (int k = 0; k < 3; ++k) normal[i][j] += jac[k][i] * jac[k][j];
            }
        }

        const double trace = normal[0][0] + normal[1][1] + normal[2][2];
        if (!(trace > 0.0) || !std::isfinite(trace)) throw_singular(z);
        const double current = norm2(r);
        bool accepted = false;
        bool solved = false;
        for (int attempt = 0; attempt <= options.max_step_rejections; ++attempt) {
            Mat3 damped = normal;
            for (int i = 0; i < 3; ++i) {
                damped[i][i] += damping * std::max(normal[i][i], 1e-12 * trace);
            }
            const auto step = solve3(damped, {-gradient[0], -gradient[1], -gradient[2]});
            if (!step) {
                damping *= 4.0;
                continue;
            }
            solved = true;
            const Vec3 trial{z[0] + (*step)[0], z[1] + (*step)[1], z[2] + (*step)[2]};
            const Vec3 rt = residual(trial, target, delta);
            if (norm2(rt) < current) {
                z = trial;
                r = rt;
                damping = std::max(damping / 10.0, 1e-15);
                accepted = true;
                break;
            }
            damping *= 4.0;
        }
        if (!solved) throw_singular(z);
        if (!accepted) {
            if (!report.converged) report.warnings.emplace_back("damped step search stalled");
            break;
        }
    }

    finish_report(report, z, r, target, delta, options.tolerance);
    if (!report.converged) throw NoConvergenceError(std::move(report));
    return report;
}

std::vector<FitParams> default_multistart(const EmpiricalMoments& stats) {
    return {{0.5, 1.5, 2.0}, {0.5, 1.5, 0.75}, {0.5, 1.0, stats.triple.m1 / stats.delta}};
}

EstimateReport estimate_from_moments(const EmpiricalMoments& stats, const EstimateConfig& config) {
    if (!(stats.triple.m1 > 0.0)) {
        throw HawkesError(ErrorCode::InsufficientData, "no events inside the estimation windows");
    }

    std::vector<std::string> warnings;
    if (stats.window_count < kMinReliableWindows) {
        warnings.push_back("only " + std::to_string(stats.window_count) +
                           " windows; moment estimates are unreliable");
    }
    if (stats.t0 == 0.0) {
        warnings.emplace_back(
            "t0 = 0: stationary moment formulas are applied without burn-in");
    }

    std::vector<FitParams> starts{config.init};
    const auto extra = config.multistart.empty() && config.use_default_multistart
                           ? default_multistart(stats)
                           : config.multistart;
    for (const auto& p : extra) {
        if (std::find(starts.begin(), starts.end(), p) == starts.end()) starts.push_back(p);
    }

    std::optional<EstimateReport> best;
    std::optional<HawkesError> last_error;
    for (const auto& start : starts) {
        EstimateReport attempt;
        try {
            attempt = solve_moment_system(stats.triple, stats.delta, start, config.solver);
        } catch (const NoConvergenceError& e) {
            attempt = e.report();
        } catch (const HawkesError& e) {
            if (e.code() != ErrorCode::SingularJacobian && e.code() != ErrorCode::InvalidArgument) {
                throw;
            }
            last_error = e;
            continue;
        }
        if (!best || better(attempt, *best)) best = std::move(attempt);
        if (best->converged) break;
    }

    if (!best) throw *last_error;
    best->window_stats = stats;
    best->warnings.insert(best->warnings.begin(), warnings.begin(), warnings.end());
    if (!best->converged) throw NoConvergenceError(std::move(*best));
    return std::move(*best);
}

EstimateReport estimate(const EventSequence& events, const EstimateConfig& config) {
    return estimate_from_moments(empirical_moments(events, config.t0, config.delta), config);
}

}  // namespace hawkes
