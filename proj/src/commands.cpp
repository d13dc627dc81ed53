#include "hawkes/commands.hpp"

#include "hawkes/error.hpp"
#include "hawkes/moments.hpp"
#include "hawkes/parallel.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <ostream>

namespace hawkes {

namespace {

std::size_t grid_points(double horizon, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw HawkesError(ErrorCode::InvalidArgument, "grid step must be positive");
    }
    // Tolerate horizon/step landing a hair below an integer.
    return static_cast<std::size_t>(std::floor(horizon / step + 1e-9)) + 1;
}

ParameterSummary summarize(const std::vector<double>& values) {
    ParameterSummary s;
    if (values.empty()) return {std::nan(""), std::nan("")};
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    if (values.size() < 2) {
        s.sd = std::nan("");
        return s;
    }
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    return s;
}

EventSequence apply_horizon(const EventSequence& events, std::optional<double> horizon,
                            std::vector<std::string>& warnings) {
    if (!horizon) return events;
    auto cut = events.truncated(*horizon);
    if (cut.size() < events.size()) {
        warnings.push_back(std::to_string(events.size() - cut.size()) + " events after horizon " +
                           format_number(*horizon) + " dropped");
    }
    return cut;
}

nlohmann::json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ParseError:
        case ErrorCode::NegativeTimestamp:
        case ErrorCode::EmptyFile:
            return kExitParse;
        case ErrorCode::NoConvergence:
        case ErrorCode::SingularJacobian:
            return kExitNoConvergence;
        case ErrorCode::CapacityExceeded:
            return kExitCapacity;
        case ErrorCode::InsufficientData:
        case ErrorCode::WindowOutOfRange:
            return kExitInsufficientData;
        case ErrorCode::IoError:
            return kExitIo;
        case ErrorCode::ExplosionRisk:
        case ErrorCode::NonPositiveBase:
        case ErrorCode::NegativeInput:
            return kExitInvalidParams;
        case ErrorCode::InvalidArgument:
        case ErrorCode::ToleranceNotMet:
            return kExitUsage;
    }
    return kExitUsage;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> explicit_seed) {
    if (explicit_seed) return *explicit_seed;
    if (const char* env = std::getenv("HAWKES_SEED"); env != nullptr && *env != '\0') {
        std::string_view text(env);
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw HawkesError(ErrorCode::InvalidArgument,
                              "HAWKES_SEED is not an unsigned integer: " + std::string(text));
        }
        return seed;
    }
    throw HawkesError(ErrorCode::InvalidArgument,
                      "stochastic run needs a seed (--seed or HAWKES_SEED)");
}

HawkesParams ModelConfig::validated() const {
    return validate_params(alpha, beta, lambda_inf, lambda0.value_or(lambda_inf));
}

void write_intensity_grid(std::ostream& out, const HawkesParams& params,
                          const EventSequence& events, double step) {
    const std::size_t rows = grid_points(events.horizon(), step);
    const auto times = events.times();
    IntensitySweep sweep(params);
    std::size_t next = 0;
    out << "t,lambda\n";
    for (std::size_t i = 0; i < rows; ++i) {
        const double t = static_cast<double>(i) * step;
        while (next < times.size() && times[next] < t) {
            sweep.advance_to(times[next]);
            sweep.add_event();
            ++next;
        }
        sweep.advance_to(t);
        out << format_number(t) << ',' << format_number(sweep.intensity()) << '\n';
    }
}

SimulateSummary cmd_simulate(const SimulateConfig& config) {
    const auto params = config.model.validated();
    const SimulationOptions options{config.max_events};
    const auto trajectory = config.sampler == Sampler::Exact
                                ? simulate_exact(params, config.horizon, config.seed, options)
                                : simulate_cluster(params, config.horizon, config.seed, options);

    {
        auto out = open_output(config.events_path);
        write_events(out, trajectory.events);
    }
    {
        auto out = open_output(config.intensity_path);
        write_intensity_grid(out, params, trajectory.events, config.grid_step);
    }
    return {trajectory.events.size(), grid_points(config.horizon, config.grid_step)};
}

nlohmann::json cmd_moments(const MomentsConfig& config) {
    const auto params = config.model.validated();
    const auto triple = stationary_moments(params, config.delta);
    const auto limits = limit_intensity_moments(params);
    nlohmann::json j;
    j["params"] = {{"alpha", params.alpha()},
                   {"beta", params.beta()},
                   {"lambda_inf", params.lambda_inf()},
                   {"lambda0", params.lambda0()}};
    j["delta"] = config.delta;
    j["lambda_star"] = params.lambda_star();
    j["moments"] = {{"m1", triple.m1}, {"m2", triple.m2}, {"m3", triple.m3}};
    j["intensity_limits"] = {
        {"Lambda1", limits.lambda1}, {"Lambda2", limits.lambda2}, {"Lambda3", limits.lambda3}};
    return j;
}

EstimateOutcome cmd_estimate(const EstimateCommandConfig& config) {
    auto parsed = parse_events_file(config.events_path, config.file_unit);
    std::vector<std::string> warnings = parsed.warnings;
    const auto events =
        apply_horizon(convert_units(parsed.events, config.unit), config.horizon, warnings);

    EstimateConfig fit;
    fit.t0 = config.t0;
    fit.delta = config.delta;
    fit.init = config.init;
    fit.use_default_multistart = config.multistart;

    EstimateOutcome outcome;
    EstimateReport report;
    try {
        report = estimate(events, fit);
    } catch (const NoConvergenceError& e) {
        report = e.report();
        outcome.exit_code = kExitNoConvergence;
    }
    report.warnings.insert(report.warnings.begin(), warnings.begin(), warnings.end());

    outcome.report = to_json(report);
    outcome.report["unit"] = unit_name(config.unit);
    outcome.report["events"] = events.size();
    outcome.report["horizon"] = events.horizon();
    if (config.output_path) {
        auto out = open_output(*config.output_path);
        out << outcome.report.dump(2) << '\n';
    }
    return outcome;
}

HarnessReport run_validation(const ValidateConfig& config) {
    if (config.trajectories < 2) {
        throw HawkesError(ErrorCode::InvalidArgument, "validation needs at least 2 trajectories");
    }
    const auto params = config.model.validated();
    const SimulationOptions options{config.max_events};

    EstimateConfig fit;
    fit.t0 = config.t0;
    fit.delta = config.delta;
    fit.init = config.init;
    fit.use_default_multistart = config.multistart;

    HarnessReport report;
    report.runs.resize(config.trajectories);

    std::vector<double> grid;
    if (config.envelope_step) {
        const std::size_t n = grid_points(config.horizon, *config.envelope_step);
        grid.resize(n);
        for (std::size_t i = 0; i < n; ++i) grid[i] = static_cast<double>(i) * *config.envelope_step;
        report.envelope = Envelope{grid, std::vector<std::vector<std::size_t>>(config.trajectories),
                                   std::nullopt};
    }

    parallel_for_index(
        config.trajectories,
        [&](std::size_t i) {
            RunResult& run = report.runs[i];
            run.run = i + 1;
            run.seed = config.seed + i;
            Trajectory trajectory;
            try {
                trajectory = simulate_exact(params, config.horizon, run.seed, options);
            } catch (const HawkesError& e) {
                run.status = e.what();
                return;
            }
            run.events = trajectory.events.size();
            if (report.envelope) {
                auto& path = report.envelope->paths[i];
                path.reserve(grid.size());
                for (double t : grid) path.push_back(count_at(trajectory.events, t));
            }
            if (!config.fit) {
                run.status = "not fitted";
                return;
            }
            try {
                run.report = estimate(trajectory.events, fit);
                run.converged = true;
                run.status = "ok";
            } catch (const NoConvergenceError& e) {
                run.report = e.report();
                run.status = e.what();
            } catch (const HawkesError& e) {
                run.status = e.what();
            }
        },
        config.threads);

    std::vector<double> alphas, betas, bases;
    for (const auto& run : report.runs) {
        if (run.converged) {
            alphas.push_back(run.report->params_hat.alpha);
            betas.push_back(run.report->params_hat.beta);
            bases.push_back(run.report->params_hat.lambda_inf);
        } else if (config.fit) {
            report.non_converged.push_back(run.run);
        }
    }
    report.converged_count = alphas.size();
    report.alpha = summarize(alphas);
    report.beta = summarize(betas);
    report.lambda_inf = summarize(bases);

    if (report.envelope && config.observed_path) {
        auto observed = parse_events_file(*config.observed_path, config.observed_unit);
        const auto events = convert_units(observed.events, config.unit);
        std::vector<std::size_t> path;
        path.reserve(grid.size());
        for (double t : grid) path.push_back(count_at(events, t));
        report.envelope->observed = std::move(path);
    }
    return report;
}

HarnessReport cmd_validate(const ValidateConfig& config) {
    auto report = run_validation(config);
    if (config.table_path) {
        auto out = open_output(*config.table_path);
        write_table(out, report);
    }
    if (config.summary_path) {
        auto out = open_output(*config.summary_path);
        out << to_json(report, config).dump(2) << '\n';
    }
    if (config.envelope_path && report.envelope) {
        auto out = open_output(*config.envelope_path);
        write_envelope(out, *report.envelope);
    }
    return report;
}

void write_table(std::ostream& out, const HarnessReport& report) {
    out << "run,alpha_hat,beta_hat,lambda_inf_hat,converged\n";
    for (const auto& run : report.runs) {
        out << run.run << ',';
        if (run.report) {
            const auto& p = run.report->params_hat;
            out << format_number(p.alpha) << ',' << format_number(p.beta) << ','
                << format_number(p.lambda_inf);
        } else {
            out << "nan,nan,nan";
        }
        out << ',' << (run.converged ? 1 : 0) << '\n';
    }
}

void write_envelope(std::ostream& out, const Envelope& envelope) {
    out << 't';
    for (std::size_t k = 0; k < envelope.paths.size(); ++k) out << ",traj_" << (k + 1);
    if (envelope.observed) out << ",observed";
    out << '\n';
    for (std::size_t i = 0; i < envelope.grid.size(); ++i) {
        out << format_number(envelope.grid[i]);
        for (const auto& path : envelope.paths) out << ',' << (i < path.size() ? path[i] : 0);
        if (envelope.observed) out << ',' << (*envelope.observed)[i];
        out << '\n';
    }
}

nlohmann::json to_json(const HarnessReport& report, const ValidateConfig& config) {
    const auto params = config.model.validated();
    nlohmann::json j;
    j["params"] = {{"alpha", params.alpha()},
                   {"beta", params.beta()},
                   {"lambda_inf", params.lambda_inf()},
                   {"lambda0", params.lambda0()}};
    j["horizon"] = config.horizon;
    j["delta"] = config.delta;
    j["t0"] = config.t0;
    j["seed"] = config.seed;
    j["trajectories"] = config.trajectories;
    j["init"] = to_json(config.init);

    auto runs = nlohmann::json::array();
    for (const auto& run : report.runs) {
        nlohmann::json r{{"run", run.run},
                         {"seed", run.seed},
                         {"events", run.events},
                         {"converged", run.converged},
                         {"status", run.status}};
        if (run.report) {
            r["params_hat"] = to_json(run.report->params_hat);
            r["residual_norm"] = run.report->residual_norm;
            r["iterations"] = run.report->iterations;
        }
        runs.push_back(std::move(r));
    }
    j["runs"] = std::move(runs);

    auto stat = [](const ParameterSummary& s) {
        return nlohmann::json{{"mean", number_or_null(s.mean)}, {"sd", number_or_null(s.sd)}};
    };
    j["summary"] = {{"converged", report.converged_count},
                    {"alpha_hat", stat(report.alpha)},
                    {"beta_hat", stat(report.beta)},
                    {"lambda_inf_hat", stat(report.lambda_inf)}};
    j["non_converged"] = report.non_converged;
    return j;
}

}  // namespace hawkes
