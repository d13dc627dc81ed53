#pragma once

#include "hawkes/estimate.hpp"
#include "hawkes/io.hpp"
#include "hawkes/simulate.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hawkes {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitParse = 2,
    kExitNoConvergence = 3,
    kExitCapacity = 4,
    kExitInsufficientData = 5,
    kExitIo = 6,
    kExitInvalidParams = 7,
};

[[nodiscard]] int exit_code_for(ErrorCode code) noexcept;

/// Explicit seed wins; otherwise HAWKES_SEED; otherwise InvalidArgument.
[[nodiscard]] std::uint64_t resolve_seed(std::optional<std::uint64_t> explicit_seed);

struct ModelConfig {
    double alpha{0.15};
    double beta{1.0};
    double lambda_inf{1.0};
    /// Defaults to lambda_inf when unset.
    std::optional<double> lambda0;

    [[nodiscard]] HawkesParams validated() const;
};

struct SimulateConfig {
    ModelConfig model;
    double horizon{20.0};
    std::uint64_t seed{0};
    double grid_step{0.01};
    Sampler sampler{Sampler::Exact};
    std::size_t max_events{SimulationOptions{}.max_events};
    TimeUnit unit{TimeUnit::Minutes};
    std::filesystem::path events_path{"events.csv"};
    std::filesystem::path intensity_path{"intensity.csv"};
};

struct SimulateSummary {
    std::size_t events{0};
    std::size_t grid_rows{0};
};

/// Writes the events file and an intensity-path CSV (t,lambda) sampled on
/// the grid 0, step, ..., horizon.
SimulateSummary cmd_simulate(const SimulateConfig& config);

/// Intensity path on a regular grid, left-continuous at events.
void write_intensity_grid(std::ostream& out, const HawkesParams& params,
                          const EventSequence& events, double step);

struct MomentsConfig {
    ModelConfig model;
    double delta{0.5};
};

/// Theoretical (m1, m2, m3), lambda* and Lambda_1..3.
[[nodiscard]] nlohmann::json cmd_moments(const MomentsConfig& config);

struct EstimateCommandConfig {
    std::filesystem::path events_path;
    TimeUnit file_unit{TimeUnit::Minutes};
    TimeUnit unit{TimeUnit::Minutes};
    std::optional<double> horizon;
    double t0{0.0};
    double delta{1.0 / 60.0};
    FitParams init{0.5, 1.5, 0.75};
    bool multistart{true};
    std::optional<std::filesystem::path> output_path;
};

struct EstimateOutcome {
    nlohmann::json report;
    int exit_code{kExitOk};
};

/// Parses, fits and (optionally) writes the JSON report. A failed fit still
/// produces a report with converged=false and a nonzero exit code.
[[nodiscard]] EstimateOutcome cmd_estimate(const EstimateCommandConfig& config);

struct ValidateConfig {
    ModelConfig model{0.2, 1.0, 1.0, std::nullopt};
    double horizon{10000.0};
    std::uint64_t seed{0};
    std::size_t trajectories{20};
    double delta{0.5};
    double t0{3000.0};
    FitParams init{0.5, 1.5, 2.0};
    bool multistart{true};
    bool fit{true};
    unsigned threads{0};
    std::size_t max_events{SimulationOptions{}.max_events};
    TimeUnit unit{TimeUnit::Minutes};

    std::optional<double> envelope_step;
    std::optional<std::filesystem::path> observed_path;
    TimeUnit observed_unit{TimeUnit::Minutes};

    std::optional<std::filesystem::path> table_path;
    std::optional<std::filesystem::path> summary_path;
    std::optional<std::filesystem::path> envelope_path;
};

struct RunResult {
    std::size_t run{0};  ///< 1-based
    std::uint64_t seed{0};
    std::size_t events{0};
    std::optional<EstimateReport> report;
    bool converged{false};
    std::string status;  ///< "ok" or the error description
};

struct ParameterSummary {
    double mean{0.0};
    double sd{0.0};  ///< sample standard deviation, n-1
};

struct Envelope {
    std::vector<double> grid;
    /// paths[k][i] = N_k(grid[i]).
    std::vector<std::vector<std::size_t>> paths;
    std::optional<std::vector<std::size_t>> observed;
};

struct HarnessReport {
    std::vector<RunResult> runs;
    std::size_t converged_count{0};
    ParameterSummary alpha;
    ParameterSummary beta;
    ParameterSummary lambda_inf;
    std::vector<std::size_t> non_converged;
    std::optional<Envelope> envelope;
};

/// Simulates K trajectories (seeds seed+i), estimates each and summarizes
/// over converged runs. Failed runs are kept and listed, never fatal.
[[nodiscard]] HarnessReport run_validation(const ValidateConfig& config);

/// run_validation plus the table CSV, summary JSON and envelope CSV outputs.
[[nodiscard]] HarnessReport cmd_validate(const ValidateConfig& config);

void write_table(std::ostream& out, const HarnessReport& report);
void write_envelope(std::ostream& out, const Envelope& envelope);
[[nodiscard]] nlohmann::json to_json(const HarnessReport& report, const ValidateConfig& config);

}  // namespace hawkes
