#include "hawkes/commands.hpp"
#include "hawkes/error.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace {

const std::map<std::string, hawkes::TimeUnit> kUnits{
    {"seconds", hawkes::TimeUnit::Seconds},
    {"s", hawkes::TimeUnit::Seconds},
    {"minutes", hawkes::TimeUnit::Minutes},
    {"min", hawkes::TimeUnit::Minutes},
    {"hours", hawkes::TimeUnit::Hours},
    {"h", hawkes::TimeUnit::Hours},
};

void add_model_options(CLI::App& cmd, hawkes::ModelConfig& model) {
    cmd.add_option("--alpha", model.alpha, "Jump size of the intensity")->capture_default_str();
    cmd.add_option("--beta", model.beta, "Decay rate")->capture_default_str();
    cmd.add_option("--lambda-inf", model.lambda_inf, "Base intensity")->capture_default_str();
    cmd.add_option("--lambda0", model.lambda0, "Initial intensity (default: lambda-inf)");
}

void add_init_options(CLI::App& cmd, hawkes::FitParams& init) {
    cmd.add_option("--init-alpha", init.alpha, "Solver start for alpha")->capture_default_str();
    cmd.add_option("--init-beta", init.beta, "Solver start for beta")->capture_default_str();
    cmd.add_option("--init-lambda-inf", init.lambda_inf, "Solver start for lambda_inf")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponential Hawkes process: simulation, moments and method-of-moments fitting"};
    app.require_subcommand(1);

    // simulate
    hawkes::SimulateConfig sim;
    std::optional<std::uint64_t> sim_seed;
    std::string sampler = "exact";
    auto* simulate = app.add_subcommand("simulate", "Simulate one trajectory");
    add_model_options(*simulate, sim.model);
    simulate->add_option("--horizon", sim.horizon, "Simulation end time")->capture_default_str();
    simulate->add_option("--seed", sim_seed, "RNG seed (falls back to HAWKES_SEED)");
    simulate->add_option("--grid", sim.grid_step, "Intensity grid resolution")->capture_default_str();
    simulate->add_option("--sampler", sampler, "exact | cluster")
        ->check(CLI::IsMember({"exact", "cluster"}))
        ->capture_default_str();
    simulate->add_option("--max-events", sim.max_events, "Event cap")->capture_default_str();
    simulate->add_option("--events-out", sim.events_path, "Events file")->capture_default_str();
    simulate->add_option("--intensity-out", sim.intensity_path, "Intensity CSV")
        ->capture_default_str();

    // moments
    hawkes::MomentsConfig mom;
    auto* moments = app.add_subcommand("moments", "Print theoretical window moments");
    add_model_options(*moments, mom.model);
    moments->add_option("--delta", mom.delta, "Window length")->capture_default_str();

    // estimate
    hawkes::EstimateCommandConfig est;
    std::string est_output;
    bool est_no_multistart = false;
    auto* estimate = app.add_subcommand("estimate", "Fit (alpha, beta, lambda_inf) to an events file");
    estimate->add_option("events", est.events_path, "Events file")->required();
    estimate->add_option("--file-unit", est.file_unit, "Unit of the timestamps in the file")
        ->transform(CLI::CheckedTransformer(kUnits, CLI::ignore_case));
    estimate->add_option("--unit", est.unit, "Analysis unit")
        ->transform(CLI::CheckedTransformer(kUnits, CLI::ignore_case));
    estimate->add_option("--horizon", est.horizon, "Truncate events after this time (analysis unit)");
    estimate->add_option("--t0", est.t0, "Burn-in: first window start")->required();
    estimate->add_option("--delta", est.delta, "Window length")->capture_default_str();
    add_init_options(*estimate, est.init);
    estimate->add_flag("--no-multistart", est_no_multistart, "Only try the given init");
    estimate->add_option("-o,--output", est_output, "Write the JSON report here (default stdout)");

    // validate
    hawkes::ValidateConfig val;
    std::optional<std::uint64_t> val_seed;
    std::string table, summary, envelope, observed;
    bool val_no_fit = false, val_no_multistart = false;
    auto* validate = app.add_subcommand("validate", "Simulate K trajectories and fit each");
    add_model_options(*validate, val.model);
    validate->add_option("--horizon", val.horizon, "Trajectory length")->capture_default_str();
    validate->add_option("--seed", val_seed, "Base seed; run i uses seed+i");
    validate->add_option("-k,--trajectories", val.trajectories, "Number of trajectories")
        ->capture_default_str();
    validate->add_option("--delta", val.delta, "Window length")->capture_default_str();
    validate->add_option("--t0", val.t0, "Burn-in")->capture_default_str();
    add_init_options(*validate, val.init);
    validate->add_flag("--no-multistart", val_no_multistart, "Only try the given init");
    validate->add_flag("--no-fit", val_no_fit, "Skip estimation (envelope only)");
    validate->add_option("--threads", val.threads, "Worker threads (0 = all cores)");
    validate->add_option("--max-events", val.max_events, "Event cap per trajectory");
    validate->add_option("--table", table, "Table CSV output");
    validate->add_option("--summary", summary, "Summary JSON output (default stdout)");
    validate->add_option("--envelope", envelope, "Envelope CSV output");
    validate->add_option("--envelope-step", val.envelope_step, "Envelope grid step");
    validate->add_option("--observed", observed, "Observed events file overlaid on the envelope");
    validate->add_option("--observed-unit", val.observed_unit, "Unit of the observed file")
        ->transform(CLI::CheckedTransformer(kUnits, CLI::ignore_case));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : hawkes::kExitUsage;
    }

    try {
        if (*simulate) {
            sim.seed = hawkes::resolve_seed(sim_seed);
            sim.sampler = sampler == "cluster" ? hawkes::Sampler::Cluster : hawkes::Sampler::Exact;
            const auto result = hawkes::cmd_simulate(sim);
            std::cerr << "wrote " << result.events << " events to " << sim.events_path.string()
                      << " and " << result.grid_rows << " intensity rows to "
                      << sim.intensity_path.string() << '\n';
            return hawkes::kExitOk;
        }
        if (*moments) {
            std::cout << hawkes::cmd_moments(mom).dump(2) << '\n';
            return hawkes::kExitOk;
        }
        if (*estimate) {
            est.multistart = !est_no_multistart;
            if (!est_output.empty()) est.output_path = est_output;
            const auto outcome = hawkes::cmd_estimate(est);
            if (est_output.empty()) std::cout << outcome.report.dump(2) << '\n';
            return outcome.exit_code;
        }
        if (*validate) {
            val.seed = hawkes::resolve_seed(val_seed);
            val.fit = !val_no_fit;
            val.multistart = !val_no_multistart;
            if (!table.empty()) val.table_path = table;
            if (!summary.empty()) val.summary_path = summary;
            if (!envelope.empty()) {
                val.envelope_path = envelope;
                if (!val.envelope_step) val.envelope_step = 1.0;
            }
            if (!observed.empty()) val.observed_path = observed;
            const auto report = hawkes::cmd_validate(val);
            if (summary.empty()) std::cout << hawkes::to_json(report, val).dump(2) << '\n';
            return hawkes::kExitOk;
        }
    } catch (const hawkes::HawkesError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return hawkes::exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return hawkes::kExitUsage;
    }
    return hawkes::kExitUsage;
}
