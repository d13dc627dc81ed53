#include <doctest.h>

#include "hawkes/error.hpp"
#include "hawkes/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace hawkes;

namespace {

bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

MomentTriple exact_triple(double a, double b, double li, double delta) {
    return stationary_moments(validate_params(a, b, li, li), delta);
}

bool has_warning(const EstimateReport& r, const std::string& needle) {
    return std::any_of(r.warnings.begin(), r.warnings.end(),
                       [&](const std::string& w) { return w.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("moments_from_counts") {
    IncrementSample s{0.0, 1.0, {1, 2}};
    const auto m = moments_from_counts(s);
    CHECK(m.triple.m1 == 1.5);
    CHECK(m.triple.m2 == 2.5);
    CHECK(m.triple.m3 == 4.5);
    CHECK(m.window_count == 2);
    CHECK(m.delta == 1.0);
}

TEST_CASE("empirical_moments uses every whole window") {
    const EventSequence ev({0.2, 0.3, 1.1, 2.9, 3.2}, 3.4);
    const auto m = empirical_moments(ev, 0.1, 1.0);
    CHECK(m.window_count == 3);
    CHECK(m.t0 == 0.1);
    // windows [0.1,1.1) [1.1,2.1) [2.1,3.1) hold 2, 1, 1 events
    CHECK(m.triple.m1 == doctest::Approx(4.0 / 3.0));
    CHECK(m.triple.m2 == doctest::Approx(6.0 / 3.0));
    CHECK(m.triple.m3 == doctest::Approx(10.0 / 3.0));

    try {
        (void)empirical_moments(ev, 3.0, 1.0);
        FAIL("expected InsufficientData");
    } catch (const HawkesError& e) {
        CHECK(e.code() == ErrorCode::InsufficientData);
    }
}

TEST_CASE("exact moments are solved back to their parameters") {
    const auto r = solve_moment_system(exact_triple(0.2, 1.0, 1.0, 0.5), 0.5, {0.5, 1.5, 2.0});
    CHECK(r.converged);
    CHECK(r.params_hat.alpha == doctest::Approx(0.2).epsilon(1e-6));
    CHECK(r.params_hat.beta == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.params_hat.lambda_inf == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.residual_norm <= 1e-9);
    CHECK(r.init == FitParams{0.5, 1.5, 2.0});
    CHECK(!r.boundary_fit);
}

TEST_CASE("round trip over the parameter grid from 1.5 theta") {
    for (double a : {0.1, 0.2, 0.4}) {
        for (double b : {1.0, 2.0}) {
            for (double li : {0.5, 1.0}) {
                for (double d : {0.25, 0.5}) {
                    CAPTURE(a);
                    CAPTURE(b);
                    CAPTURE(li);
                    CAPTURE(d);
                    const auto r =
                        solve_moment_system(exact_triple(a, b, li, d), d, {1.5 * a, 1.5 * b, 1.5 * li});
                    CHECK(r.converged);
                    CHECK(std::abs(r.params_hat.alpha - a) <= 1e-6);
                    CHECK(std::abs(r.params_hat.beta - b) <= 1e-6);
                    CHECK(std::abs(r.params_hat.lambda_inf - li) <= 1e-6);
                }
            }
        }
    }
}

TEST_CASE("converged reports honour the contract") {
    for (double a : {0.05, 0.3, 0.8}) {
        const auto r = solve_moment_system(exact_triple(a, 1.2, 0.7, 0.5), 0.5, {1.5 * a, 1.8, 1.05});
        REQUIRE(r.converged);
        CHECK(r.residual_norm <= SolverOptions{}.tolerance);
        CHECK(r.params_hat.beta > r.params_hat.alpha);
        CHECK(r.params_hat.alpha > 0.0);
        CHECK(r.params_hat.lambda_inf > 0.0);
        for (double v : r.residuals) CHECK(std::abs(v) <= r.residual_norm);
    }
}

TEST_CASE("solver is deterministic") {
    const MomentTriple t{0.63, 1.09, 2.41};
    auto solve = [&] {
        try {
            return solve_moment_system(t, 0.5, {0.5, 1.5, 2.0});
        } catch (const NoConvergenceError& e) {
            return e.report();
        }
    };
    const auto a = solve(), b = solve();
    CHECK(a.params_hat == b.params_hat);
    CHECK(a.iterations == b.iterations);
    CHECK(a.residual_norm == b.residual_norm);
}

TEST_CASE("rescaling time rescales the estimate") {
    const auto triple = exact_triple(0.3, 1.4, 0.9, 0.5);
    const auto base = solve_moment_system(triple, 0.5, {0.5, 1.5, 2.0});
    for (double c : {60.0, 0.25}) {
        const auto scaled = solve_moment_system(triple, 0.5 / c, {0.5 * c, 1.5 * c, 2.0 * c});
        REQUIRE(scaled.converged);
        CHECK(rel_close(scaled.params_hat.alpha, c * base.params_hat.alpha, 1e-7));
        CHECK(rel_close(scaled.params_hat.beta, c * base.params_hat.beta, 1e-7));
        CHECK(rel_close(scaled.params_hat.lambda_inf, c * base.params_hat.lambda_inf, 1e-7));
    }
}

TEST_CASE("Poisson-consistent moments collapse alpha to the boundary") {
    const double mu = 0.6;
    const MomentTriple t{mu, mu + mu * mu, mu + 3 * mu * mu + mu * mu * mu};
    EmpiricalMoments stats{t, 0.5, 1000, 10.0};
    EstimateReport r;
    try {
        r = estimate_from_moments(stats, {});
    } catch (const NoConvergenceError& e) {
        r = e.report();
    }
    CHECK(r.boundary_fit);
    CHECK(r.params_hat.alpha < 1e-6);
    CHECK(r.params_hat.lambda_inf == doctest::Approx(mu / 0.5).epsilon(1e-4));
}

TEST_CASE("invalid solver inputs") {
    const MomentTriple ok{0.6, 1.0, 2.0};
    CHECK_THROWS_AS((void)solve_moment_system({0.0, 1.0, 2.0}, 0.5, {0.5, 1.5, 2.0}), HawkesError);
    CHECK_THROWS_AS((void)solve_moment_system({NAN, 1.0, 2.0}, 0.5, {0.5, 1.5, 2.0}), HawkesError);
    CHECK_THROWS_AS((void)solve_moment_system(ok, 0.0, {0.5, 1.5, 2.0}), HawkesError);
    CHECK_THROWS_AS((void)solve_moment_system(ok, 0.5, {1.5, 1.5, 2.0}), HawkesError);
    CHECK_THROWS_AS((void)solve_moment_system(ok, 0.5, {0.5, 1.5, 0.0}), HawkesError);
}

TEST_CASE("iteration budget exhaustion carries the last iterate") {
    SolverOptions opts;
    opts.max_iterations = 1;
    try {
        (void)solve_moment_system(exact_triple(0.2, 1.0, 1.0, 0.5), 0.5, {0.5, 1.5, 2.0}, opts);
        FAIL("expected NoConvergence");
    } catch (const NoConvergenceError& e) {
        CHECK(e.code() == ErrorCode::NoConvergence);
        CHECK(!e.report().converged);
        CHECK(e.report().iterations == 1);
        CHECK(e.report().residual_norm > 1e-9);
    }
}

TEST_CASE("estimate falls back through the multistart points") {
    EmpiricalMoments stats{exact_triple(0.2, 1.0, 1.0, 0.5), 0.5, 14000, 3000.0};
    const auto defaults = default_multistart(stats);
    REQUIRE(defaults.size() == 3);
    CHECK(defaults[0] == FitParams{0.5, 1.5, 2.0});
    CHECK(defaults[1] == FitParams{0.5, 1.5, 0.75});
    CHECK(defaults[2] == FitParams{0.5, 1.0, 1.25});

    EstimateConfig config;
    config.init = {0.5, 1.5, 2.0};
    config.solver.max_iterations = 0;
    CHECK_THROWS_AS((void)estimate_from_moments(stats, config), NoConvergenceError);

    config.solver = {};
    const auto r = estimate_from_moments(stats, config);
    CHECK(r.converged);
    CHECK(r.window_stats.window_count == 14000);
    CHECK(r.warnings.empty());
}

TEST_CASE("estimate warnings and data errors") {
    const EventSequence few({0.2, 0.7, 1.4, 2.6, 3.1}, 4.0);
    EstimateConfig config;
    config.t0 = 0.0;
    config.delta = 0.5;
    EstimateReport r;
    try {
        r = estimate(few, config);
    } catch (const NoConvergenceError& e) {
        r = e.report();
    }
    CHECK(has_warning(r, "windows"));
    CHECK(has_warning(r, "t0 = 0"));

    const EventSequence late({9.5}, 10.0);
    config.t0 = 0.0;
    config.delta = 1.0;
    try {
        (void)estimate(late.truncated(5.0), config);
        FAIL("expected InsufficientData");
    } catch (const HawkesError& e) {
        CHECK(e.code() == ErrorCode::InsufficientData);
    }
}

TEST_CASE("simulated trajectory gives a finite report") {
    const auto p = validate_params(0.2, 1.0, 1.0, 1.0);
    const auto traj = simulate_exact(p, 1e4, 1);
    EstimateConfig config;
    EstimateReport r;
    try {
        r = estimate(traj.events, config);
    } catch (const NoConvergenceError& e) {
        r = e.report();
    }
    CHECK(r.window_stats.window_count == 14000);
    CHECK(std::abs(r.window_stats.triple.m1 - 0.625) < 0.05);
    CHECK(std::isfinite(r.residual_norm));
    CHECK(r.params_hat.beta > r.params_hat.alpha);
}
