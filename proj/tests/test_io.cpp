#include <doctest.h>

#include "hawkes/error.hpp"
#include "hawkes/io.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <string>

using namespace hawkes;

namespace {

ParsedEvents parse(const std::string& text, TimeUnit unit = TimeUnit::Minutes,
                   std::optional<double> horizon = std::nullopt) {
    std::istringstream in(text);
    return parse_events(in, unit, horizon);
}

ErrorCode parse_error(const std::string& text) {
    try {
        (void)parse(text);
    } catch (const HawkesError& e) {
        return e.code();
    }
    FAIL("expected a parse failure");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("header and ties") {
    const auto p = parse("t\n0.5\n1.0\n1.0\n");
    REQUIRE(p.events.size() == 3);
    CHECK(p.events.times()[1] == 1.0);
    CHECK(p.events.times()[2] == 1.0);
    CHECK(p.events.horizon() == 1.0);
    CHECK(p.events.unit() == "minutes");
    CHECK(p.warnings.empty());
}

TEST_CASE("unsorted input is sorted with a warning") {
    const auto p = parse("2\n1\n");
    CHECK(p.events.times()[0] == 1.0);
    CHECK(p.events.times()[1] == 2.0);
    CHECK(p.warnings.size() == 1);
}

TEST_CASE("blank lines, CRLF and surrounding spaces") {
    const auto p = parse("t\r\n\r\n 0.25 \r\n3\r\n\n");
    CHECK(p.events.size() == 2);
    CHECK(p.events.horizon() == 3.0);
}

TEST_CASE("horizon from the last timestamp or an override") {
    std::ostringstream file;
    file << "t\n";
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(0.0, 600.0);
    for (int k = 0; k < 447; ++k) file << u(gen) << '\n';
    file << "600\n";
    const auto p = parse(file.str(), TimeUnit::Minutes);
    CHECK(p.events.size() == 448);
    CHECK(p.events.horizon() == 600.0);

    const auto cut = parse(file.str(), TimeUnit::Minutes, 300.0);
    CHECK(cut.events.horizon() == 300.0);
    CHECK(cut.events.size() < 448);
    CHECK(!cut.warnings.empty());

    const auto longer = parse("1\n2\n", TimeUnit::Minutes, 10.0);
    CHECK(longer.events.horizon() == 10.0);
    CHECK(longer.warnings.empty());
}

TEST_CASE("parse errors") {
    CHECK(parse_error("t\n1.0\nabc\n") == ErrorCode::ParseError);
    CHECK(parse_error("1.0\nt\n") == ErrorCode::ParseError);
    CHECK(parse_error("1.0 2.0\n") == ErrorCode::ParseError);
    CHECK(parse_error("inf\n") == ErrorCode::ParseError);
    CHECK(parse_error("t\n-0.5\n") == ErrorCode::NegativeTimestamp);
    CHECK(parse_error("") == ErrorCode::EmptyFile);
    CHECK(parse_error("t\n\n") == ErrorCode::EmptyFile);

    try {
        (void)parse("t\n1\n2\nx\n");
    } catch (const HawkesError& e) {
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
    CHECK_THROWS_AS((void)parse_events_file("/nonexistent/events.csv", TimeUnit::Minutes),
                    HawkesError);
}

TEST_CASE("unit names") {
    CHECK(parse_unit("s") == TimeUnit::Seconds);
    CHECK(parse_unit("minutes") == TimeUnit::Minutes);
    CHECK(parse_unit("h") == TimeUnit::Hours);
    CHECK_THROWS_AS((void)parse_unit("days"), HawkesError);
    CHECK(unit_name(TimeUnit::Hours) == "hours");
}

TEST_CASE("unit conversion round trip") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(0.0, 600.0);
    std::ostringstream minutes, seconds;
    for (int k = 0; k < 200; ++k) {
        const double m = u(gen);
        minutes << format_number(m) << '\n';
        seconds << format_number(m * 60.0) << '\n';
    }
    const auto direct = parse(minutes.str(), TimeUnit::Minutes).events;
    const auto converted = convert_units(parse(seconds.str(), TimeUnit::Seconds).events, TimeUnit::Minutes);
    REQUIRE(direct.size() == converted.size());
    CHECK(converted.unit() == "minutes");
    for (std::size_t k = 0; k < direct.size(); ++k) {
        CHECK(std::abs(converted.times()[k] - direct.times()[k]) <= 1e-12 * direct.times()[k]);
    }
    const auto hours = convert_units(direct, TimeUnit::Hours);
    CHECK(hours.horizon() == doctest::Approx(direct.horizon() / 60.0).epsilon(1e-15));
}

TEST_CASE("written events parse back exactly") {
    std::mt19937_64 gen(2);
    std::exponential_distribution<double> gap(3.0);
    std::vector<double> times;
    double t = 0.0;
    for (int k = 0; k < 500; ++k) times.push_back(t += gap(gen));
    const EventSequence ev(times, t);
    std::ostringstream out;
    write_events(out, ev);
    const auto back = parse(out.str());
    REQUIRE(back.events.size() == times.size());
    for (std::size_t k = 0; k < times.size(); ++k) CHECK(back.events.times()[k] == times[k]);
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1e-300) == "1e-300");
}

TEST_CASE("report JSON carries the documented fields") {
    EstimateReport r;
    r.params_hat = {0.2, 1.0, 1.1};
    r.residual_norm = 3e-10;
    r.iterations = 12;
    r.converged = true;
    r.window_stats = {{0.6, 1.0, 2.2}, 0.5, 14000, 3000.0};
    const auto j = to_json(r);
    CHECK(j["params_hat"]["alpha"] == 0.2);
    CHECK(j["params_hat"]["beta"] == 1.0);
    CHECK(j["params_hat"]["lambda_inf"] == 1.1);
    CHECK(j["residual_norm"] == 3e-10);
    CHECK(j["iterations"] == 12);
    CHECK(j["converged"] == true);
    for (const char* key : {"m1", "m2", "m3", "delta", "count", "t0"}) {
        CHECK(j["window_stats"].contains(key));
    }
    CHECK(j["window_stats"]["count"] == 14000);
}

TEST_CASE("open_output reports unwritable paths") {
    try {
        (void)open_output("/nonexistent/dir/out.json");
        FAIL("expected IoError");
    } catch (const HawkesError& e) {
        CHECK(e.code() == ErrorCode::IoError);
    }
}
