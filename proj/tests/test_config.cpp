#include "tfline/config.hpp"
#include "tfline/errors.hpp"

#include <doctest.h>

#include <string>

using namespace tfline;

namespace {

const std::string kBase = R"([line]
termination = 0 2
delta_x = 1/4
r_s = 3
r_r = inf

[params]
l = 1
c = 1

[sample]
digits = 0 1
)";

ConfigError error_of(const std::string& text) {
    try {
        parse_config_string(text);
    } catch (const ConfigError& e) {
        return e;
    }
    FAIL("expected ConfigError");
    return ConfigError("", 0, 0);
}

}  // namespace

TEST_CASE("minimal config and defaults") {
    const RunConfig cfg = parse_config_string(kBase);
    CHECK(cfg.line.delta_x == 0.25);
    CHECK(cfg.line.r_r.is_open());
    CHECK(cfg.line.params.regime() == Regime::Lossless);
    CHECK(cfg.sample == OrdinalIndex{0, 1});
    CHECK(cfg.digit_bound == DigitBound::Strict);
    CHECK_FALSE(cfg.profile);
    CHECK(cfg.window.first == 32);
    CHECK(cfg.window.last == 96);
    CHECK(cfg.eps == 1e-9);
    CHECK(cfg.describe_ns == std::vector<std::uint64_t>{32, 96});
    CHECK(cfg.simulate_n == 1);
    CHECK(cfg.s_samples.size() == 5);
    CHECK(cfg.m_max == 60);
    CHECK(cfg.line.source.kind() == SourceSpec::Kind::UnitStep);
}

TEST_CASE("full config") {
    const RunConfig cfg = parse_config_string(kBase + R"(bound = nested

[source]
kind = table
times = 0 1.5 3
values = 1 -1/2 0   # trailing comment

[profile]
kind = superlinear
p = 2.5

[analysis]
window = 10 40
eps = 1e-6
n = 3 4 5
bound_column = no

[simulate]
n = 7
t_stop = 12
t_count = 13

[xcheck]
s = 1 2+0.5i 0.5-1i
m_max = 12

[output]
csv = out.csv
)");
    CHECK(cfg.digit_bound == DigitBound::Nested);
    CHECK(cfg.line.source.kind() == SourceSpec::Kind::Table);
    CHECK(cfg.line.source.values()[1] == -0.5);
    REQUIRE(cfg.profile);
    CHECK(cfg.profile->at(4) == doctest::Approx(32.0));
    CHECK(cfg.window.first == 10);
    CHECK(cfg.eps == 1e-6);
    CHECK(cfg.describe_ns == std::vector<std::uint64_t>{3, 4, 5});
    CHECK(cfg.simulate_n == 7);
    CHECK(cfg.grid.points().size() == 13);
    CHECK(cfg.grid.points().back() == 12.0);
    CHECK(cfg.s_samples[1] == std::complex<double>(2.0, 0.5));
    CHECK(cfg.s_samples[2] == std::complex<double>(0.5, -1.0));
    CHECK(cfg.m_max == 12);
    CHECK(cfg.csv_path == "out.csv");
}

TEST_CASE("exact rationals decide the distortionless test") {
    const RunConfig cfg = parse_config_string(R"([line]
termination = 0 1
delta_x = 1
r_s = 1
r_r = 1
[params]
r = 0.1
l = 0.3
g = 0.7
c = 2.1
[sample]
digits = 0 1
)");
    CHECK(cfg.line.params.regime() == Regime::Distortionless);
}

TEST_CASE("errors carry line and column") {
    ConfigError e = error_of(kBase + "bogus = 1\n");
    CHECK(e.line() == 13);
    CHECK(e.column() == 1);

    e = error_of("[line]\ntermination = 0 2\ndelta_x = abc\n");
    CHECK(e.line() == 3);
    CHECK(e.column() == 11);

    e = error_of(kBase + "[nowhere]\n");
    CHECK(e.line() == 13);

    e = error_of(kBase + "digits = 0 1\n");
    CHECK(e.line() == 13);
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);

    e = error_of("key = 1\n");
    CHECK(e.line() == 1);
}

TEST_CASE("invariant violations are rejected") {
    CHECK_THROWS_AS(parse_config_string("[line]\ntermination = 0 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_string(kBase + "[analysis]\nwindow = 10 15\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_string(kBase + "[xcheck]\ns = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_string(kBase + "[simulate]\nt_stop = 1\nt_count = 2.5\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_string(kBase + "[profile]\nkind = superlinear\np = 1\n"),
                    ConfigError);

    std::string wrong_rank = kBase;
    wrong_rank.replace(wrong_rank.find("digits = 0 1"), 12, "digits = 0 1 1");
    CHECK_THROWS_AS(parse_config_string(wrong_rank), ConfigError);

    std::string outside = kBase;
    outside.replace(outside.find("digits = 0 1"), 12, "digits = 1 1");
    CHECK_THROWS_AS(parse_config_string(outside), ConfigError);

    std::string bad_l = kBase;
    bad_l.replace(bad_l.find("l = 1"), 5, "l = 0");
    CHECK_THROWS_AS(parse_config_string(bad_l), ConfigError);
}

TEST_CASE("window must not start before the sample exists") {
    const std::string text = R"([line]
termination = 50 2
delta_x = 1
r_s = 1
r_r = 1
[params]
l = 1
c = 1
[sample]
digits = 40 1
[analysis]
window = 20 60
)";
    const ConfigError e = error_of(text);
    CHECK(e.line() == 12);
}

TEST_CASE("missing file") {
    CHECK_THROWS_AS(load_config("/nonexistent/tfline.ini"), ConfigError);
}
