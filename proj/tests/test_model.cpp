#include <catch2/catch_amalgamated.hpp>

#include "emset/io.hpp"
#include "emset/model.hpp"

using namespace emset;
using model::ExpansiveSpec;
using model::SlowlyVarying;

static ExpansiveSpec base_spec() {
    return ExpansiveSpec(Rational(1), Rational(1, 2), SlowlyVarying::one(), 1);
}

TEST_CASE("coeff_c direct values") {
    ExpansiveSpec s1 = base_spec();
    CHECK(num::to_d(s1.coeff<long double>(3)) == 8.0);  // 2^3 * 3^0
    CHECK(s1.coeff<Rational>(3) == Rational(8));

    ExpansiveSpec s2(Rational(2), Rational(1, 2), SlowlyVarying::one(), 2);
    CHECK(s2.coeff<long double>(1) == 0.0L);
    CHECK(s2.coeff<Rational>(1) == 0);
    CHECK(num::to_d(s2.coeff<long double>(4)) == 64.0);  // 2^4 * 4^1
    CHECK(s2.coeff<Rational>(4) == Rational(64));
    CHECK(s2.c_m<Rational>() == Rational(8));  // c_2 = 2^2 * 2
}

TEST_CASE("coeff_c overflow reports a precision error") {
    ExpansiveSpec s = base_spec();
    CHECK_THROWS_AS(s.coeff<long double>(100000), PrecisionError);
}

TEST_CASE("coeff_c exact/float agreement") {
    ExpansiveSpec s(Rational(3), Rational(2, 5), SlowlyVarying::constant(Rational(7, 2)), 2);
    for (long n : {2L, 5L, 17L}) {
        auto exact = s.coeff<Rational>(n);
        auto fl = s.coeff<long double>(n);
        CHECK(std::fabs(num::to_d(fl) / num::to_d(exact) - 1.0) < 1e-15);
    }
}

TEST_CASE("coefficient ratio approaches 1/rho") {
    ExpansiveSpec s(Rational(2), Rational(1, 2), SlowlyVarying::log_power(1.0), 1);
    double prev_dev = 1e9;
    for (long n : {100L, 1000L, 10000L}) {
        long double r = s.coeff<long double>(n + 1) / s.coeff<long double>(n);
        double dev = std::fabs(num::to_d(r) / 2.0 - 1.0);
        CHECK(dev < prev_dev);
        prev_dev = dev;
    }
}

TEST_CASE("slowly varying ratio deviation decreases along the grid") {
    std::vector<double> grid = {1e3, 1e4, 1e5, 1e6};
    for (auto h : {SlowlyVarying::one(), SlowlyVarying::log_power(1.0),
                   SlowlyVarying::log_power(-0.5),
                   SlowlyVarying::product({SlowlyVarying::constant(Rational(3)),
                                           SlowlyVarying::log_power(2.0)})}) {
        for (double lambda : {0.5, 2.0, 10.0}) {
            auto rows = model::sv_ratio_deviation(h, lambda, grid);
            for (size_t i = 1; i < rows.size(); ++i)
                CHECK(rows[i].second <= rows[i - 1].second + 1e-15);
        }
    }
}

TEST_CASE("karamata partial sums against the closed form") {
    // alpha = 1, h == 1: sum_{s=1}^{999} 1 = 999 vs 1000 -> r = 0.999.
    ExpansiveSpec s1 = base_spec();
    auto rep1 = model::karamata_check(s1, {1000});
    CHECK(rep1.karamata[0].second == Catch::Approx(0.999).margin(1e-12));
    CHECK(std::fabs(rep1.karamata[0].second - 1.0) < 0.01);

    // alpha = 2: sum_{s=1}^{999} s = 499500 vs 10^6/2 -> r = 0.999 exactly.
    ExpansiveSpec s2(Rational(2), Rational(1, 2), SlowlyVarying::one(), 1);
    auto rep2 = model::karamata_check(s2, {1000});
    CHECK(rep2.karamata[0].second == Catch::Approx(499500.0 / 500000.0).margin(1e-12));
    CHECK(std::fabs(rep2.karamata[0].second - 1.0) < 0.01);

    // h = log: trend only, |r-1| at 1e6 below |r-1| at 1e3.
    ExpansiveSpec s3(Rational(1), Rational(1, 2), SlowlyVarying::log_power(1.0), 1);
    auto rep3 = model::karamata_check(s3, {1000, 1000000});
    CHECK(std::fabs(rep3.karamata[1].second - 1.0) < std::fabs(rep3.karamata[0].second - 1.0));
}

TEST_CASE("karamata ratios approach 1 monotonically on a geometric grid") {
    for (auto h : {SlowlyVarying::one(), SlowlyVarying::log_power(1.0),
                   SlowlyVarying::log_power(-1.0)}) {
        ExpansiveSpec s(Rational(1), Rational(1, 2), h, 1);
        auto rep = model::karamata_check(s, {1000, 10000, 100000, 1000000});
        double prev = 1e9;
        for (auto& [x, r] : rep.karamata) {
            double dev = std::fabs(r - 1.0);
            CHECK(dev < prev);
            prev = dev;
        }
    }
}

TEST_CASE("karamata rejects bad grids") {
    ExpansiveSpec s = base_spec();
    CHECK_THROWS_AS(model::karamata_check(s, {1000, 100}), DomainError);
    CHECK_THROWS_AS(model::karamata_check(s, {1}), DomainError);
}

TEST_CASE("subpoly two-sided bound") {
    auto one = SlowlyVarying::one();
    for (auto& [x, ok] : model::subpoly_check(one, 0.1, {10.0, 1e4, 1e6})) CHECK(ok);

    // 1/ln(10^4) = 0.108... > 10^-2
    auto loginv = SlowlyVarying::log_power(-1.0);
    auto rows = model::subpoly_check(loginv, 0.5, {100.0, 1e4});
    CHECK(rows[1].second);

    // ln x needs delta large enough at moderate x: at x = 1e6 and delta=0.5,
    // x^0.5 = 1000 > ln(1e6) = 13.8.
    auto logp = SlowlyVarying::log_power(1.0);
    auto rows2 = model::subpoly_check(logp, 0.5, {1e4, 1e6});
    CHECK(rows2[0].second);
    CHECK(rows2[1].second);

    CHECK_THROWS_AS(model::subpoly_check(one, -1.0, {1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(model::subpoly_check(one, 0.1, {5.0}), DomainError);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(ExpansiveSpec(Rational(0), Rational(1, 2), SlowlyVarying::one(), 1),
                    ConfigError);
    CHECK_THROWS_AS(ExpansiveSpec(Rational(1), Rational(1), SlowlyVarying::one(), 1), ConfigError);
    CHECK_THROWS_AS(ExpansiveSpec(Rational(1), Rational(1, 2), SlowlyVarying::one(), 0),
                    ConfigError);
    CHECK_THROWS_AS(SlowlyVarying::constant(Rational(0)), ConfigError);
}

TEST_CASE("exact eligibility") {
    CHECK(base_spec().exact_eligible());
    ExpansiveSpec slog(Rational(1), Rational(1, 2), SlowlyVarying::log_power(1.0), 1);
    CHECK(!slog.exact_eligible());
    CHECK_THROWS_AS(slog.coeff<Rational>(5), PrecisionError);
    ExpansiveSpec shalf(Rational(1, 2), Rational(1, 2), SlowlyVarying::one(), 1);
    CHECK(!shalf.exact_eligible());
}

TEST_CASE("spec JSON round-trip is exact") {
    io::json j = {{"alpha", "2"},
                  {"rho", "0.37"},
                  {"m", 2},
                  {"h",
                   {{"kind", "product"},
                    {"factors",
                     io::json::array({{{"kind", "constant"}, {"c", "7/3"}},
                                      {{"kind", "log_power"}, {"beta", -1.5}}})}}}};
    auto doc = io::parse_spec(j);
    REQUIRE(doc.spec.has_value());
    CHECK(doc.spec->alpha_q == Rational(2));
    CHECK(doc.spec->rho_q == Rational(37, 100));
    auto j2 = io::spec_to_json(doc);
    auto doc2 = io::parse_spec(j2);
    CHECK(doc2.spec->alpha_q == doc.spec->alpha_q);
    CHECK(doc2.spec->rho_q == doc.spec->rho_q);
    CHECK(doc2.spec->m == doc.spec->m);
    CHECK(doc2.spec->h.describe() == doc.spec->h.describe());

    io::json raw = {{"raw", io::json::array({"0.5", "1", "2/3"})}};
    auto rdoc = io::parse_spec(raw);
    CHECK(rdoc.is_raw());
    CHECK(rdoc.raw[2] == Rational(2, 3));
    auto rdoc2 = io::parse_spec(io::spec_to_json(rdoc));
    CHECK(rdoc2.raw == rdoc.raw);
}

TEST_CASE("unknown config keys are rejected") {
    io::json j = {{"alpha", "1"}, {"rho", "0.5"}, {"m", 1}, {"h", {{"kind", "constant"}, {"c", "1"}}},
                  {"zeta", 3}};
    CHECK_THROWS_AS(io::parse_spec(j), ConfigError);
}
