#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dmom/arith.hpp"
#include "dmom/errors.hpp"
#include "dmom/mainterms.hpp"
#include "dmom/report.hpp"
#include "dmom/verify.hpp"

using namespace dmom;

TEST_CASE("power-law fitter") {
    std::vector<double> x, y, c;
    for (double q = 100; q <= 2000; q += 100) {
        x.push_back(q);
        y.push_back(std::pow(q, 0.25));
        c.push_back(3.0);
    }
    const auto f = fit_power_law(x, y);
    CHECK(std::abs(f.slope - 0.25) < 1e-9);
    CHECK(std::abs(f.r_squared - 1) < 1e-12);
    CHECK(f.n_points == x.size());
    CHECK(std::abs(fit_power_law(x, c).slope) < 1e-12);
    CHECK_THROWS_AS(fit_power_law({1, 2, 3, 4}, {1, 2, 3, 4}), DomainError);

    std::vector<MomentRow> rows;
    for (u64 q : {101, 211, 401, 601, 1009}) {
        MomentRow r;
        r.q = q;
        r.residual = std::pow(static_cast<double>(q), 0.25);
        rows.push_back(r);
    }
    CHECK(std::abs(fit_error_exponent(rows).slope - 0.25) < 1e-9);
    CHECK_THROWS_AS(fit_error_exponent(rows, 200), DomainError);
}

TEST_CASE("expansion probe on synthetic remainders") {
    std::vector<std::pair<u64, double>> one, half;
    for (u64 k : default_hb_grid()) {
        one.emplace_back(k, 3.0 + 5.0 / static_cast<double>(k));
        half.emplace_back(k, -1.0 + 0.5 / std::sqrt(static_cast<double>(k)) + 2.0 / static_cast<double>(k));
    }
    const auto p1 = hb_expansion_probe_values(one);
    CHECK(std::abs(p1.c0 - 3.0) < 1e-9);
    CHECK(p1.c0_stable);
    CHECK(p1.law == "k^-1");
    CHECK(std::abs(p1.estimates.front().power - 1.0) < 1e-6);
    const auto p2 = hb_expansion_probe_values(half);
    CHECK(std::abs(p2.c0 + 1.0) < 5e-3);
    CHECK(p2.law == "k^-1/2");
    CHECK_THROWS_AS(hb_expansion_probe_values({{10, 1.0}, {20, 1.0}}), DomainError);
}

TEST_CASE("residual rows") {
    const auto r = residual_even(101, 0.0, 0.0);
    CHECK(r.residual == r.lhs - r.main - r.secondary);
    CHECK(std::abs(r.residual_norm - std::abs(r.residual) / std::pow(101.0, 0.25)) < 1e-15);
    CHECK(r.divisor_count == 2);
    CHECK(std::abs(r.D - std::sqrt(101.0)) < 1e-15);
    CHECK(std::abs(r.error_budget - error_budget(101, std::sqrt(101.0))) < 1e-15);
    const auto s = residual_row(1517, 0.0, 0.0, Parity::Even);
    CHECK(s.near_sqrt_divisors == 2);
    CHECK(s.residual_norm_d * 4 == doctest::Approx(s.residual_norm));
    CHECK(std::isfinite(residual_even(5, 0.0, 0.0).residual_norm));
    CHECK_THROWS_AS(residual_row(101, 0.01, 0.0, Parity::Odd), DomainError);
    CHECK_THROWS_AS(residual_row(101, 0.0, 0.0, Parity::AllCharacters), DomainError);
    CHECK_THROWS_AS(residual_row(2, 0.0, 0.0, Parity::Even), DomainError);
}

TEST_CASE("reports are deterministic and recomputable") {
    SweepOptions opt;
    opt.parity = Parity::AllPrimitive;
    std::vector<u64> qs;
    for (u64 q = 100; q <= 300; ++q)
        if (q % 4 != 2) qs.push_back(q);
    opt.threads = 1;
    const auto a = sweep(qs, opt);
    opt.threads = 4;
    const auto b = sweep(qs, opt);
    std::ostringstream ca, cb, ja, jb;
    write_csv(moment_report(a, false), ca);
    write_csv(moment_report(b, false), cb);
    write_json(moment_report(a, false), ja);
    write_json(moment_report(b, false), jb);
    CHECK(ca.str() == cb.str());
    CHECK(ja.str() == jb.str());
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i - 1].q < a[i].q);

    std::istringstream in(ca.str());
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("q,parity,alpha_re,alpha_im", 0) == 0);
    while (std::getline(in, line)) {
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string t; std::getline(ss, t, ',');) f.push_back(t);
        REQUIRE(f.size() == 20);
        for (int part = 0; part < 2; ++part) {
            const double lhs = std::stod(f[6 + part]), main = std::stod(f[8 + part]), sec = std::stod(f[10 + part]);
            REQUIRE(std::abs(lhs - main - sec - std::stod(f[12 + part])) < 1e-12 * std::max(1.0, std::abs(lhs)));
        }
    }
    auto doc = nlohmann::json::parse(ja.str());
    CHECK(doc["rows"].size() == a.size());
    CHECK(doc["rows"][0]["q"] == 100);
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK_THROWS_AS(sweep({}, opt), DomainError);
}

TEST_CASE("kernel probe") {
    const auto cells = kernel_probe();
    CHECK(cells.size() == 11);
    for (const auto& c : cells) CHECK_MESSAGE(c.ok, c.name);
}

TEST_CASE("reciprocity probe") {
    const auto rows = reciprocity_probe({{5, 19}, {3, 103}});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].p == 19);
    CHECK(rows[0].large_case);
    CHECK_FALSE(rows[1].large_case);
    CHECK(rows[1].residual == rows[1].s_ph - rows[1].rhs);
    CHECK(std::abs(rows[1].rhs - thm10_rhs(103, 3, rows[1].s_hp)) < 1e-12);
    CHECK(reciprocity_probe({{13, 23}})[0].beyond_range);
    CHECK_THROWS_AS(reciprocity_probe({{7, 5}}), DomainError);
}
