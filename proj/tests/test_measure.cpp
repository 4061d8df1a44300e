#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "hyperfractal/measure.hpp"
#include "hyperfractal/rng.hpp"

using namespace hyperfractal;
using Catch::Matchers::WithinAbs;

TEST_CASE("ifs_dimension on symmetric two-map system") {
    ContractionSystem system{{0.5, 0.5}, {0.5, 0.5}};
    REQUIRE_THAT(ifs_dimension(system).value, WithinAbs(1.0, 1e-15));
}

TEST_CASE("ifs_dimension with N equal maps equals ln N / ln(1/lambda)") {
    for (std::size_t n : {2u, 3u, 5u, 8u}) {
        const double lambda = 0.37;
        ContractionSystem system;
        system.ratios.assign(n, lambda);
        system.probabilities.assign(n, 1.0 / static_cast<double>(n));
        const double expected = std::log(static_cast<double>(n)) / std::log(1.0 / lambda);
        REQUIRE_THAT(ifs_dimension(system).value, WithinAbs(expected, 1e-12));
    }
}

TEST_CASE("ifs_dimension hand-evaluated asymmetric case") {
    // entropy ln 2; Lyapunov (1/2)ln 2 + (1/2)ln 4 = (3/2)ln 2
    ContractionSystem system{{0.5, 0.25}, {0.5, 0.5}};
    REQUIRE_THAT(ifs_dimension(system).value, WithinAbs(2.0 / 3.0, 1e-14));
}

TEST_CASE("ifs_dimension is zero when a single branch has full probability") {
    ContractionSystem system{{0.5}, {1.0}};
    REQUIRE(ifs_dimension(system).value == 0.0);
}

TEST_CASE("ifs_dimension uniform case reduces to similarity dimension") {
    // p_i = lambda^d with d = ln N / ln(1/lambda)
    for (auto [lambda, n] : {std::pair{1.0 / 3.0, 3u}, std::pair{0.5, 4u}}) {
        ContractionSystem system;
        system.ratios.assign(n, lambda);
        system.probabilities.assign(n, 1.0 / static_cast<double>(n));
        const double d = std::log(1.0 / n) / std::log(lambda);
        REQUIRE_THAT(ifs_dimension(system).value, WithinAbs(d, 1e-12));
    }
}

TEST_CASE("ifs_dimension input validation") {
    REQUIRE_THROWS_AS(ifs_dimension({{}, {}}), std::invalid_argument);
    REQUIRE_THROWS_AS(ifs_dimension({{0.5, 0.5}, {1.0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(ifs_dimension({{0.5, 0.5}, {0.6, 0.6}}), std::invalid_argument);
    REQUIRE_THROWS_AS(ifs_dimension({{0.5, 1.0}, {0.5, 0.5}}), std::invalid_argument);
    REQUIRE_THROWS_AS(ifs_dimension({{0.5, 0.5}, {1.5, -0.5}}), std::invalid_argument);
}

TEST_CASE("ifs_dimension is permutation invariant") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.next_below(6);
        ContractionSystem system;
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            system.ratios.push_back(0.05 + 0.9 * rng.next_double());
            const double w = 0.1 + rng.next_double();
            system.probabilities.push_back(w);
            total += w;
        }
        for (double& p : system.probabilities) p /= total;
        // fix rounding so the sum is exactly 1
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) sum += system.probabilities[i];
        system.probabilities.back() = 1.0 - sum;

        const double base = ifs_dimension(system).value;
        ContractionSystem shuffled = system;
        for (std::size_t i = n - 1; i > 0; --i) {
            const std::size_t j = rng.next_below(i + 1);
            std::swap(shuffled.ratios[i], shuffled.ratios[j]);
            std::swap(shuffled.probabilities[i], shuffled.probabilities[j]);
        }
        REQUIRE_THAT(ifs_dimension(shuffled).value, WithinAbs(base, 1e-12));
    }
}

TEST_CASE("uniform_ss_dimension basics") {
    REQUIRE_THAT(uniform_ss_dimension({0.3, 0.3}).value, WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(uniform_ss_dimension({0.5, 0.125}).value, WithinAbs(3.0, 1e-14));
    REQUIRE(uniform_ss_dimension({0.5, 1.0}).value == 0.0);
    REQUIRE_THROWS_AS(uniform_ss_dimension({1.5, 0.5}), std::invalid_argument);
    REQUIRE_THROWS_AS(uniform_ss_dimension({0.5, -1.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(uniform_ss_dimension({0.5, 0.5, -1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("uniform_ss_dimension with s=1/2, r=(1-p)/4 matches the grid formula") {
    for (int i = 1; i <= 9; ++i) {
        const double p = 0.1 * i;
        const double expected = manhattan_dimension(p).value;
        REQUIRE_THAT(uniform_ss_dimension({0.5, (1.0 - p) / 4.0}).value,
                     WithinAbs(expected, 1e-12));
    }
}

TEST_CASE("manhattan_dimension endpoints and midpoint") {
    REQUIRE(manhattan_dimension(0.0).value == 2.0);
    REQUIRE_THAT(manhattan_dimension(0.5).value, WithinAbs(3.0, 1e-14));
    REQUIRE(manhattan_dimension(1.0).is_infinite());
    REQUIRE_THROWS_AS(manhattan_dimension(-0.1), std::invalid_argument);
    REQUIRE_THROWS_AS(manhattan_dimension(1.1), std::invalid_argument);
}

TEST_CASE("manhattan_dimension is strictly increasing and exceeds 2 on (0,1)") {
    double previous = manhattan_dimension(0.0).value;
    for (int i = 1; i <= 99; ++i) {
        const double current = manhattan_dimension(0.01 * i).value;
        REQUIRE(current > previous);
        REQUIRE(current > 2.0);
        previous = current;
    }
}

TEST_CASE("nu_exponent values and identity") {
    REQUIRE_THAT(nu_exponent(0.5), WithinAbs(-2.0, 1e-14));
    REQUIRE_THAT(nu_exponent(1e-12), WithinAbs(-1.0, 1e-9));
    for (int i = 1; i <= 9; ++i) {
        const double p = 0.1 * i;
        REQUIRE_THAT(nu_exponent(p) + manhattan_dimension(p).value, WithinAbs(1.0, 1e-12));
    }
    REQUIRE_THROWS_AS(nu_exponent(0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(nu_exponent(1.0), std::invalid_argument);
}
