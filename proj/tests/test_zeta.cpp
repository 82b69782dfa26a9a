#include <catch2/catch_amalgamated.hpp>

#include <gec/zeta.hpp>

using Catch::Matchers::WithinAbs;

TEST_CASE("zeta near 1 against multiprecision oracle") {
    // 25-digit oracle: zeta(1.1) = 10.58444846495080982638640
    CHECK_THAT(gec::zeta_real(1.1), WithinAbs(10.5844484649508098, 1e-10));
    CHECK_THAT(gec::zeta_real(2.0), WithinAbs(1.6449340668482264365, 1e-12));
    CHECK_THROWS_AS(gec::zeta_real(1.0), std::invalid_argument);
}

TEST_CASE("laurent bracket at fixed eps = 0.1 is within first-order distance of gamma") {
    const double v = gec::laurent_bracket(gec::prime_set{}, 0.1);
    // oracle: zeta(1.1) - 10 = 0.58444846495080982639
    CHECK_THAT(v, WithinAbs(0.58444846495080982639, 1e-10));
    CHECK(std::abs(v - gec::euler_gamma) < 0.1);
}

TEST_CASE("laurent extrapolation recovers gamma(P)") {
    CHECK_THAT(gec::laurent_gamma(gec::prime_set{}), WithinAbs(0.5772156649, 1e-6));
    CHECK_THAT(gec::laurent_gamma(gec::prime_set::of({2})), WithinAbs(0.63518142273073908501, 1e-5));
}

TEST_CASE("laurent agrees with gamma_finite for small sets") {
    const std::vector<std::vector<std::uint64_t>> sets = {
        {}, {2}, {3}, {2, 3}, {2, 3, 5, 7}, {5, 11, 13}, {2, 3, 5, 7, 11, 13}, {47}, {2, 47}};
    for (const auto& elems : sets) {
        auto P = gec::prime_set::of(elems);
        CHECK_THAT(gec::laurent_gamma(P), WithinAbs(gec::gamma_finite(P), 1e-5));
    }
}

TEST_CASE("laurent grid validation") {
    CHECK_THROWS_AS(gec::laurent_gamma(gec::prime_set{}, std::vector<double>{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(gec::laurent_gamma(gec::prime_set{}, std::vector<double>{0.01, 0.02}),
                    std::invalid_argument);
    CHECK_THROWS_AS(gec::laurent_bracket(gec::prime_set{}, 0.3), std::invalid_argument);
}
