#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <gec/gamma.hpp>

using Catch::Matchers::WithinAbs;

namespace {

// gamma_r values of the reference table, truncated to 5 decimals
const double table_one[41] = {
    0.57721, 0.63518, 0.60655, 0.59254, 0.58202, 0.57893, 0.57540, 0.57352, 0.57131,
    0.56978, 0.56913, 0.56827, 0.56783, 0.56745, 0.56694, 0.56649, 0.56619, 0.56600,
    0.56574, 0.56555, 0.56537, 0.56513, 0.56495, 0.56477, 0.56462, 0.56454, 0.56445,
    0.56433, 0.56420, 0.56406, 0.56391, 0.56385, 0.56378, 0.56372, 0.56365, 0.56361,
    0.56355, 0.56350, 0.56345, 0.56341, 0.56336};

double truncate5(double v) { return std::floor(v * 100000.0) / 100000.0; }

} // namespace

TEST_CASE("euler gamma literal and e^{-gamma} cross-check") {
    CHECK_THAT(gec::euler_gamma, WithinAbs(0.5772156649015328606, 1e-16));
    // the published 10-digit value 0.5614594835 is a truncation
    CHECK(std::floor(gec::exp_minus_gamma() * 1e10) / 1e10 == 0.5614594835);
}

TEST_CASE("gamma_finite closed form") {
    CHECK_THAT(gec::gamma_finite(gec::prime_set{}), WithinAbs(0.5772156649015328606, 1e-15));
    // 50-digit oracle: 0.63518142273073908501...
    CHECK_THAT(gec::gamma_finite(gec::prime_set::of({2})), WithinAbs(0.63518142273073908501, 1e-14));
    // 50-digit oracle: 0.75101453949039180420...
    CHECK_THAT(gec::gamma_finite(gec::prime_set::of({3})), WithinAbs(0.75101453949039180420, 1e-14));
}

TEST_CASE("prime_set validation") {
    CHECK_THROWS_WITH(gec::prime_set::of({4}), Catch::Matchers::ContainsSubstring("4"));
    CHECK_THROWS_AS(gec::prime_set::of({3, 3}), std::invalid_argument);
    CHECK(gec::prime_set::of({5, 2, 3}).primes() == std::vector<std::uint64_t>{2, 3, 5});
}

TEST_CASE("gamma_stream first record and Table reproduction") {
    std::vector<gec::gamma_record> recs;
    gec::gamma_stream(200, [&](const gec::gamma_record& r) { recs.push_back(r); });
    REQUIRE(recs.size() >= 40);
    CHECK(recs[0].r == 1);
    CHECK(recs[0].p == 2);
    CHECK_THAT(recs[0].gamma_r, WithinAbs(0.63518142273073908501, 1e-14));
    CHECK_THAT(recs[0].A, WithinAbs(gec::euler_gamma + std::log(2.0), 1e-14));
    CHECK(truncate5(gec::euler_gamma) == table_one[0]);
    for (int r = 1; r <= 40; ++r) CHECK(truncate5(recs[r - 1].gamma_r) == table_one[r]);
}

TEST_CASE("streamed gamma_r matches gamma_finite for r <= 10^4") {
    std::vector<std::uint64_t> firsts;
    gec::comp_sum S, L;
    double worst = 0.0, worst_closed = 0.0;
    gec::gamma_stream(104730, [&](const gec::gamma_record& rec) { // p_10000 = 104729
        S.add(std::log(static_cast<double>(rec.p)) / (static_cast<double>(rec.p) - 1.0));
        L.add(std::log1p(-1.0 / static_cast<double>(rec.p)));
        const double closed = std::exp(L.value()) * (gec::euler_gamma + S.value());
        worst_closed = std::max(worst_closed, std::abs(rec.gamma_r - closed));
    });
    CHECK(worst_closed <= 1e-12);
    (void)worst;
}

TEST_CASE("internal identity exp(L)(gamma+S) tracks the recurrence") {
    gec::gamma_stream_state st;
    gec::for_each_prime(10000, [&](std::uint64_t p) {
        st.push(p);
        CHECK(std::abs(st.gamma_r() - st.gamma_from_sums()) <= 1e-13);
    });
}

TEST_CASE("positivity: gamma_r > e^{-gamma} below 10^6") {
    double min_excess = 1e9;
    gec::gamma_stream(1000000, [&](const gec::gamma_record& rec) {
        min_excess = std::min(min_excess, rec.gamma_r - gec::exp_minus_gamma());
    });
    CHECK(min_excess > 0.0);
}

TEST_CASE("monotonicity scan") {
    SECTION("spot check A(5) >= log 7") {
        gec::gamma_stream_state st;
        for (std::uint64_t p : {2ull, 3ull, 5ull}) st.push(p);
        CHECK_THAT(st.A(), WithinAbs(2.2220284679040581094, 1e-13));
        CHECK(st.A() >= std::log(7.0));
    }
    SECTION("no violations below 10^5, positive min margin") {
        auto rep = gec::monotonicity_scan(100000);
        CHECK(rep.violations.empty());
        CHECK(rep.min_margin > 0.0);
        CHECK(rep.records > 0);
    }
    SECTION("degenerate limit 2: single record, vacuously clean") {
        auto rep = gec::monotonicity_scan(2);
        CHECK(rep.records == 0);
        CHECK(rep.violations.empty());
    }
}

TEST_CASE("reduction chain examples") {
    SECTION("initial segment is a fixed point") {
        auto chain = gec::reduce_to_initial_segment(gec::prime_set::of({2, 3}));
        CHECK(chain.steps.size() == 1);
        CHECK(chain.final_r == 2);
    }
    SECTION("{3} removes to the empty set") {
        auto chain = gec::reduce_to_initial_segment(gec::prime_set::of({3}));
        REQUIRE(chain.steps.size() == 2);
        CHECK(chain.final_r == 0);
        CHECK(chain.steps[1].branch == gec::reduction_branch::removed_largest);
        CHECK_THAT(chain.steps[0].gamma, WithinAbs(0.75101453949039180420, 1e-14));
        CHECK_THAT(chain.steps[1].gamma, WithinAbs(0.5772156649015328606, 1e-15));
    }
    SECTION("replacement branch: {2,3,5,7,11,13,19} -> {2,...,17}") {
        auto chain = gec::reduce_to_initial_segment(gec::prime_set::of({2, 3, 5, 7, 11, 13, 19}));
        REQUIRE(chain.steps.size() == 2);
        CHECK(chain.final_r == 7);
        CHECK(chain.steps[1].branch == gec::reduction_branch::replaced_largest);
        CHECK(chain.steps[1].set == gec::prime_set::of({2, 3, 5, 7, 11, 13, 17}));
        // f(v) = 1 - 1/v + log v/(v A) at the two branches
        gec::prime_set Qp = gec::prime_set::of({2, 3, 5, 7, 11, 13});
        gec::comp_sum S;
        for (auto p : Qp.primes())
            S.add(std::log(static_cast<double>(p)) / (static_cast<double>(p) - 1.0));
        const double A = gec::euler_gamma + S.value();
        CHECK_THAT(gec::adjoin_factor(19.0, A), WithinAbs(0.99903, 5e-5));
        CHECK_THAT(gec::adjoin_factor(17.0, A), WithinAbs(0.99673, 5e-5));
        CHECK(A >= std::log(19.0));
    }
}

TEST_CASE("reduction properties on random sets") {
    std::mt19937_64 rng(20260825);
    auto small_primes = gec::primes_up_to(1000);
    std::uniform_int_distribution<std::size_t> pick(0, small_primes.size() - 1);
    std::uniform_int_distribution<int> size_dist(0, 8);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::uint64_t> elems;
        const int target = size_dist(rng);
        while (static_cast<int>(elems.size()) < target) {
            auto p = small_primes[pick(rng)];
            if (std::find(elems.begin(), elems.end(), p) == elems.end()) elems.push_back(p);
        }
        auto P = gec::prime_set::of(elems);
        auto chain = gec::reduce_to_initial_segment(P);
        CHECK(chain.steps.size() <= 2 * P.size() + 1);
        CHECK(chain.steps.back().set.is_initial_segment());
        CHECK(chain.final_r <= P.size());
        for (std::size_t i = 1; i < chain.steps.size(); ++i) {
            CHECK(chain.steps[i].gamma < chain.steps[i - 1].gamma);
            // branch selection matches an independent recomputation
            const auto& prev = chain.steps[i - 1].set;
            const double g_removed = gec::gamma_finite(prev.without_largest());
            if (chain.steps[i].branch == gec::reduction_branch::removed_largest)
                CHECK(g_removed < gec::gamma_finite(prev));
            else
                CHECK(g_removed >= gec::gamma_finite(prev));
        }
        CHECK(gec::gamma_finite(P) >= chain.final_gamma());
    }
}

TEST_CASE("density witness") {
    SECTION("target equal to gamma(P) returns P unchanged") {
        auto P = gec::prime_set::of({2, 5});
        auto res = gec::density_witness(P, gec::gamma_finite(P), 1e4);
        CHECK(res.c == 0.0);
        CHECK(res.set == P);
    }
    SECTION("deviation shrinks with y inside a c-dependent envelope") {
        // prime counts in (y, e^c y] fluctuate, so convergence is not
        // monotone in y; the check is a shrinking envelope ~ c e^c / log^2 y
        // plus strict improvement over the full span
        for (double target : {0.7, 0.8, 1.0, 1.2, 0.65}) {
            double dev_first = 0.0, dev_last = 0.0;
            for (double y : {1e4, 1e5, 1e6}) {
                auto res = gec::density_witness(gec::prime_set{}, target, y);
                const double dev = std::abs(res.gamma - target);
                const double L = std::log(y);
                CHECK(dev <= 20.0 * res.c * std::exp(res.c) / (L * L));
                if (y == 1e4) dev_first = dev;
                if (y == 1e6) dev_last = dev;
            }
            CHECK(dev_last < dev_first);
        }
    }
    SECTION("range guard") {
        CHECK_THROWS_AS(gec::density_witness(gec::prime_set{}, 5.0, 1e15), std::out_of_range);
    }
}

TEST_CASE("unconditional lower bound") {
    SECTION("closed form values against 50-digit oracle") {
        CHECK_THAT(gec::lower_bound_closed_form(1e6), WithinAbs(0.558521129692583, 1e-12));
        CHECK_THAT(gec::lower_bound_closed_form(1e9), WithinAbs(0.560152863482945, 1e-12));
        CHECK_THAT(gec::lower_bound_closed_form(285), WithinAbs(0.541733981714349, 1e-12));
    }
    SECTION("desk-scale certificate at 10^9, closed form only") {
        auto res = gec::unconditional_lower_bound(1e9, 0);
        CHECK(res.cert.holds);
        CHECK(res.bound_value >= 0.56);
        CHECK(res.grid_monotone);
    }
    SECTION("certificate at 10^6 with exhaustive part") {
        auto res = gec::unconditional_lower_bound(1e6, 1000000);
        CHECK(res.cert.holds);
        CHECK(res.bound_value >= 0.557);
        CHECK(res.exhaustive_min > gec::exp_minus_gamma());
    }
    SECTION("domain edge 285 accepted, below rejected") {
        auto res = gec::unconditional_lower_bound(285, 0);
        CHECK(res.bound_value > 0.0);
        CHECK_THROWS_AS(gec::unconditional_lower_bound(200, 0), std::invalid_argument);
    }
}
