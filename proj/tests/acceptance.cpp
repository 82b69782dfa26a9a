// Acceptance gate: one pass/fail line per criterion, every criterion also
// asserted so the test binary fails if any line fails.

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cstdio>
#include <random>

#include <gec/certificates.hpp>
#include <gec/corrections.hpp>
#include <gec/gamma.hpp>
#include <gec/zeros.hpp>

namespace {

const char* kZeros = GEC_SOURCE_DIR "/data/zeros_100k.txt";

gec::zero_table& big_table() {
    static gec::zero_table t = gec::zero_table::load(kZeros, 0, 1e-8);
    return t;
}

struct stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void verdict(int n, const char* what, bool ok, double secs) {
    std::printf("[%s] criterion %2d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", n, what, secs);
    std::fflush(stdout);
    CHECK(ok);
}

double truncate5(double v) { return std::floor(v * 100000.0) / 100000.0; }

} // namespace

TEST_CASE("criterion 1: reference table reproduction") {
    stopwatch sw;
    const double table_one[41] = {
        0.57721, 0.63518, 0.60655, 0.59254, 0.58202, 0.57893, 0.57540, 0.57352, 0.57131,
        0.56978, 0.56913, 0.56827, 0.56783, 0.56745, 0.56694, 0.56649, 0.56619, 0.56600,
        0.56574, 0.56555, 0.56537, 0.56513, 0.56495, 0.56477, 0.56462, 0.56454, 0.56445,
        0.56433, 0.56420, 0.56406, 0.56391, 0.56385, 0.56378, 0.56372, 0.56365, 0.56361,
        0.56355, 0.56350, 0.56345, 0.56341, 0.56336};
    bool ok = truncate5(gec::euler_gamma) == table_one[0];
    ok = ok && truncate5(gec::exp_minus_gamma()) == 0.56145;
    ok = ok && std::floor(gec::exp_minus_gamma() * 1e10) / 1e10 == 0.5614594835;
    std::vector<double> got;
    gec::gamma_stream(200, [&](const gec::gamma_record& rec) {
        if (rec.r <= 40) got.push_back(rec.gamma_r);
    });
    ok = ok && got.size() >= 40;
    for (int r = 1; r <= 40 && ok; ++r) ok = truncate5(got[r - 1]) == table_one[r];
    const double secs = sw.seconds();
    verdict(1, "reference table of gamma_r reproduced to 5 truncated decimals", ok && secs < 1.0,
            secs);
}

TEST_CASE("criterion 2: positivity gamma_r > e^{-gamma} below 10^6") {
    stopwatch sw;
    auto cert = gec::cert_gamma_positive(1000000);
    const double secs = sw.seconds();
    verdict(2, "gamma_r > e^{-gamma} for all p_r < 10^6", cert.holds && secs < 30.0, secs);
}

TEST_CASE("criterion 3: monotonicity below 10^6") {
    stopwatch sw;
    auto rep = gec::monotonicity_scan(1000000);
    const double secs = sw.seconds();
    verdict(3, "A(p_r) >= log p_{r+1} with positive minimum margin below 10^6",
            rep.violations.empty() && rep.min_margin > 0.0 && secs < 30.0, secs);
}

TEST_CASE("criterion 4: unconditional lower-bound certificate") {
    stopwatch sw;
    auto at9 = gec::unconditional_lower_bound(1e9, 0);
    auto at6 = gec::unconditional_lower_bound(1e6, 1000000);
    const bool ok = at9.cert.holds && at9.bound_value >= 0.56 && at6.cert.holds &&
                    at6.bound_value >= 0.557;
    verdict(4, "lower bound >= 0.56 at 10^9 and >= 0.557 at 10^6", ok, sw.seconds());
}

TEST_CASE("criterion 5: explicit formula vs direct evaluation of R") {
    stopwatch sw;
    const auto& zt = big_table();
    gec::prime_table pt(11000);
    bool ok = zt.count() >= 100000;
    for (int i = 0; i < 20 && ok; ++i) {
        const double x = std::floor(100.0 + (9900.0 / 19.0) * i) + 0.5;
        const auto re = gec::R_explicit(x, zt);
        const auto rd = gec::R_direct(x, pt);
        ok = std::abs(re.value - rd.value) <= re.error_bound + rd.error_bound;
    }
    verdict(5, "R explicit-formula and direct values agree within combined bounds at 20 points",
            ok, sw.seconds());
}

TEST_CASE("criterion 6: zero-sum constant window and monotonicity") {
    stopwatch sw;
    const auto& zt = big_table();
    const double full = gec::sum_inv_rho_sq(zt).partial_sum;
    bool ok = full >= 0.04609 && full <= 0.0461914;
    double prev = 0.0;
    for (std::size_t n : {1000u, 10000u, 100000u}) {
        const double v = gec::sum_inv_rho_sq(zt.truncated(n)).partial_sum;
        ok = ok && v > prev && v <= 0.0461914;
        prev = v;
    }
    verdict(6, "sum over zeros of 1/|rho|^2 in [0.04609, 0.0461914], monotone in table size", ok,
            sw.seconds());
}

TEST_CASE("criterion 7: oscillation scan on [10, 100]") {
    stopwatch sw;
    auto rep = gec::scan_ell(10.0, 100.0, 1e-3, big_table());
    const double secs = sw.seconds();
    verdict(7, "l(u) scan on [10, 100] at step 1e-3 completes with max < 1",
            rep.max_value < 1.0 && rep.points_evaluated == 90001 && secs < 600.0, secs);
}

TEST_CASE("criterion 8: identity audit at sampled p_r") {
    stopwatch sw;
    gec::prime_table pt(10000000);
    std::vector<std::uint64_t> samples;
    for (int i = 0; i < 10; ++i) {
        auto q = static_cast<std::uint64_t>(1e4 * std::pow(100.0, i / 9.0));
        while (q > 2 && !gec::is_prime_u64(q)) --q;
        samples.push_back(q);
    }
    auto audits = gec::identity_audit(samples, pt, 1e7);
    bool ok = audits.size() == samples.size();
    for (const auto& a : audits) ok = ok && a.deviation <= a.tolerance;
    verdict(8, "gamma_r reconstructed from (R, Delta, Delta~, H) within combined bounds", ok,
            sw.seconds());
}

TEST_CASE("criterion 9: inequality certificate suite") {
    stopwatch sw;
    gec::prime_table pt(1000000);
    std::vector<double> xs;
    for (int i = 0; i <= 64; ++i) xs.push_back(2.0 * std::pow(500000.0, i / 64.0));
    bool ok = true;
    for (const auto& c : gec::check_bounds(xs, true, pt)) ok = ok && c.holds;
    ok = ok && gec::cert_gamma_margin_strong(1000000, 10000.0).holds;
    verdict(9, "all named inequality certificates hold with positive margin", ok, sw.seconds());
}

TEST_CASE("criterion 10: reduction property on 200 random prime sets") {
    stopwatch sw;
    std::mt19937_64 rng(424242);
    auto pool = gec::primes_up_to(1000);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> size_dist(0, 8);
    bool ok = true;
    for (int trial = 0; trial < 200 && ok; ++trial) {
        std::vector<std::uint64_t> elems;
        const int target = size_dist(rng);
        while (static_cast<int>(elems.size()) < target) {
            auto p = pool[pick(rng)];
            if (std::find(elems.begin(), elems.end(), p) == elems.end()) elems.push_back(p);
        }
        auto P = gec::prime_set::of(elems);
        auto chain = gec::reduce_to_initial_segment(P);
        ok = ok && chain.steps.size() <= 2 * P.size() + 1;
        ok = ok && chain.steps.back().set.is_initial_segment();
        for (std::size_t i = 1; i < chain.steps.size() && ok; ++i) {
            ok = chain.steps[i].gamma < chain.steps[i - 1].gamma;
            ok = ok && chain.steps[i].gamma == gec::gamma_finite(chain.steps[i].set);
        }
        ok = ok && gec::gamma_finite(P) >= chain.final_gamma();
    }
    verdict(10, "reduction chains strictly decrease, terminate, and certify gamma(P) >= gamma_r",
            ok, sw.seconds());
}
