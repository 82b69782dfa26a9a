#ifndef GEC_CERTIFICATES_HPP
#define GEC_CERTIFICATES_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gec/corrections.hpp>
#include <gec/gamma.hpp>
#include <gec/sieve.hpp>

namespace gec {

// Margins are normalized so that "min_margin > 0" is scale-free across the
// sample range; each certificate documents its normalization.

inline std::string range_string(const std::vector<double>& xs) {
    if (xs.empty()) return "(empty)";
    return "x in [" + std::to_string(xs.front()) + ", " + std::to_string(xs.back()) + "], " +
           std::to_string(xs.size()) + " samples";
}

// theta(x) <= 1.017 x  (x > 0); margin = (1.017 x - theta) / x
inline bound_certificate cert_theta_upper(const std::vector<double>& xs, const prime_table& pt) {
    auto c = make_certificate("theta-upper", range_string(xs));
    for (double x : xs) c.update((1.017 * x - pt.theta(x)) / x);
    finalize_certificate(c);
    return c;
}

// theta(x) >= 0.945 x  (x >= 1000); margin = (theta - 0.945 x) / x
inline bound_certificate cert_theta_lower(const std::vector<double>& xs, const prime_table& pt) {
    auto c = make_certificate("theta-lower", range_string(xs));
    for (double x : xs) {
        if (x < 1000)
            throw std::invalid_argument("cert_theta_lower: validity requires x >= 1000");
        c.update((pt.theta(x) - 0.945 * x) / x);
    }
    finalize_certificate(c);
    return c;
}

// Delta(x) <= 3.05/sqrt(x)  (x >= 10^6); margin = 3.05 - sqrt(x) Delta(x)
inline bound_certificate cert_delta_upper(const std::vector<double>& xs, const prime_table& pt) {
    auto c = make_certificate("delta-upper", range_string(xs));
    for (double x : xs) {
        if (x < 1e6)
            throw std::invalid_argument("cert_delta_upper: validity requires x >= 10^6");
        c.update(3.05 - std::sqrt(x) * delta_correction(x, pt).value);
    }
    finalize_certificate(c);
    return c;
}

// Delta(x)/log x - Delta~(x) >= 0  (x > 1); margin in units of 1/(sqrt x log^2 x)
inline bound_certificate cert_delta_diff_nonneg(const std::vector<double>& xs,
                                                const prime_table& pt) {
    auto c = make_certificate("delta-diff-nonneg", range_string(xs));
    for (double x : xs) {
        const double d = delta_correction(x, pt).value / std::log(x) - delta_tilde(x, pt).value;
        c.update(d * std::sqrt(x) * std::pow(std::log(x), 2));
    }
    finalize_certificate(c);
    return c;
}

// Delta(x)/log x - Delta~(x) >= 1.23/(sqrt x log^2 x)  (x >= 10^6)
inline bound_certificate cert_delta_diff_lower(const std::vector<double>& xs,
                                               const prime_table& pt) {
    auto c = make_certificate("delta-diff-lower", range_string(xs));
    for (double x : xs) {
        if (x < 1e6)
            throw std::invalid_argument("cert_delta_diff_lower: validity requires x >= 10^6");
        const double d = delta_correction(x, pt).value / std::log(x) - delta_tilde(x, pt).value;
        c.update(d * std::sqrt(x) * std::pow(std::log(x), 2) - 1.23);
    }
    finalize_certificate(c);
    return c;
}

// (Delta/log x - Delta~) sqrt(x) log^2 x -> 2: checked as a trend.  The
// deviation |.. - 2| fluctuates locally, so each sample is compared against
// the most recent sample at or below x/4 rather than its direct neighbor.
inline bound_certificate cert_delta_diff_trend(const std::vector<double>& xs,
                                               const prime_table& pt) {
    auto c = make_certificate("delta-diff-asymptotic-trend", range_string(xs));
    std::vector<std::pair<double, double>> devs; // (x, |scaled - 2|)
    for (double x : xs) {
        const double d = delta_correction(x, pt).value / std::log(x) - delta_tilde(x, pt).value;
        devs.emplace_back(x, std::abs(d * std::sqrt(x) * std::pow(std::log(x), 2) - 2.0));
    }
    for (std::size_t i = 0; i < devs.size(); ++i) {
        double anchor = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t j = 0; j < i; ++j)
            if (devs[j].first <= devs[i].first / 4.0) anchor = devs[j].second;
        if (!std::isnan(anchor)) c.update(anchor - devs[i].second);
    }
    finalize_certificate(c);
    return c;
}

// |theta(x) - x| < sqrt(x) log^2 x / (8 pi)  (x >= 599, RH);
// margin = 1 - |theta - x| 8 pi / (sqrt x log^2 x)
inline bound_certificate cert_schoenfeld_theta(const std::vector<double>& xs,
                                               const prime_table& pt) {
    auto c = make_certificate("schoenfeld-theta", range_string(xs), {"RH assumed"});
    for (double x : xs) {
        if (x < 599)
            throw std::invalid_argument("cert_schoenfeld_theta: validity requires x >= 599");
        const double env = std::sqrt(x) * std::pow(std::log(x), 2) / (8.0 * pi_const);
        c.update(1.0 - std::abs(pt.theta(x) - x) / env);
    }
    finalize_certificate(c);
    return c;
}

// |R(x)| <= (3 log^2 x + 6 log x + 12)/(8 pi sqrt x)  (x >= 8.4, RH)
inline bound_certificate cert_schoenfeld_R(const std::vector<double>& xs, const prime_table& pt) {
    auto c = make_certificate("schoenfeld-R", range_string(xs), {"RH assumed"});
    for (double x : xs) {
        if (x < 8.4)
            throw std::invalid_argument("cert_schoenfeld_R: validity requires x >= 8.4");
        const double L = std::log(x);
        const double env = (3.0 * L * L + 6.0 * L + 12.0) / (8.0 * pi_const * std::sqrt(x));
        c.update(1.0 - std::abs(R_direct(x, pt).value) / env);
    }
    finalize_certificate(c);
    return c;
}

// gamma_r > e^{-gamma} for all p_r < limit; margin normalized by
// sqrt(p) log^2 p / e^{-gamma} (the natural asymptotic scale, ~2).
inline bound_certificate cert_gamma_positive(std::uint64_t limit) {
    auto c = make_certificate("gamma-positivity", "p_r < " + std::to_string(limit));
    gamma_stream(limit, [&](const gamma_record& rec) {
        const double p = static_cast<double>(rec.p);
        const double scale = std::sqrt(p) * std::pow(std::log(p), 2) / exp_minus_gamma();
        c.update((rec.gamma_r - exp_minus_gamma()) * scale);
    });
    finalize_certificate(c);
    return c;
}

// gamma_r >= e^{-gamma} exp(0.728/(sqrt x log^2 x)) near and above x = 10^6.
// Streams to `limit` and checks all p_r in [window_lo, limit].
inline bound_certificate cert_gamma_margin_strong(std::uint64_t limit, double window_lo) {
    auto c = make_certificate("gamma-margin-0.728",
                              "p_r in [" + std::to_string(window_lo) + ", " + std::to_string(limit) + "]");
    gamma_stream(limit, [&](const gamma_record& rec) {
        const double p = static_cast<double>(rec.p);
        if (p < window_lo) return;
        const double scale = std::sqrt(p) * std::pow(std::log(p), 2);
        const double floor_v = exp_minus_gamma() * std::exp(0.728 / scale);
        c.update((rec.gamma_r - floor_v) * scale / exp_minus_gamma());
    });
    finalize_certificate(c);
    return c;
}

// The Lemma suite of check_bounds: one certificate per named inequality.
// RH-conditional checks are emitted only when assume_rh is set.
inline std::vector<bound_certificate> check_bounds(const std::vector<double>& xs, bool assume_rh,
                                                   const prime_table& pt) {
    std::vector<double> ge1e6, ge1000, ge599;
    for (double x : xs) {
        if (x >= 1e6) ge1e6.push_back(x);
        if (x >= 1000) ge1000.push_back(x);
        if (x >= 599) ge599.push_back(x);
    }
    std::vector<bound_certificate> out;
    out.push_back(cert_theta_upper(xs, pt));
    if (!ge1000.empty()) out.push_back(cert_theta_lower(ge1000, pt));
    out.push_back(cert_delta_diff_nonneg(xs, pt));
    if (!ge1e6.empty()) {
        out.push_back(cert_delta_upper(ge1e6, pt));
        out.push_back(cert_delta_diff_lower(ge1e6, pt));
    }
    if (xs.size() >= 2) out.push_back(cert_delta_diff_trend(xs, pt));
    if (assume_rh && !ge599.empty()) {
        out.push_back(cert_schoenfeld_theta(ge599, pt));
        out.push_back(cert_schoenfeld_R(ge599, pt));
    }
    return out;
}

struct identity_audit_sample {
    std::uint64_t p = 0;
    double gamma_r = 0.0;
    double reconstructed = 0.0;
    double tolerance = 0.0;
    double deviation = 0.0;
};

// Audit of the master identity at x = p_r:
//   gamma_r = e^{-gamma} (1 + y) e^{-y} exp(Delta/log x - Delta~ + H),
//   y = (R(x) + Delta(x)) / log x,
// with H from the piecewise integral.  Tolerance combines the H tail bound,
// the correction error bounds and the streaming budget.
inline std::vector<identity_audit_sample> identity_audit(const std::vector<std::uint64_t>& sample_ps,
                                                         const prime_table& pt, double X_cut,
                                                         bool assume_rh_tail = true) {
    std::vector<identity_audit_sample> out;
    if (sample_ps.empty()) return out;
    std::uint64_t max_p = 0;
    for (auto p : sample_ps) max_p = std::max(max_p, p);

    // gamma_r at each sampled prime, one streaming pass
    std::vector<identity_audit_sample> pending;
    gamma_stream(max_p, [&](const gamma_record& rec) {
        for (auto p : sample_ps)
            if (rec.p == p) pending.push_back({p, rec.gamma_r, 0.0, 0.0, 0.0});
    });

    for (auto& s : pending) {
        const double x = static_cast<double>(s.p);
        const double L = std::log(x);
        const auto R = R_direct(x, pt);
        const auto D = delta_correction(x, pt);
        const auto Dt = delta_tilde(x, pt);
        const auto H = H_numeric(x, X_cut, pt, assume_rh_tail);
        const double y = (R.value + D.value) / L;
        s.reconstructed = exp_minus_gamma() * (1.0 + y) * std::exp(-y) *
                          std::exp(D.value / L - Dt.value + H.value);
        const double err_exp = H.error_bound + Dt.error_bound +
                               (R.error_bound + 2.0 * D.error_bound) / L;
        s.tolerance = s.reconstructed * (std::expm1(err_exp) + 1e-12) + 1e-12;
        s.deviation = std::abs(s.gamma_r - s.reconstructed);
        out.push_back(s);
    }
    return out;
}

inline bound_certificate cert_identity_audit(const std::vector<std::uint64_t>& sample_ps,
                                             const prime_table& pt, double X_cut,
                                             bool assume_rh_tail = true) {
    auto c = make_certificate("identity-audit", std::to_string(sample_ps.size()) + " sampled p_r",
                              assume_rh_tail ? std::vector<std::string>{"RH assumed (H tail)"}
                                             : std::vector<std::string>{});
    for (const auto& s : identity_audit(sample_ps, pt, X_cut, assume_rh_tail))
        c.update((s.tolerance - s.deviation) / s.tolerance);
    finalize_certificate(c);
    return c;
}

} // namespace gec

#endif
