#ifndef GEC_CORRECTIONS_HPP
#define GEC_CORRECTIONS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <string>
#include <vector>

#include <gec/compensated.hpp>
#include <gec/gamma.hpp>
#include <gec/sieve.hpp>
#include <gec/zeros.hpp>

namespace gec {

inline constexpr double pi_const = 3.14159265358979323846;

// sum over all nontrivial zeros of 1/|rho|^2 = 2 + gamma - log 4pi
inline double sum_inv_rho_sq_exact() {
    static const double v = 2.0 + euler_gamma - std::log(4.0 * pi_const);
    return v;
}

enum class correction_method { direct, explicit_formula, numeric_integral, zero_sum };

struct correction_value {
    double x = 0.0;
    double value = 0.0;
    correction_method method = correction_method::direct;
    double error_bound = 0.0; // rigorous: truncations + table precision + accumulation
    std::vector<std::string> assumptions;
};

namespace detail {

// largest k with p^k <= x, together with p^k (exact integer arithmetic;
// p^k <= x <= 2^53 so the double comparison is exact)
inline std::uint64_t floor_power(std::uint64_t p, double x, int& k) {
    std::uint64_t pw = p;
    k = 1;
    while (static_cast<double>(pw) * static_cast<double>(p) <= x) {
        pw *= p;
        ++k;
    }
    return pw;
}

// Accumulation budget for a compensated sum of n terms whose absolute sum
// is ~scale: term-formation rounding dominates, the second-order n^2 eps^2
// compensation residue is kept for very long streams.
inline double accumulation_budget(std::uint64_t n, double scale) {
    return 1.5e-15 * scale + static_cast<double>(n) * 4.8e-32 * scale + 1e-16;
}

} // namespace detail

// Delta(x) = sum_{p<=x} log p/(p-1) - sum_{n<=x} Lambda(n)/n, evaluated via
// the cancellation-free one-term-per-prime form
//   sum_{p<=x} log p/(p-1) * p^{-floor(log x/log p)}.
inline correction_value delta_correction(double x, const prime_table& pt) {
    if (!(x > 1)) throw std::invalid_argument("delta_correction: x must be > 1");
    correction_value out;
    out.x = x;
    out.method = correction_method::direct;
    comp_sum s;
    std::uint64_t terms = 0;
    for (std::uint64_t p : pt.primes()) {
        if (static_cast<double>(p) > x) break;
        int k;
        const std::uint64_t pw = detail::floor_power(p, x, k);
        const double pd = static_cast<double>(p);
        s.add(std::log(pd) / ((pd - 1.0) * static_cast<double>(pw)));
        ++terms;
    }
    out.value = s.value();
    out.error_bound = detail::accumulation_budget(terms, 1.0);
    return out;
}

// Delta~(x) = sum_{p<=x, p^a>x} 1/(a p^a).  Geometric per-prime tails are
// truncated once a term drops below 1e-22; the bound on what was dropped is
// folded into error_bound.
inline correction_value delta_tilde(double x, const prime_table& pt) {
    if (!(x > 1)) throw std::invalid_argument("delta_tilde: x must be > 1");
    correction_value out;
    out.x = x;
    out.method = correction_method::direct;
    comp_sum s;
    double dropped = 0.0;
    std::uint64_t terms = 0;
    for (std::uint64_t p : pt.primes()) {
        const double pd = static_cast<double>(p);
        if (pd > x) break;
        int k;
        (void)detail::floor_power(p, x, k);
        // first exponent with p^a > x
        int a = k + 1;
        double pa = std::pow(pd, a);
        while (true) {
            const double term = 1.0 / (a * pa);
            if (term < 1e-22 || !std::isfinite(term)) {
                // remaining geometric tail from exponent a onward
                dropped += term / (1.0 - 1.0 / pd);
                break;
            }
            s.add(term);
            ++terms;
            ++a;
            pa *= pd;
        }
    }
    out.value = s.value();
    out.error_bound = dropped + detail::accumulation_budget(terms, 1.0);
    return out;
}

// R(x) = sum_{n<=x} Lambda(n)/n - log x + gamma, prime powers enumerated.
inline correction_value R_direct(double x, const prime_table& pt) {
    if (!(x >= 1)) throw std::invalid_argument("R_direct: x must be >= 1");
    correction_value out;
    out.x = x;
    out.method = correction_method::direct;
    comp_sum s;
    s.add(euler_gamma);
    s.add(-std::log(x));
    std::uint64_t terms = 0;
    for (std::uint64_t p : pt.primes()) {
        const double pd = static_cast<double>(p);
        if (pd > x) break;
        const double lp = std::log(pd);
        double pa = pd;
        while (pa <= x) {
            s.add(lp / pa);
            ++terms;
            pa *= pd;
        }
    }
    out.value = s.value();
    out.error_bound = detail::accumulation_budget(terms, std::log(std::max(x, 2.0)));
    return out;
}

// Explicit-formula evaluation of R_0(x): the zero sum (conjugates paired
// analytically, beta = 1/2) plus the trivial-zero series truncated at
// n_trivial.  At prime powers this converges to the jump midpoint.
inline correction_value R_explicit(double x, const zero_table& zeros, int n_trivial = 50) {
    if (!(x > 1)) throw std::invalid_argument("R_explicit: x must be > 1");
    correction_value out;
    out.x = x;
    out.method = correction_method::explicit_formula;
    out.assumptions = {"RH assumed (beta = 1/2 for tabulated zeros)"};

    const double u = std::log(x);
    const double rsqx = 1.0 / std::sqrt(x);

    // -sum_rho x^{rho-1}/(rho-1): per positive tau the pair contributes
    // -2 x^{-1/2} (tau sin(u tau) - cos(u tau)/2) / (tau^2 + 1/4).
    comp_sum s;
    for (double tau : zeros.taus()) {
        const double th = u * tau;
        s.add(-(2.0 * tau * std::sin(th) - std::cos(th)) / (tau * tau + 0.25));
    }
    double value = rsqx * s.value();

    // trivial zeros: sum_{n>=1} x^{-2n-1}/(2n+1)
    comp_sum tz;
    double xp = 1.0 / x;
    const double x2 = 1.0 / (x * x);
    for (int n = 1; n <= n_trivial; ++n) {
        xp *= x2;
        tz.add(xp / (2.0 * n + 1.0));
    }
    value += tz.value();
    out.value = value;

    // Error budget:
    //  - zero truncation at T: explicit-formula tail ~ log^2(xT)/T
    //  - table precision: per-zero phase error eps*u propagated as in ell()
    //  - trivial tail: geometric beyond n_trivial
    const double T = zeros.t_max();
    const double trunc = std::pow(std::log(x * T), 2) / T;
    const double table_err = zeros.per_entry_precision() * u * zeros.sum_inv_rho() * rsqx;
    const double triv_tail = (xp * x2) / ((2.0 * n_trivial + 3.0) * (1.0 - x2));
    out.error_bound = trunc + table_err + triv_tail +
                      detail::accumulation_budget(zeros.count(), rsqx);
    return out;
}

// Trivial-zero series alone (used as an oracle target in tests).
inline double trivial_zero_series(double x, int n_trivial) {
    comp_sum tz;
    double xp = 1.0 / x;
    const double x2 = 1.0 / (x * x);
    for (int n = 1; n <= n_trivial; ++n) {
        xp *= x2;
        tz.add(xp / (2.0 * n + 1.0));
    }
    return tz.value();
}

namespace detail {

// closed antiderivative of (C - log t)/(t log^2 t):  -C/log t - log log t
inline double piece_antiderivative(double C, double t) {
    const double L = std::log(t);
    return -C / L - std::log(L);
}

} // namespace detail

// H(x) = int_x^inf R(t)/(t log^2 t) dt.  Between consecutive prime powers R
// is exactly C - log t, so each piece integrates in closed form; only the
// tail beyond X_cut needs an envelope.  With assume_rh_tail the Schoenfeld
// envelope is used (tagged), otherwise an unconditional envelope valid for
// X_cut >= 10^6.
inline correction_value H_numeric(double x, double X_cut, const prime_table& pt,
                                  bool assume_rh_tail = true) {
    if (!(x >= 8.4)) throw std::invalid_argument("H_numeric: x must be >= 8.4");
    if (!(X_cut >= x)) throw std::invalid_argument("H_numeric: X_cut must be >= x");
    if (static_cast<double>(pt.limit()) < X_cut)
        throw std::out_of_range("H_numeric: sieve does not cover X_cut");

    correction_value out;
    out.x = x;
    out.method = correction_method::numeric_integral;

    // prime powers in (x, X_cut], merged in ascending order
    std::vector<std::pair<double, double>> jumps; // (position p^a, jump log p / p^a)
    for (std::uint64_t p : pt.primes()) {
        const double pd = static_cast<double>(p);
        if (pd > X_cut) break;
        const double lp = std::log(pd);
        double pa = pd;
        while (pa <= X_cut) {
            if (pa > x) jumps.emplace_back(pa, lp / pa);
            pa *= pd;
        }
    }
    std::sort(jumps.begin(), jumps.end());

    // C at the left end: gamma + sum_{p^a <= x} Lambda/n = R(x) + log x
    comp_sum C0;
    C0.add(euler_gamma);
    for (std::uint64_t p : pt.primes()) {
        const double pd = static_cast<double>(p);
        if (pd > x) break;
        const double lp = std::log(pd);
        double pa = pd;
        while (pa <= x) {
            C0.add(lp / pa);
            pa *= pd;
        }
    }

    comp_sum integral;
    double t_prev = x;
    double C = C0.value();
    for (const auto& [q, jump] : jumps) {
        if (q > t_prev)
            integral.add(detail::piece_antiderivative(C, q) -
                         detail::piece_antiderivative(C, t_prev));
        C += jump;
        t_prev = q;
    }
    if (X_cut > t_prev)
        integral.add(detail::piece_antiderivative(C, X_cut) -
                     detail::piece_antiderivative(C, t_prev));
    out.value = integral.value();

    // tail bound for (X_cut, inf)
    const double L = std::log(X_cut);
    double tail;
    if (assume_rh_tail) {
        // |R(t)| <= (3 log^2 t + 6 log t + 12)/(8 pi sqrt t)
        tail = (3.0 + 6.0 / L + 12.0 / (L * L)) / (4.0 * pi_const * std::sqrt(X_cut));
        out.assumptions = {"RH assumed"};
    } else {
        if (X_cut < 1e6)
            throw std::invalid_argument("H_numeric: unconditional tail requires X_cut >= 10^6");
        // |R(t)| <= 1/(2 log t) + 3.05/sqrt t + (t+1)(1+log t)/t^2
        tail = 1.0 / (4.0 * L * L) + 6.10 / (std::sqrt(X_cut) * L * L) +
               2.0 * (1.0 + L) / (X_cut * L * L);
    }
    out.error_bound = tail + detail::accumulation_budget(jumps.size(), 1.0 / std::log(x));
    return out;
}

// First zero series of the H representation:
//   sum_rho x^{i tau}/(rho-1)^2, conjugate pairs combined to
//   2 [ (1/4 - tau^2) cos(u tau) - tau sin(u tau) ] / (tau^2 + 1/4)^2.
inline double h_first_series(double x, const zero_table& zeros) {
    const double u = std::log(x);
    comp_sum s;
    for (double tau : zeros.taus()) {
        const double th = u * tau;
        const double d = tau * tau + 0.25;
        s.add(2.0 * ((0.25 - tau * tau) * std::cos(th) - tau * std::sin(th)) / (d * d));
    }
    return s.value();
}

// Zero-sum form of H(x): x^{-1/2}/log^2 x times the first series; the
// bounded theta terms of the representation go into error_bound, not the
// value.
inline correction_value H_zero_sum(double x, const zero_table& zeros) {
    if (!(x > 1)) throw std::invalid_argument("H_zero_sum: x must be > 1");
    correction_value out;
    out.x = x;
    out.method = correction_method::zero_sum;
    out.assumptions = {"RH assumed (beta = 1/2 for tabulated zeros)"};

    const double u = std::log(x);
    const double pref = 1.0 / (std::sqrt(x) * u * u);
    const double series = h_first_series(x, zeros);
    out.value = pref * series;

    const double T = zeros.t_max();
    // |dropped pair| <= 2/(tau^2+1/4), so truncation <= 2 * density tail
    const double trunc = 2.0 * zero_density_tail(T);
    // per-zero derivative bound u/(tau^2+1/4) * 2 + O(1/tau^3)
    comp_sum deriv;
    for (double tau : zeros.taus())
        deriv.add(2.0 * u / (tau * tau + 0.25) + 6.0 / (tau * tau * tau));
    const double table_err = zeros.per_entry_precision() * deriv.value();
    const double theta_terms = (4.0 / u) * sum_inv_rho_sq_exact() + 0.12 / std::pow(x, 2.5);
    out.error_bound = pref * (trunc + table_err + theta_terms) +
                      detail::accumulation_budget(zeros.count(), pref);
    return out;
}

struct partial_sum_with_tail {
    double partial_sum = 0.0;
    double tail_estimate = 0.0;
};

// Partial sum over the table (both conjugates) of 1/|rho|^2 with beta=1/2,
// plus the zero-density tail estimate for what lies beyond T_max.
inline partial_sum_with_tail sum_inv_rho_sq(const zero_table& zeros) {
    comp_sum s;
    for (double tau : zeros.taus()) s.add(2.0 / (tau * tau + 0.25));
    // both half-plane conjugates beyond T_max; the counting-integral form is
    // inlined so small tables (t_max below zero_density_tail's floor) work
    const double T = zeros.t_max();
    const double two_pi = 2.0 * pi_const;
    const double tail = 2.0 * (std::log(std::max(T, two_pi) / two_pi) + 1.0) / (two_pi * T);
    return {s.value(), tail};
}

// g(p_r) from gamma_r = e^{-gamma} (1 + g(p_r)/(sqrt(p_r) log^2 p_r)).
inline double g_of(const gamma_record& rec) {
    const double p = static_cast<double>(rec.p);
    const double L = std::log(p);
    return (rec.gamma_r * std::exp(euler_gamma) - 1.0) * std::sqrt(p) * L * L;
}

} // namespace gec

#endif
