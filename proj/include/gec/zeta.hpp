#ifndef GEC_ZETA_HPP
#define GEC_ZETA_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gec/gamma.hpp>
#include <gec/primeset.hpp>

namespace gec {

// Dirichlet eta via the Cohen-Rodriguez Villegas-Zagier acceleration of the
// alternating series.  Relative error ~ (3+sqrt(8))^{-n}, so n = 40 is far
// below double rounding already.
inline double eta_series(double s, int n = 48) {
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = (d + 1.0 / d) / 2.0;
    double b = -1.0, c = -d;
    comp_sum acc;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        acc.add(c * std::pow(static_cast<double>(k + 1), -s));
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1));
    }
    return acc.value() / d;
}

// zeta(s) for real s > 1, stable down to s = 1 + 1e-3 and beyond.
// The 1 - 2^{1-s} divisor is evaluated with expm1 to avoid cancellation.
inline double zeta_real(double s) {
    if (!(s > 1.0))
        throw std::invalid_argument("zeta_real: requires s > 1");
    const double denom = -std::expm1((1.0 - s) * std::log(2.0));
    return eta_series(s) / denom;
}

// The bracketed Laurent expression at s = 1 + eps:
//   zeta(s) prod_{p in P} (1 - p^{-s}) - delta_P / (s - 1).
inline double laurent_bracket(const prime_set& P, double eps) {
    if (!(eps > 0.0 && eps <= 0.2))
        throw std::invalid_argument("laurent_bracket: eps must lie in (0, 0.2]");
    const double s = 1.0 + eps;
    double prod = 1.0;
    comp_sum L;
    for (std::uint64_t p : P.primes()) {
        const double pd = static_cast<double>(p);
        prod *= 1.0 - std::pow(pd, -s);
        L.add(std::log1p(-1.0 / pd));
    }
    const double delta_P = std::exp(L.value());
    return zeta_real(s) * prod - delta_P / eps;
}

// gamma(P) as the constant Laurent term: evaluate the bracket on the grid of
// epsilons and extrapolate to 0 by Neville's polynomial scheme.
inline double laurent_gamma(const prime_set& P, const std::vector<double>& epsilon_grid) {
    if (epsilon_grid.empty())
        throw std::invalid_argument("laurent_gamma: empty epsilon grid");
    for (std::size_t i = 1; i < epsilon_grid.size(); ++i)
        if (!(epsilon_grid[i] < epsilon_grid[i - 1]))
            throw std::invalid_argument("laurent_gamma: grid must be strictly decreasing");
    const std::size_t n = epsilon_grid.size();
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = laurent_bracket(P, epsilon_grid[i]);
    // Neville tableau evaluated at eps = 0.
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = 0; i + level < n; ++i) {
            const double xi = epsilon_grid[i], xj = epsilon_grid[i + level];
            t[i] = ((0.0 - xj) * t[i] - (0.0 - xi) * t[i + 1]) / (xi - xj);
        }
    return t[0];
}

// Default grid eps, eps/2, eps/4 used when the caller has no preference.
inline double laurent_gamma(const prime_set& P, double eps = 0.08) {
    return laurent_gamma(P, std::vector<double>{eps, eps / 2.0, eps / 4.0});
}

} // namespace gec

#endif
