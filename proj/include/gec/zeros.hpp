#ifndef GEC_ZEROS_HPP
#define GEC_ZEROS_HPP

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <gec/compensated.hpp>

namespace gec {

// Ascending positive imaginary parts of nontrivial zeta zeros, with a
// per-entry accuracy declaration that feeds every downstream error budget.
// Zeros are used with beta = 1/2 throughout (the public tables are
// RH-verified in their range).
class zero_table {
  public:
    zero_table() = default;

    zero_table(std::vector<double> taus, double per_entry_precision = 3e-9)
        : taus_(std::move(taus)), precision_(per_entry_precision) {
        validate();
        compute_norm_sums();
    }

    // Plain-text format: one positive decimal per line, ascending,
    // '#'-prefixed comment lines ignored.
    static zero_table load(const std::string& path, std::size_t limit_count = 0,
                           double per_entry_precision = 3e-9) {
        std::ifstream f(path);
        if (!f) throw std::runtime_error("zero_table: cannot open " + path);
        std::vector<double> taus;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(f, line)) {
            ++lineno;
            std::size_t i = line.find_first_not_of(" \t\r");
            if (i == std::string::npos || line[i] == '#') continue;
            char* end = nullptr;
            const double v = std::strtod(line.c_str() + i, &end);
            if (end == line.c_str() + i || !std::isfinite(v))
                throw std::runtime_error("zero_table: parse failure at line " +
                                         std::to_string(lineno) + " of " + path);
            if (v <= 0)
                throw std::runtime_error("zero_table: non-positive entry at line " +
                                         std::to_string(lineno) + " of " + path);
            if (!taus.empty() && v <= taus.back())
                throw std::runtime_error("zero_table: non-ascending entry at line " +
                                         std::to_string(lineno) + " of " + path);
            taus.push_back(v);
            if (limit_count && taus.size() == limit_count) break;
        }
        if (taus.empty())
            throw std::runtime_error("zero_table: no zeros found in " + path);
        return zero_table(std::move(taus), per_entry_precision);
    }

    zero_table truncated(std::size_t n) const {
        if (n == 0 || n > taus_.size())
            throw std::invalid_argument("zero_table: bad truncation count");
        return zero_table(std::vector<double>(taus_.begin(), taus_.begin() + n), precision_);
    }

    const std::vector<double>& taus() const { return taus_; }
    std::size_t count() const { return taus_.size(); }
    double t_max() const { return taus_.back(); }
    double per_entry_precision() const { return precision_; }

    // sum over the table (both conjugates) of 1/|rho|, |rho|=sqrt(tau^2+1/4)
    double sum_inv_rho() const { return sum_inv_rho_; }

  private:
    void validate() const {
        if (taus_.empty()) throw std::invalid_argument("zero_table: empty");
        double prev = 0.0;
        for (double t : taus_) {
            if (!(t > prev)) throw std::invalid_argument("zero_table: not strictly ascending");
            prev = t;
        }
    }

    void compute_norm_sums() {
        comp_sum s;
        for (double t : taus_) s.add(2.0 / std::sqrt(t * t + 0.25));
        sum_inv_rho_ = s.value();
    }

    std::vector<double> taus_;
    double precision_ = 3e-9;
    double sum_inv_rho_ = 0.0;
};

struct ell_value {
    double value = 0.0;
    double error_bound = 0.0;
};

namespace detail {

// Real form of sum over a zero pair {rho, conj rho} of e^{iu tau}/(i tau - 1/2):
// per positive tau the contribution is 2 (tau sin(u tau) - cos(u tau)/2) / (tau^2 + 1/4).
inline double ell_term(double u, double tau) {
    const double th = u * tau;
    return (2.0 * tau * std::sin(th) - std::cos(th)) / (tau * tau + 0.25);
}

} // namespace detail

// Truncated oscillation sum l(u) over the first n zeros of the table
// (n = 0 means all).  The error bound follows the table-precision
// accounting: per-zero phase error precision * u, summed as
// precision * u * sum 2/|rho|.
inline ell_value ell(double u, const zero_table& table, std::size_t n = 0) {
    if (!(u >= 0)) throw std::invalid_argument("ell: u must be >= 0");
    if (n == 0 || n > table.count()) n = table.count();
    comp_sum s;
    const auto& taus = table.taus();
    for (std::size_t i = 0; i < n; ++i) s.add(detail::ell_term(u, taus[i]));
    double inv_rho = table.sum_inv_rho();
    if (n != table.count()) {
        comp_sum r;
        for (std::size_t i = 0; i < n; ++i) r.add(2.0 / std::sqrt(taus[i] * taus[i] + 0.25));
        inv_rho = r.value();
    }
    return {s.value(), table.per_entry_precision() * u * inv_rho};
}

struct abort_policy {
    std::size_t prefix_count = 1000;
    double threshold = -std::numeric_limits<double>::infinity(); // -inf: abort disabled

    bool enabled() const { return threshold > -std::numeric_limits<double>::infinity(); }
};

struct ell_scan_report {
    double u_start = 0, u_end = 0, step = 0;
    double max_value = -std::numeric_limits<double>::infinity();
    double argmax_u = 0;
    double min_value = std::numeric_limits<double>::infinity();
    double argmin_u = 0;
    std::uint64_t points_evaluated = 0;
    std::uint64_t points_aborted = 0;
    double abort_threshold = 0;
    std::uint64_t abort_prefix_count = 0;
    double error_bound_at_max = 0;
};

// Grid scan of l(u).  For each grid point the sum over the first
// prefix_count zeros is formed first; if it falls below the threshold the
// point is skipped and never reported as an extremum candidate.  If no
// point survives, the best-prefix point is evaluated in full as fallback.
inline ell_scan_report scan_ell(double u_start, double u_end, double step,
                                const zero_table& table, abort_policy abort = {}) {
    if (!(u_start < u_end) || !(step > 0))
        throw std::invalid_argument("scan_ell: invalid grid");
    if (abort.prefix_count > table.count())
        throw std::invalid_argument("scan_ell: abort prefix_count exceeds table size");

    ell_scan_report rep;
    rep.u_start = u_start;
    rep.u_end = u_end;
    rep.step = step;
    rep.abort_threshold = abort.threshold;
    rep.abort_prefix_count = abort.prefix_count;

    const auto& taus = table.taus();
    const std::size_t n = table.count();
    const std::size_t k = abort.enabled() ? abort.prefix_count : n;
    const auto npoints = static_cast<std::uint64_t>(std::floor((u_end - u_start) / step)) + 1;

    double best_prefix = -std::numeric_limits<double>::infinity();
    double best_prefix_u = u_start;

    auto consider = [&](double u, double full) {
        ++rep.points_evaluated;
        if (full > rep.max_value) {
            rep.max_value = full;
            rep.argmax_u = u;
        }
        if (full < rep.min_value) {
            rep.min_value = full;
            rep.argmin_u = u;
        }
    };

    for (std::uint64_t i = 0; i < npoints; ++i) {
        const double u = u_start + static_cast<double>(i) * step;
        comp_sum s;
        for (std::size_t j = 0; j < k; ++j) s.add(detail::ell_term(u, taus[j]));
        const double prefix = s.value();
        if (abort.enabled() && prefix < abort.threshold) {
            ++rep.points_aborted;
            if (prefix > best_prefix) {
                best_prefix = prefix;
                best_prefix_u = u;
            }
            continue;
        }
        for (std::size_t j = k; j < n; ++j) s.add(detail::ell_term(u, taus[j]));
        consider(u, s.value());
    }

    if (rep.points_evaluated == 0) {
        // fallback so the report always carries a fully evaluated extremum
        consider(best_prefix_u, ell(best_prefix_u, table).value);
        --rep.points_aborted;
    }
    rep.error_bound_at_max = ell(rep.argmax_u, table).error_bound;
    return rep;
}

// Tail of the zero-counting integral: int_T^inf (log(t/2pi)/2pi) / t^2 dt,
// one half-plane.  Used for truncation accounting of zero sums.
inline double zero_density_tail(double T) {
    if (!(T >= 100)) throw std::invalid_argument("zero_density_tail: T must be >= 100");
    const double two_pi = 2.0 * 3.14159265358979323846;
    return (std::log(T / two_pi) + 1.0) / (two_pi * T);
}

} // namespace gec

#endif
