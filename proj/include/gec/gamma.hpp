#ifndef GEC_GAMMA_HPP
#define GEC_GAMMA_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gec/compensated.hpp>
#include <gec/primeset.hpp>
#include <gec/sieve.hpp>

namespace gec {

// Euler's constant, 40 decimal digits (rounds to the nearest double).
inline constexpr double euler_gamma = 0.5772156649015328606065120900824024310422;

inline double exp_minus_gamma() {
    static const double v = std::exp(-euler_gamma);
    return v;
}

// gamma(P) = prod_{p in P} (1 - 1/p) * { gamma + sum_{p in P} log p / (p-1) }.
// Both accumulators are compensated; the product is carried as a log sum so
// the result matches the streaming recurrence bit-for-bit in structure.
inline double gamma_finite(const prime_set& P) {
    comp_sum S; // sum log p / (p-1)
    comp_sum L; // sum log(1 - 1/p)
    for (std::uint64_t p : P.primes()) {
        const double pd = static_cast<double>(p);
        S.add(std::log(pd) / (pd - 1.0));
        L.add(std::log1p(-1.0 / pd));
    }
    return std::exp(L.value()) * (euler_gamma + S.value());
}

struct gamma_record {
    std::uint64_t r = 0;
    std::uint64_t p = 0;     // p_r (0 when r = 0)
    double gamma_r = 0.0;
    double A = 0.0;          // A(p_r) = gamma + sum_{p <= p_r} log p/(p-1)
};

// Streaming state for the sequence gamma_r over the first r primes.
// gamma_{r+1} = gamma_r * (1 - 1/p + log p / (p * A(p_r))); A is carried
// as gamma + S with S compensated, never re-derived from gamma_r.
class gamma_stream_state {
  public:
    gamma_stream_state() { gamma_r_ = euler_gamma; }

    gamma_record push(std::uint64_t prime) {
        const double p = static_cast<double>(prime);
        const double A_prev = euler_gamma + S_.value();
        gamma_r_ *= 1.0 - 1.0 / p + std::log(p) / (p * A_prev);
        S_.add(std::log(p) / (p - 1.0));
        L_.add(std::log1p(-1.0 / p));
        ++r_;
        p_r_ = prime;
        return current();
    }

    gamma_record current() const { return {r_, p_r_, gamma_r_, euler_gamma + S_.value()}; }

    std::uint64_t r() const { return r_; }
    std::uint64_t p_r() const { return p_r_; }
    double gamma_r() const { return gamma_r_; }
    double A() const { return euler_gamma + S_.value(); }

    // Internal consistency: the closed form evaluated from the two sums.
    double gamma_from_sums() const { return std::exp(L_.value()) * (euler_gamma + S_.value()); }

    const comp_sum& S() const { return S_; }
    const comp_sum& L() const { return L_; }

    void restore(std::uint64_t r, std::uint64_t p, double gamma_r, comp_sum S, comp_sum L) {
        r_ = r; p_r_ = p; gamma_r_ = gamma_r; S_ = S; L_ = L;
    }

  private:
    std::uint64_t r_ = 0;
    std::uint64_t p_r_ = 0;
    double gamma_r_ = 0.0;
    comp_sum S_;
    comp_sum L_;
};

// ---------------------------------------------------------------------------
// Checkpointing.  Accumulator words are stored as hex bit patterns: decimal
// round-tripping would break the bit-identical-resume invariant.

namespace detail {

inline std::string double_to_hex(double d) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(d));
    std::memcpy(&bits, &d, sizeof(bits));
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(bits));
    return buf;
}

inline double hex_to_double(const std::string& s) {
    if (s.size() != 16)
        throw std::runtime_error("checkpoint: malformed hex word '" + s + "'");
    std::uint64_t bits = std::stoull(s, nullptr, 16);
    double d;
    std::memcpy(&d, &bits, sizeof(d));
    return d;
}

} // namespace detail

inline constexpr int checkpoint_format_version = 1;

struct sieve_checkpoint {
    int format_version = checkpoint_format_version;
    std::uint64_t limit = 0;
    std::uint64_t segment_size = 0;
    std::uint64_t last_completed_x = 0; // resume sieving at last_completed_x + 1
    std::uint64_t r = 0;
    std::uint64_t p_r = 0;
    double gamma_r = 0.0;
    comp_sum S;
    comp_sum L;

    void save(const std::string& path) const {
        std::ofstream f(path);
        if (!f) throw std::runtime_error("checkpoint: cannot write " + path);
        f << "gec-checkpoint " << format_version << "\n";
        f << "limit " << limit << "\n";
        f << "segment_size " << segment_size << "\n";
        f << "last_completed_x " << last_completed_x << "\n";
        f << "r " << r << "\n";
        f << "p_r " << p_r << "\n";
        f << "gamma_r " << detail::double_to_hex(gamma_r) << "\n";
        f << "S " << detail::double_to_hex(S.sum) << " " << detail::double_to_hex(S.comp) << "\n";
        f << "L " << detail::double_to_hex(L.sum) << " " << detail::double_to_hex(L.comp) << "\n";
    }

    static sieve_checkpoint load(const std::string& path) {
        std::ifstream f(path);
        if (!f) throw std::runtime_error("checkpoint: cannot read " + path);
        sieve_checkpoint cp;
        std::string tag;
        f >> tag >> cp.format_version;
        if (tag != "gec-checkpoint")
            throw std::runtime_error("checkpoint: bad header in " + path);
        if (cp.format_version != checkpoint_format_version)
            throw std::runtime_error("checkpoint: version mismatch (file has " +
                                     std::to_string(cp.format_version) + ", expected " +
                                     std::to_string(checkpoint_format_version) + ")");
        std::string w1, w2;
        f >> tag >> cp.limit;
        f >> tag >> cp.segment_size;
        f >> tag >> cp.last_completed_x;
        f >> tag >> cp.r;
        f >> tag >> cp.p_r;
        f >> tag >> w1; cp.gamma_r = detail::hex_to_double(w1);
        f >> tag >> w1 >> w2; cp.S = {detail::hex_to_double(w1), detail::hex_to_double(w2)};
        f >> tag >> w1 >> w2; cp.L = {detail::hex_to_double(w1), detail::hex_to_double(w2)};
        if (!f) throw std::runtime_error("checkpoint: truncated file " + path);
        return cp;
    }

    static sieve_checkpoint capture(const gamma_stream_state& st, const sieve_config& cfg,
                                    std::uint64_t last_completed_x) {
        sieve_checkpoint cp;
        cp.limit = cfg.limit;
        cp.segment_size = cfg.segment_size;
        cp.last_completed_x = last_completed_x;
        cp.r = st.r();
        cp.p_r = st.p_r();
        cp.gamma_r = st.gamma_r();
        cp.S = st.S();
        cp.L = st.L();
        return cp;
    }

    void apply(gamma_stream_state& st) const { st.restore(r, p_r, gamma_r, S, L); }
};

// Streams (r, p_r, gamma_r, A(p_r)) for all r with p_r <= limit, optionally
// resuming from a checkpoint.  The callback sees records in order of r.
template <class F>
gamma_stream_state gamma_stream(const sieve_config& cfg, F&& f,
                                const std::optional<sieve_checkpoint>& resume = std::nullopt) {
    cfg.validate();
    gamma_stream_state st;
    std::uint64_t low = 2;
    if (resume) {
        if (resume->format_version != checkpoint_format_version)
            throw std::runtime_error("gamma_stream: checkpoint version mismatch");
        resume->apply(st);
        low = resume->last_completed_x + 1;
    }
    for_each_prime_in(low, cfg.limit, [&](std::uint64_t p) { f(st.push(p)); },
                      cfg.segment_size);
    return st;
}

template <class F>
gamma_stream_state gamma_stream(std::uint64_t limit, F&& f) {
    sieve_config cfg;
    cfg.limit = limit;
    return gamma_stream(cfg, std::forward<F>(f));
}

// ---------------------------------------------------------------------------
// Monotonicity: gamma_{r+1} <= gamma_r  iff  A(p_r) >= log p_{r+1}.

struct monotonicity_report {
    std::uint64_t records = 0;       // number of margins examined
    double min_margin = std::numeric_limits<double>::infinity();
    std::uint64_t argmin_r = 0;      // r attaining the minimum of A(p_r) - log p_{r+1}
    std::uint64_t argmin_p = 0;      // p_{r+1} at the minimum
    std::vector<std::uint64_t> violations; // r with A(p_r) < log p_{r+1}
};

inline monotonicity_report monotonicity_scan(std::uint64_t limit) {
    monotonicity_report rep;
    double prev_A = euler_gamma;
    std::uint64_t prev_r = 0;
    gamma_stream(limit, [&](const gamma_record& rec) {
        // Margin for step r -> r+1 uses A(p_r), i.e. A before this prime
        // was absorbed.  r = 0 is excluded: gamma_1 > gamma_0 by design.
        if (rec.r >= 2) {
            const double margin = prev_A - std::log(static_cast<double>(rec.p));
            ++rep.records;
            if (margin < rep.min_margin) {
                rep.min_margin = margin;
                rep.argmin_r = prev_r;
                rep.argmin_p = rec.p;
            }
            if (margin < 0) rep.violations.push_back(prev_r);
        }
        prev_A = rec.A;
        prev_r = rec.r;
    });
    return rep;
}

// ---------------------------------------------------------------------------
// Reduction of an arbitrary finite prime set to an initial segment with
// strictly decreasing gamma values, certifying gamma(P) >= gamma_r.

enum class reduction_branch { start, removed_largest, replaced_largest };

struct reduction_step {
    prime_set set;
    double gamma = 0.0;
    reduction_branch branch = reduction_branch::start;
};

struct reduction_chain {
    std::vector<reduction_step> steps;
    std::uint64_t final_r = 0;
    bool tie_warning = false; // floating-point tie resolved to the replacement branch

    double initial_gamma() const { return steps.front().gamma; }
    double final_gamma() const { return steps.back().gamma; }
};

// f(v) = 1 - 1/v + log v / (v A), the factor gained by adjoining prime v
// to a set with A = gamma + sum log p/(p-1).
inline double adjoin_factor(double v, double A) {
    return 1.0 - 1.0 / v + std::log(v) / (v * A);
}

inline reduction_chain reduce_to_initial_segment(const prime_set& P) {
    reduction_chain chain;
    chain.steps.push_back({P, gamma_finite(P), reduction_branch::start});
    while (!chain.steps.back().set.is_initial_segment()) {
        const prime_set& Q = chain.steps.back().set;
        const double gamma_Q = chain.steps.back().gamma;
        prime_set Qp = Q.without_largest();
        const double gamma_Qp = gamma_finite(Qp);
        if (gamma_Qp < gamma_Q) {
            chain.steps.push_back({std::move(Qp), gamma_Qp, reduction_branch::removed_largest});
        } else {
            if (gamma_Qp == gamma_Q) chain.tie_warning = true;
            const std::uint64_t u = Q.smallest_absent_prime();
            prime_set next = Qp.with(u);
            const double g = gamma_finite(next);
            chain.steps.push_back({std::move(next), g, reduction_branch::replaced_largest});
        }
    }
    chain.final_r = chain.steps.back().set.size();
    return chain;
}

// ---------------------------------------------------------------------------
// Density construction: P_y = P union { primes in (y, e^c y] } with
// c = (target - gamma(P)) / prod(1 - 1/p) drives gamma(P_y) -> target.

struct density_witness_result {
    prime_set set;
    double gamma = 0.0;
    double c = 0.0;
    bool boundary_warning = false; // a prime landed within one ulp of e^c * y
};

inline density_witness_result density_witness(const prime_set& P, double target, double y,
                                              std::uint64_t sieve_limit_cap = (std::uint64_t{1} << 33)) {
    const double gP = gamma_finite(P);
    if (target < gP)
        throw std::invalid_argument("density_witness: target must be >= gamma(P)");
    comp_sum L;
    for (std::uint64_t p : P.primes()) L.add(std::log1p(-1.0 / static_cast<double>(p)));
    const double c = (target - gP) / std::exp(L.value());

    density_witness_result res;
    res.c = c;
    if (c == 0.0) {
        res.set = P;
        res.gamma = gP;
        return res;
    }
    const double upper = std::exp(c) * y;
    if (!(upper >= y) || upper > static_cast<double>(sieve_limit_cap))
        throw std::out_of_range("density_witness: (y, e^c y] exceeds sieve limit");

    // Half-open interval (y, e^c y]: exact integer comparison against
    // floor(e^c y), with a one-ulp guard band flagged on the result.
    const std::uint64_t hi = static_cast<std::uint64_t>(std::floor(upper));
    const double ulp = std::nextafter(upper, std::numeric_limits<double>::infinity()) - upper;
    std::vector<std::uint64_t> elems = P.primes();
    const std::uint64_t lo = static_cast<std::uint64_t>(std::floor(y)) + 1;
    for_each_prime_in(lo, hi, [&](std::uint64_t p) {
        if (static_cast<double>(p) > y) {
            elems.push_back(p);
            if (std::abs(static_cast<double>(p) - upper) <= ulp) res.boundary_warning = true;
        }
    });
    res.set = prime_set::of(std::move(elems));
    res.gamma = gamma_finite(res.set);
    return res;
}

// ---------------------------------------------------------------------------
// Certificates.

struct bound_certificate {
    std::string name;
    std::string checked_range;
    bool holds = false;
    double min_margin = 0.0;
    std::vector<std::string> assumptions;

    void update(double margin) {
        if (margin < min_margin) min_margin = margin;
    }
};

inline bound_certificate make_certificate(std::string name, std::string range,
                                          std::vector<std::string> assumptions = {}) {
    bound_certificate c;
    c.name = std::move(name);
    c.checked_range = std::move(range);
    c.min_margin = std::numeric_limits<double>::infinity();
    c.assumptions = std::move(assumptions);
    return c;
}

inline void finalize_certificate(bound_certificate& c) { c.holds = c.min_margin > 0.0; }

// Closed-form unconditional bound on gamma_r for p_r = x >= 285:
//   (e^{-gamma}/log x)(1 - 1/(2 log^2 x))(log x - 1/(2 log x) - (x+1)(1+log x)/x^2)
inline double lower_bound_closed_form(double x) {
    const double L = std::log(x);
    return (exp_minus_gamma() / L) * (1.0 - 1.0 / (2.0 * L * L)) *
           (L - 1.0 / (2.0 * L) - (x + 1.0) * (1.0 + L) / (x * x));
}

struct lower_bound_certificate {
    bound_certificate cert;
    double bound_value = 0.0;      // certified lower bound on every gamma_r in range
    double closed_form_min = 0.0;  // min of the closed form on the grid x >= x_switch
    double exhaustive_min = 0.0;   // min of gamma_r over the streamed range (NaN if skipped)
    bool grid_monotone = false;
};

// Verifies gamma_r > e^{-gamma} exhaustively below min(x_switch, exhaustive_limit)
// and evaluates the closed-form bound on a dense grid at and above x_switch.
// exhaustive_limit = 0 skips the streamed part (closed form only).
inline lower_bound_certificate unconditional_lower_bound(double x_switch,
                                                         std::uint64_t exhaustive_limit = 1000000,
                                                         int grid_points = 2000) {
    if (x_switch < 285)
        throw std::invalid_argument("unconditional_lower_bound: x_switch must be >= 285");
    lower_bound_certificate out;
    out.cert = make_certificate("lower-bound", "x >= " + std::to_string(x_switch));

    // Closed-form part on a geometric grid [x_switch, x_switch * 10^6].
    double cf_min = std::numeric_limits<double>::infinity();
    bool monotone = true;
    double prev = -std::numeric_limits<double>::infinity();
    const double span = 1e6;
    for (int i = 0; i <= grid_points; ++i) {
        const double x = x_switch * std::pow(span, static_cast<double>(i) / grid_points);
        const double v = lower_bound_closed_form(x);
        if (v < cf_min) cf_min = v;
        if (v < prev) monotone = false;
        prev = v;
    }
    out.closed_form_min = cf_min;
    out.grid_monotone = monotone;

    double value = cf_min;
    bool exhaustive_ok = true;
    out.exhaustive_min = std::numeric_limits<double>::quiet_NaN();
    const std::uint64_t stream_to =
        std::min<std::uint64_t>(exhaustive_limit, static_cast<std::uint64_t>(x_switch));
    if (exhaustive_limit > 0 && stream_to >= 2) {
        double gmin = std::numeric_limits<double>::infinity();
        gamma_stream(stream_to, [&](const gamma_record& rec) {
            if (rec.gamma_r < gmin) gmin = rec.gamma_r;
        });
        out.exhaustive_min = gmin;
        exhaustive_ok = gmin > exp_minus_gamma();
        value = std::min(value, gmin);
    }
    out.bound_value = value;
    out.cert.min_margin = value;
    out.cert.holds = value > 0.0 && monotone && exhaustive_ok;
    return out;
}

} // namespace gec

#endif
