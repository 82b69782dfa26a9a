// One-time generator for the bundled table of imaginary parts of nontrivial
// zeta zeros.  Strategy:
//   1. bracket sign changes of the Riemann-Siegel Z(t) (main sum + first
//      correction term) on a grid of ~1/8 of the local mean zero gap;
//   2. refine each bracket with bisection + Newton against an
//      Euler-Maclaurin evaluation of zeta(1/2+it) (N ~ t/3 terms, 16
//      Bernoulli corrections), which is accurate to well below 1e-10 here;
//   3. verify the count against the zero-counting function theta(T)/pi + 1
//      and rescan any suspicious gap with a finer grid.
//
// Usage: gec_zetazeros <count> <out-path>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

namespace {

using cplx = std::complex<double>;
constexpr double pi = 3.14159265358979323846;

// B_{2k}/(2k)! for k = 1..16
const double bern_over_fact[] = {
    8.3333333333333333e-02,  -1.3888888888888889e-03, 3.3068783068783069e-05,
    -8.2671957671957672e-07, 2.0876756987868099e-08,  -5.2841901386874932e-10,
    1.3382536530684679e-11,  -3.3896802963225829e-13, 8.5860620562778446e-15,
    -2.1748686985580619e-16, 5.5090028283602295e-18,  -1.3954464685812523e-19,
    3.5347070396294675e-21,  -8.9535174270375469e-23, 2.2679524523376831e-24,
    -5.7447906688722024e-26};

// Riemann-Siegel theta, asymptotic expansion.
double theta_rs(double t) {
    return 0.5 * t * std::log(t / (2.0 * pi)) - 0.5 * t - pi / 8.0 + 1.0 / (48.0 * t) +
           7.0 / (5760.0 * t * t * t) + 31.0 / (80640.0 * std::pow(t, 5));
}

// cached log n and 1/sqrt n
std::vector<double> log_n{0.0}, rsqrt_n{0.0};
void ensure_tables(std::size_t n) {
    while (log_n.size() <= n) {
        const double v = static_cast<double>(log_n.size());
        log_n.push_back(std::log(v));
        rsqrt_n.push_back(1.0 / std::sqrt(v));
    }
}

// Riemann-Siegel Z(t), main sum plus the leading correction term.  Good to
// ~0.13 t^{-3/4}; only used for bracketing.
double z_rs(double t) {
    const double th = theta_rs(t);
    const double tau = std::sqrt(t / (2.0 * pi));
    const auto m = static_cast<std::size_t>(tau);
    ensure_tables(m);
    double s = 0.0;
    for (std::size_t n = 1; n <= m; ++n) s += rsqrt_n[n] * std::cos(th - t * log_n[n]);
    s *= 2.0;
    double p = tau - static_cast<double>(m);
    // C0 correction; the apparent pole of Psi at cos(2 pi p) = 0 cancels --
    // nudge p when too close since only the sign of Z matters here
    if (std::abs(std::cos(2.0 * pi * p)) < 1e-3) p += 2e-3;
    const double psi = std::cos(2.0 * pi * (p * p - p - 1.0 / 16.0)) / std::cos(2.0 * pi * p);
    s += (m % 2 == 0 ? -1.0 : 1.0) * psi / std::sqrt(tau);
    return s;
}

// Euler-Maclaurin zeta(1/2+it) and its derivative with respect to t,
// computed in one pass.
void zeta_em(double t, cplx& zeta, cplx& dzeta_dt) {
    const auto N = static_cast<std::size_t>(std::max(16.0, t / 3.0)) + 1;
    ensure_tables(N);
    const cplx s(0.5, t);
    cplx sum = 0.0, dsum = 0.0; // dsum accumulates d/ds of the main sum
    for (std::size_t n = 1; n < N; ++n) {
        const double ph = t * log_n[n];
        const cplx term = rsqrt_n[n] * cplx(std::cos(ph), -std::sin(ph)); // n^{-s}
        sum += term;
        dsum += -log_n[n] * term;
    }
    const double Nd = static_cast<double>(N);
    const double lN = log_n[N];
    const double phN = t * lN;
    const cplx Ns = rsqrt_n[N] * cplx(std::cos(phN), -std::sin(phN)); // N^{-s}
    // N^{-s}/2
    sum += 0.5 * Ns;
    dsum += -0.5 * lN * Ns;
    // N^{1-s}/(s-1)
    const cplx sm1 = s - 1.0;
    const cplx tail = Nd * Ns / sm1;
    sum += tail;
    dsum += tail * (-lN - 1.0 / sm1);
    // Bernoulli corrections: N^{-s} sum_k B_{2k}/(2k)! P_k with
    // P_1 = s/N, P_{k+1} = P_k (s+2k-1)(s+2k)/N^2.
    cplx P = s / Nd;
    cplx bsum = 0.0, dbsum = 0.0; // dbsum = d/ds of sum B P
    cplx dP = 1.0 / Nd;           // d/ds of P
    for (int k = 1; k <= 16; ++k) {
        bsum += bern_over_fact[k - 1] * P;
        dbsum += bern_over_fact[k - 1] * dP;
        const cplx f1 = s + static_cast<double>(2 * k - 1);
        const cplx f2 = s + static_cast<double>(2 * k);
        dP = (dP * f1 * f2 + P * (f1 + f2)) / (Nd * Nd);
        P = P * f1 * f2 / (Nd * Nd);
    }
    sum += Ns * bsum;
    dsum += Ns * (dbsum - lN * bsum);
    zeta = sum;
    dzeta_dt = cplx(0.0, 1.0) * dsum; // ds/dt = i
}

// Z(t) from the Euler-Maclaurin zeta; |Z| = |zeta(1/2+it)| so its zeros are
// exactly the zeros we want regardless of theta's own accuracy.
double z_em(double t, double* dz = nullptr) {
    cplx zeta, dzeta;
    zeta_em(t, zeta, dzeta);
    const double th = theta_rs(t);
    const double thp = 0.5 * std::log(t / (2.0 * pi)); // theta'(t), leading term
    const cplx rot(std::cos(th), std::sin(th));
    if (dz) *dz = (rot * (cplx(0.0, thp) * zeta + dzeta)).real();
    return (rot * zeta).real();
}

// Refine a sign-change bracket [a, b] of z_em to ~1e-11.
double refine(double a, double b) {
    double fa = z_em(a), fb = z_em(b);
    // widen if the coarse (Riemann-Siegel) bracket does not hold under the
    // accurate evaluation
    for (int tries = 0; fa * fb > 0 && tries < 60; ++tries) {
        const double w = b - a;
        a -= w;
        b += w;
        fa = z_em(a);
        fb = z_em(b);
    }
    if (fa * fb > 0) {
        std::fprintf(stderr, "lost bracket near t = %.6f\n", 0.5 * (a + b));
        std::exit(1);
    }
    // a few bisection steps to shrink, then Newton with bracket safeguarding
    for (int i = 0; i < 6; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = z_em(m);
        if (fa * fm <= 0) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    double x = 0.5 * (a + b);
    for (int i = 0; i < 60; ++i) {
        double dz;
        const double fx = z_em(x, &dz);
        if (fa * fx <= 0)
            b = x, fb = fx;
        else
            a = x, fa = fx;
        double step = (dz != 0.0) ? -fx / dz : 0.0;
        double next = x + step;
        if (!(next > a && next < b)) next = 0.5 * (a + b); // fall back to bisection
        if (std::abs(next - x) < 5e-12) return next;
        x = next;
    }
    return x;
}

// zero-counting function estimate N(T) = theta(T)/pi + 1 (S(T) ignored;
// only used as a global sanity check where it averages out).
double count_estimate(double T) { return theta_rs(T) / pi + 1.0; }

} // namespace

double coarse_z(double t) { return t < 200.0 ? z_em(t) : z_rs(t); }

double mean_gap(double t) { return 2.0 * pi / std::log(std::max(t, 20.0) / (2.0 * pi)); }

// collect refined zeros from sign changes of coarse_z on [a, b] with `step`
void scan_range(double a, double b, double step, std::vector<double>& zeros) {
    double t = a, f_prev = coarse_z(t);
    while (t < b) {
        const double t_next = std::min(t + step, b);
        const double f_next = coarse_z(t_next);
        if (f_prev * f_next < 0 || f_next == 0.0) zeros.push_back(refine(t, t_next));
        t = t_next;
        f_prev = f_next;
    }
}

int main(int argc, char** argv) {
    if (argc != 3) {
        std::fprintf(stderr, "usage: %s <count> <out-path>\n", argv[0]);
        return 2;
    }
    const auto want = static_cast<std::size_t>(std::strtoull(argv[1], nullptr, 10));
    const std::string out_path = argv[2];

    std::vector<double> zeros;
    zeros.reserve(want + 16);

    double t = 14.0;
    double f_prev = z_em(t);
    while (zeros.size() < want + 2) {
        const double step = mean_gap(t) / 8.0;
        const double t_next = t + step;
        const double f_next = coarse_z(t_next);
        if (f_prev * f_next < 0 || f_next == 0.0) {
            zeros.push_back(refine(t, t_next));
            if (zeros.size() % 5000 == 0)
                std::fprintf(stderr, "  %zu zeros, t = %.2f\n", zeros.size(), zeros.back());
        }
        t = t_next;
        f_prev = f_next;
    }

    // refinement can wander to a neighboring zero when the coarse bracket is
    // spurious: sort and drop duplicates
    std::sort(zeros.begin(), zeros.end());
    std::vector<double> uniq;
    for (double z : zeros)
        if (uniq.empty() || z - uniq.back() > 1e-6) uniq.push_back(z);
    zeros.swap(uniq);

    // gap repair: a missed close pair leaves a hole of ~3 mean gaps between
    // found neighbors; rescan any unusually wide gap with a fine grid
    for (int pass = 0; pass < 4; ++pass) {
        std::vector<double> found;
        for (std::size_t i = 1; i < zeros.size(); ++i) {
            const double gap = zeros[i] - zeros[i - 1];
            if (gap > 1.8 * mean_gap(zeros[i]))
                scan_range(zeros[i - 1] + 1e-6, zeros[i] - 1e-6, gap / 256.0, found);
        }
        // keep only genuinely new zeros (refinement of a rescanned natural
        // gap usually re-finds its endpoints)
        std::size_t added = 0;
        for (double z : found) {
            auto it = std::lower_bound(zeros.begin(), zeros.end(), z);
            const bool dup = (it != zeros.end() && *it - z < 1e-6) ||
                             (it != zeros.begin() && z - *(it - 1) < 1e-6);
            if (!dup) {
                zeros.insert(it, z);
                ++added;
            }
        }
        if (added == 0) break;
        std::fprintf(stderr, "gap repair pass %d recovered %zu zeros\n", pass, added);
    }

    if (zeros.size() < want) {
        std::fprintf(stderr, "only %zu zeros after repair\n", zeros.size());
        return 1;
    }
    zeros.resize(want);

    // sanity: ascending, global count consistency, and the two leading zeros
    for (std::size_t i = 1; i < zeros.size(); ++i) {
        if (zeros[i] <= zeros[i - 1]) {
            std::fprintf(stderr, "non-ascending at index %zu\n", i);
            return 1;
        }
    }
    const double expect = count_estimate(zeros.back() + 1e-6);
    if (std::abs(expect - static_cast<double>(zeros.size())) > 1.5) {
        std::fprintf(stderr, "count check failed: found %zu, counting function gives %.3f\n",
                     zeros.size(), expect);
        return 1;
    }
    if (std::abs(zeros.front() - 14.134725141734693) > 1e-8 ||
        std::abs(zeros[1] - 21.022039638771555) > 1e-8) {
        std::fprintf(stderr, "leading zeros off: %.12f %.12f\n", zeros[0], zeros[1]);
        return 1;
    }

    std::FILE* f = std::fopen(out_path.c_str(), "w");
    if (!f) {
        std::fprintf(stderr, "cannot write %s\n", out_path.c_str());
        return 1;
    }
    std::fprintf(f, "# imaginary parts of the first %zu nontrivial zeta zeros\n", zeros.size());
    std::fprintf(f, "# generated by gec_zetazeros; accuracy ~1e-9 per entry\n");
    for (double z : zeros) std::fprintf(f, "%.9f\n", z);
    std::fclose(f);
    std::fprintf(stderr, "wrote %zu zeros to %s (t_max = %.6f)\n", zeros.size(), out_path.c_str(),
                 zeros.back());
    return 0;
}
