// Command-line surface for the generalized Euler constant toolkit: table
// generation, certificate verification, scans, prime-set reduction, and
// manifest replay for reproducible runs.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <gec/certificates.hpp>
#include <gec/corrections.hpp>
#include <gec/gamma.hpp>
#include <gec/manifest.hpp>
#include <gec/zeros.hpp>

namespace {

using params = std::map<std::string, std::string>;

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

std::string fmt_sig(double v, int sig) {
    char b[48];
    std::snprintf(b, sizeof(b), "%.*g", sig, v);
    return b;
}

// Round a value to its printed precision so CSV text and JSON numbers carry
// identical values.
double canon(double v, int sig) { return std::strtod(fmt_sig(v, sig).c_str(), nullptr); }

std::string get(const params& p, const std::string& key, const std::string& fallback = "") {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

std::uint64_t get_u64(const params& p, const std::string& key, std::uint64_t fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : std::stoull(it->second);
}

double get_d(const params& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : std::stod(it->second);
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

// Resolve a zero-table path: an existing path wins; otherwise the directory
// named by GEC_ZEROS_DIR is consulted (default file name zeros.txt).
std::string resolve_zeros(const std::string& requested) {
    const char* dir = std::getenv("GEC_ZEROS_DIR");
    if (!requested.empty()) {
        if (file_exists(requested)) return requested;
        if (dir) {
            const std::string alt = std::string(dir) + "/" + requested;
            if (file_exists(alt)) return alt;
        }
        throw std::runtime_error("zero table not found: " + requested);
    }
    if (dir) {
        const std::string alt = std::string(dir) + "/zeros.txt";
        if (file_exists(alt)) return alt;
    }
    return "";
}

struct sink {
    std::ofstream file;
    bool to_file = false;

    explicit sink(const std::string& out) {
        if (!out.empty()) {
            file.open(out, std::ios::binary);
            if (!file) throw std::runtime_error("cannot write " + out);
            to_file = true;
        }
    }
    std::ostream& stream() { return to_file ? static_cast<std::ostream&>(file) : std::cout; }
};

nlohmann::json cert_json(const gec::bound_certificate& c) {
    return {{"name", c.name},
            {"checked_range", c.checked_range},
            {"holds", c.holds},
            {"min_margin", canon(c.min_margin, 17)},
            {"assumptions", c.assumptions}};
}

void write_manifest(const std::string& command, const params& p, const std::string& out,
                    double wall_seconds, const std::string& zeros_path) {
    if (out.empty()) return;
    gec::run_manifest m;
    m.command = command;
    m.parameters = p;
    m.wall_time_seconds = wall_seconds;
    m.outputs = {out};
    if (!zeros_path.empty()) m.zero_table_digest = gec::file_digest_fnv1a(zeros_path);
    m.save(out + ".manifest.json");
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> xs;
    if (hi < lo) return xs;
    if (hi == lo || n <= 1) return {lo};
    for (int i = 0; i <= n; ++i) xs.push_back(lo * std::pow(hi / lo, double(i) / n));
    return xs;
}

// ---------------------------------------------------------------------------

int cmd_table(const params& p) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string out = get(p, "out");
    const std::string format = get(p, "format", "csv");
    if (format != "csv" && format != "json") {
        std::cerr << "error: --format must be csv or json\n";
        return exit_usage;
    }
    const bool by_rmax = p.count("r_max") > 0;
    if (!by_rmax && !p.count("limit")) {
        std::cerr << "error: table requires --limit or --r-max\n";
        return exit_usage;
    }
    const std::uint64_t r_max = get_u64(p, "r_max", 0);
    std::uint64_t limit = get_u64(p, "limit", 0);
    if (by_rmax) {
        // upper bound on p_n: n (log n + log log n) for n >= 6
        const double n = std::max<double>(6.0, static_cast<double>(r_max));
        limit = static_cast<std::uint64_t>(n * (std::log(n) + std::log(std::log(n)))) + 16;
    }

    gec::sieve_config cfg;
    cfg.limit = std::max<std::uint64_t>(limit, 2);
    const std::string checkpoint = get(p, "checkpoint");
    std::optional<gec::sieve_checkpoint> resume;
    if (!checkpoint.empty() && file_exists(checkpoint)) {
        auto cp = gec::sieve_checkpoint::load(checkpoint);
        if (cp.limit == cfg.limit) resume = cp;
    }

    struct row {
        std::uint64_t r, p;
        double gamma_r, A, excess, g;
    };
    std::vector<row> rows;
    auto final_state = gec::gamma_stream(
        cfg,
        [&](const gec::gamma_record& rec) {
            if (by_rmax && rec.r > r_max) return;
            rows.push_back({rec.r, rec.p, rec.gamma_r, rec.A,
                            rec.gamma_r - gec::exp_minus_gamma(), gec::g_of(rec)});
        },
        resume);
    if (!checkpoint.empty())
        gec::sieve_checkpoint::capture(final_state, cfg, cfg.limit).save(checkpoint);

    sink s(out);
    if (format == "csv") {
        s.stream() << "r,p,gamma_r,A,gamma_excess,g\n";
        for (const auto& r : rows)
            s.stream() << r.r << "," << r.p << "," << fmt_sig(r.gamma_r, 15) << ","
                       << fmt_sig(r.A, 17) << "," << fmt_sig(r.excess, 17) << ","
                       << fmt_sig(r.g, 17) << "\n";
    } else {
        nlohmann::json j;
        j["schema"] = gec::json_schema_version;
        j["rows"] = nlohmann::json::array();
        for (const auto& r : rows)
            j["rows"].push_back({{"r", r.r},
                                 {"p", r.p},
                                 {"gamma_r", canon(r.gamma_r, 15)},
                                 {"A", canon(r.A, 17)},
                                 {"gamma_excess", canon(r.excess, 17)},
                                 {"g", canon(r.g, 17)}});
        s.stream() << j.dump(2) << "\n";
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest("table", p, out, wall, "");
    return exit_ok;
}

int cmd_verify(const params& p) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string suite = get(p, "suite");
    const std::string out = get(p, "out");
    const std::uint64_t limit = get_u64(p, "limit", 1000000);
    const bool assume_rh = get(p, "assume_rh", "0") == "1";
    const double lim_d = static_cast<double>(limit);

    static const std::vector<std::string> known = {"theta", "delta", "gamma-margin",
                                                   "lower-bound", "identity-audit", "all"};
    if (std::find(known.begin(), known.end(), suite) == known.end()) {
        std::cerr << "error: unknown suite '" << suite << "'\n";
        return exit_usage;
    }

    std::vector<gec::bound_certificate> certs;
    const bool want = suite == "all";

    if (suite == "delta" && lim_d < 1e6) {
        std::cerr << "error: delta certificates are only valid for x >= 10^6; "
                     "--limit " << limit << " has no admissible samples\n";
        return exit_usage;
    }

    std::optional<gec::prime_table> pt;
    auto table_to = [&](std::uint64_t n) -> gec::prime_table& {
        if (!pt || pt->limit() < n) pt.emplace(n);
        return *pt;
    };

    if (suite == "theta" || want) {
        auto& t = table_to(limit);
        auto xs = log_grid(2.0, lim_d, 64);
        certs.push_back(gec::cert_theta_upper(xs, t));
        if (lim_d >= 1000) certs.push_back(gec::cert_theta_lower(log_grid(1000.0, lim_d, 64), t));
        if (assume_rh && lim_d >= 599)
            certs.push_back(gec::cert_schoenfeld_theta(log_grid(599.0, lim_d, 64), t));
    }
    if (suite == "delta" || (want && lim_d >= 1e6)) {
        auto& t = table_to(limit);
        auto hi = log_grid(1e6, lim_d, 8);
        certs.push_back(gec::cert_delta_upper(hi, t));
        certs.push_back(gec::cert_delta_diff_lower(hi, t));
        certs.push_back(gec::cert_delta_diff_nonneg(log_grid(2.0, lim_d, 32), t));
        if (assume_rh) certs.push_back(gec::cert_schoenfeld_R(log_grid(599.0, lim_d, 32), t));
    }
    if (suite == "gamma-margin" || want) {
        certs.push_back(gec::cert_gamma_positive(limit));
        if (limit >= 1000000)
            certs.push_back(gec::cert_gamma_margin_strong(limit, 10000.0));
    }
    if (suite == "lower-bound" || want) {
        auto res = gec::unconditional_lower_bound(std::max(lim_d, 285.0),
                                                  std::min<std::uint64_t>(limit, 1000000));
        certs.push_back(res.cert);
    }
    if (suite == "identity-audit" || want) {
        const double hi = std::min(lim_d, 1e6);
        std::vector<std::uint64_t> samples;
        auto& t = table_to(10000000);
        for (double x : log_grid(1e4, hi, 9)) {
            // snap to the nearest prime at or below x
            std::uint64_t q = static_cast<std::uint64_t>(x);
            while (q > 2 && !gec::is_prime_u64(q)) --q;
            if (samples.empty() || samples.back() != q) samples.push_back(q);
        }
        certs.push_back(gec::cert_identity_audit(samples, t, 1e7));
    }

    nlohmann::json j;
    j["schema"] = gec::json_schema_version;
    j["suite"] = suite;
    j["certificates"] = nlohmann::json::array();
    bool all_hold = true;
    for (const auto& c : certs) {
        j["certificates"].push_back(cert_json(c));
        all_hold = all_hold && c.holds;
    }
    sink s(out);
    s.stream() << j.dump(2) << "\n";
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest("verify", p, out, wall, "");
    return all_hold ? exit_ok : exit_failed;
}

int cmd_scan(const params& p) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string kind = get(p, "kind");
    const std::string out = get(p, "out");

    nlohmann::json j;
    j["schema"] = gec::json_schema_version;
    int rc = exit_ok;
    std::string zeros_path;

    if (kind == "monotonicity") {
        const std::uint64_t limit = get_u64(p, "limit", 1000000);
        auto rep = gec::monotonicity_scan(limit);
        j["kind"] = "monotonicity";
        j["limit"] = limit;
        j["records"] = rep.records;
        j["min_margin"] = canon(rep.min_margin, 17);
        j["argmin_r"] = rep.argmin_r;
        j["argmin_p"] = rep.argmin_p;
        j["violations"] = rep.violations;
        rc = rep.violations.empty() ? exit_ok : exit_failed;
    } else if (kind == "ell") {
        try {
            zeros_path = resolve_zeros(get(p, "zeros"));
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return exit_usage;
        }
        if (zeros_path.empty()) {
            std::cerr << "error: ell scan requires --zeros <path> "
                         "(or GEC_ZEROS_DIR with zeros.txt)\n";
            return exit_usage;
        }
        const std::string range = get(p, "range");
        const auto colon = range.find(':');
        if (range.empty() || colon == std::string::npos) {
            std::cerr << "error: ell scan requires --range a:b\n";
            return exit_usage;
        }
        const double a = std::stod(range.substr(0, colon));
        const double b = std::stod(range.substr(colon + 1));
        const double step = get_d(p, "step", 1e-3);
        auto table = gec::zero_table::load(zeros_path);
        gec::abort_policy abort;
        abort.prefix_count = static_cast<std::size_t>(get_u64(p, "abort_prefix", 1000));
        if (p.count("abort_threshold")) abort.threshold = get_d(p, "abort_threshold", 0.0);
        auto rep = gec::scan_ell(a, b, step, table, abort);
        j["kind"] = "ell";
        j["zeros"] = zeros_path;
        j["zero_count"] = table.count();
        j["u_start"] = rep.u_start;
        j["u_end"] = rep.u_end;
        j["step"] = rep.step;
        j["max_value"] = canon(rep.max_value, 17);
        j["argmax_u"] = canon(rep.argmax_u, 17);
        j["min_value"] = canon(rep.min_value, 17);
        j["argmin_u"] = canon(rep.argmin_u, 17);
        j["points_evaluated"] = rep.points_evaluated;
        j["points_aborted"] = rep.points_aborted;
        j["error_bound_at_max"] = canon(rep.error_bound_at_max, 17);
    } else {
        std::cerr << "error: --kind must be monotonicity or ell\n";
        return exit_usage;
    }

    sink s(out);
    s.stream() << j.dump(2) << "\n";
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest("scan", p, out, wall, zeros_path);
    return rc;
}

int cmd_reduce(const params& p) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string out = get(p, "out");
    std::vector<std::uint64_t> elems;
    std::stringstream ss(get(p, "primes"));
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) elems.push_back(std::stoull(tok));

    gec::prime_set P;
    try {
        P = gec::prime_set::of(elems);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    auto chain = gec::reduce_to_initial_segment(P);

    nlohmann::json j;
    j["schema"] = gec::json_schema_version;
    j["steps"] = nlohmann::json::array();
    for (const auto& st : chain.steps) {
        const char* branch = st.branch == gec::reduction_branch::start ? "start"
                             : st.branch == gec::reduction_branch::removed_largest
                                 ? "removed_largest"
                                 : "replaced_largest";
        j["steps"].push_back(
            {{"set", st.set.primes()}, {"gamma", canon(st.gamma, 17)}, {"branch", branch}});
    }
    j["final_r"] = chain.final_r;
    j["tie_warning"] = chain.tie_warning;
    sink s(out);
    s.stream() << j.dump(2) << "\n";
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest("reduce", p, out, wall, "");
    return exit_ok;
}

int dispatch(const std::string& command, const params& p) {
    if (command == "table") return cmd_table(p);
    if (command == "verify") return cmd_verify(p);
    if (command == "scan") return cmd_scan(p);
    if (command == "reduce") return cmd_reduce(p);
    std::cerr << "error: unknown command '" << command << "'\n";
    return exit_usage;
}

int cmd_replay(const std::string& manifest_path, const std::string& out_override) {
    auto m = gec::run_manifest::load(manifest_path);
    params p = m.parameters;
    if (!out_override.empty()) p["out"] = out_override;
    return dispatch(m.command, p);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Euler constant toolkit"};
    app.require_subcommand(1);

    params p;
    auto bind_common = [&](CLI::App* sub) {
        sub->add_option_function<std::string>(
            "--out", [&](const std::string& v) { p["out"] = v; }, "output file");
    };

    auto* table = app.add_subcommand("table", "emit (r, p_r, gamma_r, ...) rows");
    table->add_option_function<std::uint64_t>(
        "--limit", [&](std::uint64_t v) { p["limit"] = std::to_string(v); },
        "stream all p_r <= limit");
    table->add_option_function<std::uint64_t>(
        "--r-max", [&](std::uint64_t v) { p["r_max"] = std::to_string(v); },
        "stream the first r_max records");
    table->add_option_function<std::string>(
        "--format", [&](const std::string& v) { p["format"] = v; }, "csv or json");
    table->add_option_function<std::string>(
        "--checkpoint", [&](const std::string& v) { p["checkpoint"] = v; },
        "checkpoint file for resumable runs");
    bind_common(table);

    auto* verify = app.add_subcommand("verify", "evaluate bound certificates");
    verify->add_option_function<std::string>(
              "--suite", [&](const std::string& v) { p["suite"] = v; },
              "theta|delta|gamma-margin|lower-bound|identity-audit|all")
        ->required();
    verify->add_option_function<std::uint64_t>(
        "--limit", [&](std::uint64_t v) { p["limit"] = std::to_string(v); }, "sample range cap");
    verify->add_flag_function(
        "--assume-rh", [&](std::int64_t) { p["assume_rh"] = "1"; },
        "include RH-conditional certificates");
    bind_common(verify);

    auto* scan = app.add_subcommand("scan", "monotonicity or oscillation scans");
    scan->add_option_function<std::string>(
            "--kind", [&](const std::string& v) { p["kind"] = v; }, "monotonicity|ell")
        ->required();
    scan->add_option_function<std::uint64_t>(
        "--limit", [&](std::uint64_t v) { p["limit"] = std::to_string(v); },
        "monotonicity: stream limit");
    scan->add_option_function<std::string>(
        "--range", [&](const std::string& v) { p["range"] = v; }, "ell: u range a:b");
    scan->add_option_function<double>(
        "--step", [&](double v) { p["step"] = fmt_sig(v, 17); }, "ell: grid step");
    scan->add_option_function<std::string>(
        "--zeros", [&](const std::string& v) { p["zeros"] = v; }, "zero-table path");
    scan->add_option_function<std::uint64_t>(
        "--abort-prefix", [&](std::uint64_t v) { p["abort_prefix"] = std::to_string(v); },
        "ell: prefix length for early abort");
    scan->add_option_function<double>(
        "--abort-threshold", [&](double v) { p["abort_threshold"] = fmt_sig(v, 17); },
        "ell: abort points whose prefix sum is below this");
    bind_common(scan);

    auto* reduce = app.add_subcommand("reduce", "reduce a prime set to an initial segment");
    reduce->add_option_function<std::string>(
              "--primes", [&](const std::string& v) { p["primes"] = v; },
              "comma-separated primes")
        ->required();
    bind_common(reduce);

    std::string manifest_path, replay_out;
    auto* replay = app.add_subcommand("replay", "re-run a recorded manifest");
    replay->add_option("manifest", manifest_path, "manifest JSON path")->required();
    replay->add_option("--out", replay_out, "override output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_usage;
    }

    try {
        if (replay->parsed()) return cmd_replay(manifest_path, replay_out);
        return dispatch(app.get_subcommands().front()->get_name(), p);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failed;
    }
}
