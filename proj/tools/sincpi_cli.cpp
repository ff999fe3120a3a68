// Command-line surface for the sinc/erf/pi series laboratory: evaluates the
// asymptotic pi series, emits erf profile and sinc-expansion check data, and
// verifies the integral identities against the quadrature oracle.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sincpi/sincpi.hpp"

namespace {

using namespace sincpi;
using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20160228;

struct GlobalOpts {
    int digits = 40;
    std::string format = "text";
    std::string out_path;
    unsigned threads = 0;
    std::uint64_t seed = kDefaultSeed;
    bool force_direct = false;
};

std::uint64_t parse_L(const std::string& s) {
    if (s.empty()) throw CLI::ValidationError("--L", "empty value");
    std::uint64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw CLI::ValidationError("--L", "not a decimal integer");
        if (v > (UINT64_MAX - 9) / 10) throw CLI::ValidationError("--L", "value too large");
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (v == 0) throw CLI::ValidationError("--L", "must be >= 1");
    return v;
}

std::vector<std::uint64_t> parse_L_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_L(item));
    return out;
}

/// Write atomically: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open for writing: " + tmp.string());
        f << content;
        if (!f.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

void emit(const GlobalOpts& g, const std::string& content) {
    if (g.out_path.empty())
        std::cout << content;
    else
        write_file_atomic(g.out_path, content);
}

std::string pattern_field(const std::optional<DigitPattern>& p, bool second) {
    if (!p) return "";
    return std::to_string(second ? p->second_group_len : p->prefix_len);
}

int run_pi(const GlobalOpts& g, const std::string& series, const std::string& method,
           std::uint64_t L) {
    SeriesKind kind = (series == "eq16") ? SeriesKind::Eq16 : SeriesKind::Eq15;
    PrecisionContext ctx = PrecisionContext::make(g.digits, L, std::min<std::uint64_t>(L, 64));

    auto t0 = std::chrono::steady_clock::now();
    PiResult result;
    if (method == "direct") {
        result = pi_direct(kind, L, ctx, g.threads, g.force_direct);
    } else if (method == "accelerated") {
        result = pi_accelerated(kind, L, ctx);
    } else {  // auto
        result = (L <= 1'000'000ULL) ? pi_direct(kind, L, ctx, g.threads, g.force_direct)
                                     : pi_accelerated(kind, L, ctx);
    }
    auto t1 = std::chrono::steady_clock::now();
    double wall = std::chrono::duration<double>(t1 - t0).count();

    std::string value = pi_value_string(result.value, g.digits);
    std::string ref = reference_pi(g.digits + 5).str();
    int coinciding = coinciding_digits(value, ref);
    std::string error_bound = result.error_bound.str();

    if (g.format == "json") {
        json j;
        j["series"] = to_string(kind);
        j["L"] = std::to_string(L);
        j["method"] = to_string(result.method);
        j["digits"] = g.digits;
        j["value"] = value;
        j["coinciding"] = coinciding;
        j["error_bound"] = error_bound;
        j["wall_time_s"] = wall;
        emit(g, j.dump() + "\n");
    } else if (g.format == "csv") {
        auto pat = off_by_one_pattern(value, ref);
        std::ostringstream os;
        os << "kind,L,method,value,coinciding,pattern_p1,pattern_p2,wall_time_s\n"
           << to_string(kind) << ',' << L << ',' << to_string(result.method) << ',' << value
           << ',' << coinciding << ',' << pattern_field(pat, false) << ','
           << pattern_field(pat, true) << ',' << wall << '\n';
        emit(g, os.str());
    } else {
        std::ostringstream os;
        os << "series: " << to_string(kind) << "\nL: " << L
           << "\nmethod: " << to_string(result.method) << "\nvalue: " << value
           << "\ncoinciding: " << coinciding << "\nerror_bound: " << error_bound
           << "\nwall_time_s: " << wall << "\n";
        emit(g, os.str());
    }
    return 0;
}

int run_pi_table(const GlobalOpts& g, const std::string& series, const std::string& l_list) {
    SeriesKind kind = (series == "eq16") ? SeriesKind::Eq16 : SeriesKind::Eq15;
    std::vector<std::uint64_t> Ls = parse_L_list(l_list);
    std::uint64_t max_l = Ls.empty() ? 1 : Ls.back();
    PrecisionContext ctx = PrecisionContext::make(g.digits, max_l, std::min<std::uint64_t>(max_l, 64));
    auto records = convergence_table(kind, Ls, ctx, g.threads);
    std::ostringstream os;
    os << "kind,L,method,value,coinciding,pattern_p1,pattern_p2,wall_time_s\n";
    for (const auto& r : records) {
        os << to_string(r.kind) << ',' << r.L << ',' << to_string(r.method) << ',' << r.value
           << ',' << r.coinciding << ',' << pattern_field(r.pattern, false) << ','
           << pattern_field(r.pattern, true) << ',' << r.wall_time_s << '\n';
    }
    emit(g, os.str());
    return 0;
}

int run_erf_profile(const GlobalOpts& g, std::uint64_t L, const std::string& x_min,
                    const std::string& x_max, std::int64_t steps) {
    PrecisionContext ctx = PrecisionContext::make(g.digits, L, static_cast<std::uint64_t>(steps));
    auto records = erf_profile(static_cast<std::int64_t>(L), BigReal::parse(x_min),
                               BigReal::parse(x_max), steps, ctx);
    std::ostringstream os;
    os << "x,erf_ref,erf_approx,abs_error,criterion\n";
    for (const auto& r : records) {
        os << r.x.str(g.digits) << ',' << r.erf_ref.str(g.digits) << ','
           << r.erf_approx.str(g.digits) << ',' << r.abs_error.str(g.digits) << ','
           << (r.criterion_satisfied ? "true" : "false") << '\n';
    }
    emit(g, os.str());
    return 0;
}

int run_sinc_check(const GlobalOpts& g, std::uint64_t L, std::int64_t M, std::int64_t samples) {
    PrecisionContext ctx = PrecisionContext::make(g.digits, std::max<std::uint64_t>(L, 1ULL << M),
                                                  static_cast<std::uint64_t>(samples));
    std::mt19937_64 rng(g.seed);
    std::uniform_int_distribution<int> dist(-50000, 50000);
    std::ostringstream os;

    // identity check: cosine-sum form vs Vieta product at random x
    BigReal max_identity_dev(0);
    for (std::int64_t i = 0; i < samples; ++i) {
        BigReal x(dist(rng), 3);  // x in [-50, 50], three decimals
        BigReal dev = (product_to_sum_rhs(M, x, ctx) - vieta_product(M, x, ctx)).abs();
        if (dev > max_identity_dev) max_identity_dev = dev;
    }
    os << "identity (cosine-sum vs product), M=" << M << ", samples=" << samples
       << ": max deviation " << max_identity_dev.str(g.digits) << '\n';

    auto window = validity_window(static_cast<std::int64_t>(L), ctx);
    os << "window half-width (pi*L): " << window.half_width.str(std::min(g.digits, 10)) << '\n';
    os << "window period (4*pi*L):   " << window.period.str(std::min(g.digits, 10)) << '\n';

    // agreement grid inside half the window
    BigReal max_grid_dev(0);
    const int grid = 20;
    BigReal half = div_at(window.half_width, BigReal(2), ctx.work());
    for (int i = -grid; i <= grid; ++i) {
        BigReal x = div_at(BigReal(half.scaled() * i, half.scale()), BigReal(grid), ctx.work());
        BigReal dev = (incomplete_cosine(static_cast<std::int64_t>(L), x, ctx) - sinc(x, ctx)).abs();
        if (dev > max_grid_dev) max_grid_dev = dev;
    }
    os << "window agreement grid, L=" << L << ": max |expansion - sinc| "
       << max_grid_dev.str(std::min(g.digits, 10)) << '\n';

    // periodicity: expansion(x + 4*pi*L) vs expansion(x)
    BigReal x0 = BigReal::parse("1.25");
    BigReal shifted = x0 + window.period;
    BigReal per_dev = (incomplete_cosine(static_cast<std::int64_t>(L), shifted, ctx) -
                       incomplete_cosine(static_cast<std::int64_t>(L), x0, ctx))
                          .abs();
    os << "periodicity at x=1.25: deviation " << per_dev.str(g.digits) << '\n';
    emit(g, os.str());
    return 0;
}

int run_reference_pi(const GlobalOpts& g) {
    emit(g, reference_pi(g.digits).str() + "\n");
    return 0;
}

int run_verify_identities(const GlobalOpts& g) {
    PrecisionContext ctx = PrecisionContext::make(g.digits);
    std::ostringstream os;
    os << "identity,x,discrepancy\n";
    for (const char* xs : {"0.5", "1", "2", "3", "4", "5", "6"}) {
        BigReal d = verify_erf_integral(BigReal::parse(xs), ctx);
        os << "erf-sinc-integral," << xs << ',' << d.str(g.digits) << '\n';
    }
    BigReal d = verify_sqrtpi_identity(ctx);
    os << "sqrt-pi-integral,," << d.str(g.digits) << '\n';
    emit(g, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"High-precision laboratory for the incomplete cosine expansion of sinc,"
                 " the Gaussian expansion of erf, and two asymptotic series for pi"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--digits", g.digits, "significant digits of output")
        ->check(CLI::Range(1, 10000));
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--out", g.out_path, "output file (default: stdout)");
    app.add_option("--threads", g.threads, "worker threads for direct summation (0 = all cores)");
    app.add_option("--seed", g.seed, "seed for randomized checks");
    app.add_flag("--force-direct", g.force_direct, "override the direct-summation term cap");
    if (const char* env = std::getenv("PI_SINC_THREADS")) {
        g.threads = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    }

    std::string series = "eq15", method = "auto", L_str = "1", l_list;
    std::string x_min = "0", x_max = "6";
    std::int64_t steps = 60, M = 4, samples = 50;

    auto* pi_cmd = app.add_subcommand("pi", "evaluate one asymptotic pi series");
    pi_cmd->add_option("--series", series)->check(CLI::IsMember({"eq15", "eq16"}))->required();
    pi_cmd->add_option("--L", L_str)->required();
    pi_cmd->add_option("--method", method)->check(CLI::IsMember({"direct", "accelerated", "auto"}));

    auto* table_cmd = app.add_subcommand("pi-table", "convergence table over a list of L");
    table_cmd->add_option("--series", series)->check(CLI::IsMember({"eq15", "eq16"}))->required();
    table_cmd->add_option("--L-list", l_list)->required();

    auto* erf_cmd = app.add_subcommand("erf-profile", "erf approximation profile CSV");
    erf_cmd->add_option("--L", L_str)->required();
    erf_cmd->add_option("--x-min", x_min);
    erf_cmd->add_option("--x-max", x_max);
    erf_cmd->add_option("--steps", steps)->check(CLI::Range(std::int64_t(2), std::int64_t(1000000)));

    auto* sinc_cmd = app.add_subcommand("sinc-check", "sinc expansion identity and window report");
    sinc_cmd->add_option("--L", L_str);
    sinc_cmd->add_option("--M", M)->check(CLI::Range(std::int64_t(1), std::int64_t(20)));
    sinc_cmd->add_option("--samples", samples)->check(CLI::Range(std::int64_t(1), std::int64_t(100000)));

    auto* ref_cmd = app.add_subcommand("reference-pi", "print reference pi digits");
    auto* verify_cmd = app.add_subcommand("verify-identities", "integral identity discrepancies");

    // global options may appear after the subcommand name
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (pi_cmd->parsed()) return run_pi(g, series, method, parse_L(L_str));
        if (table_cmd->parsed()) return run_pi_table(g, series, l_list);
        if (erf_cmd->parsed()) return run_erf_profile(g, parse_L(L_str), x_min, x_max, steps);
        if (sinc_cmd->parsed()) return run_sinc_check(g, parse_L(L_str), M, samples);
        if (ref_cmd->parsed()) return run_reference_pi(g);
        if (verify_cmd->parsed()) return run_verify_identities(g);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ResourceRefusal& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 1;
    } catch (const AccuracyRefusal& e) {
        std::cerr << "refused: " << e.what()
                  << " (achievable digits: " << e.achievable_digits << ")\n";
        return 1;
    } catch (const AccuracyFailure& e) {
        std::cerr << "accuracy failure: " << e.what()
                  << " (best estimate: " << e.best_estimate.str() << ")\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
