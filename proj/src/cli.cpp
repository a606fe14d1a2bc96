#include "dmom/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "dmom/errors.hpp"
#include "dmom/mainterms.hpp"
#include "dmom/parallel.hpp"
#include "dmom/report.hpp"

namespace dmom {

namespace {

u64 parse_u64(const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        throw DomainError("not a positive integer: '" + s + "'");
    }
    if (used != s.size() || s.empty() || s[0] == '-') throw DomainError("not a positive integer: '" + s + "'");
    return v;
}

std::pair<u64, u64> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const u64 v = parse_u64(s);
        return {v, v};
    }
    const u64 a = parse_u64(s.substr(0, dots)), b = parse_u64(s.substr(dots + 2));
    if (a > b) throw DomainError("empty range: " + s);
    return {a, b};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string t; std::getline(ss, t, sep);) out.push_back(t);
    return out;
}

std::string shift_string(cplx z) { return format_double(z.real()) + "," + format_double(z.imag()); }

}  // namespace

bool is_balanced_semiprime(u64 q) {
    const auto f = factorize(q);
    if (f.factors.size() != 2 || f.factors[0].exponent != 1 || f.factors[1].exponent != 1) return false;
    const double lo = std::pow(static_cast<double>(q), 0.45), hi = std::pow(static_cast<double>(q), 0.55);
    for (const auto& pp : f.factors)
        if (static_cast<double>(pp.prime) < lo || static_cast<double>(pp.prime) > hi) return false;
    return true;
}

std::vector<u64> parse_q_spec(const std::string& spec) {
    std::vector<u64> out;
    for (const auto& item : split(spec, ',')) {
        if (item.empty()) throw DomainError("empty item in modulus list: '" + spec + "'");
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            const auto [a, b] = parse_range(item);
            if (b - a > 10'000'000) throw DomainError("range too large: " + item);
            for (u64 q = a; q <= b; ++q) out.push_back(q);
            continue;
        }
        const std::string kind = item.substr(0, colon);
        const auto [a, b] = parse_range(item.substr(colon + 1));
        if (kind == "primes") {
            for (u64 p : primes_between(a, b)) out.push_back(p);
        } else if (kind == "semiprimes-balanced") {
            for (u64 q = a; q <= b; ++q)
                if (is_balanced_semiprime(q)) out.push_back(q);
        } else {
            throw DomainError("unknown modulus family: " + kind);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) throw DomainError("modulus list '" + spec + "' is empty");
    return out;
}

cplx parse_shift(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.empty() || parts.size() > 2) throw DomainError("shift must be 're,im': '" + s + "'");
    double v[2] = {0, 0};
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::size_t used = 0;
        try {
            v[i] = std::stod(parts[i], &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != parts[i].size() || !std::isfinite(v[i]))
            throw DomainError("shift must be 're,im': '" + s + "'");
    }
    return {v[0], v[1]};
}

double freeze_constant(double observed) {
    const double x = 1.5 * observed;
    if (!(x > 0)) return 0;
    const double scale = std::pow(10.0, std::floor(std::log10(x)) - 1);
    return std::ceil(x / scale - 1e-9) * scale;
}

PilotConstants run_pilot(int threads) {
    PilotConstants c;
    SweepOptions opt;
    opt.threads = threads;
    const auto primes = sweep(primes_between(100, 2000), opt);
    for (const auto& r : primes) c.c6_observed = std::max(c.c6_observed, r.residual_norm);
    c.slope = fit_error_exponent(primes, 100).slope;
    for (const auto& r : sweep({37 * 41, 43 * 47, 53 * 59}, opt))
        c.c6_prime_observed = std::max(c.c6_prime_observed, r.residual_norm);
    std::vector<std::pair<u64, u64>> pairs;
    for (u64 h : {3, 5, 7, 11, 13})
        for (u64 p : {211, 401, 601, 1009})
            if (static_cast<double>(h) < std::pow(static_cast<double>(p), 2.0 / 3.0)) pairs.emplace_back(h, p);
    for (const auto& r : reciprocity_probe(pairs, threads)) c.c10_observed = std::max(c.c10_observed, r.ratio);
    c.c6 = freeze_constant(c.c6_observed);
    c.c6_prime = freeze_constant(c.c6_prime_observed);
    c.c10 = freeze_constant(c.c10_observed);
    return c;
}

namespace {

struct Common {
    std::string out;
    std::string format = "csv";
    std::string precision = "double";
    int threads = default_threads();
    u64 seed = 1;
    bool timing = false;
};

void add_common(CLI::App* app, Common& c, bool with_timing = false) {
    app->add_option("--out", c.out, "Output file (relative paths resolve against $DMOM_OUTPUT_DIR); stdout if omitted");
    app->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--precision", c.precision, "Hurwitz summation precision")->check(CLI::IsMember({"double", "extended"}));
    app->add_option("--threads", c.threads, "Worker threads (default: all cores)")->check(CLI::PositiveNumber);
    app->add_option("--seed", c.seed, "Seed for randomized checks");
    if (with_timing) app->add_flag("--timing", c.timing, "Add a runtime_ms column (breaks byte-identical reruns)");
}

EvalSettings eval_settings(const Common& c) {
    EvalSettings e;
    e.precision = c.precision == "extended" ? Precision::Extended : Precision::Double;
    return e;
}

std::filesystem::path resolve_out(const std::string& out) {
    std::filesystem::path p(out);
    if (p.is_relative())
        if (const char* dir = std::getenv("DMOM_OUTPUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
    return p;
}

void emit(Report r, const Common& c, nlohmann::json settings) {
    r.meta["version"] = version_string();
    settings["format"] = c.format;
    settings["precision"] = c.precision;
    settings["seed"] = c.seed;
    r.meta["settings"] = std::move(settings);
    std::ostringstream buf;
    if (c.format == "json")
        write_json(r, buf);
    else
        write_csv(r, buf);
    if (c.out.empty()) {
        std::cout << buf.str();
        return;
    }
    const auto path = resolve_out(c.out);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot write " + path.string());
    f << buf.str();
    std::cerr << "wrote " << path.string() << '\n';
}

void print_row(const MomentRow& r, std::ostream& os) {
    auto z = [](cplx v) { return format_double(v.real()) + (v.imag() < 0 ? " - " : " + ") + format_double(std::abs(v.imag())) + "i"; };
    os << "q = " << r.q << ", parity " << to_string(r.parity) << ", alpha " << shift_string(r.alpha) << ", beta "
              << shift_string(r.beta) << '\n'
              << "  lhs           " << z(r.lhs) << '\n'
              << "  main          " << z(r.main) << '\n'
              << "  secondary     " << z(r.secondary) << '\n'
              << "  residual      " << z(r.residual) << '\n'
              << "  residual_norm " << format_double(r.residual_norm) << '\n';
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"Second moments of primitive Dirichlet L-functions at the central point, checked against their asymptotic formulas."};
    app.require_subcommand(1);
    app.set_version_flag("--version", version_string());

    Common common;
    std::string q_text, alpha_text = "0,0", beta_text = "0,0", parity_text = "even", k_text, h_text = "3,5,7,11,13",
                p_text = "primes:100..1000";
    double D = 0;
    bool series_check = false;
    int props_trials = 10;

    auto* moment = app.add_subcommand(
        "moment",
        "Mean square of L(1/2+alpha, chi) L(1/2+beta, conj chi) over one parity class at a single modulus, against the "
        "main term plus the square-root-size secondary term (shifted even formula; zero-shift even, odd and "
        "all-primitive formulas).");
    moment->add_option("--q", q_text, "Modulus")->required();
    moment->add_option("--alpha", alpha_text, "Shift alpha as re,im");
    moment->add_option("--beta", beta_text, "Shift beta as re,im");
    moment->add_option("--parity", parity_text, "even | odd | all-primitive");
    moment->add_option("--D", D, "Divisor cut in the error scale (default sqrt q)");
    add_common(moment, common, true);

    auto* sweep_cmd = app.add_subcommand(
        "sweep",
        "Residual sweep over many moduli, checking the q^{1/4} d(q) error size of the zero-shift formulas and the "
        "balanced-semiprime case q = p1 p2 with both primes near sqrt q.");
    sweep_cmd->add_option("--q", q_text, "Moduli, e.g. primes:100..2000, semiprimes-balanced:1000..5000, 5..60, 101,211")
        ->required();
    sweep_cmd->add_option("--alpha", alpha_text, "Shift alpha as re,im");
    sweep_cmd->add_option("--beta", beta_text, "Shift beta as re,im");
    sweep_cmd->add_option("--parity", parity_text, "even | odd | all-primitive");
    sweep_cmd->add_option("--D", D, "Divisor cut in the error scale (default sqrt q)");
    add_common(sweep_cmd, common, true);

    auto* hb = app.add_subcommand(
        "hb",
        "T(k) recovered from the all-character mean square, against k log k + A k + B sqrt k with A = gamma - log 8 pi, "
        "B = 2 zeta(1/2)^2; estimates the constant term and which power of k the remainder decays with.");
    hb->add_option("--k", k_text, "Values of k (default 200..500 step 50 with doubles and quadruples)");
    hb->add_flag("--series-check", series_check, "Also evaluate the divisor-sum series for T(k), k <= 100");
    add_common(hb, common);

    auto* twist = app.add_subcommand(
        "twist",
        "Twisted mean square S(p,h) against the reciprocity formula sqrt(p/h) S(h,-p) + (p/sqrt h)(log(p/h) + A) + "
        "(B/2) sqrt p, with error scale h + log p + sqrt(p/h) log p.");
    twist->set_help_flag("--help", "Print this help message and exit");
    twist->add_option("--h", h_text, "Primes h");
    twist->add_option("--p", p_text, "Primes p (pairs with h < p are used)");
    add_common(twist, common);

    auto* kernel = app.add_subcommand(
        "kernel",
        "Kernel checks: the combined kernel integral equals pi at delta = 0 and its closed form at delta = -alpha-beta, "
        "contour independence, and the residue e^{-i pi/4} Gamma(1/2) of the series kernel.");
    add_common(kernel, common);

    auto* props = app.add_subcommand(
        "props", "Randomized property checks: shift symmetry of the even moment and the even + odd = all partition.");
    props->add_option("--q", q_text, "Moduli")->required();
    props->add_option("--trials", props_trials, "Random shift pairs per modulus")->check(CLI::PositiveNumber);
    add_common(props, common);

    auto* pilot = app.add_subcommand(
        "pilot",
        "Computes the empirical residual ceilings for the prime, balanced-semiprime and reciprocity checks and writes "
        "them as a fixture (observed maximum times 1.5, rounded up to two digits).");
    add_common(pilot, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const EvalSettings cfg = eval_settings(common);
        if (*moment) {
            const u64 q = parse_u64(q_text);
            const cplx a = parse_shift(alpha_text), b = parse_shift(beta_text);
            const auto t0 = std::chrono::steady_clock::now();
            auto row = residual_row(q, a, b, parse_parity(parity_text), D, cfg);
            if (common.timing)
                row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            print_row(row, std::cout);
            if (!common.out.empty())
                emit(moment_report({row}, common.timing), common,
                     {{"subcommand", "moment"}, {"q", q}, {"alpha", shift_string(a)}, {"beta", shift_string(b)},
                      {"parity", parity_text}, {"D", row.D}});
        } else if (*sweep_cmd) {
            SweepOptions opt;
            opt.alpha = parse_shift(alpha_text);
            opt.beta = parse_shift(beta_text);
            opt.parity = parse_parity(parity_text);
            opt.D = D;
            opt.threads = common.threads;
            opt.timing = common.timing;
            opt.eval = cfg;
            const auto rows = sweep(parse_q_spec(q_text), opt);
            Report r = moment_report(rows, common.timing);
            double worst = 0;
            for (const auto& x : rows) worst = std::max(worst, x.residual_norm);
            r.meta["summary"] = {{"rows", rows.size()}, {"max_residual_norm", worst}};
            if (rows.size() >= 5) {
                try {
                    r.meta["summary"]["fit"] = fit_json(fit_error_exponent(rows));
                } catch (const DomainError&) {
                }
            }
            std::cerr << "rows " << rows.size() << ", max residual_norm " << format_double(worst);
            if (r.meta["summary"].contains("fit"))
                std::cerr << ", fitted exponent " << format_double(r.meta["summary"]["fit"]["slope"].get<double>());
            std::cerr << '\n';
            emit(std::move(r), common,
                 {{"subcommand", "sweep"}, {"q", q_text}, {"alpha", shift_string(opt.alpha)},
                  {"beta", shift_string(opt.beta)}, {"parity", parity_text}, {"D", D}});
        } else if (*hb) {
            const auto ks = k_text.empty() ? default_hb_grid() : parse_q_spec(k_text);
            HbProbe probe;
            if (std::any_of(ks.begin(), ks.end(), [&](u64 k) {
                    return std::find(ks.begin(), ks.end(), 2 * k) != ks.end() &&
                           std::find(ks.begin(), ks.end(), 4 * k) != ks.end();
                })) {
                probe = hb_expansion_probe(ks, series_check, common.threads, std::min<u64>(200, ks.back() / 4));
                std::cerr << "c0 " << format_double(probe.c0) << " (spread " << format_double(probe.c0_spread)
                          << (probe.c0_stable ? ", stable" : ", unstable") << "), remainder decays like " << probe.law
                          << " (fitted exponent " << format_double(probe.decay.slope) << ")\n";
            } else {
                // no (k, 2k, 4k) triple: rows only
                TRecover T;
                for (u64 k : ks) {
                    HbRow row;
                    row.k = k;
                    row.t_recover = T(k);
                    row.hb_main = hb_main(static_cast<double>(k));
                    row.remainder = row.t_recover - row.hb_main;
                    if (series_check && k <= 100) {
                        row.t_series = t_series(k, 0.0, common.threads).value;
                        probe.max_series_diff = std::max(probe.max_series_diff, std::abs(*row.t_series - row.t_recover));
                    }
                    probe.rows.push_back(row);
                }
            }
            if (series_check) std::cerr << "max |t_series - t_recover| " << format_double(probe.max_series_diff) << '\n';
            Report r = hb_report(probe);
            if (probe.estimates.empty()) r.meta["summary"] = {{"max_series_diff", probe.max_series_diff}};
            emit(std::move(r), common, {{"subcommand", "hb"}, {"k", k_text}, {"series_check", series_check}});
        } else if (*twist) {
            std::vector<std::pair<u64, u64>> pairs;
            const auto ps = parse_q_spec(p_text);
            for (u64 h : parse_q_spec(h_text))
                for (u64 p : ps)
                    if (h < p) pairs.emplace_back(h, p);
            if (pairs.empty()) throw DomainError("twist: no pairs with h < p");
            const auto rows = reciprocity_probe(pairs, common.threads);
            double worst = 0;
            for (const auto& x : rows) worst = std::max(worst, x.ratio);
            std::cerr << "pairs " << rows.size() << ", max ratio " << format_double(worst) << '\n';
            Report r = reciprocity_report(rows);
            r.meta["summary"] = {{"pairs", rows.size()}, {"max_ratio", worst}};
            emit(std::move(r), common, {{"subcommand", "twist"}, {"h", h_text}, {"p", p_text}});
        } else if (*kernel) {
            const auto cells = kernel_probe();
            bool ok = true;
            for (const auto& c : cells) {
                std::cerr << (c.ok ? "ok   " : "FAIL ") << c.name << "  diff " << format_double(c.diff)
                          << (c.error.empty() ? "" : "  " + c.error) << '\n';
                ok = ok && c.ok;
            }
            emit(kernel_report(cells), common, {{"subcommand", "kernel"}});
            return ok ? 0 : 1;
        } else if (*props) {
            std::mt19937_64 rng(common.seed);
            std::uniform_real_distribution<double> u(-0.05, 0.05);
            Report r;
            r.columns = {"q", "alpha_re", "alpha_im", "beta_re", "beta_im", "symmetry_diff", "partition_diff", "ok"};
            bool ok = true;
            for (u64 q : parse_q_spec(q_text)) {
                if (q < 3) throw DomainError("props: moduli must be at least 3");
                for (int t = 0; t < props_trials; ++t) {
                    const cplx a{u(rng), u(rng)}, b{u(rng), u(rng)};
                    const cplx ab = moment_even(q, a, b, cfg).value, ba = moment_even(q, b, a, cfg).value;
                    const auto e = moment_even(q, a, b, cfg), o = moment_odd(q, a, b, cfg),
                               all = moment_all_primitive(q, a, b, cfg);
                    const double sym = std::abs(ab - ba), part = std::abs(e.value + o.value - all.value);
                    const bool good = sym < 1e-10 && part < 1e-10 &&
                                      e.character_count + o.character_count == all.character_count;
                    ok = ok && good;
                    r.rows.push_back({q, a.real(), a.imag(), b.real(), b.imag(), sym, part, good});
                }
            }
            std::cerr << (ok ? "all properties hold" : "property failures found") << '\n';
            emit(std::move(r), common, {{"subcommand", "props"}, {"q", q_text}, {"trials", props_trials}});
            return ok ? 0 : 1;
        } else if (*pilot) {
            const auto c = run_pilot(common.threads);
            nlohmann::ordered_json doc;
            doc["provenance"] = {
                {"generated_by", "dmom pilot"},
                {"version", version_string()},
                {"protocol", "constant = observed maximum * 1.5, rounded up to two significant digits"}};
            doc["c6"] = {{"value", c.c6},
                         {"observed_max_residual_norm", c.c6_observed},
                         {"moduli", "primes in [100, 2000], even class, zero shifts"}};
            doc["c6_prime"] = {{"value", c.c6_prime},
                               {"observed_max_residual_norm", c.c6_prime_observed},
                               {"moduli", "37*41, 43*47, 53*59, even class, zero shifts"}};
            doc["c10"] = {{"value", c.c10},
                          {"observed_max_ratio", c.c10_observed},
                          {"pairs", "h in {3,5,7,11,13}, p in {211,401,601,1009}, h < p^(2/3)"}};
            doc["prime_fit_slope"] = {{"observed", c.slope}, {"ceiling", 0.35}};
            const std::string text = doc.dump(2) + "\n";
            if (common.out.empty()) {
                std::cout << text;
            } else {
                const auto path = resolve_out(common.out);
                if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
                std::ofstream(path, std::ios::binary) << text;
                std::cerr << "wrote " << path.string() << '\n';
            }
        }
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace dmom
