#include "ppra/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"

#include "ppra/arith.hpp"
#include "ppra/asymptotics.hpp"
#include "ppra/expsums.hpp"
#include "ppra/kernels.hpp"
#include "ppra/parallel.hpp"
#include "ppra/representation.hpp"
#include "ppra/verify.hpp"

namespace ppra::cli {

namespace {

std::vector<int> parse_tuple(const std::string& text) {
    std::vector<int> exps;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const int k = std::stoi(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            exps.push_back(k);
        } catch (const std::exception&) {
            throw UsageError("--k: cannot parse exponent '" + item + "'");
        }
    }
    if (exps.empty()) throw UsageError("--k: at least one exponent required");
    for (int k : exps)
        if (k < 2) throw UsageError("--k: exponents must be integers >= 2");
    return exps;
}

std::vector<std::int64_t> parse_n_list(const std::string& text) {
    std::vector<std::int64_t> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0' || !(v >= 2.0) || v > 9e15 ||
            v != std::floor(v))
            throw UsageError("--N-list: cannot parse integer '" + item + "'");
        values.push_back(static_cast<std::int64_t>(v));
    }
    if (values.empty()) throw UsageError("--N-list: at least one value required");
    return values;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig config;
    if (const char* env = std::getenv("PPRA_CACHE_DIR")) config.cache_dir = env;

    CLI::App app{"prime-power representation averages"};
    app.require_subcommand(1);

    std::string tuple_text, n_list_text, format_text = "csv", strategy_text = "auto";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format_text, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", config.out_path, "output path (default stdout)");
        sub->add_option("--cache-dir", config.cache_dir, "lambda-table cache directory");
        sub->add_option("--workers", config.workers, "worker threads (0 = hardware)");
        sub->add_option("--seed", config.seed, "seed for randomized suites");
        sub->add_option("--trunc-tau", config.trunc_tau, "exponential-sum truncation depth")
            ->check(CLI::PositiveNumber);
        sub->add_flag("--force-scalar", config.force_scalar, "disable SIMD kernels");
    };

    CLI::App* sieve = app.add_subcommand("sieve", "tabulate Lambda and psi");
    sieve->add_option("--limit", config.limit, "table limit")->required();
    add_common(sieve);

    CLI::App* rep = app.add_subcommand("rep", "representation table R(n;k)");
    rep->add_option("--k", tuple_text, "exponent tuple, e.g. 2,2,3")->required();
    rep->add_option("--limit", config.limit, "table limit")->required();
    rep->add_option("--strategy", strategy_text, "direct, fast or auto")
        ->check(CLI::IsMember({"direct", "fast", "auto"}));
    add_common(rep);

    CLI::App* window = app.add_subcommand("window", "short-interval window sums");
    window->add_option("--k", tuple_text, "exponent tuple")->required();
    window->add_option("--N", config.n, "window start")->required();
    window->add_option("--H", config.h, "window length")->required();
    add_common(window);

    CLI::App* ladder = app.add_subcommand("ladder", "deviation ladder across N");
    ladder->add_option("--k", tuple_text, "exponent tuple (r >= 3)")->required();
    ladder->add_option("--N-list", n_list_text, "comma list of N values")->required();
    ladder->add_option("--h-exp", config.h_exponent, "H = ceil(N^h_exp)");
    ladder->add_option("--epsilon", config.epsilon, "range parameter");
    ladder->add_option("--c1", config.c1, "error-scale constant");
    ladder->add_flag("--rh", config.rh_mode, "RH-mode admissible range");
    add_common(ladder);

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", config.suite, "identity|laplace|mtsum|ubound|zbound|supnorm|reconstruct|all");
    add_common(verify);

    CLI::App* expsum = app.add_subcommand("expsum", "exponential-sum grid dump and diagnostics");
    expsum->add_option("--k", tuple_text, "exponent (single, or tuple with --i4-b)")->required();
    expsum->add_option("--N", config.n, "scale N")->required();
    expsum->add_option("--H", config.h, "window length (tail-integral diagnostic)");
    expsum->add_option("--grid", config.grid, "grid sample count");
    expsum->add_option("--alpha-min", config.alpha_min, "grid start");
    expsum->add_option("--alpha-max", config.alpha_max, "grid end");
    expsum->add_option("--l2-xi", config.l2_xi, "emit the L2 mass of E~ over [-xi, xi]");
    expsum->add_option("--l2-tau", config.l2_tau, "emit the L2 mass of S~ over [-tau, tau]");
    expsum->add_option("--i4-b", config.i4_b, "emit the tail integral with cutoff B/H");
    add_common(expsum);

    std::vector<const char*> argv;
    argv.push_back("ppra");
    for (const auto& arg : args) argv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (sieve->parsed()) config.command = Command::sieve;
    if (rep->parsed()) config.command = Command::rep;
    if (window->parsed()) config.command = Command::window;
    if (ladder->parsed()) config.command = Command::ladder;
    if (verify->parsed()) config.command = Command::verify;
    if (expsum->parsed()) config.command = Command::expsum;

    config.format = format_text == "json" ? ReportFormat::json : ReportFormat::csv;
    if (strategy_text == "direct") config.strategy = ConvStrategy::direct;
    else if (strategy_text == "fast") config.strategy = ConvStrategy::fast;
    else config.strategy = ConvStrategy::automatic;

    if (!tuple_text.empty()) config.tuple = parse_tuple(tuple_text);
    if (!n_list_text.empty()) config.n_list = parse_n_list(n_list_text);

    if (config.command == Command::ladder && config.tuple.size() < 3)
        throw UsageError("--k: theorem-scale ladder requires r >= 3 exponents");
    if (config.command == Command::window && config.tuple.size() < 2)
        throw UsageError("--k: window sums require r >= 2 exponents");
    if ((config.command == Command::window || config.command == Command::expsum) && config.n < 1)
        throw UsageError("--N: must be >= 1");
    if (config.command == Command::window && config.h < 0)
        throw UsageError("--H: must be >= 0");
    if (config.command == Command::sieve || config.command == Command::rep) {
        if (config.limit < 1) throw UsageError("--limit: must be >= 1");
    }
    if (config.command == Command::verify && !is_verify_suite(config.suite))
        throw UsageError("--suite: unknown suite '" + config.suite + "'");
    if (config.command == Command::expsum && config.i4_b == 0.0 && config.tuple.size() != 1)
        throw UsageError("--k: expsum grid dumps use a single exponent");

    return config;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

// Streamed table writer for the potentially huge dumps (sieve, rep); the
// small reports go through ReportDocument/emit.
class StreamTable {
  public:
    StreamTable(std::ostream& os, ReportFormat format, const std::string& command,
                std::vector<std::string> columns)
        : os_(os), format_(format), columns_(std::move(columns)) {
        if (format_ == ReportFormat::csv) {
            os_ << "schema_version,command\n1," << csv_escape(command) << '\n';
            for (std::size_t i = 0; i < columns_.size(); ++i)
                os_ << (i ? "," : "") << csv_escape(columns_[i]);
            os_ << '\n';
        } else {
            os_ << "{\n  \"schema_version\": \"1\",\n  \"command\": \"" << command
                << "\",\n  \"rows\": [";
        }
    }

    void row(std::int64_t n, std::initializer_list<double> reals) {
        if (format_ == ReportFormat::csv) {
            os_ << n;
            for (double v : reals) os_ << ',' << format_double(v);
            os_ << '\n';
        } else {
            os_ << (first_ ? "\n" : ",\n") << "    {\"" << columns_[0] << "\": " << n;
            std::size_t c = 1;
            for (double v : reals) os_ << ", \"" << columns_[c++] << "\": " << format_double(v);
            os_ << '}';
            first_ = false;
        }
    }

    void finish() {
        if (format_ == ReportFormat::json) os_ << "\n  ]\n}\n";
    }

  private:
    std::ostream& os_;
    ReportFormat format_;
    std::vector<std::string> columns_;
    bool first_ = true;
};

std::string tuple_echo(const std::vector<int>& tuple) {
    std::string text;
    for (std::size_t i = 0; i < tuple.size(); ++i)
        text += (i ? "," : "") + std::to_string(tuple[i]);
    return text;
}

// shortest round-trip form, for human-facing echo text
std::string echo_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string command_echo(const RunConfig& config) {
    switch (config.command) {
        case Command::sieve: return "sieve --limit " + std::to_string(config.limit);
        case Command::rep:
            return "rep --k " + tuple_echo(config.tuple) + " --limit " +
                   std::to_string(config.limit);
        case Command::window:
            return "window --k " + tuple_echo(config.tuple) + " --N " + std::to_string(config.n) +
                   " --H " + std::to_string(config.h);
        case Command::ladder: {
            std::string echo = "ladder --k " + tuple_echo(config.tuple) + " --N-list ";
            for (std::size_t i = 0; i < config.n_list.size(); ++i)
                echo += (i ? "," : "") + std::to_string(config.n_list[i]);
            echo += " --h-exp " + echo_double(config.h_exponent) + " --epsilon " +
                    echo_double(config.epsilon);
            if (config.rh_mode) echo += " --rh";
            return echo;
        }
        case Command::verify:
            return "verify --suite " + config.suite + " --seed " + std::to_string(config.seed);
        case Command::expsum:
            return "expsum --k " + tuple_echo(config.tuple) + " --N " + std::to_string(config.n);
    }
    return {};
}

int run_sieve(const RunConfig& config, std::ostream& os) {
    const LambdaTable table = sieve_lambda_cached(config.limit, config.cache_dir);
    const PsiPrefix psi = psi_prefix(table);
    StreamTable out(os, config.format, command_echo(config), {"n", "lambda", "psi"});
    for (std::int64_t n = 0; n <= table.limit; ++n)
        out.row(n, {table(n), psi.cumulative[static_cast<std::size_t>(n)]});
    out.finish();
    return 0;
}

int run_rep(const RunConfig& config, std::ostream& os) {
    const KTuple tuple(config.tuple);
    const auto root = static_cast<std::int64_t>(
        integer_kth_root(static_cast<std::uint64_t>(config.limit), tuple.k_min()));
    const LambdaTable table = sieve_lambda_cached(root + 1, config.cache_dir);
    const RepTable rt = rep_table(tuple, config.limit, table, config.strategy);
    StreamTable out(os, config.format, command_echo(config), {"n", "r"});
    for (std::int64_t n = 0; n <= rt.limit; ++n)
        out.row(n, {rt.values[static_cast<std::size_t>(n)]});
    out.finish();
    return 0;
}

int run_window(const RunConfig& config, std::ostream& os) {
    const KTuple tuple(config.tuple);
    const auto root = static_cast<std::int64_t>(
        integer_kth_root(static_cast<std::uint64_t>(config.n + config.h), tuple.k_min()));
    const LambdaTable table = sieve_lambda_cached(root + 1, config.cache_dir);
    const PsiPrefix psi = psi_prefix(table);
    const WindowReport w = window_sum(config.n, config.h, tuple, table, psi);

    ReportDocument doc;
    doc.command = command_echo(config);
    doc.columns = {"n", "h", "raw_sum", "weighted_sum", "main_term", "weighted_main_term",
                   "relative_deviation"};
    doc.add_row({Cell::count(w.n), Cell::count(w.h), Cell::num(w.raw_sum),
                 Cell::num(w.weighted_sum), Cell::num(w.main_term),
                 Cell::num(w.weighted_main_term), Cell::num(w.relative_deviation)});
    emit(doc, config.format, os);
    return 0;
}

int run_ladder(const RunConfig& config, std::ostream& os) {
    TheoremConfig theorem{KTuple(config.tuple)};
    theorem.epsilon = config.epsilon;
    theorem.rh_mode = config.rh_mode;
    theorem.c1 = config.c1;

    const auto rows = ladder_report(theorem, config.n_list, config.h_exponent);

    ReportDocument doc;
    doc.command = command_echo(config);
    doc.columns = {"n", "h", "in_range", "raw_sum", "main_term", "relative_deviation",
                   "phi_error_model", "unconditional_error_model"};
    for (const LadderRow& row : rows)
        doc.add_row({Cell::count(row.n), Cell::count(row.h), Cell::flag(row.in_range),
                     Cell::num(row.raw_sum), Cell::num(row.main_term),
                     Cell::num(row.relative_deviation), Cell::num(row.phi_error_model),
                     Cell::num(row.unconditional_error_model)});
    emit(doc, config.format, os);
    return 0;
}

int run_verify_cmd(const RunConfig& config, std::ostream& os) {
    VerifyOptions options;
    options.seed = config.seed;
    options.cache_dir = config.cache_dir;
    const ReportDocument doc = run_verify(config.suite, options);
    emit(doc, config.format, os);
    return doc.summary.fail_count > 0 ? 1 : 0;
}

int run_expsum(const RunConfig& config, std::ostream& os) {
    const auto k = config.tuple.front();
    const auto n_max = static_cast<std::int64_t>(std::ceil(std::pow(
                           config.trunc_tau * static_cast<double>(config.n), 1.0 / k))) + 1;
    const LambdaTable table = sieve_lambda_cached(n_max, config.cache_dir);

    const bool diagnostics = config.l2_xi > 0.0 || config.l2_tau > 0.0 || config.i4_b > 0.0;
    if (!diagnostics) {
        const ExpSumContext ctx(config.n, k, table, config.trunc_tau);
        std::int64_t grid = std::max<std::int64_t>(config.grid, 3);
        if (grid % 2 == 0) ++grid;
        const double step = (config.alpha_max - config.alpha_min) / static_cast<double>(grid - 1);
        std::vector<std::complex<double>> values(static_cast<std::size_t>(grid));
        ctx.eval_grid(config.alpha_min, step, values);

        ReportDocument doc;
        doc.command = command_echo(config);
        doc.columns = {"alpha", "re", "im", "abs"};
        for (std::int64_t j = 0; j < grid; ++j) {
            const double alpha = config.alpha_min + static_cast<double>(j) * step;
            const auto& v = values[static_cast<std::size_t>(j)];
            doc.add_row({Cell::num(alpha), Cell::num(v.real()), Cell::num(v.imag()),
                         Cell::num(std::abs(v))});
        }
        emit(doc, config.format, os);
        return 0;
    }

    ReportDocument doc;
    doc.command = command_echo(config);
    doc.columns = {"check", "value", "reference"};
    if (config.l2_xi > 0.0) {
        const ExpSumContext ctx(config.n, k, table, config.trunc_tau);
        const double mass = l2_e_tilde(ctx, config.l2_xi, config.grid);
        doc.add_row({Cell::str("l2 mass of E~ over [-xi, xi]"), Cell::num(mass),
                     Cell::num(l2_e_tilde_rh_shape(config.n, k, config.l2_xi))});
    }
    if (config.l2_tau > 0.0) {
        const ExpSumContext ctx(config.n, k, table, config.trunc_tau);
        const double mass = l2_s_tilde(ctx, config.l2_tau, config.grid);
        doc.add_row({Cell::str("l2 mass of S~ over [-tau, tau]"), Cell::num(mass),
                     Cell::num(l2_s_tilde_shape(config.n, k, config.l2_tau))});
    }
    if (config.i4_b > 0.0) {
        if (config.h < 1) throw UsageError("--H: the tail-integral diagnostic requires H >= 1");
        const KTuple tuple(config.tuple);
        const auto root = static_cast<std::int64_t>(std::ceil(std::pow(
            config.trunc_tau * static_cast<double>(config.n), 1.0 / tuple.k_min()))) + 1;
        const LambdaTable big = sieve_lambda_cached(root, config.cache_dir);
        const auto tail = restricted_tail_integral(config.n, config.h, config.i4_b, tuple, big,
                                                   config.grid);
        doc.add_row({Cell::str("tail integral over [-1/2,-B/H] u [B/H,1/2]"),
                     Cell::num(std::abs(tail)), Cell::num(0.0)});
    }
    emit(doc, config.format, os);
    return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.workers > 0) set_default_workers(config.workers);
    if (config.force_scalar) kernels::set_level(kernels::SimdLevel::scalar);

    std::ofstream file;
    std::ostream* sink = &out;
    if (!config.out_path.empty()) {
        file.open(config.out_path, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "ppra: cannot open output file " << config.out_path << '\n';
            return 3;
        }
        sink = &file;
    }

    int code = 0;
    try {
        switch (config.command) {
            case Command::sieve: code = run_sieve(config, *sink); break;
            case Command::rep: code = run_rep(config, *sink); break;
            case Command::window: code = run_window(config, *sink); break;
            case Command::ladder: code = run_ladder(config, *sink); break;
            case Command::verify: code = run_verify_cmd(config, *sink); break;
            case Command::expsum: code = run_expsum(config, *sink); break;
        }
    } catch (const UsageError& e) {
        err << "ppra: " << e.what() << '\n';
        return 2;
    } catch (const EmitError& e) {
        err << "ppra: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        // parameter combinations the library rejects are usage errors too
        err << "ppra: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "ppra: " << e.what() << '\n';
        return 1;
    }

    sink->flush();
    if (sink->fail()) {
        err << "ppra: write failure\n";
        return 3;
    }
    return code;
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    try {
        const RunConfig config = parse_args(args);
        return run(config, std::cout, std::cerr);
    } catch (const HelpRequested& help) {
        std::cout << help.text;
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "ppra: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace ppra::cli
