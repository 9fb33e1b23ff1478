#include "cli/commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <memory>
#include <stdexcept>

#include <CLI11.hpp>

#include "binomcoll/catalog.hpp"
#include "binomcoll/checkpoint.hpp"
#include "binomcoll/families.hpp"
#include "binomcoll/image.hpp"
#include "binomcoll/scan.hpp"
#include "binomcoll/sieve.hpp"
#include "cli/output.hpp"

namespace binomcoll::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OutputOptions {
    std::string format = "jsonl";
    std::string path;
};

void add_output_options(CLI::App* cmd, OutputOptions& opts)
{
    cmd->add_option("--format", opts.format, "jsonl, csv or table")
        ->check(CLI::IsMember({"jsonl", "csv", "table"}))
        ->capture_default_str();
    cmd->add_option("--output", opts.path, "write records to PATH instead of stdout");
}

// Owns the --output file when one is given.
class Output {
public:
    Output(const OutputOptions& opts, std::ostream& fallback)
    {
        std::ostream* stream = &fallback;
        if (!opts.path.empty()) {
            file_ = std::make_unique<std::ofstream>(opts.path, std::ios::trunc);
            if (!*file_) {
                throw IoError("cannot open output file " + opts.path);
            }
            stream = file_.get();
        }
        stream_ = stream;
        writer_ = std::make_unique<RecordWriter>(parse_format(opts.format), *stream_);
    }

    RecordWriter& writer() { return *writer_; }

    void finish()
    {
        stream_->flush();
        if (!*stream_) {
            throw IoError("failed writing records");
        }
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
    std::unique_ptr<RecordWriter> writer_;
};

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fixed6(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::optional<std::uint64_t> fit_u64(const mpz_class& v)
{
    if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) {
        return std::nullopt;
    }
    mpz_class hi = v >> 32;
    mpz_class lo = v - (hi << 32);
    return (std::uint64_t{hi.get_ui()} << 32) | lo.get_ui();
}

OutputRecord to_output(const ScanRecord& r)
{
    return std::visit(
        [](const auto& rec) {
            OutputRecord o;
            using T = std::decay_t<decltype(rec)>;
            if constexpr (std::is_same_v<T, CollisionRecord>) {
                o.type = "collision";
            }
            else {
                o.type = "near";
                o.d = rec.d.get_str();
            }
            o.n = rec.n;
            o.k = rec.k;
            o.m = rec.m;
            o.l = rec.l;
            o.value = rec.value.get_str();
            return o;
        },
        r);
}

// ---- scan -----------------------------------------------------------------

struct ScanArgs {
    std::uint64_t max_index = 0;
    std::string mode = "collisions";
    unsigned near_exponent = 3;
    unsigned precision_bits = 128;
    bool exact = false;
    OutputOptions output;
};

int cmd_scan(const ScanArgs& a, bool exponent_given, std::ostream& out, std::ostream& err)
{
    ScanConfig config;
    config.max_index = a.max_index;
    config.mode = a.mode == "near" ? ScanMode::Near : ScanMode::Collisions;
    config.near_exponent = a.near_exponent;
    config.precision_bits = a.precision_bits;
    config.exact_mode = a.exact;
    if (exponent_given && config.mode != ScanMode::Near) {
        throw UsageError("--near-exponent requires --mode near");
    }
    try {
        validate(config);
    }
    catch (const ScanConfigError& e) {
        throw UsageError(e.what());
    }

    const auto start = std::chrono::steady_clock::now();
    Output output(a.output, out);
    const ScanStats stats = scan(config, [&](const ScanRecord& r) { output.writer().write(to_output(r)); });
    output.finish();
    err << "scan: max-index=" << config.max_index << " records=" << output.writer().count()
        << " collisions=" << stats.collisions << " near=" << stats.near_collisions << " pops=" << stats.pops
        << " exact-compares=" << stats.exact_compares << " elapsed=" << seconds_since(start) << "s\n";
    return kExitOk;
}

// ---- sieve ----------------------------------------------------------------

struct SieveArgs {
    std::uint32_t k = 0;
    std::uint32_t l = 0;
    std::string max_value;
    std::uint32_t prime_bound = 500;
    std::string checkpoint;
    bool resume = false;
    unsigned jobs = 1;
    std::uint32_t stop_after = 0;
    OutputOptions output;
};

int cmd_sieve(const SieveArgs& a, std::ostream& out, std::ostream& err)
{
    SievePlan plan{a.k, a.l, mpz_class(expand_decimal(a.max_value), 10), a.prime_bound};
    try {
        validate(plan);
    }
    catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (a.resume && a.checkpoint.empty()) {
        throw UsageError("--resume requires --checkpoint PATH");
    }

    std::optional<SieveState> resumed;
    if (a.resume) {
        try {
            resumed = read_checkpoint(a.checkpoint);
        }
        catch (const SieveError& e) {
            throw IoError(e.what());
        }
        if (!(resumed->plan() == plan)) {
            throw UsageError("checkpoint " + a.checkpoint + " was written for a different plan");
        }
    }

    const auto start = std::chrono::steady_clock::now();
    Output output(a.output, out);
    RecordWriter& w = output.writer();

    const SieveState initial = resumed ? *resumed : SieveState(plan);
    OutputRecord range{"stat"};
    range.k = plan.k;
    range.l = plan.l;
    range.value = std::to_string(initial.survivor_count());
    range.extra("phase", std::string("range"))
        .extra("m_min", static_cast<std::int64_t>(initial.m_min()))
        .extra("m_max", static_cast<std::int64_t>(initial.m_max()))
        .extra("remaining", static_cast<std::int64_t>(initial.survivor_count()))
        .extra("primes_done", static_cast<std::int64_t>(initial.primes_done().size()));
    w.write(range);

    std::uint32_t applied = 0;
    SieveOptions options;
    options.jobs = a.jobs;
    options.on_prime = [&](const SieveState& state, const SieveProgress& progress) {
        OutputRecord r{"stat"};
        r.k = plan.k;
        r.l = plan.l;
        r.value = std::to_string(progress.remaining);
        r.extra("phase", std::string("prime"))
            .extra("prime", static_cast<std::int64_t>(progress.prime))
            .extra("remaining", static_cast<std::int64_t>(progress.remaining));
        w.write(r);
        if (!a.checkpoint.empty()) {
            write_checkpoint(a.checkpoint, state);
        }
        ++applied;
        return a.stop_after == 0 || applied < a.stop_after;
    };

    const SieveResult result = sieve_pair(plan, initial, options);
    if (!a.checkpoint.empty()) {
        write_checkpoint(a.checkpoint, result.state);
    }
    if (!result.completed) {
        output.finish();
        err << "sieve: stopped after " << applied << " primes with " << result.state.survivor_count()
            << " candidates left\n";
        return kExitOk;
    }
    for (const CollisionRecord& c : result.collisions) {
        w.write(to_output(ScanRecord{c}));
    }
    for (std::uint64_t m : result.false_survivors) {
        OutputRecord r{"survivor"};
        r.m = m;
        r.l = plan.l;
        r.value = binom_exact(m, plan.l).get_str();
        r.extra("verified", false);
        w.write(r);
    }
    output.finish();
    err << "sieve: k=" << plan.k << " l=" << plan.l << " candidates=" << initial.survivor_count()
        << " primes=" << result.state.primes_done().size() << " collisions=" << result.collisions.size()
        << " false-survivors=" << result.false_survivors.size() << " elapsed=" << seconds_since(start)
        << "s\n";
    return kExitOk;
}

// ---- akp ------------------------------------------------------------------

struct AkpArgs {
    std::uint32_t k = 0;
    std::uint32_t p = 0;
    std::string range;
    bool compare = false;
    unsigned jobs = 1;
    OutputOptions output;
};

std::pair<std::uint32_t, std::uint32_t> parse_range(const std::string& text)
{
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        throw UsageError("--prime-range expects A..B, got '" + text + "'");
    }
    try {
        return {static_cast<std::uint32_t>(std::stoul(text.substr(0, dots))),
                static_cast<std::uint32_t>(std::stoul(text.substr(dots + 2)))};
    }
    catch (const std::logic_error&) {
        throw UsageError("--prime-range expects A..B, got '" + text + "'");
    }
}

int cmd_akp(const AkpArgs& a, bool p_given, std::ostream& out, std::ostream& err)
{
    if (p_given == !a.range.empty()) {
        throw UsageError("give exactly one of --p and --prime-range");
    }
    if (a.k < 1) {
        throw UsageError("--k must be at least 1");
    }
    std::vector<std::uint32_t> primes;
    if (p_given) {
        if (!is_prime(a.p)) {
            throw UsageError(std::to_string(a.p) + " is not prime");
        }
        if (a.p <= a.k) {
            throw UsageError("need p > k (k! must be invertible mod p)");
        }
        primes.push_back(a.p);
    }
    else {
        const auto [lo, hi] = parse_range(a.range);
        for (std::uint32_t p : primes_up_to(hi)) {
            if (p >= lo && p > a.k) {
                primes.push_back(p);
            }
        }
    }

    std::vector<ImageStats> stats(primes.size());
    const std::size_t jobs = std::max(1u, a.jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < primes.size(); ++i) {
            stats[i] = image_mod_p(a.k, primes[i]);
        }
    }
    else {
        std::vector<std::future<void>> work;
        for (std::size_t t = 0; t < jobs; ++t) {
            work.push_back(std::async(std::launch::async, [&, t] {
                for (std::size_t i = t; i < primes.size(); i += jobs) {
                    stats[i] = image_mod_p(a.k, primes[i]);
                }
            }));
        }
        for (auto& f : work) {
            f.get();
        }
    }

    const mpq_class limit = density_limit(a.k);
    Output output(a.output, out);
    std::size_t mismatches = 0;
    for (const ImageStats& s : stats) {
        OutputRecord r{"stat"};
        r.k = s.k;
        r.value = std::to_string(s.size);
        r.extra("p", static_cast<std::int64_t>(s.p))
            .extra("A", static_cast<std::int64_t>(s.size))
            .extra("density", s.density.get_str())
            .extra("density_decimal", fixed6(s.density.get_d()))
            .extra("limit", limit.get_str())
            .extra("limit_decimal", fixed6(limit.get_d()));
        if (has_closed_form_A(s.k, s.p)) {
            const std::uint64_t closed = closed_form_A(s.k, s.p);
            r.extra("closed_form", static_cast<std::int64_t>(closed));
            if (a.compare) {
                r.extra("match", closed == s.size);
                mismatches += closed == s.size ? 0 : 1;
            }
        }
        output.writer().write(r);
    }
    output.finish();
    err << "akp: k=" << a.k << " primes=" << primes.size();
    if (a.compare) {
        err << " closed-form mismatches=" << mismatches;
    }
    err << "\n";
    return mismatches == 0 ? kExitOk : kExitVerifyFailed;
}

// ---- families -------------------------------------------------------------

void check_family_id(int id)
{
    if (id < 1 || id > 7) {
        throw UsageError("unknown family " + std::to_string(id) + " (expected 1..7)");
    }
}

OutputRecord identity_record(const IdentityEvaluation& ev)
{
    const IdentityFamily& fam = identity_family(ev.id);
    OutputRecord r{"verify"};
    r.n = fit_u64(ev.n_arg);
    r.k = fam.k_left;
    r.m = fit_u64(ev.a_arg);
    r.l = 2;
    r.d = ev.d.get_str();
    r.value = ev.right.get_str();
    r.extra("family", static_cast<std::int64_t>(ev.id))
        .extra("x", ev.x.get_str())
        .extra("holds", ev.holds)
        .extra("trivial", ev.trivial());
    return r;
}

int cmd_families_list(const OutputOptions& opts, std::ostream& out)
{
    Output output(opts, out);
    for (const IdentityFamily& fam : identity_families()) {
        OutputRecord r{"stat"};
        r.k = fam.k_left;
        r.l = 2;
        r.extra("family", static_cast<std::int64_t>(fam.id))
            .extra("n_poly", fam.n_poly.to_string())
            .extra("d_arg_poly", fam.d_arg_poly.to_string())
            .extra("a_poly", fam.a_poly.to_string())
            .extra("quality", identity_quality(fam.id).get_str());
        output.writer().write(r);
    }
    output.finish();
    return kExitOk;
}

int cmd_families_eval(int id, const std::string& x_text, const OutputOptions& opts, std::ostream& out)
{
    check_family_id(id);
    const mpz_class x(expand_decimal(x_text), 10);
    if (x < 1) {
        throw UsageError("--x must be at least 1");
    }
    const IdentityEvaluation ev = identity_eval(id, x);
    OutputRecord r = identity_record(ev);
    r.extra("n_arg", ev.n_arg.get_str())
        .extra("d_arg", ev.d_arg.get_str())
        .extra("a_arg", ev.a_arg.get_str())
        .extra("left_big", ev.left_big.get_str())
        .extra("left_small", ev.left_small.get_str())
        .extra("right", ev.right.get_str());
    Output output(opts, out);
    output.writer().write(r);
    output.finish();
    return ev.holds ? kExitOk : kExitVerifyFailed;
}

int cmd_families_verify(int id, std::uint64_t x_max, const OutputOptions& opts, std::ostream& out,
                        std::ostream& err)
{
    check_family_id(id);
    Output output(opts, out);
    std::uint64_t passed = 0;
    for (std::uint64_t x = 1; x <= x_max; ++x) {
        const IdentityEvaluation ev = identity_eval(id, mpz_class(static_cast<unsigned long>(x)));
        passed += ev.holds ? 1 : 0;
        output.writer().write(identity_record(ev));
    }
    output.finish();
    err << "families verify: family " << id << " holds for " << passed << "/" << x_max << " values of x\n";
    return passed == x_max ? kExitOk : kExitVerifyFailed;
}

int cmd_families_fib(unsigned max_i, unsigned exact_max_i, const OutputOptions& opts, std::ostream& out,
                     std::ostream& err)
{
    Output output(opts, out);
    bool ok = true;
    for (unsigned i = 1; i <= max_i; ++i) {
        const FibonacciReport rep = verify_fibonacci(i, i <= exact_max_i);
        OutputRecord r{"verify"};
        r.n = fit_u64(rep.member.n);
        r.k = fit_u64(rep.member.k);
        r.m = fit_u64(rep.member.m);
        r.l = fit_u64(rep.member.l);
        if (rep.exact_checked) {
            r.value = rep.value.get_str();
        }
        r.extra("i", static_cast<std::int64_t>(i)).extra("criterion", rep.criterion);
        r.extra("exact_checked", rep.exact_checked);
        if (rep.exact_checked) {
            r.extra("exact_equal", rep.exact_equal);
        }
        ok = ok && rep.criterion && (!rep.exact_checked || rep.exact_equal);
        output.writer().write(r);
    }
    output.finish();
    err << "families fib: " << max_i << " members, " << (ok ? "all hold" : "FAILURE") << "\n";
    return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_catalog_verify(const OutputOptions& opts, std::ostream& out, std::ostream& err)
{
    const CatalogReport report = verify_catalog();
    Output output(opts, out);
    for (const CatalogRowCheck& row : report.rows) {
        OutputRecord r{"verify"};
        r.n = row.entry.n;
        r.k = row.entry.k;
        r.m = row.entry.m;
        r.l = row.entry.l;
        if (row.entry.kind == CatalogKind::NearCollisionD1) {
            r.d = "1";
        }
        r.value = std::string(row.entry.value);
        r.extra("kind", std::string(to_string(row.entry.kind)))
            .extra("group", std::string(row.entry.group))
            .extra("ok", row.ok);
        if (!row.ok) {
            r.extra("detail", row.detail);
            err << "catalog mismatch: " << row.detail << "\n";
        }
        output.writer().write(r);
    }
    output.finish();
    err << "families catalog verify: " << report.rows.size() - report.mismatches << "/" << report.rows.size()
        << " rows verified\n";
    return report.ok() ? kExitOk : kExitVerifyFailed;
}

int cmd_catalog_export(const OutputOptions& opts, std::ostream& out)
{
    Output output(opts, out);
    for (const CatalogEntry& e : catalog()) {
        OutputRecord r{e.kind == CatalogKind::Collision ? "collision" : "near"};
        r.n = e.n;
        r.k = e.k;
        r.m = e.m;
        r.l = e.l;
        if (e.kind == CatalogKind::NearCollisionD1) {
            r.d = "1";
        }
        r.value = std::string(e.value);
        r.extra("group", std::string(e.group));
        output.writer().write(r);
    }
    output.finish();
    return kExitOk;
}

} // namespace

std::string expand_decimal(const std::string& text)
{
    auto digits_only = [](const std::string& s) {
        return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
    };
    const auto caret = text.find('^');
    if (caret == std::string::npos) {
        if (!digits_only(text)) {
            throw UsageError("expected a non-negative integer, got '" + text + "'");
        }
        return mpz_class(text, 10).get_str();
    }
    const std::string base = text.substr(0, caret);
    const std::string exponent = text.substr(caret + 1);
    if (!digits_only(base) || !digits_only(exponent) || exponent.size() > 6) {
        throw UsageError("expected BASE^EXPONENT, got '" + text + "'");
    }
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), mpz_class(base, 10).get_mpz_t(), std::stoul(exponent));
    return r.get_str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Search for and verify binomial coefficient collisions", "binomcoll"};
    app.require_subcommand(1);

    ScanArgs scan_args;
    auto* scan_cmd = app.add_subcommand("scan", "ordered enumeration of all C(m,k) with m-k < N");
    scan_cmd->add_option("--max-index", scan_args.max_index, "table size N")->required();
    scan_cmd->add_option("--mode", scan_args.mode, "collisions or near")
        ->check(CLI::IsMember({"collisions", "near"}))
        ->capture_default_str();
    auto* exponent_opt =
        scan_cmd->add_option("--near-exponent", scan_args.near_exponent, "admit d when C(m,l) >= d^E")
            ->capture_default_str();
    scan_cmd->add_option("--precision-bits", scan_args.precision_bits, "significand bits (8..128)")
        ->capture_default_str();
    scan_cmd->add_flag("--exact", scan_args.exact, "use exact integers throughout");
    add_output_options(scan_cmd, scan_args.output);

    SieveArgs sieve_args;
    auto* sieve_cmd = app.add_subcommand("sieve", "modular sieve for C(m,l) = C(n,k) with C(m,l) <= M");
    sieve_cmd->add_option("--k", sieve_args.k)->required();
    sieve_cmd->add_option("--l", sieve_args.l)->required();
    sieve_cmd->add_option("--max-value", sieve_args.max_value, "M, decimal or BASE^EXP")->required();
    sieve_cmd->add_option("--prime-bound", sieve_args.prime_bound)->capture_default_str();
    sieve_cmd->add_option("--checkpoint", sieve_args.checkpoint, "save state after every prime");
    sieve_cmd->add_flag("--resume", sieve_args.resume, "continue from --checkpoint");
    sieve_cmd->add_option("--jobs", sieve_args.jobs, "worker threads")->capture_default_str();
    sieve_cmd->add_option("--stop-after-primes", sieve_args.stop_after, "stop after applying this many primes");
    add_output_options(sieve_cmd, sieve_args.output);

    AkpArgs akp_args;
    auto* akp_cmd = app.add_subcommand("akp", "image size A(k,p) of n -> C(n,k) on F_p");
    akp_cmd->add_option("--k", akp_args.k)->required();
    auto* p_opt = akp_cmd->add_option("--p", akp_args.p, "single prime");
    akp_cmd->add_option("--prime-range", akp_args.range, "all primes in A..B");
    akp_cmd->add_flag("--compare-closed-form", akp_args.compare, "check the closed forms for k = 3, 4");
    akp_cmd->add_option("--jobs", akp_args.jobs, "worker threads")->capture_default_str();
    add_output_options(akp_cmd, akp_args.output);

    auto* fam_cmd = app.add_subcommand("families", "infinite families and the catalog");
    fam_cmd->require_subcommand(1);
    OutputOptions fam_out;
    int family_id = 0;
    std::string x_text;
    std::uint64_t x_max = 0;
    unsigned max_i = 0;
    unsigned exact_max_i = 4;

    auto* list_cmd = fam_cmd->add_subcommand("list", "the seven identity families");
    add_output_options(list_cmd, fam_out);
    auto* eval_cmd = fam_cmd->add_subcommand("eval", "evaluate one identity exactly");
    eval_cmd->add_option("--family", family_id)->required();
    eval_cmd->add_option("--x", x_text)->required();
    add_output_options(eval_cmd, fam_out);
    auto* verify_cmd = fam_cmd->add_subcommand("verify", "check an identity for x = 1..X");
    verify_cmd->add_option("--family", family_id)->required();
    verify_cmd->add_option("--x-max", x_max)->required();
    add_output_options(verify_cmd, fam_out);
    auto* fib_cmd = fam_cmd->add_subcommand("fib", "Fibonacci collision family");
    fib_cmd->add_option("--max-i", max_i)->required();
    fib_cmd->add_option("--exact-max-i", exact_max_i, "also compare binomials exactly up to this i")
        ->capture_default_str();
    add_output_options(fib_cmd, fam_out);
    auto* cat_cmd = fam_cmd->add_subcommand("catalog", "known collisions and d = 1 near collisions");
    cat_cmd->require_subcommand(1);
    auto* cat_verify = cat_cmd->add_subcommand("verify", "recompute every row");
    add_output_options(cat_verify, fam_out);
    auto* cat_export = cat_cmd->add_subcommand("export", "emit the catalog as records");
    add_output_options(cat_export, fam_out);

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("binomcoll");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (std::string& s : argv_store) {
        argv.push_back(s.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (scan_cmd->parsed()) {
            return cmd_scan(scan_args, exponent_opt->count() > 0, out, err);
        }
        if (sieve_cmd->parsed()) {
            return cmd_sieve(sieve_args, out, err);
        }
        if (akp_cmd->parsed()) {
            return cmd_akp(akp_args, p_opt->count() > 0, out, err);
        }
        if (list_cmd->parsed()) {
            return cmd_families_list(fam_out, out);
        }
        if (eval_cmd->parsed()) {
            return cmd_families_eval(family_id, x_text, fam_out, out);
        }
        if (verify_cmd->parsed()) {
            return cmd_families_verify(family_id, x_max, fam_out, out, err);
        }
        if (fib_cmd->parsed()) {
            return cmd_families_fib(max_i, exact_max_i, fam_out, out, err);
        }
        if (cat_verify->parsed()) {
            return cmd_catalog_verify(fam_out, out, err);
        }
        if (cat_export->parsed()) {
            return cmd_catalog_export(fam_out, out);
        }
    }
    catch (const UsageError& e) {
        err << "error: " << e.what() << "\nrun with --help for usage\n";
        return kExitUsage;
    }
    catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

} // namespace binomcoll::cli
