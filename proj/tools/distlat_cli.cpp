// distlat — command-line surface over the core library.
//
// Subcommands: spectrum, energy, window, bernays, construct, classify,
// verify, bench.  Every run that writes a file also writes a side-car
// manifest recording the command, configuration, input digests, and outputs;
// the artifact embeds the manifest digest so results stay traceable.
//
// Exit codes, one class per error path, each with a single machine-parsable
// stderr line:
//   0 success          2 parse (malformed input or usage)
//   3 precondition     4 budget exceeded
//   5 internal         6 verification failure
//   7 file I/O

#include "distlat/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace distlat;
using njson = nlohmann::ordered_json;

enum ExitCode : int {
    kOk = 0,
    kParse = 2,
    kPrecondition = 3,
    kBudget = 4,
    kInternal = 5,
    kVerifyFailed = 6,
    kIo = 7,
};

int fail_line(const char* cls, int code, const std::string& what) {
    std::fprintf(stderr, "distlat: error: class=%s exit=%d: %s\n", cls, code, what.c_str());
    return code;
}

struct GlobalOpts {
    std::uint64_t seed = 20250814;
    unsigned threads = 1;    // accepted for interface stability; execution is sequential
    std::uint64_t budget_bytes = std::uint64_t(1) << 31;
    std::string out;         // empty = stdout
};

// Per-run bookkeeping: collects the manifest while the handler works, then
// writes artifact + side-car manifest (or prints to stdout when no --out).
struct Run {
    GlobalOpts g;
    RunManifest manifest;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void config(const std::string& key, const std::string& value) {
        manifest.config.emplace_back(key, value);
    }
    std::string input(const std::string& path) {
        manifest.inputs.emplace_back(path, file_digest(path));
        return read_text_file(path);
    }
    std::string digest() const { return manifest.digest(); }

    int emit(const std::string& artifact) {
        if (g.out.empty()) {
            std::fwrite(artifact.data(), 1, artifact.size(), stdout);
            return kOk;
        }
        write_text_file(g.out, artifact);
        manifest.outputs.push_back(g.out);
        manifest.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_text_file(g.out + ".manifest.json", manifest.to_json());
        std::fprintf(stderr, "distlat: wrote %s (manifest %s)\n", g.out.c_str(),
                     digest().c_str());
        return kOk;
    }
};

std::string join_argv(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

std::string dump(const njson& j) { return j.dump(2) + "\n"; }

LatticePtr lattice_from_arg(Run& run, const std::string& arg) {
    if (LatticeModel::is_builtin_label(arg)) {
        return std::make_shared<LatticeModel>(LatticeModel::builtin(arg));
    }
    return lattice_from_json(run.input(arg), arg);
}

// ---------------------------------------------------------------------------
// spectrum --in points.json [--format csv|json]

struct SpectrumOpts {
    std::string in;
    std::string format = "csv";
};

int cmd_spectrum(Run& run, const SpectrumOpts& o) {
    run.config("in", o.in);
    run.config("format", o.format);
    const LatticePointSet pts = pointset_from_json(run.input(o.in), o.in);
    const DistanceSpectrum spec = distance_spectrum(pts);
    const QOrdResult q = q_ord(spec);
    std::fprintf(stderr, "spectrum: n=%llu k=%zu total_mass=%s q_ord=%s floor_holds=%s\n",
                 static_cast<unsigned long long>(spec.n), spec.k(),
                 u128_str(spec.total_mass()).c_str(), u128_str(q.q_ord).c_str(),
                 q.floor_holds ? "true" : "false");
    const std::string artifact = o.format == "json"
                                     ? spectrum_to_json(spec, pts.model(), run.digest())
                                     : spectrum_to_csv(spec, pts.model().scale(), run.digest());
    return run.emit(artifact);
}

// ---------------------------------------------------------------------------
// energy --in points.json [--theta x]

struct EnergyOpts {
    std::string in;
    double theta = 0.5;
};

int cmd_energy(Run& run, const EnergyOpts& o) {
    run.config("in", o.in);
    run.config("theta", std::to_string(o.theta));
    const LatticePointSet pts = pointset_from_json(run.input(o.in), o.in);
    const DistanceSpectrum spec = distance_spectrum(pts);
    const QOrdResult q = q_ord(spec);
    const AdditiveEnergy e = additive_energy(pts);
    const ShiftHistogram shifts = shift_histogram(pts);
    const LineHistogram lines = line_histogram(pts);
    const TopCapSplit split = top_cap_split(spec, o.theta);

    njson j;
    j["schema"] = "distlat.energy/1";
    j["manifest"] = run.digest();
    j["n"] = spec.n;
    j["k"] = spec.k();
    j["q_ord"] = u128_str(q.q_ord);
    j["cs_floor"] = rat_str(q.cs_floor);
    j["floor_holds"] = q.floor_holds;
    j["energy_with_diagonal"] = u128_str(e.with_diagonal);
    j["energy_offdiagonal"] = u128_str(e.offdiagonal);
    j["max_shift_count"] = shifts.max_count();
    j["max_line"] = lines.max_line();
    {
        njson s;
        s["theta"] = o.theta;
        s["cap_count"] = split.cap_count;
        s["t_star"] = split.t_star;
        s["top_mass"] = u128_str(split.top_mass);
        s["bottom_mass"] = u128_str(split.bottom_mass);
        s["cs_bound"] = split.cs_bound;
        s["bound_holds"] = split.bound_holds;
        j["top_cap"] = std::move(s);
    }
    return run.emit(dump(j));
}

// ---------------------------------------------------------------------------
// window --spec window.json [--check none|covering|palette] [--inner-c p/q]

struct WindowOpts {
    std::string spec;
    std::string check = "none";
    std::string inner_c = "1/4";
};

int cmd_window(Run& run, const WindowOpts& o) {
    run.config("spec", o.spec);
    run.config("check", o.check);
    const WindowSpecFile ws = window_spec_from_json(run.input(o.spec), o.spec);

    if (ws.shape == "rect") {
        // Closed forms: no enumeration, any rectangle size.
        njson j;
        j["schema"] = "distlat.rect/1";
        j["manifest"] = run.digest();
        j["lattice"] = ws.model->label();
        j["a0"] = njson::array({ws.a0.x, ws.a0.y});
        j["L"] = njson::array({ws.l1, ws.l2});
        j["n"] = u128_str(u128(ws.l1) * u128(ws.l2));
        j["energy_with_diagonal"] = u128_str(rect_energy_exact(ws.l1, ws.l2));
        return run.emit(dump(j));
    }

    const DiskWindow w = build_disk_window(ws.model, ws.tau, ws.z, ws.r_sq);
    if (o.check == "covering") {
        return run.emit(covering_to_json(verify_diffset_covering(w), run.digest()));
    }
    if (o.check == "palette") {
        run.config("inner-c", o.inner_c);
        const Rat c = parse_rat(o.inner_c);
        const InnerRegularCert cert = certify_inner_regular(w, c);
        const PaletteReport pal = palette_bounds_check(w, cert, run.g.budget_bytes);
        njson j;
        j["schema"] = "distlat.palette/1";
        j["manifest"] = run.digest();
        j["window_size"] = w.size();
        j["c"] = rat_str(c);
        j["cert_valid"] = cert.valid;
        j["aspect_bound"] = cert.aspect_bound;
        j["core_removed"] = cert.core_removed;
        j["distinct"] = pal.distinct;
        j["lower_key"] = i128_str(pal.lower_key);
        j["upper_key"] = i128_str(pal.upper_key);
        j["r_lower"] = pal.r_lower;
        j["r_upper"] = pal.r_upper;
        j["sandwich_holds"] = pal.sandwich_holds;
        j["slack_lower"] = pal.slack_lower;
        j["slack_upper"] = pal.slack_upper;
        return run.emit(dump(j));
    }
    return run.emit(window_report_to_json(w, window_spectrum(w, run.g.budget_bytes),
                                          run.digest()));
}

// ---------------------------------------------------------------------------
// bernays --form a,b,c --T N [--grid-points g] [--save-cache path]

struct BernaysOpts {
    std::string form = "1,0,1";
    std::uint64_t t = 1000000;
    unsigned grid_points = 4;
    std::string save_cache;
};

QuadForm parse_form(const std::string& text) {
    long long a = 0, b = 0, c = 0;
    char tail = '\0';
    if (std::sscanf(text.c_str(), "%lld,%lld,%lld%c", &a, &b, &c, &tail) != 3) {
        throw parse_error("form must be \"a,b,c\" integers, got '" + text + "'");
    }
    return QuadForm{a, b, c};
}

int cmd_bernays(Run& run, const BernaysOpts& o) {
    run.config("form", o.form);
    run.config("T", std::to_string(o.t));
    run.config("grid-points", std::to_string(o.grid_points));
    const QuadForm form = parse_form(o.form);
    if (o.grid_points < 1 || o.grid_points > 24) {
        throw precondition_error("grid-points must be in [1, 24]");
    }
    // Halving grid ending at T: T/2^(g-1), ..., T/2, T.
    std::vector<std::uint64_t> grid;
    for (unsigned i = o.grid_points; i-- > 0;) grid.push_back(o.t >> i);

    const BernaysEstimate est = bernays_estimate(form, grid, run.g.budget_bytes);
    std::fprintf(stderr, "bernays: form=%s R(T)=%llu c_fit=%.6f%s\n", form.str().c_str(),
                 static_cast<unsigned long long>(est.counts.back()), est.c_fit,
                 est.low_confidence ? " (low confidence)" : "");
    if (!o.save_cache.empty()) {
        represented_upto(form, o.t, run.g.budget_bytes).save(o.save_cache);
        run.manifest.outputs.push_back(o.save_cache);
    }
    return run.emit(bernays_to_json(est, form, run.digest()));
}

// ---------------------------------------------------------------------------
// construct --lattice L (--k N | --ks a,b,c) [--center ...] [--c-est x]

struct ConstructOpts {
    std::string lattice = "hex";
    std::uint64_t k = 0;
    std::string ks;
    std::string center = "lattice";
    double c_est = 0.0;
};

CenterChoice parse_center(const std::string& c) {
    if (c == "lattice") return CenterChoice::Lattice;
    if (c == "deephole") return CenterChoice::DeepHole;
    if (c == "edge") return CenterChoice::Edge;
    throw parse_error("center must be lattice, deephole, or edge");
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoull(item));
        } catch (const std::exception&) {
            throw parse_error("expected comma-separated integers, got '" + text + "'");
        }
    }
    if (out.empty()) throw parse_error("expected at least one integer in '" + text + "'");
    return out;
}

int cmd_construct(Run& run, const ConstructOpts& o) {
    run.config("lattice", o.lattice);
    run.config("center", o.center);
    run.config("c-est", std::to_string(o.c_est));
    const LatticePtr model = lattice_from_arg(run, o.lattice);
    const CenterChoice center = parse_center(o.center);

    if (!o.ks.empty()) {
        run.config("ks", o.ks);
        const auto grid = parse_u64_list(o.ks);
        const LowerBoundTable table =
            lower_bound_table(model, grid, o.c_est, center, kDefaultWindowBudget,
                              run.g.budget_bytes);
        return run.emit(lower_bound_table_to_csv(table, run.digest()));
    }
    if (o.k == 0) throw precondition_error("construct needs --k or --ks");
    run.config("k", std::to_string(o.k));
    const ExtremalWitness wit = construct_for_k(model, o.k, center, o.c_est,
                                                kDefaultWindowBudget, run.g.budget_bytes);
    std::fprintf(stderr, "construct: k=%llu n=%llu k_actual=%llu ratio_n=%.4f maximal=%s\n",
                 static_cast<unsigned long long>(wit.k_target),
                 static_cast<unsigned long long>(wit.n),
                 static_cast<unsigned long long>(wit.k_actual), wit.ratio_n,
                 wit.maximal ? "true" : "false");
    return run.emit(witness_to_json(wit, model->label(), run.digest()));
}

// ---------------------------------------------------------------------------
// classify --in points.json [threshold knobs]

struct ClassifyOpts {
    std::string in;
    ClassifierConfig config;
};

int cmd_classify(Run& run, const ClassifyOpts& o) {
    run.config("in", o.in);
    run.config("sigma", std::to_string(o.config.sigma));
    run.config("c-line", std::to_string(o.config.c_line));
    run.config("c-shift", std::to_string(o.config.c_shift));
    run.config("alpha-energy", std::to_string(o.config.alpha_energy));
    run.config("eta", std::to_string(o.config.eta_override));
    const LatticePointSet pts = pointset_from_json(run.input(o.in), o.in);
    const ClassificationReport rep = classify(pts, o.config);
    std::fprintf(stderr, "classify: n=%llu k=%llu outcome=%s\n",
                 static_cast<unsigned long long>(rep.n),
                 static_cast<unsigned long long>(rep.k), outcome_str(rep.outcome).c_str());
    return run.emit(classification_to_json(rep, run.digest()));
}

// ---------------------------------------------------------------------------
// verify [--suite tag|all] [--trials N] [--nmax N]

struct VerifyOpts {
    std::string suite = "all";
    SuiteOptions options;
};

int cmd_verify(Run& run, const VerifyOpts& o) {
    run.config("suite", o.suite);
    run.config("seed", std::to_string(o.options.seed));
    run.config("trials", std::to_string(o.options.trials));
    run.config("nmax", std::to_string(o.options.nmax));

    std::vector<SuiteResult> results;
    if (o.suite == "all") {
        results = run_all_suites(o.options);
    } else {
        results.push_back(run_suite(o.suite, o.options));
    }

    std::uint64_t failed = 0;
    for (const SuiteResult& r : results) {
        std::printf("[verify] tag=%-13s kind=%-7s checks=%-8llu failures=%-4llu "
                    "statistic=%-12.6g result=%s\n",
                    r.tag.c_str(), suite_kind_str(r.kind).c_str(),
                    static_cast<unsigned long long>(r.checks),
                    static_cast<unsigned long long>(r.failures), r.statistic,
                    r.passed ? "PASS" : "FAIL");
        if (!r.passed) {
            ++failed;
            if (!r.detail.empty()) std::printf("[verify]   %s\n", r.detail.c_str());
        }
    }
    std::printf("[verify] suites=%zu failed=%llu result=%s\n", results.size(),
                static_cast<unsigned long long>(failed), failed == 0 ? "PASS" : "FAIL");

    if (!run.g.out.empty()) {
        const int rc = run.emit(verify_results_to_json(results, run.digest()));
        if (rc != kOk) return rc;
    }
    return failed == 0 ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------
// bench [--workload all|spectrum|census|tiny] [--points N] [--T N] [--history f]

struct BenchOpts {
    std::string workload = "all";
    std::uint64_t points = 1000000;
    std::uint64_t t = 10000000;
    std::string history;
};

std::string cpu_model() {
    std::ifstream in("/proc/cpuinfo");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("model name", 0) == 0) {
            const auto pos = line.find(": ");
            if (pos != std::string::npos) return line.substr(pos + 2);
        }
    }
    return "unknown";
}

int cmd_bench(Run& run, const BenchOpts& o) {
    run.config("workload", o.workload);
    run.config("points", std::to_string(o.points));
    run.config("T", std::to_string(o.t));
    using clock = std::chrono::steady_clock;
    const auto seconds_since = [](clock::time_point a) {
        return std::chrono::duration<double>(clock::now() - a).count();
    };

    njson rows = njson::array();
    const auto add_row = [&](const char* name, std::uint64_t param, double secs,
                             double throughput, const std::string& detail) {
        njson r;
        r["name"] = name;
        r["param"] = param;
        r["seconds"] = secs;
        r["per_second"] = throughput;
        r["detail"] = detail;
        std::fprintf(stderr, "bench: %-8s param=%-10llu %8.3fs  %.3g/s  %s\n", name,
                     static_cast<unsigned long long>(param), secs, throughput, detail.c_str());
        rows.push_back(std::move(r));
    };

    if (o.workload == "all" || o.workload == "spectrum") {
        // Hex disk window sized for roughly the requested point count:
        // n ~ pi R^2 / covol with covol = sqrt(3)/2.
        const auto hex = std::make_shared<LatticeModel>(LatticeModel::builtin("hex"));
        const Rat r_sq(static_cast<Int>(o.points * 2757ull / 10000ull) + 1);
        const auto t0 = clock::now();
        const DiskWindow w = build_disk_window(hex, {}, {}, r_sq, o.points * 2 + 16);
        const DistanceSpectrum spec = window_spectrum(w, run.g.budget_bytes);
        const double secs = seconds_since(t0);
        const double pairs = static_cast<double>(spec.n) * (static_cast<double>(spec.n) - 1.0);
        add_row("spectrum", o.points, secs, static_cast<double>(spec.n) / secs,
                "n=" + std::to_string(spec.n) + " k=" + std::to_string(spec.k()) +
                    " pairs/s=" + std::to_string(pairs / secs));
    }
    if (o.workload == "all" || o.workload == "census") {
        const auto t0 = clock::now();
        const RepTable table = represented_upto(QuadForm{1, 0, 1}, o.t, run.g.budget_bytes);
        const double secs = seconds_since(t0);
        add_row("census", o.t, secs, static_cast<double>(o.t) / secs,
                "R(T)=" + std::to_string(table.count()));
    }
    if (o.workload == "all" || o.workload == "tiny") {
        const auto z2 = std::make_shared<LatticeModel>(LatticeModel::builtin("Z2"));
        const auto pts = LatticePointSet::make(z2, {}, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
        const auto t0 = clock::now();
        const DistanceSpectrum spec = distance_spectrum(pts);
        const double secs = seconds_since(t0);
        add_row("tiny", 4, secs, 4.0 / std::max(secs, 1e-12),
                "k=" + std::to_string(spec.k()));
    }

    njson j;
    j["schema"] = "distlat.bench/1";
    j["manifest"] = run.digest();
    j["version"] = library_version();
    j["machine"] = cpu_model();
    j["rows"] = rows;

    if (!o.history.empty()) {
        std::ofstream h(o.history, std::ios::app);
        if (!h) throw io_error("cannot open history for append: " + o.history);
        h << j.dump() << "\n";
    }
    return run.emit(dump(j));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"distlat: exact distance spectra, censuses, and structure "
                 "classification on rank-2 arithmetic lattices"};
    app.require_subcommand(0, 1);
    app.set_version_flag("--version", library_version());

    GlobalOpts g;
    app.add_option("--seed", g.seed, "RNG seed for randomized sweeps")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads (reserved; execution is sequential)")
        ->capture_default_str();
    app.add_option("--budget-bytes", g.budget_bytes, "memory budget for sweeps and censuses")
        ->capture_default_str();
    app.add_option("--out", g.out, "output path (default: stdout); a .manifest.json side-car "
                                   "is written next to it");

    SpectrumOpts so;
    auto* spectrum = app.add_subcommand("spectrum", "distance spectrum of a point-set file");
    spectrum->fallthrough();
    spectrum->add_option("--in", so.in, "point-set JSON")->required();
    spectrum->add_option("--format", so.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    EnergyOpts eo;
    auto* energy = app.add_subcommand("energy", "energy, moments, and line statistics");
    energy->fallthrough();
    energy->add_option("--in", eo.in, "point-set JSON")->required();
    energy->add_option("--theta", eo.theta, "top-cap quantile in [0,1)")->capture_default_str();

    WindowOpts wo;
    auto* window = app.add_subcommand("window", "disk/rectangle window reports and checks");
    window->fallthrough();
    window->add_option("--spec", wo.spec, "window spec JSON")->required();
    window->add_option("--check", wo.check, "none, covering, or palette")
        ->check(CLI::IsMember({"none", "covering", "palette"}));
    window->add_option("--inner-c", wo.inner_c, "inner-regularity margin (rational)")
        ->capture_default_str();

    BernaysOpts bo;
    auto* bernays = app.add_subcommand("bernays", "represented-value census and constant fit");
    bernays->fallthrough();
    bernays->add_option("--form", bo.form, "binary quadratic form a,b,c")->capture_default_str();
    bernays->add_option("--T", bo.t, "census bound")->capture_default_str();
    bernays->add_option("--grid-points", bo.grid_points, "halving grid size ending at T")
        ->capture_default_str();
    bernays->add_option("--save-cache", bo.save_cache, "write the bit table to this path");

    ConstructOpts co;
    auto* construct = app.add_subcommand("construct", "maximal window witness for a target k");
    construct->fallthrough();
    construct->add_option("--lattice", co.lattice, "built-in label or lattice JSON path")
        ->capture_default_str();
    construct->add_option("--k", co.k, "distinct-distance target");
    construct->add_option("--ks", co.ks, "comma-separated targets; emits the CSV table");
    construct->add_option("--center", co.center, "lattice, deephole, or edge")
        ->capture_default_str();
    construct->add_option("--c-est", co.c_est, "census constant for prediction columns")
        ->capture_default_str();

    ClassifyOpts lo;
    auto* classify_cmd = app.add_subcommand("classify", "structure trichotomy with certificates");
    classify_cmd->fallthrough();
    classify_cmd->add_option("--in", lo.in, "point-set JSON")->required();
    classify_cmd->add_option("--sigma", lo.config.sigma, "quantile exponent")
        ->capture_default_str();
    classify_cmd->add_option("--c-line", lo.config.c_line, "line-heaviness fraction")
        ->capture_default_str();
    classify_cmd->add_option("--c-shift", lo.config.c_shift, "popular-shift fraction")
        ->capture_default_str();
    classify_cmd->add_option("--alpha-energy", lo.config.alpha_energy, "energy gate multiplier")
        ->capture_default_str();
    classify_cmd->add_option("--eta", lo.config.eta_override, "localization deficiency override")
        ->capture_default_str();

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "run property-verification suites");
    verify->fallthrough();
    verify->add_option("--suite", vo.suite, "suite tag or 'all'")->capture_default_str();
    verify->add_option("--trials", vo.options.trials, "randomized trials per suite")
        ->capture_default_str();
    verify->add_option("--nmax", vo.options.nmax, "max point-set size for random instances")
        ->capture_default_str();

    BenchOpts no;
    auto* bench = app.add_subcommand("bench", "throughput measurements");
    bench->fallthrough();
    bench->add_option("--workload", no.workload, "all, spectrum, census, or tiny")
        ->check(CLI::IsMember({"all", "spectrum", "census", "tiny"}));
    bench->add_option("--points", no.points, "target window size for the spectrum workload")
        ->capture_default_str();
    bench->add_option("--T", no.t, "census bound for the census workload")
        ->capture_default_str();
    bench->add_option("--history", no.history, "append one JSON line per run to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail_line("parse", kParse, e.what());
    }

    if (app.get_subcommands().empty()) {
        std::cout << app.help();
        return kOk;
    }

    Run run;
    run.g = g;
    run.manifest.command = join_argv(argc, argv);
    run.manifest.version = library_version();
    run.config("cmd", app.get_subcommands().front()->get_name());
    run.config("seed", std::to_string(g.seed));
    run.config("threads", std::to_string(g.threads));
    run.config("budget-bytes", std::to_string(g.budget_bytes));
    vo.options.seed = g.seed;

    try {
        if (spectrum->parsed()) return cmd_spectrum(run, so);
        if (energy->parsed()) return cmd_energy(run, eo);
        if (window->parsed()) return cmd_window(run, wo);
        if (bernays->parsed()) return cmd_bernays(run, bo);
        if (construct->parsed()) return cmd_construct(run, co);
        if (classify_cmd->parsed()) return cmd_classify(run, lo);
        if (verify->parsed()) return cmd_verify(run, vo);
        if (bench->parsed()) return cmd_bench(run, no);
        return fail_line("internal", kInternal, "no handler for parsed subcommand");
    } catch (const parse_error& e) {
        return fail_line("parse", kParse, e.what());
    } catch (const precondition_error& e) {
        return fail_line("precondition", kPrecondition, e.what());
    } catch (const budget_error& e) {
        return fail_line("budget", kBudget, e.what());
    } catch (const io_error& e) {
        return fail_line("io", kIo, e.what());
    } catch (const internal_error& e) {
        return fail_line("internal", kInternal, e.what());
    } catch (const std::exception& e) {
        return fail_line("internal", kInternal, e.what());
    }
}
