// SPDX-License-Identifier: Apache-2.0
// isacaf-cli: batch front end over the isacaf C API.
#include "handles.hpp"
#include "plot.hpp"
#include "run_dir.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

using json = nlohmann::ordered_json;

namespace cli {
namespace {

constexpr double kCellZLimit = 4.0;
constexpr double kSliceZLimit = 3.0;
constexpr double kExactTolerance = 1e-10;
constexpr double kEislTheoryTolerance = 1e-8;
constexpr double kEislMcTolerance = 0.05;
constexpr const char* kHeatmapScale = "dB relative to the (0,0) mainlobe, clipped at -80 dB";

struct Options {
    // basis
    std::string waveform = "ofdm";
    std::size_t otfs_c = 0;
    std::optional<double> afdm_c1;
    std::optional<double> afdm_p;
    double afdm_c2 = 0.0;
    std::optional<std::uint64_t> haar_seed;
    std::string basis_file;
    // alphabet
    std::string constellation = "16qam";
    std::string constellation_file;
    bool normalize = false;
    double moment_tol = 1e-9;
    // run
    std::size_t n = 0;
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    std::string out;
    bool plots = false;
    bool strict = false;
    bool force = false;
    std::string mode = "compare";
    std::string format = "long";
    std::string theory_method = "fast";
    unsigned threads = 0;
    std::size_t budget = 0;
    std::string axis = "both";
    // eisl sweep
    std::vector<std::string> waveforms = {"sc", "ofdm", "haar"};
    std::vector<std::string> constellations = {"16qam", "16psk"};
    std::vector<std::size_t> ns = {16, 32, 64, 128};
    // compare
    std::string grid_a, grid_b;
    double floor = -1.0;
};

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Context {
    Options& o;
    std::string subcommand;
    std::vector<std::string> argv;
    std::string config_text;
    json seeds = json::object();
    json config = json::object();
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

// ---- construction ----------------------------------------------------------

struct BasisChoice {
    Basis basis;
    std::string waveform;
    json params = json::object();
};

BasisChoice make_basis(Context& ctx, const std::string& waveform_in, std::size_t n) {
    const Options& o = ctx.o;
    const std::string w = lower(waveform_in);
    BasisChoice r;
    r.waveform = w;
    isacaf_basis* b = nullptr;
    if (n == 0 && w != "custom") throw Failure(kValidation, "--n must be positive");
    if (w == "sc") {
        check(isacaf_basis_sc(n, &b), "SC basis");
    } else if (w == "ofdm") {
        check(isacaf_basis_ofdm(n, &b), "OFDM basis");
    } else if (w == "otfs") {
        if (o.otfs_c == 0) throw Failure(kValidation, "OTFS needs --otfs-c (number of Doppler bins C, with N = C L)");
        if (n % o.otfs_c != 0)
            throw Failure(kValidation, "--otfs-c " + std::to_string(o.otfs_c) + " does not divide N = " + std::to_string(n));
        check(isacaf_basis_otfs(o.otfs_c, n / o.otfs_c, &b), "OTFS basis");
        r.params = {{"C", o.otfs_c}, {"L", n / o.otfs_c}};
    } else if (w == "afdm") {
        if (o.afdm_c1.has_value() == o.afdm_p.has_value())
            throw Failure(kValidation, "AFDM needs exactly one of --afdm-c1 or --afdm-p");
        const double c1 = o.afdm_c1 ? *o.afdm_c1 : *o.afdm_p / (2.0 * static_cast<double>(n));
        check(isacaf_basis_afdm(n, c1, o.afdm_c2, &b), "AFDM basis");
        r.params = {{"c1", c1}, {"c2", o.afdm_c2}};
    } else if (w == "haar") {
        const std::uint64_t s = o.haar_seed ? *o.haar_seed : isacaf_labelled_seed(o.seed, "Haar");
        check(isacaf_basis_haar(n, s, &b), "Haar basis");
        r.params = {{"seed", s}};
        ctx.seeds["haar"] = s;
    } else if (w == "custom") {
        if (o.basis_file.empty()) throw Failure(kValidation, "custom waveform needs --basis-file");
        check(isacaf_basis_load(o.basis_file.c_str(), &b), "basis file");
        r.basis.reset(b);
        if (n != 0 && isacaf_basis_size(b) != n)
            throw Failure(kValidation, "basis file is " + std::to_string(isacaf_basis_size(b)) + " x " +
                                           std::to_string(isacaf_basis_size(b)) + " but --n is " + std::to_string(n));
        r.params = {{"file", o.basis_file}};
        return r;
    } else {
        throw Failure(kValidation, "unknown waveform '" + waveform_in + "' (sc, ofdm, otfs, afdm, haar, custom)");
    }
    r.basis.reset(b);
    return r;
}

Constellation make_constellation(const Options& o, const std::string& name) {
    isacaf_constellation* c = nullptr;
    if (!o.constellation_file.empty())
        check(isacaf_constellation_load(o.constellation_file.c_str(), o.normalize ? 1 : 0, &c), "constellation file");
    else
        check(isacaf_constellation_by_name(name.c_str(), &c), "constellation");
    return Constellation(c);
}

isacaf_moments moments_of(const Options& o, const isacaf_constellation* c) {
    isacaf_moments m{};
    check(isacaf_constellation_moments(c, o.moment_tol, &m), "moments");
    return m;
}

json moments_json(const isacaf_constellation* c, const isacaf_moments& m) {
    return {{"constellation", isacaf_constellation_name(c)},
            {"size", isacaf_constellation_size(c)},
            {"mean", {m.mean_re, m.mean_im}},
            {"power", m.power},
            {"pseudo_variance", {m.pseudo_variance_re, m.pseudo_variance_im}},
            {"kurtosis", m.kurtosis},
            {"fourth_moment", m.fourth_moment},
            {"tolerance", m.tolerance},
            {"assumption1_ok", m.assumption1_ok != 0}};
}

// Refuses (--strict) or warns about alphabets outside the closed-form assumptions.
double checked_mu4(const Options& o, const isacaf_constellation* c) {
    const auto m = moments_of(o, c);
    if (!m.assumption1_ok) {
        const std::string msg = std::string("constellation ") + isacaf_constellation_name(c) +
                                " is not zero-mean, unit-power and circular (zero pseudo-variance)";
        if (o.strict) throw Failure(kValidation, msg);
        std::cerr << "warning: " << msg << "; closed forms do not apply\n";
    }
    return m.kurtosis;
}

isacaf_theory_method theory_method(const Options& o) {
    const auto m = lower(o.theory_method);
    if (m == "fast") return ISACAF_THEORY_FAST;
    if (m == "general") return ISACAF_THEORY_GENERAL;
    throw Failure(kValidation, "--theory-method must be fast or general");
}

isacaf_grid_format grid_format(const Options& o) {
    const auto f = lower(o.format);
    if (f == "long") return ISACAF_GRID_LONG;
    if (f == "dense") return ISACAF_GRID_DENSE;
    throw Failure(kValidation, "--format must be long or dense");
}

Grid theory_grid(const Options& o, const isacaf_basis* b, double mu4) {
    isacaf_grid* g = nullptr;
    check(isacaf_theory_grid(b, mu4, theory_method(o), &g), "closed-form grid");
    return Grid(g);
}

Grid mc_grid(Context& ctx, const isacaf_basis* b, const isacaf_constellation* c, const std::string& label,
             isacaf_mc_summary* summary) {
    if (ctx.o.trials == 0) throw Failure(kValidation, "--trials must be positive");
    isacaf_mc_options opts{};
    opts.trials = ctx.o.trials;
    opts.seed = isacaf_labelled_seed(ctx.o.seed, label.c_str());
    opts.threads = ctx.o.threads;
    ctx.seeds["monte_carlo"][label] = opts.seed;
    isacaf_grid* g = nullptr;
    check(isacaf_mc_grid(b, c, &opts, &g, summary), "Monte Carlo");
    return Grid(g);
}

void write_grid(RunDir& dir, const Options& o, const isacaf_grid* g, const std::string& name) {
    check(isacaf_grid_write_csv(g, dir.file(name).c_str(), grid_format(o)), name.c_str());
}

json comparison_json(const isacaf_comparison& c) {
    json j = {{"cells", c.cells},           {"max_abs", c.max_abs},     {"max_rel", nullable(c.max_rel)},
              {"rel_cells", c.rel_cells},   {"rms", c.rms},             {"has_z", c.has_z != 0}};
    if (c.has_z) {
        j["max_abs_z"] = c.max_abs_z;
        j["cells_beyond_3"] = c.cells_beyond_3;
        j["cells_beyond_4"] = c.cells_beyond_4;
    }
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void finish(Context& ctx, RunDir& dir) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count();
    dir.write_text("run.toml", ctx.config_text);
    auto outputs = dir.outputs();
    outputs.push_back("manifest.json");
    json seeds = ctx.seeds;
    seeds["base"] = ctx.o.seed;
    const json manifest = {{"tool", "isacaf-cli"},
                           {"version", isacaf_version()},
                           {"subcommand", ctx.subcommand},
                           {"command_line", ctx.argv},
                           {"config", ctx.config},
                           {"seeds", seeds},
                           {"plots", ctx.o.plots},
                           {"heatmap_scale", kHeatmapScale},
                           {"outputs", outputs},
                           {"wall_time_seconds", secs}};
    dir.write_text("manifest.json", dump(manifest));
    dir.commit();
}

json basis_config(const BasisChoice& bc, const isacaf_basis* b) {
    return {{"waveform", bc.waveform}, {"label", isacaf_basis_label(b)}, {"n", isacaf_basis_size(b)}, {"params", bc.params}};
}

// ---- subcommands -------------------------------------------------------------

int run_moments(Context& ctx) {
    const Options& o = ctx.o;
    const auto c = make_constellation(o, o.constellation);
    const auto m = moments_of(o, c.get());
    const json report = moments_json(c.get(), m);
    std::cout << dump(report);
    if (o.strict && !m.assumption1_ok)
        throw Failure(kValidation, std::string(isacaf_constellation_name(c.get())) +
                                       " violates the zero-mean, unit-power, zero pseudo-variance assumption");
    if (!o.out.empty()) {
        RunDir dir(o.out, o.force);
        ctx.config = {{"constellation", report["constellation"]}, {"normalize", o.normalize}};
        dir.write_text("moments.json", dump(report));
        finish(ctx, dir);
    }
    return kOk;
}

int run_exact(Context& ctx) {
    Options& o = ctx.o;
    auto bc = make_basis(ctx, o.waveform, o.n);
    const auto c = make_constellation(o, o.constellation);
    const double mu4 = checked_mu4(o, c.get());
    isacaf_grid* raw = nullptr;
    check(isacaf_exact_grid(bc.basis.get(), c.get(), o.budget, &raw), "exact enumeration");
    Grid exact(raw);
    raw = nullptr;
    check(isacaf_theory_grid(bc.basis.get(), mu4, ISACAF_THEORY_GENERAL, &raw), "closed-form grid");
    Grid theory(raw);

    isacaf_comparison cmp{};
    check(isacaf_compare_grids(exact.get(), theory.get(), o.floor, &cmp), "compare");
    const std::size_t n = isacaf_grid_size(exact.get());
    const double mainlobe = grid_values(theory.get())[0];
    const double rel = mainlobe > 0.0 ? cmp.max_abs / mainlobe : std::numeric_limits<double>::quiet_NaN();
    const bool pass = cmp.max_abs <= kExactTolerance;

    RunDir dir(o.out, o.force);
    ctx.config = basis_config(bc, bc.basis.get());
    ctx.config["constellation"] = isacaf_constellation_name(c.get());
    ctx.config["mode"] = "exact";
    write_grid(dir, o, exact.get(), "exact.csv");
    write_grid(dir, o, theory.get(), "theory.csv");
    const json report = {{"waveform", isacaf_basis_label(bc.basis.get())},
                         {"constellation", isacaf_constellation_name(c.get())},
                         {"n", n},
                         {"mu4", mu4},
                         {"symbol_vectors", isacaf_grid_trials(exact.get())},
                         {"comparison", comparison_json(cmp)},
                         {"max_abs_over_mainlobe", nullable(rel)},
                         {"tolerance_abs", kExactTolerance},
                         {"pass", pass}};
    dir.write_text("exact_report.json", dump(report));
    if (o.plots) {
        plot::heatmap(dir.file("exact_heatmap.png"), n, grid_values(exact.get()), "Exact enumeration");
        plot::heatmap(dir.file("theory_heatmap.png"), n, grid_values(theory.get()), "Closed form");
    }
    finish(ctx, dir);
    std::cout << "exact vs closed form: max |diff| = " << num(cmp.max_abs) << (pass ? " (pass)" : " (FAIL)") << "\n";
    return pass ? kOk : kNumerical;
}

struct SliceStats {
    double theory_mean = 0.0;
    isacaf_trial_stat mc{};
    double z = std::numeric_limits<double>::quiet_NaN();
};

SliceStats slice_stats(const std::vector<double>& theory, std::size_t n, bool doppler, isacaf_trial_stat mc) {
    SliceStats s;
    for (std::size_t i = 1; i < n; ++i) s.theory_mean += doppler ? theory[i * n] : theory[i];
    if (n > 1) s.theory_mean /= static_cast<double>(n - 1);
    s.mc = mc;
    if (mc.std_error > 0.0) s.z = (mc.mean - s.theory_mean) / mc.std_error;
    return s;
}

json slice_json(const SliceStats& s) {
    return {{"theory_mean", s.theory_mean},
            {"mc_mean", s.mc.mean},
            {"mc_std_error", s.mc.std_error},
            {"z", nullable(s.z)}};
}

int run_grid(Context& ctx) {
    Options& o = ctx.o;
    const std::string mode = lower(o.mode);
    if (mode == "exact") return run_exact(ctx);
    if (mode != "theory" && mode != "mc" && mode != "compare")
        throw Failure(kValidation, "--mode must be theory, mc, compare or exact");
    if (mode == "compare" && o.trials < 2) throw Failure(kValidation, "compare mode needs --trials >= 2");

    auto bc = make_basis(ctx, o.waveform, o.n);
    const isacaf_basis* b = bc.basis.get();
    const std::size_t n = isacaf_basis_size(b);
    const auto c = make_constellation(o, o.constellation);
    const double mu4 = checked_mu4(o, c.get());
    const std::string label = isacaf_basis_label(b);

    Grid theory, mc;
    isacaf_mc_summary summary{};
    if (mode != "mc") theory = theory_grid(o, b, mu4);
    if (mode != "theory") mc = mc_grid(ctx, b, c.get(), label, &summary);

    RunDir dir(o.out, o.force);
    ctx.config = basis_config(bc, b);
    ctx.config["constellation"] = isacaf_constellation_name(c.get());
    ctx.config["mu4"] = mu4;
    ctx.config["mode"] = mode;
    ctx.config["trials"] = mode == "theory" ? 0 : o.trials;
    ctx.config["theory_method"] = lower(o.theory_method);
    ctx.config["format"] = lower(o.format);
    if (theory) write_grid(dir, o, theory.get(), "theory.csv");
    if (mc) write_grid(dir, o, mc.get(), "mc.csv");

    int rc = kOk;
    if (mode == "compare") {
        isacaf_comparison cmp{};
        check(isacaf_compare_grids(mc.get(), theory.get(), o.floor, &cmp), "compare");
        const auto tv = grid_values(theory.get());
        const auto zd = slice_stats(tv, n, true, summary.zero_doppler_mean);
        const auto zq = slice_stats(tv, n, false, summary.zero_delay_mean);
        isacaf_eisl te{};
        check(isacaf_theory_eisl(b, mu4, &te), "EISL");
        const bool pass = cmp.cells_beyond_4 == 0;
        const json report = {
            {"waveform", label},
            {"constellation", isacaf_constellation_name(c.get())},
            {"n", n},
            {"mu4", mu4},
            {"trials", o.trials},
            {"mc_seed", ctx.seeds["monte_carlo"][label]},
            {"comparison", comparison_json(cmp)},
            {"zero_doppler", slice_json(zd)},
            {"zero_delay", slice_json(zq)},
            {"mainlobe", {{"theory", tv[0]}, {"mc_mean", summary.mainlobe.mean}, {"mc_std_error", summary.mainlobe.std_error}}},
            {"normalized_eisl",
             {{"theory", te.normalized},
              {"mc_mean", summary.normalized_eisl.mean},
              {"mc_std_error", summary.normalized_eisl.std_error}}},
            {"z_limit", kCellZLimit},
            {"pass", pass}};
        dir.write_text("comparison.json", dump(report));
        std::cout << label << " " << isacaf_constellation_name(c.get()) << " N=" << n << ": max |z| = " << num(cmp.max_abs_z)
                  << ", cells beyond 4 SE = " << cmp.cells_beyond_4 << (pass ? " (pass)" : " (FAIL)") << "\n";
        rc = pass ? kOk : kNumerical;
    } else if (mode == "mc") {
        const json report = {{"waveform", label},
                             {"constellation", isacaf_constellation_name(c.get())},
                             {"n", n},
                             {"trials", o.trials},
                             {"mc_seed", ctx.seeds["monte_carlo"][label]},
                             {"zero_doppler_mean", {summary.zero_doppler_mean.mean, summary.zero_doppler_mean.std_error}},
                             {"zero_delay_mean", {summary.zero_delay_mean.mean, summary.zero_delay_mean.std_error}},
                             {"mainlobe", {summary.mainlobe.mean, summary.mainlobe.std_error}},
                             {"normalized_eisl", {summary.normalized_eisl.mean, summary.normalized_eisl.std_error}}};
        dir.write_text("mc_summary.json", dump(report));
    }
    if (o.plots) {
        const std::string title = label + " " + isacaf_constellation_name(c.get()) + " N=" + std::to_string(n);
        if (theory) plot::heatmap(dir.file("theory_heatmap.png"), n, grid_values(theory.get()), title + " theory");
        if (mc) plot::heatmap(dir.file("mc_heatmap.png"), n, grid_values(mc.get()), title + " MC");
    }
    finish(ctx, dir);
    return rc;
}

int run_slice(Context& ctx) {
    Options& o = ctx.o;
    const std::string axis = lower(o.axis);
    if (axis != "doppler" && axis != "delay" && axis != "both")
        throw Failure(kValidation, "--axis must be doppler, delay or both");
    if (o.trials < 2) throw Failure(kValidation, "slice needs --trials >= 2");
    auto bc = make_basis(ctx, o.waveform, o.n);
    const isacaf_basis* b = bc.basis.get();
    const std::size_t n = isacaf_basis_size(b);
    const auto c = make_constellation(o, o.constellation);
    const double mu4 = checked_mu4(o, c.get());
    const std::string label = isacaf_basis_label(b);

    isacaf_mc_summary summary{};
    Grid mc = mc_grid(ctx, b, c.get(), label, &summary);
    const auto mv = grid_values(mc.get());
    const auto ms = grid_std_errors(mc.get());

    RunDir dir(o.out, o.force);
    ctx.config = basis_config(bc, b);
    ctx.config["constellation"] = isacaf_constellation_name(c.get());
    ctx.config["mu4"] = mu4;
    ctx.config["axis"] = axis;
    ctx.config["trials"] = o.trials;

    json report = {{"waveform", label}, {"constellation", isacaf_constellation_name(c.get())}, {"n", n},
                   {"mu4", mu4},        {"trials", o.trials}};
    bool pass = true;
    auto one = [&](bool doppler) {
        const std::string name = doppler ? "zero_doppler" : "zero_delay";
        std::ostringstream csv;
        csv << (doppler ? "k" : "q") << ",theory,mc,stderr\n";
        std::vector<double> idx(n), th(n), mcv(n);
        double max_z = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double t = 0.0;
            if (i == 0)
                check(isacaf_theory_mainlobe(n, mu4, &t), "mainlobe");
            else if (doppler)
                check(isacaf_theory_zero_doppler(b, mu4, i, &t), "zero-Doppler cut");
            else
                check(isacaf_theory_zero_delay(b, mu4, i, &t), "zero-delay cut");
            const std::size_t cell = doppler ? i * n : i;
            const double se = ms[cell];
            const double floor = o.floor >= 0.0 ? o.floor : 1e-6 * static_cast<double>(n * n);
            const double z = std::abs(mv[cell] - t) / std::max(se, floor);
            max_z = std::max(max_z, z);
            csv << i << "," << num(t) << "," << num(mv[cell]) << "," << num(se) << "\n";
            idx[i] = static_cast<double>(i);
            th[i] = t;
            mcv[i] = mv[cell];
        }
        dir.write_text(name + ".csv", csv.str());
        std::vector<double> tv(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) (doppler ? tv[i * n] : tv[i]) = th[i];
        const auto stats = slice_stats(tv, n, doppler, doppler ? summary.zero_doppler_mean : summary.zero_delay_mean);
        const bool ok = max_z <= kCellZLimit && !(std::abs(stats.z) > kSliceZLimit);
        pass = pass && ok;
        json j = slice_json(stats);
        j["max_abs_z"] = max_z;
        j["pass"] = ok;
        report[name] = j;
        if (o.plots) {
            // index 0 is the mainlobe; plotting it would flatten the sidelobes
            const auto tail = [](const std::vector<double>& v) { return std::vector<double>(v.begin() + 1, v.end()); };
            if (n > 1)
                plot::line_plot(dir.file(name + ".png"),
                                label + " " + (doppler ? "zero-Doppler cut" : "zero-delay cut"),
                                doppler ? "Delay k" : "Doppler q", "E|X|^2",
                                {{"Monte Carlo", {214, 39, 40}, tail(idx), tail(mcv), true},
                                 {"Theory", {31, 119, 180}, tail(idx), tail(th), false}});
        }
        std::cout << name << ": mean " << num(stats.mc.mean) << " vs " << num(stats.theory_mean) << " (z = " << num(stats.z)
                  << "), max cell |z| = " << num(max_z) << (ok ? " (pass)" : " (FAIL)") << "\n";
    };
    if (axis != "delay") one(true);
    if (axis != "doppler") one(false);
    report["cell_z_limit"] = kCellZLimit;
    report["slice_mean_z_limit"] = kSliceZLimit;
    report["pass"] = pass;
    dir.write_text("slice_report.json", dump(report));
    finish(ctx, dir);
    return pass ? kOk : kNumerical;
}

int run_eisl(Context& ctx) {
    Options& o = ctx.o;
    const std::string mode = lower(o.mode);
    const bool with_mc = mode != "theory";
    if (mode != "theory" && mode != "compare" && mode != "mc")
        throw Failure(kValidation, "eisl --mode must be theory or compare");
    if (o.ns.empty()) throw Failure(kValidation, "--n needs at least one size");
    if (with_mc && o.trials < 2) throw Failure(kValidation, "eisl with Monte Carlo needs --trials >= 2");

    struct Row {
        std::string waveform, constellation;
        std::size_t n;
        double theory, mc, se;
    };
    std::vector<Row> rows;
    bool pass = true;
    json cfg_rows = json::array();
    for (const auto& wname : o.waveforms) {
        for (const auto& cname : o.constellations) {
            const auto c = make_constellation(o, cname);
            const double mu4 = checked_mu4(o, c.get());
            for (std::size_t n : o.ns) {
                auto bc = make_basis(ctx, wname, n);
                isacaf_eisl te{};
                check(isacaf_theory_eisl(bc.basis.get(), mu4, &te), "EISL");
                Row r{isacaf_basis_label(bc.basis.get()), isacaf_constellation_name(c.get()), n, te.normalized,
                      std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
                const double target = static_cast<double>(n) - 1.0;
                bool ok = std::abs(te.normalized - target) <= kEislTheoryTolerance * std::max(1.0, target);
                if (with_mc) {
                    isacaf_mc_summary s{};
                    const std::string label = r.waveform + "/" + r.constellation + "/N=" + std::to_string(n);
                    mc_grid(ctx, bc.basis.get(), c.get(), label, &s);
                    r.mc = s.normalized_eisl.mean;
                    r.se = s.normalized_eisl.std_error;
                    ok = ok && std::abs(r.mc - target) <= kEislMcTolerance * std::max(1.0, target);
                }
                if (!ok) std::cerr << "EISL check failed: " << r.waveform << " " << r.constellation << " N=" << n << "\n";
                pass = pass && ok;
                cfg_rows.push_back(basis_config(bc, bc.basis.get()));
                rows.push_back(std::move(r));
            }
        }
    }

    RunDir dir(o.out, o.force);
    ctx.config = {{"bases", cfg_rows}, {"constellations", o.constellations}, {"n", o.ns},
                  {"mode", mode},      {"trials", with_mc ? o.trials : 0}};
    std::ostringstream csv;
    csv << "waveform,constellation,N,normalized_eisl_theory,normalized_eisl_mc,stderr\n";
    for (const auto& r : rows) {
        csv << '"' << r.waveform << "\"," << r.constellation << "," << r.n << "," << num(r.theory) << ","
            << (with_mc ? num(r.mc) : "") << "," << (with_mc ? num(r.se) : "") << "\n";
    }
    dir.write_text("eisl.csv", csv.str());
    if (o.plots) {
        static const plot::Rgb palette[] = {{31, 119, 180}, {255, 127, 14}, {44, 160, 44}, {214, 39, 40},
                                            {148, 103, 189}, {140, 86, 75},  {227, 119, 194}, {127, 127, 127}};
        std::map<std::string, plot::Series> by_key;
        std::vector<std::string> order;
        for (const auto& r : rows) {
            std::string wf = r.waveform.substr(0, r.waveform.find('('));
            const std::string key = wf + " " + r.constellation;
            if (!by_key.count(key)) {
                by_key[key] = plot::Series{key, palette[order.size() % std::size(palette)], {}, {}, true};
                order.push_back(key);
            }
            by_key[key].x.push_back(static_cast<double>(r.n));
            by_key[key].y.push_back(with_mc ? r.mc : r.theory);
        }
        std::vector<plot::Series> series;
        for (const auto& k : order) series.push_back(by_key[k]);
        plot::Series sum{"EISL + mainlobe (theory)", {0, 0, 0}, {}, {}, false};
        for (std::size_t n : o.ns) {
            sum.x.push_back(static_cast<double>(n));
            sum.y.push_back(static_cast<double>(n));
        }
        std::sort(sum.x.begin(), sum.x.end());
        std::sort(sum.y.begin(), sum.y.end());
        series.push_back(sum);
        plot::line_plot(dir.file("eisl.png"), "Normalized EISL", "N", "Normalized EISL", series);
    }
    finish(ctx, dir);
    std::cout << rows.size() << " EISL rows" << (pass ? " (pass)" : " (FAIL)") << "\n";
    return pass ? kOk : kNumerical;
}

int run_compare(Context& ctx) {
    const Options& o = ctx.o;
    isacaf_grid* raw = nullptr;
    check(isacaf_grid_read_csv(o.grid_a.c_str(), &raw), o.grid_a.c_str());
    Grid a(raw);
    raw = nullptr;
    check(isacaf_grid_read_csv(o.grid_b.c_str(), &raw), o.grid_b.c_str());
    Grid b(raw);
    isacaf_comparison cmp{};
    check(isacaf_compare_grids(a.get(), b.get(), o.floor, &cmp), "compare");
    const bool pass = !cmp.has_z || cmp.cells_beyond_4 == 0;
    const json report = {{"a", {{"path", o.grid_a}, {"provenance", isacaf_provenance_name(isacaf_grid_provenance(a.get()))}}},
                         {"b", {{"path", o.grid_b}, {"provenance", isacaf_provenance_name(isacaf_grid_provenance(b.get()))}}},
                         {"comparison", comparison_json(cmp)},
                         {"z_limit", kCellZLimit},
                         {"pass", pass}};
    if (o.out.empty()) {
        std::cout << dump(report);
    } else {
        RunDir dir(o.out, o.force);
        ctx.config = {{"a", o.grid_a}, {"b", o.grid_b}, {"floor", o.floor}};
        dir.write_text("comparison.json", dump(report));
        finish(ctx, dir);
    }
    return pass ? kOk : kNumerical;
}

// ---- option wiring -----------------------------------------------------------

void add_constellation_flags(CLI::App* s, Options& o) {
    s->add_option("--constellation", o.constellation, "Named alphabet: bpsk, qpsk, 8psk, 16qam, 16psk, 64qam, ...")
        ->capture_default_str();
    s->add_option("--constellation-file", o.constellation_file, "Alphabet file, one \"re im\" pair per line");
    s->add_flag("--normalize", o.normalize, "Scale an imported alphabet to unit power");
    s->add_option("--moment-tol", o.moment_tol, "Tolerance for the moment assumption checks")->capture_default_str();
}

void add_basis_flags(CLI::App* s, Options& o) {
    s->add_option("--otfs-c", o.otfs_c, "OTFS Doppler bins C (N = C L)");
    s->add_option("--afdm-c1", o.afdm_c1, "AFDM chirp parameter c1");
    s->add_option("--afdm-p", o.afdm_p, "AFDM c1 as p / (2N)");
    s->add_option("--afdm-c2", o.afdm_c2, "AFDM chirp parameter c2")->capture_default_str();
    s->add_option("--haar-seed", o.haar_seed, "Seed for the Haar basis (default derived from --seed)");
    s->add_option("--basis-file", o.basis_file, "Unitary matrix file for --waveform custom");
}

void add_run_flags(CLI::App* s, Options& o, bool need_out) {
    s->add_option("--trials", o.trials, "Monte Carlo realizations")->capture_default_str();
    s->add_option("--seed", o.seed, "Base seed")->capture_default_str();
    auto* out = s->add_option("--out", o.out, "Output directory");
    if (need_out) out->required();
    s->add_flag("--plots", o.plots, "Also write PNG figures");
    s->add_flag("--strict", o.strict, "Fail on alphabets outside the closed-form assumptions");
    s->add_flag("--force", o.force, "Overwrite existing output files");
    s->add_option("--threads", o.threads, "Worker threads (0: all cores)")->capture_default_str();
    s->add_option("--theory-method", o.theory_method, "Closed-form evaluator: fast or general")->capture_default_str();
    s->add_option("--floor", o.floor, "z-score standard-error floor (negative: 1e-6 N^2)")->capture_default_str();
}

void add_single_flags(CLI::App* s, Options& o) {
    s->add_option("--waveform", o.waveform, "sc, ofdm, otfs, afdm, haar or custom")->capture_default_str();
    s->add_option("--n", o.n, "Frame length N");
    add_basis_flags(s, o);
    add_constellation_flags(s, o);
}

}  // namespace
}  // namespace cli

int main(int argc, char** argv) {
    using namespace cli;
    Options o;
    CLI::App app{"Ambiguity-function statistics of randomly modulated waveforms", "isacaf-cli"};
    app.set_version_flag("--version", std::string(isacaf_version()));
    app.set_config("--config", "", "TOML config file; [subcommand] sections, flags override the file");
    app.require_subcommand(1);

    auto* moments = app.add_subcommand("moments", "Moment report of a constellation");
    add_constellation_flags(moments, o);
    moments->add_flag("--strict", o.strict, "Exit 1 if the alphabet violates the moment assumptions");
    moments->add_option("--out", o.out, "Also write moments.json and a manifest here");
    moments->add_flag("--force", o.force, "Overwrite existing output files");

    auto* grid = app.add_subcommand("grid", "Closed-form and Monte Carlo E|X(k,q)|^2 grids");
    add_single_flags(grid, o);
    add_run_flags(grid, o, true);
    grid->add_option("--mode", o.mode, "theory, mc, compare or exact")->capture_default_str();
    grid->add_option("--format", o.format, "Grid CSV layout: long or dense")->capture_default_str();
    grid->add_option("--budget", o.budget, "Exact mode: maximum symbol vectors (0: default)");

    auto* slice = app.add_subcommand("slice", "Zero-Doppler and zero-delay cuts");
    add_single_flags(slice, o);
    add_run_flags(slice, o, true);
    slice->add_option("--axis", o.axis, "doppler, delay or both")->capture_default_str();

    auto* eisl = app.add_subcommand("eisl", "Normalized EISL sweep over waveforms, alphabets and N");
    eisl->add_option("--waveform", o.waveforms, "Comma-separated waveforms")->delimiter(',')->capture_default_str();
    eisl->add_option("--constellation", o.constellations, "Comma-separated alphabets")->delimiter(',')->capture_default_str();
    eisl->add_option("--n", o.ns, "Comma-separated frame lengths")->delimiter(',')->capture_default_str();
    eisl->add_option("--constellation-file", o.constellation_file, "Alphabet file (replaces --constellation)");
    eisl->add_flag("--normalize", o.normalize, "Scale an imported alphabet to unit power");
    eisl->add_option("--moment-tol", o.moment_tol, "Tolerance for the moment assumption checks")->capture_default_str();
    eisl->add_option("--mode", o.mode, "theory or compare (adds Monte Carlo)")->capture_default_str();
    add_basis_flags(eisl, o);
    add_run_flags(eisl, o, true);

    auto* exact = app.add_subcommand("exact", "Exact enumeration against the closed form");
    add_single_flags(exact, o);
    add_run_flags(exact, o, true);
    exact->add_option("--format", o.format, "Grid CSV layout: long or dense")->capture_default_str();
    exact->add_option("--budget", o.budget, "Maximum symbol vectors (0: default)");

    auto* compare = app.add_subcommand("compare", "Compare two grid CSV files");
    compare->add_option("--a", o.grid_a, "First grid (z-scores use its standard errors)")->required();
    compare->add_option("--b", o.grid_b, "Second grid")->required();
    compare->add_option("--floor", o.floor, "z-score standard-error floor (negative: 1e-6 N^2)")->capture_default_str();
    compare->add_option("--out", o.out, "Write comparison.json and a manifest here (default: stdout)");
    compare->add_flag("--force", o.force, "Overwrite existing output files");

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
        return kValidation;
    }

    const auto* sub = app.get_subcommands().front();
    Context ctx{o, sub->get_name(), {argv, argv + argc}, "[" + sub->get_name() + "]\n" + sub->config_to_str(false, false)};
    try {
        if (moments->parsed()) return run_moments(ctx);
        if (grid->parsed()) return run_grid(ctx);
        if (slice->parsed()) return run_slice(ctx);
        if (eisl->parsed()) return run_eisl(ctx);
        if (exact->parsed()) return run_exact(ctx);
        if (compare->parsed()) return run_compare(ctx);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.what() << "\n";
        return f.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    }
    return kValidation;
}
