// SPDX-License-Identifier: Apache-2.0
// photostat: photon-statistics simulation and inference toolkit.
//
// Subcommands: simulate, fit, frames, reproduce. Every run writes a
// manifest.json listing its outputs; identical flags and seed give
// byte-identical CSVs. Exit codes: 0 success, 1 usage, 2 runtime.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "photostat/convolve.hpp"
#include "photostat/count_pmf.hpp"
#include "photostat/csv.hpp"
#include "photostat/emission.hpp"
#include "photostat/frames.hpp"
#include "photostat/inference.hpp"
#include "photostat/manifest.hpp"
#include "photostat/optics.hpp"
#include "photostat/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace photostat;

namespace {

struct RunContext {
    std::string command_line;
    std::uint64_t seed = 12345;
    std::string out_dir;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point start =
        std::chrono::steady_clock::now();

    std::string path(const std::string& name) {
        fs::create_directories(out_dir);
        std::string p = (fs::path(out_dir) / name).string();
        outputs.push_back(p);
        return p;
    }

    void finish(const json& config) {
        RunManifest m;
        m.command_line = command_line;
        m.seed = seed;
        m.config_json = config.dump();  // nlohmann objects iterate sorted
        m.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        m.outputs = outputs;
        fs::create_directories(out_dir);
        write_manifest((fs::path(out_dir) / "manifest.json").string(), m);
    }
};

std::uint64_t env_seed_default() {
    const char* env = std::getenv("PHOTOSTAT_SEED");
    if (env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0') return v;
    }
    return 12345;
}

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i > 0) s += " ";
        s += argv[i];
    }
    return s;
}

PlotSeries pmf_series(const CountPmf& pmf, const std::string& label,
                      const std::string& color, double scale, bool scatter) {
    PlotSeries s;
    s.label = label;
    s.color = color;
    s.scatter = scatter;
    for (int k = 0; k <= pmf.k_max(); ++k) {
        if (pmf.probs[k] <= 0.0) continue;
        s.x.push_back(static_cast<double>(k));
        s.y.push_back(pmf.probs[k] * scale);
    }
    return s;
}

// "pulses": mass per pulse (sums to 1). "electrons": mass divided by the
// distribution mean, the alternative overlay normalization.
double normalization_scale(const std::string& mode, double mean) {
    if (mode == "pulses") return 1.0;
    if (mode == "electrons") {
        if (!(mean > 0.0)) throw std::runtime_error("zero mean, cannot normalize");
        return 1.0 / mean;
    }
    throw std::runtime_error("unknown normalization '" + mode + "'");
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string source = "coherent";
    double mean = -1.0;
    double coupling = -1.0;
    double energy = -1.0;
    std::vector<double> energies;
    double reference_energy = -1.0;
    int modes = 1;
    double nonlinearity = 4.0;
    long long pulses = 10000;
    double efficiency = 1.0;
    double background = 0.0;
    std::uint64_t seed = 0;
    std::string out;
};

int run_simulate(const SimulateArgs& a, RunContext& ctx) {
    const bool coherent = a.source == "coherent";
    EmissionConfig config;
    config.nonlinearity = a.nonlinearity;
    config.efficiency = a.efficiency;
    config.background_mean = a.background;

    SweepConfig sweep;
    sweep.pulses_per_point = a.pulses;
    sweep.seed = a.seed;

    if (a.mean >= 0.0) {
        if (a.coupling >= 0.0 || a.energy >= 0.0 || !a.energies.empty()) {
            std::cerr << "--mean excludes --coupling/--energy/--energies\n";
            return 1;
        }
        config.coupling = a.mean;
        sweep.reference_energy = 1.0;
        sweep.pulse_energies = {1.0};
    } else {
        if (a.coupling < 0.0) {
            std::cerr << "either --mean or --coupling is required\n";
            return 1;
        }
        config.coupling = a.coupling;
        sweep.reference_energy =
            a.reference_energy > 0.0 ? a.reference_energy : 1.0;
        if (!a.energies.empty()) {
            sweep.pulse_energies = a.energies;
        } else if (a.energy > 0.0) {
            sweep.pulse_energies = {a.energy};
        } else {
            std::cerr << "--coupling needs --energy or --energies\n";
            return 1;
        }
    }

    PhotonSource source;
    source.kind = coherent ? SourceKind::coherent : SourceKind::bsv;
    source.mean_photons = 1.0;
    source.mode_count = a.modes;

    const auto points = run_sweep(source, sweep, config);

    json config_json = {
        {"source", a.source},
        {"coupling", config.coupling},
        {"reference_energy", sweep.reference_energy},
        {"energies", sweep.pulse_energies},
        {"modes", a.modes},
        {"nonlinearity", a.nonlinearity},
        {"pulses", a.pulses},
        {"efficiency", a.efficiency},
        {"background", a.background},
        {"seed", a.seed},
    };

    if (points.size() == 1) {
        write_histogram_csv(ctx.path("histogram.csv"), points[0].histogram);
        std::printf("mean %.6g over %lld pulses\n", points[0].mean_count,
                    a.pulses);
    } else {
        write_sweep_csv(ctx.path("sweep.csv"), points);
        write_sweep_means_csv(ctx.path("means.csv"), points);
        for (const auto& p : points) {
            std::printf("energy %.6g: mean %.6g\n", p.energy, p.mean_count);
        }
    }
    ctx.finish(config_json);
    return 0;
}

// --------------------------------------------------------------------- fit

int run_fit_nonlinearity(const std::string& in, RunContext& ctx) {
    const auto points = read_xy_csv(in);
    const PowerLawFit fit = fit_power_law(points);
    json report = {
        {"exponent", fit.exponent},
        {"exponent_sigma", fit.exponent_sigma},
        {"amplitude", fit.amplitude},
        {"input", in},
        {"points", points.size()},
    };
    std::ofstream outf(ctx.path("nonlinearity.json"));
    outf << report.dump(2) << "\n";
    std::printf("exponent %.6g +- %.3g\n", fit.exponent, fit.exponent_sigma);
    ctx.finish(json{{"input", in}, {"mode", "nonlinearity"}});
    return 0;
}

int run_fit_modes(const std::string& in, int n, int m_lo, int m_hi,
                  RunContext& ctx) {
    const CountHistogram hist = read_histogram_csv(in);
    const ModeFit fit =
        estimate_mode_count(hist, NonlinearityOrder(n), m_lo, m_hi);
    json profile = json::array();
    for (const auto& [m, obj] : fit.profile) {
        profile.push_back({{"m", m}, {"objective", obj}});
    }
    json report = {
        {"m_hat", fit.m_hat},       {"ci_low", fit.ci_low},
        {"ci_high", fit.ci_high},   {"objective", fit.objective},
        {"profile", profile},       {"input", in},
        {"nonlinearity", n},        {"histogram_mean", hist.mean()},
    };
    std::ofstream outf(ctx.path("modes.json"));
    outf << report.dump(2) << "\n";
    {
        std::ofstream prof(ctx.path("profile.csv"));
        prof << "m,objective\n";
        for (const auto& [m, obj] : fit.profile) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%d,%.17g\n", m, obj);
            prof << buf;
        }
    }
    std::printf("m_hat %d (interval %d..%d)\n", fit.m_hat, fit.ci_low,
                fit.ci_high);
    ctx.finish(json{{"input", in},
                    {"mode", "modes"},
                    {"nonlinearity", n},
                    {"m_lo", m_lo},
                    {"m_hi", m_hi}});
    return 0;
}

// ------------------------------------------------------------------ frames

struct FrameArgs {
    std::string count_law = "poisson:5";
    int frames = 100;
    int width = 256;
    int height = 256;
    double sigma = 2.0;
    double noise = 200.0;
    double threshold = 8000.0;
    double min_separation = 0.0;
    std::uint64_t seed = 0;
    std::string dir;
};

SpotModel default_spot_model(const FrameArgs& a) {
    SpotModel model;
    model.sigma_px = a.sigma;
    model.noise_sigma = a.noise;
    model.threshold = a.threshold;
    return model;
}

int run_frames_generate(const FrameArgs& a, RunContext& ctx) {
    const auto colon = a.count_law.find(':');
    if (colon == std::string::npos) {
        std::cerr << "--count-law must be fixed:<k> or poisson:<mu>\n";
        return 1;
    }
    const std::string law = a.count_law.substr(0, colon);
    const std::string arg = a.count_law.substr(colon + 1);
    int fixed_k = 0;
    double poisson_mu = 0.0;
    if (law == "fixed") {
        fixed_k = std::atoi(arg.c_str());
        if (fixed_k < 0) {
            std::cerr << "fixed count must be >= 0\n";
            return 1;
        }
    } else if (law == "poisson") {
        poisson_mu = std::atof(arg.c_str());
        if (!(poisson_mu >= 0.0)) {
            std::cerr << "poisson mean must be >= 0\n";
            return 1;
        }
    } else {
        std::cerr << "unknown count law '" << law << "'\n";
        return 1;
    }

    SpotModel model = default_spot_model(a);
    model.validate();
    FrameGeometry geometry;
    geometry.width = a.width;
    geometry.height = a.height;
    geometry.min_separation_px = a.min_separation;

    fs::create_directories(a.dir);
    for (int i = 0; i < a.frames; ++i) {
        Rng rng = derive_rng(a.seed, 0, static_cast<std::uint64_t>(i));
        const int count =
            law == "fixed" ? fixed_k : static_cast<int>(rng.poisson(poisson_mu));
        Frame frame = generate_frame(count, model, geometry, rng);
        frame.pulse_index = i;
        char name[64];
        std::snprintf(name, sizeof name, "frame_%d.pgm", i);
        write_pgm(ctx.path(name), frame);
    }
    ctx.finish(json{{"count_law", a.count_law},
                    {"frames", a.frames},
                    {"width", a.width},
                    {"height", a.height},
                    {"sigma", a.sigma},
                    {"noise", a.noise},
                    {"threshold", a.threshold},
                    {"min_separation", a.min_separation},
                    {"seed", a.seed}});
    std::printf("wrote %d frames to %s\n", a.frames, a.dir.c_str());
    return 0;
}

int run_frames_count(const FrameArgs& a, RunContext& ctx) {
    if (!fs::is_directory(a.dir)) {
        std::cerr << "not a directory: " << a.dir << "\n";
        return 2;
    }
    std::map<long long, std::string> paths;  // ordered by frame index
    for (const auto& entry : fs::directory_iterator(a.dir)) {
        const std::string name = entry.path().filename().string();
        long long idx = 0;
        if (std::sscanf(name.c_str(), "frame_%lld.pgm", &idx) == 1) {
            paths[idx] = entry.path().string();
        }
    }
    if (paths.empty()) {
        std::cerr << "no frame_<index>.pgm files in " << a.dir << "\n";
        return 2;
    }
    std::vector<Frame> frames;
    frames.reserve(paths.size());
    std::vector<long long> unreadable;
    for (const auto& [idx, p] : paths) {
        try {
            Frame f = read_pgm(p);
            f.pulse_index = idx;
            frames.push_back(std::move(f));
        } catch (const std::exception&) {
            unreadable.push_back(idx);
        }
    }
    if (frames.empty()) {
        std::cerr << "no readable frames in " << a.dir << "\n";
        return 2;
    }
    SpotModel model = default_spot_model(a);
    const FrameStreamResult result = analyze_frame_stream(frames, model);

    std::vector<long long> skipped = unreadable;
    skipped.insert(skipped.end(), result.skipped.begin(), result.skipped.end());
    std::sort(skipped.begin(), skipped.end());

    write_histogram_csv(ctx.path("histogram.csv"), result.histogram);
    json summary = {
        {"frames", frames.size()},
        {"mean", result.histogram.mean()},
        {"fano", result.histogram.total_pulses > 1 &&
                         result.histogram.mean() > 0.0
                     ? fano_factor(result.histogram)
                     : 0.0},
        {"skipped", skipped},
    };
    std::ofstream outf(ctx.path("summary.json"));
    outf << summary.dump(2) << "\n";
    std::printf("counted %zu frames, mean %.6g\n", frames.size(),
                result.histogram.mean());
    ctx.finish(json{{"input", a.dir},
                    {"threshold", a.threshold},
                    {"sigma", a.sigma},
                    {"noise", a.noise}});
    return 0;
}

// --------------------------------------------------------------- reproduce

CountHistogram simulate_bsv_point(double mean, int n, int m, long long pulses,
                                  std::uint64_t seed) {
    PhotonSource source{SourceKind::bsv, 1.0, m};
    EmissionConfig config;
    config.nonlinearity = static_cast<double>(n);
    config.coupling = mean;
    SweepConfig sweep;
    sweep.pulse_energies = {1.0};
    sweep.reference_energy = 1.0;
    sweep.pulses_per_point = pulses;
    sweep.seed = seed;
    return run_sweep(source, sweep, config)[0].histogram;
}

CountHistogram simulate_coherent_point(double mean, long long pulses,
                                       std::uint64_t seed) {
    PhotonSource source{SourceKind::coherent, 1.0, 1};
    EmissionConfig config;
    config.coupling = mean;
    SweepConfig sweep;
    sweep.pulse_energies = {1.0};
    sweep.reference_energy = 1.0;
    sweep.pulses_per_point = pulses;
    sweep.seed = seed;
    return run_sweep(source, sweep, config)[0].histogram;
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) {
        v[i] = lo + (hi - lo) * static_cast<double>(i) /
                        static_cast<double>(count - 1);
    }
    return v;
}

int pmf_support_for(double mean, int n, int m) {
    const double upper = suggested_lattice_upper(
        mean, NonlinearityOrder(n), m, 1e-8);
    int k = 256;
    while (k < upper && k < (1 << 20)) k <<= 1;
    return k;
}

CountPmf model_pmf(double mean, int n, int m) {
    int k_max = pmf_support_for(mean, n, m);
    for (;;) {
        try {
            return electron_count_pmf(mean, NonlinearityOrder(n), m, k_max);
        } catch (const TruncationError&) {
            if (k_max >= (1 << 20)) throw;
            k_max <<= 1;
        }
    }
}

int run_reproduce_sweep(const std::string& id, long long pulses,
                        std::uint64_t seed, const std::string& normalize,
                        RunContext& ctx) {
    (void)normalize;
    const bool coherent = id == "fig2a";
    PhotonSource source{coherent ? SourceKind::coherent : SourceKind::bsv, 1.0,
                        coherent ? 1 : 11};
    EmissionConfig config;
    config.nonlinearity = coherent ? 4.4 : 4.0;
    config.coupling = coherent ? 16.0 : 2.6;
    SweepConfig sweep;
    sweep.pulse_energies = coherent ? linspace(7.0, 13.0, 7) : linspace(9.0, 18.0, 7);
    sweep.reference_energy = coherent ? 13.0 : 18.0;
    sweep.pulses_per_point = pulses;
    sweep.seed = seed;

    const auto points = run_sweep(source, sweep, config);
    write_sweep_csv(ctx.path("sweep.csv"), points);
    write_sweep_means_csv(ctx.path("means.csv"), points);

    std::vector<std::pair<double, double>> xy;
    for (const auto& p : points) xy.emplace_back(p.energy, p.mean_count);
    const PowerLawFit fit = fit_power_law(xy);
    json report = {
        {"exponent", fit.exponent},
        {"exponent_sigma", fit.exponent_sigma},
        {"amplitude", fit.amplitude},
    };
    std::ofstream outf(ctx.path("fit.json"));
    outf << report.dump(2) << "\n";

    PlotSeries data;
    data.label = "simulated mean";
    data.scatter = true;
    PlotSeries line;
    line.label = "power-law fit";
    for (const auto& [e, mu] : xy) {
        data.x.push_back(e);
        data.y.push_back(mu);
        line.x.push_back(e);
        line.y.push_back(std::exp(fit.amplitude + fit.exponent * std::log(e)));
    }
    PlotOptions opt;
    opt.title = id + ": mean electrons vs pulse energy";
    opt.x_label = "pulse energy (nJ)";
    opt.y_label = "mean electrons per pulse";
    opt.log_x = true;
    opt.log_y = true;
    write_svg_plot(ctx.path(id + ".svg"), {data, line}, opt);

    ctx.finish(json{{"figure", id},
                    {"pulses", pulses},
                    {"seed", seed},
                    {"nonlinearity", config.nonlinearity},
                    {"coupling", config.coupling},
                    {"energies", sweep.pulse_energies}});
    std::printf("%s: fitted exponent %.3f +- %.3f\n", id.c_str(), fit.exponent,
                fit.exponent_sigma);
    return 0;
}

int run_reproduce_histogram(const std::string& id, long long pulses,
                            std::uint64_t seed, const std::string& normalize,
                            RunContext& ctx) {
    struct Overlay {
        std::string label;
        CountPmf pmf;
    };
    CountHistogram hist;
    std::vector<Overlay> overlays;
    std::string title;

    if (id == "fig2b") {
        hist = simulate_coherent_point(16.0, pulses, seed);
        overlays.push_back({"Poisson(16)", poisson_pmf(16.0, 64)});
        title = "coherent drive, mean 16";
    } else if (id == "fig3b") {
        hist = simulate_bsv_point(2.6, 4, 11, pulses, seed);
        overlays.push_back({"model m=1", model_pmf(2.6, 4, 1)});
        overlays.push_back({"model m=11", model_pmf(2.6, 4, 11)});
        title = "squeezed drive, mean 2.6";
    } else if (id == "fig3c") {
        hist = simulate_bsv_point(0.27, 4, 1, pulses, seed);
        overlays.push_back({"model m=1", model_pmf(0.27, 4, 1)});
        overlays.push_back({"model m=2", model_pmf(0.27, 4, 2)});
        title = "squeezed drive, mean 0.27";
    } else if (id == "fig3d") {
        hist = simulate_bsv_point(48.0, 4, 57, pulses, seed);
        overlays.push_back({"model m=1", model_pmf(48.0, 4, 1)});
        overlays.push_back({"model m=57", model_pmf(48.0, 4, 57)});
        title = "squeezed drive, mean 48";
    } else {
        return 1;
    }

    write_histogram_csv(ctx.path("histogram.csv"), hist);
    const CountPmf emp = hist.empirical_pmf();
    const double scale = normalization_scale(normalize, hist.mean());

    std::vector<PlotSeries> series;
    series.push_back(pmf_series(emp, "simulated", "#1f77b4", scale, true));
    const char* overlay_colors[] = {"#d62728", "#ff7f0e", "#2ca02c"};
    json annotations;
    annotations["histogram_mean"] = hist.mean();
    annotations["normalization"] = normalize;
    int ci = 0;
    for (const auto& ov : overlays) {
        std::string stem = ov.label;
        for (char& c : stem) {
            if (c == ' ' || c == '(' || c == ')' || c == '=') c = '_';
        }
        write_pmf_csv(ctx.path(stem + ".csv"), ov.pmf);
        series.push_back(
            pmf_series(ov.pmf, ov.label, overlay_colors[ci % 3], scale, false));
        annotations["tv_" + stem] = tv_distance(hist, ov.pmf);
        ++ci;
    }
    std::ofstream outf(ctx.path("annotations.json"));
    outf << annotations.dump(2) << "\n";

    PlotOptions opt;
    opt.title = id + ": " + title;
    opt.x_label = "electrons per pulse";
    opt.y_label = normalize == "pulses" ? "probability" : "normalized probability";
    opt.log_y = true;
    write_svg_plot(ctx.path(id + ".svg"), series, opt);

    ctx.finish(json{{"figure", id},
                    {"pulses", pulses},
                    {"seed", seed},
                    {"normalize", normalize}});
    std::printf("%s: simulated mean %.4g over %llu pulses\n", id.c_str(),
                hist.mean(),
                static_cast<unsigned long long>(hist.total_pulses));
    return 0;
}

int run_reproduce_edfig1(long long pulses, std::uint64_t seed,
                         const std::string& normalize, RunContext& ctx) {
    (void)pulses;
    (void)seed;
    const CountPmf base = model_pmf(1.0, 4, 1);
    const double scale = normalization_scale(normalize, base.mean());
    std::vector<PlotSeries> series;
    series.push_back(pmf_series(base, "base", "#1f77b4", scale, false));
    write_pmf_csv(ctx.path("base.csv"), base);

    json annotations;
    annotations["normalization"] = normalize;
    const double mixes[] = {0.01, 0.1, 0.5};
    const char* colors[] = {"#2ca02c", "#ff7f0e", "#d62728"};
    for (int i = 0; i < 3; ++i) {
        const CountPmf mixed = admixture_pmf(base, mixes[i]);
        char stem[48];
        std::snprintf(stem, sizeof stem, "admixture_%g", mixes[i]);
        write_pmf_csv(ctx.path(std::string(stem) + ".csv"), mixed);
        char label[64];
        std::snprintf(label, sizeof label, "admixed mu=%g", mixes[i]);
        series.push_back(pmf_series(mixed, label, colors[i], scale, false));
        annotations[std::string("tv_") + stem] = tv_distance(base, mixed);
    }
    std::ofstream outf(ctx.path("annotations.json"));
    outf << annotations.dump(2) << "\n";

    PlotOptions opt;
    opt.title = "edfig1: Poisson admixture on the single-mode model";
    opt.x_label = "electrons per pulse";
    opt.y_label = normalize == "pulses" ? "probability" : "normalized probability";
    opt.log_y = true;
    write_svg_plot(ctx.path("edfig1.svg"), series, opt);

    ctx.finish(json{{"figure", "edfig1"}, {"normalize", normalize}});
    std::printf("edfig1: admixture panels written\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"photon-statistics simulation and inference toolkit"};
    app.require_subcommand(1);
    const std::uint64_t default_seed = env_seed_default();

    // simulate
    SimulateArgs sim;
    sim.seed = default_seed;
    auto* c_sim = app.add_subcommand("simulate", "run the emission Monte Carlo");
    c_sim->add_option("--source", sim.source, "coherent | bsv")
        ->check(CLI::IsMember({"coherent", "bsv"}));
    c_sim->add_option("--mean", sim.mean, "target mean electrons per pulse");
    c_sim->add_option("--coupling", sim.coupling,
                      "mean electrons at the reference energy");
    c_sim->add_option("--energy", sim.energy, "pulse energy (nJ)");
    c_sim->add_option("--energies", sim.energies,
                      "sweep energies (nJ)")->delimiter(',');
    c_sim->add_option("--reference-energy", sim.reference_energy,
                      "reference energy (nJ)");
    c_sim->add_option("--modes", sim.modes, "BSV mode count")
        ->check(CLI::PositiveNumber);
    c_sim->add_option("--nonlinearity", sim.nonlinearity, "photon order n")
        ->check(CLI::PositiveNumber);
    c_sim->add_option("--pulses", sim.pulses, "pulses per point")
        ->check(CLI::PositiveNumber);
    c_sim->add_option("--efficiency", sim.efficiency, "detection efficiency");
    c_sim->add_option("--background", sim.background, "background counts/pulse");
    c_sim->add_option("--seed", sim.seed, "master seed");
    c_sim->add_option("--out", sim.out, "output directory")->required();

    // fit
    auto* c_fit = app.add_subcommand("fit", "estimators");
    c_fit->require_subcommand(1);
    std::string fit_in, fit_out;
    auto* c_fit_nl =
        c_fit->add_subcommand("nonlinearity", "power-law fit of (energy, mean)");
    c_fit_nl->add_option("--in", fit_in, "CSV with energy,mean")->required();
    c_fit_nl->add_option("--out", fit_out, "output directory")->required();
    int fit_n = 4, fit_m_lo = 1, fit_m_hi = 20;
    std::string fitm_in, fitm_out;
    auto* c_fit_m = c_fit->add_subcommand("modes", "mode-count estimate");
    c_fit_m->add_option("--in", fitm_in, "histogram CSV")->required();
    c_fit_m->add_option("--n", fit_n, "photon order")->check(CLI::PositiveNumber);
    c_fit_m->add_option("--m-lo", fit_m_lo, "lowest mode count")
        ->check(CLI::PositiveNumber);
    c_fit_m->add_option("--m-hi", fit_m_hi, "highest mode count")
        ->check(CLI::PositiveNumber);
    c_fit_m->add_option("--out", fitm_out, "output directory")->required();

    // frames
    FrameArgs fr;
    fr.seed = default_seed;
    auto* c_frames = app.add_subcommand("frames", "synthetic detector frames");
    c_frames->require_subcommand(1);
    auto* c_fr_gen = c_frames->add_subcommand("generate", "write PGM frames");
    c_fr_gen->add_option("--count-law", fr.count_law, "fixed:<k> | poisson:<mu>");
    c_fr_gen->add_option("--frames", fr.frames, "number of frames")
        ->check(CLI::PositiveNumber);
    c_fr_gen->add_option("--width", fr.width)->check(CLI::PositiveNumber);
    c_fr_gen->add_option("--height", fr.height)->check(CLI::PositiveNumber);
    c_fr_gen->add_option("--sigma", fr.sigma, "spot sigma (px)");
    c_fr_gen->add_option("--noise", fr.noise, "noise sigma");
    c_fr_gen->add_option("--threshold", fr.threshold, "blob threshold");
    c_fr_gen->add_option("--min-separation", fr.min_separation,
                         "minimum spot separation (px)");
    c_fr_gen->add_option("--seed", fr.seed, "master seed");
    c_fr_gen->add_option("--out", fr.dir, "output directory")->required();
    auto* c_fr_count = c_frames->add_subcommand("count", "count spots in frames");
    c_fr_count->add_option("--in", fr.dir, "input directory")->required();
    c_fr_count->add_option("--sigma", fr.sigma, "spot sigma (px)");
    c_fr_count->add_option("--noise", fr.noise, "noise sigma");
    c_fr_count->add_option("--threshold", fr.threshold, "blob threshold");
    std::string fr_out;
    c_fr_count->add_option("--out", fr_out, "output directory")->required();

    // reproduce
    std::string fig_id, normalize = "pulses", rep_out;
    long long rep_pulses = -1;
    std::uint64_t rep_seed = default_seed;
    auto* c_rep = app.add_subcommand("reproduce", "figure recipes");
    c_rep->add_option("figure", fig_id,
                      "fig2a fig2b fig3a fig3b fig3c fig3d edfig1")
        ->required();
    c_rep->add_option("--pulses", rep_pulses, "override pulse count")
        ->check(CLI::PositiveNumber);
    c_rep->add_option("--seed", rep_seed, "master seed");
    c_rep->add_option("--normalize", normalize, "pulses | electrons")
        ->check(CLI::IsMember({"pulses", "electrons"}));
    c_rep->add_option("--out", rep_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        RunContext ctx;
        ctx.command_line = join_args(argc, argv);

        if (c_sim->parsed()) {
            ctx.seed = sim.seed;
            ctx.out_dir = sim.out;
            return run_simulate(sim, ctx);
        }
        if (c_fit_nl->parsed()) {
            ctx.out_dir = fit_out;
            return run_fit_nonlinearity(fit_in, ctx);
        }
        if (c_fit_m->parsed()) {
            ctx.out_dir = fitm_out;
            return run_fit_modes(fitm_in, fit_n, fit_m_lo, fit_m_hi, ctx);
        }
        if (c_fr_gen->parsed()) {
            ctx.seed = fr.seed;
            ctx.out_dir = fr.dir;
            return run_frames_generate(fr, ctx);
        }
        if (c_fr_count->parsed()) {
            ctx.out_dir = fr_out;
            return run_frames_count(fr, ctx);
        }
        if (c_rep->parsed()) {
            ctx.seed = rep_seed;
            ctx.out_dir = rep_out;
            const bool is_sweep = fig_id == "fig2a" || fig_id == "fig3a";
            const bool is_hist = fig_id == "fig2b" || fig_id == "fig3b" ||
                                 fig_id == "fig3c" || fig_id == "fig3d";
            long long pulses = rep_pulses;
            if (pulses < 0) {
                if (is_sweep) pulses = 20000;
                else if (fig_id == "fig3d") pulses = 10000;
                else pulses = 40000;
            }
            if (is_sweep) {
                return run_reproduce_sweep(fig_id, pulses, rep_seed, normalize,
                                           ctx);
            }
            if (is_hist) {
                return run_reproduce_histogram(fig_id, pulses, rep_seed,
                                               normalize, ctx);
            }
            if (fig_id == "edfig1") {
                return run_reproduce_edfig1(pulses, rep_seed, normalize, ctx);
            }
            std::cerr << "unknown figure '" << fig_id
                      << "'; valid: fig2a fig2b fig3a fig3b fig3c fig3d "
                         "edfig1\n";
            return 1;
        }
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
