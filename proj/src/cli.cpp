#include "gsp/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "gsp/generators.hpp"
#include "gsp/spreads.hpp"
#include "gsp/uncertainty.hpp"

namespace gsp::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";
constexpr std::uint64_t kDefaultSeed = 20210412;  // fixed default, never entropy

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("GRAPHSPREAD_LOG");
        return env ? std::atoi(env) : 0;
    }();
    return level;
}

void log_line(const std::string& msg) {
    if (log_level() > 0) std::cerr << "[graphspread] " << msg << "\n";
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Options {
    std::string family = "complete";
    std::string input;  // graph file for --family file
    std::size_t n = 10;
    double radius = 0.3;
    double alpha = 1.0;
    double beta = 1.0;
    std::string kind = "invsim";
    std::size_t u0 = 0;
    double tol = 1e-6;
    std::size_t trials = 100;
    std::size_t grid = 128;
    std::uint64_t seed = kDefaultSeed;
    std::size_t jobs = 1;
    std::string out;
    std::string signal;
    std::string image;
    std::string kinds = "invsim,diffusion:1";
    bool gnuplot = false;
    bool normalize = false;
};

struct GraphSource {
    WeightedGraph graph;
    std::optional<LengthMatrix> euclidean;  // geometric family keeps E for explicit kind
};

GraphSource build_graph(const Options& opt, std::uint64_t trial, bool random_weights) {
    if (opt.family == "random-geometric") {
        GeometricGraph geo = random_geometric(opt.n, opt.radius, derive_seed(opt.seed, trial));
        WeightedGraph w = gaussian_kernel(geo.lengths, opt.alpha, opt.beta);
        return GraphSource{std::move(w), std::move(geo.lengths)};
    }
    WeightedGraph base = [&] {
        if (opt.family == "complete") return complete_graph(opt.n);
        if (opt.family == "star") return star_graph(opt.n);
        if (opt.family == "ring") return ring_graph(opt.n);
        if (opt.family == "path") return path_graph(opt.n);
        if (opt.family == "file") {
            if (opt.input.empty())
                throw std::invalid_argument("--family file requires --input <graph file>");
            return read_graph_file(opt.input);
        }
        throw std::invalid_argument("unknown family: " + opt.family);
    }();
    if (random_weights) {
        std::mt19937_64 rng = trial_stream(opt.seed, trial);
        base = randomize_weights(base, rng);
    }
    return GraphSource{std::move(base), std::nullopt};
}

DistanceKind resolve_kind(const std::string& text, const GraphSource& src) {
    DistanceKind kind = DistanceKind::parse(text);
    if (kind.type == DistanceKind::Type::ExplicitLengths && !kind.explicit_lengths) {
        if (!src.euclidean)
            throw std::invalid_argument(
                "kind `explicit` without a file needs the random-geometric family");
        kind.explicit_lengths = *src.euclidean;
    }
    return kind;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path);
    return out;
}

void write_manifest(const Options& opt, const std::vector<std::string>& args,
                    const std::string& out_path) {
    json m;
    m["artifact_version"] = kVersion;
    m["args"] = args;
    m["seed"] = opt.seed;
    m["family"] = opt.family;
    m["params"] = {{"n", opt.n},       {"radius", opt.radius}, {"alpha", opt.alpha},
                   {"beta", opt.beta}, {"trials", opt.trials}, {"grid", opt.grid}};
    m["kind"] = opt.kind;
    m["u0"] = opt.u0;
    m["tol"] = opt.tol;
    m["out"] = out_path;
    const auto now = std::chrono::system_clock::now();
    m["timestamp_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    std::ofstream f = open_out(out_path + ".manifest.json");
    f << m.dump(2) << "\n";
    if (!f) throw IoError("failed writing manifest for: " + out_path);
}

void write_curve_csv(const std::string& path, const UncertaintyCurve& curve) {
    std::ofstream out = open_out(path);
    out << "s,g,slope\n";
    for (const CurvePoint& p : curve.points)
        out << fmt17(p.s) << "," << fmt17(p.g) << "," << fmt17(p.slope) << "\n";
    if (!out) throw IoError("failed writing curve CSV: " + path);
}

void write_gnuplot_block(const std::string& path, const Options& opt,
                         const std::vector<std::pair<double, double>>& rows) {
    std::ofstream out = open_out(path);
    out << "# graphspread " << kVersion << "\n";
    out << "# family=" << opt.family << " kind=" << opt.kind << " u0=" << opt.u0
        << " tol=" << fmt17(opt.tol) << " seed=" << opt.seed << "\n";
    out << "# columns: s g\n";
    for (const auto& [s, g] : rows) out << fmt17(s) << " " << fmt17(g) << "\n";
    if (!out) throw IoError("failed writing gnuplot block: " + path);
}

int cmd_curve(const Options& opt, const std::vector<std::string>& args) {
    const GraphSource src = build_graph(opt, 0, false);
    const DistanceKind kind = resolve_kind(opt.kind, src);
    UncertaintyCurve curve = sandwich_curve(src.graph, opt.u0, kind, opt.tol);
    if (opt.normalize) curve = normalize_curve(std::move(curve));
    log_line("curve traced: " + std::to_string(curve.points.size()) +
             " points, certified gap " + fmt17(curve.gap));
    write_curve_csv(opt.out, curve);
    write_manifest(opt, args, opt.out);
    if (opt.gnuplot) {
        std::vector<std::pair<double, double>> rows;
        for (const CurvePoint& p : curve.points) rows.emplace_back(p.s, p.g);
        write_gnuplot_block(opt.out + ".dat", opt, rows);
    }
    return kOk;
}

int cmd_mean_curve(const Options& opt, const std::vector<std::string>& args) {
    if (opt.trials < 1) throw std::invalid_argument("--trials must be >= 1");
    std::vector<UncertaintyCurve> curves(opt.trials);
    std::vector<std::exception_ptr> errors(opt.trials);

    auto run_trial = [&](std::size_t t) {
        try {
            const GraphSource src = build_graph(opt, t, true);
            const DistanceKind kind = resolve_kind(opt.kind, src);
            curves[t] = normalize_curve(sandwich_curve(src.graph, opt.u0, kind, opt.tol));
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };

    const std::size_t jobs = std::max<std::size_t>(1, opt.jobs);
    if (jobs == 1) {
        for (std::size_t t = 0; t < opt.trials; ++t) run_trial(t);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < jobs; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t t = w; t < opt.trials; t += jobs) run_trial(t);
            });
        for (auto& th : pool) th.join();
    }
    for (std::size_t t = 0; t < opt.trials; ++t) {
        if (!errors[t]) continue;
        try {
            std::rethrow_exception(errors[t]);
        } catch (const std::exception& e) {
            throw std::runtime_error("trial " + std::to_string(t) + " failed: " + e.what());
        }
    }

    const std::vector<MeanCurveSample> samples = mean_curve(curves, opt.grid);
    std::ofstream out = open_out(opt.out);
    out << "s,mean_g,stddev_g,trials\n";
    for (const MeanCurveSample& s : samples)
        out << fmt17(s.s) << "," << fmt17(s.mean_g) << "," << fmt17(s.stddev_g) << ","
            << opt.trials << "\n";
    if (!out) throw IoError("failed writing mean-curve CSV: " + opt.out);
    write_manifest(opt, args, opt.out);
    if (opt.gnuplot) {
        std::vector<std::pair<double, double>> rows;
        for (const MeanCurveSample& s : samples) rows.emplace_back(s.s, s.mean_g);
        write_gnuplot_block(opt.out + ".dat", opt, rows);
    }
    return kOk;
}

int cmd_spread(const Options& opt) {
    const GraphSource src = build_graph(opt, 0, false);
    const DistanceKind kind = resolve_kind(opt.kind, src);
    GraphSignal x = read_signal_file(opt.signal);
    if (x.size() != src.graph.size())
        throw std::invalid_argument("signal length does not match graph size");
    if (opt.normalize) x.normalize();
    const SpreadPair pair = spread_pair(src.graph, kind, opt.u0, x);
    const double s2 = dirichlet_form(src.graph, x, 2);
    std::cout << "spectral_spread=" << fmt17(pair.spectral) << "\n";
    std::cout << "graph_spread=" << fmt17(pair.graph) << "\n";
    std::cout << "dirichlet_p2=" << fmt17(s2) << "\n";
    return kOk;
}

int cmd_image_curve(const Options& opt, const std::vector<std::string>& args) {
    const GrayImage img = read_pgm_file(opt.image);
    const WeightedGraph g = image_grid_graph(img, opt.alpha, opt.beta);
    log_line("image graph: " + std::to_string(g.size()) + " nodes");

    std::vector<std::string> kind_texts;
    {
        std::istringstream ss(opt.kinds);
        std::string item;
        while (std::getline(ss, item, ',')) kind_texts.push_back(item);
    }
    if (kind_texts.empty()) throw std::invalid_argument("--kinds is empty");
    for (const std::string& text : kind_texts) {
        const DistanceKind kind = DistanceKind::parse(text);
        const UncertaintyCurve curve =
            normalize_curve(sandwich_curve(g, opt.u0, kind, opt.tol));
        std::string label = kind.label();
        for (char& c : label)
            if (c == ':') c = '-';
        const std::string path = opt.out + "." + label + ".csv";
        write_curve_csv(path, curve);
        Options per_kind = opt;
        per_kind.kind = text;
        write_manifest(per_kind, args, path);
        log_line("image curve written: " + path);
    }
    return kOk;
}

int cmd_replay(const std::string& manifest_path, const std::string& out_override) {
    std::ifstream in(manifest_path);
    if (!in) throw IoError("cannot open manifest: " + manifest_path);
    json m;
    try {
        in >> m;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad manifest JSON: ") + e.what());
    }
    std::vector<std::string> args = m.at("args").get<std::vector<std::string>>();
    if (!out_override.empty()) {
        for (std::size_t i = 0; i + 1 < args.size(); ++i)
            if (args[i] == "--out") args[i + 1] = out_override;
    }
    return run(args);
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"graph spreads, spectral spreads and lower uncertainty curves"};
    app.require_subcommand(1);
    Options opt;

    auto add_graph_flags = [&](CLI::App* cmd) {
        cmd->add_option("--family", opt.family,
                        "complete|star|ring|path|random-geometric|file");
        cmd->add_option("--input", opt.input, "graph file for --family file");
        cmd->add_option("--n", opt.n, "node count for generated families");
        cmd->add_option("--radius", opt.radius, "geometric connection radius");
        cmd->add_option("--alpha", opt.alpha, "Gaussian kernel scale");
        cmd->add_option("--beta", opt.beta, "Gaussian kernel bandwidth");
        cmd->add_option("--seed", opt.seed, "random seed (fixed default)");
        cmd->add_option("--u0", opt.u0, "center node");
        cmd->add_option("--kind", opt.kind,
                        "naive|invsim|diffusion:<alpha>|explicit[:<file>]");
    };

    CLI::App* curve = app.add_subcommand("curve", "trace one lower uncertainty curve");
    add_graph_flags(curve);
    curve->add_option("--tol", opt.tol, "certified refinement tolerance");
    curve->add_option("--out", opt.out, "output CSV path")->required();
    curve->add_flag("--gnuplot", opt.gnuplot, "also emit a gnuplot data block");
    curve->add_flag("--normalize", opt.normalize, "normalize g by its value at s=0");

    CLI::App* mean = app.add_subcommand("mean-curve", "mean normalized curve over trials");
    add_graph_flags(mean);
    mean->add_option("--tol", opt.tol, "certified refinement tolerance");
    mean->add_option("--trials", opt.trials, "number of random trials");
    mean->add_option("--grid", opt.grid, "sample grid size");
    mean->add_option("--jobs", opt.jobs, "worker threads");
    mean->add_option("--out", opt.out, "output CSV path")->required();
    mean->add_flag("--gnuplot", opt.gnuplot, "also emit a gnuplot data block");

    CLI::App* spread = app.add_subcommand("spread", "spreads of one signal");
    add_graph_flags(spread);
    spread->add_option("--signal", opt.signal, "signal file (one value per line)")
        ->required();
    spread->add_flag("--normalize", opt.normalize, "normalize the signal first");

    CLI::App* image = app.add_subcommand("image-curve", "curves of a PGM image graph");
    image->add_option("--image", opt.image, "PGM (P2/P5) input")->required();
    image->add_option("--alpha", opt.alpha, "Gaussian kernel scale");
    image->add_option("--beta", opt.beta, "Gaussian kernel bandwidth");
    image->add_option("--kinds", opt.kinds, "comma-separated distance kinds");
    image->add_option("--u0", opt.u0, "center node");
    image->add_option("--tol", opt.tol, "certified refinement tolerance");
    image->add_option("--seed", opt.seed, "recorded in the manifest");
    image->add_option("--out", opt.out, "output path prefix (one CSV per kind)")
        ->required();

    CLI::App* replay = app.add_subcommand("replay", "re-run a saved manifest");
    std::string manifest_path, out_override;
    replay->add_option("manifest", manifest_path, "manifest JSON path")->required();
    replay->add_option("--out", out_override, "override the recorded output path");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return kOk;
        }
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (curve->parsed()) return cmd_curve(opt, args);
        if (mean->parsed()) return cmd_mean_curve(opt, args);
        if (spread->parsed()) return cmd_spread(opt);
        if (image->parsed()) return cmd_image_curve(opt, args);
        if (replay->parsed()) return cmd_replay(manifest_path, out_override);
        std::cerr << "usage error: no subcommand\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    }
}

}  // namespace gsp::cli
