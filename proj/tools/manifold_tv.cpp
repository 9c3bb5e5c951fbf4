// manifold-tv: batch pipeline driver for total-variation denoising of
// manifold-valued images. Subcommands synthesize phantoms, corrupt them,
// denoise, score, and convert between the MVF container and export formats;
// stages communicate only through files.
//
// Exit codes: 0 success, 2 usage error, 3 data/format error, 4 numerical
// failure (cut locus / non-converged mean).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "manifoldtv/manifoldtv.hpp"

namespace {

// Flag combinations the parser cannot reject on its own.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Output {
    bool json = false;
    nlohmann::json doc;

    void params(const std::string& subcommand,
                const std::vector<std::pair<std::string, std::string>>& kv) {
        if (json) {
            doc["subcommand"] = subcommand;
            auto& p = doc["params"];
            for (const auto& [k, v] : kv) p[k] = v;
            return;
        }
        std::cout << "# manifold-tv " << subcommand << ":";
        for (const auto& [k, v] : kv) std::cout << " " << k << "=" << v;
        std::cout << "\n";
    }

    void result(const std::string& key, const nlohmann::json& value,
                const std::string& human) {
        if (json)
            doc["results"][key] = value;
        else
            std::cout << human << "\n";
    }

    void finish() {
        // replace handler: a non-UTF-8 path in an argument must not turn a
        // successful run into a crash
        if (json)
            std::cout << doc.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace)
                      << "\n";
    }
};

std::pair<int, int> parse_shape(const std::string& text) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) return {std::stoi(text), 1};
        return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw UsageError("--shape expects n or n,m, got '" + text + "'");
    }
}

std::string file_extension(const std::string& path) {
    const auto dot = path.rfind('.');
    return dot == std::string::npos ? "" : path.substr(dot + 1);
}

// ---- synth -------------------------------------------------------------

struct SynthArgs {
    std::string phantom;
    std::string shape;
    std::string out;
};

void run_synth(const SynthArgs& a, Output& output) {
    std::string shape = a.shape;
    if (shape.empty()) shape = (a.phantom == "so3") ? "130" : "32,32";
    const auto parsed = parse_shape(shape);
    const int n = parsed.first;
    const int m = parsed.second;

    output.params("synth", {{"phantom", a.phantom},
                            {"shape", std::to_string(n) + "," + std::to_string(m)},
                            {"out", a.out}});

    mtv::ManifoldImage img = [&] {
        if (a.phantom == "dti") return mtv::synth_pos3_image(n, m);
        if (a.phantom == "s2") return mtv::synth_s2_image(n, m);
        if (a.phantom == "so3") {
            if (m != 1) throw UsageError("--phantom so3 generates an n x 1 series");
            return mtv::synth_so3_series(n);
        }
        throw UsageError("--phantom must be one of dti, s2, so3");
    }();

    mtv::write_mvf(img, a.out);
    output.result("out", a.out,
                  "wrote " + a.out + " (" + img.descriptor().tag() + " " +
                      std::to_string(img.rows()) + "x" + std::to_string(img.cols()) + ")");
}

// ---- noise -------------------------------------------------------------

struct NoiseArgs {
    std::string model;
    double sigma = -1;
    double kappa = -1;
    uint64_t seed = 0;
    std::string in, out;
    double b = 800.0;
    double a0 = 1000.0;
    int dirs = 15;
};

void run_noise(const NoiseArgs& a, Output& output) {
    output.params("noise", {{"model", a.model},
                            {"sigma", std::to_string(a.sigma)},
                            {"kappa", std::to_string(a.kappa)},
                            {"seed", std::to_string(a.seed)},
                            {"in", a.in},
                            {"out", a.out},
                            {"b", std::to_string(a.b)},
                            {"a0", std::to_string(a.a0)},
                            {"dirs", std::to_string(a.dirs)}});

    const mtv::ManifoldImage img = mtv::read_mvf(a.in);
    const mtv::RngSeed seed{a.seed};

    mtv::ManifoldImage out = [&] {
        if (a.model == "rician") {
            if (a.sigma < 0) throw UsageError("--model rician requires --sigma");
            const auto proto = mtv::DwiProtocol::fibonacci(a.dirs, a.b, a.a0);
            auto dwis = mtv::stejskal_tanner_forward(img, proto);
            for (size_t k = 0; k < dwis.size(); ++k)
                dwis[k] = mtv::rician_corrupt(dwis[k], a.sigma, seed,
                                              k * static_cast<uint64_t>(img.pixel_count()));
            return mtv::dti_ls_fit(dwis, proto);
        }
        if (a.model == "vmf") {
            if (a.kappa <= 0) throw UsageError("--model vmf requires --kappa > 0");
            return mtv::vmf_corrupt(img, a.kappa, seed);
        }
        if (a.model == "tangent") {
            if (a.sigma < 0) throw UsageError("--model tangent requires --sigma");
            return mtv::tangent_gaussian_noise(img, a.sigma, seed);
        }
        if (a.model == "wrapped") {
            if (a.sigma < 0) throw UsageError("--model wrapped requires --sigma");
            return mtv::wrapped_gaussian_noise(img, a.sigma, seed);
        }
        throw UsageError("--model must be one of rician, vmf, tangent, wrapped");
    }();

    mtv::write_mvf(out, a.out);
    output.result("out", a.out, "wrote " + a.out);
}

// ---- denoise -------------------------------------------------------------

struct DenoiseArgs {
    std::string in, data_file, out, trace;
    std::string data_term = "l2";
    std::string reg = "tv";
    double alpha = 0.0;
    int iters = 100;
    std::string algo = "cyclic";
    double lambda_c = 3.0;
    double lambda_omega = 0.95;
    double tau = 1.4142135;
    double huber_omega = 1.0;
    int threads = 0;  // 0 = unset, fall back to MANIFOLD_TV_THREADS, then 1
};

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("MANIFOLD_TV_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return n;
        } catch (const std::exception&) {
        }
        throw UsageError("MANIFOLD_TV_THREADS must be a positive integer");
    }
    return 1;
}

void run_denoise(const DenoiseArgs& a, Output& output) {
    mtv::DenoiseParams params;
    if (a.data_term == "l1")
        params.data_term = mtv::DataTermKind::l1();
    else if (a.data_term == "l2")
        params.data_term = mtv::DataTermKind::l2();
    else if (a.data_term == "huber")
        params.data_term = mtv::DataTermKind::huber(a.tau, a.huber_omega);
    else
        throw UsageError("--data must be one of l1, l2, huber");

    if (a.reg == "tv")
        params.regularizer = mtv::RegularizerKind::tv();
    else if (a.reg == "tv2")
        params.regularizer = mtv::RegularizerKind::tv2();
    else if (a.reg == "huber")
        params.regularizer = mtv::RegularizerKind::huber(a.tau, a.huber_omega);
    else
        throw UsageError("--reg must be one of tv, tv2, huber");

    if (a.algo == "cyclic")
        params.algorithm = mtv::SolverAlgorithm::Cyclic;
    else if (a.algo == "parallel")
        params.algorithm = mtv::SolverAlgorithm::Parallel;
    else if (a.algo == "parallel-fast")
        params.algorithm = mtv::SolverAlgorithm::ParallelFast;
    else
        throw UsageError("--algo must be one of cyclic, parallel, parallel-fast");

    if (a.alpha < 0) throw UsageError("--alpha must be >= 0");
    if (a.iters < 1) throw UsageError("--iters must be >= 1");
    params.alpha = a.alpha;
    params.iterations = a.iters;
    params.schedule = {a.lambda_c, a.lambda_omega};
    params.threads = resolve_threads(a.threads);

    output.params("denoise",
                  {{"in", a.in},
                   {"data-file", a.data_file.empty() ? a.in : a.data_file},
                   {"data", a.data_term},
                   {"reg", a.reg},
                   {"alpha", std::to_string(a.alpha)},
                   {"iters", std::to_string(a.iters)},
                   {"algo", a.algo},
                   {"lambda-c", std::to_string(a.lambda_c)},
                   {"lambda-omega", std::to_string(a.lambda_omega)},
                   {"tau", std::to_string(a.tau)},
                   {"huber-omega", std::to_string(a.huber_omega)},
                   {"threads", std::to_string(params.threads)},
                   {"out", a.out}});

    const mtv::ManifoldImage x0 = mtv::read_mvf(a.in);
    const mtv::ManifoldImage f = a.data_file.empty() ? x0 : mtv::read_mvf(a.data_file);

    const mtv::SolveReport report = params.algorithm == mtv::SolverAlgorithm::Cyclic
                                        ? mtv::cyclic_ppa(f, params, x0)
                                        : mtv::parallel_ppa(f, params, x0);

    mtv::write_mvf(report.output, a.out);

    if (!a.trace.empty()) {
        std::ofstream ts(a.trace, std::ios::trunc);
        if (!ts) throw std::runtime_error("cannot open trace file '" + a.trace + "'");
        ts << "iteration,functional\n";
        char buf[64];
        for (const auto& [iter, value] : report.functional_trace) {
            std::snprintf(buf, sizeof(buf), "%d,%.17g\n", iter, value);
            ts << buf;
        }
    }

    const double final_value = report.functional_trace.empty()
                                   ? mtv::functional_value(report.output, f, params)
                                   : report.functional_trace.back().second;
    output.result("functional", final_value,
                  "final functional " + std::to_string(final_value) + " after " +
                      std::to_string(report.iterations_run) + " iterations");
    if (report.mean_fallbacks > 0)
        output.result("mean_fallbacks", report.mean_fallbacks,
                      "warning: " + std::to_string(report.mean_fallbacks) +
                          " pixel means fell back to approx_mean5");
    output.result("out", a.out, "wrote " + a.out);
}

// ---- metric -------------------------------------------------------------

struct MetricArgs {
    std::string kind;
    std::string ground_truth, noisy, restored;
};

void run_metric(const MetricArgs& a, Output& output) {
    output.params("metric", {{"kind", a.kind},
                             {"g", a.ground_truth},
                             {"f", a.noisy.empty() ? "-" : a.noisy},
                             {"x", a.restored}});

    const mtv::ManifoldImage g = mtv::read_mvf(a.ground_truth);
    const mtv::ManifoldImage x = mtv::read_mvf(a.restored);

    mtv::MetricReport report;
    if (a.kind == "dsnr") {
        if (a.noisy.empty()) throw UsageError("--kind dsnr requires -f noisy.mvf");
        report = mtv::delta_snr(g, mtv::read_mvf(a.noisy), x);
    } else if (a.kind == "psnr") {
        report = mtv::psnr_rgb(g, x);
    } else {
        throw UsageError("--kind must be dsnr or psnr");
    }

    nlohmann::json value;
    if (report.infinite)
        value = {{"infinite", true}};
    else
        value = {{"db", report.value}};
    output.result(report.name, value, report.to_text());
}

// ---- convert -------------------------------------------------------------

struct ConvertArgs {
    std::string in, out, to;
};

void run_convert(const ConvertArgs& a, Output& output) {
    output.params("convert", {{"in", a.in}, {"to", a.to}, {"out", a.out}});
    const std::string ext = file_extension(a.in);

    auto read_image = [&]() -> mtv::ManifoldImage {
        if (ext == "mvf") return mtv::read_mvf(a.in);
        if (ext == "csv") return mtv::read_csv_image(a.in);
        if (ext == "ppm") return mtv::read_rgb_ppm(a.in);
        throw UsageError("convert: unsupported input extension '." + ext + "'");
    };

    if (a.to == "csv") {
        mtv::export_visual(read_image(), a.out, mtv::VisualMode::Csv);
    } else if (a.to == "mvf") {
        mtv::write_mvf(read_image(), a.out);
    } else if (a.to == "ppm") {
        const auto img = read_image();
        if (img.descriptor().kind() == mtv::ManifoldKind::S1)
            mtv::export_visual(img, a.out, mtv::VisualMode::HueRaster);
        else if (img.descriptor() == mtv::ManifoldDescriptor::euclidean(3))
            mtv::write_rgb_ppm(img, a.out);
        else
            throw UsageError("convert --to ppm expects an s1 (hue raster) or euclidean:3 "
                             "(RGB) image");
    } else if (a.to == "glyph") {
        mtv::export_visual(read_image(), a.out, mtv::VisualMode::GlyphJson);
    } else if (a.to == "lch") {
        mtv::write_mvf(mtv::rgb_image_to_lch(read_image()), a.out);
    } else if (a.to == "rgb") {
        long clamped = 0;
        mtv::write_mvf(mtv::lch_image_to_rgb(read_image(), &clamped), a.out);
        if (clamped > 0)
            output.result("clamped", clamped,
                          "note: " + std::to_string(clamped) +
                              " out-of-gamut components clamped to [0,1]");
    } else {
        throw UsageError("--to must be one of csv, mvf, ppm, glyph, lch, rgb");
    }
    output.result("out", a.out, "wrote " + a.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"total-variation denoising for manifold-valued images"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "help for every subcommand");

    bool json = false;
    app.add_flag("--json", json, "emit a machine-readable JSON report on stdout");

    SynthArgs synth;
    auto* synth_cmd = app.add_subcommand("synth", "generate a deterministic phantom");
    synth_cmd->add_option("--phantom", synth.phantom, "dti | s2 | so3")->required();
    synth_cmd->add_option("--shape", synth.shape, "n or n,m (default 32,32; so3: 130)");
    synth_cmd->add_option("-o,--out", synth.out, "output .mvf")->required();

    NoiseArgs noise;
    auto* noise_cmd = app.add_subcommand("noise", "apply a noise model");
    noise_cmd->add_option("--model", noise.model, "rician | vmf | tangent | wrapped")
        ->required();
    noise_cmd->add_option("--sigma", noise.sigma, "noise level for rician/tangent/wrapped");
    noise_cmd->add_option("--kappa", noise.kappa, "vMF concentration");
    noise_cmd->add_option("--seed", noise.seed, "64-bit RNG seed (default 0)");
    noise_cmd->add_option("--b", noise.b, "Stejskal-Tanner b (rician, default 800)");
    noise_cmd->add_option("--a0", noise.a0, "Stejskal-Tanner A0 (rician, default 1000)");
    noise_cmd->add_option("--dirs", noise.dirs, "DWI direction count (rician, default 15)");
    noise_cmd->add_option("-i,--in", noise.in, "input .mvf")->required();
    noise_cmd->add_option("-o,--out", noise.out, "output .mvf")->required();

    DenoiseArgs denoise;
    auto* denoise_cmd = app.add_subcommand("denoise", "minimize the l^p-TV^q functional");
    denoise_cmd->add_option("-i,--in", denoise.in, "image to denoise (.mvf)")->required();
    denoise_cmd->add_option("-f,--data-file", denoise.data_file,
                            "data-term image; defaults to the input");
    denoise_cmd->add_option("--data", denoise.data_term, "l1 | l2 | huber (default l2)");
    denoise_cmd->add_option("--reg", denoise.reg, "tv | tv2 | huber (default tv)");
    denoise_cmd->add_option("--alpha", denoise.alpha, "regularization weight")->required();
    denoise_cmd->add_option("--iters", denoise.iters, "iteration count (default 100)");
    denoise_cmd->add_option("--algo", denoise.algo,
                            "cyclic | parallel | parallel-fast (default cyclic)");
    denoise_cmd->add_option("--lambda-c", denoise.lambda_c, "schedule c (default 3)");
    denoise_cmd->add_option("--lambda-omega", denoise.lambda_omega,
                            "schedule omega (default 0.95)");
    denoise_cmd->add_option("--tau", denoise.tau, "Huber tau (default sqrt(2))");
    denoise_cmd->add_option("--huber-omega", denoise.huber_omega, "Huber omega (default 1)");
    denoise_cmd->add_option("--threads", denoise.threads,
                            "parallel solver workers (default $MANIFOLD_TV_THREADS or 1); "
                            "never changes the result");
    denoise_cmd->add_option("--trace", denoise.trace, "write functional trace CSV");
    denoise_cmd->add_option("-o,--out", denoise.out, "output .mvf")->required();

    MetricArgs metric;
    auto* metric_cmd = app.add_subcommand("metric", "score a restoration");
    metric_cmd->add_option("--kind", metric.kind, "dsnr | psnr")->required();
    metric_cmd->add_option("-g,--ground-truth", metric.ground_truth, "ground truth .mvf")
        ->required();
    metric_cmd->add_option("-f,--noisy", metric.noisy, "noisy data .mvf (dsnr only)");
    metric_cmd->add_option("-x,--restored", metric.restored, "restoration .mvf")->required();

    ConvertArgs convert;
    auto* convert_cmd =
        app.add_subcommand("convert", "bridge MVF, CSV, PPM, glyph JSON, and RGB/LCh");
    convert_cmd->add_option("-i,--in", convert.in, "input file (.mvf/.csv/.ppm)")->required();
    convert_cmd->add_option("--to", convert.to, "csv | mvf | ppm | glyph | lch | rgb")
        ->required();
    convert_cmd->add_option("-o,--out", convert.out, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    Output output;
    output.json = json;
    try {
        if (synth_cmd->parsed()) run_synth(synth, output);
        if (noise_cmd->parsed()) run_noise(noise, output);
        if (denoise_cmd->parsed()) run_denoise(denoise, output);
        if (metric_cmd->parsed()) run_metric(metric, output);
        if (convert_cmd->parsed()) run_convert(convert, output);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mtv::CutLocusError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const mtv::NonConvergedError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    output.finish();
    return 0;
}
