// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] names the CLI binary (used by the format/pipeline
// criterion); everything else runs against the library.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "oracle.hpp"

using namespace mtv;

namespace {

int failures = 0;
std::string cli_path;
std::filesystem::path work_dir;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void report(int index, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    std::printf("[%s] %d. %s: %s (%.2f s)\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

int run_cli(const std::string& args) {
    const std::string cmd = cli_path + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string wfile(const std::string& name) { return (work_dir / name).string(); }

bool files_identical(const std::string& a, const std::string& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    if (!fa || !fb) return false;
    const std::string ca((std::istreambuf_iterator<char>(fa)),
                         std::istreambuf_iterator<char>());
    const std::string cb((std::istreambuf_iterator<char>(fb)),
                         std::istreambuf_iterator<char>());
    return !ca.empty() && ca == cb;
}

// 1. closed-form path lengths vs brute-force surrogate minimization
void criterion_prox_oracle() {
    Timer timer;
    oracle::Rng rng(1001);
    std::uniform_real_distribution<double> u5(0.0, 5.0);
    const int trials = 10000;

    double worst = 0;
    const DataTermKind data_kinds[] = {DataTermKind::l1(), DataTermKind::l2(),
                                       DataTermKind::huber(std::sqrt(2.0), 1.0)};
    for (const auto& kind : data_kinds)
        for (int k = 0; k < trials; ++k) {
            const double lambda = u5(rng), d = u5(rng);
            worst = std::max(worst, std::abs(calc_t_data(lambda, kind, d) -
                                             oracle::brute_t_data(lambda, kind, d)));
        }
    const RegularizerKind reg_kinds[] = {RegularizerKind::tv(), RegularizerKind::tv2(),
                                         RegularizerKind::huber(std::sqrt(2.0), 1.0)};
    for (const auto& kind : reg_kinds)
        for (int k = 0; k < trials; ++k) {
            const double lambda = u5(rng), d = u5(rng);
            worst = std::max(worst, std::abs(calc_t_reg(lambda, kind, d) -
                                             oracle::brute_t_reg(lambda, kind, d)));
        }

    const double secs = timer.seconds();
    report(1, "prox oracle suite", worst < 1e-5 && secs < 10.0,
           fmt("10000 triples x 6 kinds, max |dt| = %.2e", worst), secs);
}

// 2. euclidean exactness of the cyclic solver
void criterion_euclidean_exact() {
    Timer timer;
    ManifoldImage f(ManifoldDescriptor::euclidean(1), 4, 1);
    const double data[4] = {0, 0, 1, 1};
    for (int p = 0; p < 4; ++p) f.pixel(p)[0] = data[p];

    DenoiseParams params;
    params.data_term = DataTermKind::l2();
    params.regularizer = RegularizerKind::tv();
    params.alpha = 0.25;
    params.iterations = 1000;
    // lambda_1000 * alpha bounds the end-of-sweep offset at the jump pixel;
    // this schedule puts it at 5e-4, inside the 1e-3 bound
    params.schedule = {2.0, 1.0};

    const auto out = cyclic_ppa(f, params).output;
    const double expected[4] = {0.125, 0.125, 0.875, 0.875};
    double worst = 0;
    for (int p = 0; p < 4; ++p)
        worst = std::max(worst, std::abs(out.pixel(p)[0] - expected[p]));

    const double secs = timer.seconds();
    report(2, "euclidean exactness", worst < 1e-3 && secs < 1.0,
           fmt("max deviation from closed form = %.2e (schedule c=2, omega=1)", worst),
           secs);
}

// 3. solver agreement on the Hadamard manifold Pos3
void criterion_hadamard_agreement() {
    Timer timer;
    const auto clean = synth_pos3_image(8, 8);
    const auto f = tangent_gaussian_noise(clean, 0.3, RngSeed{33});

    DenoiseParams params;
    params.data_term = DataTermKind::l2();
    params.regularizer = RegularizerKind::tv();
    params.alpha = 0.5;
    params.iterations = 500;

    params.algorithm = SolverAlgorithm::Cyclic;
    const auto a = cyclic_ppa(f, params);
    params.algorithm = SolverAlgorithm::Parallel;
    params.threads = 4;
    const auto b = parallel_ppa(f, params);
    params.algorithm = SolverAlgorithm::ParallelFast;
    const auto c = parallel_ppa(f, params);

    auto mean_dist = [&](const ManifoldImage& x, const ManifoldImage& y) {
        double s = 0;
        for (int p = 0; p < x.pixel_count(); ++p)
            s += dist(x.descriptor(), x.pixel(p), y.pixel(p));
        return s / x.pixel_count();
    };
    const double dab = mean_dist(a.output, b.output);
    const double dac = mean_dist(a.output, c.output);
    const double dbc = mean_dist(b.output, c.output);
    const double worst_dist = std::max({dab, dac, dbc});

    const double fa = a.functional_trace.back().second;
    const double fb = b.functional_trace.back().second;
    const double fc = c.functional_trace.back().second;
    const double worst_rel =
        std::max({std::abs(fa - fb), std::abs(fa - fc), std::abs(fb - fc)}) /
        std::min({fa, fb, fc});

    const double secs = timer.seconds();
    report(3, "hadamard solver agreement",
           worst_dist <= 1e-2 && worst_rel <= 1e-3 && secs < 60.0,
           fmt("max mean distance = %.2e, max functional gap = %.2e%%", worst_dist,
               100.0 * worst_rel),
           secs);
}

// 4. exp/log round trips, unit speed, Rodrigues vs power series
void criterion_roundtrip() {
    Timer timer;
    oracle::Rng rng(1004);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double worst_rt = 0, worst_speed = 0;
    for (const auto& m : oracle::all_manifolds()) {
        std::vector<double> b(m.element_len()), lg(m.element_len()),
            back(m.element_len()), g(m.element_len());
        for (int k = 0; k < 1000; ++k) {
            const auto a = oracle::random_point(m, rng);
            exp_map(m, a, oracle::random_tangent(m, a, 1.0, rng), b);
            log_map(m, a, b, lg);
            exp_map(m, a, lg, back);
            worst_rt = std::max(worst_rt, dist(m, back, b));

            const double d = dist(m, a, b);
            const double t = unit(rng) * d;
            geodesic_point(m, a, b, t, g);
            worst_speed = std::max(worst_speed, std::abs(dist(m, a, g) - t));
        }
    }

    double worst_rod = 0;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        double axis[3], n = 0;
        do {
            for (double& x : axis) x = gauss(rng);
            n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
        } while (n < 1e-6);
        const double theta = unit(rng) * (kPi - 0.1);
        const Mat3 w = skew_from_axis(theta * axis[0] / n, theta * axis[1] / n,
                                      theta * axis[2] / n);
        const Mat3 r = so3_rodrigues(w);
        const Mat3 s = oracle::expm_series(w);
        double diff = 0;
        for (int q = 0; q < 9; ++q) diff = std::max(diff, std::abs(r.a[q] - s.a[q]));
        worst_rod = std::max(worst_rod, diff);
    }

    const double secs = timer.seconds();
    report(4, "manifold round-trip suite",
           worst_rt <= 1e-9 && worst_speed <= 1e-9 && worst_rod <= 1e-10 && secs < 5.0,
           fmt("round trip %.2e, unit speed %.2e, rodrigues vs series %.2e", worst_rt,
               worst_speed, worst_rod),
           secs);
}

// 5. Karcher mean suite
void criterion_mean() {
    Timer timer;
    oracle::Rng rng(1005);
    std::normal_distribution<double> gauss(0.0, 2.0);

    const auto e3 = ManifoldDescriptor::euclidean(3);
    double worst_mean = 0, worst_approx = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ManifoldPoint> pts;
        double sums[3] = {0, 0, 0};
        for (int k = 0; k < 5; ++k) {
            std::vector<double> c = {gauss(rng), gauss(rng), gauss(rng)};
            for (int d = 0; d < 3; ++d) sums[d] += c[d];
            pts.emplace_back(e3, c);
        }
        const auto mean = karcher_mean(pts);
        const auto fast = approx_mean5(pts[0], pts[1], pts[2], pts[3], pts[4]);
        for (int d = 0; d < 3; ++d) {
            worst_mean = std::max(worst_mean, std::abs(mean.coords()[d] - sums[d] / 5));
            worst_approx = std::max(worst_approx, std::abs(fast.coords()[d] - sums[d] / 5));
        }
    }

    // S2 clusters of radius 0.5 must converge to 1e-10 within 100 iterations
    const auto s2 = ManifoldDescriptor::s2();
    bool converged = true;
    for (int trial = 0; trial < 100; ++trial) {
        const auto center = oracle::random_point(s2, rng);
        std::vector<ManifoldPoint> pts;
        std::vector<double> buf(3);
        for (int k = 0; k < 5; ++k) {
            exp_map(s2, center, oracle::random_tangent(s2, center, 0.5, rng), buf);
            pts.emplace_back(s2, buf);
        }
        try {
            karcher_mean(pts, MeanConfig{1e-10, 100});
        } catch (const NonConvergedError&) {
            converged = false;
        }
    }

    const double secs = timer.seconds();
    report(5, "karcher mean suite",
           worst_mean < 1e-12 && worst_approx < 1e-12 && converged && secs < 5.0,
           fmt("euclidean gap %.2e / approx gap %.2e, S2 clusters %s", worst_mean,
               worst_approx, converged ? "converged" : "NON-CONVERGED"),
           secs);
}

// 6. denoising efficacy on S2 images and SO3 series
void criterion_denoising() {
    Timer timer;

    // S2: 32x32 phantom, vMF kappa = 30, alpha tuned over {0.1, 0.2, 0.4}
    const auto clean = synth_s2_image(32, 32);
    const auto noisy = vmf_corrupt(clean, 30.0, RngSeed{66});
    double best_snr = -1e9;
    for (double alpha : {0.1, 0.2, 0.4}) {
        DenoiseParams params;
        params.alpha = alpha;
        params.iterations = 300;
        const auto out = cyclic_ppa(noisy, params).output;
        best_snr = std::max(best_snr, delta_snr(clean, noisy, out).value);
    }

    // SO3: 130-sample series, tangent sigma = 0.12
    const auto series = synth_so3_series(130);
    const auto series_noisy = tangent_gaussian_noise(series, 0.12, RngSeed{67});
    DenoiseParams params;
    params.alpha = 0.5;
    params.iterations = 300;
    const auto restored = cyclic_ppa(series_noisy, params).output;
    const double so3_snr = delta_snr(series, series_noisy, restored).value;

    const auto& so3 = series.descriptor();
    const double jump_clean = dist(so3, series.pixel(49, 0), series.pixel(50, 0));
    const double jump_restored = dist(so3, restored.pixel(49, 0), restored.pixel(50, 0));
    const double retention = jump_restored / jump_clean;

    const double secs = timer.seconds();
    report(6, "denoising efficacy",
           best_snr >= 3.0 && so3_snr >= 3.0 && retention >= 0.5 && secs < 120.0,
           fmt("S2 best dSNR %.2f dB, SO3 dSNR %.2f dB, jump retention %.0f%%", best_snr,
               so3_snr, 100.0 * retention),
           secs);
}

// 7. DTI pipeline and the vMF sampler statistic
void criterion_dti() {
    Timer timer;
    const auto proto = DwiProtocol::fibonacci();
    oracle::Rng rng(1007);
    const auto pos3 = ManifoldDescriptor::pos3();

    ManifoldImage tensors(pos3, 10, 10);
    for (int p = 0; p < 100; ++p) {
        const auto pt = oracle::random_dti_tensor(rng);
        std::copy(pt.begin(), pt.end(), tensors.pixel(p).begin());
    }
    const auto fit = dti_ls_fit(stejskal_tanner_forward(tensors, proto), proto);
    double worst_rt = 0;
    for (int p = 0; p < 100; ++p)
        worst_rt = std::max(worst_rt, dist(pos3, fit.pixel(p), tensors.pixel(p)));

    auto dwis = stejskal_tanner_forward(synth_pos3_image(16, 16), proto);
    for (size_t k = 0; k < dwis.size(); ++k)
        dwis[k] = rician_corrupt(dwis[k], 45.0, RngSeed{77},
                                 k * static_cast<uint64_t>(256));
    const bool all_spd = !dti_ls_fit(dwis, proto).validate().has_value();

    double worst_vmf = 0;
    const std::array<double, 3> mu = {0, 0, 1};
    for (double kappa : {5.0, 30.0, 75.0}) {
        RngStream stream(2025, static_cast<uint64_t>(kappa));
        double sum[3] = {0, 0, 0};
        const int n = 100000;
        for (int k = 0; k < n; ++k) {
            const auto s = vmf_sample(mu, kappa, stream);
            for (int d = 0; d < 3; ++d) sum[d] += s[d];
        }
        const double resultant =
            std::sqrt(sum[0] * sum[0] + sum[1] * sum[1] + sum[2] * sum[2]) / n;
        const double expected = 1.0 / std::tanh(kappa) - 1.0 / kappa;
        worst_vmf = std::max(worst_vmf, std::abs(resultant - expected) / expected);
    }

    const double secs = timer.seconds();
    report(7, "dti pipeline",
           worst_rt <= 1e-9 && all_spd && worst_vmf <= 0.02 && secs < 30.0,
           fmt("round trip %.2e, refit %s, vMF statistic gap %.2f%%", worst_rt,
               all_spd ? "all SPD" : "NOT SPD", 100.0 * worst_vmf),
           secs);
}

// 8. container format and CLI determinism
void criterion_format_cli() {
    Timer timer;
    bool ok = true;
    std::string detail;

    // MVF round trip, bit-exact for every tag
    oracle::Rng rng(1008);
    int idx = 0;
    for (const char* tag : {"s1", "s2", "so3", "pos3", "euclidean:2", "lch"}) {
        const auto m = ManifoldDescriptor::from_tag(tag);
        ManifoldImage img(m, 3, 4);
        for (int p = 0; p < img.pixel_count(); ++p) {
            const auto pt = oracle::random_point(m, rng);
            std::copy(pt.begin(), pt.end(), img.pixel(p).begin());
        }
        const auto path = wfile("rt" + std::to_string(idx++) + ".mvf");
        write_mvf(img, path);
        if (read_mvf(path).data() != img.data()) {
            ok = false;
            detail = std::string("round trip broke for ") + tag;
        }
    }

    // CLI: synthesize + corrupt once, then check the fixed point and the
    // determinism contracts byte for byte
    if (ok && run_cli("synth --phantom s2 --shape 8,8 -o " + wfile("g.mvf")) != 0) {
        ok = false;
        detail = "synth failed";
    }
    if (ok && run_cli("noise --model vmf --kappa 40 --seed 5 -i " + wfile("g.mvf") +
                      " -o " + wfile("f.mvf")) != 0) {
        ok = false;
        detail = "noise failed";
    }

    if (ok) {
        // alpha = 0 is a byte-level fixed point
        run_cli("denoise -i " + wfile("f.mvf") + " --alpha 0 --iters 20 -o " +
                wfile("fixed.mvf"));
        if (!files_identical(wfile("f.mvf"), wfile("fixed.mvf"))) {
            ok = false;
            detail = "alpha=0 is not a byte-level fixed point";
        }
    }
    if (ok) {
        // identical seeds reproduce byte-identically across runs
        run_cli("noise --model vmf --kappa 40 --seed 5 -i " + wfile("g.mvf") + " -o " +
                wfile("f2.mvf"));
        if (!files_identical(wfile("f.mvf"), wfile("f2.mvf"))) {
            ok = false;
            detail = "seeded noise is not reproducible";
        }
    }
    if (ok) {
        // the parallel solver result is thread-count independent
        const std::string base = "denoise -i " + wfile("f.mvf") +
                                 " --alpha 0.2 --iters 60 --algo parallel ";
        run_cli(base + "--threads 1 -o " + wfile("t1.mvf"));
        run_cli(base + "--threads 8 -o " + wfile("t8.mvf"));
        if (!files_identical(wfile("t1.mvf"), wfile("t8.mvf"))) {
            ok = false;
            detail = "--threads changed the result";
        }
    }
    if (ok) detail = "round trips bit-exact, CLI reproducible";

    const double secs = timer.seconds();
    report(8, "format and cli", ok && secs < 10.0, detail, secs);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-manifold-tv-cli>\n", argv[0]);
        return 2;
    }
    cli_path = argv[1];
    work_dir = std::filesystem::temp_directory_path() /
               ("mtv-acceptance-" + std::to_string(::getpid()));
    std::filesystem::create_directories(work_dir);

    criterion_prox_oracle();
    criterion_euclidean_exact();
    criterion_hadamard_agreement();
    criterion_roundtrip();
    criterion_mean();
    criterion_denoising();
    criterion_dti();
    criterion_format_cli();

    std::filesystem::remove_all(work_dir);
    if (failures == 0) {
        std::printf("acceptance: all 8 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", failures);
    return 1;
}
