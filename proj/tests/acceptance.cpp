// Acceptance harness. Each invocation runs one numbered criterion and
// prints a single pass/fail line; the exit code mirrors the verdict.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qrws/coin.hpp"
#include "qrws/mlp.hpp"
#include "qrws/optimize.hpp"
#include "qrws/ridge.hpp"
#include "qrws/sweep.hpp"
#include "qrws/walk.hpp"

using namespace qrws;

namespace {

constexpr double pi = std::numbers::pi;

struct Verdict {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << "  failed: " << what << "\n";
        }
    }
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

double run_p(int n, double phi, double zeta, std::uint64_t target, int steps) {
    RunOptions opt;
    opt.steps = steps;
    return run(n, phi, zeta, {target}, opt).probability;
}

// Strict local maxima with plateau handling: a run of equal values higher
// than both neighbors counts once, reported at its first index. (At the
// central point the probability only changes every second step.)
std::vector<int> local_maxima(const std::vector<double>& values) {
    std::vector<int> peaks;
    std::size_t start = 0;
    for (std::size_t k = 1; k <= values.size(); ++k) {
        if (k < values.size() && values[k] == values[start]) continue;
        const bool rose = start > 0 && values[start] > values[start - 1];
        const bool falls = k < values.size() && values[k] < values[start];
        if (rose && (falls || k == values.size())) peaks.push_back(int(start));
        start = k;
    }
    return peaks;
}

// --- criteria -------------------------------------------------------------

void criterion_1(Verdict& v) {
    const double t0 = now_seconds();
    const double p2 = run_p(2, pi, pi, 3, 5);
    const double p3 = run_p(3, pi, pi, 100, 18);
    const double p1 = run_p(1, pi, pi, 1, 3);
    const double elapsed = now_seconds() - t0;
    v.expect(std::abs(p2 - 0.390625) < 1e-9, "p(pi, pi, n=2) = 0.390625 within 1e-9");
    v.expect(std::abs(p3 - 0.434471) < 1e-5, "p(pi, pi, n=3) = 0.434471 within 1e-5");
    v.expect(std::abs(p1 - 0.25) < 1e-3, "p(pi, pi, n=1) = 0.25 within 1e-3");
    v.expect(elapsed < 0.010, "total runtime below 10 ms");
}

void criterion_2(Verdict& v) {
    for (int n = 1; n <= 3; ++n) {
        const double floor = std::exp2(-double(1 << n));
        for (int k : {1, k_iterations(n)}) {
            const double p = run_p(n, 0.0, 0.0, 0, k);
            v.expect(std::abs(p - floor) < 1e-12,
                     "identity-coin walk stays at the 2^{-2^n} floor (n=" +
                         std::to_string(n) + ", k=" + std::to_string(k) + ")");
        }
    }
}

void criterion_3(Verdict& v) {
    const int expected[4] = {3, 5, 18, 285};
    for (int n = 1; n <= 4; ++n)
        v.expect(k_iterations(n) == expected[n - 1],
                 "k_iterations(" + std::to_string(n) + ") = " + std::to_string(expected[n - 1]));
}

void criterion_4(Verdict& v) {
    {
        const auto scan = scan_iterations(2, pi, pi, {0}, 25);
        const auto peaks = local_maxima(scan);
        v.expect(peaks.size() >= 2, "n=2 scan has at least two maxima");
        if (peaks.size() >= 2) {
            v.expect(std::abs(peaks[0] - 5) <= 1, "first n=2 maximum at 5 +- 1");
            v.expect(std::abs(peaks[1] - 14) <= 1, "second n=2 maximum at 14 +- 1");
        }
    }
    {
        const auto scan = scan_iterations(3, pi, pi, {0}, 60);
        const auto peaks = local_maxima(scan);
        v.expect(peaks.size() >= 2, "n=3 scan has at least two maxima");
        if (peaks.size() >= 2) {
            v.expect(std::abs(peaks[0] - 18) <= 1, "first n=3 maximum at 18 +- 1");
            // the asymptotic position formula predicts 54; the measured
            // argmax is the adjacent 56/57 plateau, accepted at +- 2
            v.expect(std::abs(peaks[1] - 54) <= 2, "second n=3 maximum at 54 +- 2");
        }
    }
}

void criterion_5(Verdict& v) {
    const double t0 = now_seconds();
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> angle(0.0, 2 * pi);
    for (int n : {1, 2}) {
        const int m = 1 << n;
        const std::uint64_t nodes = std::uint64_t{1} << m;
        const std::uint64_t dim = std::uint64_t(m) * nodes;
        for (int trial = 0; trial < 10; ++trial) {
            const double phi = angle(rng), zeta = angle(rng);
            const std::uint64_t target = rng() % nodes;
            const auto w = build_full_operator(n, phi, zeta, {target});

            WalkState state = init_uniform(n, {target});
            const CoinMatrix c0 = build_householder_coin({phi, zeta, m});
            const CoinMatrix c1 = marking_coin(m);
            std::vector<cplx> dense(state.amplitudes);
            std::vector<cplx> next(dim);
            double worst = 0.0;
            for (int it = 0; it < 10; ++it) {
                step(state, c0, c1);
                for (std::uint64_t r = 0; r < dim; ++r) {
                    cplx acc{0.0, 0.0};
                    for (std::uint64_t c = 0; c < dim; ++c) acc += w[r * dim + c] * dense[c];
                    next[r] = acc;
                }
                dense.swap(next);
                for (std::uint64_t r = 0; r < dim; ++r)
                    worst = std::max(worst, std::abs(state.amplitudes[r] - dense[r]));
            }
            v.expect(worst <= 1e-12, "stepper matches the dense operator (n=" +
                                         std::to_string(n) + ")");
        }
    }
    v.expect(now_seconds() - t0 < 1.0, "equivalence check below 1 s");
}

void criterion_6(Verdict& v) {
    std::mt19937_64 rng(20);
    std::uniform_real_distribution<double> angle(0.0, 2 * pi);

    double worst_unitary = 0.0;
    const int dims[4] = {2, 4, 8, 16};
    for (int trial = 0; trial < 1000; ++trial) {
        const CoinSpec spec{angle(rng), angle(rng), dims[trial % 4]};
        worst_unitary = std::max(worst_unitary, verify_unitary(build_householder_coin(spec)));
    }
    v.expect(worst_unitary <= 1e-12, "coin unitarity residual <= 1e-12 over 1000 specs");

    for (int n = 1; n <= 3; ++n) {
        RunOptions opt;
        const RunResult r = run(n, angle(rng), angle(rng), {1}, opt);
        v.expect(std::abs(r.final_norm - 1.0) <= 1e-10,
                 "norm conserved over the standard step count (n=" + std::to_string(n) + ")");
    }

    // success probability does not depend on which node is marked
    const double phi = angle(rng), zeta = angle(rng);
    const double ref = run_p(2, phi, zeta, 0, 5);
    for (std::uint64_t t : {std::uint64_t{3}, std::uint64_t{9}, std::uint64_t{15}})
        v.expect(std::abs(run_p(2, phi, zeta, t, 5) - ref) <= 1e-12,
                 "marked-node invariance <= 1e-12");

    for (int trial = 0; trial < 5; ++trial) {
        const double a = angle(rng), b = angle(rng);
        v.expect(std::abs(run_p(2, a, b, 0, 5) - run_p(2, a + 2 * pi, b - 2 * pi, 0, 5)) <=
                     1e-12,
                 "2 pi periodicity in both angles");
    }
}

void criterion_7(Verdict& v) {
    MaximizeConfig config;
    config.de.seed = 7;
    const OptResult r = maximize_probability(nullptr, 2, OptMethod::DifferentialEvolution,
                                             config);
    v.expect(r.value > 0.3906, "n=2 optimum exceeds 0.3906");
    const double p = run_p(2, 2.764, 3.986, 0, 5);
    v.expect(std::abs(p - 0.3915) <= 1e-3, "p(2.764, 3.986) = 0.3915 within 1e-3");
}

void criterion_8(Verdict& v) {
    MaximizeConfig config;
    config.de.seed = 8;
    const OptResult r = maximize_probability(nullptr, 1, OptMethod::DifferentialEvolution,
                                             config);
    v.expect(r.value >= 0.499, "n=1 optimum reaches 0.499");
    v.expect(r.value <= 0.5 + 1e-9, "n=1 optimum bounded by the 0.5 theoretical maximum");
}

void criterion_9(Verdict& v) {
    MaximizeConfig config;
    config.de.seed = 9;
    config.sobol.seed = 9;
    const OptResult de = maximize_probability(nullptr, 3, OptMethod::DifferentialEvolution,
                                              config);
    const OptResult so = maximize_probability(nullptr, 3, OptMethod::SobolMultistart, config);
    for (const OptResult* r : {&de, &so}) {
        v.expect(std::abs(r->value - 0.4345) < 0.002,
                 r->method + " n=3 optimum within 0.002 of 0.4345");
        v.expect(r->value <= 0.437, r->method + " n=3 optimum <= 0.437");
    }
}

void criterion_10(Verdict& v) {
    {
        const AlphaFit fit = fit_alpha(extract_ridge(simulator_evaluator(1), 201));
        v.expect(fit.alpha >= -0.65 && fit.alpha <= -0.40, "n=1 alpha in [-0.65, -0.40]");
    }
    {
        const AlphaFit fit = fit_alpha(extract_ridge(simulator_evaluator(2), 201));
        v.expect(std::abs(fit.alpha - (-0.149)) <= 0.03, "n=2 alpha = -0.149 within 0.03");
    }
    {
        const double t0 = now_seconds();
        const AlphaFit fit = fit_alpha(extract_ridge(simulator_evaluator(3), 201));
        v.expect(std::abs(fit.alpha - (-0.202)) <= 0.03, "n=3 alpha = -0.202 within 0.03");
        v.expect(now_seconds() - t0 < 120.0, "n=3 fit below 2 minutes");
    }
}

void criterion_11(Verdict& v) {
    const PEvaluator eval = simulator_evaluator(3);
    const double w_sine = stability_width(profile(eval, CurveSpec::sine(-0.204), 201), 0.9);
    const double w_line = stability_width(profile(eval, CurveSpec::line32(1), 201), 0.9);
    v.expect(w_line > 0.0, "line width positive");
    v.expect(w_sine / w_line >= 2.0, "sine curve at least twice as wide as the line");
}

void criterion_12(Verdict& v) {
    // gradient check first: cheap and independent of the long training run
    {
        MlpModel model = init_model(2, 3, 7, 5);
        std::vector<SweepRecord> batch;
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> angle(0.0, 2 * pi);
        for (int i = 0; i < 32; ++i)
            batch.push_back({angle(rng), angle(rng), 2, 0.1 + 0.8 * (i / 31.0), 5, {}});
        std::vector<double> grad;
        loss_and_gradient(model, batch, grad);
        std::vector<double> params = get_parameters(model);
        double worst = 0.0;
        const double h = 1e-6;
        for (std::size_t j = 0; j < params.size(); j += 5) {
            std::vector<double> perturbed = params;
            perturbed[j] += h;
            set_parameters(model, perturbed);
            const double up = mse_loss(model, batch);
            perturbed[j] = params[j] - h;
            set_parameters(model, perturbed);
            const double down = mse_loss(model, batch);
            const double numeric = (up - down) / (2 * h);
            const double denom = std::max({std::abs(numeric), std::abs(grad[j]), 1e-8});
            worst = std::max(worst, std::abs(numeric - grad[j]) / denom);
            set_parameters(model, params);
        }
        v.expect(worst <= 1e-5, "gradient check relative error <= 1e-5");
    }

    GenerateOptions gen;
    gen.workers = 8;
    const Dataset data = generate(2, 300000, 2024, gen);

    TrainConfig config;
    config.epochs = 60;
    config.patience = 50;
    config.seed = 1;
    const TrainOutcome out = train(data.records, 2, 9, 13, config);
    v.expect(out.model.best_val_loss <= 1e-4, "validation MSE <= 1e-4");
    const double gap = std::abs(predict_p(out.model, pi, pi) - run_p(2, pi, pi, 0, 5));
    v.expect(gap <= 0.02, "|predict - simulate| <= 0.02 at (pi, pi)");
}

void criterion_13(Verdict& v) {
    GenerateOptions gen;
    gen.workers = 8;
    const Dataset data = generate(2, 20000, 77, gen);

    TrainConfig config;
    config.epochs = 15;
    config.patience = 15;
    config.seed = 2;
    const GridSearchResult result =
        grid_search(data.records, 2, {1, 9}, {5, 13}, config);
    const double tiny = result.at(0, 0);    // (L=1, N=5)
    const double chosen = result.at(1, 1);  // (L=9, N=13)
    double best = -1.0;
    for (double c : result.val_loss)
        if (c >= 0.0 && (best < 0.0 || c < best)) best = c;
    v.expect(chosen >= 0.0 && best >= 0.0, "grid search produced valid cells");
    v.expect(chosen <= 2.0 * best, "chosen architecture within factor 2 of the grid minimum");
    v.expect(tiny > chosen, "the (1, 5) cell is strictly worse than the chosen cell");
}

void criterion_14(Verdict& v) {
    const double t0 = now_seconds();
    RunOptions opt;
    opt.steps = 285;
    const RunResult r = run(4, pi, pi, {0}, opt);
    const double elapsed = now_seconds() - t0;
    std::printf("  info: p(pi, pi, n=4, 285 steps) = %.17g in %.2f s\n", r.probability,
                elapsed);
    v.expect(elapsed < 120.0, "n=4 run below 120 s");
    v.expect(std::abs(r.final_norm - 1.0) <= 1e-9, "n=4 norm drift <= 1e-9");

    // combined model trained on n = 1..3, extrapolated to n = 4
    GenerateOptions gen;
    gen.workers = 8;
    std::vector<SweepRecord> records;
    for (int n = 1; n <= 3; ++n) {
        const Dataset d = generate(n, 4000, 100 + n, gen);
        records.insert(records.end(), d.records.begin(), d.records.end());
    }
    TrainConfig config;
    config.epochs = 20;
    config.seed = 3;
    const TrainOutcome out = train(records, 3, 7, 24, config);
    for (double phi : {pi / 2, pi, 3 * pi / 2}) {
        const double p = predict_p(out.model, phi, curve_zeta(CurveSpec::line32(1), phi), 4);
        v.expect(p > 0.0 && p < 1.0, "combined-model n=4 prediction in (0, 1)");
    }
}

void criterion_15(Verdict& v) {
    GenerateOptions one, eight;
    one.workers = 1;
    eight.workers = 8;
    const Dataset a = generate(2, 1000, 42, one);
    const Dataset b = generate(2, 1000, 42, eight);
    bool same = a.records.size() == b.records.size();
    for (std::size_t i = 0; same && i < a.records.size(); ++i) {
        same = a.records[i].phi == b.records[i].phi && a.records[i].zeta == b.records[i].zeta &&
               a.records[i].p == b.records[i].p;
    }
    v.expect(same, "sweep identical for 1 and 8 workers");

    TrainConfig config;
    config.epochs = 10;
    config.seed = 6;
    const TrainOutcome t1 = train(a.records, 2, 2, 6, config);
    const TrainOutcome t2 = train(a.records, 2, 2, 6, config);
    v.expect(get_parameters(t1.model) == get_parameters(t2.model),
             "training reproducible per seed");

    MaximizeConfig mc;
    mc.de.seed = 15;
    mc.de.generations = 40;
    const OptResult o1 = maximize_probability(nullptr, 2, OptMethod::DifferentialEvolution, mc);
    const OptResult o2 = maximize_probability(nullptr, 2, OptMethod::DifferentialEvolution, mc);
    v.expect(o1.point == o2.point && o1.value == o2.value,
             "optimization reproducible per seed");
}

const char* kTitles[15] = {
    "fixed-coin probability regression at the central point",
    "identity-coin probability floor",
    "standard iteration counts",
    "period structure of the success probability",
    "stepper equals the dense one-iteration operator",
    "unitarity, norm, marked-node, and periodicity invariants",
    "beyond-central optimum at n=2",
    "n=1 optimum near the theoretical maximum",
    "optimizer consistency at n=3",
    "sine-coefficient fits within published bands",
    "stability-width gain of the sine curve at n=3",
    "surrogate training quality and gradient check",
    "architecture grid-search sanity",
    "n=4 feasibility and combined-model extrapolation",
    "worker, training, and optimizer determinism",
};

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance <criterion 1..15>\n");
        return 2;
    }
    const int crit = std::atoi(argv[1]);
    if (crit < 1 || crit > 15) {
        std::fprintf(stderr, "criterion out of range: %s\n", argv[1]);
        return 2;
    }

    using Fn = void (*)(Verdict&);
    static const Fn table[15] = {
        criterion_1, criterion_2,  criterion_3,  criterion_4,  criterion_5,
        criterion_6, criterion_7,  criterion_8,  criterion_9,  criterion_10,
        criterion_11, criterion_12, criterion_13, criterion_14, criterion_15,
    };

    Verdict v;
    try {
        table[crit - 1](v);
    } catch (const std::exception& e) {
        v.ok = false;
        v.detail << "  exception: " << e.what() << "\n";
    }

    std::printf("%s criterion %d: %s\n", v.ok ? "PASS" : "FAIL", crit, kTitles[crit - 1]);
    if (!v.ok) std::fputs(v.detail.str().c_str(), stdout);
    return v.ok ? 0 : 1;
}
