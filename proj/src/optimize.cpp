#include "qrws/optimize.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qrws/walk.hpp"

namespace qrws {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_bounds(const Bounds& bounds) {
    if (bounds.lo.size() != bounds.hi.size() || bounds.lo.empty())
        throw std::invalid_argument("bounds must be nonempty and consistent");
    for (std::size_t d = 0; d < bounds.lo.size(); ++d)
        if (!(bounds.lo[d] < bounds.hi[d]))
            throw std::invalid_argument("each bound must satisfy lo < hi");
}

void clamp_to(const Bounds& bounds, std::vector<double>& x) {
    for (std::size_t d = 0; d < x.size(); ++d)
        x[d] = std::clamp(x[d], bounds.lo[d], bounds.hi[d]);
}

// Non-finite objective values are treated as rejected candidates.
double safe_eval(const Objective& objective, const std::vector<double>& x,
                 std::uint64_t& evals) {
    ++evals;
    const double v = objective(x);
    return std::isfinite(v) ? v : kNegInf;
}

}  // namespace

Bounds Bounds::box(double lo, double hi, std::size_t dim) {
    Bounds b;
    b.lo.assign(dim, lo);
    b.hi.assign(dim, hi);
    return b;
}

OptResult differential_evolution(const Objective& objective, const Bounds& bounds,
                                 const DeConfig& config) {
    check_bounds(bounds);
    if (config.population < 4)
        throw std::invalid_argument("rand/1/bin needs a population of at least 4");
    const std::size_t dim = bounds.dimension();
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    OptResult best;
    best.method = "de";
    best.value = kNegInf;

    std::vector<std::vector<double>> pop(config.population, std::vector<double>(dim));
    std::vector<double> fitness(config.population);
    for (int i = 0; i < config.population; ++i) {
        for (std::size_t d = 0; d < dim; ++d)
            pop[i][d] = bounds.lo[d] + unit(rng) * (bounds.hi[d] - bounds.lo[d]);
        fitness[i] = safe_eval(objective, pop[i], best.evaluations);
        if (fitness[i] > best.value) {
            best.value = fitness[i];
            best.point = pop[i];
        }
    }

    std::uniform_int_distribution<int> pick(0, config.population - 1);
    std::uniform_int_distribution<int> pick_dim(0, int(dim) - 1);
    std::vector<double> trial(dim);
    for (int gen = 0; gen < config.generations; ++gen) {
        for (int i = 0; i < config.population; ++i) {
            int r1, r2, r3;
            do r1 = pick(rng); while (r1 == i);
            do r2 = pick(rng); while (r2 == i || r2 == r1);
            do r3 = pick(rng); while (r3 == i || r3 == r1 || r3 == r2);
            const int forced = pick_dim(rng);
            for (std::size_t d = 0; d < dim; ++d) {
                if (int(d) == forced || unit(rng) < config.crossover)
                    trial[d] = pop[r1][d] + config.weight * (pop[r2][d] - pop[r3][d]);
                else
                    trial[d] = pop[i][d];
            }
            clamp_to(bounds, trial);
            const double f = safe_eval(objective, trial, best.evaluations);
            if (f >= fitness[i]) {
                pop[i] = trial;
                fitness[i] = f;
                if (f > best.value) {
                    best.value = f;
                    best.point = trial;
                }
            }
        }
    }
    return best;
}

std::vector<std::vector<double>> sobol_points_2d(int count, const Bounds& bounds) {
    check_bounds(bounds);
    if (bounds.dimension() != 2)
        throw std::invalid_argument("the Sobol generator here is two-dimensional");
    if (count < 1) throw std::invalid_argument("need at least one Sobol point");

    constexpr int kBits = 32;
    // Direction numbers: dimension 0 is the van der Corput sequence,
    // dimension 1 uses m_k = m_{k-1} xor 2 m_{k-1} (m_1 = 1).
    std::uint32_t v0[kBits], v1[kBits];
    std::uint32_t m_prev = 1;
    for (int k = 0; k < kBits; ++k) {
        v0[k] = std::uint32_t{1} << (31 - k);
        const std::uint32_t m = (k == 0) ? 1 : (m_prev ^ (m_prev << 1));
        v1[k] = m << (31 - k);
        m_prev = m;
    }

    std::vector<std::vector<double>> points;
    points.reserve(count);
    std::uint32_t x0 = 0, x1 = 0;
    for (int i = 0; i < count; ++i) {
        const double u0 = double(x0) * 0x1.0p-32;
        const double u1 = double(x1) * 0x1.0p-32;
        points.push_back({bounds.lo[0] + u0 * (bounds.hi[0] - bounds.lo[0]),
                          bounds.lo[1] + u1 * (bounds.hi[1] - bounds.lo[1])});
        const int bit = std::countr_zero(std::uint32_t(i + 1));
        x0 ^= v0[bit];
        x1 ^= v1[bit];
    }
    return points;
}

OptResult nelder_mead(const Objective& objective, const Bounds& bounds,
                      const std::vector<double>& start, int max_iterations,
                      double tolerance) {
    check_bounds(bounds);
    const std::size_t dim = bounds.dimension();
    if (start.size() != dim) throw std::invalid_argument("start point dimension mismatch");

    OptResult result;
    result.method = "nelder-mead";

    struct Vertex {
        std::vector<double> x;
        double f;
    };
    std::vector<Vertex> simplex;
    auto eval = [&](std::vector<double> x) {
        clamp_to(bounds, x);
        const double f = safe_eval(objective, x, result.evaluations);
        return Vertex{std::move(x), f};
    };

    simplex.push_back(eval(start));
    for (std::size_t d = 0; d < dim; ++d) {
        std::vector<double> x = start;
        const double span = 0.05 * (bounds.hi[d] - bounds.lo[d]);
        x[d] += (x[d] + span <= bounds.hi[d]) ? span : -span;
        simplex.push_back(eval(x));
    }

    constexpr double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    for (int iter = 0; iter < max_iterations; ++iter) {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex& a, const Vertex& b) { return a.f > b.f; });
        if (std::abs(simplex.front().f - simplex.back().f) < tolerance) break;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t v = 0; v + 1 < simplex.size(); ++v)
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[v].x[d];
        for (double& c : centroid) c /= double(dim);

        Vertex& worst = simplex.back();
        std::vector<double> reflected(dim);
        for (std::size_t d = 0; d < dim; ++d)
            reflected[d] = centroid[d] + alpha * (centroid[d] - worst.x[d]);
        Vertex r = eval(reflected);

        if (r.f > simplex.front().f) {
            std::vector<double> expanded(dim);
            for (std::size_t d = 0; d < dim; ++d)
                expanded[d] = centroid[d] + gamma * (reflected[d] - centroid[d]);
            Vertex e = eval(expanded);
            worst = (e.f > r.f) ? e : r;
        } else if (r.f > simplex[simplex.size() - 2].f) {
            worst = r;
        } else {
            std::vector<double> contracted(dim);
            for (std::size_t d = 0; d < dim; ++d)
                contracted[d] = centroid[d] + rho * (worst.x[d] - centroid[d]);
            Vertex c = eval(contracted);
            if (c.f > worst.f) {
                worst = c;
            } else {
                for (std::size_t v = 1; v < simplex.size(); ++v) {
                    for (std::size_t d = 0; d < dim; ++d)
                        simplex[v].x[d] =
                            simplex[0].x[d] + sigma * (simplex[v].x[d] - simplex[0].x[d]);
                    simplex[v] = eval(simplex[v].x);
                }
            }
        }
    }

    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.f > b.f; });
    result.point = simplex.front().x;
    result.value = simplex.front().f;
    return result;
}

OptResult sobol_multistart(const Objective& objective, const Bounds& bounds,
                           const SobolConfig& config) {
    check_bounds(bounds);
    if (config.top_k < 1 || config.samples < config.top_k)
        throw std::invalid_argument("need samples >= top_k >= 1");

    OptResult best;
    best.method = "sobol";
    best.value = kNegInf;

    const auto points = sobol_points_2d(config.samples, bounds);
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        scored.emplace_back(safe_eval(objective, points[i], best.evaluations), i);
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    for (int k = 0; k < config.top_k; ++k) {
        const auto& seed_point = points[scored[std::size_t(k)].second];
        OptResult local =
            nelder_mead(objective, bounds, seed_point, config.local_iterations);
        best.evaluations += local.evaluations;
        if (local.value > best.value) {
            best.value = local.value;
            best.point = local.point;
        }
        if (scored[std::size_t(k)].first > best.value) {
            best.value = scored[std::size_t(k)].first;
            best.point = seed_point;
        }
    }
    return best;
}

OptResult maximize_probability(const MlpModel* model, int n, OptMethod method,
                               const MaximizeConfig& config) {
    const Bounds bounds = Bounds::box(0.0, 2.0 * std::numbers::pi, 2);
    RunOptions run_opt;
    run_opt.max_coin_qubits = config.max_coin_qubits;

    Objective objective;
    if (model) {
        const std::optional<int> qubits =
            (model->input_dim == 3) ? std::optional<int>(n) : std::nullopt;
        objective = [model, qubits](const std::vector<double>& x) {
            return predict_p(*model, x[0], x[1], qubits);
        };
    } else {
        objective = [n, run_opt](const std::vector<double>& x) {
            return run(n, x[0], x[1], {0}, run_opt).probability;
        };
    }

    OptResult result = (method == OptMethod::DifferentialEvolution)
                           ? differential_evolution(objective, bounds, config.de)
                           : sobol_multistart(objective, bounds, config.sobol);
    if (model)
        result.direct_probability =
            run(n, result.point[0], result.point[1], {0}, run_opt).probability;
    return result;
}

}  // namespace qrws
