#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qrws/mlp.hpp"

// Derivative-free global maximization over a box, used to hunt the best
// (phi, zeta) pair against either the direct simulator or a trained
// surrogate. Two independent routes: differential evolution (rand/1/bin)
// and Sobol-sampled multistart with simplex refinement.

namespace qrws {

struct Bounds {
    std::vector<double> lo;
    std::vector<double> hi;

    std::size_t dimension() const { return lo.size(); }
    static Bounds box(double lo, double hi, std::size_t dim);
};

using Objective = std::function<double(const std::vector<double>&)>;

struct OptResult {
    std::vector<double> point;
    double value = 0.0;
    std::uint64_t evaluations = 0;
    std::string method;
    // Direct-simulation probability at the argmax when the objective was a
    // surrogate model (model-vs-truth gap).
    std::optional<double> direct_probability;
};

struct DeConfig {
    int population = 30;
    int generations = 200;
    double weight = 0.8;      // F
    double crossover = 0.9;   // CR
    std::uint64_t seed = 0;
};

OptResult differential_evolution(const Objective& objective, const Bounds& bounds,
                                 const DeConfig& config);

struct SobolConfig {
    int samples = 256;
    int top_k = 8;
    std::uint64_t seed = 0;  // perturbs nothing; kept for the result record
    int local_iterations = 200;
};

OptResult sobol_multistart(const Objective& objective, const Bounds& bounds,
                           const SobolConfig& config);

// First `count` points of a 2-D Sobol sequence mapped into the bounds.
std::vector<std::vector<double>> sobol_points_2d(int count, const Bounds& bounds);

// Bounded Nelder-Mead maximization started from `start`.
OptResult nelder_mead(const Objective& objective, const Bounds& bounds,
                      const std::vector<double>& start, int max_iterations,
                      double tolerance = 1e-10);

enum class OptMethod { DifferentialEvolution, SobolMultistart };

struct MaximizeConfig {
    DeConfig de;
    SobolConfig sobol;
    int max_coin_qubits = 4;
};

// Maximizes p over (phi, zeta) in [0, 2pi]^2. Pass model = nullptr to
// optimize the direct simulator; otherwise the surrogate is the objective
// and the result carries the simulator probability at the argmax.
OptResult maximize_probability(const MlpModel* model, int n, OptMethod method,
                               const MaximizeConfig& config = {});

}  // namespace qrws
