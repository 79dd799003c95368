#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qrws/sweep.hpp"

// From-scratch dense feed-forward surrogate for p(phi, zeta[, n]).
// Hidden layers use the scaled exponential linear unit, the single output
// neuron a logistic sigmoid. Inputs are scaled internally: phi and zeta by
// 1/(2 pi), n by 1/8. Training is mini-batch gradient descent on the mean
// squared error with adaptive moment estimation, keeping the checkpoint
// with minimal validation loss.

namespace qrws {

inline constexpr double kSeluLambda = 1.0507009873554805;
inline constexpr double kSeluAlpha = 1.6732632423543772;

struct MlpModel {
    int input_dim = 2;     // 2 or 3
    int hidden_layers = 1; // L
    int neurons = 1;       // N per hidden layer
    // L + 1 weight matrices (row-major, out x in) and bias vectors.
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;

    // metadata carried through save/load
    int trained_n = 0;  // 0 for the combined model
    std::uint64_t seed = 0;
    double best_val_loss = -1.0;  // negative when untrained

    std::size_t parameter_count() const;
};

struct TrainConfig {
    int epochs = 200;
    int batch_size = 256;
    double learning_rate = 1e-3;
    int patience = 50;        // early stopping on validation loss
    double train_fraction = 0.8;
    std::uint64_t seed = 0;
};

struct TrainReport {
    std::vector<double> train_loss;  // per epoch, mean squared error
    std::vector<double> val_loss;
    int best_epoch = 0;
};

MlpModel init_model(int input_dim, int hidden_layers, int neurons, std::uint64_t seed);

// Forward pass on a raw (unscaled) input of length input_dim.
double forward(const MlpModel& model, const std::vector<double>& input);

double predict_p(const MlpModel& model, double phi, double zeta,
                 std::optional<int> n = std::nullopt);

// Flattened parameter access (weights then biases, layer by layer);
// the gradient from backprop uses the same ordering.
std::vector<double> get_parameters(const MlpModel& model);
void set_parameters(MlpModel& model, const std::vector<double>& params);

// Mean squared error over the given samples; inputs are raw records.
double mse_loss(const MlpModel& model, const std::vector<SweepRecord>& samples);

// Loss plus its gradient with respect to the flattened parameters.
double loss_and_gradient(const MlpModel& model, const std::vector<SweepRecord>& samples,
                         std::vector<double>& gradient);

struct TrainOutcome {
    MlpModel model;
    TrainReport report;
};

// Records may mix n values when input_dim == 3.
TrainOutcome train(const std::vector<SweepRecord>& records, int input_dim,
                   int hidden_layers, int neurons, const TrainConfig& config);

struct GridSearchResult {
    std::vector<int> layer_values;
    std::vector<int> neuron_values;
    // best validation loss per (L, N) cell, row-major over layer_values x
    // neuron_values; negative entries mark failed cells.
    std::vector<double> val_loss;

    double at(std::size_t li, std::size_t ni) const {
        return val_loss[li * neuron_values.size() + ni];
    }
};

GridSearchResult grid_search(const std::vector<SweepRecord>& records, int input_dim,
                             const std::vector<int>& layer_values,
                             const std::vector<int>& neuron_values,
                             const TrainConfig& config);

// Self-describing text format; parameters round-trip bit-exactly.
void save_model(const MlpModel& model, const std::string& path);
MlpModel load_model(const std::string& path);

}  // namespace qrws
