#include "qrws/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qrws {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCoinScale = 8.0;  // divisor for the n input

double selu(double x) {
    return x > 0.0 ? kSeluLambda * x : kSeluLambda * kSeluAlpha * std::expm1(x);
}

double selu_derivative(double x) {
    return x > 0.0 ? kSeluLambda : kSeluLambda * kSeluAlpha * std::exp(x);
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::vector<int> layer_sizes(const MlpModel& model) {
    std::vector<int> sizes;
    sizes.push_back(model.input_dim);
    for (int l = 0; l < model.hidden_layers; ++l) sizes.push_back(model.neurons);
    sizes.push_back(1);
    return sizes;
}

void scale_input(const MlpModel& model, const std::vector<double>& raw,
                 std::vector<double>& scaled) {
    scaled.resize(raw.size());
    scaled[0] = raw[0] / kTwoPi;
    scaled[1] = raw[1] / kTwoPi;
    if (model.input_dim == 3) scaled[2] = raw[2] / kCoinScale;
}

// Forward pass keeping pre-activations and activations for backprop.
struct Workspace {
    std::vector<std::vector<double>> pre;  // per layer (excluding input)
    std::vector<std::vector<double>> act;  // act[0] = scaled input
};

double forward_into(const MlpModel& model, const std::vector<double>& raw, Workspace& ws) {
    const auto sizes = layer_sizes(model);
    const int layers = int(model.weights.size());
    ws.pre.resize(layers);
    ws.act.resize(layers + 1);
    scale_input(model, raw, ws.act[0]);
    for (int l = 0; l < layers; ++l) {
        const int out = sizes[l + 1];
        const int in = sizes[l];
        ws.pre[l].assign(out, 0.0);
        ws.act[l + 1].resize(out);
        const auto& w = model.weights[l];
        const auto& prev = ws.act[l];
        for (int o = 0; o < out; ++o) {
            double z = model.biases[l][o];
            const double* row = w.data() + std::size_t(o) * in;
            for (int i = 0; i < in; ++i) z += row[i] * prev[i];
            ws.pre[l][o] = z;
            ws.act[l + 1][o] = (l == layers - 1) ? sigmoid(z) : selu(z);
        }
    }
    return ws.act.back()[0];
}

std::vector<double> record_input(const MlpModel& model, const SweepRecord& rec) {
    if (model.input_dim == 3) return {rec.phi, rec.zeta, double(rec.n)};
    return {rec.phi, rec.zeta};
}

struct AdamState {
    std::vector<double> m, v;
    long t = 0;
};

void adam_step(std::vector<double>& params, const std::vector<double>& grad,
               AdamState& state, double lr) {
    constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    if (state.m.empty()) {
        state.m.assign(params.size(), 0.0);
        state.v.assign(params.size(), 0.0);
    }
    ++state.t;
    const double c1 = 1.0 - std::pow(beta1, double(state.t));
    const double c2 = 1.0 - std::pow(beta2, double(state.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = beta1 * state.m[i] + (1.0 - beta1) * grad[i];
        state.v[i] = beta2 * state.v[i] + (1.0 - beta2) * grad[i] * grad[i];
        params[i] -= lr * (state.m[i] / c1) / (std::sqrt(state.v[i] / c2) + eps);
    }
}

}  // namespace

std::size_t MlpModel::parameter_count() const {
    std::size_t count = 0;
    for (std::size_t l = 0; l < weights.size(); ++l)
        count += weights[l].size() + biases[l].size();
    return count;
}

MlpModel init_model(int input_dim, int hidden_layers, int neurons, std::uint64_t seed) {
    if (input_dim != 2 && input_dim != 3)
        throw std::invalid_argument("input dimension must be 2 or 3");
    if (hidden_layers < 1 || neurons < 1)
        throw std::invalid_argument("need at least one hidden layer and one neuron");
    MlpModel model;
    model.input_dim = input_dim;
    model.hidden_layers = hidden_layers;
    model.neurons = neurons;
    model.seed = seed;
    const auto sizes = layer_sizes(model);
    std::mt19937_64 rng(seed);
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        const int in = sizes[l];
        const int out = sizes[l + 1];
        // zero-mean normal with variance 1/fan_in; biases zero
        std::normal_distribution<double> dist(0.0, std::sqrt(1.0 / in));
        std::vector<double> w(std::size_t(out) * in);
        for (double& x : w) x = dist(rng);
        model.weights.push_back(std::move(w));
        model.biases.emplace_back(out, 0.0);
    }
    return model;
}

double forward(const MlpModel& model, const std::vector<double>& input) {
    if (int(input.size()) != model.input_dim)
        throw std::invalid_argument("input length does not match model input dimension");
    Workspace ws;
    return forward_into(model, input, ws);
}

double predict_p(const MlpModel& model, double phi, double zeta, std::optional<int> n) {
    if (model.input_dim == 3) {
        if (!n) throw std::invalid_argument("combined model requires the coin qubit count");
        return forward(model, {phi, zeta, double(*n)});
    }
    if (n) throw std::invalid_argument("two-input model takes no coin qubit count");
    return forward(model, {phi, zeta});
}

std::vector<double> get_parameters(const MlpModel& model) {
    std::vector<double> params;
    params.reserve(model.parameter_count());
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        params.insert(params.end(), model.weights[l].begin(), model.weights[l].end());
        params.insert(params.end(), model.biases[l].begin(), model.biases[l].end());
    }
    return params;
}

void set_parameters(MlpModel& model, const std::vector<double>& params) {
    if (params.size() != model.parameter_count())
        throw std::invalid_argument("parameter vector size mismatch");
    std::size_t pos = 0;
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        std::copy_n(params.begin() + pos, model.weights[l].size(), model.weights[l].begin());
        pos += model.weights[l].size();
        std::copy_n(params.begin() + pos, model.biases[l].size(), model.biases[l].begin());
        pos += model.biases[l].size();
    }
}

double mse_loss(const MlpModel& model, const std::vector<SweepRecord>& samples) {
    if (samples.empty()) throw std::invalid_argument("empty sample set");
    Workspace ws;
    double acc = 0.0;
    for (const SweepRecord& rec : samples) {
        const double y = forward_into(model, record_input(model, rec), ws);
        const double d = y - rec.p;
        acc += d * d;
    }
    return acc / double(samples.size());
}

double loss_and_gradient(const MlpModel& model, const std::vector<SweepRecord>& samples,
                         std::vector<double>& gradient) {
    if (samples.empty()) throw std::invalid_argument("empty sample set");
    const auto sizes = layer_sizes(model);
    const int layers = int(model.weights.size());

    std::vector<std::vector<double>> gw(layers), gb(layers);
    for (int l = 0; l < layers; ++l) {
        gw[l].assign(model.weights[l].size(), 0.0);
        gb[l].assign(model.biases[l].size(), 0.0);
    }

    Workspace ws;
    std::vector<std::vector<double>> delta(layers);
    double loss = 0.0;
    for (const SweepRecord& rec : samples) {
        const double y = forward_into(model, record_input(model, rec), ws);
        const double err = y - rec.p;
        loss += err * err;

        // output layer: d(mse)/dz = 2 err * sigmoid'(z)
        delta[layers - 1].assign(1, 2.0 * err * y * (1.0 - y));
        for (int l = layers - 2; l >= 0; --l) {
            const int out = sizes[l + 1];
            const int next_out = sizes[l + 2];
            delta[l].assign(out, 0.0);
            const auto& w_next = model.weights[l + 1];
            for (int o = 0; o < out; ++o) {
                double acc = 0.0;
                for (int q = 0; q < next_out; ++q)
                    acc += w_next[std::size_t(q) * out + o] * delta[l + 1][q];
                delta[l][o] = acc * selu_derivative(ws.pre[l][o]);
            }
        }
        for (int l = 0; l < layers; ++l) {
            const int out = sizes[l + 1];
            const int in = sizes[l];
            for (int o = 0; o < out; ++o) {
                const double d = delta[l][o];
                gb[l][o] += d;
                double* grow = gw[l].data() + std::size_t(o) * in;
                for (int i = 0; i < in; ++i) grow[i] += d * ws.act[l][i];
            }
        }
    }

    const double inv = 1.0 / double(samples.size());
    gradient.clear();
    gradient.reserve(model.parameter_count());
    for (int l = 0; l < layers; ++l) {
        for (double g : gw[l]) gradient.push_back(g * inv);
        for (double g : gb[l]) gradient.push_back(g * inv);
    }
    return loss * inv;
}

TrainOutcome train(const std::vector<SweepRecord>& records, int input_dim,
                   int hidden_layers, int neurons, const TrainConfig& config) {
    if (records.empty()) throw std::invalid_argument("empty training dataset");
    if (config.batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
    if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0))
        throw std::invalid_argument("train fraction must lie in (0, 1)");
    if (input_dim == 2) {
        for (const SweepRecord& rec : records)
            if (rec.n != records.front().n)
                throw std::invalid_argument("two-input model cannot mix qubit counts");
    }

    std::mt19937_64 rng(config.seed);
    std::vector<std::size_t> order(records.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    const std::size_t train_count =
        std::max<std::size_t>(1, std::size_t(config.train_fraction * double(records.size())));
    if (train_count >= records.size())
        throw std::invalid_argument("dataset too small for the requested split");
    std::vector<SweepRecord> train_set, val_set;
    for (std::size_t i = 0; i < records.size(); ++i)
        (i < train_count ? train_set : val_set).push_back(records[order[i]]);

    MlpModel model = init_model(input_dim, hidden_layers, neurons, config.seed);
    model.trained_n = (input_dim == 2) ? records.front().n : 0;
    std::vector<double> params = get_parameters(model);
    AdamState adam;

    TrainOutcome out;
    out.report.best_epoch = 0;
    std::vector<double> best_params = params;
    double best_val = mse_loss(model, val_set);
    int stale = 0;

    std::vector<std::size_t> train_order(train_set.size());
    std::iota(train_order.begin(), train_order.end(), 0);
    std::vector<SweepRecord> batch;
    std::vector<double> grad;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::shuffle(train_order.begin(), train_order.end(), rng);
        for (std::size_t start = 0; start < train_order.size();
             start += std::size_t(config.batch_size)) {
            const std::size_t stop =
                std::min(train_order.size(), start + std::size_t(config.batch_size));
            batch.clear();
            for (std::size_t i = start; i < stop; ++i) batch.push_back(train_set[train_order[i]]);
            const double loss = loss_and_gradient(model, batch, grad);
            if (!std::isfinite(loss))
                throw std::runtime_error("training diverged: non-finite loss at epoch " +
                                         std::to_string(epoch));
            adam_step(params, grad, adam, config.learning_rate);
            set_parameters(model, params);
        }
        const double train_loss = mse_loss(model, train_set);
        const double val_loss = mse_loss(model, val_set);
        if (!std::isfinite(train_loss) || !std::isfinite(val_loss))
            throw std::runtime_error("training diverged: non-finite epoch loss");
        out.report.train_loss.push_back(train_loss);
        out.report.val_loss.push_back(val_loss);
        if (val_loss < best_val) {
            best_val = val_loss;
            best_params = params;
            out.report.best_epoch = epoch;
            stale = 0;
        } else if (++stale > config.patience) {
            break;
        }
    }

    set_parameters(model, best_params);
    model.best_val_loss = best_val;
    out.model = std::move(model);
    return out;
}

GridSearchResult grid_search(const std::vector<SweepRecord>& records, int input_dim,
                             const std::vector<int>& layer_values,
                             const std::vector<int>& neuron_values,
                             const TrainConfig& config) {
    if (layer_values.empty() || neuron_values.empty())
        throw std::invalid_argument("empty architecture range");
    GridSearchResult result;
    result.layer_values = layer_values;
    result.neuron_values = neuron_values;
    result.val_loss.assign(layer_values.size() * neuron_values.size(), -1.0);
    for (std::size_t li = 0; li < layer_values.size(); ++li)
        for (std::size_t ni = 0; ni < neuron_values.size(); ++ni) {
            try {
                const TrainOutcome out =
                    train(records, input_dim, layer_values[li], neuron_values[ni], config);
                result.val_loss[li * neuron_values.size() + ni] = out.model.best_val_loss;
            } catch (const std::exception&) {
                // cell recorded as missing
            }
        }
    return result;
}

void save_model(const MlpModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << "qrws-mlp 1\n";
    out << "input_dim " << model.input_dim << "\n";
    out << "hidden_layers " << model.hidden_layers << "\n";
    out << "neurons " << model.neurons << "\n";
    out << "hidden_activation selu\n";
    out << "output_activation sigmoid\n";
    out << "selu_constants " << num(kSeluLambda) << " " << num(kSeluAlpha) << "\n";
    out << "input_scale " << num(kTwoPi) << " " << num(kTwoPi) << " " << num(kCoinScale)
        << "\n";
    out << "trained_n " << model.trained_n << "\n";
    out << "seed " << model.seed << "\n";
    out << "best_val_loss " << num(model.best_val_loss) << "\n";
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        out << "layer " << l << " " << model.biases[l].size() << " "
            << model.weights[l].size() / model.biases[l].size() << "\n";
        out << "weights";
        for (double w : model.weights[l]) out << " " << num(w);
        out << "\nbiases";
        for (double b : model.biases[l]) out << " " << num(b);
        out << "\n";
    }
    out << "end\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

MlpModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != "qrws-mlp")
        throw std::runtime_error(path + ": not a model file");
    if (version != 1) throw std::runtime_error(path + ": unsupported model version");

    MlpModel model;
    auto expect = [&](const std::string& key) {
        std::string got;
        if (!(in >> got) || got != key)
            throw std::runtime_error(path + ": expected '" + key + "'");
    };
    expect("input_dim");
    in >> model.input_dim;
    expect("hidden_layers");
    in >> model.hidden_layers;
    expect("neurons");
    in >> model.neurons;
    expect("hidden_activation");
    std::string act;
    in >> act;
    if (act != "selu") throw std::runtime_error(path + ": unknown hidden activation " + act);
    expect("output_activation");
    in >> act;
    if (act != "sigmoid") throw std::runtime_error(path + ": unknown output activation " + act);
    expect("selu_constants");
    double lambda = 0, alpha = 0;
    in >> lambda >> alpha;
    expect("input_scale");
    double s0 = 0, s1 = 0, s2 = 0;
    in >> s0 >> s1 >> s2;
    expect("trained_n");
    in >> model.trained_n;
    expect("seed");
    in >> model.seed;
    expect("best_val_loss");
    in >> model.best_val_loss;
    if (!in) throw std::runtime_error(path + ": truncated header");
    if (model.input_dim != 2 && model.input_dim != 3)
        throw std::runtime_error(path + ": bad input dimension");
    if (model.hidden_layers < 1 || model.neurons < 1)
        throw std::runtime_error(path + ": bad architecture");

    const int layers = model.hidden_layers + 1;
    for (int l = 0; l < layers; ++l) {
        expect("layer");
        int index = 0;
        std::size_t out = 0, inp = 0;
        in >> index >> out >> inp;
        if (!in || index != l) throw std::runtime_error(path + ": bad layer index");
        const std::size_t want_in =
            (l == 0) ? std::size_t(model.input_dim) : std::size_t(model.neurons);
        const std::size_t want_out =
            (l == layers - 1) ? 1 : std::size_t(model.neurons);
        if (out != want_out || inp != want_in)
            throw std::runtime_error(path + ": layer shape mismatch");
        expect("weights");
        std::vector<double> w(out * inp);
        for (double& x : w)
            if (!(in >> x)) throw std::runtime_error(path + ": truncated weights");
        expect("biases");
        std::vector<double> b(out);
        for (double& x : b)
            if (!(in >> x)) throw std::runtime_error(path + ": truncated biases");
        model.weights.push_back(std::move(w));
        model.biases.push_back(std::move(b));
    }
    expect("end");
    return model;
}

}  // namespace qrws
