#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cryptolab {

enum class Activation { Sigmoid, HardLimiter };

struct TrainingExample {
    std::vector<double> input;
    std::vector<double> target;
};

struct TrainingConfig {
    double learning_rate = 0.5;  // must lie in (0, 1)
    int epochs = 1000;
    double target_sse = 0.0;  // stop early once the epoch error drops below
    std::uint64_t seed = 0;
    double weight_init_halfwidth = 0.5;
};

// Fully connected feedforward network trained by per-example backpropagation.
// Layer l (l >= 1) owns a (size_l x size_{l-1}) weight matrix and a bias per
// unit; unit j computes f(sum_i w_ji x_i + theta_j).
class FeedforwardNetwork {
public:
    explicit FeedforwardNetwork(std::vector<int> layer_sizes, Activation activation = Activation::Sigmoid,
                                double lambda = 1.0)
        : sizes_(std::move(layer_sizes)), activation_(activation), lambda_(lambda) {
        if (sizes_.size() < 2) throw std::invalid_argument("network needs an input and an output layer");
        for (int s : sizes_)
            if (s < 1) throw std::invalid_argument("layer sizes must be positive");
        weights_.resize(sizes_.size() - 1);
        biases_.resize(sizes_.size() - 1);
        for (std::size_t l = 0; l < weights_.size(); ++l) {
            weights_[l].assign(static_cast<std::size_t>(sizes_[l + 1]) * static_cast<std::size_t>(sizes_[l]), 0.0);
            biases_[l].assign(static_cast<std::size_t>(sizes_[l + 1]), 0.0);
        }
    }

    static FeedforwardNetwork random(std::vector<int> layer_sizes, std::mt19937_64& rng, double halfwidth = 0.5,
                                     Activation activation = Activation::Sigmoid, double lambda = 1.0) {
        FeedforwardNetwork net(std::move(layer_sizes), activation, lambda);
        std::uniform_real_distribution<double> dist(-halfwidth, halfwidth);
        for (auto& layer : net.weights_)
            for (auto& w : layer) w = dist(rng);
        for (auto& layer : net.biases_)
            for (auto& b : layer) b = dist(rng);
        return net;
    }

    const std::vector<int>& layer_sizes() const { return sizes_; }
    int input_size() const { return sizes_.front(); }
    int output_size() const { return sizes_.back(); }
    Activation activation() const { return activation_; }
    double lambda() const { return lambda_; }

    double& weight(std::size_t layer, int to, int from) {
        return weights_[layer][static_cast<std::size_t>(to) * static_cast<std::size_t>(sizes_[layer]) +
                              static_cast<std::size_t>(from)];
    }
    double weight(std::size_t layer, int to, int from) const {
        return weights_[layer][static_cast<std::size_t>(to) * static_cast<std::size_t>(sizes_[layer]) +
                              static_cast<std::size_t>(from)];
    }
    double& bias(std::size_t layer, int unit) { return biases_[layer][static_cast<std::size_t>(unit)]; }
    double bias(std::size_t layer, int unit) const { return biases_[layer][static_cast<std::size_t>(unit)]; }
    std::size_t hidden_and_output_layers() const { return weights_.size(); }

    // Activations per layer, element 0 being the input itself.
    std::vector<std::vector<double>> forward_trace(std::span<const double> input) const {
        if (static_cast<int>(input.size()) != input_size()) throw std::invalid_argument("input size mismatch");
        std::vector<std::vector<double>> acts;
        acts.reserve(sizes_.size());
        acts.emplace_back(input.begin(), input.end());
        for (std::size_t l = 0; l < weights_.size(); ++l) {
            std::vector<double> out(static_cast<std::size_t>(sizes_[l + 1]));
            for (int j = 0; j < sizes_[l + 1]; ++j) {
                double net = biases_[l][static_cast<std::size_t>(j)];
                for (int i = 0; i < sizes_[l]; ++i) net += weight(l, j, i) * acts.back()[static_cast<std::size_t>(i)];
                out[static_cast<std::size_t>(j)] = activate(net);
            }
            acts.push_back(std::move(out));
        }
        return acts;
    }

    std::vector<double> forward(std::span<const double> input) const { return forward_trace(input).back(); }

    // One pattern of online backpropagation. All gradient terms are formed
    // before any weight moves; the returned error is measured pre-update.
    double train_example(const TrainingExample& ex, double eta) {
        check_trainable(eta);
        const auto acts = forward_trace(ex.input);
        if (ex.target.size() != acts.back().size()) throw std::invalid_argument("target size mismatch");

        const std::size_t last = weights_.size() - 1;
        std::vector<std::vector<double>> deltas(weights_.size());
        double error = 0.0;

        deltas[last].resize(acts.back().size());
        for (std::size_t k = 0; k < acts.back().size(); ++k) {
            const double o = acts.back()[k];
            const double e = ex.target[k] - o;
            error += 0.5 * e * e;
            deltas[last][k] = derivative_from_output(o) * e;
        }
        for (std::size_t l = last; l-- > 0;) {
            deltas[l].resize(static_cast<std::size_t>(sizes_[l + 1]));
            for (int j = 0; j < sizes_[l + 1]; ++j) {
                double back = 0.0;
                for (int k = 0; k < sizes_[l + 2]; ++k) back += deltas[l + 1][static_cast<std::size_t>(k)] * weight(l + 1, k, j);
                deltas[l][static_cast<std::size_t>(j)] = derivative_from_output(acts[l + 1][static_cast<std::size_t>(j)]) * back;
            }
        }
        for (std::size_t l = 0; l < weights_.size(); ++l)
            for (int j = 0; j < sizes_[l + 1]; ++j) {
                const double d = deltas[l][static_cast<std::size_t>(j)];
                for (int i = 0; i < sizes_[l]; ++i) weight(l, j, i) += eta * d * acts[l][static_cast<std::size_t>(i)];
                biases_[l][static_cast<std::size_t>(j)] += eta * d;
            }
        return error;
    }

    double train_epoch(std::span<const TrainingExample> examples, double eta) {
        check_trainable(eta);
        double sse = 0.0;
        for (const auto& ex : examples) sse += train_example(ex, eta);
        return sse;
    }

    double sse(std::span<const TrainingExample> examples) const {
        double total = 0.0;
        for (const auto& ex : examples) {
            const auto out = forward(ex.input);
            for (std::size_t k = 0; k < out.size(); ++k) {
                const double e = ex.target[k] - out[k];
                total += 0.5 * e * e;
            }
        }
        return total;
    }

    // Plain text format: a layer-size header then per layer the row-major
    // weight block and the bias block.
    void save(std::ostream& os) const {
        os << "layers:";
        for (int s : sizes_) os << ' ' << s;
        os << '\n';
        os.precision(17);
        for (std::size_t l = 0; l < weights_.size(); ++l) {
            for (std::size_t i = 0; i < weights_[l].size(); ++i)
                os << weights_[l][i] << (i + 1 == weights_[l].size() ? '\n' : ' ');
            for (std::size_t i = 0; i < biases_[l].size(); ++i)
                os << biases_[l][i] << (i + 1 == biases_[l].size() ? '\n' : ' ');
        }
    }

    static FeedforwardNetwork load(std::istream& is) {
        std::string tag;
        is >> tag;
        if (tag != "layers:") throw std::runtime_error("bad network file: missing layer header");
        std::string rest;
        std::getline(is, rest);
        std::istringstream header(rest);
        std::vector<int> sizes;
        for (int s; header >> s;) sizes.push_back(s);
        FeedforwardNetwork net(sizes);
        for (std::size_t l = 0; l < net.weights_.size(); ++l) {
            for (auto& w : net.weights_[l])
                if (!(is >> w)) throw std::runtime_error("bad network file: truncated weights");
            for (auto& b : net.biases_[l])
                if (!(is >> b)) throw std::runtime_error("bad network file: truncated biases");
        }
        return net;
    }

private:
    void check_trainable(double eta) const {
        if (activation_ != Activation::Sigmoid)
            throw std::invalid_argument("only sigmoid networks are trainable");
        if (eta <= 0.0 || eta >= 1.0) throw std::invalid_argument("learning rate must lie in (0, 1)");
    }

    double activate(double net) const {
        if (activation_ == Activation::Sigmoid) return 1.0 / (1.0 + std::exp(-lambda_ * net));
        return net > 0.0 ? 1.0 : 0.0;
    }

    double derivative_from_output(double o) const { return lambda_ * o * (1.0 - o); }

    std::vector<int> sizes_;
    Activation activation_;
    double lambda_;
    std::vector<std::vector<double>> weights_;  // [layer][to * size_prev + from]
    std::vector<std::vector<double>> biases_;
};

// Epoch loop with the optional error floor.
inline double train(FeedforwardNetwork& net, std::span<const TrainingExample> examples, const TrainingConfig& config) {
    double sse = net.sse(examples);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        sse = net.train_epoch(examples, config.learning_rate);
        if (config.target_sse > 0.0 && sse < config.target_sse) break;
    }
    return sse;
}

enum class BitDecision : int { Zero = 0, One = 1, Undecided = 2 };

// Maps raw activations to hard bits, leaving the middle band undecided.
inline std::vector<BitDecision> threshold_outputs(std::span<const double> raw, double hi, double lo) {
    if (lo >= hi) throw std::invalid_argument("threshold_outputs: lo must be below hi");
    std::vector<BitDecision> out;
    out.reserve(raw.size());
    for (double v : raw)
        out.push_back(v > hi ? BitDecision::One : v < lo ? BitDecision::Zero : BitDecision::Undecided);
    return out;
}

}  // namespace cryptolab
