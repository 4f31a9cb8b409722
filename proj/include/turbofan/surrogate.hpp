#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace turbofan {

// Row-major sample matrix.
struct DataMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;

    DataMatrix() = default;
    DataMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
    double* row(std::size_t i) { return a.data() + i * cols; }
    const double* row(std::size_t i) const { return a.data() + i * cols; }
    double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// Fully connected ReLU network with a linear output neuron. Weights are
// row-major (out x in) per layer. Inputs are min-max normalized to [0, 1]
// with the stored per-feature constants; targets are unscaled.
struct MlpModel {
    std::vector<int> dims; // e.g. {5, 512, 256, 128, 1}
    std::vector<std::vector<double>> W;
    std::vector<std::vector<double>> b;
    std::vector<std::pair<double, double>> input_scaling; // per-feature min,max
    std::string target_name;

    void check_shapes() const; // throws ConfigError on inconsistent dims
};

struct Gradients {
    std::vector<std::vector<double>> W;
    std::vector<std::vector<double>> b;
};

struct AdamState {
    long long t = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double lr = 1e-3;
    double eps = 1e-8;
    std::vector<std::vector<double>> mW, vW, mb, vb;

    static AdamState for_model(const MlpModel& m, double lr = 1e-3);
};

struct TrainConfig {
    int epochs = 200;
    int batch_size = 64;
    std::uint64_t seed = 1;
    double lr = 1e-3;
};

double relu(double x);

// He-scaled normal weights, zero biases, seeded.
MlpModel init_model(const std::vector<int>& dims, std::uint64_t seed,
                    const std::vector<std::pair<double, double>>& input_scaling,
                    const std::string& target_name);

// X is already normalized, one sample per row. Returns predictions and, when
// acts != nullptr, the per-layer activations (acts[0] = X).
std::vector<double> forward_batch(const MlpModel& m, const DataMatrix& X,
                                  std::vector<DataMatrix>* acts = nullptr);

// Single raw (unnormalized) sample; warns on stderr when a feature leaves the
// scaling domain but still evaluates.
double predict(const MlpModel& m, const std::vector<double>& x_raw);

double mse(const std::vector<double>& y, const std::vector<double>& yhat);

// Exact reverse-mode gradient of the batch MSE.
Gradients backprop(const MlpModel& m, const DataMatrix& X_norm,
                   const std::vector<double>& y);

// One optimizer step with bias correction; the epsilon sits inside the square
// root of the denominator.
void adam_step(AdamState& s, MlpModel& m, const Gradients& g);

struct TrainResult {
    MlpModel model;
    std::vector<double> loss_history; // index 0 = pre-training loss
};

// Mini-batch training on (X_raw, y); loss history records the full-train-set
// MSE before training and after every epoch. Deterministic for a given seed.
// Throws SolverError when the loss stops being finite.
TrainResult train(const DataMatrix& X_raw, const std::vector<double>& y,
                  const std::vector<int>& dims,
                  const std::vector<std::pair<double, double>>& input_scaling,
                  const std::string& target_name, const TrainConfig& cfg);

// Versioned text checkpoint; exact double round-trip.
void save_model(const std::string& path, const MlpModel& m);
MlpModel load_model(const std::string& path);

} // namespace turbofan
