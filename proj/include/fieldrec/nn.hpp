#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "fieldrec/errors.hpp"

namespace fieldrec {

// Fully connected stack: affine layers with tanh on every hidden layer and an
// identity output layer. weights[l] is (sizes[l+1] x sizes[l]).
struct DenseStack {
    std::vector<int> sizes;
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;

    int input_width() const { return sizes.front(); }
    int output_width() const { return sizes.back(); }
    std::size_t layer_count() const { return weights.size(); }
    std::size_t parameter_count() const;
    bool all_finite() const;
};

// Glorot-uniform weights (+- sqrt(6/(fan_in+fan_out))) and zero biases.
// PRNG: std::mt19937_64 seeded with `seed`; uniform doubles in [0,1) are taken as
// (next() >> 11) * 2^-53 so identical (sizes, seed) give bit-identical parameters on
// any conforming platform. Weights are drawn row-major, layer by layer.
DenseStack init_stack(const std::vector<int>& sizes, std::uint64_t seed);

// Post-activation record of one forward pass; activations[0] is the input batch.
struct ForwardTape {
    std::vector<Eigen::MatrixXd> activations;
};

// Batched forward: input is (input_width x batch), output (output_width x batch).
// Pass a tape to enable backward().
Eigen::MatrixXd forward(const DenseStack& stack, const Eigen::Ref<const Eigen::MatrixXd>& input,
                        ForwardTape* tape = nullptr);

struct StackGradients {
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;

    static StackGradients zeros_like(const DenseStack& stack);
    void accumulate(const StackGradients& other, double scale = 1.0);
};

// Reverse-mode gradients for the scalar function implied by `output_cotangent`
// (same shape as the forward output). The tape is read-only. If `input_cotangent`
// is non-null it receives d(scalar)/d(input).
StackGradients backward(const DenseStack& stack, const ForwardTape& tape,
                        const Eigen::Ref<const Eigen::MatrixXd>& output_cotangent,
                        Eigen::MatrixXd* input_cotangent = nullptr);

struct AdamConfig {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct AdamState {
    std::vector<Eigen::MatrixXd> m_weights, v_weights;
    std::vector<Eigen::VectorXd> m_biases, v_biases;
    std::int64_t step = 0;

    static AdamState zeros_like(const DenseStack& stack);
};

// One bias-corrected Adam update; increments state.step by exactly 1.
void adam_step(DenseStack& params, const StackGradients& grads, AdamState& state,
               const AdamConfig& config);

} // namespace fieldrec
