#include "fieldrec/nn.hpp"

#include <cmath>
#include <random>

namespace fieldrec {

namespace {

// Uniform double in [0,1) from the top 53 bits; identical across platforms.
inline double uniform53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void check_shapes(const DenseStack& stack, Eigen::Index input_rows) {
    if (input_rows != stack.input_width()) {
        throw ShapeMismatch("input width " + std::to_string(input_rows) +
                            " does not match stack input " + std::to_string(stack.input_width()));
    }
}

} // namespace

std::size_t DenseStack::parameter_count() const {
    std::size_t n = 0;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        n += static_cast<std::size_t>(weights[l].size()) + biases[l].size();
    }
    return n;
}

bool DenseStack::all_finite() const {
    for (std::size_t l = 0; l < weights.size(); ++l) {
        if (!weights[l].allFinite() || !biases[l].allFinite()) return false;
    }
    return true;
}

DenseStack init_stack(const std::vector<int>& sizes, std::uint64_t seed) {
    if (sizes.size() < 2) throw ConfigError("init_stack: need at least two layer sizes");
    for (int s : sizes) {
        if (s < 1) throw ConfigError("init_stack: layer sizes must be >= 1");
    }

    DenseStack stack;
    stack.sizes = sizes;
    std::mt19937_64 rng(seed);
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        const int fan_in = sizes[l];
        const int fan_out = sizes[l + 1];
        const double limit = std::sqrt(6.0 / (fan_in + fan_out));
        Eigen::MatrixXd w(fan_out, fan_in);
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
            for (Eigen::Index c = 0; c < w.cols(); ++c) {
                w(r, c) = (2.0 * uniform53(rng) - 1.0) * limit;
            }
        }
        stack.weights.push_back(std::move(w));
        stack.biases.push_back(Eigen::VectorXd::Zero(fan_out));
    }
    return stack;
}

Eigen::MatrixXd forward(const DenseStack& stack, const Eigen::Ref<const Eigen::MatrixXd>& input,
                        ForwardTape* tape) {
    check_shapes(stack, input.rows());
    if (tape) {
        tape->activations.clear();
        tape->activations.reserve(stack.layer_count());
        tape->activations.push_back(input);
    }

    Eigen::MatrixXd a = input;
    for (std::size_t l = 0; l < stack.layer_count(); ++l) {
        Eigen::MatrixXd z = stack.weights[l] * a;
        z.colwise() += stack.biases[l];
        if (l + 1 < stack.layer_count()) {
            a = z.array().tanh().matrix();
            if (tape) tape->activations.push_back(a);
        } else {
            a = std::move(z);
        }
    }
    return a;
}

StackGradients StackGradients::zeros_like(const DenseStack& stack) {
    StackGradients g;
    for (std::size_t l = 0; l < stack.layer_count(); ++l) {
        g.weights.push_back(Eigen::MatrixXd::Zero(stack.weights[l].rows(), stack.weights[l].cols()));
        g.biases.push_back(Eigen::VectorXd::Zero(stack.biases[l].size()));
    }
    return g;
}

void StackGradients::accumulate(const StackGradients& other, double scale) {
    for (std::size_t l = 0; l < weights.size(); ++l) {
        weights[l] += scale * other.weights[l];
        biases[l] += scale * other.biases[l];
    }
}

StackGradients backward(const DenseStack& stack, const ForwardTape& tape,
                        const Eigen::Ref<const Eigen::MatrixXd>& output_cotangent,
                        Eigen::MatrixXd* input_cotangent) {
    const std::size_t layers = stack.layer_count();
    if (tape.activations.size() != layers) {
        throw ShapeMismatch("backward: tape does not match stack depth");
    }
    if (output_cotangent.rows() != stack.output_width() ||
        output_cotangent.cols() != tape.activations[0].cols()) {
        throw ShapeMismatch("backward: cotangent shape mismatch");
    }

    StackGradients grads;
    grads.weights.resize(layers);
    grads.biases.resize(layers);

    Eigen::MatrixXd delta = output_cotangent;
    for (std::size_t l = layers; l-- > 0;) {
        grads.weights[l].noalias() = delta * tape.activations[l].transpose();
        grads.biases[l] = delta.rowwise().sum();
        if (l > 0) {
            // tanh'(z) = 1 - a^2 with a the stored post-activation.
            delta = (stack.weights[l].transpose() * delta).array() *
                    (1.0 - tape.activations[l].array().square());
        } else if (input_cotangent) {
            input_cotangent->noalias() = stack.weights[0].transpose() * delta;
        }
    }
    return grads;
}

AdamState AdamState::zeros_like(const DenseStack& stack) {
    AdamState s;
    for (std::size_t l = 0; l < stack.layer_count(); ++l) {
        s.m_weights.push_back(Eigen::MatrixXd::Zero(stack.weights[l].rows(), stack.weights[l].cols()));
        s.v_weights.push_back(Eigen::MatrixXd::Zero(stack.weights[l].rows(), stack.weights[l].cols()));
        s.m_biases.push_back(Eigen::VectorXd::Zero(stack.biases[l].size()));
        s.v_biases.push_back(Eigen::VectorXd::Zero(stack.biases[l].size()));
    }
    return s;
}

namespace {

template <typename Param, typename Grad, typename Moment>
void adam_update(Param& p, const Grad& g, Moment& m, Moment& v, double lr_t, double beta1,
                 double beta2, double eps) {
    m = beta1 * m + (1.0 - beta1) * g;
    v = beta2 * v.array().matrix() + (1.0 - beta2) * g.array().square().matrix();
    p.array() -= lr_t * m.array() / (v.array().sqrt() + eps);
}

} // namespace

void adam_step(DenseStack& params, const StackGradients& grads, AdamState& state,
               const AdamConfig& config) {
    if (grads.weights.size() != params.layer_count()) {
        throw ShapeMismatch("adam_step: gradient layout does not match parameters");
    }
    state.step += 1;
    const double t = static_cast<double>(state.step);
    // Fold both bias corrections into the step size.
    const double lr_t = config.learning_rate * std::sqrt(1.0 - std::pow(config.beta2, t)) /
                        (1.0 - std::pow(config.beta1, t));
    // Scale epsilon to match the v-hat formulation: lr * mhat / (sqrt(vhat) + eps).
    const double eps_t = config.epsilon * std::sqrt(1.0 - std::pow(config.beta2, t));
    for (std::size_t l = 0; l < params.layer_count(); ++l) {
        adam_update(params.weights[l], grads.weights[l], state.m_weights[l], state.v_weights[l],
                    lr_t, config.beta1, config.beta2, eps_t);
        adam_update(params.biases[l], grads.biases[l], state.m_biases[l], state.v_biases[l], lr_t,
                    config.beta1, config.beta2, eps_t);
    }
}

} // namespace fieldrec
