#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fieldrec/greensnet.hpp"

namespace fieldrec {

struct TrainConfig {
    double learning_rate = 5e-5;
    int batch_size = 5;
    int max_epochs = 5000;
    int patience = 250;
    double validation_fraction = 0.20;
    std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
    int hidden_width = 20;
    // Seed of the train/validation shuffle; shared across seeds so every training
    // session is scored on the same held-out points.
    std::uint64_t split_seed = 0;

    void validate() const;
};

enum class StopReason { Patience, MaxEpochs };

std::string stop_reason_name(StopReason r);

struct TrainingRecord {
    std::uint64_t seed = 0;
    std::vector<double> train_loss;      // per epoch, mean of mini-batch losses
    std::vector<double> validation_loss; // per epoch, full held-out evaluation
    int best_epoch = 0;                  // 1-based epoch of the checkpointed minimum
    double best_validation_loss = 0.0;
    StopReason stop_reason = StopReason::MaxEpochs;
    double wall_time_seconds = 0.0;

    int epochs_run() const { return static_cast<int>(validation_loss.size()); }
};

// Assembled sensor training set: inputs over every sensor point plus measured values.
struct SensorData {
    ModelInputs inputs;
    Eigen::VectorXd targets;
};

struct SplitIndices {
    std::vector<Eigen::Index> train;
    std::vector<Eigen::Index> validation;
};

// Seeded shuffle then split; deterministic per seed, disjoint and exhaustive.
// Validation size = round(n * fraction), clamped to [1, n-1].
// Throws TooFewSensors when n < 2.
SplitIndices split_train_validation_indices(std::size_t n_points, double fraction,
                                            std::uint64_t seed);

// PointSet-level view of the same split.
std::pair<PointSet, PointSet> split_train_validation(const PointSet& sensors, double fraction,
                                                     std::uint64_t seed);

struct TrainOutcome {
    GreensNetModel model; // parameters checkpointed at the best validation epoch
    TrainingRecord record;
};

// One training session: seeded-shuffled mini-batch Adam with early stopping.
// `initial` overrides the seeded Glorot initialization when provided (testing hook).
// Throws NonFiniteLoss when a loss stops being finite.
TrainOutcome train_one(std::uint64_t seed, const SensorData& data, const TrainConfig& config,
                       const CoordNormalization& normalization,
                       const GreensNetModel* initial = nullptr);

struct MultiSeedOutcome {
    GreensNetModel selected;
    std::uint64_t selected_seed = 0;
    std::vector<TrainingRecord> records;
};

// Runs train_one for every configured seed and keeps the model with the smallest best
// validation loss (ties broken by the lowest seed value). Individual failures are
// tolerated; throws AllRunsFailed when no session survives.
MultiSeedOutcome train_multi_seed(const SensorData& data, const TrainConfig& config,
                                  const CoordNormalization& normalization);

} // namespace fieldrec
