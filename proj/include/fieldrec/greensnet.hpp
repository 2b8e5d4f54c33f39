#pragma once

#include <functional>

#include "fieldrec/bem.hpp"
#include "fieldrec/geometry.hpp"
#include "fieldrec/nn.hpp"

namespace fieldrec {

// Per-dimension affine map applied to coordinates before they enter the stacks.
// The box map sends [0, L_d] to [-1, 1].
struct CoordNormalization {
    Vec3 scale = Vec3::Ones();
    Vec3 offset = Vec3::Zero();

    static CoordNormalization for_box(const BoxDomain& domain);

    Vec3 apply(const Vec3& p) const { return scale.cwiseProduct(p) + offset; }
    Vec3 invert(const Vec3& p) const { return (p - offset).cwiseQuotient(scale); }
};

// Collocation-side data the integration layer consumes: element centroids paired with
// the real Cauchy traces and panel areas. Built from a solved mesh or a loaded dataset.
struct BoundaryTable {
    std::vector<Vec3> centroids;
    std::vector<double> u;
    std::vector<double> q;
    std::vector<double> areas;

    std::size_t size() const { return centroids.size(); }
};

BoundaryTable make_boundary_table(const BoundaryMesh& mesh, const std::vector<double>& u_real,
                                  const std::vector<double>& q_real);

// The three network inputs, stored pair-wise with the interior index outermost:
// column p * n_collocation + j holds the pair (interior point p, collocation point j).
//   coords: 6 x (N_P*N_C), normalized (x_i,y_i,z_i,x_j,y_j,z_j)   -- input #1
//   cauchy: 2 x (N_P*N_C), (u_j, q_j) broadcast over p            -- input #2
//   areas:  1 x (N_P*N_C), panel areas broadcast over p           -- input #3
struct ModelInputs {
    Eigen::MatrixXd coords;
    Eigen::MatrixXd cauchy;
    Eigen::RowVectorXd areas;
    Eigen::Index n_interior = 0;
    Eigen::Index n_collocation = 0;

    Eigen::Index pair_count() const { return n_interior * n_collocation; }
    // New inputs holding only the chosen interior points, in the given order.
    ModelInputs select(const std::vector<Eigen::Index>& interior_indices) const;
};

ModelInputs assemble_inputs(const BoundaryTable& boundary, const PointSet& interior,
                            const CoordNormalization& normalization);

// Two independent stacks (6 -> hidden^3 -> 1) for the learned kernel and its normal
// derivative, plus the fixed-weight integration layer applied in predict().
struct GreensNetModel {
    DenseStack g_stack;
    DenseStack dgdn_stack;
    CoordNormalization normalization;

    int hidden_width() const { return g_stack.sizes.size() > 2 ? g_stack.sizes[1] : 0; }
};

GreensNetModel init_model(int hidden_width, std::uint64_t g_seed, std::uint64_t dgdn_seed,
                          const CoordNormalization& normalization);

// Fixed integration layer over the collocation axis:
//   u_hat_p = sum_j (u_j * dgdn(c_pj) - q_j * g(c_pj)) * dGamma_j.
// The areas act as constant weights and carry no trainable parameters.
Eigen::VectorXd predict(const GreensNetModel& model, const ModelInputs& inputs);

// Same reduction with the stacks replaced by arbitrary scalar kernels of the raw
// (un-normalized) pair coordinates. Used to check the integration layer against the
// boundary-integral oracle.
using PairKernel = std::function<double(const Vec3& interior, const Vec3& collocation)>;
Eigen::VectorXd predict_with_kernels(const ModelInputs& inputs,
                                     const CoordNormalization& normalization,
                                     const PairKernel& g_kernel, const PairKernel& dgdn_kernel);

// Training objective: e = sqrt(sum_i (pred_i - target_i)^2) / N_P.
// Throws EmptyBatch when the vectors are empty.
double loss(const Eigen::Ref<const Eigen::VectorXd>& predictions,
            const Eigen::Ref<const Eigen::VectorXd>& targets);

// Conventional root-mean-square error, reported alongside the training objective.
double rmse(const Eigen::Ref<const Eigen::VectorXd>& predictions,
            const Eigen::Ref<const Eigen::VectorXd>& targets);

struct ModelGradients {
    StackGradients g_stack;
    StackGradients dgdn_stack;
    double loss_value = 0.0;
    Eigen::VectorXd predictions;
};

// Exact reverse-mode gradients of loss() w.r.t. every trainable parameter. The
// integration layer contributes the fixed linear weights u_j*dGamma_j (dgdn stack)
// and -q_j*dGamma_j (g stack) to each stack's output cotangent.
ModelGradients loss_gradients(const GreensNetModel& model, const ModelInputs& inputs,
                              const Eigen::Ref<const Eigen::VectorXd>& targets);

} // namespace fieldrec
