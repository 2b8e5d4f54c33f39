#include "fieldrec/greensnet.hpp"

#include <cmath>

namespace fieldrec {

CoordNormalization CoordNormalization::for_box(const BoxDomain& domain) {
    CoordNormalization n;
    n.scale = 2.0 * domain.lengths.cwiseInverse();
    n.offset = Vec3(-1.0, -1.0, -1.0);
    return n;
}

BoundaryTable make_boundary_table(const BoundaryMesh& mesh, const std::vector<double>& u_real,
                                  const std::vector<double>& q_real) {
    if (u_real.size() != mesh.size() || q_real.size() != mesh.size()) {
        throw ShapeMismatch("make_boundary_table: Cauchy data length does not match mesh");
    }
    BoundaryTable t;
    t.centroids.reserve(mesh.size());
    t.areas.reserve(mesh.size());
    for (const auto& e : mesh.elements) {
        t.centroids.push_back(e.centroid);
        t.areas.push_back(e.area);
    }
    t.u = u_real;
    t.q = q_real;
    return t;
}

ModelInputs assemble_inputs(const BoundaryTable& boundary, const PointSet& interior,
                            const CoordNormalization& normalization) {
    const Eigen::Index nc = static_cast<Eigen::Index>(boundary.size());
    const Eigen::Index np = static_cast<Eigen::Index>(interior.size());
    if (nc == 0 || np == 0) throw ShapeMismatch("assemble_inputs: empty boundary or interior set");
    if (boundary.u.size() != boundary.size() || boundary.q.size() != boundary.size() ||
        boundary.areas.size() != boundary.size()) {
        throw ShapeMismatch("assemble_inputs: inconsistent boundary table");
    }

    ModelInputs in;
    in.n_interior = np;
    in.n_collocation = nc;
    in.coords.resize(6, np * nc);
    in.cauchy.resize(2, np * nc);
    in.areas.resize(np * nc);

    // Collocation-side columns are identical for every interior point.
    Eigen::MatrixXd coll(3, nc);
    for (Eigen::Index j = 0; j < nc; ++j) {
        coll.col(j) = normalization.apply(boundary.centroids[j]);
        in.cauchy(0, j) = boundary.u[j];
        in.cauchy(1, j) = boundary.q[j];
        in.areas[j] = boundary.areas[j];
    }

    for (Eigen::Index p = 0; p < np; ++p) {
        const Vec3 pn = normalization.apply(interior.points[p]);
        auto coords_block = in.coords.middleCols(p * nc, nc);
        coords_block.topRows<3>().colwise() = pn;
        coords_block.bottomRows<3>() = coll;
        if (p > 0) {
            in.cauchy.middleCols(p * nc, nc) = in.cauchy.leftCols(nc);
            in.areas.segment(p * nc, nc) = in.areas.head(nc);
        }
    }
    return in;
}

ModelInputs ModelInputs::select(const std::vector<Eigen::Index>& interior_indices) const {
    ModelInputs out;
    out.n_interior = static_cast<Eigen::Index>(interior_indices.size());
    out.n_collocation = n_collocation;
    out.coords.resize(6, out.n_interior * n_collocation);
    out.cauchy.resize(2, out.n_interior * n_collocation);
    out.areas.resize(out.n_interior * n_collocation);
    for (Eigen::Index r = 0; r < out.n_interior; ++r) {
        const Eigen::Index p = interior_indices[r];
        if (p < 0 || p >= n_interior) throw ShapeMismatch("select: interior index out of range");
        out.coords.middleCols(r * n_collocation, n_collocation) =
            coords.middleCols(p * n_collocation, n_collocation);
        out.cauchy.middleCols(r * n_collocation, n_collocation) =
            cauchy.middleCols(p * n_collocation, n_collocation);
        out.areas.segment(r * n_collocation, n_collocation) =
            areas.segment(p * n_collocation, n_collocation);
    }
    return out;
}

GreensNetModel init_model(int hidden_width, std::uint64_t g_seed, std::uint64_t dgdn_seed,
                          const CoordNormalization& normalization) {
    if (hidden_width < 1) throw ConfigError("init_model: hidden width must be >= 1");
    const std::vector<int> sizes = {6, hidden_width, hidden_width, hidden_width, 1};
    return {init_stack(sizes, g_seed), init_stack(sizes, dgdn_seed), normalization};
}

namespace {

void check_model_inputs(const GreensNetModel& model, const ModelInputs& inputs) {
    if (model.g_stack.input_width() != 6 || model.dgdn_stack.input_width() != 6 ||
        model.g_stack.output_width() != 1 || model.dgdn_stack.output_width() != 1) {
        throw ShapeMismatch("model stacks must map 6 -> 1");
    }
    if (inputs.coords.rows() != 6 || inputs.coords.cols() != inputs.pair_count() ||
        inputs.cauchy.cols() != inputs.pair_count() || inputs.areas.size() != inputs.pair_count()) {
        throw ShapeMismatch("model inputs have inconsistent shapes");
    }
}

// Reduce per-pair integrand values to one prediction per interior point.
Eigen::VectorXd integrate_pairs(const Eigen::RowVectorXd& integrand, Eigen::Index n_interior,
                                Eigen::Index n_collocation) {
    Eigen::VectorXd out(n_interior);
    for (Eigen::Index p = 0; p < n_interior; ++p) {
        out[p] = integrand.segment(p * n_collocation, n_collocation).sum();
    }
    return out;
}

} // namespace

Eigen::VectorXd predict(const GreensNetModel& model, const ModelInputs& inputs) {
    check_model_inputs(model, inputs);
    const Eigen::RowVectorXd g_out = forward(model.g_stack, inputs.coords);
    const Eigen::RowVectorXd dgdn_out = forward(model.dgdn_stack, inputs.coords);
    const Eigen::RowVectorXd integrand =
        (inputs.cauchy.row(0).cwiseProduct(dgdn_out) - inputs.cauchy.row(1).cwiseProduct(g_out))
            .cwiseProduct(inputs.areas);
    return integrate_pairs(integrand, inputs.n_interior, inputs.n_collocation);
}

Eigen::VectorXd predict_with_kernels(const ModelInputs& inputs,
                                     const CoordNormalization& normalization,
                                     const PairKernel& g_kernel, const PairKernel& dgdn_kernel) {
    Eigen::RowVectorXd integrand(inputs.pair_count());
    for (Eigen::Index c = 0; c < inputs.pair_count(); ++c) {
        const Vec3 interior = normalization.invert(inputs.coords.col(c).head<3>());
        const Vec3 collocation = normalization.invert(inputs.coords.col(c).tail<3>());
        const double g = g_kernel(interior, collocation);
        const double d = dgdn_kernel(interior, collocation);
        integrand[c] =
            (inputs.cauchy(0, c) * d - inputs.cauchy(1, c) * g) * inputs.areas[c];
    }
    return integrate_pairs(integrand, inputs.n_interior, inputs.n_collocation);
}

double loss(const Eigen::Ref<const Eigen::VectorXd>& predictions,
            const Eigen::Ref<const Eigen::VectorXd>& targets) {
    if (predictions.size() == 0) throw EmptyBatch("loss: empty batch");
    if (predictions.size() != targets.size()) throw ShapeMismatch("loss: length mismatch");
    return std::sqrt((predictions - targets).squaredNorm()) /
           static_cast<double>(predictions.size());
}

double rmse(const Eigen::Ref<const Eigen::VectorXd>& predictions,
            const Eigen::Ref<const Eigen::VectorXd>& targets) {
    if (predictions.size() == 0) throw EmptyBatch("rmse: empty batch");
    if (predictions.size() != targets.size()) throw ShapeMismatch("rmse: length mismatch");
    return std::sqrt((predictions - targets).squaredNorm() /
                     static_cast<double>(predictions.size()));
}

ModelGradients loss_gradients(const GreensNetModel& model, const ModelInputs& inputs,
                              const Eigen::Ref<const Eigen::VectorXd>& targets) {
    check_model_inputs(model, inputs);
    if (targets.size() != inputs.n_interior) throw ShapeMismatch("loss_gradients: target length");

    ForwardTape g_tape, dgdn_tape;
    const Eigen::RowVectorXd g_out = forward(model.g_stack, inputs.coords, &g_tape);
    const Eigen::RowVectorXd dgdn_out = forward(model.dgdn_stack, inputs.coords, &dgdn_tape);
    const Eigen::RowVectorXd integrand =
        (inputs.cauchy.row(0).cwiseProduct(dgdn_out) - inputs.cauchy.row(1).cwiseProduct(g_out))
            .cwiseProduct(inputs.areas);

    ModelGradients out;
    out.predictions = integrate_pairs(integrand, inputs.n_interior, inputs.n_collocation);
    out.loss_value = loss(out.predictions, targets);

    // d loss / d pred_p; zero residual means zero gradient (subgradient of the sqrt).
    const Eigen::VectorXd diff = out.predictions - targets;
    const double norm = diff.norm();
    Eigen::VectorXd dpred = Eigen::VectorXd::Zero(inputs.n_interior);
    if (norm > 0.0) dpred = diff / (norm * static_cast<double>(inputs.n_interior));

    // Chain through the fixed integration layer.
    Eigen::RowVectorXd g_cot(inputs.pair_count());
    Eigen::RowVectorXd dgdn_cot(inputs.pair_count());
    for (Eigen::Index p = 0; p < inputs.n_interior; ++p) {
        const auto cols = Eigen::seqN(p * inputs.n_collocation, inputs.n_collocation);
        g_cot(cols) = -dpred[p] * inputs.cauchy.row(1)(cols).cwiseProduct(inputs.areas(cols));
        dgdn_cot(cols) = dpred[p] * inputs.cauchy.row(0)(cols).cwiseProduct(inputs.areas(cols));
    }

    out.g_stack = backward(model.g_stack, g_tape, g_cot);
    out.dgdn_stack = backward(model.dgdn_stack, dgdn_tape, dgdn_cot);
    return out;
}

} // namespace fieldrec
