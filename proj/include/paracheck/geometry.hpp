#pragma once

#include <optional>
#include <string>
#include <vector>

#include "paracheck/sampling.hpp"
#include "paracheck/tensor.hpp"

namespace paracheck {

struct Chart {
    int dim = 0;
    Domain domain;

    const std::vector<std::string>& coords() const { return domain.coords; }
};

struct SingularMetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegreeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact symbolic determinant by cofactor expansion (intended for dim <= 5).
ScalarExpr determinant(const std::vector<std::vector<ScalarExpr>>& m);

/// Exact inverse as adjugate over determinant; entries are rational
/// functions of the input entries.
std::vector<std::vector<ScalarExpr>> matrix_inverse_exact(
    const std::vector<std::vector<ScalarExpr>>& m);

/// Symmetric (0,2) metric with exact cached inverse and signature.
class MetricField {
public:
    /// Validates symmetry, |det| >= kDetMargin on samples, and inv*g = id.
    static MetricField build(const Chart& chart, const std::vector<std::vector<ScalarExpr>>& comps,
                             int points = 16, uint64_t seed = 42, const ParamBindings& bindings = {});

    int dim() const { return dim_; }
    const TensorField& tensor() const { return g_; }
    const ScalarExpr& component(int i, int j) const { return g_.at(i, j); }
    const ScalarExpr& inverse(int i, int j) const { return inv_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    const ScalarExpr& det() const { return det_; }
    int positive_eigenvalues() const { return n_pos_; }
    int negative_eigenvalues() const { return n_neg_; }
    std::string signature() const; // e.g. "(+,-,+)"

    static constexpr double kDetMargin = 1e-6;

private:
    int dim_ = 0;
    TensorField g_;
    std::vector<std::vector<ScalarExpr>> inv_;
    ScalarExpr det_;
    int n_pos_ = 0;
    int n_neg_ = 0;
};

/// Frame presentation of a metric: dim vector fields plus the constant
/// symmetric matrix of their pairwise inner products.
struct FrameSpec {
    std::vector<std::string> names;
    std::vector<VectorField> vectors;
    std::vector<std::vector<Rational>> inner;

    int dim() const { return static_cast<int>(vectors.size()); }
    int index_of(const std::string& name) const;
};

/// Coordinate components of the metric determined by g(frame_a, frame_b) =
/// inner[a][b]; fails if the frame matrix is singular on the domain.
MetricField metric_from_frame(const FrameSpec& frame, const Chart& chart, int points = 16,
                              uint64_t seed = 42, const ParamBindings& bindings = {});

/// Exact coframe theta[a][i] with theta^a(frame_b) = delta^a_b.
std::vector<std::vector<ScalarExpr>> frame_coframe(const FrameSpec& frame);

/// Coefficients c_a with v = sum_a c_a frame_a.
std::vector<ScalarExpr> frame_coefficients(const FrameSpec& frame, const VectorField& v);

VectorField lie_bracket(const Chart& chart, const VectorField& x, const VectorField& y);

/// Normalization of the exterior derivative on 1-forms: Half uses
/// d eta(X,Y) = (X eta(Y) - Y eta(X) - eta([X,Y])) / 2, Plain drops the 1/2.
/// Degrees 0 and 2 are convention-independent here (see docs/conventions in
/// the README).
enum class DetaConvention { Half, Plain };

/// d of a k-form, k in {0,1,2}; throws DegreeError otherwise.
TensorField exterior_derivative(const Chart& chart, const TensorField& form,
                                DetaConvention conv = DetaConvention::Half);

/// Wedge of a 1-form with a 1- or 2-form (or mirrored); the normalization is
/// anchored by (dx ^ dy)(ddx, ddy) = 1.
TensorField wedge(const TensorField& a, const TensorField& b);

/// Levi-Civita connection and curvature data.
/// riemann is stored as R[l][i][j][k] = l-th component of R(d_i, d_j) d_k
/// with R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z;
/// ricci is the trace over the first argument.
struct CurvatureBundle {
    int dim = 0;
    std::vector<ScalarExpr> gamma; // dim^3 entries, symmetric in the lower pair
    TensorField riemann;           // (1,3)
    TensorField ricci;             // (0,2)
    TensorField ricci_op;          // (1,1)
    ScalarExpr scalar;

    const ScalarExpr& christoffel(int k, int i, int j) const {
        return gamma[(static_cast<size_t>(k) * dim + i) * dim + j];
    }
    ScalarExpr& christoffel(int k, int i, int j) {
        return gamma[(static_cast<size_t>(k) * dim + i) * dim + j];
    }
};

CurvatureBundle compute_curvature(const Chart& chart, const MetricField& metric);

VectorField covariant_derivative_vector(const Chart& chart, const CurvatureBundle& bundle,
                                        const VectorField& x, const VectorField& y);

/// (1,1) field of covariant derivatives: result[l][i] = (nabla_i V)^l.
TensorField nabla_vector_field(const Chart& chart, const CurvatureBundle& bundle,
                               const VectorField& v);

/// result[l][i][j] = (nabla_i phi)^l_j for a (1,1) tensor phi.
TensorField covariant_derivative_one_one(const Chart& chart, const CurvatureBundle& bundle,
                                         const TensorField& phi);

/// result[i][j][k] = (nabla_i s)_{jk} for a (0,2) tensor s.
TensorField covariant_derivative_zero_two(const Chart& chart, const CurvatureBundle& bundle,
                                          const TensorField& s);

VectorField gradient(const Chart& chart, const ScalarExpr& f, const MetricField& metric);

TensorField hessian(const Chart& chart, const ScalarExpr& f, const CurvatureBundle& bundle);

TensorField lie_derivative_metric(const Chart& chart, const VectorField& v,
                                  const CurvatureBundle& bundle, const MetricField& metric);

/// One-form with components eta_i = g_{ij} zeta^j.
TensorField metric_dual(const MetricField& metric, const VectorField& zeta);

/// Raise the index of a one-form: v^i = g^{ij} w_j.
VectorField raise_index(const MetricField& metric, const TensorField& one_form);

} // namespace paracheck
