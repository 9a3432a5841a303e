#pragma once

#include "paracheck/geometry.hpp"

namespace paracheck {

struct CheckOptions {
    int points = 16;
    double tol = 1e-9;
    uint64_t seed = 42;
    DetaConvention deta = DetaConvention::Half;
    int random_args = 8; // random constant argument combinations per identity
    ParamBindings bindings;
};

struct TensorVerdict {
    EqualityVerdict::Status status = EqualityVerdict::Status::NotApplicable;
    double max_abs = 0;
    double max_rel = 0;
    Point worst;
    std::string note;

    bool pass() const { return status == EqualityVerdict::Status::Equal; }
};

/// Componentwise sampled comparison of two tensor fields of equal shape.
/// With random_args > 0 the residual is additionally contracted against
/// random constant vectors in every covariant slot.
TensorVerdict compare_tensors(const TensorField& a, const TensorField& b, const Domain& dom,
                              const CheckOptions& opts);

TensorVerdict tensor_vanishes(const TensorField& a, const Domain& dom, const CheckOptions& opts);

TensorVerdict compare_vectors(const VectorField& a, const VectorField& b, const Domain& dom,
                              const CheckOptions& opts);

TensorVerdict compare_scalars(const ScalarExpr& a, const ScalarExpr& b, const Domain& dom,
                              const CheckOptions& opts);

/// Componentwise numeric values of a tensor at one point.
std::vector<double> eval_tensor(const TensorField& t, Evaluator& ev);

} // namespace paracheck
