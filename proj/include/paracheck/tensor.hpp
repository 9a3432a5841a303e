#pragma once

#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "paracheck/expr.hpp"

namespace paracheck {

enum class Variance { Upper, Lower };

/// Dense component array of scalar expressions with a variance signature.
/// Index order matches the slot order of the signature.
class TensorField {
public:
    TensorField() = default;
    TensorField(int dim, std::vector<Variance> variance);

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(variance_.size()); }
    const std::vector<Variance>& variance() const { return variance_; }
    size_t size() const { return comps_.size(); }

    const ScalarExpr& operator[](size_t flat) const { return comps_[flat]; }
    ScalarExpr& operator[](size_t flat) { return comps_[flat]; }

    template <typename... I>
    const ScalarExpr& at(I... idx) const {
        return comps_[flat_index({static_cast<int>(idx)...})];
    }
    template <typename... I>
    ScalarExpr& at(I... idx) {
        return comps_[flat_index({static_cast<int>(idx)...})];
    }

    size_t flat_index(std::initializer_list<int> idx) const;
    std::vector<int> unflatten(size_t flat) const;

    /// (1,1) identity tensor.
    static TensorField kronecker(int dim);

    friend TensorField operator+(const TensorField& a, const TensorField& b);
    friend TensorField operator-(const TensorField& a, const TensorField& b);
    TensorField scaled(const ScalarExpr& s) const;

private:
    int dim_ = 0;
    std::vector<Variance> variance_;
    std::vector<ScalarExpr> comps_;
};

struct VectorField {
    std::vector<ScalarExpr> comps;

    VectorField() = default;
    explicit VectorField(int dim) : comps(static_cast<size_t>(dim)) {}
    int dim() const { return static_cast<int>(comps.size()); }

    TensorField as_tensor() const;
    static VectorField from_tensor(const TensorField& t);

    friend VectorField operator+(const VectorField& a, const VectorField& b);
    friend VectorField operator-(const VectorField& a, const VectorField& b);
    VectorField scaled(const ScalarExpr& s) const;
};

} // namespace paracheck
