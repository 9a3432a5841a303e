#include "paracheck/tensor.hpp"

namespace paracheck {

namespace {

size_t ipow(int base, int e) {
    size_t r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<size_t>(base);
    return r;
}

} // namespace

TensorField::TensorField(int dim, std::vector<Variance> variance)
    : dim_(dim), variance_(std::move(variance)),
      comps_(ipow(dim, static_cast<int>(variance_.size()))) {}

size_t TensorField::flat_index(std::initializer_list<int> idx) const {
    if (idx.size() != variance_.size()) throw std::logic_error("tensor index rank mismatch");
    size_t flat = 0;
    for (int i : idx) {
        if (i < 0 || i >= dim_) throw std::out_of_range("tensor index out of range");
        flat = flat * static_cast<size_t>(dim_) + static_cast<size_t>(i);
    }
    return flat;
}

std::vector<int> TensorField::unflatten(size_t flat) const {
    std::vector<int> idx(variance_.size());
    for (size_t s = variance_.size(); s-- > 0;) {
        idx[s] = static_cast<int>(flat % static_cast<size_t>(dim_));
        flat /= static_cast<size_t>(dim_);
    }
    return idx;
}

TensorField TensorField::kronecker(int dim) {
    TensorField t(dim, {Variance::Upper, Variance::Lower});
    for (int i = 0; i < dim; ++i) t.at(i, i) = ScalarExpr(1);
    return t;
}

TensorField operator+(const TensorField& a, const TensorField& b) {
    if (a.variance_ != b.variance_ || a.dim_ != b.dim_) {
        throw std::logic_error("tensor shape mismatch in addition");
    }
    TensorField r = a;
    for (size_t i = 0; i < r.comps_.size(); ++i) r.comps_[i] = a.comps_[i] + b.comps_[i];
    return r;
}

TensorField operator-(const TensorField& a, const TensorField& b) {
    if (a.variance_ != b.variance_ || a.dim_ != b.dim_) {
        throw std::logic_error("tensor shape mismatch in subtraction");
    }
    TensorField r = a;
    for (size_t i = 0; i < r.comps_.size(); ++i) r.comps_[i] = a.comps_[i] - b.comps_[i];
    return r;
}

TensorField TensorField::scaled(const ScalarExpr& s) const {
    TensorField r = *this;
    for (auto& c : r.comps_) c = c * s;
    return r;
}

TensorField VectorField::as_tensor() const {
    TensorField t(dim(), {Variance::Upper});
    for (int i = 0; i < dim(); ++i) t.at(i) = comps[static_cast<size_t>(i)];
    return t;
}

VectorField VectorField::from_tensor(const TensorField& t) {
    if (t.rank() != 1) throw std::logic_error("vector field requires a rank-1 tensor");
    VectorField v(t.dim());
    for (int i = 0; i < t.dim(); ++i) v.comps[static_cast<size_t>(i)] = t.at(i);
    return v;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField r(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        r.comps[static_cast<size_t>(i)] =
            a.comps[static_cast<size_t>(i)] + b.comps[static_cast<size_t>(i)];
    return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
    VectorField r(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        r.comps[static_cast<size_t>(i)] =
            a.comps[static_cast<size_t>(i)] - b.comps[static_cast<size_t>(i)];
    return r;
}

VectorField VectorField::scaled(const ScalarExpr& s) const {
    VectorField r(dim());
    for (int i = 0; i < dim(); ++i) r.comps[static_cast<size_t>(i)] = comps[static_cast<size_t>(i)] * s;
    return r;
}

} // namespace paracheck
