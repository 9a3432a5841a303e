#include "paracheck/check.hpp"

#include <cmath>
#include <random>

namespace paracheck {

std::vector<double> eval_tensor(const TensorField& t, Evaluator& ev) {
    std::vector<double> out(t.size());
    for (size_t i = 0; i < t.size(); ++i) out[i] = ev(t[i]);
    return out;
}

namespace {

// Contract every covariant slot of the (already evaluated) tensor with the
// given per-slot vectors; contravariant slots stay free and the max absolute
// pair of values decides the residual contribution.
void contracted_residual(const TensorField& shape, const std::vector<double>& va,
                         const std::vector<double>& vb,
                         const std::vector<std::vector<double>>& slot_args, double& max_rel,
                         double& max_abs) {
    int dim = shape.dim();
    int rank = shape.rank();
    // iterate over assignments of the contravariant slots
    std::vector<int> free_slots;
    for (int s = 0; s < rank; ++s)
        if (shape.variance()[static_cast<size_t>(s)] == Variance::Upper) free_slots.push_back(s);
    size_t free_count = 1;
    for (size_t i = 0; i < free_slots.size(); ++i) free_count *= static_cast<size_t>(dim);

    for (size_t f = 0; f < free_count; ++f) {
        // decode the free-slot assignment
        std::vector<int> fixed(static_cast<size_t>(rank), -1);
        size_t rem = f;
        for (size_t s = free_slots.size(); s-- > 0;) {
            fixed[static_cast<size_t>(free_slots[s])] = static_cast<int>(rem % static_cast<size_t>(dim));
            rem /= static_cast<size_t>(dim);
        }
        double ca = 0, cb = 0;
        std::vector<int> idx(static_cast<size_t>(rank), 0);
        for (;;) {
            bool skip = false;
            double weight = 1;
            for (int s = 0; s < rank; ++s) {
                if (fixed[static_cast<size_t>(s)] >= 0) {
                    if (idx[static_cast<size_t>(s)] != fixed[static_cast<size_t>(s)]) {
                        skip = true;
                        break;
                    }
                } else {
                    weight *= slot_args[static_cast<size_t>(s)][static_cast<size_t>(idx[static_cast<size_t>(s)])];
                }
            }
            if (!skip) {
                size_t flat = 0;
                for (int s = 0; s < rank; ++s) flat = flat * static_cast<size_t>(dim) + static_cast<size_t>(idx[static_cast<size_t>(s)]);
                ca += weight * va[flat];
                cb += weight * vb[flat];
            }
            int s = rank - 1;
            for (; s >= 0; --s) {
                if (++idx[static_cast<size_t>(s)] < dim) break;
                idx[static_cast<size_t>(s)] = 0;
            }
            if (s < 0) break;
        }
        double diff = std::abs(ca - cb);
        double scale = std::max({1.0, std::abs(ca), std::abs(cb)});
        max_rel = std::max(max_rel, diff / scale);
        max_abs = std::max(max_abs, diff);
    }
}

} // namespace

TensorVerdict compare_tensors(const TensorField& a, const TensorField& b, const Domain& dom,
                              const CheckOptions& opts) {
    TensorVerdict v;
    if (a.dim() != b.dim() || a.variance() != b.variance()) {
        v.note = "tensor shape mismatch";
        return v;
    }
    std::vector<Point> points;
    try {
        points = sample_points(dom, opts.points, opts.seed, opts.bindings);
    } catch (const SamplingError& e) {
        v.note = e.what();
        return v;
    }

    // deterministic random argument vectors, fixed per comparison
    std::mt19937_64 rng(opts.seed ^ 0x5bd1e995ULL);
    auto random_vec = [&](int dim) {
        std::vector<double> r(static_cast<size_t>(dim));
        for (auto& x : r) x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
        return r;
    };
    std::vector<std::vector<std::vector<double>>> arg_sets;
    if (a.rank() > 0) {
        for (int n = 0; n < opts.random_args; ++n) {
            std::vector<std::vector<double>> slots;
            for (int s = 0; s < a.rank(); ++s) slots.push_back(random_vec(a.dim()));
            arg_sets.push_back(std::move(slots));
        }
    }

    for (const auto& p : points) {
        ValueEnv env = point_env(dom, p, opts.bindings);
        Evaluator ev(env);
        std::vector<double> va, vb;
        try {
            va = eval_tensor(a, ev);
            vb = eval_tensor(b, ev);
        } catch (const EvalDomainError& e) {
            v.status = EqualityVerdict::Status::NotApplicable;
            v.note = e.what();
            v.worst = p;
            return v;
        }
        double point_rel = 0;
        for (size_t i = 0; i < va.size(); ++i) {
            double diff = std::abs(va[i] - vb[i]);
            double scale = std::max({1.0, std::abs(va[i]), std::abs(vb[i])});
            point_rel = std::max(point_rel, diff / scale);
            v.max_abs = std::max(v.max_abs, diff);
        }
        for (const auto& args : arg_sets) {
            contracted_residual(a, va, vb, args, point_rel, v.max_abs);
        }
        if (point_rel >= v.max_rel) {
            v.max_rel = point_rel;
            v.worst = p;
        }
    }
    v.status = v.max_rel < opts.tol ? EqualityVerdict::Status::Equal
                                    : EqualityVerdict::Status::NotEqual;
    return v;
}

TensorVerdict tensor_vanishes(const TensorField& a, const Domain& dom, const CheckOptions& opts) {
    TensorField zero(a.dim(), a.variance());
    return compare_tensors(a, zero, dom, opts);
}

TensorVerdict compare_vectors(const VectorField& a, const VectorField& b, const Domain& dom,
                              const CheckOptions& opts) {
    return compare_tensors(a.as_tensor(), b.as_tensor(), dom, opts);
}

TensorVerdict compare_scalars(const ScalarExpr& a, const ScalarExpr& b, const Domain& dom,
                              const CheckOptions& opts) {
    EqualityVerdict e = numeric_equal(a, b, dom, opts.points, opts.tol, opts.seed, opts.bindings);
    TensorVerdict v;
    v.status = e.status;
    v.max_abs = e.max_abs;
    v.max_rel = e.max_rel;
    v.worst = e.worst;
    v.note = e.note;
    return v;
}

} // namespace paracheck
