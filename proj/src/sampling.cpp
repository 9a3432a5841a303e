#include "paracheck/sampling.hpp"

#include <cmath>
#include <random>

namespace paracheck {

namespace {

// Explicit 53-bit mapping: std::uniform_real_distribution is not
// reproducible across standard libraries.
double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

ValueEnv point_env(const Domain& dom, const Point& p, const ParamBindings& bindings) {
    ValueEnv env(bindings.begin(), bindings.end());
    for (size_t i = 0; i < dom.coords.size(); ++i) env[dom.coords[i]] = p[i];
    return env;
}

std::vector<Point> sample_points(const Domain& dom, int n, uint64_t seed,
                                 const ParamBindings& bindings) {
    if (n < 1) throw SamplingError("sample count must be >= 1");
    if (dom.coords.size() != dom.boxes.size()) {
        throw SamplingError("domain has " + std::to_string(dom.coords.size()) + " coordinates but " +
                            std::to_string(dom.boxes.size()) + " intervals");
    }
    for (const auto& b : dom.boxes) {
        if (b.hi < b.lo) throw SamplingError("empty interval in domain");
    }
    std::mt19937_64 rng(seed);
    std::vector<Point> points;
    points.reserve(static_cast<size_t>(n));
    const long max_attempts = 10000L * n + 1000;
    long attempts = 0;
    while (points.size() < static_cast<size_t>(n)) {
        if (++attempts > max_attempts) {
            throw SamplingError("could not satisfy domain exclusion constraints");
        }
        Point p(dom.coords.size());
        for (size_t i = 0; i < dom.boxes.size(); ++i) {
            double lo = dom.boxes[i].lo.to_double();
            double hi = dom.boxes[i].hi.to_double();
            p[i] = lo + unit_double(rng) * (hi - lo);
        }
        bool ok = true;
        if (!dom.excluded.empty()) {
            ValueEnv env = point_env(dom, p, bindings);
            Evaluator ev(env);
            for (const auto& e : dom.excluded) {
                double v;
                try {
                    v = ev(e);
                } catch (const EvalDomainError&) {
                    ok = false;
                    break;
                }
                if (std::abs(v) < kExclusionMargin) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) points.push_back(std::move(p));
    }
    return points;
}

EqualityVerdict numeric_equal(const ScalarExpr& a, const ScalarExpr& b, const Domain& dom, int n,
                              double tol, uint64_t seed, const ParamBindings& bindings) {
    EqualityVerdict verdict;
    verdict.samples = n;
    verdict.seed = seed;
    if (n < 1 || tol <= 0) {
        verdict.status = EqualityVerdict::Status::NotApplicable;
        verdict.note = "invalid sample count or tolerance";
        return verdict;
    }
    std::vector<Point> points;
    try {
        points = sample_points(dom, n, seed, bindings);
    } catch (const SamplingError& e) {
        verdict.note = e.what();
        return verdict;
    }
    for (const auto& p : points) {
        ValueEnv env = point_env(dom, p, bindings);
        Evaluator ev(env);
        double va, vb;
        try {
            va = ev(a);
            vb = ev(b);
        } catch (const EvalDomainError& e) {
            verdict.status = EqualityVerdict::Status::NotApplicable;
            verdict.note = e.what();
            verdict.worst = p;
            return verdict;
        }
        double diff = std::abs(va - vb);
        double scale = std::max({1.0, std::abs(va), std::abs(vb)});
        double rel = diff / scale;
        if (rel >= verdict.max_rel) {
            verdict.max_rel = rel;
            verdict.worst = p;
        }
        verdict.max_abs = std::max(verdict.max_abs, diff);
    }
    verdict.status = verdict.max_rel < tol ? EqualityVerdict::Status::Equal
                                           : EqualityVerdict::Status::NotEqual;
    return verdict;
}

} // namespace paracheck
