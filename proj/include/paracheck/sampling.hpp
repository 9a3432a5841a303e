#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paracheck/expr.hpp"

namespace paracheck {

struct Interval {
    Rational lo;
    Rational hi;
};

/// Sampling region: a closed box per coordinate plus expressions that must
/// stay bounded away from zero at every accepted sample point.
struct Domain {
    std::vector<std::string> coords;
    std::vector<Interval> boxes;
    std::vector<ScalarExpr> excluded;
};

inline constexpr double kExclusionMargin = 1e-3;

using Point = std::vector<double>;

struct SamplingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Deterministic quasi-uniform samples for a fixed seed; points violating an
/// exclusion constraint by less than kExclusionMargin are redrawn.
std::vector<Point> sample_points(const Domain& dom, int n, uint64_t seed,
                                 const ParamBindings& bindings = {});

ValueEnv point_env(const Domain& dom, const Point& p, const ParamBindings& bindings = {});

struct EqualityVerdict {
    enum class Status { Equal, NotEqual, NotApplicable };
    Status status = Status::NotApplicable;
    double max_abs = 0;
    double max_rel = 0;
    Point worst;
    int samples = 0;
    uint64_t seed = 0;
    std::string note; // domain-error text for NotApplicable verdicts

    bool equal() const { return status == Status::Equal; }
};

/// Sampling-based equality oracle: equal iff max |a-b|, scaled by
/// max(1, magnitude), stays below tol over n points. Deterministic for a
/// fixed seed; evaluation domain errors yield NotApplicable.
EqualityVerdict numeric_equal(const ScalarExpr& a, const ScalarExpr& b, const Domain& dom, int n,
                              double tol, uint64_t seed, const ParamBindings& bindings = {});

} // namespace paracheck
