#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "paracheck/rational.hpp"

namespace paracheck {

enum class SymbolKind { Coordinate, Parameter };
enum class FuncKind { Exp, Log, Sin, Cos, Sinh, Cosh, Sqrt };

const char* func_name(FuncKind k);

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, size_t offset)
        : std::runtime_error(msg + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
    size_t offset;
};

struct UnknownSymbolError : ParseError {
    UnknownSymbolError(const std::string& symbol, size_t offset)
        : ParseError("unknown symbol '" + symbol + "'", offset), symbol(symbol) {}
    std::string symbol;
};

/// Evaluation left the function's real domain (log of a non-positive value,
/// sqrt of a negative value, division by zero, non-finite result).
struct EvalDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnboundParameterError : std::runtime_error {
    explicit UnboundParameterError(const std::string& name)
        : std::runtime_error("unbound parameter '" + name + "'"), name(name) {}
    std::string name;
};

namespace detail {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Kind { Constant, Symbol, Sum, Product, Power, Function };
    Kind kind;
    Rational value;             // Constant payload; Power exponent
    std::string name;           // Symbol payload
    SymbolKind sym_kind = SymbolKind::Coordinate;
    FuncKind func = FuncKind::Exp;
    std::vector<NodePtr> args;  // Sum/Product children; Power base / Function argument at [0]
    size_t hash = 0;
};

int compare(const NodePtr& a, const NodePtr& b);

} // namespace detail

/// Immutable symbolic scalar expression over named coordinates and parameters.
/// Construction runs best-effort simplification (constant folding, flattening,
/// like-term and like-factor merging); semantic equality is decided by
/// sampling, never structurally.
class ScalarExpr {
public:
    ScalarExpr(); // zero
    ScalarExpr(long long n);
    ScalarExpr(const Rational& r);

    static ScalarExpr constant(const Rational& r);
    static ScalarExpr coordinate(const std::string& name);
    static ScalarExpr parameter(const std::string& name);

    const detail::NodePtr& node() const { return node_; }
    bool is_zero() const;
    bool is_constant() const;
    /// Valid only when is_constant().
    Rational constant_value() const;

    friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b);
    ScalarExpr operator-() const;
    ScalarExpr& operator+=(const ScalarExpr& o) { return *this = *this + o; }
    ScalarExpr& operator-=(const ScalarExpr& o) { return *this = *this - o; }
    ScalarExpr& operator*=(const ScalarExpr& o) { return *this = *this * o; }

    explicit ScalarExpr(detail::NodePtr n) : node_(std::move(n)) {}

private:
    detail::NodePtr node_;
};

ScalarExpr pow(const ScalarExpr& base, const Rational& exponent);
ScalarExpr apply(FuncKind f, const ScalarExpr& arg);
inline ScalarExpr exp(const ScalarExpr& e) { return apply(FuncKind::Exp, e); }
inline ScalarExpr log(const ScalarExpr& e) { return apply(FuncKind::Log, e); }
inline ScalarExpr sin(const ScalarExpr& e) { return apply(FuncKind::Sin, e); }
inline ScalarExpr cos(const ScalarExpr& e) { return apply(FuncKind::Cos, e); }
inline ScalarExpr sqrt(const ScalarExpr& e) { return apply(FuncKind::Sqrt, e); }

/// Parseable text form; parsing it back yields a numerically equal expression.
std::string to_string(const ScalarExpr& e);

/// Parse `text` against the expression grammar. Symbols must appear in
/// `coords` or `params`.
ScalarExpr parse_expr(std::string_view text, const std::vector<std::string>& coords,
                      const std::vector<std::string>& params = {});

/// Exact symbolic partial derivative with respect to coordinate `coord`.
ScalarExpr differentiate(const ScalarExpr& e, const std::string& coord);

/// Name -> value environment used for evaluation (coordinates and parameters).
using ValueEnv = std::map<std::string, double>;
using ParamBindings = std::map<std::string, double>;

/// Memoizing evaluator: shared subtrees are evaluated once per point.
class Evaluator {
public:
    explicit Evaluator(const ValueEnv& env) : env_(env) {}
    double operator()(const ScalarExpr& e);

private:
    double eval(const detail::Node* n);
    const ValueEnv& env_;
    std::unordered_map<const detail::Node*, double> memo_;
};

double evaluate(const ScalarExpr& e, const ValueEnv& env);

} // namespace paracheck
