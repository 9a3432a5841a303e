#include "paracheck/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>

namespace paracheck {

using detail::Node;
using detail::NodePtr;
using Kind = Node::Kind;

const char* func_name(FuncKind k) {
    switch (k) {
        case FuncKind::Exp: return "exp";
        case FuncKind::Log: return "log";
        case FuncKind::Sin: return "sin";
        case FuncKind::Cos: return "cos";
        case FuncKind::Sinh: return "sinh";
        case FuncKind::Cosh: return "cosh";
        case FuncKind::Sqrt: return "sqrt";
    }
    return "?";
}

namespace {

size_t hash_mix(size_t h, size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

size_t node_hash(const Node& n) {
    size_t h = static_cast<size_t>(n.kind) * 1315423911ULL;
    switch (n.kind) {
        case Kind::Constant:
            h = hash_mix(h, std::hash<long long>{}(n.value.num()));
            h = hash_mix(h, std::hash<long long>{}(n.value.den()));
            break;
        case Kind::Symbol:
            h = hash_mix(h, std::hash<std::string>{}(n.name));
            h = hash_mix(h, static_cast<size_t>(n.sym_kind));
            break;
        case Kind::Power:
            h = hash_mix(h, std::hash<long long>{}(n.value.num()));
            h = hash_mix(h, std::hash<long long>{}(n.value.den()));
            h = hash_mix(h, n.args[0]->hash);
            break;
        case Kind::Function:
            h = hash_mix(h, static_cast<size_t>(n.func));
            h = hash_mix(h, n.args[0]->hash);
            break;
        case Kind::Sum:
        case Kind::Product:
            for (const auto& a : n.args) h = hash_mix(h, a->hash);
            break;
    }
    return h;
}

NodePtr finish(Node n) {
    n.hash = node_hash(n);
    return std::make_shared<const Node>(std::move(n));
}

NodePtr make_const(const Rational& r) {
    Node n;
    n.kind = Kind::Constant;
    n.value = r;
    return finish(std::move(n));
}

const NodePtr& zero_node() {
    static const NodePtr z = make_const(Rational(0));
    return z;
}
const NodePtr& one_node() {
    static const NodePtr o = make_const(Rational(1));
    return o;
}

NodePtr make_symbol(const std::string& name, SymbolKind k) {
    Node n;
    n.kind = Kind::Symbol;
    n.name = name;
    n.sym_kind = k;
    return finish(std::move(n));
}

bool is_const(const NodePtr& n) { return n->kind == Kind::Constant; }
bool is_const(const NodePtr& n, const Rational& v) {
    return n->kind == Kind::Constant && n->value == v;
}

bool deep_equal(const NodePtr& a, const NodePtr& b) { return detail::compare(a, b) == 0; }

NodePtr make_sum(std::vector<NodePtr> children);
NodePtr make_product(std::vector<NodePtr> children);
NodePtr make_power(NodePtr base, Rational exponent);
NodePtr make_function(FuncKind f, NodePtr arg);

struct NodeKey {
    NodePtr node;
    bool operator==(const NodeKey& o) const { return deep_equal(node, o.node); }
};
struct NodeKeyHash {
    size_t operator()(const NodeKey& k) const { return k.node->hash; }
};

// Splits a term into (rational coefficient, residual factor); the residual is
// null when the term is a pure constant.
std::pair<Rational, NodePtr> split_coefficient(const NodePtr& term) {
    if (term->kind == Kind::Constant) return {term->value, nullptr};
    if (term->kind == Kind::Product && !term->args.empty() && is_const(term->args[0])) {
        Rational c = term->args[0]->value;
        std::vector<NodePtr> rest(term->args.begin() + 1, term->args.end());
        if (rest.empty()) return {c, nullptr};
        if (rest.size() == 1) return {c, rest[0]};
        Node n;
        n.kind = Kind::Product;
        n.args = std::move(rest);
        return {c, finish(std::move(n))};
    }
    return {Rational(1), term};
}

NodePtr make_sum(std::vector<NodePtr> children) {
    std::vector<NodePtr> flat;
    flat.reserve(children.size());
    for (auto& c : children) {
        if (c->kind == Kind::Sum) {
            flat.insert(flat.end(), c->args.begin(), c->args.end());
        } else {
            flat.push_back(std::move(c));
        }
    }
    Rational constant(0);
    std::unordered_map<NodeKey, Rational, NodeKeyHash> coeffs;
    std::vector<NodePtr> order;
    for (const auto& t : flat) {
        auto [c, core] = split_coefficient(t);
        if (!core) {
            constant += c;
            continue;
        }
        auto [it, inserted] = coeffs.try_emplace(NodeKey{core}, c);
        if (inserted) {
            order.push_back(core);
        } else {
            it->second += c;
        }
    }
    std::sort(order.begin(), order.end(),
              [](const NodePtr& a, const NodePtr& b) { return detail::compare(a, b) < 0; });
    std::vector<NodePtr> terms;
    for (const auto& core : order) {
        const Rational& c = coeffs.at(NodeKey{core});
        if (c.is_zero()) continue;
        if (c == Rational(1)) {
            terms.push_back(core);
        } else {
            terms.push_back(make_product({make_const(c), core}));
        }
    }
    if (!constant.is_zero()) terms.push_back(make_const(constant));
    if (terms.empty()) return zero_node();
    if (terms.size() == 1) return terms[0];
    Node n;
    n.kind = Kind::Sum;
    n.args = std::move(terms);
    return finish(std::move(n));
}

// Splits a factor into (base, rational exponent).
std::pair<NodePtr, Rational> split_exponent(const NodePtr& factor) {
    if (factor->kind == Kind::Power) return {factor->args[0], factor->value};
    return {factor, Rational(1)};
}

NodePtr make_product(std::vector<NodePtr> children) {
    std::vector<NodePtr> flat;
    flat.reserve(children.size());
    for (auto& c : children) {
        if (c->kind == Kind::Product) {
            flat.insert(flat.end(), c->args.begin(), c->args.end());
        } else {
            flat.push_back(std::move(c));
        }
    }
    Rational coeff(1);
    std::vector<NodePtr> exp_args; // exp factors merge into exp(sum)
    std::unordered_map<NodeKey, Rational, NodeKeyHash> exps;
    std::vector<NodePtr> order;
    for (const auto& f : flat) {
        if (is_const(f)) {
            if (f->value.is_zero()) return zero_node();
            coeff *= f->value;
            continue;
        }
        if (f->kind == Kind::Function && f->func == FuncKind::Exp) {
            exp_args.push_back(f->args[0]);
            continue;
        }
        auto [base, e] = split_exponent(f);
        auto [it, inserted] = exps.try_emplace(NodeKey{base}, e);
        if (inserted) {
            order.push_back(base);
        } else {
            it->second += e;
        }
    }
    if (!exp_args.empty()) {
        NodePtr merged = make_function(FuncKind::Exp, make_sum(std::move(exp_args)));
        if (is_const(merged)) {
            coeff *= merged->value;
        } else {
            auto [base, e] = split_exponent(merged);
            auto [it, inserted] = exps.try_emplace(NodeKey{base}, e);
            if (inserted) {
                order.push_back(base);
            } else {
                it->second += e;
            }
        }
    }
    std::sort(order.begin(), order.end(),
              [](const NodePtr& a, const NodePtr& b) { return detail::compare(a, b) < 0; });
    std::vector<NodePtr> factors;
    for (const auto& base : order) {
        const Rational& e = exps.at(NodeKey{base});
        if (e.is_zero()) continue;
        factors.push_back(make_power(base, e));
    }
    if (factors.empty()) return make_const(coeff);
    if (coeff.is_zero()) return zero_node();
    if (!(coeff == Rational(1))) {
        factors.insert(factors.begin(), make_const(coeff));
    }
    if (factors.size() == 1) return factors[0];
    Node n;
    n.kind = Kind::Product;
    n.args = std::move(factors);
    return finish(std::move(n));
}

NodePtr make_power(NodePtr base, Rational exponent) {
    if (exponent.is_zero()) return one_node();
    if (exponent == Rational(1)) return base;
    if (is_const(base) && exponent.is_integer()) {
        if (!(base->value.is_zero() && exponent < Rational(0))) {
            return make_const(Rational::pow(base->value, exponent.num()));
        }
        // 1/0 literal: keep the node, evaluation reports the domain error
    }
    if (base->kind == Kind::Power && base->value.is_integer() && exponent.is_integer()) {
        return make_power(base->args[0], base->value * exponent);
    }
    Node n;
    n.kind = Kind::Power;
    n.value = exponent;
    n.args = {std::move(base)};
    return finish(std::move(n));
}

bool rational_sqrt(const Rational& r, Rational& out) {
    if (r.num() < 0) return false;
    auto isqrt = [](long long v, long long& root) {
        long long r0 = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(v))));
        for (long long c = std::max(0LL, r0 - 2); c <= r0 + 2; ++c) {
            if (c * c == v) {
                root = c;
                return true;
            }
        }
        return false;
    };
    long long sn, sd;
    if (!isqrt(r.num(), sn) || !isqrt(r.den(), sd)) return false;
    out = Rational(sn, sd);
    return true;
}

NodePtr make_function(FuncKind f, NodePtr arg) {
    if (is_const(arg)) {
        const Rational& v = arg->value;
        switch (f) {
            case FuncKind::Exp:
                if (v.is_zero()) return one_node();
                break;
            case FuncKind::Log:
                if (v == Rational(1)) return zero_node();
                break;
            case FuncKind::Sin:
            case FuncKind::Sinh:
                if (v.is_zero()) return zero_node();
                break;
            case FuncKind::Cos:
            case FuncKind::Cosh:
                if (v.is_zero()) return one_node();
                break;
            case FuncKind::Sqrt: {
                Rational root(0);
                if (rational_sqrt(v, root)) return make_const(root);
                break;
            }
        }
    }
    if (f == FuncKind::Log && arg->kind == Kind::Function && arg->func == FuncKind::Exp) {
        return arg->args[0];
    }
    Node n;
    n.kind = Kind::Function;
    n.func = f;
    n.args = {std::move(arg)};
    return finish(std::move(n));
}

} // namespace

namespace detail {

int compare(const NodePtr& a, const NodePtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    auto cmp_rational = [](const Rational& x, const Rational& y) {
        if (x == y) return 0;
        return x < y ? -1 : 1;
    };
    switch (a->kind) {
        case Kind::Constant:
            return cmp_rational(a->value, b->value);
        case Kind::Symbol: {
            int c = a->name.compare(b->name);
            if (c != 0) return c < 0 ? -1 : 1;
            if (a->sym_kind != b->sym_kind) return a->sym_kind < b->sym_kind ? -1 : 1;
            return 0;
        }
        case Kind::Power: {
            int c = compare(a->args[0], b->args[0]);
            if (c != 0) return c;
            return cmp_rational(a->value, b->value);
        }
        case Kind::Function: {
            if (a->func != b->func) return a->func < b->func ? -1 : 1;
            return compare(a->args[0], b->args[0]);
        }
        case Kind::Sum:
        case Kind::Product: {
            size_t n = std::min(a->args.size(), b->args.size());
            for (size_t i = 0; i < n; ++i) {
                int c = compare(a->args[i], b->args[i]);
                if (c != 0) return c;
            }
            if (a->args.size() != b->args.size()) return a->args.size() < b->args.size() ? -1 : 1;
            return 0;
        }
    }
    return 0;
}

} // namespace detail

ScalarExpr::ScalarExpr() : node_(zero_node()) {}
ScalarExpr::ScalarExpr(long long n) : node_(make_const(Rational(n))) {}
ScalarExpr::ScalarExpr(const Rational& r) : node_(make_const(r)) {}

ScalarExpr ScalarExpr::constant(const Rational& r) { return ScalarExpr(make_const(r)); }
ScalarExpr ScalarExpr::coordinate(const std::string& name) {
    return ScalarExpr(make_symbol(name, SymbolKind::Coordinate));
}
ScalarExpr ScalarExpr::parameter(const std::string& name) {
    return ScalarExpr(make_symbol(name, SymbolKind::Parameter));
}

bool ScalarExpr::is_zero() const { return is_const(node_, Rational(0)); }
bool ScalarExpr::is_constant() const { return is_const(node_); }
Rational ScalarExpr::constant_value() const {
    if (!is_constant()) throw std::logic_error("expression is not a constant");
    return node_->value;
}

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
    return ScalarExpr(make_sum({a.node(), b.node()}));
}
ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) {
    return ScalarExpr(make_sum({a.node(), make_product({make_const(Rational(-1)), b.node()})}));
}
ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
    return ScalarExpr(make_product({a.node(), b.node()}));
}
ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
    return ScalarExpr(make_product({a.node(), make_power(b.node(), Rational(-1))}));
}
ScalarExpr ScalarExpr::operator-() const {
    return ScalarExpr(make_product({make_const(Rational(-1)), node_}));
}

ScalarExpr pow(const ScalarExpr& base, const Rational& exponent) {
    return ScalarExpr(make_power(base.node(), exponent));
}
ScalarExpr apply(FuncKind f, const ScalarExpr& arg) {
    return ScalarExpr(make_function(f, arg.node()));
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence levels for parenthesization: sum < product < power < atom.
enum Prec { PrecSum = 0, PrecProduct = 1, PrecPower = 2, PrecAtom = 3 };

void print_node(const NodePtr& n, std::string& out, int parent_prec);

bool term_is_negative(const NodePtr& t) {
    if (t->kind == Kind::Constant) return t->value < Rational(0);
    if (t->kind == Kind::Product && is_const(t->args[0])) return t->args[0]->value < Rational(0);
    return false;
}

NodePtr negate_node(const NodePtr& t) { return make_product({make_const(Rational(-1)), t}); }

void print_node(const NodePtr& n, std::string& out, int parent_prec) {
    switch (n->kind) {
        case Kind::Constant: {
            const Rational& v = n->value;
            if (v < Rational(0) && parent_prec > PrecSum) {
                out += "(" + v.str() + ")";
            } else if (!v.is_integer() && parent_prec >= PrecPower) {
                out += "(" + v.str() + ")";
            } else {
                out += v.str();
            }
            return;
        }
        case Kind::Symbol:
            out += n->name;
            return;
        case Kind::Function:
            out += func_name(n->func);
            out += "(";
            print_node(n->args[0], out, PrecSum);
            out += ")";
            return;
        case Kind::Power: {
            if (parent_prec > PrecPower) out += "(";
            const NodePtr& base = n->args[0];
            // the base of a power must bind at least as tightly as an atom
            if (base->kind == Kind::Function) {
                print_node(base, out, PrecSum);
            } else if (base->kind == Kind::Symbol) {
                print_node(base, out, PrecSum);
            } else {
                out += "(";
                print_node(base, out, PrecSum);
                out += ")";
            }
            out += "^";
            if (n->value.is_integer() && !(n->value < Rational(0))) {
                out += n->value.str();
            } else {
                out += "(" + n->value.str() + ")";
            }
            if (parent_prec > PrecPower) out += ")";
            return;
        }
        case Kind::Product: {
            if (parent_prec > PrecProduct) out += "(";
            bool first = true;
            for (const auto& f : n->args) {
                if (!first) out += "*";
                print_node(f, out, PrecProduct);
                first = false;
            }
            if (parent_prec > PrecProduct) out += ")";
            return;
        }
        case Kind::Sum: {
            if (parent_prec > PrecSum) out += "(";
            bool first = true;
            for (const auto& t : n->args) {
                if (!first && term_is_negative(t)) {
                    out += " - ";
                    print_node(negate_node(t), out, PrecProduct);
                } else {
                    if (!first) out += " + ";
                    print_node(t, out, first ? PrecSum : PrecProduct);
                }
                first = false;
            }
            if (parent_prec > PrecSum) out += ")";
            return;
        }
    }
}

} // namespace

std::string to_string(const ScalarExpr& e) {
    std::string out;
    print_node(e.node(), out, PrecSum);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing
//
// expr   := term (("+"|"-") term)*
// term   := factor (("*"|"/") factor)*
// factor := base ("^" exponent)?
// base   := number | symbol | func "(" expr ")" | "(" expr ")" | "-" factor
// number := decimal, optionally with fraction and exponent
// symbol := [A-Za-z_][A-Za-z0-9_]*

namespace {

struct Parser {
    std::string_view src;
    size_t pos = 0;
    const std::vector<std::string>& coords;
    const std::vector<std::string>& params;

    void skip_ws() {
        while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t')) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::string lex_number() {
        size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos < src.size() && src[pos] == '.') {
            ++pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        }
        if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
            size_t save = pos;
            ++pos;
            if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
            if (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
            } else {
                pos = save; // "e" belongs to a following symbol, not this number
            }
        }
        return std::string(src.substr(start, pos - start));
    }

    std::string lex_symbol() {
        size_t start = pos;
        ++pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        return std::string(src.substr(start, pos - start));
    }

    ScalarExpr parse_expr_level() {
        ScalarExpr acc = parse_term();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos;
                acc = acc + parse_term();
            } else if (c == '-') {
                ++pos;
                acc = acc - parse_term();
            } else {
                return acc;
            }
        }
    }

    ScalarExpr parse_term() {
        ScalarExpr acc = parse_factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos;
                acc = acc * parse_factor();
            } else if (c == '/') {
                ++pos;
                acc = acc / parse_factor();
            } else {
                return acc;
            }
        }
    }

    ScalarExpr parse_factor() {
        ScalarExpr base = parse_base();
        if (peek() == '^') {
            ++pos;
            Rational e = parse_exponent();
            return pow(base, e);
        }
        return base;
    }

    Rational parse_exponent() {
        bool neg = false;
        if (peek() == '-') {
            ++pos;
            neg = true;
        }
        Rational r(0);
        if (peek() == '(') {
            ++pos;
            bool inner_neg = false;
            if (peek() == '-') {
                ++pos;
                inner_neg = true;
            }
            r = parse_number_literal();
            if (peek() == '/') {
                ++pos;
                skip_ws();
                Rational d = parse_number_literal();
                r /= d;
            }
            if (inner_neg) r = -r;
            if (!consume(')')) throw ParseError("expected ')' in exponent", pos);
        } else {
            r = parse_number_literal();
        }
        return neg ? -r : r;
    }

    Rational parse_number_literal() {
        skip_ws();
        if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos]))) {
            throw ParseError("expected number", pos);
        }
        std::string text = lex_number();
        try {
            return Rational::from_decimal_string(text);
        } catch (const std::exception& e) {
            throw ParseError(e.what(), pos);
        }
    }

    ScalarExpr parse_base() {
        skip_ws();
        if (pos >= src.size()) throw ParseError("unexpected end of input", pos);
        char c = src[pos];
        if (c == '-') {
            ++pos;
            return -parse_factor();
        }
        if (c == '(') {
            ++pos;
            ScalarExpr e = parse_expr_level();
            if (!consume(')')) throw ParseError("expected ')'", pos);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return ScalarExpr::constant(parse_number_literal());
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t sym_pos = pos;
            std::string name = lex_symbol();
            static const std::map<std::string, FuncKind> kFuncs = {
                {"exp", FuncKind::Exp},   {"log", FuncKind::Log},  {"sin", FuncKind::Sin},
                {"cos", FuncKind::Cos},   {"sinh", FuncKind::Sinh}, {"cosh", FuncKind::Cosh},
                {"sqrt", FuncKind::Sqrt},
            };
            auto fit = kFuncs.find(name);
            if (fit != kFuncs.end() && peek() == '(') {
                ++pos;
                ScalarExpr arg = parse_expr_level();
                if (!consume(')')) throw ParseError("expected ')' after function argument", pos);
                return apply(fit->second, arg);
            }
            for (const auto& cname : coords) {
                if (cname == name) return ScalarExpr::coordinate(name);
            }
            for (const auto& pname : params) {
                if (pname == name) return ScalarExpr::parameter(name);
            }
            throw UnknownSymbolError(name, sym_pos);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
};

} // namespace

ScalarExpr parse_expr(std::string_view text, const std::vector<std::string>& coords,
                      const std::vector<std::string>& params) {
    Parser p{text, 0, coords, params};
    ScalarExpr e = p.parse_expr_level();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
    return e;
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

struct DiffContext {
    const std::string& coord;
    std::unordered_map<const Node*, NodePtr> memo;

    NodePtr diff(const NodePtr& n) {
        auto it = memo.find(n.get());
        if (it != memo.end()) return it->second;
        NodePtr result = diff_uncached(n);
        memo.emplace(n.get(), result);
        return result;
    }

    NodePtr diff_uncached(const NodePtr& n) {
        switch (n->kind) {
            case Kind::Constant:
                return zero_node();
            case Kind::Symbol:
                return (n->sym_kind == SymbolKind::Coordinate && n->name == coord) ? one_node()
                                                                                   : zero_node();
            case Kind::Sum: {
                std::vector<NodePtr> parts;
                parts.reserve(n->args.size());
                for (const auto& a : n->args) parts.push_back(diff(a));
                return make_sum(std::move(parts));
            }
            case Kind::Product: {
                std::vector<NodePtr> terms;
                for (size_t i = 0; i < n->args.size(); ++i) {
                    NodePtr di = diff(n->args[i]);
                    if (is_const(di, Rational(0))) continue;
                    std::vector<NodePtr> factors;
                    factors.reserve(n->args.size());
                    for (size_t j = 0; j < n->args.size(); ++j) {
                        factors.push_back(j == i ? di : n->args[j]);
                    }
                    terms.push_back(make_product(std::move(factors)));
                }
                return make_sum(std::move(terms));
            }
            case Kind::Power: {
                // d(u^r) = r * u^(r-1) * u'
                NodePtr du = diff(n->args[0]);
                if (is_const(du, Rational(0))) return zero_node();
                return make_product({make_const(n->value),
                                     make_power(n->args[0], n->value - Rational(1)), du});
            }
            case Kind::Function: {
                NodePtr du = diff(n->args[0]);
                if (is_const(du, Rational(0))) return zero_node();
                const NodePtr& u = n->args[0];
                switch (n->func) {
                    case FuncKind::Exp:
                        return make_product({make_function(FuncKind::Exp, u), du});
                    case FuncKind::Log:
                        return make_product({du, make_power(u, Rational(-1))});
                    case FuncKind::Sin:
                        return make_product({make_function(FuncKind::Cos, u), du});
                    case FuncKind::Cos:
                        return make_product({make_const(Rational(-1)),
                                             make_function(FuncKind::Sin, u), du});
                    case FuncKind::Sinh:
                        return make_product({make_function(FuncKind::Cosh, u), du});
                    case FuncKind::Cosh:
                        return make_product({make_function(FuncKind::Sinh, u), du});
                    case FuncKind::Sqrt:
                        return make_product({make_const(Rational(1, 2)), du,
                                             make_power(make_function(FuncKind::Sqrt, u),
                                                        Rational(-1))});
                }
                break;
            }
        }
        throw std::logic_error("differentiate: unhandled node kind");
    }
};

} // namespace

ScalarExpr differentiate(const ScalarExpr& e, const std::string& coord) {
    DiffContext ctx{coord, {}};
    return ScalarExpr(ctx.diff(e.node()));
}

// ---------------------------------------------------------------------------
// Evaluation

double Evaluator::operator()(const ScalarExpr& e) { return eval(e.node().get()); }

double Evaluator::eval(const Node* n) {
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    double v = 0;
    switch (n->kind) {
        case Kind::Constant:
            v = n->value.to_double();
            break;
        case Kind::Symbol: {
            auto e = env_.find(n->name);
            if (e == env_.end()) {
                if (n->sym_kind == SymbolKind::Parameter) throw UnboundParameterError(n->name);
                throw std::logic_error("coordinate '" + n->name + "' has no value");
            }
            v = e->second;
            break;
        }
        case Kind::Sum:
            for (const auto& a : n->args) v += eval(a.get());
            break;
        case Kind::Product:
            v = 1;
            for (const auto& a : n->args) v *= eval(a.get());
            break;
        case Kind::Power: {
            double b = eval(n->args[0].get());
            const Rational& e = n->value;
            if (e.is_integer()) {
                if (b == 0 && e < Rational(0)) {
                    throw EvalDomainError("zero raised to a negative power");
                }
                v = std::pow(b, static_cast<double>(e.num()));
            } else {
                if (b < 0) throw EvalDomainError("negative base with fractional exponent");
                if (b == 0 && e < Rational(0)) {
                    throw EvalDomainError("zero raised to a negative power");
                }
                v = std::pow(b, e.to_double());
            }
            break;
        }
        case Kind::Function: {
            double a = eval(n->args[0].get());
            switch (n->func) {
                case FuncKind::Exp: v = std::exp(a); break;
                case FuncKind::Log:
                    if (a <= 0) throw EvalDomainError("log of a non-positive value");
                    v = std::log(a);
                    break;
                case FuncKind::Sin: v = std::sin(a); break;
                case FuncKind::Cos: v = std::cos(a); break;
                case FuncKind::Sinh: v = std::sinh(a); break;
                case FuncKind::Cosh: v = std::cosh(a); break;
                case FuncKind::Sqrt:
                    if (a < 0) throw EvalDomainError("sqrt of a negative value");
                    v = std::sqrt(a);
                    break;
            }
            break;
        }
    }
    if (!std::isfinite(v)) throw EvalDomainError("non-finite result");
    memo_.emplace(n, v);
    return v;
}

double evaluate(const ScalarExpr& e, const ValueEnv& env) {
    Evaluator ev(env);
    return ev(e);
}

} // namespace paracheck
