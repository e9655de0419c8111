#ifndef SIP_INVARIANTS_HPP
#define SIP_INVARIANTS_HPP

// Translated parameter vectors and user-defined translation invariants.
//
// An invariant is written in a small expression language:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          (right associative)
//   primary := number | ident | func '(' expr ')' | '(' expr ')'
//
// Identifiers are m1..m9, M (the parameter mean), pi and e. Functions are
// sin cos tan sinh cosh tanh exp ln sqrt abs.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sip/error.hpp"

namespace sip {

/// Parameters m_1..m_n subject to simultaneous translation m_i -> m_i - t.
class ParamVector {
public:
    explicit ParamVector(std::vector<double> m) : m_(std::move(m)) {
        if (m_.empty()) throw RangeError("parameter vector needs at least one entry");
        for (double v : m_) {
            if (!std::isfinite(v)) throw RangeError("parameter entries must be finite");
        }
    }
    ParamVector(std::initializer_list<double> m) : ParamVector(std::vector<double>(m)) {}

    std::size_t size() const noexcept { return m_.size(); }
    double operator[](std::size_t i) const { return m_.at(i); }
    const std::vector<double>& values() const noexcept { return m_; }

    /// Arithmetic mean M; drops by exactly t under translate(t).
    double mean() const {
        return std::accumulate(m_.begin(), m_.end(), 0.0) / double(m_.size());
    }

    ParamVector translate(double t) const {
        std::vector<double> out(m_);
        for (double& v : out) v -= t;
        return ParamVector(std::move(out));
    }

    bool operator==(const ParamVector&) const = default;

private:
    std::vector<double> m_;
};

inline ParamVector translate(const ParamVector& p, double t) { return p.translate(t); }

/// Maximum parameter index usable in expressions (m1..m9).
inline constexpr int kMaxParamIndex = 9;

namespace expr {

enum class Func { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Ln, Sqrt, Abs };
enum class BinOp { Add, Sub, Mul, Div, Pow };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Number { double value; };
/// index 1..9 for m_i, 0 for M.
struct Param { int index; };
struct Constant { bool is_pi; };
struct Negate { NodePtr arg; };
struct Call { Func fn; NodePtr arg; };
struct Binary { BinOp op; NodePtr lhs, rhs; };

struct Node {
    std::variant<Number, Param, Constant, Negate, Call, Binary> v;
};

inline std::string_view func_name(Func f) {
    static constexpr std::string_view names[] = {"sin", "cos", "tan", "sinh", "cosh",
                                                 "tanh", "exp", "ln", "sqrt", "abs"};
    return names[static_cast<int>(f)];
}

inline std::optional<Func> func_from_name(std::string_view s) {
    for (int i = 0; i <= static_cast<int>(Func::Abs); ++i) {
        if (func_name(static_cast<Func>(i)) == s) return static_cast<Func>(i);
    }
    return std::nullopt;
}

inline bool equal(const NodePtr& a, const NodePtr& b) {
    if (a == b) return true;
    if (!a || !b || a->v.index() != b->v.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b->v);
            if constexpr (std::is_same_v<T, Number>) return x.value == y.value;
            else if constexpr (std::is_same_v<T, Param>) return x.index == y.index;
            else if constexpr (std::is_same_v<T, Constant>) return x.is_pi == y.is_pi;
            else if constexpr (std::is_same_v<T, Negate>) return equal(x.arg, y.arg);
            else if constexpr (std::is_same_v<T, Call>) return x.fn == y.fn && equal(x.arg, y.arg);
            else return x.op == y.op && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
        },
        a->v);
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
        NodePtr n = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError("unexpected character '" + std::string(1, src_[pos_]) + "'", pos_);
        return n;
    }

private:
    static NodePtr make(auto&& alt) { return std::make_shared<const Node>(Node{std::forward<decltype(alt)>(alt)}); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (accept('+')) lhs = make(Binary{BinOp::Add, lhs, parse_term()});
            else if (accept('-')) lhs = make(Binary{BinOp::Sub, lhs, parse_term()});
            else return lhs;
        }
    }
    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (accept('*')) lhs = make(Binary{BinOp::Mul, lhs, parse_unary()});
            else if (accept('/')) lhs = make(Binary{BinOp::Div, lhs, parse_unary()});
            else return lhs;
        }
    }
    NodePtr parse_unary() {
        if (accept('-')) return make(Negate{parse_unary()});
        return parse_power();
    }
    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (accept('^')) return make(Binary{BinOp::Pow, base, parse_unary()});
        return base;
    }
    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of expression", pos_);
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
        if (accept('(')) {
            NodePtr inner = parse_expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }
    NodePtr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
            return n;
        };
        std::size_t n = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) throw ParseError("malformed number", start);
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                pos_ = look;
                digits();
            }
        }
        const std::string text(src_.substr(start, pos_ - start));
        return make(Number{std::strtod(text.c_str(), nullptr)});
    }
    NodePtr parse_ident() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == '(') {
            const auto fn = func_from_name(name);
            if (!fn) throw ParseError("unknown function '" + std::string(name) + "'", start);
            ++pos_;
            NodePtr arg = parse_expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return make(Call{*fn, arg});
        }
        if (name == "M") return make(Param{0});
        if (name == "pi") return make(Constant{true});
        if (name == "e") return make(Constant{false});
        if (name.size() == 2 && name[0] == 'm' && name[1] >= '1' && name[1] <= '9') {
            return make(Param{name[1] - '0'});
        }
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

inline int precedence(const Node& n) {
    if (const auto* b = std::get_if<Binary>(&n.v)) {
        switch (b->op) {
            case BinOp::Add: case BinOp::Sub: return 1;
            case BinOp::Mul: case BinOp::Div: return 2;
            case BinOp::Pow: return 4;
        }
    }
    if (std::holds_alternative<Negate>(n.v)) return 3;
    return 5;
}

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string print(const NodePtr& n) {
    auto wrap = [](const NodePtr& child, bool paren) {
        return paren ? "(" + print(child) + ")" : print(child);
    };
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Number>) return format_number(x.value);
            else if constexpr (std::is_same_v<T, Param>) return x.index == 0 ? "M" : "m" + std::to_string(x.index);
            else if constexpr (std::is_same_v<T, Constant>) return x.is_pi ? "pi" : "e";
            else if constexpr (std::is_same_v<T, Negate>) return "-" + wrap(x.arg, precedence(*x.arg) < 3);
            else if constexpr (std::is_same_v<T, Call>) return std::string(func_name(x.fn)) + "(" + print(x.arg) + ")";
            else {
                const int p = precedence(*n);
                const int pl = precedence(*x.lhs), pr = precedence(*x.rhs);
                std::string op;
                bool lp = false, rp = false;
                switch (x.op) {
                    case BinOp::Add: op = " + "; lp = pl < 1; rp = pr <= 1; break;
                    case BinOp::Sub: op = " - "; lp = pl < 1; rp = pr <= 1; break;
                    case BinOp::Mul: op = "*"; lp = pl < 2; rp = pr <= 2; break;
                    case BinOp::Div: op = "/"; lp = pl < 2; rp = pr <= 2; break;
                    // the exponent may be a negation (grammar allows '^' unary)
                    case BinOp::Pow: op = "^"; lp = pl <= p; rp = pr < 3; break;
                }
                return wrap(x.lhs, lp) + op + wrap(x.rhs, rp);
            }
        },
        n->v);
}

/// Operator nesting depth: leaves count 0 and a chain of the same associative
/// operator (a + b + c, a * b * c) counts as one level.
inline int depth(const NodePtr& n, std::optional<BinOp> parent = std::nullopt) {
    return std::visit(
        [&](const auto& x) -> int {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Negate>) return 1 + depth(x.arg);
            else if constexpr (std::is_same_v<T, Call>) return 1 + depth(x.arg);
            else if constexpr (std::is_same_v<T, Binary>) {
                const bool chain = parent && *parent == x.op && (x.op == BinOp::Add || x.op == BinOp::Mul);
                const int own = chain ? 0 : 1;
                return own + std::max(depth(x.lhs, x.op), depth(x.rhs, x.op));
            } else return 0;
        },
        n->v);
}

inline void collect_params(const NodePtr& n, std::vector<int>& out) {
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Param>) out.push_back(x.index);
            else if constexpr (std::is_same_v<T, Negate> || std::is_same_v<T, Call>) collect_params(x.arg, out);
            else if constexpr (std::is_same_v<T, Binary>) {
                collect_params(x.lhs, out);
                collect_params(x.rhs, out);
            }
        },
        n->v);
}

inline double evaluate(const NodePtr& n, const ParamVector& p) {
    return std::visit(
        [&](const auto& x) -> double {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Number>) return x.value;
            else if constexpr (std::is_same_v<T, Param>) {
                if (x.index == 0) return p.mean();
                if (std::size_t(x.index) > p.size()) {
                    throw RangeError("expression references m" + std::to_string(x.index) + " but n = " +
                                     std::to_string(p.size()));
                }
                return p[std::size_t(x.index - 1)];
            } else if constexpr (std::is_same_v<T, Constant>) return x.is_pi ? std::numbers::pi : std::numbers::e;
            else if constexpr (std::is_same_v<T, Negate>) return -evaluate(x.arg, p);
            else if constexpr (std::is_same_v<T, Call>) {
                const double a = evaluate(x.arg, p);
                switch (x.fn) {
                    case Func::Sin: return std::sin(a);
                    case Func::Cos: return std::cos(a);
                    case Func::Tan: return std::tan(a);
                    case Func::Sinh: return std::sinh(a);
                    case Func::Cosh: return std::cosh(a);
                    case Func::Tanh: return std::tanh(a);
                    case Func::Exp: return std::exp(a);
                    case Func::Ln:
                        if (!(a > 0.0)) throw DomainError("ln of non-positive value");
                        return std::log(a);
                    case Func::Sqrt:
                        if (a < 0.0) throw DomainError("sqrt of negative value");
                        return std::sqrt(a);
                    case Func::Abs: return std::abs(a);
                }
                return 0.0;
            } else {
                const double l = evaluate(x.lhs, p);
                const double r = evaluate(x.rhs, p);
                switch (x.op) {
                    case BinOp::Add: return l + r;
                    case BinOp::Sub: return l - r;
                    case BinOp::Mul: return l * r;
                    case BinOp::Div:
                        if (r == 0.0) throw DomainError("division by zero");
                        return l / r;
                    case BinOp::Pow: {
                        const double v = std::pow(l, r);
                        if (std::isnan(v)) throw DomainError("power of negative base to non-integer exponent");
                        return v;
                    }
                }
                return 0.0;
            }
        },
        n->v);
}

}  // namespace expr

/// A parsed invariant I(m_1..m_n). Immutable; `verified()` is set only by check_invariance.
class InvariantExpr {
public:
    const std::string& source() const noexcept { return source_; }
    const expr::NodePtr& ast() const noexcept { return ast_; }
    bool verified() const noexcept { return verified_; }

    /// Largest m_i index referenced (0 when only M or constants appear).
    int max_index() const noexcept { return max_index_; }
    bool uses_mean() const noexcept { return uses_mean_; }
    int depth() const { return expr::depth(ast_); }
    std::string print() const { return expr::print(ast_); }

    double operator()(const ParamVector& p) const { return expr::evaluate(ast_, p); }

    bool operator==(const InvariantExpr& o) const { return expr::equal(ast_, o.ast_); }

    friend InvariantExpr parse_invariant(std::string_view source);
    friend struct InvarianceCheck check_invariance(const InvariantExpr&, std::size_t, std::size_t, double,
                                                    std::uint64_t);

private:
    std::string source_;
    expr::NodePtr ast_;
    int max_index_ = 0;
    bool uses_mean_ = false;
    bool verified_ = false;
};

inline InvariantExpr parse_invariant(std::string_view source) {
    InvariantExpr e;
    e.source_ = std::string(source);
    e.ast_ = expr::Parser(source).parse();
    std::vector<int> idx;
    expr::collect_params(e.ast_, idx);
    for (int i : idx) {
        if (i == 0) e.uses_mean_ = true;
        e.max_index_ = std::max(e.max_index_, i);
    }
    return e;
}

inline double eval_invariant(const InvariantExpr& e, const ParamVector& p) { return e(p); }

/// First sample at which |I(m - t) - I(m)| exceeded the tolerance.
struct Violation {
    std::string expr;
    std::vector<double> m;
    int shift = 0;
    double delta = 0.0;
};

struct InvarianceCheck {
    InvariantExpr expr;  ///< marked verified when no violation was found
    std::optional<Violation> violation;
    bool verified() const noexcept { return !violation.has_value(); }
};

inline constexpr double kDefaultInvarianceTol = 1e-9;

/// Sample `trials` random parameter vectors in [-5, 5]^n and shifts t in {1, 2, 3}.
/// Domain errors are retried up to 10 times per sample before propagating.
inline InvarianceCheck check_invariance(const InvariantExpr& e, std::size_t n, std::size_t trials = 64,
                                        double tol = kDefaultInvarianceTol, std::uint64_t seed = 0x5eed) {
    if (trials < 16) throw RangeError("check_invariance needs at least 16 trials");
    if (n == 0 || n > std::size_t(kMaxParamIndex)) throw RangeError("parameter count must be in 1..9");
    if (std::size_t(e.max_index()) > n) {
        throw RangeError("expression references m" + std::to_string(e.max_index()) + " but n = " +
                         std::to_string(n));
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-5.0, 5.0);
    InvarianceCheck out{e, std::nullopt};
    for (std::size_t s = 0; s < trials; ++s) {
        const int shift = 1 + int(s % 3);
        for (int attempt = 0;; ++attempt) {
            std::vector<double> m(n);
            for (double& v : m) v = uni(rng);
            const ParamVector p(m);
            try {
                const double base = e(p);
                const double moved = e(p.translate(shift));
                const double delta = std::abs(moved - base);
                if (!(delta <= tol * (1.0 + std::abs(base)))) {
                    out.violation = Violation{e.source(), m, shift, delta};
                    return out;
                }
                break;
            } catch (const DomainError& err) {
                if (attempt >= 9) {
                    throw DomainError(std::string("invariance sampling kept failing: ") + err.what());
                }
            }
        }
    }
    out.expr.verified_ = true;
    return out;
}

/// Parse `source` and run check_invariance over n parameters; throws ConfigError on a violation.
inline InvariantExpr require_invariant(std::string_view source, std::size_t n, double tol = kDefaultInvarianceTol) {
    const InvariantExpr e = parse_invariant(source);
    InvarianceCheck res = check_invariance(e, n, 64, tol);
    if (!res.verified()) {
        const Violation& v = *res.violation;
        throw ConfigError("'" + v.expr + "' is not translation invariant (shift " + std::to_string(v.shift) +
                          ", |delta| = " + expr::format_number(v.delta) + ")");
    }
    return res.expr;
}

}  // namespace sip

#endif  // SIP_INVARIANTS_HPP
