#ifndef GHWSM_EXPR_HPP
#define GHWSM_EXPR_HPP

// Small arithmetic expression language for the endpoint functions of an IVF.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' uint)?
//   atom   := number | 'x' uint | '(' expr ')' | '-' atom
//           | 'abs' '(' expr ')' | ('min'|'max') '(' expr (',' expr)+ ')'
//
// Variables are 1-based (x1 .. xn). Numbers are decimal literals with an
// optional fraction and exponent. Whitespace is ignored between tokens.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace ghwsm::expr {

enum class Op { Const, Var, Neg, Abs, Add, Sub, Mul, Div, Pow, Min, Max };

// Value-semantic AST node. Var uses `index` (1-based); Pow keeps its
// exponent as a Const second child holding a nonnegative integer.
struct Node {
    Op op = Op::Const;
    double value = 0.0;
    std::size_t index = 0;
    std::vector<Node> args;

    friend bool operator==(const Node&, const Node&) = default;

    static Node constant(double v) { return {Op::Const, v, 0, {}}; }
    static Node variable(std::size_t i) { return {Op::Var, 0.0, i, {}}; }
    static Node unary(Op op, Node a) { return {op, 0.0, 0, {std::move(a)}}; }
    static Node binary(Op op, Node a, Node b) { return {op, 0.0, 0, {std::move(a), std::move(b)}}; }
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class EvalError : public std::runtime_error {
public:
    enum class Kind { DimensionMismatch, DivisionByZero };
    EvalError(Kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

namespace detail {

inline double ipow(double base, unsigned long long n) {
    double result = 1.0;
    while (n) {
        if (n & 1ULL) result *= base;
        base *= base;
        n >>= 1ULL;
    }
    return result;
}

inline double eval_node(const Node& n, std::span<const double> x) {
    switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return x[n.index - 1];
    case Op::Neg: return -eval_node(n.args[0], x);
    case Op::Abs: return std::abs(eval_node(n.args[0], x));
    case Op::Add: return eval_node(n.args[0], x) + eval_node(n.args[1], x);
    case Op::Sub: return eval_node(n.args[0], x) - eval_node(n.args[1], x);
    case Op::Mul: return eval_node(n.args[0], x) * eval_node(n.args[1], x);
    case Op::Div: {
        const double num = eval_node(n.args[0], x);
        const double den = eval_node(n.args[1], x);
        if (den == 0.0) throw EvalError(EvalError::Kind::DivisionByZero, "division by zero");
        return num / den;
    }
    case Op::Pow:
        return ipow(eval_node(n.args[0], x), static_cast<unsigned long long>(n.args[1].value));
    case Op::Min:
    case Op::Max: {
        double r = eval_node(n.args[0], x);
        for (std::size_t i = 1; i < n.args.size(); ++i) {
            const double v = eval_node(n.args[i], x);
            r = n.op == Op::Min ? std::min(r, v) : std::max(r, v);
        }
        return r;
    }
    }
    return 0.0;
}

inline std::string format_number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

inline void print_node(const Node& n, std::string& out) {
    auto bin = [&](const char* sym) {
        out += '(';
        print_node(n.args[0], out);
        out += sym;
        print_node(n.args[1], out);
        out += ')';
    };
    switch (n.op) {
    case Op::Const: out += format_number(n.value); break;
    case Op::Var: out += 'x' + std::to_string(n.index); break;
    case Op::Neg:
        out += "-(";
        print_node(n.args[0], out);
        out += ')';
        break;
    case Op::Abs:
        out += "abs(";
        print_node(n.args[0], out);
        out += ')';
        break;
    case Op::Add: bin(" + "); break;
    case Op::Sub: bin(" - "); break;
    case Op::Mul: bin(" * "); break;
    case Op::Div: bin(" / "); break;
    case Op::Pow:
        out += '(';
        print_node(n.args[0], out);
        out += ")^" + format_number(n.args[1].value);
        break;
    case Op::Min:
    case Op::Max:
        out += n.op == Op::Min ? "min(" : "max(";
        for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) out += ", ";
            print_node(n.args[i], out);
        }
        out += ')';
        break;
    }
}

class Parser {
public:
    Parser(std::string_view src, std::size_t dimension) : src_(src), dim_(dimension) {}

    Node parse() {
        Node n = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
        return n;
    }

private:
    static constexpr int max_depth = 200;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    void expect(char c) {
        if (!peek(c)) {
            if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' but reached end of input");
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }

    struct DepthGuard {
        explicit DepthGuard(Parser& p) : p_(p) {
            if (++p_.depth_ > max_depth) p_.fail("expression nested too deeply");
        }
        ~DepthGuard() { --p_.depth_; }
        Parser& p_;
    };

    Node expr() {
        DepthGuard g(*this);
        Node lhs = term();
        for (;;) {
            if (peek('+')) {
                ++pos_;
                lhs = Node::binary(Op::Add, std::move(lhs), term());
            } else if (peek('-')) {
                ++pos_;
                lhs = Node::binary(Op::Sub, std::move(lhs), term());
            } else {
                return lhs;
            }
        }
    }

    Node term() {
        Node lhs = factor();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                lhs = Node::binary(Op::Mul, std::move(lhs), factor());
            } else if (peek('/')) {
                ++pos_;
                lhs = Node::binary(Op::Div, std::move(lhs), factor());
            } else {
                return lhs;
            }
        }
    }

    Node factor() {
        Node base = atom();
        if (!peek('^')) return base;
        ++pos_;
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ < src_.size() && src_[pos_] == '-') fail("negative exponent");
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            fail("expected a nonnegative integer exponent");
        }
        const double e = number();
        if (e != std::floor(e) || e > 1e6) {
            pos_ = at;
            fail("exponent must be a nonnegative integer");
        }
        return Node::binary(Op::Pow, std::move(base), Node::constant(e));
    }

    double number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            const std::size_t s = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            return pos_ > s;
        };
        digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (!digits()) fail("malformed exponent in number");
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
        if (ec != std::errc() || ptr != src_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        return v;
    }

    bool keyword(std::string_view kw) {
        if (src_.substr(pos_, kw.size()) != kw) return false;
        const std::size_t after = pos_ + kw.size();
        if (after < src_.size() && std::isalnum(static_cast<unsigned char>(src_[after]))) return false;
        pos_ = after;
        return true;
    }

    Node atom() {
        DepthGuard g(*this);
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return Node::constant(number());
        if (c == '(') {
            ++pos_;
            Node inner = expr();
            expect(')');
            return inner;
        }
        if (c == '-') {
            ++pos_;
            return Node::unary(Op::Neg, atom());
        }
        if (c == 'x') {
            const std::size_t at = pos_;
            ++pos_;
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                fail("expected variable index after 'x'");
            }
            std::size_t idx = 0;
            auto [ptr, ec] = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), idx);
            if (ec != std::errc()) fail("malformed variable index");
            pos_ = static_cast<std::size_t>(ptr - src_.data());
            if (idx == 0 || idx > dim_) {
                pos_ = at;
                fail("variable index x" + std::to_string(idx) + " outside 1.." + std::to_string(dim_));
            }
            return Node::variable(idx);
        }
        if (keyword("abs")) {
            expect('(');
            Node inner = expr();
            expect(')');
            return Node::unary(Op::Abs, std::move(inner));
        }
        const bool is_min = keyword("min");
        if (is_min || keyword("max")) {
            Node n{is_min ? Op::Min : Op::Max, 0.0, 0, {}};
            expect('(');
            n.args.push_back(expr());
            if (!peek(',')) fail(std::string(is_min ? "min" : "max") + " needs at least two arguments");
            while (peek(',')) {
                ++pos_;
                n.args.push_back(expr());
            }
            expect(')');
            return n;
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view src_;
    std::size_t dim_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

} // namespace detail

// Parsed expression bound to a declared dimension.
class ExprAst {
public:
    ExprAst(Node root, std::size_t dimension) : root_(std::move(root)), dim_(dimension) {}

    const Node& root() const { return root_; }
    std::size_t dimension() const { return dim_; }

    double eval(std::span<const double> point) const {
        if (point.size() != dim_) {
            throw EvalError(EvalError::Kind::DimensionMismatch,
                            "expected a point of dimension " + std::to_string(dim_) + ", got " +
                                std::to_string(point.size()));
        }
        return detail::eval_node(root_, point);
    }

    double operator()(std::span<const double> point) const { return eval(point); }

    // Fully parenthesized form that reparses to the same tree.
    std::string to_string() const {
        std::string out;
        detail::print_node(root_, out);
        return out;
    }

    friend bool operator==(const ExprAst&, const ExprAst&) = default;

private:
    Node root_;
    std::size_t dim_;
};

inline ExprAst parse(std::string_view source, std::size_t dimension) {
    if (dimension == 0) throw std::invalid_argument("parse: dimension must be positive");
    return ExprAst(detail::Parser(source, dimension).parse(), dimension);
}

} // namespace ghwsm::expr

#endif // GHWSM_EXPR_HPP
