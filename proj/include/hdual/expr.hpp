#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "errors.hpp"
#include "functions.hpp"
#include "jet.hpp"

namespace hdual {

enum class unary_fn { neg, exp, log, sin, cos, sqrt, abs };
enum class binary_fn { add, sub, mul, div, pow };

struct expr_node;
using expr_ptr = std::shared_ptr<const expr_node>;

/// Immutable AST for single-variable expressions; evaluable over any
/// supported ring (real, complex, jets of either).
struct expr_node {
    struct literal {
        double value;
    };
    struct variable_ref {};
    struct unary {
        unary_fn op;
        expr_ptr child;
    };
    struct binary {
        binary_fn op;
        expr_ptr lhs;
        expr_ptr rhs;
    };

    std::variant<literal, variable_ref, unary, binary> v;
};

inline bool depends_on_x(const expr_node& n) {
    if (std::holds_alternative<expr_node::variable_ref>(n.v)) return true;
    if (const auto* u = std::get_if<expr_node::unary>(&n.v)) return depends_on_x(*u->child);
    if (const auto* b = std::get_if<expr_node::binary>(&n.v))
        return depends_on_x(*b->lhs) || depends_on_x(*b->rhs);
    return false;
}

inline bool structurally_equal(const expr_node& a, const expr_node& b) {
    if (a.v.index() != b.v.index()) return false;
    if (const auto* la = std::get_if<expr_node::literal>(&a.v))
        return la->value == std::get<expr_node::literal>(b.v).value;
    if (std::holds_alternative<expr_node::variable_ref>(a.v)) return true;
    if (const auto* ua = std::get_if<expr_node::unary>(&a.v)) {
        const auto& ub = std::get<expr_node::unary>(b.v);
        return ua->op == ub.op && structurally_equal(*ua->child, *ub.child);
    }
    const auto& ba = std::get<expr_node::binary>(a.v);
    const auto& bb = std::get<expr_node::binary>(b.v);
    return ba.op == bb.op && structurally_equal(*ba.lhs, *bb.lhs) &&
           structurally_equal(*ba.rhs, *bb.rhs);
}

namespace detail {

inline expr_ptr make_literal(double v) {
    return std::make_shared<const expr_node>(expr_node{expr_node::literal{v}});
}
inline expr_ptr make_var() {
    return std::make_shared<const expr_node>(expr_node{expr_node::variable_ref{}});
}
inline expr_ptr make_unary(unary_fn op, expr_ptr c) {
    return std::make_shared<const expr_node>(expr_node{expr_node::unary{op, std::move(c)}});
}
inline expr_ptr make_binary(binary_fn op, expr_ptr l, expr_ptr r) {
    return std::make_shared<const expr_node>(
        expr_node{expr_node::binary{op, std::move(l), std::move(r)}});
}

// Recursive descent over
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := '-' unary | power
//   power := base ('^' unary)?
//   base  := number | 'x' | ident '(' expr ')' | '(' expr ')'
// '^' binds tighter than unary minus, so -x^2 parses as -(x^2); exponents
// must be constant subexpressions.
class parser {
public:
    explicit parser(std::string_view s) : s_(s) {}

    expr_ptr run() {
        auto e = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) fail("expected end of input");
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& expected) const {
        throw syntax_error(expected, pos_);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    expr_ptr parse_expr() {
        auto lhs = parse_term();
        for (;;) {
            if (accept('+'))
                lhs = make_binary(binary_fn::add, std::move(lhs), parse_term());
            else if (accept('-'))
                lhs = make_binary(binary_fn::sub, std::move(lhs), parse_term());
            else
                return lhs;
        }
    }

    expr_ptr parse_term() {
        auto lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = make_binary(binary_fn::mul, std::move(lhs), parse_unary());
            else if (accept('/'))
                lhs = make_binary(binary_fn::div, std::move(lhs), parse_unary());
            else
                return lhs;
        }
    }

    expr_ptr parse_unary() {
        if (accept('-')) return make_unary(unary_fn::neg, parse_unary());
        return parse_power();
    }

    expr_ptr parse_power() {
        auto base = parse_base();
        skip_ws();
        const std::size_t caret = pos_;
        if (!accept('^')) return base;
        auto exponent = parse_unary(); // right associative
        if (depends_on_x(*exponent))
            throw syntax_error("exponent must be a constant expression", caret);
        return make_binary(binary_fn::pow, std::move(base), std::move(exponent));
    }

    expr_ptr parse_base() {
        skip_ws();
        if (pos_ >= s_.size()) fail("expected a value");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
        fail("expected a number, 'x', a function call or '('");
    }

    expr_ptr parse_number() {
        double value = 0.0;
        const char* begin = s_.data() + pos_;
        const char* end = s_.data() + s_.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr == begin) fail("expected a number");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return make_literal(value);
    }

    expr_ptr parse_ident() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        const std::string name(s_.substr(start, pos_ - start));
        if (name == "x") return make_var();
        unary_fn op;
        if (name == "exp")
            op = unary_fn::exp;
        else if (name == "ln")
            op = unary_fn::log;
        else if (name == "sin")
            op = unary_fn::sin;
        else if (name == "cos")
            op = unary_fn::cos;
        else if (name == "sqrt")
            op = unary_fn::sqrt;
        else if (name == "abs")
            op = unary_fn::abs;
        else
            throw unknown_identifier(name, start);
        expect('(');
        auto arg = parse_expr();
        expect(')');
        return make_unary(op, std::move(arg));
    }
};

template <class T>
struct is_jet_type : std::false_type {};
template <jet_scalar T>
struct is_jet_type<jet<T>> : std::true_type {};

template <class R>
R apply_log(const R& v) {
    if constexpr (is_jet_type<R>::value) {
        return log(v);
    } else if constexpr (is_complex_scalar_v<R>) {
        if (v == R{}) throw eval_domain_error("ln: zero argument");
        return std::log(v);
    } else {
        if (!(v > 0)) throw eval_domain_error("ln: non-positive real argument");
        return std::log(v);
    }
}

template <class R>
R apply_sqrt(const R& v) {
    if constexpr (is_jet_type<R>::value) {
        return sqrt(v);
    } else if constexpr (is_complex_scalar_v<R>) {
        return std::sqrt(v);
    } else {
        if (v < 0) throw negative_base_fractional_power("sqrt: negative real argument");
        return std::sqrt(v);
    }
}

template <class R>
R apply_abs(const R& v) {
    if constexpr (is_jet_type<R>::value) {
        return abs(v);
    } else if constexpr (is_complex_scalar_v<R>) {
        return R(std::abs(v));
    } else {
        return std::abs(v);
    }
}

// Same squaring ladder as the jet integer power, so order-zero jets and
// scalars agree bitwise.
inline double scalar_ipow(double base, long n) {
    double r = 1.0;
    while (n > 0) {
        if (n & 1) r = r * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return r;
}

template <class R>
R apply_pow(const R& base, double p) {
    if constexpr (is_jet_type<R>::value) {
        return pow(base, p);
    } else if constexpr (is_complex_scalar_v<R>) {
        return std::pow(base, R(p));
    } else {
        if (p == std::nearbyint(p) && std::abs(p) <= 1e9) {
            const long n = static_cast<long>(std::nearbyint(p));
            return n >= 0 ? scalar_ipow(base, n) : R(1) / scalar_ipow(base, -n);
        }
        if (base < 0)
            throw negative_base_fractional_power("pow: negative real base with fractional exponent");
        return std::pow(base, p);
    }
}

// Division mirrors the jet route (multiply by the reciprocal) for real
// scalars, again for bitwise coherence with order-zero jets.
template <class R>
R apply_div(const R& l, const R& r) {
    if constexpr (std::is_floating_point_v<R>)
        return l * (R(1) / r);
    else
        return l / r;
}

template <class R>
R eval_node(const expr_node& n, const R& x) {
    if (const auto* l = std::get_if<expr_node::literal>(&n.v)) {
        if constexpr (is_jet_type<R>::value)
            return R::constant(typename R::scalar_type(l->value));
        else
            return R(l->value);
    }
    if (std::holds_alternative<expr_node::variable_ref>(n.v)) return x;
    if (const auto* u = std::get_if<expr_node::unary>(&n.v)) {
        const R v = eval_node(*u->child, x);
        using std::cos;
        using std::exp;
        using std::sin;
        switch (u->op) {
            case unary_fn::neg: return -v;
            case unary_fn::exp: return exp(v);
            case unary_fn::log: return apply_log(v);
            case unary_fn::sin: return sin(v);
            case unary_fn::cos: return cos(v);
            case unary_fn::sqrt: return apply_sqrt(v);
            case unary_fn::abs: return apply_abs(v);
        }
    }
    const auto& b = std::get<expr_node::binary>(n.v);
    if (b.op == binary_fn::pow) {
        const double p = eval_node<double>(*b.rhs, 0.0); // exponent is constant
        return apply_pow(eval_node(*b.lhs, x), p);
    }
    const R l = eval_node(*b.lhs, x);
    const R r = eval_node(*b.rhs, x);
    switch (b.op) {
        case binary_fn::add: return l + r;
        case binary_fn::sub: return l - r;
        case binary_fn::mul: return l * r;
        default: return apply_div(l, r);
    }
}

inline void print_node(const expr_node& n, std::string& out) {
    if (const auto* l = std::get_if<expr_node::literal>(&n.v)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", l->value);
        out += buf;
        return;
    }
    if (std::holds_alternative<expr_node::variable_ref>(n.v)) {
        out += 'x';
        return;
    }
    if (const auto* u = std::get_if<expr_node::unary>(&n.v)) {
        static constexpr const char* names[] = {"-", "exp", "ln", "sin", "cos", "sqrt", "abs"};
        if (u->op == unary_fn::neg) {
            out += "(-";
            print_node(*u->child, out);
            out += ')';
        } else {
            out += names[static_cast<int>(u->op)];
            out += '(';
            print_node(*u->child, out);
            out += ')';
        }
        return;
    }
    const auto& b = std::get<expr_node::binary>(n.v);
    static constexpr char ops[] = {'+', '-', '*', '/', '^'};
    out += '(';
    print_node(*b.lhs, out);
    out += ops[static_cast<int>(b.op)];
    print_node(*b.rhs, out);
    out += ')';
}

} // namespace detail

class expr {
public:
    explicit expr(expr_ptr root) : root_(std::move(root)) {}

    const expr_node& node() const { return *root_; }

    friend bool operator==(const expr& a, const expr& b) {
        return structurally_equal(*a.root_, *b.root_);
    }

private:
    expr_ptr root_;
};

inline expr parse(std::string_view text) {
    return expr(detail::parser(text).run());
}

/// Fully parenthesized rendering; parse(to_string(e)) == e structurally.
inline std::string to_string(const expr& e) {
    std::string out;
    detail::print_node(e.node(), out);
    return out;
}

template <class R>
R eval(const expr& e, const R& x) {
    return detail::eval_node(e.node(), x);
}

} // namespace hdual
