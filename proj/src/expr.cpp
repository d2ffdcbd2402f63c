#include "cm/expr.hpp"

#include "cm/closed_form.hpp"

#include <cctype>
#include <functional>
#include <optional>

namespace cm {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

class Parser {
public:
    Parser(std::string_view text, std::size_t n) : s_(text), n_(n) {}

    NodePtr run()
    {
        for (std::size_t i = 0; i < s_.size(); ++i)
            if (static_cast<unsigned char>(s_[i]) > 127) throw SyntaxError("non-ASCII character", i);
        skip();
        if (pos_ >= s_.size()) throw SyntaxError("empty expression", pos_);
        NodePtr r = expr();
        skip();
        if (pos_ < s_.size()) throw SyntaxError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return r;
    }

private:
    std::string_view s_;
    std::size_t n_;
    std::size_t pos_ = 0;

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr()
    {
        NodePtr l = term();
        for (;;) {
            if (accept('+'))
                l = make_binary(Node::Add, l, term());
            else if (accept('-'))
                l = make_binary(Node::Sub, l, term());
            else
                return l;
        }
    }

    NodePtr term()
    {
        NodePtr l = factor();
        for (;;) {
            if (accept('*'))
                l = make_binary(Node::Mul, l, factor());
            else if (accept('/'))
                l = make_binary(Node::Div, l, factor());
            else
                return l;
        }
    }

    // unary minus binds looser than '^', so -p1^2 is -(p1^2)
    NodePtr factor()
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == '-') {
            ++pos_;
            return make_unary_minus(factor());
        }
        NodePtr b = base();
        if (!accept('^')) return b;
        skip();
        const std::size_t start = pos_;
        bool neg = false;
        if (pos_ < s_.size() && s_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        if (pos_ >= s_.size() || !is_digit(s_[pos_])) {
            if (pos_ >= s_.size()) throw SyntaxError("missing exponent", pos_);
            throw PowerNotInteger("exponent at byte " + std::to_string(start) + " is not an integer literal");
        }
        long e = 0;
        while (pos_ < s_.size() && is_digit(s_[pos_])) {
            e = e * 10 + (s_[pos_] - '0');
            if (e > 100000) throw PowerNotInteger("exponent at byte " + std::to_string(start) + " is too large");
            ++pos_;
        }
        if (pos_ < s_.size() && (s_[pos_] == '.' || is_alpha(s_[pos_])))
            throw PowerNotInteger("exponent at byte " + std::to_string(start) + " is not an integer literal");
        return make_power(b, neg ? -e : e);
    }

    NodePtr base()
    {
        skip();
        if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!accept(')')) throw SyntaxError("expected ')'", pos_);
            return e;
        }
        if (is_digit(c)) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '.') throw SyntaxError("decimal literals are not supported", pos_);
            if (pos_ < s_.size() && is_alpha(s_[pos_])) throw SyntaxError("missing operator", pos_);
            return make_literal(Rational(std::string(s_.substr(start, pos_ - start)), 10));
        }
        if (is_alpha(c)) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (is_alpha(s_[pos_]) || is_digit(s_[pos_]))) ++pos_;
            return symbol(s_.substr(start, pos_ - start));
        }
        throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
    }

    NodePtr symbol(std::string_view name)
    {
        auto unknown = [&]() {
            return UnknownSymbol("unknown symbol '" + std::string(name) + "' for N=" + std::to_string(n_));
        };
        if (name.size() < 2) throw unknown();
        const char k = name[0];
        std::string_view digits = name.substr(1);
        for (char d : digits)
            if (!is_digit(d)) throw unknown();
        if (digits.size() > 1 && digits[0] == '0') throw unknown();
        if (digits.size() > 6) throw unknown();
        const std::size_t idx = std::stoul(std::string(digits));
        switch (k) {
        case 'p':
        case 'q':
            if (idx > n_) throw unknown();
            return make_symbol(k, idx);
        case 'I':
        case 'J':
            if (idx < 1 || idx > 2 * n_ - 1) throw unknown();
            return make_symbol(k, idx);
        case 'x':
            if (idx != 0 || n_ != 3) throw unknown();
            return make_symbol('x', 0);
        default: throw unknown();
        }
    }
};

const char* op_text(Node::Kind k)
{
    switch (k) {
    case Node::Add: return " + ";
    case Node::Sub: return " - ";
    case Node::Mul: return " * ";
    case Node::Div: return " / ";
    default: return "";
    }
}

bool node_uses_x0(const Node& n)
{
    if (n.kind == Node::Sym) return n.symbol.kind == 'x';
    return (n.a && node_uses_x0(*n.a)) || (n.b && node_uses_x0(*n.b));
}

template <class T>
T from_rational(const Rational& r)
{
    if constexpr (std::is_same_v<T, double>)
        return r.get_d();
    else if constexpr (is_jet_v<T>)
        return T(from_rational<decltype(T::v)>(r));
    else
        return T(r);
}

template <class T>
class Evaluator {
public:
    Evaluator(const PhasePoint<T>& pt, std::function<T()> x0) : pt_(pt), x0_fn_(std::move(x0)) {}

    T eval(const Node& n)
    {
        switch (n.kind) {
        case Node::Literal: return from_rational<T>(n.value);
        case Node::Sym: return symbol(n.symbol);
        case Node::Neg: return T(-eval(*n.a));
        case Node::Add: return T(eval(*n.a) + eval(*n.b));
        case Node::Sub: return T(eval(*n.a) - eval(*n.b));
        case Node::Mul: return T(eval(*n.a) * eval(*n.b));
        case Node::Div: {
            T l = eval(*n.a);
            T r = eval(*n.b);
            if (is_zero(base_value(r))) throw DivisionByZero("division by zero: " + print(*n.b) + " = 0");
            return T(l / r);
        }
        case Node::Pow: {
            T b = eval(*n.a);
            if (n.exponent >= 0) return ipow(b, static_cast<unsigned>(n.exponent));
            if (is_zero(base_value(b))) throw DivisionByZero("division by zero: " + print(*n.a) + " = 0 under a negative power");
            return T(T(1) / ipow(b, static_cast<unsigned>(-n.exponent)));
        }
        }
        throw InvalidArgument("corrupt expression node");
    }

private:
    const PhasePoint<T>& pt_;
    std::function<T()> x0_fn_;
    std::optional<Generators<T>> g_;
    std::optional<T> x0_;

    const Generators<T>& gens()
    {
        if (!g_) g_ = generators(pt_, 2 * pt_.n() - 1);
        return *g_;
    }

    T symbol(const Symbol& s)
    {
        switch (s.kind) {
        case 'p': return s.index == 0 ? center_momentum(pt_) : pt_.p[s.index - 1];
        case 'q': return s.index == 0 ? center_position(pt_) : pt_.q[s.index - 1];
        case 'I': return gens().I[s.index];
        case 'J': return gens().J[s.index];
        case 'x':
            if (!x0_) x0_ = x0_fn_();
            return *x0_;
        }
        throw InvalidArgument("corrupt symbol");
    }
};

void check_n(const Observable& obs, std::size_t n)
{
    if (obs.n() != n)
        throw InvalidArgument("observable parsed for N=" + std::to_string(obs.n()) + " evaluated at an N=" +
                              std::to_string(n) + " point");
}

// Floating x0 without the exact consistency check.
template <class T>
T x0_float(const Matrix<T>& P, const PhasePoint<T>& pt)
{
    T d = q_diff(pt, 0, 1);
    return T(P(0, 1) + T(T(2) / T(d * T(d * d))));
}

}  // namespace

bool Observable::uses_x0() const { return node_uses_x0(*root_); }

Observable parse(std::string_view text, std::size_t n)
{
    if (n < 2) throw InvalidArgument("N must be at least 2");
    return Observable(Parser(text, n).run(), n);
}

std::string print(const Node& n)
{
    switch (n.kind) {
    case Node::Literal:
        if (n.value.get_den() == 1 && sgn(n.value) >= 0) return n.value.get_str();
        if (n.value.get_den() == 1) return "(-" + Rational(-n.value).get_str() + ")";
        // printed the way the parser reads it back: a quotient of integers
        if (sgn(n.value) < 0) return "((-" + Rational(-n.value).get_num().get_str() + ") / " + n.value.get_den().get_str() + ")";
        return "(" + n.value.get_num().get_str() + " / " + n.value.get_den().get_str() + ")";
    case Node::Sym: return std::string(1, n.symbol.kind) + std::to_string(n.symbol.index);
    case Node::Neg: return "(-" + print(*n.a) + ")";
    case Node::Pow: return "(" + print(*n.a) + "^" + std::to_string(n.exponent) + ")";
    default: return "(" + print(*n.a) + op_text(n.kind) + print(*n.b) + ")";
    }
}

std::string print(const Observable& obs) { return print(obs.root()); }

NodePtr make_literal(const Rational& v)
{
    auto n = std::make_shared<Node>();
    n->kind = Node::Literal;
    n->value = v;
    n->value.canonicalize();
    return n;
}

NodePtr make_symbol(char kind, std::size_t index)
{
    auto n = std::make_shared<Node>();
    n->kind = Node::Sym;
    n->symbol = Symbol{kind, index};
    return n;
}

NodePtr make_unary_minus(NodePtr a)
{
    auto n = std::make_shared<Node>();
    n->kind = Node::Neg;
    n->a = std::move(a);
    return n;
}

NodePtr make_binary(Node::Kind kind, NodePtr a, NodePtr b)
{
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodePtr make_power(NodePtr a, long exponent)
{
    auto n = std::make_shared<Node>();
    n->kind = Node::Pow;
    n->a = std::move(a);
    n->exponent = exponent;
    return n;
}

Rational eval(const Observable& obs, const PhasePoint<Rational>& pt)
{
    check_n(obs, pt.n());
    Evaluator<Rational> ev(pt, [&pt]() { return x0_from_oracle(pt); });
    return ev.eval(obs.root());
}

Jet<Rational> eval_jet(const Observable& obs, const PhasePoint<Rational>& pt)
{
    check_n(obs, pt.n());
    PhasePoint<Jet<Rational>> lp = lift(pt);
    Evaluator<Jet<Rational>> ev(lp, [&pt]() { return x0_jet(pt); });
    Jet<Rational> r = ev.eval(obs.root());
    if (r.d.size() != pt.dim()) r.d.resize(pt.dim(), Rational(0));
    return r;
}

double eval_float(const Observable& obs, const PhasePoint<double>& pt)
{
    check_n(obs, pt.n());
    Evaluator<double> ev(pt, [&pt]() { return x0_float(second_tensor(pt), pt); });
    return ev.eval(obs.root());
}

Jet<double> eval_jet_float(const Observable& obs, const PhasePoint<double>& pt)
{
    check_n(obs, pt.n());
    PhasePoint<Jet<double>> lp = lift(pt);
    Evaluator<Jet<double>> ev(lp, [&]() { return x0_float(second_tensor_jet(pt), lp); });
    Jet<double> r = ev.eval(obs.root());
    if (r.d.size() != pt.dim()) r.d.resize(pt.dim(), 0.0);
    return r;
}

}  // namespace cm
