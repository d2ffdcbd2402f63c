#pragma once

#include "cm/model.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace cm {

// Built-in symbol: p_i, q_i (i >= 1), p0, q0, I_k, J_k, x0.
struct Symbol {
    char kind = 'p';  // 'p', 'q', 'I', 'J', 'x'
    std::size_t index = 0;
};

struct Node {
    enum Kind { Literal, Sym, Neg, Add, Sub, Mul, Div, Pow };
    Kind kind = Literal;
    Rational value;
    Symbol symbol;
    long exponent = 0;
    std::shared_ptr<const Node> a, b;
};

using NodePtr = std::shared_ptr<const Node>;

// Parsed observable for a fixed particle count.
class Observable {
public:
    Observable(NodePtr root, std::size_t n) : root_(std::move(root)), n_(n) {}
    const Node& root() const { return *root_; }
    const NodePtr& ptr() const { return root_; }
    std::size_t n() const { return n_; }
    bool uses_x0() const;

private:
    NodePtr root_;
    std::size_t n_;
};

// expr   := term (('+'|'-') term)*
// term   := factor (('*'|'/') factor)*
// factor := base ('^' ['-'] digits)?
// base   := digits | symbol | '(' expr ')' | '-' base
Observable parse(std::string_view text, std::size_t n);

// Canonical form: every compound node parenthesized, so parse(print(t))
// prints back identically.
std::string print(const Observable& obs);
std::string print(const Node& node);

// Tree builders (used by property tests).
NodePtr make_literal(const Rational& v);
NodePtr make_symbol(char kind, std::size_t index);
NodePtr make_unary_minus(NodePtr a);
NodePtr make_binary(Node::Kind kind, NodePtr a, NodePtr b);
NodePtr make_power(NodePtr a, long exponent);

Rational eval(const Observable& obs, const PhasePoint<Rational>& pt);
// Value and gradient over (p, q), including through I_k, J_k and x0.
Jet<Rational> eval_jet(const Observable& obs, const PhasePoint<Rational>& pt);
double eval_float(const Observable& obs, const PhasePoint<double>& pt);
Jet<double> eval_jet_float(const Observable& obs, const PhasePoint<double>& pt);

}  // namespace cm
