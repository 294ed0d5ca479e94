#include "willmore/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "willmore/error.hpp"

namespace willmore {

struct RationalExpr::Node {
    Op op = Op::Const;
    Complex value{};
    int exponent = 0;
    RationalExpr a{std::shared_ptr<const Node>{}};
    RationalExpr b{std::shared_ptr<const Node>{}};
};

using Op = RationalExpr::Op;

RationalExpr::RationalExpr() {
    static const auto z = std::make_shared<const Node>();
    node_ = z;
}

RationalExpr RationalExpr::constant(Complex c) {
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = c;
    return RationalExpr(std::move(n));
}

RationalExpr RationalExpr::variable() {
    static const auto v = [] {
        auto n = std::make_shared<Node>();
        n->op = Op::Var;
        return std::shared_ptr<const Node>(std::move(n));
    }();
    return RationalExpr(v);
}

#define WILLMORE_BINARY(sym, tag)                                              \
    RationalExpr operator sym(const RationalExpr& a, const RationalExpr& b) { \
        auto n = std::make_shared<RationalExpr::Node>();                       \
        n->op = Op::tag;                                                       \
        n->a = a;                                                              \
        n->b = b;                                                              \
        return RationalExpr(std::move(n));                                     \
    }
WILLMORE_BINARY(+, Add)
WILLMORE_BINARY(-, Sub)
WILLMORE_BINARY(*, Mul)
WILLMORE_BINARY(/, Div)
#undef WILLMORE_BINARY

RationalExpr operator-(const RationalExpr& a) {
    auto n = std::make_shared<RationalExpr::Node>();
    n->op = Op::Neg;
    n->a = a;
    return RationalExpr(std::move(n));
}

RationalExpr RationalExpr::pow(int exponent) const {
    auto n = std::make_shared<Node>();
    n->op = Op::Pow;
    n->a = *this;
    n->exponent = exponent;
    return RationalExpr(std::move(n));
}

RationalExpr::Op RationalExpr::op() const { return node_->op; }
Complex RationalExpr::constant_value() const { return node_->value; }
int RationalExpr::exponent() const { return node_->exponent; }
const RationalExpr& RationalExpr::lhs() const { return node_->a; }
const RationalExpr& RationalExpr::rhs() const { return node_->b; }

bool RationalExpr::is_zero() const { return is_constant() && constant_value() == Complex(0.0, 0.0); }
bool RationalExpr::is_one() const { return is_constant() && constant_value() == Complex(1.0, 0.0); }

Complex RationalExpr::evaluate(Complex z) const {
    switch (op()) {
    case Op::Const: return constant_value();
    case Op::Var: return z;
    case Op::Add: return lhs().evaluate(z) + rhs().evaluate(z);
    case Op::Sub: return lhs().evaluate(z) - rhs().evaluate(z);
    case Op::Mul: return lhs().evaluate(z) * rhs().evaluate(z);
    case Op::Div: return lhs().evaluate(z) / rhs().evaluate(z);
    case Op::Neg: return -lhs().evaluate(z);
    case Op::Pow: {
        const Complex base = lhs().evaluate(z);
        const int e = exponent();
        Complex r(1.0, 0.0);
        Complex b = base;
        for (int k = std::abs(e); k > 0; k >>= 1) {
            if (k & 1) r *= b;
            b *= b;
        }
        return e < 0 ? Complex(1.0, 0.0) / r : r;
    }
    }
    return {};
}

// ---------------------------------------------------------------- printing

namespace {

int precedence(Op op) {
    switch (op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    case Op::Const:
    case Op::Var: return 5;
    }
    return 5;
}

std::string format_real(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string format_constant(Complex c) {
    // Constants print as a sum so that parse_rational reads them back.
    if (c.imag() == 0.0) return format_real(c.real());
    if (c.real() == 0.0) return format_real(c.imag()) + "i";
    std::string im = format_real(std::fabs(c.imag())) + "i";
    return "(" + format_real(c.real()) + (c.imag() < 0 ? "-" : "+") + im + ")";
}

int constant_precedence(Complex c) {
    if (c.imag() == 0.0 && c.real() >= 0.0) return 5;
    if (c.real() == 0.0 && c.imag() >= 0.0) return 5;
    if (c.imag() != 0.0 && c.real() != 0.0) return 5; // parenthesized
    return 3; // leading minus behaves like negation
}

int node_precedence(const RationalExpr& e) {
    return e.is_constant() ? constant_precedence(e.constant_value()) : precedence(e.op());
}

std::string print(const RationalExpr& e);

std::string wrap_if(const RationalExpr& e, bool paren) {
    const std::string s = print(e);
    return paren ? "(" + s + ")" : s;
}

std::string print(const RationalExpr& e) {
    switch (e.op()) {
    case Op::Const: return format_constant(e.constant_value());
    case Op::Var: return "z";
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
        const int p = precedence(e.op());
        const std::string sym = e.op() == Op::Add ? "+" : e.op() == Op::Sub ? "-" : e.op() == Op::Mul ? "*" : "/";
        // Left-associative: the right operand needs parentheses at equal precedence.
        const std::string l = wrap_if(e.lhs(), node_precedence(e.lhs()) < p);
        const std::string r = wrap_if(e.rhs(), node_precedence(e.rhs()) <= p);
        return l + sym + r;
    }
    case Op::Neg: return "-" + wrap_if(e.lhs(), node_precedence(e.lhs()) < 3);
    case Op::Pow: {
        const std::string base = wrap_if(e.lhs(), node_precedence(e.lhs()) < 5);
        const int k = e.exponent();
        return base + "^" + (k < 0 ? "(" + std::to_string(k) + ")" : std::to_string(k));
    }
    }
    return {};
}

} // namespace

std::string RationalExpr::to_string() const { return print(*this); }

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    RationalExpr parse() {
        skip();
        if (pos_ >= s_.size()) throw SyntaxError("empty expression", pos_);
        RationalExpr e = expr();
        skip();
        if (pos_ != s_.size()) throw SyntaxError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return e;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RationalExpr expr() {
        RationalExpr e = term();
        for (;;) {
            if (accept('+')) e = e + term();
            else if (accept('-')) e = e - term();
            else return e;
        }
    }

    RationalExpr term() {
        RationalExpr e = unary();
        for (;;) {
            if (accept('*')) e = e * unary();
            else if (accept('/')) e = e / unary();
            else return e;
        }
    }

    RationalExpr unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    RationalExpr power() {
        RationalExpr base = primary();
        if (accept('^')) return base.pow(integer_exponent());
        return base;
    }

    int integer_exponent() {
        skip();
        const bool paren = accept('(');
        skip();
        const std::size_t start = pos_;
        int sign = 1;
        if (accept('-')) sign = -1;
        else accept('+');
        skip();
        const std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == digits) throw SyntaxError("expected integer exponent", start);
        if (pos_ - digits > 6) throw SyntaxError("exponent too large", digits);
        const int v = std::atoi(std::string(s_.substr(digits, pos_ - digits)).c_str());
        if (paren && !accept(')')) throw SyntaxError("expected ')'", pos_);
        return sign * v;
    }

    RationalExpr primary() {
        skip();
        if (pos_ >= s_.size()) throw SyntaxError("unexpected end of expression", pos_);
        const char c = s_[pos_];
        if (c == '(') {
            const std::size_t open = pos_;
            ++pos_;
            RationalExpr e = expr();
            if (!accept(')')) throw SyntaxError("unbalanced '(' opened at " + std::to_string(open), pos_);
            return e;
        }
        if (c == 'z') {
            ++pos_;
            return RationalExpr::variable();
        }
        if (c == 'i') {
            ++pos_;
            return RationalExpr::constant({0.0, 1.0});
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
    }

    RationalExpr number() {
        const std::size_t start = pos_;
        const std::string rest(s_.substr(pos_));
        char* end = nullptr;
        const double v = std::strtod(rest.c_str(), &end);
        if (end == rest.c_str()) throw SyntaxError("malformed number", start);
        pos_ += static_cast<std::size_t>(end - rest.c_str());
        if (pos_ < s_.size() && s_[pos_] == 'i') {
            ++pos_;
            return RationalExpr::constant({0.0, v});
        }
        return RationalExpr::constant({v, 0.0});
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

RationalExpr parse_rational(std::string_view text) {
    RationalExpr e = Parser(text).parse();
    check_denominators(e);
    return e;
}

// ---------------------------------------------------------------- checks

namespace {

const std::vector<Complex>& probe_points() {
    static const std::vector<Complex> pts = [] {
        std::mt19937_64 rng(0x5eed2024ULL);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        std::vector<Complex> v;
        for (int k = 0; k < 16; ++k) v.emplace_back(u(rng), u(rng));
        return v;
    }();
    return pts;
}

void check_node(const RationalExpr& e) {
    switch (e.op()) {
    case Op::Const:
    case Op::Var: return;
    case Op::Neg: check_node(e.lhs()); return;
    case Op::Pow:
        check_node(e.lhs());
        if (e.exponent() < 0) {
            bool nonzero = false;
            for (Complex z : probe_points()) nonzero = nonzero || std::abs(e.lhs().evaluate(z)) > 0.0;
            if (!nonzero) throw DivisionByZeroExpr("base of '" + e.to_string() + "' vanishes at every probe point");
        }
        return;
    case Op::Div: {
        check_node(e.lhs());
        check_node(e.rhs());
        bool nonzero = false;
        for (Complex z : probe_points()) {
            const Complex d = e.rhs().evaluate(z);
            nonzero = nonzero || (std::abs(d) > 0.0 && std::isfinite(std::abs(d)));
        }
        if (!nonzero) throw DivisionByZeroExpr("divisor '" + e.rhs().to_string() + "' vanishes at every probe point");
        return;
    }
    default:
        check_node(e.lhs());
        check_node(e.rhs());
    }
}

} // namespace

void check_denominators(const RationalExpr& e) { check_node(e); }

// ---------------------------------------------------------------- derivative

namespace {

RationalExpr c(double v) { return RationalExpr::constant({v, 0.0}); }

RationalExpr add(const RationalExpr& a, const RationalExpr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() && b.is_constant()) return RationalExpr::constant(a.constant_value() + b.constant_value());
    return a + b;
}

RationalExpr sub(const RationalExpr& a, const RationalExpr& b) {
    if (b.is_zero()) return a;
    if (a.is_constant() && b.is_constant()) return RationalExpr::constant(a.constant_value() - b.constant_value());
    if (a.is_zero()) return -b;
    return a - b;
}

RationalExpr mul(const RationalExpr& a, const RationalExpr& b) {
    if (a.is_zero() || b.is_zero()) return c(0.0);
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    if (a.is_constant() && b.is_constant()) return RationalExpr::constant(a.constant_value() * b.constant_value());
    return a * b;
}

RationalExpr div(const RationalExpr& a, const RationalExpr& b) {
    if (a.is_zero()) return c(0.0);
    if (b.is_one()) return a;
    return a / b;
}

RationalExpr pow(const RationalExpr& a, int k) {
    if (k == 0) return c(1.0);
    if (k == 1) return a;
    return a.pow(k);
}

} // namespace

RationalExpr differentiate(const RationalExpr& e) {
    switch (e.op()) {
    case Op::Const: return c(0.0);
    case Op::Var: return c(1.0);
    case Op::Add: return add(differentiate(e.lhs()), differentiate(e.rhs()));
    case Op::Sub: return sub(differentiate(e.lhs()), differentiate(e.rhs()));
    case Op::Mul:
        return add(mul(differentiate(e.lhs()), e.rhs()), mul(e.lhs(), differentiate(e.rhs())));
    case Op::Div: {
        const RationalExpr& u = e.lhs();
        const RationalExpr& v = e.rhs();
        const RationalExpr num = sub(mul(differentiate(u), v), mul(u, differentiate(v)));
        return div(num, pow(v, 2));
    }
    case Op::Neg: {
        const RationalExpr d = differentiate(e.lhs());
        if (d.is_constant()) return RationalExpr::constant(-d.constant_value());
        return -d;
    }
    case Op::Pow: {
        const int k = e.exponent();
        if (k == 0) return c(0.0);
        return mul(mul(c(static_cast<double>(k)), pow(e.lhs(), k - 1)), differentiate(e.lhs()));
    }
    }
    return c(0.0);
}

// ---------------------------------------------------------------- polynomials

Polynomial::Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    while (c_.size() > 1 && c_.back() == Complex(0.0, 0.0)) c_.pop_back();
    if (c_.empty()) c_.push_back({0.0, 0.0});
}

Complex Polynomial::evaluate(Complex z) const {
    Complex r(0.0, 0.0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * z + *it;
    return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) r[k] += b.c_[k];
    return Polynomial(std::move(r));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) r[k] -= b.c_[k];
    return Polynomial(std::move(r));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
}

std::vector<Complex> Polynomial::roots() const {
    const int n = degree();
    if (n < 1) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    const Complex lead = c_.back();
    for (int k = 0; k < n; ++k) companion(0, k) = -c_[n - 1 - k] / lead;
    for (int k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<Complex> r(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    return r;
}

namespace {

Polynomial poly_const(Complex v) { return Polynomial({v}); }

RationalFunction rf(const RationalExpr& e) {
    switch (e.op()) {
    case Op::Const: return {poly_const(e.constant_value()), poly_const(1.0)};
    case Op::Var: return {Polynomial({0.0, 1.0}), poly_const(1.0)};
    case Op::Add:
    case Op::Sub: {
        const auto a = rf(e.lhs());
        const auto b = rf(e.rhs());
        const Polynomial l = a.num * b.den;
        const Polynomial r = a.den * b.num;
        return {e.op() == Op::Add ? l + r : l - r, a.den * b.den};
    }
    case Op::Mul: {
        const auto a = rf(e.lhs());
        const auto b = rf(e.rhs());
        return {a.num * b.num, a.den * b.den};
    }
    case Op::Div: {
        const auto a = rf(e.lhs());
        const auto b = rf(e.rhs());
        return {a.num * b.den, a.den * b.num};
    }
    case Op::Neg: {
        const auto a = rf(e.lhs());
        return {poly_const(-1.0) * a.num, a.den};
    }
    case Op::Pow: {
        const auto a = rf(e.lhs());
        Polynomial n = poly_const(1.0);
        Polynomial d = poly_const(1.0);
        for (int k = 0; k < std::abs(e.exponent()); ++k) {
            n = n * a.num;
            d = d * a.den;
        }
        if (e.exponent() < 0) std::swap(n, d);
        return {n, d};
    }
    }
    return {};
}

} // namespace

RationalFunction to_rational_function(const RationalExpr& e) { return rf(e); }

std::vector<Complex> candidate_poles(const RationalExpr& e) { return rf(e).den.roots(); }

} // namespace willmore
