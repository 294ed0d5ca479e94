#pragma once

#include <complex>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace willmore {

using Complex = std::complex<double>;

/// Immutable expression tree over one complex variable z: constants, z, the
/// four arithmetic operations and integer powers. Nodes are shared, so
/// copies are cheap.
class RationalExpr {
public:
    enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Pow };

    RationalExpr(); // the constant 0

    static RationalExpr constant(Complex c);
    static RationalExpr variable();

    friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator-(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator*(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator/(const RationalExpr& a, const RationalExpr& b);
    friend RationalExpr operator-(const RationalExpr& a);
    RationalExpr pow(int exponent) const;

    Op op() const;
    Complex constant_value() const;    // Const only
    int exponent() const;              // Pow only
    const RationalExpr& lhs() const;   // binary ops, Neg, Pow
    const RationalExpr& rhs() const;   // binary ops

    bool is_constant() const { return op() == Op::Const; }
    bool is_zero() const;
    bool is_one() const;

    Complex evaluate(Complex z) const;

    /// Minimal-parenthesis infix form; parse(print(e)) evaluates like e.
    std::string to_string() const;

private:
    struct Node;
    explicit RationalExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Grammar (standard precedence, left-associative binary operators):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' integer)?
///   primary := number ['i'] | 'i' | 'z' | '(' expr ')'
/// `integer` may carry a sign and may be parenthesized, e.g. z^-2 or z^(-2).
/// Throws SyntaxError with the offending position, and DivisionByZeroExpr when
/// some divisor vanishes at every probe point.
RationalExpr parse_rational(std::string_view text);

/// Exact symbolic derivative d/dz, with light constant folding.
RationalExpr differentiate(const RationalExpr& e);

/// Throws DivisionByZeroExpr if any divisor (or negative-power base) vanishes
/// at all 16 probe points.
void check_denominators(const RationalExpr& e);

/// Dense complex polynomial, coefficients in increasing degree.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Complex>& coefficients() const { return c_; }
    Complex evaluate(Complex z) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    /// Roots via companion-matrix eigenvalues. Empty for constants.
    std::vector<Complex> roots() const;

private:
    void trim();
    std::vector<Complex> c_;
};

/// Numerator / denominator pair equal to e wherever e is defined.
struct RationalFunction {
    Polynomial num;
    Polynomial den;
};

RationalFunction to_rational_function(const RationalExpr& e);

/// Candidate poles: roots of the collected denominator (no cancellation, so
/// removable singularities are reported too).
std::vector<Complex> candidate_poles(const RationalExpr& e);

} // namespace willmore
