#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "chow/rational.hpp"
#include "chow/strata.hpp"
#include "chow/taut_class.hpp"

namespace chow {

class TautExpr;

namespace expr_detail {
struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Constant { Rational value; };
struct Divisor { Partition2 partition; };
struct Psi { int marking; };
struct Kappa { int index; };
struct Stratum { StableTree tree; };
struct Invariant { ShapeLabel shape; };
struct PsiSum { int exponent; };
struct Literal { TautClass value; };
struct Sum { NodePtr lhs, rhs; bool subtract; };
struct Product { NodePtr lhs, rhs; };
struct Quotient { NodePtr lhs; Rational divisor; };
struct Power { NodePtr base; int exponent; };
struct Negate { NodePtr operand; };

struct Node {
  std::variant<Constant, Divisor, Psi, Kappa, Stratum, Invariant, PsiSum, Literal, Sum, Product,
               Quotient, Power, Negate>
      value;
};
}  // namespace expr_detail

/// Symbolic tautological expression on one M0,n.
class TautExpr {
 public:
  static TautExpr constant(int n, const Rational& value);
  static TautExpr divisor(const Partition2& p);
  static TautExpr psi(int n, int marking);
  static TautExpr kappa(int n, int index);
  static TautExpr stratum(const StableTree& t);
  static TautExpr invariant(int n, const ShapeLabel& shape);
  /// psi_1^j + ... + psi_n^j.
  static TautExpr psi_sum(int n, int exponent);
  static TautExpr literal(const TautClass& c);

  int n() const { return n_; }
  const expr_detail::Node& node() const { return *node_; }

  friend TautExpr operator+(const TautExpr& a, const TautExpr& b);
  friend TautExpr operator-(const TautExpr& a, const TautExpr& b);
  friend TautExpr operator*(const TautExpr& a, const TautExpr& b);
  friend TautExpr operator*(const Rational& c, const TautExpr& a);
  TautExpr operator-() const;
  TautExpr pow(int exponent) const;
  TautExpr operator/(const Rational& divisor) const;

  std::string to_string() const;

 private:
  TautExpr(int n, expr_detail::NodePtr node) : n_(n), node_(std::move(node)) {}
  friend TautExpr parse_expression(std::string_view, int);
  friend TautExpr pullback_expr(const TautExpr&, int);

  int n_ = 0;
  expr_detail::NodePtr node_;
};

/// Grammar (n fixed by the caller):
///   expr    := ['+'|'-'] term (('+'|'-') term)*
///   term    := factor (('*' factor) | ('/' number))*
///   factor  := '-' factor | primary ['^' integer]
///   primary := number | '(' expr ')' | atom
///   atom    := D(15|2346) | S(1278|56|34) | S({json tree}) | psi(i) | kappa(a)
///            | d(5,1,2) | psitilde(j)
/// Throws ParseError.
TautExpr parse_expression(std::string_view text, int n);

/// Replaces atoms by normal-form classes and folds the operators. Throws
/// ParseError for sums of different codimension.
TautClass evaluate(const TautExpr& e);

/// Rewrites e on M0,n into an expression on M0,n+1 equal to its pull-back
/// along the map forgetting the new marking p: psi_i -> psi_i - D({i,p}|rest),
/// kappa_a -> kappa_a - psi_p^a, other atoms pulled back stratum by stratum.
TautExpr pullback_expr(const TautExpr& e, int p);

}  // namespace chow
