#include "chow/expr.hpp"

#include <cctype>
#include <stdexcept>

#include "chow/chow_ring.hpp"
#include "chow/errors.hpp"
#include "chow/invariant.hpp"

namespace chow {

using namespace expr_detail;

namespace {

NodePtr make(auto&& v) { return std::make_shared<const Node>(Node{std::forward<decltype(v)>(v)}); }

void same_space(const TautExpr& a, const TautExpr& b) {
  if (a.n() != b.n()) throw std::invalid_argument("TautExpr: operands live on different M0,n");
}

}  // namespace

TautExpr TautExpr::constant(int n, const Rational& value) { return {n, make(Constant{value})}; }
TautExpr TautExpr::divisor(const Partition2& p) { return {p.n(), make(Divisor{p})}; }
TautExpr TautExpr::psi(int n, int marking) {
  if (marking < 1 || marking > n) throw std::invalid_argument("psi: marking out of range");
  return {n, make(Psi{marking})};
}
TautExpr TautExpr::kappa(int n, int index) {
  if (index < 1) throw std::invalid_argument("kappa: index must be >= 1");
  return {n, make(Kappa{index})};
}
TautExpr TautExpr::stratum(const StableTree& t) { return {t.n(), make(Stratum{t})}; }
TautExpr TautExpr::invariant(int n, const ShapeLabel& shape) { return {n, make(Invariant{shape})}; }
TautExpr TautExpr::psi_sum(int n, int exponent) {
  if (exponent < 0) throw std::invalid_argument("psitilde: negative exponent");
  return {n, make(PsiSum{exponent})};
}
TautExpr TautExpr::literal(const TautClass& c) { return {c.n(), make(Literal{c})}; }

TautExpr operator+(const TautExpr& a, const TautExpr& b) {
  same_space(a, b);
  return {a.n_, make(Sum{a.node_, b.node_, false})};
}
TautExpr operator-(const TautExpr& a, const TautExpr& b) {
  same_space(a, b);
  return {a.n_, make(Sum{a.node_, b.node_, true})};
}
TautExpr operator*(const TautExpr& a, const TautExpr& b) {
  same_space(a, b);
  return {a.n_, make(Product{a.node_, b.node_})};
}
TautExpr operator*(const Rational& c, const TautExpr& a) { return TautExpr::constant(a.n(), c) * a; }
TautExpr TautExpr::operator-() const { return {n_, make(Negate{node_})}; }
TautExpr TautExpr::pow(int exponent) const {
  if (exponent < 0) throw std::invalid_argument("TautExpr::pow: negative exponent");
  return {n_, make(Power{node_, exponent})};
}

// ---------------------------------------------------------------- printing

namespace {

std::string print(const Node& node, int n) {
  return std::visit(
      [n](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Constant>) return v.value.to_string();
        else if constexpr (std::is_same_v<T, Divisor>) return "D" + v.partition.to_string();
        else if constexpr (std::is_same_v<T, Psi>) return "psi(" + std::to_string(v.marking) + ")";
        else if constexpr (std::is_same_v<T, Kappa>) return "kappa(" + std::to_string(v.index) + ")";
        else if constexpr (std::is_same_v<T, Stratum>) {
          const std::string s = v.tree.to_string();
          return "S" + (s.front() == '(' ? s : "(" + s + ")");
        } else if constexpr (std::is_same_v<T, Invariant>) {
          std::string s = "d(";
          for (std::size_t i = 0; i < v.shape.parts.size(); ++i) s += (i ? "," : "") + std::to_string(v.shape.parts[i]);
          return s + ")";
        } else if constexpr (std::is_same_v<T, PsiSum>) return "psitilde(" + std::to_string(v.exponent) + ")";
        else if constexpr (std::is_same_v<T, Literal>) return "[" + v.value.to_string() + "]";
        else if constexpr (std::is_same_v<T, Sum>) return "(" + print(*v.lhs, n) + (v.subtract ? " - " : " + ") + print(*v.rhs, n) + ")";
        else if constexpr (std::is_same_v<T, Product>) return print(*v.lhs, n) + "*" + print(*v.rhs, n);
        else if constexpr (std::is_same_v<T, Quotient>) return print(*v.lhs, n) + "/" + v.divisor.to_string();
        else if constexpr (std::is_same_v<T, Power>) return print(*v.base, n) + "^" + std::to_string(v.exponent);
        else return "-" + print(*v.operand, n);
      },
      node.value);
}

}  // namespace

std::string TautExpr::to_string() const { return print(*node_, n_); }

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, int n) : text_(text), n_(n) {}

  TautExpr parse() {
    TautExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression: " + what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  TautExpr expr() {
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    TautExpr e = term();
    if (negate) e = -e;
    while (true) {
      if (accept('+')) e = e + term();
      else if (accept('-')) e = e - term();
      else return e;
    }
  }

  TautExpr term() {
    TautExpr e = factor();
    while (true) {
      if (accept('*')) {
        e = e * factor();
      } else if (accept('/')) {
        skip_ws();
        const Rational d = integer_literal();
        if (d.is_zero()) fail("division by zero");
        e = e / d;
      } else {
        return e;
      }
    }
  }

  TautExpr factor() {
    if (accept('-')) return -factor();
    TautExpr base = primary();
    if (accept('^')) {
      skip_ws();
      const Rational k = integer_literal();
      if (k.sign() < 0 || k > Rational(64)) fail("exponent out of range");
      base = base.pow(static_cast<int>(k.numerator().get_si()));
    }
    return base;
  }

  Rational integer_literal() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Rational::parse(text_.substr(start, pos_ - start));
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  // Raw text between '(' and its matching ')'.
  std::string_view parenthesized() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '(') fail("expected '('");
    const std::size_t open = pos_;
    int depth = 0;
    for (; pos_ < text_.size(); ++pos_) {
      if (text_[pos_] == '(') ++depth;
      else if (text_[pos_] == ')' && --depth == 0) {
        ++pos_;
        return text_.substr(open + 1, pos_ - open - 2);
      }
    }
    fail("unbalanced parenthesis");
  }

  int small_integer(std::string_view body) {
    try {
      const Rational v = Rational::parse(body);
      if (!v.is_integer() || v.sign() < 0 || v > Rational(1000)) fail("expected a small non-negative integer");
      return static_cast<int>(v.numerator().get_si());
    } catch (const ParseError&) {
      fail("expected an integer argument, got '" + std::string(body) + "'");
    }
  }

  TautExpr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return TautExpr::constant(n_, integer_literal());
    if (c == '(') {
      ++pos_;
      TautExpr e = expr();
      expect(')');
      return e;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
    const std::size_t at = pos_;
    const std::string name = identifier();
    const std::string_view body = parenthesized();
    try {
      if (name == "D") return TautExpr::divisor(Partition2::parse(body, n_));
      if (name == "S") return TautExpr::stratum(StableTree::parse(body.starts_with("{") ? body : "(" + std::string(body) + ")", n_));
      if (name == "psi") {
        const int i = small_integer(body);
        if (i < 1 || i > n_) fail("psi marking out of range");
        return TautExpr::psi(n_, i);
      }
      if (name == "kappa") {
        const int a = small_integer(body);
        if (a < 1) fail("kappa index must be >= 1");
        return TautExpr::kappa(n_, a);
      }
      if (name == "psitilde") return TautExpr::psi_sum(n_, small_integer(body));
      if (name == "d") return TautExpr::invariant(n_, parse_shape(body, n_));
    } catch (const std::invalid_argument& e) {
      pos_ = at;
      fail(e.what());
    }
    pos_ = at;
    fail("unknown atom '" + name + "'");
  }

  std::string_view text_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

TautExpr TautExpr::operator/(const Rational& d) const {
  if (d.is_zero()) throw std::invalid_argument("TautExpr: division by zero");
  return {n_, make(Quotient{node_, d})};
}

TautExpr parse_expression(std::string_view text, int n) {
  if (n < 3 || n > kMaxMarkings) throw std::invalid_argument("parse_expression: n out of range");
  return Parser(text, n).parse();
}

// ---------------------------------------------------------------- evaluation

namespace {

Rational scalar_of(const TautClass& c) {
  return c.coefficient(StableTree::trivial(c.n()));
}

TautClass eval(const Node& node, int n) {
  return std::visit(
      [n](const auto& v) -> TautClass {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Constant>) return TautClass::fundamental(n) * v.value;
        else if constexpr (std::is_same_v<T, Divisor>) return TautClass::divisor(v.partition);
        else if constexpr (std::is_same_v<T, Psi>) return psi_expand(n, v.marking);
        else if constexpr (std::is_same_v<T, Kappa>) return kappa_class(n, v.index);
        else if constexpr (std::is_same_v<T, Stratum>) return TautClass::stratum(v.tree);
        else if constexpr (std::is_same_v<T, Invariant>) return d_class(n, v.shape);
        else if constexpr (std::is_same_v<T, PsiSum>) return psi_power_sum(n, v.exponent);
        else if constexpr (std::is_same_v<T, Literal>) return v.value;
        else if constexpr (std::is_same_v<T, Sum>) {
          TautClass a = eval(*v.lhs, n);
          const TautClass b = eval(*v.rhs, n);
          if (a.codim() != b.codim()) {
            throw ParseError("expression: sum of classes of codimension " + std::to_string(a.codim()) +
                             " and " + std::to_string(b.codim()));
          }
          return v.subtract ? a - b : a + b;
        } else if constexpr (std::is_same_v<T, Product>) {
          const TautClass a = eval(*v.lhs, n);
          const TautClass b = eval(*v.rhs, n);
          if (a.codim() == 0) return b * scalar_of(a);
          if (b.codim() == 0) return a * scalar_of(b);
          return mul(a, b);
        } else if constexpr (std::is_same_v<T, Quotient>) {
          return eval(*v.lhs, n) * (Rational(1) / v.divisor);
        } else if constexpr (std::is_same_v<T, Power>) {
          return power(eval(*v.base, n), v.exponent);
        } else {
          return -eval(*v.operand, n);
        }
      },
      node.value);
}

int shifted(int i, int p) { return i >= p ? i + 1 : i; }

}  // namespace

TautClass evaluate(const TautExpr& e) { return eval(e.node(), e.n()); }

TautExpr pullback_expr(const TautExpr& e, int p) {
  const int n = e.n();
  const int m = n + 1;
  if (p < 1 || p > m) throw std::invalid_argument("pullback_expr: new marking out of range");
  auto psi_pulled = [&](int i) {
    const int j = shifted(i, p);
    return TautExpr::psi(m, j) - TautExpr::divisor(Partition2(m, marking_bit(j) | marking_bit(p)));
  };
  return std::visit(
      [&](const auto& v) -> TautExpr {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Constant>) return TautExpr::constant(m, v.value);
        else if constexpr (std::is_same_v<T, Psi>) return psi_pulled(v.marking);
        else if constexpr (std::is_same_v<T, Kappa>) return TautExpr::kappa(m, v.index) - TautExpr::psi(m, p).pow(v.index);
        else if constexpr (std::is_same_v<T, PsiSum>) {
          TautExpr sum = psi_pulled(1).pow(v.exponent);
          for (int i = 2; i <= n; ++i) sum = sum + psi_pulled(i).pow(v.exponent);
          return sum;
        } else if constexpr (std::is_same_v<T, Divisor> || std::is_same_v<T, Stratum> ||
                             std::is_same_v<T, Invariant> || std::is_same_v<T, Literal>) {
          return TautExpr::literal(pullback_forget(eval(e.node(), n), p));
        } else if constexpr (std::is_same_v<T, Sum>) {
          const TautExpr a = pullback_expr(TautExpr(n, v.lhs), p);
          const TautExpr b = pullback_expr(TautExpr(n, v.rhs), p);
          return v.subtract ? a - b : a + b;
        } else if constexpr (std::is_same_v<T, Product>) {
          return pullback_expr(TautExpr(n, v.lhs), p) * pullback_expr(TautExpr(n, v.rhs), p);
        } else if constexpr (std::is_same_v<T, Quotient>) {
          return pullback_expr(TautExpr(n, v.lhs), p) / v.divisor;
        } else if constexpr (std::is_same_v<T, Power>) {
          return pullback_expr(TautExpr(n, v.base), p).pow(v.exponent);
        } else {
          return -pullback_expr(TautExpr(n, v.operand), p);
        }
      },
      e.node().value);
}

}  // namespace chow
