#include "crlab/expr.hpp"

#include <cctype>
#include <cmath>

#include "crlab/error.hpp"

namespace crlab {

namespace {

struct Token {
  enum class Kind { Num, Ident, Op, LParen, RParen, End };
  Kind kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
public:
  explicit Lexer(const std::string& s) : s_(s) {}

  Token next() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::size_t start = i_;
    if (i_ >= s_.size()) return {Token::Kind::End, "", start};
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::string num;
      bool dot = false;
      while (i_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[i_])) || (!dot && s_[i_] == '.'))) {
        dot |= s_[i_] == '.';
        num += s_[i_++];
      }
      return {Token::Kind::Num, num, start};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        id += s_[i_++];
      return {Token::Kind::Ident, id, start};
    }
    if (c == '(') {
      ++i_;
      return {Token::Kind::LParen, "(", start};
    }
    if (c == ')') {
      ++i_;
      return {Token::Kind::RParen, ")", start};
    }
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
      ++i_;
      return {Token::Kind::Op, std::string(1, c), start};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

private:
  const std::string& s_;
  std::size_t i_ = 0;
};

Rational rational_from_decimal(const std::string& text, std::size_t pos) {
  auto dot = text.find('.');
  if (dot == std::string::npos) return rat_from_string(text);
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  if (digits.empty()) throw ParseError("malformed number '" + text + "'", pos);
  std::string den = "1" + std::string(text.size() - dot - 1, '0');
  return rat_from_string(digits + "/" + den);
}

class Parser {
public:
  explicit Parser(const std::string& s) : src_(s), lex_(s) { advance(); }

  ExprAST parse() {
    ExprAST e = parse_sum();
    if (cur_.kind != Token::Kind::End) throw ParseError("trailing input", cur_.pos);
    return e;
  }

private:
  void advance() { cur_ = lex_.next(); }

  ExprAST node(ExprNode::Kind k, std::size_t begin, std::size_t end) {
    ExprAST e;
    e.kind = k;
    e.begin = begin;
    e.end = end;
    return e;
  }

  ExprAST parse_sum() {
    ExprAST left = parse_product();
    while (cur_.kind == Token::Kind::Op && (cur_.text == "+" || cur_.text == "-")) {
      bool plus = cur_.text == "+";
      advance();
      ExprAST right = parse_product();
      ExprAST e = node(plus ? ExprNode::Kind::Add : ExprNode::Kind::Sub, left.begin, right.end);
      e.children.push_back(std::move(left));
      e.children.push_back(std::move(right));
      left = std::move(e);
    }
    return left;
  }

  ExprAST parse_product() {
    ExprAST left = parse_unary();
    while (cur_.kind == Token::Kind::Op && (cur_.text == "*" || cur_.text == "/")) {
      bool mul = cur_.text == "*";
      advance();
      ExprAST right = parse_unary();
      ExprAST e = node(mul ? ExprNode::Kind::Mul : ExprNode::Kind::Div, left.begin, right.end);
      e.children.push_back(std::move(left));
      e.children.push_back(std::move(right));
      left = std::move(e);
    }
    return left;
  }

  ExprAST parse_unary() {
    if (cur_.kind == Token::Kind::Op && cur_.text == "-") {
      std::size_t begin = cur_.pos;
      advance();
      ExprAST inner = parse_unary();
      ExprAST e = node(ExprNode::Kind::Neg, begin, inner.end);
      e.children.push_back(std::move(inner));
      return e;
    }
    if (cur_.kind == Token::Kind::Op && cur_.text == "+") {
      advance();
      return parse_unary();
    }
    return parse_power();
  }

  ExprAST parse_power() {
    ExprAST base = parse_atom();
    if (cur_.kind == Token::Kind::Op && cur_.text == "^") {
      advance();
      // integer exponent, possibly negative or parenthesized
      bool negexp = false;
      if (cur_.kind == Token::Kind::Op && cur_.text == "-") {
        negexp = true;
        advance();
      }
      bool paren = cur_.kind == Token::Kind::LParen;
      if (paren) {
        advance();
        if (cur_.kind == Token::Kind::Op && cur_.text == "-") {
          negexp = !negexp;
          advance();
        }
      }
      if (cur_.kind != Token::Kind::Num || cur_.text.find('.') != std::string::npos)
        throw ParseError("integer exponent expected after '^'", cur_.pos);
      int k = std::stoi(cur_.text);
      std::size_t end = cur_.pos + cur_.text.size();
      advance();
      if (paren) {
        if (cur_.kind != Token::Kind::RParen) throw ParseError("')' expected", cur_.pos);
        end = cur_.pos + 1;
        advance();
      }
      ExprAST e = node(ExprNode::Kind::Pow, base.begin, end);
      e.ipow = negexp ? -k : k;
      e.children.push_back(std::move(base));
      return e;
    }
    return base;
  }

  ExprAST parse_atom() {
    switch (cur_.kind) {
      case Token::Kind::Num: {
        ExprAST e = node(ExprNode::Kind::Lit, cur_.pos, cur_.pos + cur_.text.size());
        e.lit = rational_from_decimal(cur_.text, cur_.pos);
        advance();
        // p/q stays a division node; exactness is restored on evaluation
        return e;
      }
      case Token::Kind::Ident: {
        std::string id = cur_.text;
        std::size_t begin = cur_.pos;
        std::size_t end = cur_.pos + id.size();
        advance();
        if (id == "i") {
          ExprAST e = node(ExprNode::Kind::ImagUnit, begin, end);
          return e;
        }
        if (id == "t") {
          ExprAST e = node(ExprNode::Kind::Var, begin, end);
          e.var_kind = ExprNode::VarKind::T;
          return e;
        }
        if (id == "exp" || id == "log" || id == "sqrt" || id == "abs2") {
          if (cur_.kind != Token::Kind::LParen)
            throw ParseError("'" + id + "' expects one parenthesized argument", cur_.pos);
          advance();
          ExprAST arg = parse_sum();
          if (cur_.kind != Token::Kind::RParen) throw ParseError("')' expected", cur_.pos);
          end = cur_.pos + 1;
          advance();
          ExprAST e = node(ExprNode::Kind::Call, begin, end);
          e.func = id == "exp"    ? ExprNode::Func::Exp
                   : id == "log"  ? ExprNode::Func::Log
                   : id == "sqrt" ? ExprNode::Func::Sqrt
                                  : ExprNode::Func::Abs2;
          e.children.push_back(std::move(arg));
          return e;
        }
        if ((id[0] == 'x' || id[0] == 'y') && id.size() > 1) {
          for (std::size_t k = 1; k < id.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(id[k])))
              throw ParseError("unknown identifier '" + id + "'", begin);
          ExprAST e = node(ExprNode::Kind::Var, begin, end);
          e.var_kind = id[0] == 'x' ? ExprNode::VarKind::X : ExprNode::VarKind::Y;
          e.var_index = std::stoi(id.substr(1));
          if (e.var_index < 1) throw ParseError("variable index must be >= 1", begin);
          return e;
        }
        throw ParseError("unknown identifier '" + id + "'", begin);
      }
      case Token::Kind::LParen: {
        advance();
        ExprAST e = parse_sum();
        if (cur_.kind != Token::Kind::RParen) throw ParseError("')' expected", cur_.pos);
        advance();
        return e;
      }
      default:
        throw ParseError("expression expected", cur_.pos);
    }
  }

  const std::string& src_;
  Lexer lex_;
  Token cur_;
};

}  // namespace

ExprAST parse_expression(const std::string& text) { return Parser(text).parse(); }

int expr_max_index(const ExprAST& e) {
  int m = e.kind == ExprNode::Kind::Var ? e.var_index : 0;
  for (const auto& c : e.children) m = std::max(m, expr_max_index(c));
  return m;
}

std::string expr_source(const std::string& text, const ExprNode& node) {
  if (node.begin >= text.size() || node.end <= node.begin) return "";
  return text.substr(node.begin, std::min(node.end, text.size()) - node.begin);
}

std::complex<double> ComplexAlgebra::var(ExprNode::VarKind k, int index) const {
  switch (k) {
    case ExprNode::VarKind::T: return {t, 0.0};
    case ExprNode::VarKind::X:
      if (index > static_cast<int>(z.size())) throw ParamError("variable index exceeds n");
      return {z[index - 1].real(), 0.0};
    case ExprNode::VarKind::Y:
      if (index > static_cast<int>(z.size())) throw ParamError("variable index exceeds n");
      return {z[index - 1].imag(), 0.0};
  }
  throw Error("unreachable");
}

std::complex<double> ComplexAlgebra::div(Value a, Value b, const ExprNode& at) const {
  if (std::abs(b) == 0.0)
    throw DomainError("division by zero in '" + expr_source(source, at) + "'");
  return a / b;
}

std::complex<double> ComplexAlgebra::pow_int(Value a, int k) const {
  if (k < 0) {
    if (std::abs(a) == 0.0) throw DomainError("zero raised to a negative power");
    return 1.0 / pow_int(a, -k);
  }
  Value r = 1.0;
  for (int j = 0; j < k; ++j) r *= a;
  return r;
}

std::complex<double> ComplexAlgebra::call(ExprNode::Func f, Value a, const ExprNode& at) const {
  switch (f) {
    case ExprNode::Func::Exp: return std::exp(a);
    case ExprNode::Func::Log:
      if (std::abs(a) == 0.0 || (std::abs(a.imag()) < 1e-14 && a.real() <= 0.0))
        throw DomainError("log of a nonpositive value in '" + expr_source(source, at) + "'");
      return std::log(a);
    case ExprNode::Func::Sqrt:
      if (std::abs(a.imag()) < 1e-14 && a.real() < 0.0)
        throw DomainError("sqrt of a negative value in '" + expr_source(source, at) + "'");
      return std::sqrt(a);
    case ExprNode::Func::Abs2: return {std::norm(a), 0.0};
  }
  throw Error("unreachable");
}

std::complex<double> eval_expr_at(const ExprAST& e, const std::string& source,
                                  const std::vector<std::complex<double>>& z, double t) {
  ComplexAlgebra alg{source, z, t};
  return eval_expr(e, alg);
}

}  // namespace crlab
