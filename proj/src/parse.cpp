#include "species/parse.hpp"

#include <cctype>

namespace species {

namespace {

std::string join(const std::vector<std::string> &xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    out += (i ? ", " : "") + xs[i];
  return out;
}

} // namespace

ParseFailure::ParseFailure(std::size_t offset, std::vector<std::string> expected,
                           const std::string &found)
    : Error(ErrorCode::ParseError, "at offset " + std::to_string(offset) + ": expected " +
                                       join(expected) + ", found " + found),
      offset_(offset), expected_(std::move(expected)) {}

namespace {

const std::vector<std::string> operand_starts = {"0", "1", "X", "E", "E+", "L", "L+", "C", "S",
                                                 "P", "Y(", "D(", "pt(", "adjL(", "adjR(",
                                                 "dL(", "tl(", "tr(", "("};

class Parser {
public:
  explicit Parser(const std::string &s) : s_(s) {}

  Expr expr() {
    Expr e = term();
    while (eat('+'))
      e = ex::sum(e, term());
    return e;
  }

  Expr term() {
    Expr e = factor();
    while (true) {
      if (eat('*'))
        e = ex::cauchy(e, factor());
      else if (eat('&'))
        e = ex::hadamard(e, factor());
      else
        return e;
    }
  }

  Expr factor() {
    Expr a = atom();
    if (eat_word("o"))
      return ex::substitute(a, factor());
    return a;
  }

  Expr atom() {
    skip();
    std::size_t at = pos_;
    if (eat_word("adjL"))
      return unary(ex::adj_l);
    if (eat_word("adjR"))
      return unary(ex::adj_r);
    if (eat_word("dL"))
      return unary(ex::derive_l);
    if (eat_word("pt"))
      return unary(ex::pointing);
    if (eat_word("tl"))
      return truncation(false);
    if (eat_word("tr"))
      return truncation(true);
    if (eat_word("D"))
      return unary(ex::derive);
    if (eat_word("Y")) {
      expect('(');
      unsigned k = nat();
      expect(')');
      return ex::rep(k);
    }
    if (pos_ >= s_.size())
      fail(operand_starts);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    ++pos_;
    switch (c) {
    case '0': return ex::zero();
    case '1': return ex::one();
    case 'X': return ex::x();
    case 'C': return ex::cyc();
    case 'S': return ex::perm();
    case 'P': return ex::subsets();
    case 'E': return plus_suffix() ? ex::exp_plus() : ex::exp();
    case 'L': return plus_suffix() ? ex::lin_plus() : ex::lin();
    default: break;
    }
    pos_ = at;
    fail(operand_starts);
  }

  unsigned nat() {
    skip();
    std::size_t start = pos_;
    unsigned long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<unsigned long>(s_[pos_] - '0');
      if (v > 1000000)
        fail({"a natural number below 1000000"});
      ++pos_;
    }
    if (pos_ == start)
      fail({"natural number"});
    return static_cast<unsigned>(v);
  }

  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c))
      fail({std::string("'") + c + "'"});
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    skip();
    std::string found =
        pos_ >= s_.size() ? "end of input" : "'" + std::string(1, s_[pos_]) + "'";
    throw ParseFailure(pos_, std::move(expected), found);
  }

  std::size_t pos() const { return pos_; }

private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  // a keyword followed by a non-identifier character
  bool eat_word(const char *w) {
    skip();
    std::size_t n = std::char_traits<char>::length(w);
    if (s_.compare(pos_, n, w) != 0)
      return false;
    if (pos_ + n < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_ + n])))
      return false;
    pos_ += n;
    return true;
  }

  Expr unary(Expr (*make)(Expr)) {
    expect('(');
    Expr e = expr();
    expect(')');
    return make(e);
  }

  Expr truncation(bool right) {
    expect('(');
    Expr e = expr();
    expect(',');
    unsigned n = nat();
    expect(')');
    return right ? ex::trunc_right(e, n) : ex::trunc_left(e, n);
  }

  // "E+" unless the '+' is a sum followed by an operand
  bool plus_suffix() {
    std::size_t save = pos_;
    skip();
    if (pos_ >= s_.size() || s_[pos_] != '+') {
      pos_ = save;
      return false;
    }
    std::size_t after = pos_ + 1;
    while (after < s_.size() && std::isspace(static_cast<unsigned char>(s_[after])))
      ++after;
    bool operand = after < s_.size() && starts_operand(after);
    if (operand) {
      pos_ = save;
      return false;
    }
    pos_ += 1;
    return true;
  }

  bool starts_operand(std::size_t i) const {
    char c = s_[i];
    return std::string("01XELCSPY(").find(c) != std::string::npos ||
           s_.compare(i, 2, "D(") == 0 || s_.compare(i, 1, "D") == 0 ||
           s_.compare(i, 2, "pt") == 0 || s_.compare(i, 3, "adj") == 0 ||
           s_.compare(i, 2, "dL") == 0 || s_.compare(i, 2, "tl") == 0 ||
           s_.compare(i, 2, "tr") == 0;
  }

  const std::string &s_;
  std::size_t pos_ = 0;
};

} // namespace

Expr parse_expr(const std::string &text) {
  Parser p(text);
  Expr e = p.expr();
  if (!p.at_end())
    p.fail({"'+'", "'*'", "'&'", "'o'", "end of input"});
  return e;
}

DiffOperator parse_operator(const std::string &text) {
  Parser p(text);
  DiffOperator D;
  do {
    Expr a = p.term();
    if (p.eat(':')) {
      D.terms.push_back({a, p.nat()});
    } else {
      D.constant = D.constant ? ex::sum(*D.constant, a) : a;
    }
  } while (p.eat('+'));
  if (!p.at_end())
    p.fail({"'+'", "':'", "end of input"});
  return D;
}

} // namespace species
