#include <cctype>
#include <charconv>

#include "rvaft/error.hpp"
#include "rvaft/format.hpp"

namespace rvaft::format {

using term::Guard;
using term::GuardOp;

namespace {

enum class Tok { kEnd, kNumber, kString, kIdent, kOp, kLParen, kRParen };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::size_t column = 1;
};

class GuardParser {
 public:
  explicit GuardParser(std::string_view text) : text_(text) { advance(); }

  Guard parse() {
    Guard g = parse_or();
    if (current_.kind != Tok::kEnd) fail("unexpected '" + current_.text + "'");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("guard: " + message, 1, current_.column);
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    current_ = Token{};
    current_.column = pos_ + 1;
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
              ((text_[pos_] == '+' || text_[pos_] == '-') &&
               (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
        ++pos_;
      }
      current_.kind = Tok::kNumber;
      current_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      current_.kind = Tok::kIdent;
      current_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    if (c == '\'') {
      ++pos_;
      std::string value;
      while (true) {
        if (pos_ >= text_.size()) fail("unterminated string");
        char d = text_[pos_++];
        if (d == '\'') break;
        if (d == '\\') {
          if (pos_ >= text_.size()) fail("unterminated string");
          d = text_[pos_++];
        }
        value += d;
      }
      current_.kind = Tok::kString;
      current_.text = std::move(value);
      return;
    }
    if (c == '(' || c == ')') {
      current_.kind = c == '(' ? Tok::kLParen : Tok::kRParen;
      current_.text = std::string(1, c);
      ++pos_;
      return;
    }
    static constexpr std::string_view kTwoChar[] = {"<=", ">=", "==", "!="};
    for (auto op : kTwoChar) {
      if (text_.substr(pos_, 2) == op) {
        current_.kind = Tok::kOp;
        current_.text = std::string(op);
        pos_ += 2;
        return;
      }
    }
    if (c == '<' || c == '>' || c == '+' || c == '-') {
      current_.kind = Tok::kOp;
      current_.text = std::string(1, c);
      ++pos_;
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  bool at_keyword(const char* word) const {
    return current_.kind == Tok::kIdent && current_.text == word;
  }
  bool at_op(const char* op) const {
    return current_.kind == Tok::kOp && current_.text == op;
  }

  Guard parse_or() {
    Guard g = parse_and();
    while (at_keyword("or")) {
      advance();
      g = Guard::binary(GuardOp::kOr, g, parse_and());
    }
    return g;
  }

  Guard parse_and() {
    Guard g = parse_not();
    while (at_keyword("and")) {
      advance();
      g = Guard::binary(GuardOp::kAnd, g, parse_not());
    }
    return g;
  }

  Guard parse_not() {
    if (at_keyword("not")) {
      advance();
      return Guard::negate(parse_cmp());
    }
    return parse_cmp();
  }

  Guard parse_cmp() {
    Guard lhs = parse_sum();
    static const std::pair<const char*, GuardOp> kOps[] = {
        {"<", GuardOp::kLess},     {"<=", GuardOp::kLessEqual}, {">", GuardOp::kGreater},
        {">=", GuardOp::kGreaterEqual}, {"==", GuardOp::kEqual},  {"!=", GuardOp::kNotEqual}};
    for (const auto& [text, op] : kOps) {
      if (at_op(text)) {
        advance();
        return Guard::binary(op, lhs, parse_sum());
      }
    }
    return lhs;
  }

  Guard parse_sum() {
    Guard g = parse_term();
    while (at_op("+") || at_op("-")) {
      GuardOp op = at_op("+") ? GuardOp::kAdd : GuardOp::kSub;
      advance();
      g = Guard::binary(op, g, parse_term());
    }
    return g;
  }

  Guard parse_term() {
    switch (current_.kind) {
      case Tok::kNumber: return number(false);
      case Tok::kString: {
        Guard g = Guard::literal(term::Value(current_.text));
        advance();
        return g;
      }
      case Tok::kIdent: {
        if (current_.text == "and" || current_.text == "or" || current_.text == "not") {
          fail("unexpected keyword '" + current_.text + "'");
        }
        Guard g = current_.text == "true"    ? Guard::literal(term::Value(true))
                  : current_.text == "false" ? Guard::literal(term::Value(false))
                                             : Guard::variable(current_.text);
        advance();
        return g;
      }
      case Tok::kLParen: {
        advance();
        Guard g = parse_or();
        if (current_.kind != Tok::kRParen) fail("expected ')'");
        advance();
        return g;
      }
      case Tok::kOp:
        if (current_.text == "-") {
          advance();
          if (current_.kind != Tok::kNumber) fail("expected number after '-'");
          return number(true);
        }
        break;
      default:
        break;
    }
    fail(current_.kind == Tok::kEnd ? "unexpected end of guard"
                                    : "unexpected '" + current_.text + "'");
  }

  Guard number(bool negative) {
    double value = 0;
    const auto& t = current_.text;
    auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || end != t.data() + t.size()) fail("bad number '" + t + "'");
    advance();
    return Guard::literal(term::Value(negative ? -value : value));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_;
};

}  // namespace

Guard parse_guard(std::string_view text) { return GuardParser(text).parse(); }

}  // namespace rvaft::format
