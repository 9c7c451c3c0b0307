#include "gclwb/parser.hpp"

#include <cctype>
#include <map>
#include <utility>

namespace gclwb {
namespace {

enum class Tok {
  End, Ident, Number,
  Semi, Comma, Colon, LParen, RParen, LBrace, RBrace,
  Becomes, Arrow, Box,
  Plus, Minus, Star, Slash,
  Eq, Ne, Lt, Le, Gt, Ge,
  Implies, Iff,
  // reserved words
  KwVar, KwSkip, KwAbort, KwIf, KwFi, KwDo, KwOd,
  KwDiv, KwMod, KwAnd, KwOr, KwNot, KwTrue, KwFalse, KwGcd, KwAbs,
};

struct Token {
  Tok kind;
  std::string text;  // ident spelling or digits
  SourcePos pos;
};

const std::map<std::string_view, Tok> kKeywords = {
    {"var", Tok::KwVar},   {"skip", Tok::KwSkip}, {"abort", Tok::KwAbort},
    {"if", Tok::KwIf},     {"fi", Tok::KwFi},     {"do", Tok::KwDo},
    {"od", Tok::KwOd},     {"div", Tok::KwDiv},   {"mod", Tok::KwMod},
    {"and", Tok::KwAnd},   {"or", Tok::KwOr},     {"not", Tok::KwNot},
    {"true", Tok::KwTrue}, {"false", Tok::KwFalse},
    {"gcd", Tok::KwGcd},   {"abs", Tok::KwAbs},
};

class Lexer {
 public:
  Lexer(std::string_view text, int line_origin) : text_(text), line_(line_origin) {}

  Token next() {
    skip_trivia();
    SourcePos pos{line_, col_};
    if (at_end()) return {Tok::End, "", pos};

    // Unicode aliases first; they are multi-byte and would otherwise be
    // rejected as stray bytes.
    static const std::pair<std::string_view, Tok> kUnicode[] = {
        {"→", Tok::Arrow},  {"□", Tok::Box},    {"⇒", Tok::Implies},
        {"⇔", Tok::Iff},    {"≠", Tok::Ne},     {"≤", Tok::Le},
        {"≥", Tok::Ge},     {"×", Tok::Star},   {"∧", Tok::KwAnd},
        {"∨", Tok::KwOr},   {"¬", Tok::KwNot},  {"−", Tok::Minus},
    };
    for (const auto& [spelling, tok] : kUnicode)
      if (match(spelling)) return {tok, "", pos};

    char c = text_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[i_])))
        digits += take();
      return {Tok::Number, digits, pos};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[i_])) ||
                           text_[i_] == '_' || text_[i_] == '\''))
        word += take();
      auto kw = kKeywords.find(word);
      if (kw != kKeywords.end()) return {kw->second, word, pos};
      return {Tok::Ident, word, pos};
    }

    if (match("<=>")) return {Tok::Iff, "", pos};
    if (match(":=")) return {Tok::Becomes, "", pos};
    if (match("->")) return {Tok::Arrow, "", pos};
    if (match("[]")) return {Tok::Box, "", pos};
    if (match("=>")) return {Tok::Implies, "", pos};
    if (match("<=")) return {Tok::Le, "", pos};
    if (match(">=")) return {Tok::Ge, "", pos};
    if (match("!=")) return {Tok::Ne, "", pos};
    switch (take()) {
      case ';': return {Tok::Semi, "", pos};
      case ',': return {Tok::Comma, "", pos};
      case ':': return {Tok::Colon, "", pos};
      case '(': return {Tok::LParen, "", pos};
      case ')': return {Tok::RParen, "", pos};
      case '{': return {Tok::LBrace, "", pos};
      case '}': return {Tok::RBrace, "", pos};
      case '+': return {Tok::Plus, "", pos};
      case '-': return {Tok::Minus, "", pos};
      case '*': return {Tok::Star, "", pos};
      case '/': return {Tok::Slash, "", pos};
      case '=': return {Tok::Eq, "", pos};
      case '<': return {Tok::Lt, "", pos};
      case '>': return {Tok::Gt, "", pos};
      default:
        throw ParseError(pos, "unexpected character '" + std::string(1, text_[i_ - 1]) + "'");
    }
  }

 private:
  bool at_end() const { return i_ >= text_.size(); }

  char take() {
    char c = text_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((c & 0xC0) != 0x80) {  // count codepoints, not bytes
      ++col_;
    }
    return c;
  }

  bool match(std::string_view s) {
    if (text_.substr(i_, s.size()) != s) return false;
    for (std::size_t k = 0; k < s.size(); ++k) take();
    return true;
  }

  void skip_trivia() {
    while (!at_end()) {
      char c = text_[i_];
      if (c == '#') {
        while (!at_end() && text_[i_] != '\n') take();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        take();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t i_ = 0;
  int line_;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, bool allow_rat_div, int line_origin)
      : lexer_(text, line_origin), allow_rat_div_(allow_rat_div) {
    advance();
  }

  Program parse_program() {
    expect(Tok::KwVar, "expected 'var'");
    Program p;
    p.vars.push_back(expect_ident("variable name"));
    while (cur_.kind == Tok::Comma) {
      advance();
      p.vars.push_back(expect_ident("variable name"));
    }
    expect(Tok::Semi, "expected ';' after declarations");
    // No statement starts with '{', so a brace here is the annotation block.
    if (cur_.kind == Tok::LBrace) {
      p.pre = annotation_block("pre");
      p.post = annotation_block("post");
    }
    p.body = statement();
    expect(Tok::End, "expected end of input");
    check_program(p);
    return p;
  }

  ExprPtr parse_whole_expression() {
    ExprPtr e = expression();
    expect(Tok::End, "expected end of expression");
    return e;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  void expect(Tok kind, const std::string& message) {
    if (cur_.kind != kind) throw ParseError(cur_.pos, message);
    advance();
  }

  std::string expect_ident(const std::string& what) {
    if (cur_.kind != Tok::Ident) throw ParseError(cur_.pos, "expected " + what);
    std::string name = cur_.text;
    advance();
    return name;
  }

  ExprPtr annotation_block(const std::string& key) {
    expect(Tok::LBrace, "expected '{'");
    std::string word = expect_ident("'" + key + "'");
    if (word != key) throw ParseError(cur_.pos, "expected '" + key + ":'");
    expect(Tok::Colon, "expected ':' after '" + key + "'");
    ExprPtr e = expression();
    expect(Tok::RBrace, "expected '}'");
    return e;
  }

  StmtPtr statement() {
    SourcePos pos = cur_.pos;
    std::vector<StmtPtr> steps;
    steps.push_back(simple_statement());
    while (cur_.kind == Tok::Semi) {
      advance();
      steps.push_back(simple_statement());
    }
    if (steps.size() == 1) return steps[0];
    return mk_seq(std::move(steps), pos);
  }

  StmtPtr simple_statement() {
    SourcePos pos = cur_.pos;
    switch (cur_.kind) {
      case Tok::KwSkip:
        advance();
        return mk_skip(pos);
      case Tok::KwAbort:
        advance();
        return mk_abort(pos);
      case Tok::KwIf: {
        advance();
        auto arms = guarded_commands();
        expect(Tok::KwFi, "expected 'fi'");
        return mk_if(std::move(arms), pos);
      }
      case Tok::KwDo: {
        advance();
        std::optional<LoopSpec> spec;
        if (cur_.kind == Tok::LBrace) spec = loop_spec();
        auto arms = guarded_commands();
        expect(Tok::KwOd, "expected 'od'");
        return mk_do(std::move(arms), std::move(spec), pos);
      }
      case Tok::Ident: {
        std::vector<std::string> targets{cur_.text};
        advance();
        while (cur_.kind == Tok::Comma) {
          advance();
          targets.push_back(expect_ident("assignment target"));
        }
        expect(Tok::Becomes, "expected ':='");
        std::vector<ExprPtr> values;
        values.push_back(expression());
        while (cur_.kind == Tok::Comma) {
          advance();
          values.push_back(expression());
        }
        if (targets.size() != values.size())
          throw ParseError(pos, "simultaneous assignment needs one expression per target");
        if (targets.size() == 1) return mk_assign(targets[0], values[0], pos);
        return mk_multi_assign(std::move(targets), std::move(values), pos);
      }
      default:
        throw ParseError(cur_.pos, "expected a statement");
    }
  }

  std::vector<GuardedCommand> guarded_commands() {
    std::vector<GuardedCommand> arms;
    arms.push_back(guarded_command());
    while (cur_.kind == Tok::Box) {
      advance();
      arms.push_back(guarded_command());
    }
    return arms;
  }

  GuardedCommand guarded_command() {
    ExprPtr guard = expression();
    expect(Tok::Arrow, "expected '->' after guard");
    return {guard, statement()};
  }

  LoopSpec loop_spec() {
    expect(Tok::LBrace, "expected '{'");
    std::string word = expect_ident("'inv'");
    if (word != "inv") throw ParseError(cur_.pos, "expected 'inv:'");
    expect(Tok::Colon, "expected ':' after 'inv'");
    ExprPtr inv = expression();
    expect(Tok::Comma, "expected ',' between inv and bound");
    word = expect_ident("'bound'");
    if (word != "bound") throw ParseError(cur_.pos, "expected 'bound:'");
    expect(Tok::Colon, "expected ':' after 'bound'");
    ExprPtr bound = expression();
    expect(Tok::RBrace, "expected '}'");
    return {inv, bound};
  }

  // Precedence, loosest first: <=>  =>  or  and  comparisons  + -  * div mod /
  // with prefix - and not binding tightest.
  ExprPtr expression() { return iff_expr(); }

  ExprPtr iff_expr() {
    ExprPtr lhs = implies_expr();
    while (cur_.kind == Tok::Iff) {
      SourcePos pos = cur_.pos;
      advance();
      lhs = mk_conn(BoolConn::Iff, lhs, implies_expr(), pos);
    }
    return lhs;
  }

  ExprPtr implies_expr() {
    ExprPtr lhs = or_expr();
    if (cur_.kind == Tok::Implies) {
      SourcePos pos = cur_.pos;
      advance();
      return mk_conn(BoolConn::Implies, lhs, implies_expr(), pos);  // right-assoc
    }
    return lhs;
  }

  ExprPtr or_expr() {
    ExprPtr lhs = and_expr();
    while (cur_.kind == Tok::KwOr) {
      SourcePos pos = cur_.pos;
      advance();
      lhs = mk_conn(BoolConn::Or, lhs, and_expr(), pos);
    }
    return lhs;
  }

  ExprPtr and_expr() {
    ExprPtr lhs = cmp_expr();
    while (cur_.kind == Tok::KwAnd) {
      SourcePos pos = cur_.pos;
      advance();
      lhs = mk_conn(BoolConn::And, lhs, cmp_expr(), pos);
    }
    return lhs;
  }

  ExprPtr cmp_expr() {
    ExprPtr lhs = add_expr();
    CmpOp op;
    switch (cur_.kind) {
      case Tok::Eq: op = CmpOp::Eq; break;
      case Tok::Ne: op = CmpOp::Ne; break;
      case Tok::Lt: op = CmpOp::Lt; break;
      case Tok::Le: op = CmpOp::Le; break;
      case Tok::Gt: op = CmpOp::Gt; break;
      case Tok::Ge: op = CmpOp::Ge; break;
      default: return lhs;
    }
    SourcePos pos = cur_.pos;
    advance();
    return mk_cmp(op, lhs, add_expr(), pos);  // non-associative
  }

  ExprPtr add_expr() {
    ExprPtr lhs = mul_expr();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      ArithOp op = cur_.kind == Tok::Plus ? ArithOp::Add : ArithOp::Sub;
      SourcePos pos = cur_.pos;
      advance();
      lhs = mk_arith(op, lhs, mul_expr(), pos);
    }
    return lhs;
  }

  ExprPtr mul_expr() {
    ExprPtr lhs = unary_expr();
    for (;;) {
      ArithOp op;
      switch (cur_.kind) {
        case Tok::Star: op = ArithOp::Mul; break;
        case Tok::KwDiv: op = ArithOp::Div; break;
        case Tok::KwMod: op = ArithOp::Mod; break;
        case Tok::Slash:
          if (!allow_rat_div_)
            throw ParseError(cur_.pos, "'/' is not a program operator; use 'div'");
          op = ArithOp::RatDiv;
          break;
        default: return lhs;
      }
      SourcePos pos = cur_.pos;
      advance();
      lhs = mk_arith(op, lhs, unary_expr(), pos);
    }
  }

  ExprPtr unary_expr() {
    SourcePos pos = cur_.pos;
    if (cur_.kind == Tok::Minus) {
      advance();
      return mk_neg(unary_expr(), pos);
    }
    if (cur_.kind == Tok::KwNot) {
      advance();
      return mk_not(unary_expr(), pos);
    }
    return atom();
  }

  ExprPtr atom() {
    SourcePos pos = cur_.pos;
    switch (cur_.kind) {
      case Tok::Number: {
        Int value(cur_.text);
        advance();
        return mk_int(std::move(value), pos);
      }
      case Tok::KwTrue:
        advance();
        return mk_bool(true, pos);
      case Tok::KwFalse:
        advance();
        return mk_bool(false, pos);
      case Tok::Ident: {
        std::string name = cur_.text;
        advance();
        return mk_var(std::move(name), pos);
      }
      case Tok::KwGcd: {
        advance();
        expect(Tok::LParen, "expected '(' after gcd");
        ExprPtr a = expression();
        expect(Tok::Comma, "expected ',' in gcd");
        ExprPtr b = expression();
        expect(Tok::RParen, "expected ')'");
        return mk_gcd(a, b, pos);
      }
      case Tok::KwAbs: {
        advance();
        expect(Tok::LParen, "expected '(' after abs");
        ExprPtr a = expression();
        expect(Tok::RParen, "expected ')'");
        return mk_abs(a, pos);
      }
      case Tok::LParen: {
        advance();
        ExprPtr e = expression();
        expect(Tok::RParen, "expected ')'");
        return e;
      }
      default:
        throw ParseError(cur_.pos, "expected an expression");
    }
  }

  Lexer lexer_;
  Token cur_;
  bool allow_rat_div_;
};

}  // namespace

Program parse_program(std::string_view text) {
  return Parser(text, /*allow_rat_div=*/false, 1).parse_program();
}

ExprPtr parse_expression(std::string_view text, bool allow_rat_div, int line_origin) {
  return Parser(text, allow_rat_div, line_origin).parse_whole_expression();
}

}  // namespace gclwb
