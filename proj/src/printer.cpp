#include "gclwb/printer.hpp"

#include <sstream>

namespace gclwb {
namespace {

// Binding strength mirrors the parser: <=> 0, => 1, or 2, and 3,
// comparisons 4, additive 5, multiplicative 6, prefix 7, atoms 8.
int level_of(const Expr& e) {
  return std::visit(
      [](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Conn>) {
          switch (x.op) {
            case BoolConn::Iff: return 0;
            case BoolConn::Implies: return 1;
            case BoolConn::Or: return 2;
            case BoolConn::And: return 3;
          }
          return 0;
        } else if constexpr (std::is_same_v<T, Cmp>) {
          return 4;
        } else if constexpr (std::is_same_v<T, Arith>) {
          return x.op == ArithOp::Add || x.op == ArithOp::Sub ? 5 : 6;
        } else if constexpr (std::is_same_v<T, Neg> || std::is_same_v<T, Not>) {
          return 7;
        } else {
          return 8;
        }
      },
      e.node);
}

const char* arith_sym(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Sub: return "-";
    case ArithOp::Mul: return "*";
    case ArithOp::Div: return "div";
    case ArithOp::Mod: return "mod";
    case ArithOp::RatDiv: return "/";
  }
  return "?";
}

const char* cmp_sym(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

const char* conn_sym(BoolConn op) {
  switch (op) {
    case BoolConn::And: return "and";
    case BoolConn::Or: return "or";
    case BoolConn::Implies: return "=>";
    case BoolConn::Iff: return "<=>";
  }
  return "?";
}

void render(const ExprPtr& e, int min_level, std::string& out) {
  int lvl = level_of(*e);
  bool parens = lvl < min_level;
  if (parens) out += '(';
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          out += x.value.str();
        } else if constexpr (std::is_same_v<T, BoolLit>) {
          out += x.value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, Var>) {
          out += x.name;
        } else if constexpr (std::is_same_v<T, Neg>) {
          out += '-';
          render(x.arg, 7, out);
        } else if constexpr (std::is_same_v<T, Not>) {
          out += "not ";
          render(x.arg, 7, out);
        } else if constexpr (std::is_same_v<T, Arith>) {
          render(x.lhs, lvl, out);
          out += ' ';
          out += arith_sym(x.op);
          out += ' ';
          render(x.rhs, lvl + 1, out);  // left-associative
        } else if constexpr (std::is_same_v<T, Cmp>) {
          render(x.lhs, lvl + 1, out);  // non-associative
          out += ' ';
          out += cmp_sym(x.op);
          out += ' ';
          render(x.rhs, lvl + 1, out);
        } else if constexpr (std::is_same_v<T, Conn>) {
          bool right_assoc = x.op == BoolConn::Implies;
          render(x.lhs, right_assoc ? lvl + 1 : lvl, out);
          out += ' ';
          out += conn_sym(x.op);
          out += ' ';
          render(x.rhs, right_assoc ? lvl : lvl + 1, out);
        } else if constexpr (std::is_same_v<T, Gcd>) {
          out += "gcd(";
          render(x.lhs, 0, out);
          out += ", ";
          render(x.rhs, 0, out);
          out += ')';
        } else {
          static_assert(std::is_same_v<T, Abs>);
          out += "abs(";
          render(x.arg, 0, out);
          out += ')';
        }
      },
      e->node);
  if (parens) out += ')';
}

void render_stmt(const StmtPtr& s, int indent, std::string& out);

void render_arms(const std::vector<GuardedCommand>& arms, bool first_inline, int indent,
                 std::string& out) {
  std::string pad(indent, ' ');
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (i == 0 && first_inline) {
      // keyword line already carries "if " / "do "
    } else {
      out += pad;
      out += i == 0 ? "   " : "[] ";
    }
    render(arms[i].guard, 0, out);
    out += " ->\n";
    render_stmt(arms[i].body, indent + 5, out);
    out += '\n';
  }
}

void render_stmt(const StmtPtr& s, int indent, std::string& out) {
  std::string pad(indent, ' ');
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Skip>) {
          out += pad + "skip";
        } else if constexpr (std::is_same_v<T, AbortStmt>) {
          out += pad + "abort";
        } else if constexpr (std::is_same_v<T, Assign>) {
          out += pad + x.target + " := ";
          render(x.value, 0, out);
        } else if constexpr (std::is_same_v<T, MultiAssign>) {
          out += pad;
          for (std::size_t i = 0; i < x.targets.size(); ++i) {
            if (i) out += ", ";
            out += x.targets[i];
          }
          out += " := ";
          for (std::size_t i = 0; i < x.values.size(); ++i) {
            if (i) out += ", ";
            render(x.values[i], 0, out);
          }
        } else if constexpr (std::is_same_v<T, Seq>) {
          for (std::size_t i = 0; i < x.steps.size(); ++i) {
            if (i) out += ";\n";
            render_stmt(x.steps[i], indent, out);
          }
        } else if constexpr (std::is_same_v<T, IfFi>) {
          out += pad + "if ";
          render_arms(x.arms, /*first_inline=*/true, indent, out);
          out += pad + "fi";
        } else {
          static_assert(std::is_same_v<T, DoOd>);
          if (x.spec) {
            out += pad + "do { inv: ";
            render(x.spec->invariant, 0, out);
            out += ", bound: ";
            render(x.spec->bound, 0, out);
            out += " }\n";
            render_arms(x.arms, /*first_inline=*/false, indent, out);
          } else {
            out += pad + "do ";
            render_arms(x.arms, /*first_inline=*/true, indent, out);
          }
          out += pad + "od";
        }
      },
      s->node);
}

}  // namespace

std::string print_expr(const ExprPtr& e) {
  std::string out;
  render(e, 0, out);
  return out;
}

std::string print_stmt(const StmtPtr& s, int indent) {
  std::string out;
  render_stmt(s, indent, out);
  return out;
}

std::string print_program(const Program& p) {
  std::string out = "var ";
  for (std::size_t i = 0; i < p.vars.size(); ++i) {
    if (i) out += ", ";
    out += p.vars[i];
  }
  out += ";\n";
  if (p.pre) {
    out += "{ pre: " + print_expr(p.pre) + " }\n";
    out += "{ post: " + print_expr(p.post) + " }\n";
  }
  out += print_stmt(p.body, 0);
  out += '\n';
  return out;
}

}  // namespace gclwb
