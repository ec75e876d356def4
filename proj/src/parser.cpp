// Recursive-descent parser, well-formedness checker, expression evaluator,
// and pretty printer for AML.
#include "ast.hpp"

#include <cctype>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace agc {

ExprPtr Expr::literal(std::int64_t v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Lit;
  e->lit = v;
  return e;
}
ExprPtr Expr::variable(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Var;
  e->var = std::move(name);
  return e;
}
ExprPtr Expr::self() {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Self;
  return e;
}
ExprPtr Expr::negate(ExprPtr x) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Not;
  e->lhs = std::move(x);
  return e;
}
ExprPtr Expr::binary(BinOp op, ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Bin;
  e->op = op;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

const Method* ActorDef::find_method(const std::string& name) const {
  for (const auto& m : methods)
    if (m.name == name) return &m;
  return nullptr;
}

const ActorDef* Model::find_actor(const std::string& id) const {
  for (const auto& a : actors)
    if (a.id == id) return &a;
  return nullptr;
}

std::string AmlError::what() const {
  std::ostringstream os;
  os << "line " << line << ":" << col << ": " << message;
  return os.str();
}

std::string format_diagnostics(const std::vector<Diagnostic>& ds) {
  std::ostringstream os;
  for (const auto& d : ds)
    os << "line " << d.line << ":" << d.col << ": " << d.message << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  Ident, Number, LBrace, RBrace, LParen, RParen, Semi, Comma, Bang,
  Assign,      // '=' or ':='
  Question,    // '?'
  Plus, Minus, Star, EqEq, NotEq, Lt, Gt, AndAnd, OrOr, End
};

struct Token {
  Tok kind;
  std::string text;
  std::int64_t num = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& cur() const { return cur_; }

  void advance() {
    skip_ws();
    cur_.line = line_;
    cur_.col = col_;
    if (pos_ >= src_.size()) {
      cur_.kind = Tok::End;
      cur_.text.clear();
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        bump();
      cur_.kind = Tok::Ident;
      cur_.text = src_.substr(start, pos_ - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        bump();
      cur_.kind = Tok::Number;
      cur_.text = src_.substr(start, pos_ - start);
      cur_.num = std::stoll(cur_.text);
      return;
    }
    bump();
    switch (c) {
      case '{': cur_.kind = Tok::LBrace; return;
      case '}': cur_.kind = Tok::RBrace; return;
      case '(': cur_.kind = Tok::LParen; return;
      case ')': cur_.kind = Tok::RParen; return;
      case ';': cur_.kind = Tok::Semi; return;
      case ',': cur_.kind = Tok::Comma; return;
      case '?': cur_.kind = Tok::Question; return;
      case '+': cur_.kind = Tok::Plus; return;
      case '-': cur_.kind = Tok::Minus; return;
      case '*': cur_.kind = Tok::Star; return;
      case ':':
        if (peek() == '=') { bump(); cur_.kind = Tok::Assign; return; }
        fail("unexpected ':'");
      case '=':
        if (peek() == '=') { bump(); cur_.kind = Tok::EqEq; return; }
        cur_.kind = Tok::Assign;
        return;
      case '!':
        if (peek() == '=') { bump(); cur_.kind = Tok::NotEq; return; }
        cur_.kind = Tok::Bang;
        return;
      case '<': cur_.kind = Tok::Lt; return;
      case '>': cur_.kind = Tok::Gt; return;
      case '&':
        if (peek() == '&') { bump(); cur_.kind = Tok::AndAnd; return; }
        fail("unexpected '&'");
      case '|':
        if (peek() == '|') { bump(); cur_.kind = Tok::OrOr; return; }
        fail("unexpected '|'");
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw AmlError{msg, cur_.line, cur_.col};
  }

 private:
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  void bump() {
    if (src_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
    ++pos_;
  }

  void skip_ws() {
    for (;;) {
      while (pos_ < src_.size() &&
             std::isspace(static_cast<unsigned char>(src_[pos_])))
        bump();
      if (pos_ + 1 < src_.size() && src_[pos_] == '/' && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
        continue;
      }
      break;
    }
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token cur_;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  Model parse() {
    Model m;
    while (is_kw("actor")) m.actors.push_back(parse_actor());
    if (m.actors.empty()) lex_.fail("expected 'actor'");
    expect_kw("main");
    expect(Tok::LBrace, "'{'");
    while (!at(Tok::RBrace)) {
      MainSend s;
      s.line = lex_.cur().line;
      s.col = lex_.cur().col;
      s.target = expect_ident("actor id");
      expect(Tok::Bang, "'!'");
      s.message = expect_ident("message name");
      expect(Tok::Semi, "';'");
      m.main_sends.push_back(std::move(s));
    }
    expect(Tok::RBrace, "'}'");
    if (!at(Tok::End)) lex_.fail("unexpected trailing input");
    return m;
  }

 private:
  bool at(Tok k) const { return lex_.cur().kind == k; }
  bool is_kw(const char* kw) const {
    return at(Tok::Ident) && lex_.cur().text == kw;
  }

  void expect(Tok k, const char* what) {
    if (!at(k)) lex_.fail(std::string("expected ") + what);
    lex_.advance();
  }

  void expect_kw(const char* kw) {
    if (!is_kw(kw)) lex_.fail(std::string("expected '") + kw + "'");
    lex_.advance();
  }

  std::string expect_ident(const char* what) {
    if (!at(Tok::Ident)) lex_.fail(std::string("expected ") + what);
    std::string s = lex_.cur().text;
    lex_.advance();
    return s;
  }

  ActorDef parse_actor() {
    ActorDef a;
    a.line = lex_.cur().line;
    a.col = lex_.cur().col;
    expect_kw("actor");
    a.id = expect_ident("actor id");
    expect(Tok::LParen, "'('");
    if (!at(Tok::Number)) lex_.fail("expected mailbox capacity");
    a.capacity = lex_.cur().num;
    lex_.advance();
    expect(Tok::RParen, "')'");
    expect(Tok::LBrace, "'{'");
    while (is_kw("int")) {
      lex_.advance();
      a.vars.push_back(expect_ident("variable name"));
      expect(Tok::Semi, "';'");
    }
    while (at(Tok::Ident)) {
      Method mtd;
      mtd.line = lex_.cur().line;
      mtd.col = lex_.cur().col;
      mtd.name = expect_ident("method name");
      expect(Tok::LBrace, "'{'");
      mtd.body = parse_stmts();
      expect(Tok::RBrace, "'}'");
      a.methods.push_back(std::move(mtd));
    }
    expect(Tok::RBrace, "'}'");
    return a;
  }

  StmtList parse_stmts() {
    StmtList out;
    while (!at(Tok::RBrace)) out.push_back(parse_stmt());
    return out;
  }

  Stmt parse_stmt() {
    Stmt s;
    s.line = lex_.cur().line;
    s.col = lex_.cur().col;
    if (is_kw("if")) {
      lex_.advance();
      s.kind = Stmt::Kind::Cond;
      expect(Tok::LParen, "'('");
      s.cond = parse_expr();
      expect(Tok::RParen, "')'");
      expect(Tok::LBrace, "'{'");
      s.then_branch = parse_stmts();
      expect(Tok::RBrace, "'}'");
      expect_kw("else");
      expect(Tok::LBrace, "'{'");
      s.else_branch = parse_stmts();
      expect(Tok::RBrace, "'}'");
      return s;
    }
    std::string name = is_kw("self") ? "self" : expect_ident("identifier");
    if (name == "self") lex_.advance();
    if (at(Tok::Bang)) {
      lex_.advance();
      s.kind = Stmt::Kind::Send;
      s.target = name;
      s.message = expect_ident("message name");
      expect(Tok::Semi, "';'");
      return s;
    }
    if (name == "self") lex_.fail("'self' cannot be assigned");
    expect(Tok::Assign, "'=' or ':='");
    s.var = name;
    if (at(Tok::Question)) {
      lex_.advance();
      s.kind = Stmt::Kind::NonDet;
      expect(Tok::LParen, "'('");
      s.choices.push_back(parse_expr());
      while (at(Tok::Comma)) {
        lex_.advance();
        s.choices.push_back(parse_expr());
      }
      expect(Tok::RParen, "')'");
    } else {
      s.kind = Stmt::Kind::Assign;
      s.expr = parse_expr();
    }
    expect(Tok::Semi, "';'");
    return s;
  }

  // Precedence (loosest to tightest): || ; && ; == != < > ; + - ; * ; unary !
  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_or() {
    ExprPtr e = parse_and();
    while (at(Tok::OrOr)) {
      lex_.advance();
      e = Expr::binary(BinOp::Or, e, parse_and());
    }
    return e;
  }

  ExprPtr parse_and() {
    ExprPtr e = parse_cmp();
    while (at(Tok::AndAnd)) {
      lex_.advance();
      e = Expr::binary(BinOp::And, e, parse_cmp());
    }
    return e;
  }

  ExprPtr parse_cmp() {
    ExprPtr e = parse_add();
    for (;;) {
      BinOp op;
      if (at(Tok::EqEq)) op = BinOp::Eq;
      else if (at(Tok::NotEq)) op = BinOp::Ne;
      else if (at(Tok::Lt)) op = BinOp::Lt;
      else if (at(Tok::Gt)) op = BinOp::Gt;
      else break;
      lex_.advance();
      e = Expr::binary(op, e, parse_add());
    }
    return e;
  }

  ExprPtr parse_add() {
    ExprPtr e = parse_mul();
    for (;;) {
      BinOp op;
      if (at(Tok::Plus)) op = BinOp::Add;
      else if (at(Tok::Minus)) op = BinOp::Sub;
      else break;
      lex_.advance();
      e = Expr::binary(op, e, parse_mul());
    }
    return e;
  }

  ExprPtr parse_mul() {
    ExprPtr e = parse_unary();
    while (at(Tok::Star)) {
      lex_.advance();
      e = Expr::binary(BinOp::Mul, e, parse_unary());
    }
    return e;
  }

  ExprPtr parse_unary() {
    if (at(Tok::Bang)) {
      lex_.advance();
      return Expr::negate(parse_unary());
    }
    if (at(Tok::Minus)) {
      lex_.advance();
      return Expr::binary(BinOp::Sub, Expr::literal(0), parse_unary());
    }
    if (at(Tok::Number)) {
      std::int64_t v = lex_.cur().num;
      lex_.advance();
      return Expr::literal(v);
    }
    if (at(Tok::LParen)) {
      lex_.advance();
      ExprPtr e = parse_expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (at(Tok::Ident)) {
      std::string name = lex_.cur().text;
      lex_.advance();
      return name == "self" ? Expr::self() : Expr::variable(name);
    }
    lex_.fail("expected expression");
  }

  Lexer lex_;
};

// ---------------------------------------------------------------------------
// Well-formedness helpers
// ---------------------------------------------------------------------------

void walk_sends(const StmtList& body,
                const std::function<void(const Stmt&)>& fn) {
  for (const auto& s : body) {
    if (s.kind == Stmt::Kind::Send) fn(s);
    if (s.kind == Stmt::Kind::Cond) {
      walk_sends(s.then_branch, fn);
      walk_sends(s.else_branch, fn);
    }
  }
}

void walk_exprs(const StmtList& body,
                const std::function<void(const Expr&, const Stmt&)>& fn) {
  std::function<void(const Expr&, const Stmt&)> expr_rec =
      [&](const Expr& e, const Stmt& at) {
        fn(e, at);
        if (e.lhs) expr_rec(*e.lhs, at);
        if (e.rhs) expr_rec(*e.rhs, at);
      };
  for (const auto& s : body) {
    if (s.expr) expr_rec(*s.expr, s);
    for (const auto& c : s.choices) expr_rec(*c, s);
    if (s.cond) expr_rec(*s.cond, s);
    if (s.kind == Stmt::Kind::Cond) {
      walk_exprs(s.then_branch, fn);
      walk_exprs(s.else_branch, fn);
    }
  }
}

}  // namespace

Model parse_model(const std::string& source) {
  Parser p(source);
  return p.parse();
}

std::vector<std::string> unknown_receivers(const Model& m) {
  std::set<std::string> known, unknown;
  for (const auto& a : m.actors) known.insert(a.id);
  auto note = [&](const std::string& t) {
    if (t != "self" && !known.count(t)) unknown.insert(t);
  };
  for (const auto& a : m.actors)
    for (const auto& mtd : a.methods)
      walk_sends(mtd.body, [&](const Stmt& s) { note(s.target); });
  for (const auto& s : m.main_sends) note(s.target);
  return {unknown.begin(), unknown.end()};
}

std::vector<Diagnostic> check_wellformed(const Model& m,
                                         const std::string& allow_unknown) {
  std::vector<Diagnostic> ds;
  auto diag = [&](const std::string& msg, int line, int col) {
    ds.push_back(Diagnostic{msg, line, col});
  };

  std::unordered_map<std::string, const ActorDef*> by_id;
  for (const auto& a : m.actors) {
    if (!by_id.emplace(a.id, &a).second)
      diag("duplicate actor id '" + a.id + "'", a.line, a.col);
  }

  // Whether a send of `msg` to `target` (from actor `from`, may be null for
  // main) is receivable. Capacity-0 actors without methods are dummies and
  // accept (and drop) everything.
  auto check_send = [&](const std::string& from, const std::string& target,
                        const std::string& msg, int line, int col) {
    std::string recv = target;
    if (recv == "self") recv = from;
    if (recv == allow_unknown && !by_id.count(recv)) return;
    auto it = by_id.find(recv);
    if (it == by_id.end()) {
      diag("send to undeclared actor '" + recv + "'", line, col);
      return;
    }
    const ActorDef* r = it->second;
    if (r->capacity == 0 && r->methods.empty()) return;  // dummy actor
    if (!r->find_method(msg))
      diag("receiver '" + recv + "' has no method '" + msg + "'", line, col);
  };

  for (const auto& a : m.actors) {
    std::unordered_set<std::string> vars;
    for (const auto& v : a.vars) {
      if (v == "self") diag("variable may not be named 'self'", a.line, a.col);
      if (!vars.insert(v).second)
        diag("duplicate variable '" + v + "' in actor '" + a.id + "'", a.line,
             a.col);
    }
    std::unordered_set<std::string> mtds;
    for (const auto& mtd : a.methods) {
      if (!mtds.insert(mtd.name).second)
        diag("duplicate method '" + mtd.name + "' in actor '" + a.id + "'",
             mtd.line, mtd.col);
      walk_sends(mtd.body, [&](const Stmt& s) {
        check_send(a.id, s.target, s.message, s.line, s.col);
      });
      walk_exprs(mtd.body, [&](const Expr& e, const Stmt& at) {
        if (e.kind == Expr::Kind::Var && !vars.count(e.var))
          diag("undeclared variable '" + e.var + "' in actor '" + a.id + "'",
               at.line, at.col);
      });
      // Assignment targets must be declared too.
      std::function<void(const StmtList&)> check_targets =
          [&](const StmtList& body) {
            for (const auto& s : body) {
              if ((s.kind == Stmt::Kind::Assign ||
                   s.kind == Stmt::Kind::NonDet) &&
                  !vars.count(s.var))
                diag("undeclared variable '" + s.var + "' in actor '" + a.id +
                         "'",
                     s.line, s.col);
              if (s.kind == Stmt::Kind::Cond) {
                check_targets(s.then_branch);
                check_targets(s.else_branch);
              }
            }
          };
      check_targets(mtd.body);
    }
  }

  for (const auto& s : m.main_sends) {
    if (s.target == "self")
      diag("main block may not send to 'self'", s.line, s.col);
    else
      check_send("", s.target, s.message, s.line, s.col);
  }
  return ds;
}

Value eval_expr(const Expr& e,
                const std::vector<std::pair<std::string, Value>>& env,
                const std::string& self_id) {
  switch (e.kind) {
    case Expr::Kind::Lit:
      return Value::of_int(e.lit);
    case Expr::Kind::Self:
      return Value::of_id(self_id);
    case Expr::Kind::Var: {
      for (const auto& [name, v] : env)
        if (name == e.var) return v;
      throw AmlError{"unbound variable '" + e.var + "'", 0, 0};
    }
    case Expr::Kind::Not:
      return Value::of_int(eval_expr(*e.lhs, env, self_id).truthy() ? 0 : 1);
    case Expr::Kind::Bin: {
      Value l = eval_expr(*e.lhs, env, self_id);
      if (e.op == BinOp::And)
        return Value::of_int(
            l.truthy() && eval_expr(*e.rhs, env, self_id).truthy() ? 1 : 0);
      if (e.op == BinOp::Or)
        return Value::of_int(
            l.truthy() || eval_expr(*e.rhs, env, self_id).truthy() ? 1 : 0);
      Value r = eval_expr(*e.rhs, env, self_id);
      switch (e.op) {
        case BinOp::Eq: return Value::of_int(l == r ? 1 : 0);
        case BinOp::Ne: return Value::of_int(l == r ? 0 : 1);
        default: break;
      }
      if (l.is_id || r.is_id)
        throw AmlError{"arithmetic on actor identifiers", 0, 0};
      switch (e.op) {
        case BinOp::Add: return Value::of_int(l.num + r.num);
        case BinOp::Sub: return Value::of_int(l.num - r.num);
        case BinOp::Mul: return Value::of_int(l.num * r.num);
        case BinOp::Lt: return Value::of_int(l.num < r.num ? 1 : 0);
        case BinOp::Gt: return Value::of_int(l.num > r.num ? 1 : 0);
        default: break;
      }
    }
  }
  throw AmlError{"unreachable expression kind", 0, 0};
}

// ---------------------------------------------------------------------------
// Pretty printer
// ---------------------------------------------------------------------------

namespace {

void print_expr(std::ostream& os, const Expr& e);

const char* op_text(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Gt: return ">";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

void print_expr(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Lit: os << e.lit; break;
    case Expr::Kind::Var: os << e.var; break;
    case Expr::Kind::Self: os << "self"; break;
    case Expr::Kind::Not:
      os << "!(";
      print_expr(os, *e.lhs);
      os << ")";
      break;
    case Expr::Kind::Bin:
      os << "(";
      print_expr(os, *e.lhs);
      os << " " << op_text(e.op) << " ";
      print_expr(os, *e.rhs);
      os << ")";
      break;
  }
}

void print_stmts(std::ostream& os, const StmtList& body, int indent) {
  std::string pad(indent, ' ');
  for (const auto& s : body) {
    switch (s.kind) {
      case Stmt::Kind::Assign:
        os << pad << s.var << " = ";
        print_expr(os, *s.expr);
        os << ";\n";
        break;
      case Stmt::Kind::NonDet: {
        os << pad << s.var << " = ?(";
        for (size_t i = 0; i < s.choices.size(); ++i) {
          if (i) os << ", ";
          print_expr(os, *s.choices[i]);
        }
        os << ");\n";
        break;
      }
      case Stmt::Kind::Cond:
        os << pad << "if (";
        print_expr(os, *s.cond);
        os << ") {\n";
        print_stmts(os, s.then_branch, indent + 2);
        os << pad << "} else {\n";
        print_stmts(os, s.else_branch, indent + 2);
        os << pad << "}\n";
        break;
      case Stmt::Kind::Send:
        os << pad << s.target << "!" << s.message << ";\n";
        break;
    }
  }
}

void print_actor(std::ostream& os, const ActorDef& a) {
  os << "actor " << a.id << "(" << a.capacity << ") {\n";
  for (const auto& v : a.vars) os << "  int " << v << ";\n";
  for (const auto& m : a.methods) {
    os << "  " << m.name << " {\n";
    print_stmts(os, m.body, 4);
    os << "  }\n";
  }
  os << "}\n";
}

}  // namespace

std::string pretty_print(const ActorDef& a) {
  std::ostringstream os;
  print_actor(os, a);
  return os.str();
}

std::string pretty_print(const Model& m) {
  std::ostringstream os;
  for (const auto& a : m.actors) {
    print_actor(os, a);
    os << "\n";
  }
  os << "main {\n";
  for (const auto& s : m.main_sends)
    os << "  " << s.target << "!" << s.message << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace agc
