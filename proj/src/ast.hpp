// AST for AML models: expressions, statements, actors, and the main block,
// plus evaluation of expressions over integer/actor-id valuations.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace agc {

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

enum class BinOp { Add, Sub, Mul, Eq, Ne, Lt, Gt, And, Or };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Lit, Var, Self, Not, Bin };
  Kind kind = Kind::Lit;
  std::int64_t lit = 0;      // Kind::Lit
  std::string var;           // Kind::Var
  BinOp op = BinOp::Add;     // Kind::Bin
  ExprPtr lhs, rhs;          // Kind::Bin (lhs only for Kind::Not)

  static ExprPtr literal(std::int64_t v);
  static ExprPtr variable(std::string name);
  static ExprPtr self();
  static ExprPtr negate(ExprPtr e);
  static ExprPtr binary(BinOp op, ExprPtr l, ExprPtr r);
};

// Runtime value: either an integer or an actor identifier.
struct Value {
  bool is_id = false;
  std::int64_t num = 0;
  std::string id;

  static Value of_int(std::int64_t v) { return Value{false, v, {}}; }
  static Value of_id(std::string s) { return Value{true, 0, std::move(s)}; }
  bool truthy() const { return is_id || num != 0; }
  bool operator==(const Value& o) const {
    return is_id == o.is_id && num == o.num && id == o.id;
  }
};

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

struct Stmt;
using StmtList = std::vector<Stmt>;

struct Stmt {
  enum class Kind { Assign, NonDet, Cond, Send };
  Kind kind = Kind::Assign;
  // Assign / NonDet
  std::string var;
  ExprPtr expr;                  // Assign
  std::vector<ExprPtr> choices;  // NonDet
  // Cond
  ExprPtr cond;
  StmtList then_branch;
  StmtList else_branch;
  // Send: target is an actor id or the reserved word "self"
  std::string target;
  std::string message;
  // Source position (for diagnostics)
  int line = 0, col = 0;
};

// ---------------------------------------------------------------------------
// Actors and models
// ---------------------------------------------------------------------------

struct Method {
  std::string name;
  StmtList body;
  int line = 0, col = 0;
};

struct ActorDef {
  std::string id;
  std::int64_t capacity = 0;
  std::vector<std::string> vars;  // declared state variables (self implicit)
  std::vector<Method> methods;
  int line = 0, col = 0;

  const Method* find_method(const std::string& name) const;
};

struct MainSend {
  std::string target;
  std::string message;
  int line = 0, col = 0;
};

struct Model {
  std::vector<ActorDef> actors;
  std::vector<MainSend> main_sends;

  const ActorDef* find_actor(const std::string& id) const;
};

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

struct Diagnostic {
  std::string message;
  int line = 0, col = 0;
};

std::string format_diagnostics(const std::vector<Diagnostic>& ds);

// Thrown by parse_model on syntax errors and by eval_expr on unbound names.
struct AmlError {
  std::string message;
  int line = 0, col = 0;
  std::string what() const;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Parse AML source text (both `=` and `:=` accepted for assignment, `//`
// comments). Throws AmlError on syntax errors.
Model parse_model(const std::string& source);

// Well-formedness per the AML rules. `allow_unknown` optionally names one
// actor id that may appear as a send target without being declared (the
// missing component of an open system). Returns an empty list when ok.
std::vector<Diagnostic> check_wellformed(const Model& m,
                                         const std::string& allow_unknown = "");

// All send-target ids (excluding `self`) that are not declared actors.
std::vector<std::string> unknown_receivers(const Model& m);

// Evaluate an expression. `env` pairs variable names with values; `self_id`
// is the owning actor. Throws AmlError on unbound variables.
Value eval_expr(const Expr& e,
                const std::vector<std::pair<std::string, Value>>& env,
                const std::string& self_id);

// Canonical source form; parse(pretty_print(parse(s))) == parse(s).
std::string pretty_print(const Model& m);
std::string pretty_print(const ActorDef& a);

}  // namespace agc
