#pragma once

// Terms of the grid-model language: ground parse trees and templates
// (terms with unknowns and expressions) share one representation.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arcmdl/grid.hpp"

namespace arcmdl {

class PathError : public Error {
 public:
  using Error::Error;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

enum class Field : std::uint8_t { In, Out, Size, Color, Layers, Pos, Shape, I, J, Mask, Bits };

std::string_view field_name(Field f);

enum class Sort : std::uint8_t { Pair, Grid, Object, Shape, Vec, Mask, Nat, Color, Bits, Layers };

std::string_view sort_name(Sort s);

// Sort of the subterm reached through a field. A `layers[k]` step reaches
// an Object.
Sort field_sort(Field f);

struct PathStep {
  Field field;
  int index = 0;  // only meaningful for Field::Layers

  bool operator==(const PathStep&) const = default;
  auto operator<=>(const PathStep&) const = default;
};

class Path {
 public:
  Path() = default;
  explicit Path(std::vector<PathStep> steps) : steps_(std::move(steps)) {}

  // Dotted syntax: "in.layers[1].shape.size.i".
  static Path parse(std::string_view text);
  std::string to_string() const;

  const std::vector<PathStep>& steps() const { return steps_; }
  bool empty() const { return steps_.empty(); }
  std::size_t size() const { return steps_.size(); }
  const PathStep& back() const { return steps_.back(); }

  Path child(Field f) const;
  Path layer(int k) const;
  Path parent() const;
  Path concat(const Path& rest) const;
  // Drops a leading in/out step, if any.
  Path relative() const;
  bool starts_with(const Path& prefix) const;

  // Sort reached by this path from a Grid root (or a Pair root when the
  // path starts with in/out).
  Sort sort() const;

  bool operator==(const Path&) const = default;
  auto operator<=>(const Path&) const = default;

 private:
  std::vector<PathStep> steps_;
};

enum class Ctor : std::uint8_t {
  InOut,
  Grid,
  PosShape,
  Point,
  Rectangle,
  Vec,
  Bitmap,
  Full,
  Border,
  EvenCheckboard,
  OddCheckboard,
  PlusCross,
  TimesCross,
};

std::string_view ctor_name(Ctor c);
std::optional<Ctor> ctor_from_name(std::string_view name);
Sort ctor_sort(Ctor c);
const std::vector<Field>& ctor_fields(Ctor c);
bool is_mask_ctor(Ctor c);
MaskKind mask_kind(Ctor c);
Ctor mask_ctor(MaskKind k);

class Term {
 public:
  enum class Kind : std::uint8_t { Ctor, Nat, Color, Bits, List, Unknown, Var, Zero, Plus, Minus };

  Term();  // unknown

  static Term unknown();
  static Term nat(int n);
  static Term color(arcmdl::Color c);
  static Term bits(arcmdl::Bitmap b);
  static Term list(std::vector<Term> items);
  static Term make(arcmdl::Ctor c, std::vector<Term> args);
  static Term var(arcmdl::Path p);
  static Term zero();
  static Term plus(Term a, Term b);
  static Term minus(Term a, Term b);

  static Term vec(Term i, Term j);
  static Term vec(int i, int j);
  static Term grid(Term size, Term color, std::vector<Term> layers);
  static Term pos_shape(Term pos, Term shape);
  static Term point(Term color);
  static Term rectangle(Term size, Term color, Term mask);
  static Term mask(MaskKind k);
  static Term bitmap_mask(arcmdl::Bitmap b);
  static Term in_out(Term in, Term out);

  Kind kind() const { return node_->kind; }
  bool is_unknown() const { return kind() == Kind::Unknown; }
  bool is_expr() const;
  bool is_ctor(arcmdl::Ctor c) const { return kind() == Kind::Ctor && node_->ctor == c; }
  bool is_ground() const { return node_->ground; }
  bool has_expr() const { return node_->has_expr; }

  arcmdl::Ctor ctor() const;
  int nat_value() const;
  arcmdl::Color color_value() const;
  const arcmdl::Bitmap& bits_value() const;
  const arcmdl::Path& var_path() const;
  // Constructor arguments, list items, or arithmetic operands.
  const std::vector<Term>& args() const { return node_->args; }

  const Term& field(Field f) const;
  Term with_field(Field f, Term t) const;
  Term with_arg(std::size_t k, Term t) const;

  std::string to_string() const;

  bool operator==(const Term& other) const;

 private:
  struct Node {
    Kind kind = Kind::Unknown;
    arcmdl::Ctor ctor = arcmdl::Ctor::Full;
    int nat = 0;
    arcmdl::Color color = arcmdl::Color::Black;
    std::shared_ptr<const arcmdl::Bitmap> bits;
    arcmdl::Path path;
    std::vector<Term> args;
    bool ground = false;
    bool has_expr = false;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term from_node(Node n);

  std::shared_ptr<const Node> node_;
};

// A ground term.
using ParseTree = Term;

struct TaskModel {
  Term input;
  Term output;

  Term to_term() const { return Term::in_out(input, output); }
  static TaskModel from_term(const Term& t);
  std::string to_string() const { return to_term().to_string(); }
  bool operator==(const TaskModel&) const = default;
};

// ---- Paths in terms ----

// Subterm at `p`; throws PathError.
const Term& resolve(const Term& t, const Path& p);
const Term* try_resolve(const Term& t, const Path& p);

// Replace the subterm at `p` by `r`.
Term subst(const Term& t, const Path& p, const Term& r);
// Insert an object before position k of the layer list, where `p` ends
// with layers[k]; k may equal the list length.
Term insert_layer(const Term& t, const Path& p, const Term& object);

// Renumber Var paths `layers[k]...` with k >= from by adding `by`.
Term shift_layer_vars(const Term& t, int from, int by);

// Depth-first left-to-right paths of unknowns.
std::vector<Path> unknown_paths(const Term& t);

struct PathEntry {
  Path path;
  Sort sort;
  Term term;
};
// Every subterm of a template (list nodes excluded) in depth-first
// left-to-right order, starting with the root at the empty path.
std::vector<PathEntry> enumerate(const Term& t, Sort root_sort);

int node_count(const Term& t);

// ---- Matching and application ----

// Whether `pattern` matches ground `data`. Throws ModelError if the
// pattern contains an expression.
bool matches(const Term& data, const Term& pattern);

// Value of a natural-number expression in an environment.
int eval_expr(const Term& e, const Term* env);

// Replace expressions by their values. Throws EvalError when a variable is
// undefined in the environment or arithmetic goes negative.
Term apply_model(const Term& m, const Term* env);

// ---- Well-formedness ----

struct SignatureEntry {
  Path path;
  Sort sort;
};
using Signature = std::vector<SignatureEntry>;

// Paths available in parse trees of `input_model`, in enumeration order.
Signature env_signature(const Term& input_model);

// Throws ModelError if `t` is ill-typed at sort `s` or uses a variable
// outside `env` (no variables allowed when env is null).
void check_well_formed(const Term& t, Sort s, const Signature* env);
void check_well_formed(const TaskModel& m);

// ---- Text syntax ----

Term parse_term(std::string_view text);

}  // namespace arcmdl
