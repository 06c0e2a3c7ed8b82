#include "arcmdl/term.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

namespace arcmdl {

// ---- Fields, sorts, constructors ----

namespace {

struct FieldInfo {
  Field field;
  std::string_view name;
  Sort sort;
};

constexpr std::array<FieldInfo, 11> kFields = {{
    {Field::In, "in", Sort::Grid},
    {Field::Out, "out", Sort::Grid},
    {Field::Size, "size", Sort::Vec},
    {Field::Color, "color", Sort::Color},
    {Field::Layers, "layers", Sort::Object},
    {Field::Pos, "pos", Sort::Vec},
    {Field::Shape, "shape", Sort::Shape},
    {Field::I, "i", Sort::Nat},
    {Field::J, "j", Sort::Nat},
    {Field::Mask, "mask", Sort::Mask},
    {Field::Bits, "bitmap", Sort::Bits},
}};

std::optional<Field> field_from_name(std::string_view name) {
  for (const auto& f : kFields)
    if (f.name == name) return f.field;
  return std::nullopt;
}

constexpr std::array<std::string_view, 13> kCtorNames = {
    "InOut",          "Grid",      "PosShape",  "Point",         "Rectangle",
    "Vec",            "Bitmap",    "Full",      "Border",        "EvenCheckboard",
    "OddCheckboard",  "PlusCross", "TimesCross",
};

}  // namespace

std::string_view field_name(Field f) { return kFields[static_cast<std::size_t>(f)].name; }

Sort field_sort(Field f) { return kFields[static_cast<std::size_t>(f)].sort; }

std::string_view sort_name(Sort s) {
  switch (s) {
    case Sort::Pair: return "Pair";
    case Sort::Grid: return "Grid";
    case Sort::Object: return "Object";
    case Sort::Shape: return "Shape";
    case Sort::Vec: return "Vector";
    case Sort::Mask: return "Mask";
    case Sort::Nat: return "Nat";
    case Sort::Color: return "Color";
    case Sort::Bits: return "Bitmap";
    case Sort::Layers: return "Layers";
  }
  return "?";
}

std::string_view ctor_name(Ctor c) { return kCtorNames[static_cast<std::size_t>(c)]; }

std::optional<Ctor> ctor_from_name(std::string_view name) {
  for (std::size_t k = 0; k < kCtorNames.size(); ++k)
    if (kCtorNames[k] == name) return static_cast<Ctor>(k);
  return std::nullopt;
}

Sort ctor_sort(Ctor c) {
  switch (c) {
    case Ctor::InOut: return Sort::Pair;
    case Ctor::Grid: return Sort::Grid;
    case Ctor::PosShape: return Sort::Object;
    case Ctor::Point:
    case Ctor::Rectangle: return Sort::Shape;
    case Ctor::Vec: return Sort::Vec;
    default: return Sort::Mask;
  }
}

const std::vector<Field>& ctor_fields(Ctor c) {
  static const std::vector<Field> in_out{Field::In, Field::Out};
  static const std::vector<Field> grid{Field::Size, Field::Color, Field::Layers};
  static const std::vector<Field> pos_shape{Field::Pos, Field::Shape};
  static const std::vector<Field> point{Field::Color};
  static const std::vector<Field> rectangle{Field::Size, Field::Color, Field::Mask};
  static const std::vector<Field> vec{Field::I, Field::J};
  static const std::vector<Field> bitmap{Field::Bits};
  static const std::vector<Field> none{};
  switch (c) {
    case Ctor::InOut: return in_out;
    case Ctor::Grid: return grid;
    case Ctor::PosShape: return pos_shape;
    case Ctor::Point: return point;
    case Ctor::Rectangle: return rectangle;
    case Ctor::Vec: return vec;
    case Ctor::Bitmap: return bitmap;
    default: return none;
  }
}

bool is_mask_ctor(Ctor c) { return ctor_sort(c) == Sort::Mask; }

MaskKind mask_kind(Ctor c) {
  switch (c) {
    case Ctor::Bitmap: return MaskKind::Bitmap;
    case Ctor::Full: return MaskKind::Full;
    case Ctor::Border: return MaskKind::Border;
    case Ctor::EvenCheckboard: return MaskKind::EvenCheckboard;
    case Ctor::OddCheckboard: return MaskKind::OddCheckboard;
    case Ctor::PlusCross: return MaskKind::PlusCross;
    case Ctor::TimesCross: return MaskKind::TimesCross;
    default: throw ModelError("not a mask constructor");
  }
}

Ctor mask_ctor(MaskKind k) {
  switch (k) {
    case MaskKind::Bitmap: return Ctor::Bitmap;
    case MaskKind::Full: return Ctor::Full;
    case MaskKind::Border: return Ctor::Border;
    case MaskKind::EvenCheckboard: return Ctor::EvenCheckboard;
    case MaskKind::OddCheckboard: return Ctor::OddCheckboard;
    case MaskKind::PlusCross: return Ctor::PlusCross;
    case MaskKind::TimesCross: return Ctor::TimesCross;
  }
  return Ctor::Full;
}

// ---- Paths ----

Path Path::parse(std::string_view text) {
  std::vector<PathStep> steps;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('.', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    int index = 0;
    const std::size_t br = tok.find('[');
    if (br != std::string_view::npos) {
      if (tok.back() != ']') throw PathError("bad path step: " + std::string(tok));
      std::string_view num = tok.substr(br + 1, tok.size() - br - 2);
      auto res = std::from_chars(num.data(), num.data() + num.size(), index);
      if (res.ec != std::errc() || index < 0) throw PathError("bad layer index: " + std::string(tok));
      tok = tok.substr(0, br);
    }
    // "layer" is accepted as an alias of "layers".
    if (tok == "layer") tok = "layers";
    auto f = field_from_name(tok);
    if (!f) throw PathError("unknown field: " + std::string(tok));
    if ((*f == Field::Layers) != (br != std::string_view::npos))
      throw PathError("layer index required exactly on layers steps");
    steps.push_back({*f, index});
    pos = end + 1;
  }
  return Path(std::move(steps));
}

std::string Path::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < steps_.size(); ++k) {
    if (k > 0) s += '.';
    s += field_name(steps_[k].field);
    if (steps_[k].field == Field::Layers) s += "[" + std::to_string(steps_[k].index) + "]";
  }
  return s;
}

Path Path::child(Field f) const {
  Path p = *this;
  p.steps_.push_back({f, 0});
  return p;
}

Path Path::layer(int k) const {
  Path p = *this;
  p.steps_.push_back({Field::Layers, k});
  return p;
}

Path Path::parent() const {
  Path p = *this;
  if (!p.steps_.empty()) p.steps_.pop_back();
  return p;
}

Path Path::concat(const Path& rest) const {
  Path p = *this;
  p.steps_.insert(p.steps_.end(), rest.steps_.begin(), rest.steps_.end());
  return p;
}

Path Path::relative() const {
  if (!steps_.empty() && (steps_.front().field == Field::In || steps_.front().field == Field::Out))
    return Path(std::vector<PathStep>(steps_.begin() + 1, steps_.end()));
  return *this;
}

bool Path::starts_with(const Path& prefix) const {
  return prefix.size() <= size() && std::equal(prefix.steps_.begin(), prefix.steps_.end(), steps_.begin());
}

Sort Path::sort() const {
  if (steps_.empty()) return Sort::Grid;
  return field_sort(steps_.back().field);
}

// ---- Terms ----

Term::Term() : Term(unknown()) {}

Term Term::from_node(Node n) {
  switch (n.kind) {
    case Kind::Unknown:
      n.ground = false;
      n.has_expr = false;
      break;
    case Kind::Nat:
    case Kind::Color:
    case Kind::Bits:
      n.ground = true;
      n.has_expr = false;
      break;
    case Kind::Ctor:
    case Kind::List:
      n.ground = std::all_of(n.args.begin(), n.args.end(), [](const Term& a) { return a.is_ground(); });
      n.has_expr = std::any_of(n.args.begin(), n.args.end(), [](const Term& a) { return a.has_expr(); });
      break;
    case Kind::Var:
    case Kind::Zero:
    case Kind::Plus:
    case Kind::Minus:
      n.ground = false;
      n.has_expr = true;
      break;
  }
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term Term::unknown() {
  static const Term u = [] {
    Node n;
    n.kind = Kind::Unknown;
    return Term(std::make_shared<const Node>(std::move(n)));
  }();
  return u;
}

Term Term::nat(int v) {
  if (v < 0) throw ModelError("negative natural");
  Node n;
  n.kind = Kind::Nat;
  n.nat = v;
  return from_node(std::move(n));
}

Term Term::color(arcmdl::Color c) {
  Node n;
  n.kind = Kind::Color;
  n.color = c;
  return from_node(std::move(n));
}

Term Term::bits(arcmdl::Bitmap b) {
  Node n;
  n.kind = Kind::Bits;
  n.bits = std::make_shared<const arcmdl::Bitmap>(std::move(b));
  return from_node(std::move(n));
}

Term Term::list(std::vector<Term> items) {
  Node n;
  n.kind = Kind::List;
  n.args = std::move(items);
  return from_node(std::move(n));
}

Term Term::make(arcmdl::Ctor c, std::vector<Term> args) {
  if (args.size() != ctor_fields(c).size())
    throw ModelError("wrong arity for " + std::string(ctor_name(c)));
  Node n;
  n.kind = Kind::Ctor;
  n.ctor = c;
  n.args = std::move(args);
  return from_node(std::move(n));
}

Term Term::var(arcmdl::Path p) {
  Node n;
  n.kind = Kind::Var;
  n.path = p.relative();
  return from_node(std::move(n));
}

Term Term::zero() {
  Node n;
  n.kind = Kind::Zero;
  return from_node(std::move(n));
}

Term Term::plus(Term a, Term b) {
  Node n;
  n.kind = Kind::Plus;
  n.args = {std::move(a), std::move(b)};
  return from_node(std::move(n));
}

Term Term::minus(Term a, Term b) {
  Node n;
  n.kind = Kind::Minus;
  n.args = {std::move(a), std::move(b)};
  return from_node(std::move(n));
}

Term Term::vec(Term i, Term j) { return make(arcmdl::Ctor::Vec, {std::move(i), std::move(j)}); }
Term Term::vec(int i, int j) { return vec(nat(i), nat(j)); }
Term Term::grid(Term size, Term color, std::vector<Term> layers) {
  return make(arcmdl::Ctor::Grid, {std::move(size), std::move(color), list(std::move(layers))});
}
Term Term::pos_shape(Term pos, Term shape) { return make(arcmdl::Ctor::PosShape, {std::move(pos), std::move(shape)}); }
Term Term::point(Term color) { return make(arcmdl::Ctor::Point, {std::move(color)}); }
Term Term::rectangle(Term size, Term color, Term mask) {
  return make(arcmdl::Ctor::Rectangle, {std::move(size), std::move(color), std::move(mask)});
}
Term Term::mask(MaskKind k) {
  if (k == MaskKind::Bitmap) return make(arcmdl::Ctor::Bitmap, {unknown()});
  return make(mask_ctor(k), {});
}
Term Term::bitmap_mask(arcmdl::Bitmap b) { return make(arcmdl::Ctor::Bitmap, {bits(std::move(b))}); }
Term Term::in_out(Term in, Term out) { return make(arcmdl::Ctor::InOut, {std::move(in), std::move(out)}); }

bool Term::is_expr() const {
  const Kind k = kind();
  return k == Kind::Var || k == Kind::Zero || k == Kind::Plus || k == Kind::Minus;
}

arcmdl::Ctor Term::ctor() const {
  if (kind() != Kind::Ctor) throw ModelError("not a constructor term");
  return node_->ctor;
}

int Term::nat_value() const {
  if (kind() != Kind::Nat) throw ModelError("not a natural: " + to_string());
  return node_->nat;
}

arcmdl::Color Term::color_value() const {
  if (kind() != Kind::Color) throw ModelError("not a color: " + to_string());
  return node_->color;
}

const arcmdl::Bitmap& Term::bits_value() const {
  if (kind() != Kind::Bits) throw ModelError("not a bitmap: " + to_string());
  return *node_->bits;
}

const arcmdl::Path& Term::var_path() const {
  if (kind() != Kind::Var) throw ModelError("not a variable");
  return node_->path;
}

namespace {

std::optional<std::size_t> field_index(Ctor c, Field f) {
  const auto& fs = ctor_fields(c);
  for (std::size_t k = 0; k < fs.size(); ++k)
    if (fs[k] == f) return k;
  return std::nullopt;
}

}  // namespace

const Term& Term::field(Field f) const {
  if (kind() != Kind::Ctor) throw PathError("field access on a non-constructor term");
  auto k = field_index(node_->ctor, f);
  if (!k) throw PathError(std::string(ctor_name(node_->ctor)) + " has no field " + std::string(field_name(f)));
  return node_->args[*k];
}

Term Term::with_field(Field f, Term t) const {
  if (kind() != Kind::Ctor) throw PathError("field update on a non-constructor term");
  auto k = field_index(node_->ctor, f);
  if (!k) throw PathError(std::string(ctor_name(node_->ctor)) + " has no field " + std::string(field_name(f)));
  return with_arg(*k, std::move(t));
}

Term Term::with_arg(std::size_t k, Term t) const {
  Node n = *node_;
  n.args.at(k) = std::move(t);
  return from_node(std::move(n));
}

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  const Node& a = *node_;
  const Node& b = *o.node_;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::Unknown:
    case Kind::Zero: return true;
    case Kind::Nat: return a.nat == b.nat;
    case Kind::Color: return a.color == b.color;
    case Kind::Bits: return *a.bits == *b.bits;
    case Kind::Var: return a.path == b.path;
    case Kind::Ctor:
      if (a.ctor != b.ctor) return false;
      [[fallthrough]];
    case Kind::List:
    case Kind::Plus:
    case Kind::Minus: return a.args == b.args;
  }
  return false;
}

TaskModel TaskModel::from_term(const Term& t) {
  if (!t.is_ctor(Ctor::InOut)) throw ModelError("task model must be an InOut term");
  return {t.args()[0], t.args()[1]};
}

// ---- Paths in terms ----

const Term* try_resolve(const Term& t, const Path& p) {
  const Term* cur = &t;
  for (const auto& step : p.steps()) {
    if (cur->kind() != Term::Kind::Ctor) return nullptr;
    auto k = field_index(cur->ctor(), step.field);
    if (!k) return nullptr;
    cur = &cur->args()[*k];
    if (step.field == Field::Layers) {
      if (cur->kind() != Term::Kind::List) return nullptr;
      if (step.index < 0 || step.index >= static_cast<int>(cur->args().size())) return nullptr;
      cur = &cur->args()[static_cast<std::size_t>(step.index)];
    }
  }
  return cur;
}

const Term& resolve(const Term& t, const Path& p) {
  const Term* r = try_resolve(t, p);
  if (!r) throw PathError("invalid path " + p.to_string() + " in " + t.to_string());
  return *r;
}

namespace {

Term subst_from(const Term& t, const std::vector<PathStep>& steps, std::size_t k, const Term& r, bool insert) {
  if (k == steps.size()) return r;
  const PathStep& step = steps[k];
  if (t.kind() != Term::Kind::Ctor) throw PathError("path goes through a non-constructor term");
  auto idx = field_index(t.ctor(), step.field);
  if (!idx) throw PathError(std::string(ctor_name(t.ctor())) + " has no field " + std::string(field_name(step.field)));
  const Term& sub = t.args()[*idx];
  if (step.field != Field::Layers) return t.with_arg(*idx, subst_from(sub, steps, k + 1, r, insert));

  if (sub.kind() != Term::Kind::List) throw PathError("layers field is not a list");
  std::vector<Term> items = sub.args();
  const int n = static_cast<int>(items.size());
  if (insert && k + 1 == steps.size()) {
    if (step.index < 0 || step.index > n) throw PathError("layer insertion index out of range");
    items.insert(items.begin() + step.index, r);
  } else {
    if (step.index < 0 || step.index >= n) throw PathError("layer index out of range");
    items[static_cast<std::size_t>(step.index)] = subst_from(items[static_cast<std::size_t>(step.index)], steps, k + 1, r, insert);
  }
  return t.with_arg(*idx, Term::list(std::move(items)));
}

}  // namespace

Term subst(const Term& t, const Path& p, const Term& r) { return subst_from(t, p.steps(), 0, r, false); }

Term insert_layer(const Term& t, const Path& p, const Term& object) {
  if (p.empty() || p.back().field != Field::Layers) throw PathError("insertion path must end with a layer step");
  return subst_from(t, p.steps(), 0, object, true);
}

Term shift_layer_vars(const Term& t, int from, int by) {
  if (!t.has_expr()) return t;
  switch (t.kind()) {
    case Term::Kind::Var: {
      const Path& p = t.var_path();
      if (p.empty() || p.steps().front().field != Field::Layers || p.steps().front().index < from) return t;
      std::vector<PathStep> steps = p.steps();
      steps.front().index += by;
      return Term::var(Path(std::move(steps)));
    }
    case Term::Kind::Ctor:
    case Term::Kind::List:
    case Term::Kind::Plus:
    case Term::Kind::Minus: {
      Term out = t;
      for (std::size_t k = 0; k < t.args().size(); ++k) {
        Term a = shift_layer_vars(t.args()[k], from, by);
        if (!(a == t.args()[k])) out = out.with_arg(k, std::move(a));
      }
      return out;
    }
    default: return t;
  }
}

namespace {

void collect_unknowns(const Term& t, const Path& p, std::vector<Path>& out) {
  if (t.is_unknown()) {
    out.push_back(p);
    return;
  }
  if (t.kind() != Term::Kind::Ctor) return;
  const auto& fs = ctor_fields(t.ctor());
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const Term& a = t.args()[k];
    if (fs[k] == Field::Layers) {
      for (std::size_t e = 0; e < a.args().size(); ++e) collect_unknowns(a.args()[e], p.layer(static_cast<int>(e)), out);
    } else {
      collect_unknowns(a, p.child(fs[k]), out);
    }
  }
}

void collect_entries(const Term& t, const Path& p, Sort s, std::vector<PathEntry>& out) {
  out.push_back({p, s, t});
  if (t.kind() != Term::Kind::Ctor) return;
  const auto& fs = ctor_fields(t.ctor());
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const Term& a = t.args()[k];
    if (fs[k] == Field::Layers) {
      for (std::size_t e = 0; e < a.args().size(); ++e)
        collect_entries(a.args()[e], p.layer(static_cast<int>(e)), Sort::Object, out);
    } else {
      collect_entries(a, p.child(fs[k]), field_sort(fs[k]), out);
    }
  }
}

}  // namespace

std::vector<Path> unknown_paths(const Term& t) {
  std::vector<Path> out;
  collect_unknowns(t, Path(), out);
  return out;
}

std::vector<PathEntry> enumerate(const Term& t, Sort root_sort) {
  std::vector<PathEntry> out;
  collect_entries(t, Path(), root_sort, out);
  return out;
}

int node_count(const Term& t) {
  int n = t.kind() == Term::Kind::List ? 0 : 1;
  for (const auto& a : t.args()) n += node_count(a);
  return n;
}

// ---- Matching and application ----

bool matches(const Term& data, const Term& pattern) {
  switch (pattern.kind()) {
    case Term::Kind::Unknown: return true;
    case Term::Kind::Var:
    case Term::Kind::Zero:
    case Term::Kind::Plus:
    case Term::Kind::Minus: throw ModelError("expression in a pattern");
    case Term::Kind::Nat:
    case Term::Kind::Color:
    case Term::Kind::Bits: return data == pattern;
    case Term::Kind::Ctor:
      if (data.kind() != Term::Kind::Ctor || data.ctor() != pattern.ctor()) return false;
      break;
    case Term::Kind::List:
      if (data.kind() != Term::Kind::List || data.args().size() != pattern.args().size()) return false;
      break;
  }
  for (std::size_t k = 0; k < pattern.args().size(); ++k)
    if (!matches(data.args()[k], pattern.args()[k])) return false;
  return true;
}

int eval_expr(const Term& e, const Term* env) {
  switch (e.kind()) {
    case Term::Kind::Nat: return e.nat_value();
    case Term::Kind::Zero: return 0;
    case Term::Kind::Var: {
      if (!env) throw EvalError("variable " + e.var_path().to_string() + " without environment");
      const Term* v = try_resolve(*env, e.var_path());
      if (!v || v->kind() != Term::Kind::Nat) throw EvalError("undefined variable " + e.var_path().to_string());
      return v->nat_value();
    }
    case Term::Kind::Plus: return eval_expr(e.args()[0], env) + eval_expr(e.args()[1], env);
    case Term::Kind::Minus: {
      const int r = eval_expr(e.args()[0], env) - eval_expr(e.args()[1], env);
      if (r < 0) throw EvalError("negative result in " + e.to_string());
      return r;
    }
    default: throw EvalError("not a natural expression: " + e.to_string());
  }
}

Term apply_model(const Term& m, const Term* env) {
  if (!m.has_expr()) return m;
  switch (m.kind()) {
    case Term::Kind::Var: {
      if (!env) throw EvalError("variable " + m.var_path().to_string() + " without environment");
      const Term* v = try_resolve(*env, m.var_path());
      if (!v) throw EvalError("undefined variable " + m.var_path().to_string());
      if (v->has_expr()) throw EvalError("environment is not a parse tree");
      return *v;
    }
    case Term::Kind::Zero:
    case Term::Kind::Plus:
    case Term::Kind::Minus: return Term::nat(eval_expr(m, env));
    default: {
      Term out = m;
      for (std::size_t k = 0; k < m.args().size(); ++k)
        if (m.args()[k].has_expr()) out = out.with_arg(k, apply_model(m.args()[k], env));
      return out;
    }
  }
}

// ---- Well-formedness ----

namespace {

void signature_of(const Term& t, const Path& p, Sort s, Signature& out) {
  if (!p.empty()) out.push_back({p, s});
  if (t.kind() == Term::Kind::Ctor) {
    const auto& fs = ctor_fields(t.ctor());
    for (std::size_t k = 0; k < fs.size(); ++k) {
      const Term& a = t.args()[k];
      if (fs[k] == Field::Layers) {
        for (std::size_t e = 0; e < a.args().size(); ++e) signature_of(a.args()[e], p.layer(static_cast<int>(e)), Sort::Object, out);
      } else if (fs[k] != Field::Bits) {
        signature_of(a, p.child(fs[k]), field_sort(fs[k]), out);
      }
    }
    return;
  }
  // Unknowns of single-constructor sorts still expose their fields.
  if (t.is_unknown()) {
    if (s == Sort::Vec) {
      out.push_back({p.child(Field::I), Sort::Nat});
      out.push_back({p.child(Field::J), Sort::Nat});
    } else if (s == Sort::Object) {
      signature_of(Term::unknown(), p.child(Field::Pos), Sort::Vec, out);
      out.push_back({p.child(Field::Shape), Sort::Shape});
    }
  }
}

bool nat_operand_ok(const Term& t, const Signature* env) {
  if (t.kind() == Term::Kind::Nat) return true;
  if (!t.is_expr()) return false;
  check_well_formed(t, Sort::Nat, env);
  return true;
}

}  // namespace

Signature env_signature(const Term& input_model) {
  Signature sig;
  signature_of(input_model, Path(), Sort::Grid, sig);
  return sig;
}

void check_well_formed(const Term& t, Sort s, const Signature* env) {
  switch (t.kind()) {
    case Term::Kind::Unknown: return;
    case Term::Kind::Nat:
      if (s != Sort::Nat) throw ModelError("natural in a " + std::string(sort_name(s)) + " slot");
      return;
    case Term::Kind::Color:
      if (s != Sort::Color) throw ModelError("color in a " + std::string(sort_name(s)) + " slot");
      return;
    case Term::Kind::Bits:
      if (s != Sort::Bits) throw ModelError("bitmap in a " + std::string(sort_name(s)) + " slot");
      return;
    case Term::Kind::List: throw ModelError("list outside a layers field");
    case Term::Kind::Var: {
      if (!env) throw ModelError("variable " + t.var_path().to_string() + " without environment");
      for (const auto& e : *env)
        if (e.path == t.var_path()) {
          if (e.sort != s) throw ModelError("variable " + t.var_path().to_string() + " has the wrong sort");
          return;
        }
      throw ModelError("variable " + t.var_path().to_string() + " not in the environment");
    }
    case Term::Kind::Zero:
      if (s != Sort::Nat) throw ModelError("arithmetic in a " + std::string(sort_name(s)) + " slot");
      return;
    case Term::Kind::Plus:
    case Term::Kind::Minus:
      if (s != Sort::Nat) throw ModelError("arithmetic in a " + std::string(sort_name(s)) + " slot");
      for (const auto& a : t.args())
        if (!nat_operand_ok(a, env)) throw ModelError("bad arithmetic operand " + a.to_string());
      return;
    case Term::Kind::Ctor: break;
  }
  if (ctor_sort(t.ctor()) != s)
    throw ModelError(std::string(ctor_name(t.ctor())) + " in a " + std::string(sort_name(s)) + " slot");
  const auto& fs = ctor_fields(t.ctor());
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const Term& a = t.args()[k];
    if (fs[k] == Field::Layers) {
      if (a.kind() != Term::Kind::List) throw ModelError("layers must be a list");
      for (const auto& item : a.args()) check_well_formed(item, Sort::Object, env);
    } else {
      check_well_formed(a, field_sort(fs[k]), env);
    }
  }
}

void check_well_formed(const TaskModel& m) {
  check_well_formed(m.input, Sort::Grid, nullptr);
  const Signature sig = env_signature(m.input);
  check_well_formed(m.output, Sort::Grid, &sig);
}

}  // namespace arcmdl
