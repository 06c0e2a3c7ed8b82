#include "arcmdl/dl.hpp"

#include <algorithm>
#include <cmath>

namespace arcmdl {

double l_nat(int n) {
  if (n < 0) throw Error("l_nat of a negative number");
  return 2.0 * std::log2(static_cast<double>(n) + 1.0) + 1.0;
}

double l_uniform(int cardinality) {
  if (cardinality < 1) throw Error("uniform code over an empty set");
  return std::log2(static_cast<double>(cardinality));
}

double l_dist(double p) {
  if (!(p > 0.0) || p > 1.0) throw Error("probability outside (0,1]");
  return -std::log2(p);
}

double l_position(int i, std::optional<int> extent, int max_dim) {
  const int n = extent.value_or(max_dim);
  if (i < 0 || i >= n) throw Error("position " + std::to_string(i) + " outside extent " + std::to_string(n));
  return l_uniform(n);
}

double l_bitmap(int height, int width) { return static_cast<double>(height) * static_cast<double>(width); }

double path_similarity(const Path& a, const Path& b) {
  const auto& sa = a.steps();
  const auto& sb = b.steps();
  std::size_t n = 0;
  while (n < sa.size() && n < sb.size()) {
    const Field fa = sa[sa.size() - 1 - n].field;
    const Field fb = sb[sb.size() - 1 - n].field;
    if (fa != fb || fa == Field::In || fa == Field::Out) break;
    ++n;
  }
  return static_cast<double>(n);
}

namespace {

enum class NatRole { Position, Size, Operand };

struct Ctx {
  Sort sort = Sort::Grid;
  Path path;
  NatRole role = NatRole::Operand;
  std::optional<int> extent;
  std::optional<std::pair<int, int>> grid_size;
  bool background = false;
};

std::optional<std::pair<int, int>> ground_vec(const Term& t) {
  if (t.is_ctor(Ctor::Vec) && t.args()[0].kind() == Term::Kind::Nat && t.args()[1].kind() == Term::Kind::Nat)
    return std::make_pair(t.args()[0].nat_value(), t.args()[1].nat_value());
  return std::nullopt;
}

// Context of field `f` of a constructor term `ref` found in context `parent`.
Ctx field_ctx(const Ctx& parent, const Term& ref, Field f, int layer = 0) {
  Ctx c;
  c.sort = f == Field::Layers ? Sort::Object : field_sort(f);
  c.path = f == Field::Layers ? parent.path.layer(layer) : parent.path.child(f);
  c.grid_size = parent.grid_size;
  switch (parent.sort) {
    case Sort::Grid:
      if (f == Field::Size) c.role = NatRole::Size;
      if (f == Field::Color) c.background = true;
      if (f == Field::Layers && ref.kind() == Term::Kind::Ctor) c.grid_size = ground_vec(ref.field(Field::Size));
      break;
    case Sort::Object:
      if (f == Field::Pos) c.role = NatRole::Position;
      break;
    case Sort::Shape:
      if (f == Field::Size) c.role = NatRole::Size;
      break;
    case Sort::Vec:
      c.role = parent.role;
      if (parent.role == NatRole::Position && parent.grid_size)
        c.extent = f == Field::I ? parent.grid_size->first : parent.grid_size->second;
      break;
    default: break;
  }
  return c;
}

class Coder {
 public:
  Coder(const DlConfig& cfg, const Signature* env) : cfg_(cfg), env_(env) {}

  // Template code: kind choice plus content.
  double templ(const Term& t, const Ctx& ctx) const {
    if (t.is_unknown()) return l_dist(cfg_.template_unknown);
    if (t.is_expr()) return l_dist(cfg_.template_expression) + expr(t, ctx);
    return l_dist(cfg_.template_value) + value(t, ctx, true);
  }

  // Content of a value or constructor term. With `as_template`, fields are
  // coded as templates; otherwise as ground values.
  double value(const Term& t, const Ctx& ctx, bool as_template) const {
    auto sub = [&](const Term& a, const Ctx& c) { return as_template ? templ(a, c) : value(a, c, false); };
    switch (t.kind()) {
      case Term::Kind::Nat: {
        if (ctx.sort != Sort::Nat) throw ModelError("natural in a " + std::string(sort_name(ctx.sort)) + " slot");
        const int n = t.nat_value();
        if (ctx.role == NatRole::Position) {
          int extent = ctx.extent.value_or(cfg_.max_grid_dim);
          if (n >= extent) extent = std::max(cfg_.max_grid_dim, n + 1);
          return l_position(n, extent, cfg_.max_grid_dim);
        }
        return l_nat(n);
      }
      case Term::Kind::Color:
        if (ctx.sort != Sort::Color) throw ModelError("color in a " + std::string(sort_name(ctx.sort)) + " slot");
        if (ctx.background) return l_dist(cfg_.bg_color[static_cast<std::size_t>(t.color_value())]);
        return l_uniform(kNumColors);
      case Term::Kind::Bits: return l_bitmap(t.bits_value().height(), t.bits_value().width());
      case Term::Kind::Ctor: break;
      default: throw ModelError("cannot code " + t.to_string() + " as a value");
    }
    const Ctor c = t.ctor();
    if (ctor_sort(c) != ctx.sort)
      throw ModelError(std::string(ctor_name(c)) + " in a " + std::string(sort_name(ctx.sort)) + " slot");
    double bits = 0.0;
    switch (c) {
      case Ctor::Point: bits += l_dist(cfg_.shape_point); break;
      case Ctor::Rectangle: bits += l_dist(cfg_.shape_rectangle); break;
      default:
        if (is_mask_ctor(c)) bits += l_dist(cfg_.mask[static_cast<std::size_t>(mask_kind(c))]);
        break;
    }
    const auto& fs = ctor_fields(c);
    for (std::size_t k = 0; k < fs.size(); ++k) {
      const Term& a = t.args()[k];
      if (fs[k] == Field::Layers) {
        bits += l_nat(static_cast<int>(a.args().size()));
        for (std::size_t e = 0; e < a.args().size(); ++e)
          bits += sub(a.args()[e], field_ctx(ctx, t, Field::Layers, static_cast<int>(e)));
      } else {
        bits += sub(a, field_ctx(ctx, t, fs[k]));
      }
    }
    return bits;
  }

  // Code of a ground subtree given as data.
  double data(const Term& t, const Ctx& ctx) const {
    return cfg_.data_as_templates ? templ(t, ctx) : value(t, ctx, false);
  }

  double expr(const Term& t, const Ctx& ctx) const {
    switch (t.kind()) {
      case Term::Kind::Var: return l_dist(cfg_.expr_variable) + variable(t.var_path(), ctx);
      case Term::Kind::Zero:
      case Term::Kind::Plus:
      case Term::Kind::Minus: {
        if (ctx.sort != Sort::Nat) throw ModelError("arithmetic outside a natural slot");
        double bits = l_dist(cfg_.expr_application) + l_uniform(3);
        Ctx operand = ctx;
        operand.role = NatRole::Operand;
        for (const auto& a : t.args()) {
          if (a.kind() == Term::Kind::Nat)
            bits += l_dist(cfg_.template_value) + l_nat(a.nat_value());
          else
            bits += l_dist(cfg_.template_expression) + expr(a, operand);
        }
        return bits;
      }
      default: throw ModelError("not an expression: " + t.to_string());
    }
  }

  double variable(const Path& p, const Ctx& ctx) const {
    if (!env_) throw ModelError("variable without environment");
    double total = 0.0;
    double mine = -1.0;
    for (const auto& e : *env_) {
      if (e.sort != ctx.sort) continue;
      const double w = std::exp(path_similarity(e.path, ctx.path));
      total += w;
      if (e.path == p) mine = w;
    }
    if (mine < 0.0) throw ModelError("variable " + p.to_string() + " not in the environment");
    return -std::log2(mine / total);
  }

  // Fillings of the model's unknowns in a parse tree.
  double fillings(const Term& model, const Term& tree, const Ctx& ctx) const {
    if (model.is_unknown()) return data(tree, ctx);
    if (model.kind() != Term::Kind::Ctor || tree.kind() != Term::Kind::Ctor || model.ctor() != tree.ctor())
      return 0.0;
    double bits = 0.0;
    const auto& fs = ctor_fields(model.ctor());
    for (std::size_t k = 0; k < fs.size(); ++k) {
      const Term& ma = model.args()[k];
      const Term& ta = tree.args()[k];
      if (fs[k] == Field::Layers) {
        if (ma.args().size() != ta.args().size()) throw ModelError("parse tree and model disagree on layers");
        for (std::size_t e = 0; e < ma.args().size(); ++e)
          bits += fillings(ma.args()[e], ta.args()[e], field_ctx(ctx, tree, Field::Layers, static_cast<int>(e)));
      } else {
        bits += fillings(ma, ta, field_ctx(ctx, tree, fs[k]));
      }
    }
    return bits;
  }

 private:
  const DlConfig& cfg_;
  const Signature* env_;
};

Ctx root_ctx() { return Ctx{}; }

Ctx ctx_at(const Term& tree, const Path& path) {
  Ctx ctx = root_ctx();
  const Term* cur = &tree;
  for (const auto& step : path.steps()) {
    ctx = field_ctx(ctx, *cur, step.field, step.index);
    const Term* next = try_resolve(*cur, Path({step}));
    if (!next) throw PathError("invalid path " + path.to_string());
    cur = next;
  }
  return ctx;
}

double count_code(int n, const DlConfig& cfg) { return l_nat(n) - (cfg.empty_data_is_free ? l_nat(0) : 0.0); }

}  // namespace

double l_model(const Term& m, const Signature* env, const DlConfig& cfg) {
  return Coder(cfg, env).templ(m, root_ctx());
}

double l_task_model(const TaskModel& m, const DlConfig& cfg) {
  const Signature sig = env_signature(m.input);
  return l_model(m.input, nullptr, cfg) + l_model(m.output, &sig, cfg);
}

double l_ground_at(const Term& tree, const Path& path, const Term& sub, const DlConfig& cfg) {
  return Coder(cfg, nullptr).value(sub, ctx_at(tree, path), false);
}

double l_parse_tree(const Term& tree, const Term& applied_model, const std::vector<Diff>& diffs,
                    const DlConfig& cfg) {
  const Coder coder(cfg, nullptr);
  double bits = coder.fillings(applied_model, tree, root_ctx());
  if (!diffs.empty()) {
    bits += count_code(static_cast<int>(diffs.size()), cfg);
    const double location = l_uniform(node_count(applied_model));
    for (const auto& d : diffs) bits += location + coder.data(d.subtree, ctx_at(tree, d.path));
  }
  return bits;
}

double l_delta_point(int height, int width, const DlConfig& cfg) {
  double bits = l_uniform(height) + l_uniform(width) + l_dist(cfg.shape_point) + l_uniform(kNumColors);
  // PosShape, Vec, i, j, Point, color
  if (cfg.data_as_templates) bits += 6.0 * l_dist(cfg.template_value);
  return bits;
}

double l_delta(const Delta& d, const Grid& drawn, const DlConfig& cfg) {
  return count_code(static_cast<int>(d.size()), cfg) +
         static_cast<double>(d.size()) * l_delta_point(drawn.height(), drawn.width(), cfg);
}

}  // namespace arcmdl
