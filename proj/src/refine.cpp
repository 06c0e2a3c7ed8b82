// Refinement proposals.

#include <algorithm>

#include "arcmdl/learner.hpp"

namespace arcmdl {

namespace {

using Readings = std::vector<std::vector<PairReading>>;

const Term& side_tree(const PairReading& r, bool output) { return output ? r.output.tree : r.input.tree; }

// Patterns made of a primitive value or of a single constructor with
// unknown fields, taken from a ground subtree.
Term pattern_of(const Term& s) {
  if (s.kind() != Term::Kind::Ctor || s.args().empty()) return s;
  std::vector<Term> args(s.args().size(), Term::unknown());
  return Term::make(s.ctor(), std::move(args));
}

bool pattern_holds(const Readings& readings, bool output, const Path& p, const Term& pattern) {
  for (const auto& ex : readings) {
    bool any = false;
    for (const auto& r : ex) {
      const Term* s = try_resolve(side_tree(r, output), p);
      if (s && matches(*s, pattern)) {
        any = true;
        break;
      }
    }
    if (!any) return false;
  }
  return true;
}

void propose_patterns(const Readings& readings, bool output, const Path& p, RefineCategory cat,
                      std::vector<Refinement>& out) {
  if (readings.empty()) return;
  std::vector<Term> seen;
  for (const auto& r : readings.front()) {
    const Term* s = try_resolve(side_tree(r, output), p);
    if (!s) continue;
    Term pat = pattern_of(*s);
    if (std::find(seen.begin(), seen.end(), pat) != seen.end()) continue;
    seen.push_back(pat);
    if (pattern_holds(readings, output, p, pat))
      out.push_back({Refinement::Kind::Replace, output, p, std::move(pat), cat});
  }
}

// Environment values of one chained reading.
struct EnvValues {
  std::vector<const Term*> vals;  // by signature index, null if absent
  const Term* target = nullptr;
};

// Expressions for the output part at `p`, valid on some reading of every
// example, in the order x, x - c, x + c, x - y, x + y.
void propose_expressions(const Readings& readings, const Signature& sig, const Path& p, Sort sort,
                         std::vector<Refinement>& out) {
  std::vector<std::vector<EnvValues>> envs;
  for (const auto& ex : readings) {
    std::vector<EnvValues> rs;
    for (const auto& r : ex) {
      EnvValues e;
      e.target = try_resolve(r.output.tree, p);
      if (!e.target) continue;
      for (const auto& s : sig) e.vals.push_back(s.sort == sort ? try_resolve(r.input.tree, s.path) : nullptr);
      rs.push_back(std::move(e));
    }
    envs.push_back(std::move(rs));
  }
  auto holds = [&](auto&& value_of) {
    for (const auto& ex : envs) {
      bool any = false;
      for (const auto& e : ex) {
        std::optional<Term> v = value_of(e);
        if (v && *v == *e.target) {
          any = true;
          break;
        }
      }
      if (!any) return false;
    }
    return !envs.empty();
  };
  auto add = [&](Term e) { out.push_back({Refinement::Kind::Replace, true, p, std::move(e), RefineCategory::Eo}); };

  std::vector<std::size_t> vars;
  for (std::size_t x = 0; x < sig.size(); ++x)
    if (sig[x].sort == sort) vars.push_back(x);

  for (std::size_t x : vars)
    if (holds([&](const EnvValues& e) -> std::optional<Term> {
          if (!e.vals[x]) return std::nullopt;
          return *e.vals[x];
        }))
      add(Term::var(sig[x].path));
  if (sort != Sort::Nat) return;

  auto nat = [](const Term* t) { return t && t->kind() == Term::Kind::Nat ? t->nat_value() : -1; };
  for (int sign : {-1, 1})
    for (std::size_t x : vars)
      for (int c = 1; c <= 3; ++c)
        if (holds([&](const EnvValues& e) -> std::optional<Term> {
              const int v = nat(e.vals[x]);
              if (v < 0 || v + sign * c < 0) return std::nullopt;
              return Term::nat(v + sign * c);
            }))
          add(sign < 0 ? Term::minus(Term::var(sig[x].path), Term::nat(c))
                       : Term::plus(Term::var(sig[x].path), Term::nat(c)));
  for (int sign : {-1, 1})
    for (std::size_t a = 0; a < vars.size(); ++a)
      for (std::size_t b = sign < 0 ? 0 : a; b < vars.size(); ++b) {
        if (sign < 0 && a == b) continue;
        const std::size_t x = vars[a], y = vars[b];
        if (holds([&](const EnvValues& e) -> std::optional<Term> {
              const int u = nat(e.vals[x]), v = nat(e.vals[y]);
              if (u < 0 || v < 0 || u + sign * v < 0) return std::nullopt;
              return Term::nat(u + sign * v);
            }))
          add(sign < 0 ? Term::minus(Term::var(sig[x].path), Term::var(sig[y].path))
                       : Term::plus(Term::var(sig[x].path), Term::var(sig[y].path)));
      }
}

int layer_count(const Term& grid_model) {
  if (!grid_model.is_ctor(Ctor::Grid)) return 0;
  return static_cast<int>(grid_model.field(Field::Layers).args().size());
}

void output_shapes(const TaskModel& m, std::vector<Refinement>& out) {
  const int n_in = layer_count(m.input);
  for (int pos = 0; pos <= layer_count(m.output); ++pos) {
    const Path p = Path().layer(pos);
    auto add = [&](Term t) { out.push_back({Refinement::Kind::Insert, true, p, std::move(t), RefineCategory::So}); };
    add(Term::pos_shape(Term::unknown(), Term::point(Term::unknown())));
    add(Term::pos_shape(Term::unknown(), Term::rectangle(Term::unknown(), Term::unknown(), Term::unknown())));
    for (int k = 0; k < n_in; ++k) {
      add(Term::var(Path().layer(k)));
      add(Term::pos_shape(Term::unknown(), Term::var(Path().layer(k).child(Field::Shape))));
    }
  }
}

void input_shapes(const TaskModel& m, std::vector<Refinement>& out) {
  for (int pos = 0; pos <= layer_count(m.input); ++pos) {
    const Path p = Path().layer(pos);
    out.push_back({Refinement::Kind::Insert, false, p, Term::pos_shape(Term::unknown(), Term::point(Term::unknown())),
                   RefineCategory::Si});
    out.push_back({Refinement::Kind::Insert, false, p,
                   Term::pos_shape(Term::unknown(), Term::rectangle(Term::unknown(), Term::unknown(), Term::unknown())),
                   RefineCategory::Si});
  }
}

void output_expressions(const TaskModel& m, const Readings& readings, std::vector<Refinement>& out) {
  const Signature sig = env_signature(m.input);
  for (const auto& e : enumerate(m.output, Sort::Grid)) {
    if (e.path.empty() || e.term.is_expr()) continue;
    if (e.sort != Sort::Bits) propose_expressions(readings, sig, e.path, e.sort, out);
    if (e.term.is_unknown()) propose_patterns(readings, true, e.path, RefineCategory::Eo, out);
  }
}

void input_patterns(const TaskModel& m, const Readings& readings, std::vector<Refinement>& out) {
  for (const auto& p : unknown_paths(m.input)) propose_patterns(readings, false, p, RefineCategory::Ei, out);
}

}  // namespace

std::vector<Refinement> propose_refinements(const TaskModel& m, const Readings& readings, const RefineOrder& order) {
  std::vector<Refinement> out;
  for (RefineCategory c : order) {
    switch (c) {
      case RefineCategory::So: output_shapes(m, out); break;
      case RefineCategory::Si: input_shapes(m, out); break;
      case RefineCategory::Eo: output_expressions(m, readings, out); break;
      case RefineCategory::Ei: input_patterns(m, readings, out); break;
    }
  }
  return out;
}

}  // namespace arcmdl
