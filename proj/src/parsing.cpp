#include "arcmdl/parsing.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <set>
#include <unordered_set>

namespace arcmdl {

namespace {

constexpr int kCells = kMaxGridDim * kMaxGridDim;

int cell_index(int i, int j) { return i * kMaxGridDim + j; }

// Calls set(i, j, color) for every cell drawn by a ground object.
template <typename F>
void paint_object(const Term& obj, F&& set) {
  if (!obj.is_ctor(Ctor::PosShape) || !obj.is_ground()) throw ModelError("cannot draw " + obj.to_string());
  const Term& pos = obj.field(Field::Pos);
  const int i0 = pos.field(Field::I).nat_value();
  const int j0 = pos.field(Field::J).nat_value();
  const Term& shape = obj.field(Field::Shape);
  if (shape.is_ctor(Ctor::Point)) {
    set(i0, j0, shape.field(Field::Color).color_value());
    return;
  }
  const Term& size = shape.field(Field::Size);
  const int h = size.field(Field::I).nat_value();
  const int w = size.field(Field::J).nat_value();
  const Color c = shape.field(Field::Color).color_value();
  const Term& mask = shape.field(Field::Mask);
  if (mask.is_ctor(Ctor::Bitmap)) {
    const Bitmap& b = mask.field(Field::Bits).bits_value();
    for (int x = 0; x < std::min(h, b.height()); ++x)
      for (int y = 0; y < std::min(w, b.width()); ++y)
        if (b.at(x, y)) set(i0 + x, j0 + y, c);
    return;
  }
  const MaskKind k = mask_kind(mask.ctor());
  for (int x = 0; x < h; ++x)
    for (int y = 0; y < w; ++y)
      if (mask_member(k, h, w, x, y)) set(i0 + x, j0 + y, c);
}

// Divergences of ground `data` from `pattern`, recorded at the deepest
// mismatching node. Returns false once more than `limit` are found.
bool collect_diffs(const Term& data, const Term& pattern, const Path& path, std::vector<Diff>& out, int limit) {
  if (pattern.is_unknown()) return true;
  const bool same_ctor = data.kind() == Term::Kind::Ctor && pattern.kind() == Term::Kind::Ctor &&
                         data.ctor() == pattern.ctor();
  if (same_ctor) {
    const auto& fs = ctor_fields(data.ctor());
    for (std::size_t k = 0; k < fs.size(); ++k) {
      if (fs[k] == Field::Layers) throw ModelError("nested layers");
      if (!collect_diffs(data.args()[k], pattern.args()[k], path.child(fs[k]), out, limit)) return false;
    }
    return true;
  }
  if (pattern.is_expr()) throw ModelError("expression in a pattern");
  if (data == pattern) return true;
  out.push_back({path, data});
  return static_cast<int>(out.size()) <= limit;
}

Box bounding_box(const std::vector<Cell>& cells) {
  int top = kMaxGridDim, left = kMaxGridDim, bottom = -1, right = -1;
  for (const auto& c : cells) {
    top = std::min(top, c.i);
    left = std::min(left, c.j);
    bottom = std::max(bottom, c.i);
    right = std::max(right, c.j);
  }
  return {top, left, bottom - top + 1, right - left + 1};
}

struct LayerOption {
  Term object;
  const CellSet* sources = nullptr;  // null for objects not taken from the grid
  std::vector<Diff> diffs;
};

// Ties are broken by the counts over the whole grid, then by code. Black
// when every cell is covered.
Color majority_color(const std::array<int, kNumColors>& counts, const std::array<int, kNumColors>& overall) {
  if (std::all_of(counts.begin(), counts.end(), [](int n) { return n == 0; })) return Color::Black;
  auto key = [&](int c) { return std::pair(counts[static_cast<std::size_t>(c)], overall[static_cast<std::size_t>(c)]); };
  int best = 0;
  for (int c = 1; c < kNumColors; ++c)
    if (key(c) > key(best)) best = c;
  return color_from_code(best);
}

}  // namespace

std::optional<MaskKind> recognize_mask(const Bitmap& bits) {
  const int h = bits.height(), w = bits.width();
  for (MaskKind k : {MaskKind::Full, MaskKind::Border, MaskKind::EvenCheckboard, MaskKind::OddCheckboard,
                     MaskKind::PlusCross, MaskKind::TimesCross}) {
    if (!mask_defined(k, h, w)) continue;
    if (mask_bitmap(k, h, w) == bits) return k;
  }
  return std::nullopt;
}

GridScene::GridScene(Grid g, Connectivity conn, bool color_unions) : grid_(std::move(g)), parts_(segment(grid_, conn)) {
  for (const auto& p : parts_) {
    add_shape_candidates(p.color, p.cells, false);
    if (p.cells.size() < 5) {
      for (const auto& c : p.cells) {
        Candidate cand{Term::pos_shape(Term::vec(c.i, c.j), Term::point(Term::color(p.color))), p.color, 1,
                       Box{c.i, c.j, 1, 1}, false, {}};
        cand.sources.set(static_cast<std::size_t>(cell_index(c.i, c.j)));
        candidates_.push_back(std::move(cand));
      }
    }
  }

  // Unions of same-colored parts.
  for (int color = 0; color < kNumColors; ++color) {
    std::vector<const Part*> same;
    for (const auto& p : parts_)
      if (code(p.color) == color) same.push_back(&p);
    for (std::size_t a = 0; a < same.size(); ++a) {
      for (std::size_t b = a + 1; b < same.size(); ++b) {
        std::vector<Cell> cells = same[a]->cells;
        cells.insert(cells.end(), same[b]->cells.begin(), same[b]->cells.end());
        const Box box = bounding_box(cells);
        int same_in_box = 0;
        for (int i = box.top; i < box.top + box.height; ++i)
          for (int j = box.left; j < box.left + box.width; ++j)
            if (code(grid_.at(i, j)) == color) ++same_in_box;
        const int n = static_cast<int>(cells.size());
        if (same_in_box != n || box.height * box.width - n >= n) continue;
        std::sort(cells.begin(), cells.end());
        add_shape_candidates(color_from_code(color), cells, false);
      }
    }
    if (color_unions && color != 0 && same.size() > 2) {
      std::vector<Cell> cells;
      for (const auto* p : same) cells.insert(cells.end(), p->cells.begin(), p->cells.end());
      std::sort(cells.begin(), cells.end());
      add_shape_candidates(color_from_code(color), cells, true);
    }
  }

  std::unordered_set<std::string> seen;
  std::vector<Candidate> unique;
  for (auto& c : candidates_)
    if (seen.insert(c.object.to_string()).second) unique.push_back(std::move(c));
  candidates_ = std::move(unique);

  std::stable_sort(candidates_.begin(), candidates_.end(), [](const Candidate& a, const Candidate& b) {
    const bool ba = a.color == Color::Black, bb = b.color == Color::Black;
    if (ba != bb) return bb;
    if (a.covered != b.covered) return a.covered > b.covered;
    if (a.box.top != b.box.top) return a.box.top < b.box.top;
    if (a.box.left != b.box.left) return a.box.left < b.box.left;
    return !a.exact_mask && b.exact_mask;
  });
}

void GridScene::add_shape_candidates(Color color, const std::vector<Cell>& cells, bool dense_only) {
  const Box box = bounding_box(cells);
  const int n = static_cast<int>(cells.size());
  const int area = box.height * box.width;
  CellSet sources;
  for (const auto& c : cells) sources.set(static_cast<std::size_t>(cell_index(c.i, c.j)));
  auto add = [&](Term mask, int covered, bool exact) {
    Term obj = Term::pos_shape(Term::vec(box.top, box.left),
                               Term::rectangle(Term::vec(box.height, box.width), Term::color(color), std::move(mask)));
    candidates_.push_back(Candidate{std::move(obj), color, covered, box, exact, sources});
  };
  if (n == area) {
    add(Term::mask(MaskKind::Full), area, false);
    return;
  }
  if (!dense_only || area - n < n) add(Term::mask(MaskKind::Full), area, false);
  Bitmap bits(box.height, box.width);
  for (const auto& c : cells) bits.set(c.i - box.top, c.j - box.left, true);
  if (auto k = recognize_mask(bits))
    add(Term::mask(*k), n, true);
  else
    add(Term::bitmap_mask(std::move(bits)), n, true);
}

Grid draw(const ParseTree& tree) {
  if (!tree.is_ctor(Ctor::Grid) || !tree.is_ground()) throw ModelError("cannot draw " + tree.to_string());
  const Term& size = tree.field(Field::Size);
  const int h = size.field(Field::I).nat_value();
  const int w = size.field(Field::J).nat_value();
  if (h < 1 || w < 1 || h > kMaxGridDim || w > kMaxGridDim)
    throw Error("grid size " + std::to_string(h) + "x" + std::to_string(w) + " out of range");
  Grid g(h, w, tree.field(Field::Color).color_value());
  const auto& layers = tree.field(Field::Layers).args();
  for (auto it = layers.rbegin(); it != layers.rend(); ++it)
    paint_object(*it, [&](int i, int j, Color c) {
      if (g.contains(i, j)) g.set(i, j, c);
    });
  return g;
}

namespace {

Term gen_nat(const Term& t, int dflt) { return t.is_unknown() ? Term::nat(dflt) : t; }

Term gen_vec(const Term& t, int di, int dj) {
  if (t.is_unknown()) return Term::vec(di, dj);
  if (!t.is_ctor(Ctor::Vec)) return t;
  return Term::vec(gen_nat(t.args()[0], di), gen_nat(t.args()[1], dj));
}

Term gen_color(const Term& t, Color dflt) { return t.is_unknown() ? Term::color(dflt) : t; }

Term gen_shape(const Term& t) {
  Term s = t.is_unknown() ? Term::rectangle(Term::unknown(), Term::unknown(), Term::unknown()) : t;
  if (s.is_ctor(Ctor::Point)) return Term::point(gen_color(s.field(Field::Color), Color::Grey));
  if (!s.is_ctor(Ctor::Rectangle)) return s;
  Term size = gen_vec(s.field(Field::Size), 2, 2);
  Term mask = s.field(Field::Mask);
  if (mask.is_unknown()) {
    mask = Term::mask(MaskKind::Full);
  } else if (mask.is_ctor(Ctor::Bitmap) && mask.field(Field::Bits).is_unknown()) {
    const int h = size.field(Field::I).nat_value(), w = size.field(Field::J).nat_value();
    mask = Term::bitmap_mask(Bitmap(h, w, true));
  }
  return Term::rectangle(std::move(size), gen_color(s.field(Field::Color), Color::Grey), std::move(mask));
}

Term gen_object(const Term& t) {
  if (t.is_unknown()) return Term::pos_shape(Term::vec(0, 0), gen_shape(t));
  if (!t.is_ctor(Ctor::PosShape)) return t;
  return Term::pos_shape(gen_vec(t.field(Field::Pos), 0, 0), gen_shape(t.field(Field::Shape)));
}

}  // namespace

ParseTree generate(const Term& m) {
  if (m.has_expr()) throw ModelError("generate with unapplied expressions");
  if (m.is_unknown()) return Term::grid(Term::vec(10, 10), Term::color(Color::Black), {});
  if (!m.is_ctor(Ctor::Grid)) throw ModelError("not a grid model: " + m.to_string());
  std::vector<Term> layers;
  for (const auto& l : m.field(Field::Layers).args()) layers.push_back(gen_object(l));
  return Term::grid(gen_vec(m.field(Field::Size), 10, 10), gen_color(m.field(Field::Color), Color::Black),
                    std::move(layers));
}

std::vector<Reading> parse(const Term& m0, const GridScene& scene, const ParseConfig& cfg, const DlConfig& dl) {
  const Term m = m0.is_unknown() ? Term::grid(Term::unknown(), Term::unknown(), {}) : m0;
  if (!m.is_ctor(Ctor::Grid)) throw ModelError("not a grid model: " + m.to_string());
  if (m.has_expr()) throw ModelError("parse with unapplied expressions");
  const Grid& g = scene.grid();
  const int h = g.height(), w = g.width();

  const Term size = Term::vec(h, w);
  std::vector<Diff> grid_diffs;
  if (!collect_diffs(size, m.field(Field::Size), Path().child(Field::Size), grid_diffs, cfg.max_diffs)) return {};

  const auto& patterns = m.field(Field::Layers).args();
  std::vector<std::vector<LayerOption>> options(patterns.size());
  for (std::size_t k = 0; k < patterns.size(); ++k) {
    const Term& pat = patterns[k];
    const Path base = Path().layer(static_cast<int>(k));
    auto& opts = options[k];
    if (pat.is_ground()) opts.push_back({pat, nullptr, {}});
    std::vector<std::pair<LayerOption, std::size_t>> scored;
    const auto& cands = scene.candidates();
    for (std::size_t r = 0; r < cands.size(); ++r) {
      std::vector<Diff> diffs;
      if (!collect_diffs(cands[r].object, pat, base, diffs, cfg.max_diffs)) continue;
      if (pat.is_ground() && diffs.empty()) continue;
      scored.push_back({LayerOption{cands[r].object, &cands[r].sources, std::move(diffs)}, r});
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first.diffs.size() < b.first.diffs.size(); });
    for (auto& s : scored) {
      if (static_cast<int>(opts.size()) >= cfg.max_candidates_per_layer) break;
      opts.push_back(std::move(s.first));
    }
    if (opts.empty()) return {};
  }

  const Term& bg_pattern = m.field(Field::Color);
  std::vector<Reading> readings;
  const std::size_t n = options.size();
  using Tuple = std::vector<int>;
  using Entry = std::pair<int, Tuple>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  std::set<Tuple> queued;
  std::array<int, kNumColors> overall{};
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) ++overall[static_cast<std::size_t>(code(g.at(i, j)))];
  queue.push({0, Tuple(n, 0)});
  queued.insert(Tuple(n, 0));
  const int pop_limit = std::max(1024, 16 * cfg.max_trees_before_sort);
  int pops = 0;
  int produced = 0;

  while (!queue.empty() && produced < cfg.max_trees_before_sort && pops < pop_limit) {
    const Tuple tuple = queue.top().second;
    const int rank = queue.top().first;
    queue.pop();
    ++pops;
    for (std::size_t k = 0; k < n; ++k) {
      if (tuple[k] + 1 < static_cast<int>(options[k].size())) {
        Tuple next = tuple;
        ++next[k];
        if (queued.insert(next).second) queue.push({rank + 1, std::move(next)});
      }
    }

    CellSet used;
    std::size_t ndiffs = grid_diffs.size();
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) {
      const LayerOption& opt = options[k][static_cast<std::size_t>(tuple[k])];
      ndiffs += opt.diffs.size();
      if (opt.sources) {
        if ((used & *opt.sources).any()) ok = false;
        used |= *opt.sources;
      }
    }
    if (!ok || static_cast<int>(ndiffs) > cfg.max_diffs) continue;

    std::array<int8_t, kCells> canvas;
    canvas.fill(-1);
    std::vector<Term> objects;
    std::vector<Diff> diffs = grid_diffs;
    for (std::size_t k = 0; k < n; ++k) {
      const LayerOption& opt = options[k][static_cast<std::size_t>(tuple[k])];
      objects.push_back(opt.object);
      diffs.insert(diffs.end(), opt.diffs.begin(), opt.diffs.end());
    }
    for (auto it = objects.rbegin(); it != objects.rend(); ++it)
      paint_object(*it, [&](int i, int j, Color c) {
        if (i >= 0 && j >= 0 && i < h && j < w) canvas[static_cast<std::size_t>(cell_index(i, j))] = static_cast<int8_t>(code(c));
      });
    std::array<int, kNumColors> counts{};
    for (int i = 0; i < h; ++i)
      for (int j = 0; j < w; ++j)
        if (canvas[static_cast<std::size_t>(cell_index(i, j))] < 0) ++counts[static_cast<std::size_t>(code(g.at(i, j)))];
    const Color majority = majority_color(counts, overall);

    std::vector<std::pair<Color, bool>> backgrounds;  // color, is a diff
    if (bg_pattern.is_unknown()) {
      backgrounds.push_back({majority, false});
    } else {
      backgrounds.push_back({bg_pattern.color_value(), false});
      if (majority != bg_pattern.color_value() && static_cast<int>(ndiffs) < cfg.max_diffs &&
          counts[static_cast<std::size_t>(code(majority))] > 0)
        backgrounds.push_back({majority, true});
    }

    for (const auto& [bg, is_diff] : backgrounds) {
      Grid drawn(h, w, bg);
      for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
          const int8_t c = canvas[static_cast<std::size_t>(cell_index(i, j))];
          if (c >= 0) drawn.set(i, j, color_from_code(c));
        }
      Reading r;
      r.tree = Term::grid(size, Term::color(bg), objects);
      r.diffs = diffs;
      if (is_diff) r.diffs.push_back({Path().child(Field::Color), Term::color(bg)});
      r.delta = delta_between(g, drawn);
      r.dl_tree = l_parse_tree(r.tree, m, r.diffs, dl);
      r.dl_delta = l_delta(r.delta, drawn, dl);
      r.rank = rank;
      readings.push_back(std::move(r));
      ++produced;
    }
  }

  std::stable_sort(readings.begin(), readings.end(), [](const Reading& a, const Reading& b) {
    if (a.dl() != b.dl()) return a.dl() < b.dl();
    return a.rank < b.rank;
  });
  std::vector<Reading> kept;
  for (auto& r : readings) {
    if (static_cast<int>(kept.size()) >= cfg.max_trees_kept) break;
    bool dup = false;
    for (const auto& k : kept) dup = dup || k.tree == r.tree;
    if (!dup) kept.push_back(std::move(r));
  }
  return kept;
}

std::vector<Reading> parse(const Term& m, const Grid& g, const ParseConfig& cfg, const DlConfig& dl) {
  return parse(m, GridScene(g, cfg), cfg, dl);
}

std::vector<Reading> read(const Term& m, const ParseTree* env, const GridScene& scene, const ParseConfig& cfg,
                          const DlConfig& dl) {
  return parse(apply_model(m, env), scene, cfg, dl);
}

std::vector<Reading> read(const Term& m, const ParseTree* env, const Grid& g, const ParseConfig& cfg,
                          const DlConfig& dl) {
  return read(m, env, GridScene(g, cfg), cfg, dl);
}

Written write(const Term& m, const ParseTree* env) {
  ParseTree tree = generate(apply_model(m, env));
  Grid g = draw(tree);
  return {std::move(tree), std::move(g)};
}

std::string describe_candidates(const GridScene& scene) {
  std::string out;
  const auto& cands = scene.candidates();
  for (std::size_t r = 0; r < cands.size(); ++r)
    out += std::to_string(r) + "  " + cands[r].object.to_string() + "  covered=" + std::to_string(cands[r].covered) +
           "\n";
  return out;
}

}  // namespace arcmdl
