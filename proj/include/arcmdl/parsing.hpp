#pragma once

#include <bitset>
#include <vector>

#include "arcmdl/dl.hpp"
#include "arcmdl/grid.hpp"
#include "arcmdl/term.hpp"

namespace arcmdl {

struct ParseConfig {
  int max_candidates_per_layer = 64;
  int max_trees_before_sort = 64;
  int max_trees_kept = 3;
  int max_diffs = 0;
  Connectivity connectivity = Connectivity::Four;
  bool color_unions = false;  // see GridScene
};

struct Reading {
  ParseTree tree;
  Delta delta;
  std::vector<Diff> diffs;
  double dl_tree = 0.0;
  double dl_delta = 0.0;
  int rank = 0;  // sum of the candidate ranks of the layers

  double dl() const { return dl_tree + dl_delta; }
};

using CellSet = std::bitset<kMaxGridDim * kMaxGridDim>;

// A candidate object found in a grid: a ground PosShape term.
struct Candidate {
  Term object;
  Color color;
  int covered = 0;  // cells drawn by the shape
  Box box;
  bool exact_mask = false;
  CellSet sources;  // grid cells the candidate was built from
};

// Segmentation and candidate objects of a grid, in the parsing order:
// non-black first, then more covered cells first, then scanline order of
// the box, then full mask before exact mask.
class GridScene {
 public:
  // With color_unions, all parts of a non-black color with more than two
  // parts also form one candidate.
  explicit GridScene(Grid g, Connectivity conn = Connectivity::Four, bool color_unions = false);
  GridScene(Grid g, const ParseConfig& cfg) : GridScene(std::move(g), cfg.connectivity, cfg.color_unions) {}

  const Grid& grid() const { return grid_; }
  const std::vector<Part>& parts() const { return parts_; }
  const std::vector<Candidate>& candidates() const { return candidates_; }

 private:
  void add_shape_candidates(Color color, const std::vector<Cell>& cells, bool dense_only);

  Grid grid_;
  std::vector<Part> parts_;
  std::vector<Candidate> candidates_;
};

// Regular mask describing the cells of `bits`, checked in the order Full,
// Border, EvenCheckboard, OddCheckboard, PlusCross, TimesCross.
std::optional<MaskKind> recognize_mask(const Bitmap& bits);

// Draws a ground grid term; out-of-bounds cells are clipped.
Grid draw(const ParseTree& tree);

// Replaces unknowns by default values.
ParseTree generate(const Term& m);

// Parses a grid with an expression-free model. Readings are sorted by
// increasing DL; empty when no reading fits the bounds.
std::vector<Reading> parse(const Term& m, const GridScene& scene, const ParseConfig& cfg, const DlConfig& dl);
std::vector<Reading> parse(const Term& m, const Grid& g, const ParseConfig& cfg, const DlConfig& dl);

// apply, parse, delta. Throws EvalError when the model cannot be applied.
std::vector<Reading> read(const Term& m, const ParseTree* env, const GridScene& scene, const ParseConfig& cfg,
                          const DlConfig& dl);
std::vector<Reading> read(const Term& m, const ParseTree* env, const Grid& g, const ParseConfig& cfg,
                          const DlConfig& dl);

struct Written {
  ParseTree tree;
  Grid grid;
};

// apply, generate, draw.
Written write(const Term& m, const ParseTree* env);

// Debug listing of a scene's candidates in template syntax.
std::string describe_candidates(const GridScene& scene);

}  // namespace arcmdl
