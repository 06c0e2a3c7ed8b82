#pragma once

// Description lengths, in bits.

#include <array>
#include <optional>
#include <vector>

#include "arcmdl/grid.hpp"
#include "arcmdl/term.hpp"

namespace arcmdl {

struct DlConfig {
  double alpha = 10.0;
  // Background colors: black 0.91, every other color 0.01.
  std::array<double, kNumColors> bg_color = {0.91, 0.01, 0.01, 0.01, 0.01, 0.01, 0.01, 0.01, 0.01, 0.01};
  // Indexed by MaskKind: Full, Border, EvenCheckboard, OddCheckboard,
  // PlusCross, TimesCross, Bitmap.
  std::array<double, 7> mask = {0.5, 0.1, 0.025, 0.025, 0.025, 0.025, 0.3};
  double shape_point = 0.5;
  double shape_rectangle = 0.5;
  double expr_application = 0.5;
  double expr_variable = 0.5;
  double template_value = 0.4;
  double template_expression = 0.5;
  double template_unknown = 0.1;
  int max_grid_dim = kMaxGridDim;
  // Grid data (unknown fillings, divergences and delta points, the latter
  // as PosShape(Vec(i,j), Point(c))) is coded as templates, with one
  // template-kind choice per node.
  bool data_as_templates = true;
  // Subtract the code of a zero count from delta and diff counts, so that
  // a grid entirely explained by its parse tree costs 0 bits.
  bool empty_data_is_free = true;
};

double l_nat(int n);
double l_uniform(int cardinality);
double l_dist(double p);
// Uniform over an axis; extent nullopt means the grid size is unknown and
// the maximum dimension is used.
double l_position(int i, std::optional<int> extent, int max_dim = kMaxGridDim);
double l_bitmap(int height, int width);

// Longest common suffix of field steps, layer indices ignored.
double path_similarity(const Path& a, const Path& b);

// Grid model DL. `env` is the signature of the environment (null for
// input models).
double l_model(const Term& m, const Signature* env, const DlConfig& cfg);
double l_task_model(const TaskModel& m, const DlConfig& cfg);

struct Diff {
  Path path;
  Term subtree;
  bool operator==(const Diff&) const = default;
};

// DL of a parse tree given the applied grid model it was parsed with:
// the fillings of unknowns plus the recorded divergences.
double l_parse_tree(const Term& tree, const Term& applied_model, const std::vector<Diff>& diffs,
                    const DlConfig& cfg);

// Code of a single delta point relative to a drawn grid of the given size.
double l_delta_point(int height, int width, const DlConfig& cfg);
double l_delta(const Delta& d, const Grid& drawn, const DlConfig& cfg);

// Code of a ground subterm reached by `path` inside ground grid `tree`.
double l_ground_at(const Term& tree, const Path& path, const Term& sub, const DlConfig& cfg);

}  // namespace arcmdl
