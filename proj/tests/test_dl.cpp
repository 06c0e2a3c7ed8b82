#include <cmath>

#include "arcmdl/dl.hpp"
#include "doctest.h"

using namespace arcmdl;

namespace {

double lg(double x) { return std::log(x) / std::log(2.0); }

// Closed forms of the codes, written out by hand.
double nat_bits(int n) { return 2.0 * lg(n + 1.0) + 1.0; }
const double kValue = -lg(0.4);
const double kExpr = 1.0;
const double kUnknown = -lg(0.1);

DlConfig literal_config() {
  DlConfig c;
  c.data_as_templates = false;
  c.empty_data_is_free = false;
  return c;
}

}  // namespace

TEST_CASE("natural number code") {
  CHECK(l_nat(0) == doctest::Approx(1.0));
  CHECK(l_nat(1) == doctest::Approx(3.0));
  CHECK(l_nat(3) == doctest::Approx(5.0));
  CHECK(l_nat(12) == doctest::Approx(8.400879));
  CHECK_THROWS_AS(l_nat(-1), Error);
  // Kraft: sum of 2^-l_nat(n) = pi^2 / 12.
  double kraft = 0.0;
  for (int n = 0; n < 200000; ++n) kraft += std::exp2(-l_nat(n));
  CHECK(kraft <= 1.0);
  CHECK(kraft == doctest::Approx(M_PI * M_PI / 12.0).epsilon(1e-4));
}

TEST_CASE("basic codes") {
  CHECK(l_uniform(10) == doctest::Approx(lg(10)));
  CHECK_THROWS_AS(l_uniform(0), Error);
  CHECK(l_dist(0.5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(l_dist(0.0), Error);
  CHECK(l_position(3, 10) == doctest::Approx(lg(10)));
  CHECK(l_position(3, std::nullopt) == doctest::Approx(lg(30)));
  CHECK_THROWS_AS(l_position(10, 10), Error);
  CHECK(l_bitmap(3, 4) == doctest::Approx(12.0));
}

TEST_CASE("path similarity ignores layer indices and roots") {
  CHECK(path_similarity(Path::parse("layers[0].pos.i"), Path::parse("layers[3].pos.i")) == 3.0);
  CHECK(path_similarity(Path::parse("size.i"), Path::parse("layers[0].shape.size.i")) == 2.0);
  CHECK(path_similarity(Path::parse("size.i"), Path::parse("size.j")) == 0.0);
}

TEST_CASE("initial grid model") {
  const DlConfig cfg;
  const double m0 = kValue + 2 * kUnknown + nat_bits(0);
  CHECK(l_model(parse_term("Grid(?, ?, [])"), nullptr, cfg) == doctest::Approx(m0));
  CHECK(m0 == doctest::Approx(8.966).epsilon(1e-3));
  const Signature env = env_signature(parse_term("Grid(?, ?, [])"));
  CHECK(l_task_model({parse_term("Grid(?, ?, [])"), parse_term("Grid(?, ?, [])")}, cfg) == doctest::Approx(2 * m0));
  CHECK(l_model(parse_term("?"), &env, cfg) == doctest::Approx(kUnknown));
}

TEST_CASE("model constants") {
  const DlConfig cfg;
  // Vec and Grid constructors are free; the background color uses its prior.
  const double grid = kValue + (kValue + 2 * (kValue + nat_bits(10))) + (kValue - lg(0.91)) + nat_bits(0);
  CHECK(l_model(parse_term("Grid(Vec(10, 10), black, [])"), nullptr, cfg) == doctest::Approx(grid));
  // Shapes: kind choice, then fields; positions are uniform over the grid.
  const double rect = kValue + 1.0 + kUnknown + (kValue + lg(10)) + (kValue + 1.0);
  const double obj = kValue + kUnknown + rect;
  const double g = kValue + (kValue + 2 * (kValue + nat_bits(10))) + kUnknown + nat_bits(1) + obj;
  CHECK(l_model(parse_term("Grid(Vec(10, 10), ?, [PosShape(?, Rectangle(?, red, Full))])"), nullptr, cfg) ==
        doctest::Approx(g));
  const double pos = kValue + 2 * (kValue + lg(10));
  const double obj2 = kValue + pos + (kValue + 1.0 + kUnknown);
  const double g2 = kValue + (kValue + 2 * (kValue + nat_bits(10))) + kUnknown + nat_bits(1) + obj2;
  CHECK(l_model(parse_term("Grid(Vec(10, 10), ?, [PosShape(Vec(3, 4), Point(?))])"), nullptr, cfg) ==
        doctest::Approx(g2));
  // Unknown grid size: positions fall back to the maximum dimension.
  const double obj3 = kValue + (kValue + 2 * (kValue + lg(30))) + kUnknown;
  CHECK(l_model(parse_term("Grid(?, ?, [PosShape(Vec(3, 4), ?)])"), nullptr, cfg) ==
        doctest::Approx(kValue + 2 * kUnknown + nat_bits(1) + obj3));
  // Masks and bitmaps.
  const double wrap = kValue + 2 * kUnknown + nat_bits(1) + kValue + kUnknown;
  const double masked = kValue + 1.0 + kUnknown + kUnknown + (kValue - lg(0.025));
  CHECK(l_model(parse_term("Grid(?, ?, [PosShape(?, Rectangle(?, ?, EvenCheckboard))])"), nullptr, cfg) ==
        doctest::Approx(wrap + masked));
  const double bm = kValue + 1.0 + kUnknown + kUnknown + (kValue - lg(0.3) + kValue + 6.0);
  CHECK(l_model(parse_term("Grid(?, ?, [PosShape(?, Rectangle(?, ?, Bitmap(101|010)))])"), nullptr, cfg) ==
        doctest::Approx(wrap + bm));
}

TEST_CASE("variables and arithmetic") {
  const DlConfig cfg;
  const Signature env = env_signature(parse_term("Grid(?, ?, [])"));
  // Only one Vec in the environment: the variable choice is free.
  CHECK(l_model(parse_term("Grid(size, ?, [])"), &env, cfg) ==
        doctest::Approx(kValue + (kExpr + 1.0) + kUnknown + nat_bits(0)));
  // size.i against {size.i, size.j} at path size.i: e^2 / (e^2 + 1).
  const double var_i = -lg(std::exp(2.0) / (std::exp(2.0) + 1.0));
  const double var_j = -lg(1.0 / (std::exp(2.0) + 1.0));
  CHECK(l_model(parse_term("Grid(Vec(size.i, size.j), ?, [])"), &env, cfg) ==
        doctest::Approx(kValue + kValue + 2 * (kExpr + 1.0 + var_i) + kUnknown + nat_bits(0)));
  CHECK(l_model(parse_term("Grid(Vec(size.j, ?), ?, [])"), &env, cfg) ==
        doctest::Approx(kValue + kValue + (kExpr + 1.0 + var_j) + kUnknown + kUnknown + nat_bits(0)));
  // size.i - 1: application, choice among 3 functions, then the operands.
  const double minus = kExpr + 1.0 + lg(3) + (kExpr + 1.0 + var_i) + (kValue + nat_bits(1));
  CHECK(l_model(parse_term("Grid(Vec(size.i - 1, ?), ?, [])"), &env, cfg) ==
        doctest::Approx(kValue + kValue + minus + kUnknown + kUnknown + nat_bits(0)));
  CHECK_THROWS_AS(l_model(parse_term("Grid(size, ?, [])"), nullptr, cfg), ModelError);
  CHECK_THROWS_AS(l_model(parse_term("Grid(layers[0].pos, ?, [])"), &env, cfg), ModelError);
}

TEST_CASE("parse tree fillings") {
  const DlConfig cfg = literal_config();
  const Term m0 = parse_term("Grid(?, ?, [])");
  const Term tree = parse_term("Grid(Vec(12, 13), black, [])");
  CHECK(l_parse_tree(tree, m0, {}, cfg) == doctest::Approx(nat_bits(12) + nat_bits(13) - lg(0.91)));
  // Known parts cost nothing.
  CHECK(l_parse_tree(tree, parse_term("Grid(Vec(12, ?), black, [])"), {}, cfg) == doctest::Approx(nat_bits(13)));
  CHECK(l_parse_tree(tree, tree, {}, cfg) == 0.0);
  const Term t2 = parse_term("Grid(Vec(10, 10), black, [PosShape(Vec(2, 3), Rectangle(Vec(2, 4), red, Full))])");
  const Term m2 = parse_term("Grid(Vec(10, 10), black, [PosShape(?, Rectangle(?, red, ?))])");
  CHECK(l_parse_tree(t2, m2, {}, cfg) == doctest::Approx(2 * lg(10) + nat_bits(2) + nat_bits(4) + 1.0));
  const Term m3 = parse_term("Grid(Vec(10, 10), black, [?])");
  CHECK(l_parse_tree(t2, m3, {}, cfg) ==
        doctest::Approx(2 * lg(10) + 1.0 + nat_bits(2) + nat_bits(4) + lg(10) + 1.0));
}

TEST_CASE("parse tree fillings coded as templates") {
  const DlConfig cfg;
  const Term tree = parse_term("Grid(Vec(12, 13), black, [])");
  // Vec node, two naturals and the color each pay a template-kind choice.
  CHECK(l_parse_tree(tree, parse_term("Grid(?, ?, [])"), {}, cfg) ==
        doctest::Approx(4 * kValue + nat_bits(12) + nat_bits(13) - lg(0.91)));
  // An explicit Vec(?, ?) saves the choice for the Vec node.
  CHECK(l_parse_tree(tree, parse_term("Grid(Vec(?, ?), ?, [])"), {}, cfg) ==
        doctest::Approx(3 * kValue + nat_bits(12) + nat_bits(13) - lg(0.91)));
}

TEST_CASE("parse tree divergences") {
  const Term tree = parse_term("Grid(Vec(10, 10), black, [PosShape(Vec(2, 3), Point(red))])");
  const Term model = parse_term("Grid(Vec(10, 10), black, [PosShape(Vec(2, 3), Point(blue))])");
  const std::vector<Diff> diffs{{Path::parse("layers[0].shape.color"), Term::color(Color::Red)}};
  const double where = lg(node_count(model));
  CHECK(node_count(model) == 11);
  CHECK(l_parse_tree(tree, model, diffs, DlConfig{}) == doctest::Approx(nat_bits(1) - 1.0 + where + kValue + lg(10)));
  CHECK(l_parse_tree(tree, model, diffs, literal_config()) == doctest::Approx(nat_bits(1) + where + lg(10)));
  // A mask replaced by a 2x2 bitmap: location, mask constructor, 4 bits.
  const Term rt = parse_term("Grid(Vec(10, 10), black, [PosShape(Vec(2, 3), Rectangle(Vec(2, 2), red, Bitmap(10|01)))])");
  const Term rm = parse_term("Grid(Vec(10, 10), black, [PosShape(Vec(2, 3), Rectangle(Vec(2, 2), red, Full))])");
  const std::vector<Diff> md{{Path::parse("layers[0].shape.mask"), parse_term("Bitmap(10|01)")}};
  CHECK(l_parse_tree(rt, rm, md, literal_config()) ==
        doctest::Approx(nat_bits(1) + lg(node_count(rm)) - lg(0.3) + 4.0));
}

TEST_CASE("delta codes") {
  const Grid g(10, 12);
  const double literal_point = lg(10) + lg(12) + 1.0 + lg(10);
  CHECK(l_delta_point(10, 12, literal_config()) == doctest::Approx(literal_point));
  CHECK(l_delta_point(10, 12, DlConfig{}) == doctest::Approx(literal_point + 6 * kValue));
  const Delta d{{0, 0, Color::Red}, {4, 5, Color::Blue}, {9, 11, Color::Grey}};
  CHECK(l_delta(d, g, literal_config()) == doctest::Approx(nat_bits(3) + 3 * literal_point));
  CHECK(l_delta({}, g, literal_config()) == doctest::Approx(1.0));
  CHECK(l_delta({}, g, DlConfig{}) == 0.0);
  CHECK(l_delta(d, g, DlConfig{}) == doctest::Approx(nat_bits(3) - 1.0 + 3 * (literal_point + 6 * kValue)));
}
