#include <random>

#include "arcmdl/parsing.hpp"
#include "doctest.h"

using namespace arcmdl;

namespace {

Grid rows(const std::vector<std::vector<int>>& r) { return Grid::from_rows(r); }

Grid random_grid(std::mt19937& rng, int h, int w, int ncolors) {
  std::uniform_int_distribution<int> col(0, ncolors - 1);
  Grid g(h, w);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) g.set(i, j, color_from_code(col(rng)));
  return g;
}

// Grid with a few random rectangles on a black background.
Grid random_scene(std::mt19937& rng) {
  const int h = 3 + static_cast<int>(rng() % 10), w = 3 + static_cast<int>(rng() % 10);
  Grid g(h, w);
  const int n = static_cast<int>(rng() % 4);
  for (int k = 0; k < n; ++k) {
    const int i0 = static_cast<int>(rng() % static_cast<unsigned>(h)), j0 = static_cast<int>(rng() % static_cast<unsigned>(w));
    const int rh = 1 + static_cast<int>(rng() % 4), rw = 1 + static_cast<int>(rng() % 4);
    const Color c = color_from_code(1 + static_cast<int>(rng() % 9));
    for (int i = i0; i < std::min(h, i0 + rh); ++i)
      for (int j = j0; j < std::min(w, j0 + rw); ++j) g.set(i, j, c);
  }
  return g;
}

const ParseConfig kParse;
const DlConfig kDl;

}  // namespace

TEST_CASE("drawing") {
  const Term t = parse_term(
      "Grid(Vec(4, 5), blue, [PosShape(Vec(1, 1), Point(red)), PosShape(Vec(0, 0), Rectangle(Vec(3, 3), green, Border)),"
      " PosShape(Vec(3, 3), Rectangle(Vec(2, 3), yellow, Full))])");
  CHECK(to_text(draw(t)) == "33311\n32311\n33311\n11144\n");
  CHECK(to_text(draw(parse_term("Grid(Vec(3, 3), black, [PosShape(Vec(0, 0), Rectangle(Vec(3, 3), grey, TimesCross))])"))) ==
        "505\n050\n505\n");
  CHECK(to_text(draw(parse_term("Grid(Vec(2, 3), black, [PosShape(Vec(0, 1), Rectangle(Vec(2, 2), red, Bitmap(10|01)))])"))) ==
        "020\n002\n");
  CHECK_THROWS_AS(draw(parse_term("Grid(Vec(0, 3), black, [])")), Error);
  CHECK_THROWS_AS(draw(parse_term("Grid(Vec(31, 3), black, [])")), Error);
  CHECK_THROWS_AS(draw(parse_term("Grid(?, black, [])")), ModelError);
}

TEST_CASE("generation defaults") {
  CHECK(generate(parse_term("Grid(?, ?, [?])")).to_string() ==
        "Grid(Vec(10, 10), black, [PosShape(Vec(0, 0), Rectangle(Vec(2, 2), grey, Full))])");
  CHECK(generate(parse_term("Grid(Vec(?, 3), ?, [PosShape(Vec(?, 1), Point(?))])")).to_string() ==
        "Grid(Vec(10, 3), black, [PosShape(Vec(0, 1), Point(grey))])");
  CHECK(generate(parse_term("Grid(?, ?, [PosShape(?, Rectangle(Vec(1, 3), ?, Bitmap(?)))])")).to_string() ==
        "Grid(Vec(10, 10), black, [PosShape(Vec(0, 0), Rectangle(Vec(1, 3), grey, Bitmap(111)))])");
  CHECK_THROWS_AS(generate(parse_term("Grid(size, ?, [])")), ModelError);
}

TEST_CASE("mask recognition") {
  CHECK(recognize_mask(Bitmap::parse("111|101|111")) == MaskKind::Border);
  CHECK(recognize_mask(Bitmap::parse("101|010|101")) == MaskKind::EvenCheckboard);
  CHECK(recognize_mask(Bitmap::parse("010|101")) == MaskKind::OddCheckboard);
  CHECK(recognize_mask(Bitmap::parse("010|111|010")) == MaskKind::PlusCross);
  CHECK(recognize_mask(Bitmap::parse("10001|01010|00100|01010|10001")) == MaskKind::TimesCross);
  CHECK(recognize_mask(Bitmap::parse("11|11")) == MaskKind::Full);
  CHECK_FALSE(recognize_mask(Bitmap::parse("110|011")).has_value());
}

TEST_CASE("scene candidates") {
  const Grid g = rows({{0, 0, 0, 0, 0},
                       {0, 2, 2, 2, 0},
                       {0, 2, 4, 2, 0},
                       {0, 2, 2, 2, 0},
                       {0, 0, 0, 0, 0}});
  const GridScene scene(g);
  const auto& c = scene.candidates();
  REQUIRE(c.size() >= 3);
  CHECK(c[0].object.to_string() == "PosShape(Vec(1, 1), Rectangle(Vec(3, 3), red, Full))");
  CHECK(c[1].object.to_string() == "PosShape(Vec(1, 1), Rectangle(Vec(3, 3), red, Border))");
  CHECK(c.back().color == Color::Black);
  bool point = false;
  for (const auto& x : c) point = point || x.object.to_string() == "PosShape(Vec(2, 2), Point(yellow))";
  CHECK(point);
}

TEST_CASE("union of same-colored parts") {
  // A checkboard splits into single cells under 4-connectivity.
  const Grid g = rows({{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 1}});
  auto has_checkboard = [](const GridScene& scene) {
    for (const auto& c : scene.candidates())
      if (c.object.to_string() == "PosShape(Vec(1, 1), Rectangle(Vec(3, 3), blue, EvenCheckboard))") return true;
    return false;
  };
  CHECK(has_checkboard(GridScene(g, Connectivity::Four, true)));
  CHECK_FALSE(has_checkboard(GridScene(g)));
  // Pairs of parts are joined when they fill most of their box.
  const GridScene pairs(rows({{1, 1, 0, 1, 1}}));
  bool joined = false;
  for (const auto& c : pairs.candidates())
    joined = joined || c.object.to_string() == "PosShape(Vec(0, 0), Rectangle(Vec(1, 5), blue, Full))";
  CHECK(joined);
}

TEST_CASE("parsing the nested squares") {
  const Grid g = rows({{0, 0, 0, 0, 0, 0},
                       {0, 2, 2, 2, 0, 0},
                       {0, 2, 4, 2, 0, 0},
                       {0, 2, 2, 2, 0, 0},
                       {0, 0, 0, 0, 0, 0}});
  const Term m = parse_term("Grid(?, ?, [PosShape(?, ?), PosShape(?, ?)])");
  const auto rs = parse(m, g, kParse, kDl);
  REQUIRE_FALSE(rs.empty());
  CHECK(rs[0].tree.to_string() ==
        "Grid(Vec(5, 6), black, [PosShape(Vec(2, 2), Point(yellow)), PosShape(Vec(1, 1), Rectangle(Vec(3, 3), red, Full))])");
  CHECK(rs[0].delta.empty());
  CHECK(rs[0].dl_delta == 0.0);
  for (std::size_t k = 1; k < rs.size(); ++k) CHECK(rs[k - 1].dl() <= rs[k].dl());
  CHECK(static_cast<int>(rs.size()) <= kParse.max_trees_kept);
  CHECK(rs[0].dl_tree == doctest::Approx(l_parse_tree(rs[0].tree, m, {}, kDl)));

  // The initial model explains everything with the delta.
  const auto r0 = parse(parse_term("Grid(?, ?, [])"), g, kParse, kDl);
  REQUIRE(r0.size() == 1);
  CHECK(r0[0].delta.size() == 9);
  CHECK(r0[0].tree.to_string() == "Grid(Vec(5, 6), black, [])");
}

TEST_CASE("model constraints filter readings") {
  const Grid g = rows({{0, 0, 0}, {0, 3, 0}, {0, 0, 0}});
  CHECK(parse(parse_term("Grid(Vec(3, 4), ?, [])"), g, kParse, kDl).empty());
  CHECK(parse(parse_term("Grid(?, ?, [PosShape(?, Point(red))])"), g, kParse, kDl).empty());
  CHECK(parse(parse_term("Grid(?, ?, [?, ?])"), g, kParse, kDl).size() >= 1);
  const auto rs = parse(parse_term("Grid(?, ?, [PosShape(?, Point(green))])"), g, kParse, kDl);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].tree.to_string() == "Grid(Vec(3, 3), black, [PosShape(Vec(1, 1), Point(green))])");
  CHECK_THROWS_AS(parse(parse_term("Grid(size, ?, [])"), g, kParse, kDl), ModelError);
}

TEST_CASE("ground layers are placed as given") {
  const Grid g = rows({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
  const auto rs = parse(parse_term("Grid(?, ?, [PosShape(Vec(1, 1), Point(green))])"), g, kParse, kDl);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].delta == Delta{{1, 1, Color::Black}});
}

TEST_CASE("divergences allow near matches") {
  const Grid g = rows({{0, 0, 0}, {0, 3, 0}, {0, 0, 0}});
  const Term m = parse_term("Grid(Vec(3, 3), black, [PosShape(?, Point(red))])");
  CHECK(parse(m, g, kParse, kDl).empty());
  ParseConfig loose = kParse;
  loose.max_diffs = 1;
  const auto rs = parse(m, g, loose, kDl);
  REQUIRE_FALSE(rs.empty());
  CHECK(rs[0].diffs == std::vector<Diff>{{Path::parse("layers[0].shape.color"), Term::color(Color::Green)}});
  CHECK(rs[0].delta.empty());
  CHECK(rs[0].dl_tree == doctest::Approx(l_parse_tree(rs[0].tree, m, rs[0].diffs, kDl)));
  const auto sized = parse(parse_term("Grid(Vec(3, 4), ?, [])"), g, loose, kDl);
  REQUIRE_FALSE(sized.empty());
  CHECK(sized[0].diffs == std::vector<Diff>{{Path::parse("size.j"), Term::nat(3)}});
}

TEST_CASE("readings are lossless") {
  std::mt19937 rng(3);
  const Term models[] = {parse_term("Grid(?, ?, [])"), parse_term("Grid(?, ?, [?])"),
                         parse_term("Grid(?, ?, [?, ?])"), parse_term("Grid(?, black, [PosShape(?, Rectangle(?, ?, ?))])")};
  int readings = 0;
  for (int t = 0; t < 150; ++t) {
    const Grid g = t % 2 ? random_scene(rng) : random_grid(rng, 1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 6), 3);
    for (const auto& m : models)
      for (const auto& r : parse(m, g, kParse, kDl)) {
        CHECK(r.tree.is_ground());
        CHECK(matches(r.tree, m));
        CHECK(delta_apply(draw(r.tree), r.delta) == g);
        ++readings;
      }
  }
  CHECK(readings > 300);
}

TEST_CASE("read and write through an environment") {
  const Grid in = rows({{0, 0, 0, 0}, {0, 1, 1, 0}, {0, 1, 1, 0}});
  const ParseTree env = parse(parse_term("Grid(?, ?, [PosShape(?, ?)])"), in, kParse, kDl).at(0).tree;
  CHECK(env.to_string() == "Grid(Vec(3, 4), black, [PosShape(Vec(1, 1), Rectangle(Vec(2, 2), blue, Full))])");
  const Term out_model = parse_term("Grid(layers[0].shape.size, ?, [PosShape(Vec(zero, zero), layers[0].shape)])");
  const Written w = write(out_model, &env);
  CHECK(to_text(w.grid) == "11\n11\n");
  const auto rs = read(out_model, &env, w.grid, kParse, kDl);
  REQUIRE_FALSE(rs.empty());
  CHECK(rs[0].tree == w.tree);
  CHECK(rs[0].delta.empty());
  CHECK_THROWS_AS(write(parse_term("Grid(layers[1].pos, ?, [])"), &env), EvalError);
}
