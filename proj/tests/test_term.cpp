#include "arcmdl/term.hpp"
#include "doctest.h"

using namespace arcmdl;

TEST_CASE("path syntax") {
  const Path p = Path::parse("in.layers[1].shape.size.i");
  CHECK(p.size() == 5);
  CHECK(p.to_string() == "in.layers[1].shape.size.i");
  CHECK(p.relative().to_string() == "layers[1].shape.size.i");
  CHECK(p.sort() == Sort::Nat);
  CHECK(Path::parse("layer[0].pos") == Path::parse("layers[0].pos"));
  CHECK(Path::parse("layers[0]").sort() == Sort::Object);
  CHECK(Path::parse("layers[2].shape.mask").sort() == Sort::Mask);
  CHECK_THROWS_AS(Path::parse("layers.pos"), PathError);
  CHECK_THROWS_AS(Path::parse("pos[1]"), PathError);
  CHECK_THROWS_AS(Path::parse("height"), PathError);
  CHECK(Path::parse("layers[0].pos.i").starts_with(Path::parse("layers[0]")));
  CHECK_FALSE(Path::parse("layers[1].pos.i").starts_with(Path::parse("layers[0]")));
}

TEST_CASE("term text round trip") {
  const char* texts[] = {
      "Grid(Vec(12, ?), black, [PosShape(?, Rectangle(?, ?, Full))])",
      "Grid(size, color, [])",
      "Vec(layers[0].pos.i - layers[1].pos.i, zero)",
      "Vec(size.i + 2, size.j - (pos.i + 1))",
      "PosShape(Vec(1, 2), Rectangle(Vec(3, 3), red, Bitmap(101|010|101)))",
      "Rectangle(?, ?, Bitmap(?))",
      "PosShape(?, Point(lightblue))",
      "InOut(Grid(?, ?, []), Grid(?, ?, []))",
      "Grid(size, color, [layers[1], PosShape(Vec(0, 0), layers[0].shape)])",
  };
  for (const char* s : texts) {
    const Term t = parse_term(s);
    CHECK(t.to_string() == s);
    CHECK(parse_term(t.to_string()) == t);
  }
  CHECK(parse_term("Full()") == Term::mask(MaskKind::Full));
  CHECK(parse_term("layer[0].shape") == Term::var(Path::parse("layers[0].shape")));
  CHECK_THROWS_AS(parse_term("Vec(1)"), ModelError);
  CHECK_THROWS_AS(parse_term("Circle(1)"), ModelError);
  CHECK_THROWS_AS(parse_term("Vec(1, 2"), ModelError);
}

TEST_CASE("ground and expression flags") {
  CHECK(parse_term("Vec(1, 2)").is_ground());
  CHECK_FALSE(parse_term("Vec(1, ?)").is_ground());
  CHECK(parse_term("Vec(size.i, 2)").has_expr());
  CHECK_FALSE(parse_term("Vec(size.i, 2)").is_ground());
  CHECK(parse_term("Grid(?, black, [])").field(Field::Color) == Term::color(Color::Black));
}

TEST_CASE("resolve, subst and insert") {
  const Term g = parse_term("Grid(Vec(10, 12), black, [PosShape(Vec(1, 2), Point(red)), PosShape(?, ?)])");
  CHECK(resolve(g, Path::parse("layers[0].pos.j")) == Term::nat(2));
  CHECK(resolve(g, Path::parse("layers[1].shape")).is_unknown());
  CHECK(try_resolve(g, Path::parse("layers[2]")) == nullptr);
  CHECK(try_resolve(g, Path::parse("layers[0].shape.size")) == nullptr);
  CHECK_THROWS_AS(resolve(g, Path::parse("layers[5].pos")), PathError);

  const Term s = subst(g, Path::parse("layers[1].pos"), Term::vec(3, 4));
  CHECK(s.to_string() == "Grid(Vec(10, 12), black, [PosShape(Vec(1, 2), Point(red)), PosShape(Vec(3, 4), ?)])");
  CHECK(g.to_string() == "Grid(Vec(10, 12), black, [PosShape(Vec(1, 2), Point(red)), PosShape(?, ?)])");

  const Term obj = parse_term("PosShape(?, Point(blue))");
  CHECK(insert_layer(g, Path::parse("layers[0]"), obj).field(Field::Layers).args().front() == obj);
  CHECK(insert_layer(g, Path::parse("layers[2]"), obj).field(Field::Layers).args().back() == obj);
  CHECK(insert_layer(g, Path::parse("layers[1]"), obj).field(Field::Layers).args().size() == 3);
  CHECK_THROWS_AS(insert_layer(g, Path::parse("layers[3]"), obj), PathError);
}

TEST_CASE("layer variable shifting") {
  const Term t = parse_term("Grid(layers[0].pos, ?, [layers[1], PosShape(layers[2].pos, ?)])");
  CHECK(shift_layer_vars(t, 1, 1).to_string() == "Grid(layers[0].pos, ?, [layers[2], PosShape(layers[3].pos, ?)])");
  CHECK(shift_layer_vars(t, 0, 2).to_string() == "Grid(layers[2].pos, ?, [layers[3], PosShape(layers[4].pos, ?)])");
  CHECK(shift_layer_vars(parse_term("size.i + 1"), 0, 1) == parse_term("size.i + 1"));
}

TEST_CASE("unknown paths and enumeration") {
  const Term t = parse_term("Grid(Vec(?, 3), ?, [PosShape(?, Rectangle(?, red, ?))])");
  std::vector<std::string> got;
  for (const auto& p : unknown_paths(t)) got.push_back(p.to_string());
  CHECK(got == std::vector<std::string>{"size.i", "color", "layers[0].pos", "layers[0].shape.size",
                                        "layers[0].shape.mask"});
  const auto entries = enumerate(t, Sort::Grid);
  CHECK(entries.front().path.empty());
  CHECK(entries.size() == 11);
  CHECK(entries[3].path.to_string() == "size.j");
  CHECK(entries[3].sort == Sort::Nat);
  CHECK(node_count(t) == 11);
  CHECK(node_count(parse_term("Grid(?, ?, [])")) == 3);
}

TEST_CASE("matching") {
  const Term data = parse_term("PosShape(Vec(1, 2), Rectangle(Vec(2, 2), red, Full))");
  CHECK(matches(data, parse_term("?")));
  CHECK(matches(data, parse_term("PosShape(?, Rectangle(?, red, ?))")));
  CHECK_FALSE(matches(data, parse_term("PosShape(?, Rectangle(?, blue, ?))")));
  CHECK_FALSE(matches(data, parse_term("PosShape(?, Point(?))")));
  CHECK(matches(data, data));
  CHECK_THROWS_AS(matches(data, parse_term("PosShape(pos, ?)")), ModelError);
}

TEST_CASE("expression evaluation and model application") {
  const Term env = parse_term("Grid(Vec(12, 13), black, [PosShape(Vec(2, 3), Rectangle(Vec(4, 4), red, Full))])");
  CHECK(eval_expr(parse_term("size.i - layers[0].pos.i"), &env) == 10);
  CHECK(eval_expr(parse_term("size.j + 3"), &env) == 16);
  CHECK(eval_expr(parse_term("zero"), &env) == 0);
  CHECK_THROWS_AS(eval_expr(parse_term("layers[0].pos.i - size.i"), &env), EvalError);
  CHECK_THROWS_AS(eval_expr(parse_term("layers[1].pos.i"), &env), EvalError);
  CHECK_THROWS_AS(eval_expr(parse_term("size.i"), nullptr), EvalError);

  const Term m = parse_term("Grid(layers[0].shape.size, color, [PosShape(Vec(zero, zero), layers[0].shape)])");
  CHECK(apply_model(m, &env).to_string() ==
        "Grid(Vec(4, 4), black, [PosShape(Vec(0, 0), Rectangle(Vec(4, 4), red, Full))])");
  const Term plain = parse_term("Grid(?, ?, [])");
  CHECK(apply_model(plain, nullptr) == plain);
  CHECK_THROWS_AS(apply_model(parse_term("Grid(layers[3].shape.size, ?, [])"), &env), EvalError);
}

TEST_CASE("environment signature") {
  const Term in = parse_term("Grid(?, ?, [PosShape(?, ?)])");
  std::vector<std::string> got;
  for (const auto& e : env_signature(in)) got.push_back(e.path.to_string());
  CHECK(got == std::vector<std::string>{"size", "size.i", "size.j", "color", "layers[0]", "layers[0].pos",
                                        "layers[0].pos.i", "layers[0].pos.j", "layers[0].shape"});
  const Signature rect = env_signature(parse_term("Grid(?, ?, [PosShape(?, Rectangle(?, ?, Bitmap(?)))])"));
  bool has_bits = false, has_mask = false;
  for (const auto& e : rect) {
    has_bits = has_bits || e.sort == Sort::Bits;
    has_mask = has_mask || e.path.to_string() == "layers[0].shape.mask";
  }
  CHECK(has_mask);
  CHECK_FALSE(has_bits);
}

TEST_CASE("well-formedness") {
  const TaskModel ok{parse_term("Grid(?, ?, [PosShape(?, ?)])"),
                     parse_term("Grid(layers[0].pos, black, [PosShape(Vec(zero, size.j - 1), layers[0].shape)])")};
  CHECK_NOTHROW(check_well_formed(ok));
  CHECK_THROWS_AS(check_well_formed(TaskModel{ok.input, parse_term("Grid(layers[1].pos, ?, [])")}), ModelError);
  CHECK_THROWS_AS(check_well_formed(TaskModel{ok.input, parse_term("Grid(color, ?, [])")}), ModelError);
  CHECK_THROWS_AS(check_well_formed(TaskModel{parse_term("Grid(size, ?, [])"), ok.output}), ModelError);
  CHECK_THROWS_AS(check_well_formed(parse_term("Vec(red, 1)"), Sort::Vec, nullptr), ModelError);
  CHECK_THROWS_AS(check_well_formed(parse_term("Point(?)"), Sort::Object, nullptr), ModelError);
  CHECK(TaskModel::from_term(ok.to_term()) == ok);
}
