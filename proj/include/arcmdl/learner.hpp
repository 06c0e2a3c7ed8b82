#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arcmdl/task_dl.hpp"

namespace arcmdl {

// Refinement categories: output shapes, input shapes, output expressions
// (and output patterns), input patterns.
enum class RefineCategory { So, Si, Eo, Ei };

using RefineOrder = std::array<RefineCategory, 4>;

// "So-Si-Eo-Ei" and permutations.
RefineOrder parse_order(std::string_view text);
std::string order_to_string(const RefineOrder& order);

struct Refinement {
  enum class Kind { Insert, Replace };

  Kind kind = Kind::Replace;
  bool output = false;
  Path path;  // relative to the side's grid model
  Term tmpl;
  RefineCategory category = RefineCategory::Ei;

  TaskModel apply(const TaskModel& m) const;
  // "in.layers[0] = PosShape(?, Rectangle(?, ?, ?))"
  std::string to_string() const;
};

struct SearchConfig {
  int max_refinements = 20;  // compressive refinements collected per model and step
  int beam = 1;
  double timeout = 30.0;  // seconds
  int max_steps = 200;
  // Pair readings per example that refinements must agree with (best first).
  int proposal_readings = 1;
  ParseConfig parse;  // used while learning
  int test_max_diffs = 3;
  DlConfig dl;
  RefineOrder order = {RefineCategory::So, RefineCategory::Si, RefineCategory::Eo, RefineCategory::Ei};

  ParseConfig predict_parse() const {
    ParseConfig p = parse;
    p.max_diffs = test_max_diffs;
    return p;
  }
};

struct TraceStep {
  int step = 0;
  double lhat = 0.0;
  std::optional<Refinement> refinement;  // none for the initial model
  TaskDl dl;
};

struct SearchTrace {
  std::vector<TraceStep> steps;
  bool timed_out = false;
  double seconds = 0.0;
  int evaluations = 0;

  // "step | L^ | refinement" table.
  std::string to_text() const;
};

struct LearnResult {
  TaskModel model;
  TaskDl dl;
  Normalizer normalizer;
  SearchTrace trace;
};

// Caches scenes and input readings of the train examples.
class Evaluator {
 public:
  Evaluator(const std::vector<Example>& examples, const ParseConfig& cfg, const DlConfig& dl,
            int proposal_readings = 1);

  struct Result {
    TaskModel model;
    std::vector<std::vector<PairReading>> readings;  // per example, best first, truncated to proposal_readings
    TaskDl dl;
  };

  // nullopt when some example cannot be read.
  std::optional<Result> evaluate(const TaskModel& m);

 private:
  const std::vector<Reading>* input_readings(const Term& input_model, std::size_t k);

  ParseConfig cfg_;
  DlConfig dl_;
  int proposal_readings_;
  std::vector<GridScene> inputs_;
  std::vector<GridScene> outputs_;
  std::map<std::string, std::vector<std::vector<Reading>>> cache_;
};

// Candidate refinements of a model in the configured order.
std::vector<Refinement> propose_refinements(const TaskModel& m,
                                            const std::vector<std::vector<PairReading>>& readings,
                                            const RefineOrder& order);

LearnResult learn(const std::vector<Example>& train, const SearchConfig& cfg);

}  // namespace arcmdl
