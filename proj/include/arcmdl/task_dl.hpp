#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arcmdl/pipeline.hpp"

namespace arcmdl {

// Model and data DL of one side; data is already weighted by alpha.
struct PartDl {
  double model = 0.0;
  double data = 0.0;

  double total() const { return model + data; }
};

// Input and output contributions of the initial model on the train examples.
struct Normalizer {
  double lambda_in = 1.0;
  double lambda_out = 1.0;
};

struct TaskDl {
  PartDl input;
  PartDl output;

  double model() const { return input.model + output.model; }
  double data() const { return input.data + output.data; }
  double total() const { return input.total() + output.total(); }
  double normalized_input(const Normalizer& n) const { return input.total() / n.lambda_in; }
  double normalized_output(const Normalizer& n) const { return output.total() / n.lambda_out; }
  double normalized(const Normalizer& n) const { return normalized_input(n) + normalized_output(n); }
};

// DL of a task model given the best chained reading of every example.
TaskDl task_dl(const TaskModel& m, const std::vector<PairReading>& best, const DlConfig& dl);

// nullopt when some example has no reading.
std::optional<TaskDl> task_dl(const TaskModel& m, const std::vector<Example>& examples, const ParseConfig& cfg,
                              const DlConfig& dl);

TaskModel initial_model();

Normalizer make_normalizer(const TaskDl& initial);
Normalizer make_normalizer(const std::vector<Example>& examples, const ParseConfig& cfg, const DlConfig& dl);

// Plain-text table: rows input/output/chained, columns L(M), L(D|M),
// L(M,D) and the normalized DL.
std::string dl_table(const TaskDl& d, const Normalizer& n);

}  // namespace arcmdl
