#pragma once

// ARC task files, per-task evaluation and batch scoring.

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arcmdl/learner.hpp"

namespace arcmdl {

struct TestExample {
  Grid input;
  std::optional<Grid> output;  // absent in hidden sets
};

struct Task {
  std::string id;
  std::vector<Example> train;
  std::vector<TestExample> test;
};

// Parses the public ARC JSON layout. Throws Error on malformed content.
Task load_task(std::string_view json, std::string id = "");
Task load_task_file(const std::filesystem::path& file);

// Canonical JSON text of a task (no id).
std::string task_to_json(const Task& t);

struct Verdict {
  bool solved = false;
  int attempt = 0;  // 1-based index of the matching attempt, 0 if none
  int attempts = 0;
};

struct TaskReport {
  std::string id;
  std::string model;
  SearchTrace trace;
  TaskDl dl;
  Normalizer normalizer;
  std::vector<Verdict> train;
  std::vector<Verdict> test;
  double seconds = 0.0;
  std::string error;  // set when learning failed

  bool solved() const;  // all test examples solved
  double score() const;  // fraction of test examples solved
  bool train_solved() const;
  double train_score() const;
};

TaskReport evaluate_task(const Task& task, const SearchConfig& cfg);

// One JSON object, no newline.
std::string report_to_json(const TaskReport& r);

struct BatchSummary {
  int tasks = 0;
  int train_n1 = 0;
  double train_n2 = 0.0;
  int test_n1 = 0;
  double test_n2 = 0.0;
  double mean_seconds = 0.0;

  void add(const TaskReport& r);
  void finish();
  // Table with "train" and "test" rows, n1 / n2 and mean time.
  std::string to_text() const;
};

// Evaluates every *.json file of a directory in lexicographic id order.
// `on_report` is called in that order.
BatchSummary evaluate_batch(const std::filesystem::path& dir, const SearchConfig& cfg,
                            const std::function<void(const TaskReport&)>& on_report = {}, int threads = 1);

// Text figure of a task: every example as input and output digit grids.
std::string render_task(const Task& t);

}  // namespace arcmdl
