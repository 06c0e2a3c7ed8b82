#pragma once

// Reading and writing whole examples with a task model.

#include <utility>
#include <vector>

#include "arcmdl/parsing.hpp"

namespace arcmdl {

struct PairReading {
  Reading input;
  Reading output;

  double dl() const { return input.dl() + output.dl(); }
};

// Chains output readings on each input reading; ordered by combined DL.
std::vector<PairReading> train_pair(const TaskModel& m, const std::vector<Reading>& input_readings,
                                    const GridScene& output, const ParseConfig& cfg, const DlConfig& dl);
std::vector<PairReading> train_pair(const TaskModel& m, const GridScene& input, const GridScene& output,
                                    const ParseConfig& cfg, const DlConfig& dl);
std::vector<PairReading> train_pair(const TaskModel& m, const Example& ex, const ParseConfig& cfg, const DlConfig& dl);

// Output grids written from the best input readings, without duplicates.
// Empty when the input cannot be read.
std::vector<Grid> predict(const TaskModel& m, const Grid& input, const ParseConfig& cfg, const DlConfig& dl,
                          int attempts = 3);

// Writes an input grid, then an output grid from its parse tree.
Example create(const TaskModel& m);

}  // namespace arcmdl
