#include "arcmdl/pipeline.hpp"

#include <algorithm>

namespace arcmdl {

std::vector<PairReading> train_pair(const TaskModel& m, const std::vector<Reading>& input_readings,
                                    const GridScene& output, const ParseConfig& cfg, const DlConfig& dl) {
  std::vector<PairReading> pairs;
  for (const auto& in : input_readings) {
    std::vector<Reading> outs;
    try {
      outs = read(m.output, &in.tree, output, cfg, dl);
    } catch (const EvalError&) {
      continue;
    }
    for (auto& out : outs) pairs.push_back({in, std::move(out)});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const PairReading& a, const PairReading& b) { return a.dl() < b.dl(); });
  if (static_cast<int>(pairs.size()) > cfg.max_trees_kept) pairs.resize(static_cast<std::size_t>(cfg.max_trees_kept));
  return pairs;
}

std::vector<PairReading> train_pair(const TaskModel& m, const GridScene& input, const GridScene& output,
                                    const ParseConfig& cfg, const DlConfig& dl) {
  return train_pair(m, read(m.input, nullptr, input, cfg, dl), output, cfg, dl);
}

std::vector<PairReading> train_pair(const TaskModel& m, const Example& ex, const ParseConfig& cfg, const DlConfig& dl) {
  return train_pair(m, GridScene(ex.input, cfg), GridScene(ex.output, cfg), cfg, dl);
}

std::vector<Grid> predict(const TaskModel& m, const Grid& input, const ParseConfig& cfg, const DlConfig& dl,
                          int attempts) {
  std::vector<Grid> out;
  for (const auto& r : read(m.input, nullptr, input, cfg, dl)) {
    if (static_cast<int>(out.size()) >= attempts) break;
    try {
      Grid g = write(m.output, &r.tree).grid;
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
    } catch (const Error&) {
      // this reading does not give a valid output grid
    }
  }
  return out;
}

Example create(const TaskModel& m) {
  Written in = write(m.input, nullptr);
  Written out = write(m.output, &in.tree);
  return {std::move(in.grid), std::move(out.grid)};
}

}  // namespace arcmdl
