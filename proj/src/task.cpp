#include "arcmdl/task.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace arcmdl {

namespace {

using json = nlohmann::json;

Grid grid_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw Error(where + ": grid must be an array of rows");
  std::vector<std::vector<int>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error(where + ": grid row must be an array");
    auto& r = rows.emplace_back();
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw Error(where + ": cell is not an integer");
      r.push_back(v.get<int>());
    }
  }
  try {
    return Grid::from_rows(rows);
  } catch (const Error& e) {
    throw Error(where + ": " + e.what());
  }
}

json grid_to_json(const Grid& g) { return g.rows(); }

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(where + ": missing \"" + key + "\"");
  return *it;
}

json verdicts_json(const std::vector<Verdict>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back({{"solved", v.solved}, {"attempt", v.attempt}, {"attempts", v.attempts}});
  return out;
}

json part_json(const PartDl& p) { return {{"model", p.model}, {"data", p.data}, {"total", p.total()}}; }

Verdict judge(const TaskModel& m, const Grid& input, const Grid& expected, const SearchConfig& cfg) {
  Verdict v;
  const auto grids = predict(m, input, cfg.predict_parse(), cfg.dl, 3);
  v.attempts = static_cast<int>(grids.size());
  for (std::size_t k = 0; k < grids.size(); ++k)
    if (grids[k] == expected) {
      v.solved = true;
      v.attempt = static_cast<int>(k) + 1;
      break;
    }
  return v;
}

double fraction(const std::vector<Verdict>& vs) {
  if (vs.empty()) return 0.0;
  const auto n = std::count_if(vs.begin(), vs.end(), [](const Verdict& v) { return v.solved; });
  return static_cast<double>(n) / static_cast<double>(vs.size());
}

bool all_solved(const std::vector<Verdict>& vs) {
  return !vs.empty() && std::all_of(vs.begin(), vs.end(), [](const Verdict& v) { return v.solved; });
}

}  // namespace

Task load_task(std::string_view text, std::string id) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("malformed task JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("task must be a JSON object");
  Task t;
  t.id = std::move(id);
  for (const char* part : {"train", "test"}) {
    const json& examples = member(j, part, "task");
    if (!examples.is_array() || examples.empty()) throw Error(std::string("task: \"") + part + "\" must be a non-empty array");
    for (std::size_t k = 0; k < examples.size(); ++k) {
      const std::string where = std::string(part) + "[" + std::to_string(k) + "]";
      const json& ex = examples[k];
      if (!ex.is_object()) throw Error(where + ": example must be an object");
      Grid input = grid_from_json(member(ex, "input", where), where + ".input");
      if (part[1] == 'r') {
        t.train.push_back({std::move(input), grid_from_json(member(ex, "output", where), where + ".output")});
      } else {
        std::optional<Grid> output;
        if (ex.contains("output")) output = grid_from_json(ex["output"], where + ".output");
        t.test.push_back({std::move(input), std::move(output)});
      }
    }
  }
  return t;
}

Task load_task_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return load_task(ss.str(), file.stem().string());
}

std::string task_to_json(const Task& t) {
  json j = {{"train", json::array()}, {"test", json::array()}};
  for (const auto& ex : t.train) j["train"].push_back({{"input", grid_to_json(ex.input)}, {"output", grid_to_json(ex.output)}});
  for (const auto& ex : t.test) {
    json e = {{"input", grid_to_json(ex.input)}};
    if (ex.output) e["output"] = grid_to_json(*ex.output);
    j["test"].push_back(std::move(e));
  }
  return j.dump();
}

bool TaskReport::solved() const { return all_solved(test); }
double TaskReport::score() const { return fraction(test); }
bool TaskReport::train_solved() const { return all_solved(train); }
double TaskReport::train_score() const { return fraction(train); }

TaskReport evaluate_task(const Task& task, const SearchConfig& cfg) {
  TaskReport r;
  r.id = task.id;
  const auto start = std::chrono::steady_clock::now();
  try {
    // Only the train examples are visible to the learner.
    LearnResult learned = learn(task.train, cfg);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.model = learned.model.to_string();
    r.trace = std::move(learned.trace);
    r.dl = learned.dl;
    r.normalizer = learned.normalizer;
    for (const auto& ex : task.train) r.train.push_back(judge(learned.model, ex.input, ex.output, cfg));
    for (const auto& ex : task.test)
      r.test.push_back(ex.output ? judge(learned.model, ex.input, *ex.output, cfg) : Verdict{});
  } catch (const Error& e) {
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.error = e.what();
    r.train.assign(task.train.size(), Verdict{});
    r.test.assign(task.test.size(), Verdict{});
  }
  return r;
}

std::string report_to_json(const TaskReport& r) {
  json steps = json::array();
  for (const auto& s : r.trace.steps)
    steps.push_back({{"step", s.step}, {"lhat", s.lhat}, {"refinement", s.refinement ? s.refinement->to_string() : ""}});
  json j = {
      {"id", r.id},
      {"model", r.model},
      {"trace", std::move(steps)},
      {"timed_out", r.trace.timed_out},
      {"train", verdicts_json(r.train)},
      {"test", verdicts_json(r.test)},
      {"score", r.score()},
      {"seconds", r.seconds},
      {"dl",
       {{"input", part_json(r.dl.input)},
        {"output", part_json(r.dl.output)},
        {"normalized", r.model.empty() ? 0.0 : r.dl.normalized(r.normalizer)}}},
  };
  if (!r.error.empty()) j["error"] = r.error;
  return j.dump();
}

void BatchSummary::add(const TaskReport& r) {
  ++tasks;
  if (r.train_solved()) ++train_n1;
  train_n2 += r.train_score();
  if (r.solved()) ++test_n1;
  test_n2 += r.score();
  mean_seconds += r.seconds;
}

void BatchSummary::finish() {
  if (tasks > 0) mean_seconds /= tasks;
}

std::string BatchSummary::to_text() const {
  char buf[160];
  std::string out = "tasks " + std::to_string(tasks) + "\n";
  std::snprintf(buf, sizeof buf, "%-6s %4d / %-6.1f\n%-6s %4d / %-6.1f\ntime   %.2fs mean\n", "train", train_n1, train_n2,
                "test", test_n1, test_n2, mean_seconds);
  return out + buf;
}

BatchSummary evaluate_batch(const std::filesystem::path& dir, const SearchConfig& cfg,
                            const std::function<void(const TaskReport&)>& on_report, int threads) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.stem().string() < b.stem().string(); });

  std::vector<std::optional<TaskReport>> reports(files.size());
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t emitted = 0;
  BatchSummary summary;

  auto worker = [&] {
    for (std::size_t k = next++; k < files.size(); k = next++) {
      TaskReport r;
      try {
        r = evaluate_task(load_task_file(files[k]), cfg);
      } catch (const Error& e) {
        r.id = files[k].stem().string();
        r.error = e.what();
      }
      std::lock_guard lock(mu);
      reports[k] = std::move(r);
      while (emitted < reports.size() && reports[emitted]) {
        summary.add(*reports[emitted]);
        if (on_report) on_report(*reports[emitted]);
        reports[emitted].reset();
        ++emitted;
      }
    }
  };
  const int n = std::max(1, threads);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  summary.finish();
  return summary;
}

std::string render_task(const Task& t) {
  std::string out;
  auto side_by_side = [&](const Grid& a, const Grid* b) {
    std::istringstream la(to_text(a)), lb(b ? to_text(*b) : std::string());
    const int rows = std::max(a.height(), b ? b->height() : 0);
    for (int i = 0; i < rows; ++i) {
      std::string x, y;
      if (i < a.height()) std::getline(la, x);
      if (b && i < b->height()) std::getline(lb, y);
      x.resize(static_cast<std::size_t>(std::max(a.width(), 1)), ' ');
      out += x + "   " + y + "\n";
    }
  };
  for (std::size_t k = 0; k < t.train.size(); ++k) {
    out += "train " + std::to_string(k) + "\n";
    side_by_side(t.train[k].input, &t.train[k].output);
  }
  for (std::size_t k = 0; k < t.test.size(); ++k) {
    out += "test " + std::to_string(k) + "\n";
    side_by_side(t.test[k].input, t.test[k].output ? &*t.test[k].output : nullptr);
  }
  return out;
}

}  // namespace arcmdl
