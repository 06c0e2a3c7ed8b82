#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "arcmdl/task.hpp"

using namespace arcmdl;

namespace {

struct Options {
  double timeout = 30.0;
  double alpha = 10.0;
  int beam = 1;
  int refinements = 20;
  int max_trees = 64;
  int keep_trees = 3;
  int max_diffs = 3;
  std::string order = "So-Si-Eo-Ei";
  bool eight = false;
  bool color_unions = false;
};

void add_search_flags(CLI::App* app, Options& o) {
  app->add_option("--timeout", o.timeout, "learning timeout per task, in seconds")->check(CLI::PositiveNumber);
  app->add_option("--alpha", o.alpha, "weight of the data DL")->check(CLI::PositiveNumber);
  app->add_option("--beam", o.beam, "beam width")->check(CLI::PositiveNumber);
  app->add_option("--refinements", o.refinements, "compressive refinements per step")->check(CLI::PositiveNumber);
  app->add_option("--max-trees", o.max_trees, "parse trees enumerated before sorting")->check(CLI::PositiveNumber);
  app->add_option("--keep-trees", o.keep_trees, "parse trees kept per grid")->check(CLI::PositiveNumber);
  app->add_option("--max-diffs", o.max_diffs, "divergences allowed when reading test inputs")->check(CLI::NonNegativeNumber);
  app->add_option("--order", o.order, "refinement order, e.g. So-Si-Eo-Ei");
  app->add_flag("--eight", o.eight, "segment parts with 8-connectivity");
  app->add_flag("--color-unions", o.color_unions, "also try the union of all parts of a color as one object");
}

SearchConfig make_config(const Options& o) {
  SearchConfig cfg;
  cfg.timeout = o.timeout;
  cfg.dl.alpha = o.alpha;
  cfg.beam = o.beam;
  cfg.max_refinements = o.refinements;
  cfg.parse.max_trees_before_sort = o.max_trees;
  cfg.parse.max_trees_kept = o.keep_trees;
  cfg.test_max_diffs = o.max_diffs;
  cfg.order = parse_order(o.order);
  if (o.eight) cfg.parse.connectivity = Connectivity::Eight;
  cfg.parse.color_unions = o.color_unions;
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_report(const TaskReport& r) {
  if (!r.error.empty()) {
    std::cout << r.id << ": " << r.error << "\n";
    return;
  }
  std::cout << r.trace.to_text() << "\n" << r.model << "\n\n" << dl_table(r.dl, r.normalizer) << "\n";
  auto verdicts = [](const char* name, const std::vector<Verdict>& vs) {
    for (std::size_t k = 0; k < vs.size(); ++k) {
      std::cout << name << " " << k << ": ";
      if (vs[k].solved)
        std::cout << "solved (attempt " << vs[k].attempt << ")\n";
      else
        std::cout << "failed (" << vs[k].attempts << " attempts)\n";
    }
  };
  verdicts("train", r.train);
  verdicts("test", r.test);
  std::printf("score %.2f, learning %.2fs%s\n", r.score(), r.seconds, r.trace.timed_out ? " (timeout)" : "");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MDL-based program induction on ARC tasks"};
  app.require_subcommand(1);
  Options opts;

  std::string task_file;
  bool json_out = false;
  auto* solve = app.add_subcommand("solve", "learn a model on a task and predict its test outputs");
  solve->add_option("task", task_file, "task JSON file")->required()->check(CLI::ExistingFile);
  solve->add_flag("--json", json_out, "print the report as JSON");
  add_search_flags(solve, opts);

  std::string dir, jsonl;
  int threads = 1;
  auto* eval = app.add_subcommand("eval", "evaluate every task of a directory");
  eval->add_option("dir", dir, "directory of task JSON files")->required()->check(CLI::ExistingDirectory);
  eval->add_option("--jsonl", jsonl, "write one JSON report per line to this file");
  eval->add_option("--threads", threads, "tasks evaluated in parallel")->check(CLI::PositiveNumber);
  add_search_flags(eval, opts);

  std::string model_file;
  auto* create_cmd = app.add_subcommand("create", "generate an example pair from a task model");
  create_cmd->add_option("model", model_file, "file holding InOut(input model, output model)")->required()->check(CLI::ExistingFile);
  create_cmd->add_flag("--json", json_out, "print the pair as a task JSON");

  std::string render_file, ppm_prefix;
  auto* render = app.add_subcommand("render", "draw the grids of a task");
  render->add_option("task", render_file, "task JSON file")->required()->check(CLI::ExistingFile);
  render->add_option("--ppm", ppm_prefix, "also write one PPM image per grid, named PREFIX-train0-in.ppm etc.");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      const TaskReport r = evaluate_task(load_task_file(task_file), make_config(opts));
      if (json_out)
        std::cout << report_to_json(r) << "\n";
      else
        print_report(r);
      return r.error.empty() ? 0 : 1;
    }
    if (*eval) {
      std::ofstream out;
      if (!jsonl.empty()) {
        out.open(jsonl);
        if (!out) throw Error("cannot write " + jsonl);
      }
      const BatchSummary s = evaluate_batch(dir, make_config(opts), [&](const TaskReport& r) {
        std::printf("%s %s %.2f %.2fs\n", r.id.c_str(), r.solved() ? "solved" : "failed", r.score(), r.seconds);
        std::fflush(stdout);
        if (out) out << report_to_json(r) << "\n";
      }, threads);
      std::cout << s.to_text();
      return 0;
    }
    if (*create_cmd) {
      const TaskModel m = TaskModel::from_term(parse_term(read_file(model_file)));
      check_well_formed(m);
      const Example ex = create(m);
      if (json_out) {
        Task t{"", {ex}, {{ex.input, ex.output}}};
        std::cout << task_to_json(t) << "\n";
      } else {
        std::cout << "input\n" << to_text(ex.input) << "output\n" << to_text(ex.output);
      }
      return 0;
    }
    if (*render) {
      const Task t = load_task_file(render_file);
      std::cout << render_task(t);
      if (!ppm_prefix.empty()) {
        auto save = [&](const std::string& name, const Grid& g) {
          std::ofstream f(ppm_prefix + "-" + name + ".ppm", std::ios::binary);
          f << to_ppm(g);
        };
        for (std::size_t k = 0; k < t.train.size(); ++k) {
          save("train" + std::to_string(k) + "-in", t.train[k].input);
          save("train" + std::to_string(k) + "-out", t.train[k].output);
        }
        for (std::size_t k = 0; k < t.test.size(); ++k) {
          save("test" + std::to_string(k) + "-in", t.test[k].input);
          if (t.test[k].output) save("test" + std::to_string(k) + "-out", *t.test[k].output);
        }
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
