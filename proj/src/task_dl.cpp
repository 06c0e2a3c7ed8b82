#include "arcmdl/task_dl.hpp"

#include <cstdio>

namespace arcmdl {

TaskDl task_dl(const TaskModel& m, const std::vector<PairReading>& best, const DlConfig& dl) {
  TaskDl d;
  const Signature env = env_signature(m.input);
  d.input.model = l_model(m.input, nullptr, dl);
  d.output.model = l_model(m.output, &env, dl);
  for (const auto& p : best) {
    d.input.data += dl.alpha * p.input.dl();
    d.output.data += dl.alpha * p.output.dl();
  }
  return d;
}

std::optional<TaskDl> task_dl(const TaskModel& m, const std::vector<Example>& examples, const ParseConfig& cfg,
                              const DlConfig& dl) {
  std::vector<PairReading> best;
  for (const auto& ex : examples) {
    auto pairs = train_pair(m, ex, cfg, dl);
    if (pairs.empty()) return std::nullopt;
    best.push_back(std::move(pairs.front()));
  }
  return task_dl(m, best, dl);
}

TaskModel initial_model() {
  return {Term::grid(Term::unknown(), Term::unknown(), {}), Term::grid(Term::unknown(), Term::unknown(), {})};
}

Normalizer make_normalizer(const TaskDl& initial) { return {initial.input.total(), initial.output.total()}; }

Normalizer make_normalizer(const std::vector<Example>& examples, const ParseConfig& cfg, const DlConfig& dl) {
  auto d = task_dl(initial_model(), examples, cfg, dl);
  if (!d) throw Error("initial model cannot read the examples");
  return make_normalizer(*d);
}

std::string dl_table(const TaskDl& d, const Normalizer& n) {
  std::string out = "         L(M)      L(D|M)    L(M,D)    L^(M,D)\n";
  char buf[128];
  auto row = [&](const char* name, double m, double data, double lhat) {
    std::snprintf(buf, sizeof buf, "%-8s %9.1f %9.1f %9.1f %9.3f\n", name, m, data, m + data, lhat);
    out += buf;
  };
  row("input", d.input.model, d.input.data, d.normalized_input(n));
  row("output", d.output.model, d.output.data, d.normalized_output(n));
  row("chained", d.model(), d.data(), d.normalized(n));
  return out;
}

}  // namespace arcmdl
