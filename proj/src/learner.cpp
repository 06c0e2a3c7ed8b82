#include "arcmdl/learner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

namespace arcmdl {

namespace {

constexpr double kMinGain = 1e-9;

const char* category_name(RefineCategory c) {
  switch (c) {
    case RefineCategory::So: return "So";
    case RefineCategory::Si: return "Si";
    case RefineCategory::Eo: return "Eo";
    case RefineCategory::Ei: return "Ei";
  }
  return "?";
}

}  // namespace

RefineOrder parse_order(std::string_view text) {
  RefineOrder order{};
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('-', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view tok = text.substr(pos, end - pos);
    RefineCategory c;
    if (tok == "So")
      c = RefineCategory::So;
    else if (tok == "Si")
      c = RefineCategory::Si;
    else if (tok == "Eo")
      c = RefineCategory::Eo;
    else if (tok == "Ei")
      c = RefineCategory::Ei;
    else
      throw Error("unknown refinement category '" + std::string(tok) + "'");
    if (n == order.size() || std::find(order.begin(), order.begin() + static_cast<long>(n), c) != order.begin() + static_cast<long>(n))
      throw Error("refinement order must list So, Si, Eo and Ei once each");
    order[n++] = c;
    pos = end + 1;
  }
  if (n != order.size()) throw Error("refinement order must list So, Si, Eo and Ei once each");
  return order;
}

std::string order_to_string(const RefineOrder& order) {
  std::string s;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k > 0) s += '-';
    s += category_name(order[k]);
  }
  return s;
}

TaskModel Refinement::apply(const TaskModel& m) const {
  TaskModel r = m;
  if (kind == Kind::Insert) {
    if (output) {
      r.output = insert_layer(m.output, path, tmpl);
    } else {
      r.input = insert_layer(m.input, path, tmpl);
      r.output = shift_layer_vars(m.output, path.back().index, 1);
    }
  } else if (output) {
    r.output = subst(m.output, path, tmpl);
  } else {
    r.input = subst(m.input, path, tmpl);
  }
  return r;
}

std::string Refinement::to_string() const {
  std::string s = output ? "out" : "in";
  if (!path.empty()) s += "." + path.to_string();
  return s + " = " + tmpl.to_string();
}

std::string SearchTrace::to_text() const {
  std::string out = "step | L^     | refinement\n";
  char buf[64];
  for (const auto& s : steps) {
    std::snprintf(buf, sizeof buf, "%4d | %.3f | ", s.step, s.lhat);
    out += buf;
    if (s.refinement) out += s.refinement->to_string();
    out += '\n';
  }
  return out;
}

Evaluator::Evaluator(const std::vector<Example>& examples, const ParseConfig& cfg, const DlConfig& dl,
                     int proposal_readings)
    : cfg_(cfg), dl_(dl), proposal_readings_(std::max(1, proposal_readings)) {
  for (const auto& ex : examples) {
    inputs_.emplace_back(ex.input, cfg);
    outputs_.emplace_back(ex.output, cfg);
  }
}

const std::vector<Reading>* Evaluator::input_readings(const Term& input_model, std::size_t k) {
  const std::string key = input_model.to_string();
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    if (cache_.size() >= 256) cache_.clear();
    std::vector<std::vector<Reading>> all;
    for (const auto& scene : inputs_) all.push_back(read(input_model, nullptr, scene, cfg_, dl_));
    it = cache_.emplace(key, std::move(all)).first;
  }
  return &it->second[k];
}

std::optional<Evaluator::Result> Evaluator::evaluate(const TaskModel& m) {
  Result res{m, {}, {}};
  std::vector<PairReading> best;
  for (std::size_t k = 0; k < inputs_.size(); ++k) {
    const auto* ins = input_readings(m.input, k);
    if (ins->empty()) return std::nullopt;
    auto pairs = train_pair(m, *ins, outputs_[k], cfg_, dl_);
    if (pairs.empty()) return std::nullopt;
    best.push_back(pairs.front());
    if (static_cast<int>(pairs.size()) > proposal_readings_) pairs.resize(static_cast<std::size_t>(proposal_readings_));
    res.readings.push_back(std::move(pairs));
  }
  res.dl = task_dl(m, best, dl_);
  return res;
}

LearnResult learn(const std::vector<Example>& train, const SearchConfig& cfg) {
  if (train.empty()) throw Error("learning needs at least one example");
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  Evaluator eval(train, cfg.parse, cfg.dl, cfg.proposal_readings);
  auto init = eval.evaluate(initial_model());
  if (!init) throw Error("initial model cannot read the examples");
  const Normalizer norm = make_normalizer(init->dl);

  struct Node {
    Evaluator::Result res;
    double lhat;
    std::vector<TraceStep> steps;
  };
  std::vector<Node> beam;
  beam.push_back({*init, init->dl.normalized(norm), {TraceStep{0, init->dl.normalized(norm), std::nullopt, init->dl}}});

  Node best = beam.front();
  SearchTrace trace;
  for (int step = 1; step <= cfg.max_steps && !trace.timed_out; ++step) {
    std::vector<Node> next;
    for (const auto& node : beam) {
      int found = 0;
      for (const auto& ref : propose_refinements(node.res.model, node.res.readings, cfg.order)) {
        if (elapsed() > cfg.timeout) {
          trace.timed_out = true;
          break;
        }
        TaskModel m;
        try {
          m = ref.apply(node.res.model);
        } catch (const PathError&) {
          continue;
        }
        ++trace.evaluations;
        std::optional<Evaluator::Result> r;
        try {
          r = eval.evaluate(m);
        } catch (const ModelError&) {
          continue;
        }
        if (!r) continue;
        const double lhat = r->dl.normalized(norm);
        if (lhat >= node.lhat - kMinGain) continue;
        Node child{std::move(*r), lhat, node.steps};
        child.steps.push_back({step, lhat, ref, child.res.dl});
        next.push_back(std::move(child));
        if (++found >= cfg.max_refinements) break;
      }
      if (trace.timed_out) break;
    }
    if (next.empty()) break;
    std::stable_sort(next.begin(), next.end(), [](const Node& a, const Node& b) { return a.lhat < b.lhat; });
    if (static_cast<int>(next.size()) > cfg.beam) next.resize(static_cast<std::size_t>(cfg.beam));
    beam = std::move(next);
    if (beam.front().lhat < best.lhat) best = beam.front();
  }

  trace.steps = best.steps;
  trace.seconds = elapsed();
  return {best.res.model, best.res.dl, norm, std::move(trace)};
}

}  // namespace arcmdl
