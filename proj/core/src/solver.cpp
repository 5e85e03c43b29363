#include "quditcut/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace quditcut {

namespace {

constexpr double kDegenerateSecondMoment = 1e-14;

double coefficient_from(double m, double second_moment) {
  if (second_moment < kDegenerateSecondMoment) return 0.0;
  const double a = m / (2.0 * second_moment);
  if (!std::isfinite(a)) {
    throw std::runtime_error("non-finite step coefficient; state is broken");
  }
  return a;
}

void renormalize(ProductState& state) {
  for (int i = 0; i < state.num_qudits; ++i) {
    auto v = state.qudit(i);
    double nrm2 = 0.0;
    for (double x : v) nrm2 += x * x;
    const double nrm = std::sqrt(nrm2);
    if (std::fabs(nrm - 1.0) > 1e-12) {
      throw std::runtime_error("qudit norm drifted beyond 1e-12");
    }
    for (double& x : v) x /= nrm;
  }
}

}  // namespace

void SolverConfig::validate() const {
  if (!(delta_tau > 0.0) || !std::isfinite(delta_tau)) {
    throw std::invalid_argument("delta_tau must be positive and finite");
  }
  if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
  if (plateau_window < 1) {
    throw std::invalid_argument("plateau_window must be >= 1");
  }
  if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");
}

std::vector<int> select_generators(const HamiltonianSpec& spec,
                                   const ProductState& state,
                                   const std::vector<PoolOperator>& pool) {
  if (pool.empty()) throw std::invalid_argument("operator pool is empty");
  const auto table = marginals(state);
  std::vector<int> selected(static_cast<std::size_t>(state.num_qudits), 0);
  std::vector<double> row(static_cast<std::size_t>(state.dim));
  for (int q = 0; q < state.num_qudits; ++q) {
    commutator_row(spec, state, table, q, row);
    int best = 0;
    double best_mag = std::fabs(row[pool[0].pivot_level]);
    for (std::size_t t = 1; t < pool.size(); ++t) {
      const double mag = std::fabs(row[pool[t].pivot_level]);
      if (mag > best_mag) {
        best_mag = mag;
        best = static_cast<int>(t);
      }
    }
    selected[q] = best;
  }
  return selected;
}

double compute_coefficient(const HamiltonianSpec& spec,
                           const ProductState& state, int qudit,
                           const PoolOperator& op) {
  const double m = commutator_expectation(spec, state, qudit, op);
  const double g2 = generator_second_moment(state, qudit, op);
  return coefficient_from(m, g2);
}

StepInfo step(const HamiltonianSpec& spec, ProductState& state,
              double delta_tau) {
  const int n = state.num_qudits;
  const int d = state.dim;
  const auto table = marginals(state);

  StepInfo info;
  info.selected_ops.resize(static_cast<std::size_t>(n));
  info.coefficients.resize(static_cast<std::size_t>(n));

  // All expectation values are taken against the pre-step state; rotations
  // only apply after every coefficient is known.
  std::vector<double> row(static_cast<std::size_t>(d));
  for (int q = 0; q < n; ++q) {
    commutator_row(spec, state, table, q, row);
    int best = 0;
    double best_mag = std::fabs(row[0]);
    for (int l = 1; l < d; ++l) {
      const double mag = std::fabs(row[l]);
      if (mag > best_mag) {
        best_mag = mag;
        best = l;
      }
    }
    info.selected_ops[q] = best;
    const double g2 =
        generator_second_moment(state, q, PoolOperator{d, best});
    info.coefficients[q] = coefficient_from(row[best], g2);
  }

  for (int q = 0; q < n; ++q) {
    apply_generator_rotation(state, q, PoolOperator{d, info.selected_ops[q]},
                             info.coefficients[q] * delta_tau);
  }
  renormalize(state);
  return info;
}

RunRecord solve(const MinDCutInstance& instance, const SolverConfig& config) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();

  const HamiltonianSpec spec(instance);
  ProductState state =
      init_uniform_state(instance.graph.num_vertices, instance.num_partitions);

  RunRecord rec;
  rec.config = config;
  rec.instance_seed = instance.seed;
  rec.num_vertices = instance.graph.num_vertices;
  rec.num_partitions = instance.num_partitions;
  rec.c_max = instance.penalty.c_max;

  auto assignment = round_state(state);
  double rounded = total_cost(instance, assignment);
  rec.final_assignment = assignment;
  rec.best_cost = rounded;
  rec.best_step = 0;

  double prev_rounded = rounded;
  int unchanged = 0;
  int steps_done = 0;

  for (int s = 1; s <= config.max_steps; ++s) {
    const StepInfo info = step(spec, state, config.delta_tau);
    steps_done = s;

    assignment = round_state(state);
    rounded = total_cost(instance, assignment);
    if (rounded < rec.best_cost) {
      rec.best_cost = rounded;
      rec.best_step = s;
      rec.final_assignment = assignment;
    }

    unchanged = (rounded == prev_rounded) ? unchanged + 1 : 0;
    prev_rounded = rounded;
    const bool plateaued = unchanged >= config.plateau_window;

    if (s % config.record_every == 0 || s == config.max_steps || plateaued) {
      TrajectoryPoint pt;
      pt.step = s;
      pt.energy = expected_energy(spec, state);
      pt.rounded_cost = rounded;
      pt.selected_ops = info.selected_ops;
      pt.partition_counts = is_feasible(instance, assignment).counts;
      rec.trajectory.push_back(std::move(pt));
    }
    if (plateaued) break;
  }

  const auto fz = is_feasible(instance, rec.final_assignment);
  rec.feasible = fz.feasible;
  rec.violated_partitions = fz.violated_partitions;
  rec.max_violation = fz.max_violation;
  rec.best_cut_cost = classical_cut_cost(instance, rec.final_assignment);
  rec.final_energy =
      rec.trajectory.empty() ? expected_energy(spec, state)
                             : rec.trajectory.back().energy;
  rec.steps_executed = steps_done;

  const auto t1 = std::chrono::steady_clock::now();
  rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rec;
}

std::string run_record_to_json(const RunRecord& record) {
  nlohmann::json j;
  j["version"] = 1;
  j["config"] = {{"delta_tau", record.config.delta_tau},
                 {"max_steps", record.config.max_steps},
                 {"plateau_window", record.config.plateau_window},
                 {"record_every", record.config.record_every},
                 {"seed", record.config.seed}};
  j["instance"] = {{"seed", record.instance_seed},
                   {"num_vertices", record.num_vertices},
                   {"d", record.num_partitions},
                   {"c_max", record.c_max}};
  auto series = nlohmann::json::array();
  for (const auto& pt : record.trajectory) {
    series.push_back({{"step", pt.step},
                      {"energy", pt.energy},
                      {"rounded_cost", pt.rounded_cost},
                      {"selected_ops", pt.selected_ops},
                      {"partition_counts", pt.partition_counts}});
  }
  j["trajectory"] = std::move(series);
  j["final"] = {{"assignment", record.final_assignment},
                {"cost", record.best_cost},
                {"cut_cost", record.best_cut_cost},
                {"best_step", record.best_step},
                {"feasible", record.feasible},
                {"violated_partitions", record.violated_partitions},
                {"max_violation", record.max_violation},
                {"energy", record.final_energy},
                {"steps", record.steps_executed},
                {"wall_ms", record.wall_ms}};
  return j.dump(2) + "\n";
}

RunRecord run_record_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("version").get<int>() != 1) {
    throw std::runtime_error("unsupported run record schema version");
  }
  RunRecord r;
  const auto& cfg = j.at("config");
  r.config.delta_tau = cfg.at("delta_tau").get<double>();
  r.config.max_steps = cfg.at("max_steps").get<int>();
  r.config.plateau_window = cfg.at("plateau_window").get<int>();
  r.config.record_every = cfg.at("record_every").get<int>();
  r.config.seed = cfg.at("seed").get<std::int64_t>();
  const auto& inst = j.at("instance");
  r.instance_seed = inst.at("seed").get<std::int64_t>();
  r.num_vertices = inst.at("num_vertices").get<int>();
  r.num_partitions = inst.at("d").get<int>();
  r.c_max = inst.at("c_max").get<int>();
  for (const auto& p : j.at("trajectory")) {
    TrajectoryPoint pt;
    pt.step = p.at("step").get<int>();
    pt.energy = p.at("energy").get<double>();
    pt.rounded_cost = p.at("rounded_cost").get<double>();
    pt.selected_ops = p.at("selected_ops").get<std::vector<int>>();
    pt.partition_counts = p.at("partition_counts").get<std::vector<int>>();
    r.trajectory.push_back(std::move(pt));
  }
  const auto& fin = j.at("final");
  r.final_assignment = fin.at("assignment").get<std::vector<int>>();
  r.best_cost = fin.at("cost").get<double>();
  r.best_cut_cost = fin.at("cut_cost").get<double>();
  r.best_step = fin.at("best_step").get<int>();
  r.feasible = fin.at("feasible").get<bool>();
  r.violated_partitions = fin.at("violated_partitions").get<int>();
  r.max_violation = fin.at("max_violation").get<int>();
  r.final_energy = fin.at("energy").get<double>();
  r.steps_executed = fin.at("steps").get<int>();
  r.wall_ms = fin.at("wall_ms").get<double>();
  return r;
}

}  // namespace quditcut
