#include "mavsim/metrics.hpp"

#include <algorithm>

#include "mavsim/errors.hpp"

namespace mavsim::metrics {

StepSample sample_step(const RoadState& state, const SimParams& params) {
  StepSample sample;
  const auto& vehicles = state.vehicles();
  if (vehicles.empty()) return sample;
  std::int64_t speed_sum = 0, mavs = 0, collective = 0;
  for (const Vehicle& v : vehicles) {
    speed_sum += v.speed;
    if (v.is_mav()) {
      ++mavs;
      if (v.mode == Mode::Collective) ++collective;
    }
  }
  sample.speed_mps = static_cast<double>(speed_sum) * params.cell_length_m /
                     static_cast<double>(vehicles.size());
  const double k = static_cast<double>(vehicles.size()) /
                   (params.road_km() * static_cast<double>(params.lanes));
  sample.flow = k * sample.speed_mps * 3.6;
  if (mavs > 0) {
    sample.frac_collective = static_cast<double>(collective) / static_cast<double>(mavs);
    sample.frac_free = static_cast<double>(mavs - collective) / static_cast<double>(mavs);
  }
  return sample;
}

double mean_speed_mps(const RoadState& state, const SimParams& params) {
  const auto& vehicles = state.vehicles();
  if (vehicles.empty()) return 0.0;
  std::int64_t total = 0;
  for (const Vehicle& v : vehicles) total += v.speed;
  return static_cast<double>(total) * params.cell_length_m /
         static_cast<double>(vehicles.size());
}

double instantaneous_flow(const RoadState& state, const SimParams& params) {
  const auto& vehicles = state.vehicles();
  if (vehicles.empty()) return 0.0;
  const double k = static_cast<double>(vehicles.size()) /
                   (params.road_km() * static_cast<double>(params.lanes));
  return k * mean_speed_mps(state, params) * 3.6;
}

Composition composition_ratios(const RoadState& state) {
  Composition c;
  std::int64_t mavs = 0, free = 0, collective = 0;
  for (const Vehicle& v : state.vehicles()) {
    if (!v.is_mav()) continue;
    ++mavs;
    if (v.mode == Mode::Collective) {
      ++collective;
    } else {
      ++free;
    }
  }
  if (mavs == 0) return c;
  c.has_mavs = true;
  c.frac_free = static_cast<double>(free) / static_cast<double>(mavs);
  c.frac_collective = static_cast<double>(collective) / static_cast<double>(mavs);
  return c;
}

void sample_train_histogram(const mav::TrainRegistry& trains, const RoadState& state,
                            TrainHistogram& accumulator) {
  for (const auto& [id, train] : trains.trains()) {
    const auto size = static_cast<std::size_t>(train.size());
    if (size >= accumulator.counts.size()) {
      throw InternalFault("train histogram: size " + std::to_string(size) +
                          " exceeds l_max bins");
    }
    accumulator.counts[size] += 1;
  }
  for (const Vehicle& v : state.vehicles()) {
    if (v.is_mav() && !v.in_train()) accumulator.counts[1] += 1;
  }
  accumulator.samples += 1;
}

double window_mean(const std::vector<double>& series, int label_begin, int label_end) {
  const int begin = std::max(label_begin - 1, 0);
  const int end = std::min(label_end - 1, static_cast<int>(series.size()));
  if (begin >= end) return 0.0;
  double sum = 0.0;
  for (int i = begin; i < end; ++i) sum += series[static_cast<std::size_t>(i)];
  return sum / static_cast<double>(end - begin);
}

FundamentalPoint summarize_run(const std::vector<double>& flow_series,
                               const std::vector<double>& speed_series,
                               const SimParams& params, double realized_density) {
  if (params.t_measure_start >= params.t_total) {
    throw ConfigError("t_measure_start: must precede t_total");
  }
  FundamentalPoint point;
  point.scenario = params.scenario_name();
  point.p_mav = params.p_mav;
  point.density = realized_density;
  point.seed = params.seed;
  point.mean_flow = window_mean(flow_series, params.t_measure_start, params.t_total);
  point.mean_speed = window_mean(speed_series, params.t_measure_start, params.t_total);
  return point;
}

}  // namespace mavsim::metrics
