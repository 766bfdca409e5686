// Copyright 2026 The dapt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dapt_tools/commands.hpp"

#include "dapt/models.hpp"
#include "dapt/numerics.hpp"
#include "dapt/oracle.hpp"
#include "dapt/pipeline.hpp"
#include "dapt_tools/io.hpp"
#include "dapt_version.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <thread>

namespace dapt::tools {

namespace {

using nlohmann::json;

/// The Hamiltonian of a run together with its grid and sweep rate.
struct Problem {
  std::unique_ptr<Hamiltonian> hamiltonian;
  Grid grid{3};
  double v = 0.0;
  std::optional<GammaModel> gamma;
  std::optional<SpinHalfModel> spin;

  double time(double s) const { return s / v; }
};

GammaModel gamma_of(const RunConfig& c) { return GammaModel{c.b, c.theta, c.w, c.cycles}; }
SpinHalfModel spin_of(const RunConfig& c) { return SpinHalfModel{c.b, c.theta, c.w, c.cycles}; }

Problem make_problem(const RunConfig& config) {
  config.validate();
  Problem p;
  if (config.model == "gamma") {
    p.gamma = gamma_of(config);
    p.hamiltonian = std::make_unique<GammaHamiltonian>(*p.gamma);
    p.v = p.gamma->v();
    p.grid = Grid(static_cast<std::size_t>(config.nodes));
  } else if (config.model == "spin-half") {
    p.spin = spin_of(config);
    p.hamiltonian = std::make_unique<SpinHalfHamiltonian>(*p.spin);
    p.v = p.spin->v();
    p.grid = Grid(static_cast<std::size_t>(config.nodes));
  } else {
    auto sampled = std::make_unique<SampledHamiltonian>(read_hamiltonian_file(config.hamiltonian_file));
    p.grid = sampled->grid();
    p.hamiltonian = std::move(sampled);
    p.v = config.v;
  }
  return p;
}

PipelineOptions pipeline_options(const RunConfig& config) {
  PipelineOptions options = config.high_order ? PipelineOptions::high_order() : PipelineOptions{};
  options.degeneracy_tol = config.degeneracy_tol;
  options.rank_tol = config.rank_tol;
  options.gap_floor = config.gap_floor;
  options.order_cap = config.order;
  return options;
}

json summary_header(const std::string& command, const RunConfig& config) {
  return {{"command", command}, {"version", std::string(version())}, {"config", config.to_json()}};
}

void emit(const RunConfig& config, const Table& table, const json& summary) {
  if (config.out.empty()) return;
  write_csv(config.out + ".csv", table);
  write_json(config.out + ".json", summary);
}

void push_complex(std::vector<std::string>& columns, const std::string& name) {
  columns.push_back(name + "_re");
  columns.push_back(name + "_im");
}

void push_complex(std::vector<double>& row, Complex z) {
  row.push_back(z.real());
  row.push_back(z.imag());
}

/// Initial state of label 0 in the computational basis.
CVector initial_state(const DaptSeries& series) {
  return series.path[0].basis() * series.state(0, 1.0).coefficients[0].row(0).transpose();
}

/// Residual of every partial sum up to the order cap, per node, for label 0.
std::vector<std::vector<double>> order_residuals(const DaptSeries& series, const Problem& p, double v,
                                                 const PropagationOptions& propagation) {
  const std::size_t nodes = series.path.grid().size();
  std::vector<CVector> exact(nodes);
  bool snapshot_basis = false;
  if (p.gamma) {
    GammaModel m = *p.gamma;
    m.w = 2.0 * std::numbers::pi * m.cycles * v;
    for (std::size_t k = 0; k < nodes; ++k) exact[k] = gamma_exact_coefficients(m, m.time(series.path.grid()[k]));
    snapshot_basis = true;
  } else if (p.spin) {
    SpinHalfModel m = *p.spin;
    m.w = 2.0 * std::numbers::pi * m.cycles * v;
    const CVector psi0 = initial_state(series);
    for (std::size_t k = 0; k < nodes; ++k) exact[k] = spin_half_exact(m, m.time(series.path.grid()[k]), psi0);
  } else {
    const PropagationResult result = propagate(*p.hamiltonian, v, initial_state(series), series.path.grid(), propagation);
    for (std::size_t k = 0; k < nodes; ++k) exact[k] = result.state(k);
  }
  std::vector<std::vector<double>> out;
  for (int order = 0; order <= series.order_cap(); ++order) {
    const StateFamily approx = series.sum(order, v);
    std::vector<CVector> approx_states(nodes);
    if (snapshot_basis) {
      for (std::size_t k = 0; k < nodes; ++k) approx_states[k] = approx.component(k);
    } else {
      const auto computational = to_computational(approx, series.path);
      for (std::size_t k = 0; k < nodes; ++k) approx_states[k] = computational[k].col(0);
    }
    out.push_back(residual(std::span<const CVector>(approx_states), std::span<const CVector>(exact)).per_node);
  }
  return out;
}

double sup(const std::vector<double>& xs) { return xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end()); }

/// Throws InsufficientSweep unless there are >= 4 distinct positive values
/// spanning at least one decade.
void check_sweep(std::vector<double> vs) {
  if (vs.size() < 4) throw Error(ErrorKind::kInsufficientSweep, "a sweep needs at least 4 values");
  std::sort(vs.begin(), vs.end());
  for (std::size_t i = 1; i < vs.size(); ++i) {
    if (vs[i] == vs[i - 1]) throw Error(ErrorKind::kInsufficientSweep, "duplicate sweep value");
  }
  if (vs.back() / vs.front() < 10.0 * (1.0 - 1e-12)) {
    throw Error(ErrorKind::kInsufficientSweep, "sweep values must span at least one decade");
  }
}

json slope_json(const SlopeFit& fit) {
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"half_width", std::isfinite(fit.half_width) ? json(fit.half_width) : json(nullptr)},
          {"points", fit.points}};
}

}  // namespace

std::string_view version() noexcept { return DAPT_VERSION_STRING; }

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kConfigError: return 2;
    case ErrorKind::kIoError: return 3;
    case ErrorKind::kGapCollapse: return 4;
    case ErrorKind::kDegeneracyChanged: return 5;
    case ErrorKind::kInsufficientSweep: return 6;
    case ErrorKind::kRankDeficientOverlap: return 7;
    case ErrorKind::kStepTooLarge: return 8;
    case ErrorKind::kBadInitialCondition: return 9;
    case ErrorKind::kNotGroundStart: return 10;
    case ErrorKind::kNotHermitian: return 11;
    case ErrorKind::kNotAntiHermitian: return 12;
    case ErrorKind::kNonUnitaryInitial: return 13;
    case ErrorKind::kGridTooSmall: return 14;
    case ErrorKind::kDimensionMismatch: return 15;
  }
  return 1;
}

json cmd_evolve(const RunConfig& config) {
  const Problem p = make_problem(config);
  const DaptSeries series = build_series(*p.hamiltonian, p.grid, pipeline_options(config));
  const PropagationResult exact = propagate(*p.hamiltonian, p.v, initial_state(series), p.grid,
                                            PropagationOptions{config.max_phase_step});
  const auto approx = to_computational(series.sum(config.order, p.v), series.path);
  const Index dim = series.path.dim();

  Table table;
  table.columns.push_back("s");
  for (Index j = 0; j < dim; ++j) push_complex(table.columns, "exact_" + std::to_string(j));
  for (Index j = 0; j < dim; ++j) push_complex(table.columns, "approx_" + std::to_string(j));
  table.columns.push_back("residual");
  table.columns.push_back("norm_drift");
  double worst = 0.0;
  for (std::size_t k = 0; k < p.grid.size(); ++k) {
    std::vector<double> row{p.grid[k]};
    const CVector psi = exact.state(k);
    const CVector guess = approx[k].col(0);
    for (Index j = 0; j < dim; ++j) push_complex(row, psi(j));
    for (Index j = 0; j < dim; ++j) push_complex(row, guess(j));
    const double r = (psi - guess).norm();
    worst = std::max(worst, r);
    row.push_back(r);
    row.push_back(std::abs(psi.norm() - 1.0));
    table.rows.push_back(std::move(row));
  }
  json summary = summary_header("evolve", config);
  summary["v"] = p.v;
  summary["order"] = config.order;
  summary["sup_residual"] = worst;
  summary["final_residual"] = table.rows.back()[table.rows.back().size() - 2];
  summary["max_norm_drift"] = exact.max_norm_drift;
  summary["rk4_steps"] = exact.steps;
  emit(config, table, summary);
  return summary;
}

json cmd_holonomy(const RunConfig& config) {
  const Problem p = make_problem(config);
  RunConfig first = config;
  first.order = std::min(config.order, 1);
  const DaptSeries series = build_series(*p.hamiltonian, p.grid, pipeline_options(first));
  const CorrectedHolonomy corrected = series.corrected(p.v);
  const Index d0 = series.path.degeneracy(0);

  Table table;
  table.columns.push_back("s");
  for (std::size_t n = 0; n < series.holonomies.size(); ++n) {
    const Index d = series.path.degeneracy(n);
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) {
        push_complex(table.columns, "U" + std::to_string(n) + "_" + std::to_string(i) + std::to_string(j));
      }
    }
  }
  for (Index i = 0; i < d0; ++i) {
    for (Index j = 0; j < d0; ++j) push_complex(table.columns, "V_" + std::to_string(i) + std::to_string(j));
  }
  for (Index h = 0; h < d0; ++h) table.columns.push_back("P_" + std::to_string(h));

  for (std::size_t k = 0; k < p.grid.size(); ++k) {
    std::vector<double> row{p.grid[k]};
    for (const auto& hol : series.holonomies) {
      for (Index i = 0; i < hol[k].rows(); ++i) {
        for (Index j = 0; j < hol[k].cols(); ++j) push_complex(row, hol[k](i, j));
      }
    }
    for (Index i = 0; i < d0; ++i) {
      for (Index j = 0; j < d0; ++j) push_complex(row, corrected.v0[k](i, j));
    }
    for (Index h = 0; h < d0; ++h) row.push_back(corrected.probability(h, static_cast<Index>(k)));
    table.rows.push_back(std::move(row));
  }

  json summary = summary_header("holonomy", config);
  summary["v"] = p.v;
  json unitarity = json::array();
  for (const auto& hol : series.holonomies) unitarity.push_back(hol.max_unitarity_error());
  summary["holonomy_unitarity_error"] = unitarity;
  summary["corrected_unitarity_error"] = corrected.max_unitarity_error();
  // On a closed loop U(1) (F(0)^dagger F(1))^T no longer depends on the frame gauge.
  const CMatrix h_start = p.hamiltonian->at(0.0);
  if ((p.hamiltonian->at(1.0) - h_start).norm() <= 1e-8 * std::max(1.0, h_start.norm())) {
    const std::size_t last = p.grid.size() - 1;
    json loops = json::array();
    for (std::size_t n = 0; n < series.holonomies.size(); ++n) {
      const CMatrix overlap = series.path.block(n, 0).adjoint() * series.path.block(n, last);
      const CMatrix loop = series.holonomies[n].unitaries.back() * overlap.transpose();
      json entries = json::array();
      for (Index i = 0; i < loop.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < loop.cols(); ++j) row.push_back({loop(i, j).real(), loop(i, j).imag()});
        entries.push_back(row);
      }
      loops.push_back(entries);
    }
    summary["cyclic_holonomy"] = loops;
  }
  if (p.gamma) {
    double worst = 0.0;
    for (std::size_t k = 0; k < p.grid.size(); ++k) {
      worst = std::max(worst, (series.holonomies[0][k] - gamma_wz(*p.gamma, p.time(p.grid[k]))).cwiseAbs().maxCoeff());
    }
    summary["closed_form_max_error"] = worst;
    summary["closed_form_final_error"] =
        (series.holonomies[0].unitaries.back() - gamma_wz(*p.gamma, p.time(1.0))).cwiseAbs().maxCoeff();
  }
  emit(config, table, summary);
  return summary;
}

json cmd_dapt(const RunConfig& config) {
  const Problem p = make_problem(config);
  const DaptSeries series = build_series(*p.hamiltonian, p.grid, pipeline_options(config));
  const Index dim = series.path.dim();
  std::vector<StateFamily> orders;
  for (int order = 0; order <= config.order; ++order) orders.push_back(series.state(order, p.v));

  Table table;
  table.columns.push_back("s");
  for (int order = 0; order <= config.order; ++order) {
    for (Index j = 0; j < dim; ++j) push_complex(table.columns, "psi" + std::to_string(order) + "_" + std::to_string(j));
  }
  for (std::size_t k = 0; k < p.grid.size(); ++k) {
    std::vector<double> row{p.grid[k]};
    for (const auto& family : orders) {
      const CVector c = family.component(k);
      for (Index j = 0; j < dim; ++j) push_complex(row, c(j));
    }
    table.rows.push_back(std::move(row));
  }

  json summary = summary_header("dapt", config);
  summary["v"] = p.v;
  summary["dims"] = series.path.dims();
  json energies = json::array();
  for (std::size_t n = 0; n < series.path.level_count(); ++n) energies.push_back(series.path.energy(n, 0));
  summary["energies_at_start"] = energies;
  json start = json::array(), recursion = json::array();
  for (const auto& family : orders) start.push_back(family.coefficients.front().norm());
  for (const auto& blocks : series.blocks) recursion.push_back(sup(diagonal_recursion_residual(blocks, series.couplings)));
  summary["start_norm_per_order"] = start;
  summary["diagonal_recursion_residual"] = recursion;
  summary["coupling_antisymmetry_error"] = antisymmetry_error(series.couplings);
  double unitarity = 0.0;
  for (const auto& hol : series.holonomies) unitarity = std::max(unitarity, hol.max_unitarity_error());
  summary["holonomy_unitarity_error"] = unitarity;
  emit(config, table, summary);
  return summary;
}

json cmd_validate(const RunConfig& config) {
  const Problem p = make_problem(config);
  RunConfig zeroth = config;
  zeroth.order = 0;
  const DaptSeries series = build_series(*p.hamiltonian, p.grid, pipeline_options(zeroth));
  const ValidityReport report = series.validity(p.v, config.threshold);

  Table table;
  table.columns.push_back("s");
  for (std::size_t g = 0; g < report.q1.size(); ++g) table.columns.push_back("q1_g" + std::to_string(g));
  for (std::size_t n = 0; n < report.q2.size(); ++n) {
    for (std::size_t g = 0; g < report.q2[n].size(); ++g) {
      table.columns.push_back("q2_n" + std::to_string(n + 1) + "_g" + std::to_string(g));
    }
  }
  for (std::size_t k = 0; k < p.grid.size(); ++k) {
    std::vector<double> row{p.grid[k]};
    for (const auto& series_g : report.q1) row.push_back(series_g[k]);
    for (const auto& level : report.q2) {
      for (const auto& series_g : level) row.push_back(series_g[k]);
    }
    table.rows.push_back(std::move(row));
  }

  json summary = summary_header("validate", config);
  summary["v"] = p.v;
  summary["threshold"] = report.threshold;
  summary["q1_sup"] = report.q1_sup;
  summary["q1_final"] = report.q1_final;
  summary["q2_sup"] = report.q2_sup;
  summary["q2_final"] = report.q2_final;
  summary["max_sup"] = report.max_sup();
  summary["adiabatic_ok"] = report.adiabatic_ok;
  emit(config, table, summary);
  return summary;
}

json cmd_sweep(const RunConfig& config) {
  if (!config.v_list.empty() && !config.w_list.empty()) {
    throw Error(ErrorKind::kConfigError, "give either v_list or w_list, not both");
  }
  const Problem p = make_problem(config);
  std::vector<double> vs = config.v_list;
  if (!config.w_list.empty()) {
    if (config.model == "file") throw Error(ErrorKind::kConfigError, "w_list needs a built-in model");
    for (double w : config.w_list) vs.push_back(w / (2.0 * std::numbers::pi * config.cycles));
  }
  check_sweep(vs);
  std::sort(vs.begin(), vs.end());

  // The blocks do not depend on v: one build serves every point.
  const DaptSeries series = build_series(*p.hamiltonian, p.grid, pipeline_options(config));
  const PropagationOptions propagation{config.max_phase_step};
  const int orders = config.order + 1;

  struct Row {
    std::vector<double> residuals;
    double q1 = 0.0, q2 = 0.0, margin = 0.0, holonomy_error = 0.0;
    bool ok = false;
  };
  std::vector<Row> rows(vs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < vs.size(); i = next++) {
      try {
        const double v = vs[i];
        Row row;
        for (const auto& per_node : order_residuals(series, p, v, propagation)) row.residuals.push_back(sup(per_node));
        const ValidityReport report = series.validity(v, config.threshold);
        row.q1 = sup(report.q1_sup);
        for (const auto& level : report.q2_sup) row.q2 = std::max(row.q2, sup(level));
        row.margin = report.max_sup();
        row.ok = report.adiabatic_ok;
        row.holonomy_error = series.corrected(v).max_unitarity_error();
        rows[i] = std::move(row);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t pool = std::min<std::size_t>(vs.size(), config.workers > 0 ? config.workers : hardware);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < pool; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);

  Table table;
  table.columns = {"v"};
  for (int order = 0; order < orders; ++order) table.columns.push_back("residual_order" + std::to_string(order));
  for (const char* name : {"q1_sup", "q2_sup", "margin_sup", "adiabatic_ok", "holonomy_error"}) table.columns.push_back(name);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::vector<double> row{vs[i]};
    row.insert(row.end(), rows[i].residuals.begin(), rows[i].residuals.end());
    row.insert(row.end(), {rows[i].q1, rows[i].q2, rows[i].margin, rows[i].ok ? 1.0 : 0.0, rows[i].holonomy_error});
    table.rows.push_back(std::move(row));
  }

  json summary = summary_header("sweep", config);
  summary["v"] = vs;
  json slopes = json::object();
  for (int order = 0; order < orders; ++order) {
    std::vector<double> ys;
    for (const auto& row : rows) ys.push_back(row.residuals[static_cast<std::size_t>(order)]);
    slopes["residual_order" + std::to_string(order)] = slope_json(fit_loglog(vs, ys));
  }
  summary["slopes"] = slopes;
  emit(config, table, summary);
  return summary;
}

json cmd_fit_order(const RunConfig& config) {
  if (config.input.empty()) throw Error(ErrorKind::kConfigError, "fit-order needs an input sweep CSV");
  const Table table = read_csv(config.input);
  const std::size_t v_col = table.column("v");
  std::vector<double> vs;
  for (const auto& row : table.rows) vs.push_back(row[v_col]);
  check_sweep(vs);

  json summary = {{"command", "fit-order"}, {"version", std::string(version())}, {"input", config.input}};
  json slopes = json::object();
  Table out;
  out.columns = {"order", "slope", "intercept", "half_width"};
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    const std::string& name = table.columns[c];
    if (name.rfind("residual_order", 0) != 0) continue;
    std::vector<double> ys;
    for (const auto& row : table.rows) ys.push_back(row[c]);
    const SlopeFit fit = fit_loglog(vs, ys);
    slopes[name] = slope_json(fit);
    out.rows.push_back({std::stod(name.substr(14)), fit.slope, fit.intercept, fit.half_width});
  }
  if (slopes.empty()) throw Error(ErrorKind::kConfigError, config.input + " has no residual_order columns");
  summary["slopes"] = slopes;
  emit(config, out, summary);
  return summary;
}

}  // namespace dapt::tools
