#include "janus/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <thread>
#include <utility>

namespace janus {

namespace {

constexpr double kReportTol = 1e-10;

// splitmix64 step; the per-trial substream seeds the state with
// seed + (trial+1) * golden-gamma so trials are independent and a run can be
// partitioned across workers without changing its output.
std::uint64_t splitmix64_next(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct TrialStream {
  std::uint64_t state;
  TrialStream(std::uint64_t seed, std::int64_t trial)
      : state(seed + (static_cast<std::uint64_t>(trial) + 1) * 0x9E3779B97F4A7C15ULL) {}
  // 53-bit uniform in [0, 1)
  double uniform() { return static_cast<double>(splitmix64_next(state) >> 11) * 0x1.0p-53; }
};

// Inverse CDF over (value, weight) entries already in increasing value order;
// ties toward the smaller value via the <= comparison. Zero-weight entries are
// never selected.
template <typename Entries, typename WeightOf>
int pick(const Entries& entries, double u, WeightOf weight_of) {
  double cumulative = 0.0;
  int last_positive = -1;
  const int n = static_cast<int>(entries.size());
  for (int i = 0; i < n; ++i) {
    const double w = weight_of(entries[i]);
    if (w <= 0.0) continue;
    cumulative += w;
    last_positive = i;
    if (u <= cumulative) return i;
  }
  if (last_positive < 0) throw Error("cannot sample from an all-zero distribution");
  return last_positive;  // float dregs: cumulative fell short of 1
}

// Contiguous trial ranges over a worker pool; per-trial substreams make the
// partitioning invisible in the output.
template <typename Worker>
void run_partitioned(std::int64_t trials, int num_threads, Worker worker) {
  const int workers = num_threads > 0
                          ? num_threads
                          : static_cast<int>(std::thread::hardware_concurrency());
  if (workers <= 1 || trials < 2048) {
    worker(std::int64_t{0}, trials);
    return;
  }
  std::vector<std::thread> pool;
  const std::int64_t chunk = (trials + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = w * chunk;
    const std::int64_t end = std::min(trials, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(worker, begin, end);
  }
  for (auto& th : pool) th.join();
}

std::string format_outcome_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

Observable polarizer_observable(double angle_radians) {
  const double c = std::cos(2.0 * angle_radians);
  const double s = std::sin(2.0 * angle_radians);
  ComplexMatrix m(2, 2);
  m << c, s, s, -c;
  return Observable(std::move(m), "polarizer(" + format_outcome_label(angle_radians) + ")");
}

EPRScenario EPRScenario::standard(double angle_a, double angle_b) {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = 1.0 / std::sqrt(2.0);  // |xx>
  psi(3) = 1.0 / std::sqrt(2.0);  // |yy>
  return {QuantumState::pure(std::move(psi), {2, 2}), angle_a, angle_b};
}

EprJointTable epr_joint_probabilities(const EPRScenario& scenario, const Tolerances& tol) {
  const Observable pol_a = polarizer_observable(scenario.angle_a);
  const Observable pol_b = polarizer_observable(scenario.angle_b);
  const JointDistribution joint = joint_distribution(scenario.state, pol_a, pol_b, tol);
  const double match = tol.cluster(1.0);
  return {joint.probability_of(+1.0, +1.0, match), joint.probability_of(+1.0, -1.0, match),
          joint.probability_of(-1.0, +1.0, match), joint.probability_of(-1.0, -1.0, match)};
}

bool ComparisonReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const ComparisonRow& r) { return r.pass; });
}

ComparisonReport two_step_vs_direct(const QuantumState& state,
                                    const Observable& obs1, const Observable& obs2,
                                    const Tolerances& tol) {
  const JointDistribution joint = joint_distribution(state, obs1, obs2, tol);
  const Observable lifted1 = lift_observable(obs1, 1, state.site_dims());

  ComparisonReport report{"two-step", "direct", kReportTol, {}};
  for (const auto& cell : joint.cells) {
    const double px = born_probability(state, lifted1, cell.x, tol);
    // p(x) ~ 0 forces the joint to ~0 as well; the two-step side is then 0.
    double two_step = 0.0;
    if (px > tol.zero_prob)
      two_step = px * conditional_probability(state, obs1, cell.x, obs2, cell.y, tol);
    const double diff = std::abs(two_step - cell.probability);
    report.rows.push_back({"p(" + format_outcome_label(cell.x) + "," +
                               format_outcome_label(cell.y) + ")",
                           two_step, cell.probability, diff, diff <= kReportTol});
  }
  return report;
}

ClassicalEmbedding classical_embedding(const QuantumState& state,
                                       const Observable& obs1, int site1,
                                       const Observable& obs2, int site2,
                                       const Tolerances& tol) {
  if (site1 == site2 && !compatible(obs1, obs2, tol))
    throw NotCompatible(
        "same-site observables do not commute: no joint probability distribution");

  const Observable lifted1 = lift_observable(obs1, site1, state.site_dims());
  const Observable lifted2 = lift_observable(obs2, site2, state.site_dims());

  const auto& pairs1 = lifted1.spectrum().pairs;
  const auto& pairs2 = lifted2.spectrum().pairs;
  const int n1 = static_cast<int>(pairs1.size());
  const int n2 = static_cast<int>(pairs2.size());

  std::vector<std::string> labels1, labels2;
  RealVector values1(n1), values2(n2);
  for (int i = 0; i < n1; ++i) {
    labels1.push_back(format_outcome_label(pairs1[i].value));
    values1(i) = pairs1[i].value;
  }
  for (int j = 0; j < n2; ++j) {
    labels2.push_back(format_outcome_label(pairs2[j].value));
    values2(j) = pairs2[j].value;
  }

  RealMatrix weights(n1, n2);
  const bool pure = state.is_pure();
  const ComplexMatrix rho = pure ? ComplexMatrix() : state.density_matrix();
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const ComplexMatrix projector = pairs1[i].projector * pairs2[j].projector;
      double w;
      if (pure)
        w = (projector * state.vector()).squaredNorm();
      else
        w = (projector * rho * projector.adjoint()).trace().real();
      weights(i, j) = std::clamp(w, 0.0, 1.0);
    }
  }
  // Joint Born weights of a commuting pair resolve the identity; trim roundoff.
  weights /= weights.sum();

  FiniteProbSpace space = FiniteProbSpace::site_structured(std::move(labels1),
                                                           std::move(labels2),
                                                           std::move(weights), tol);
  RandomVariable first = RandomVariable::on_site(space, 1, obs1.label(), values1);
  RandomVariable second = RandomVariable::on_site(space, 2, obs2.label(), values2);
  return {std::move(space), std::move(first), std::move(second)};
}

ComparisonReport compare_embedding(const QuantumState& state,
                                   const Observable& obs1, int site1,
                                   const Observable& obs2, int site2,
                                   const Tolerances& tol) {
  const ClassicalEmbedding embedding =
      classical_embedding(state, obs1, site1, obs2, site2, tol);
  const Observable lifted1 = lift_observable(obs1, site1, state.site_dims());
  const Observable lifted2 = lift_observable(obs2, site2, state.site_dims());

  ComparisonReport report{"classical", "quantum", kReportTol, {}};
  auto add_row = [&](const std::string& label, double classical, double quantum) {
    const double diff = std::abs(classical - quantum);
    report.rows.push_back({label, classical, quantum, diff, diff <= kReportTol});
  };

  const std::string name1 = obs1.label().empty() ? "A" : obs1.label();
  const std::string name2 = obs2.label().empty() ? "B" : obs2.label();

  for (const auto& pa : lifted1.spectrum().pairs)
    add_row("p(" + name1 + "=" + format_outcome_label(pa.value) + ")",
            probability(embedding.space, embedding.first, pa.value, tol),
            born_probability(state, lifted1, pa.value, tol));
  for (const auto& pb : lifted2.spectrum().pairs)
    add_row("p(" + name2 + "=" + format_outcome_label(pb.value) + ")",
            probability(embedding.space, embedding.second, pb.value, tol),
            born_probability(state, lifted2, pb.value, tol));

  for (const auto& pa : lifted1.spectrum().pairs) {
    const double px = born_probability(state, lifted1, pa.value, tol);
    for (const auto& pb : lifted2.spectrum().pairs) {
      const std::string joint_label = name1 + "=" + format_outcome_label(pa.value) +
                                      "," + name2 + "=" + format_outcome_label(pb.value);
      // Joint: quantum side through the sequential product rule.
      double quantum_joint = 0.0;
      if (px > tol.zero_prob) {
        const QuantumState updated = luders_update(state, lifted1, pa.value, tol);
        quantum_joint = px * born_probability(updated, lifted2, pb.value, tol);
      }
      double classical_joint = 0.0;
      for (int w = 0; w < embedding.space.size(); ++w) {
        const double match1 = tol.cluster(pa.value);
        const double match2 = tol.cluster(pb.value);
        if (std::abs(embedding.first(w) - pa.value) <= match1 &&
            std::abs(embedding.second(w) - pb.value) <= match2)
          classical_joint += embedding.space.weight(w);
      }
      add_row("p(" + joint_label + ")", classical_joint, quantum_joint);

      if (px > tol.zero_prob) {
        const QuantumState updated = luders_update(state, lifted1, pa.value, tol);
        add_row("p(" + name2 + "=" + format_outcome_label(pb.value) + "|" + name1 +
                    "=" + format_outcome_label(pa.value) + ")",
                conditional_probability_classical(embedding.space, embedding.first,
                                                  pa.value, embedding.second, pb.value,
                                                  tol),
                born_probability(updated, lifted2, pb.value, tol));
      }
    }
  }
  return report;
}

SampleRun sample_outcomes(const QuantumState& state,
                          const Observable& obs1, const Observable& obs2,
                          std::int64_t trials, std::uint64_t seed, SampleMode mode,
                          const Tolerances& tol, int num_threads) {
  if (trials < 1) throw Error("sample_outcomes: trials must be >= 1");

  SampleRun run{seed, trials, mode, std::vector<SampleRecord>(trials)};

  if (mode == SampleMode::Direct) {
    const JointDistribution joint = joint_distribution(state, obs1, obs2, tol);
    run_partitioned(trials, num_threads, [&](std::int64_t begin, std::int64_t end) {
      for (std::int64_t t = begin; t < end; ++t) {
        TrialStream stream(seed, t);
        const int cell = pick(joint.cells, stream.uniform(),
                              [](const JointDistribution::Cell& c) { return c.probability; });
        run.records[t] = {t, joint.cells[cell].x, joint.cells[cell].y};
      }
    });
    return run;
  }

  // TwoStep: Born draw on site 1, update, Born draw on site 2. Conditioned
  // states are reused across trials; there are only as many as site-1
  // outcomes with nonzero probability.
  const Observable lifted1 = lift_observable(obs1, 1, state.site_dims());
  const Observable lifted2 = lift_observable(obs2, 2, state.site_dims());
  const OutcomeDistribution first_dist = outcome_distribution(state, lifted1, tol);

  std::vector<OutcomeDistribution> second_dists(first_dist.entries.size());
  for (size_t i = 0; i < first_dist.entries.size(); ++i) {
    if (first_dist.entries[i].probability <= tol.zero_prob) continue;
    const QuantumState updated =
        luders_update(state, lifted1, first_dist.entries[i].outcome, tol);
    second_dists[i] = outcome_distribution(updated, lifted2, tol);
  }

  run_partitioned(trials, num_threads, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t t = begin; t < end; ++t) {
      TrialStream stream(seed, t);
      const int i = pick(first_dist.entries, stream.uniform(),
                         [](const OutcomeDistribution::Entry& e) { return e.probability; });
      const int j = pick(second_dists[i].entries, stream.uniform(),
                         [](const OutcomeDistribution::Entry& e) { return e.probability; });
      run.records[t] = {t, first_dist.entries[i].outcome,
                        second_dists[i].entries[j].outcome};
    }
  });
  return run;
}

OutcomeDistribution conditional_statistics(const SampleRun& run, double outcome1_filter,
                                           const Tolerances& tol) {
  const double match = tol.cluster(outcome1_filter);
  std::map<double, std::int64_t> counts;
  std::int64_t total = 0;
  for (const auto& rec : run.records) {
    if (std::abs(rec.outcome1 - outcome1_filter) <= match) {
      ++counts[rec.outcome2];
      ++total;
    }
  }
  if (total == 0)
    throw EmptySubensemble("no record has site-1 outcome " +
                           format_outcome_label(outcome1_filter));
  OutcomeDistribution dist;
  for (const auto& [outcome, count] : counts)
    dist.entries.push_back({outcome, static_cast<double>(count) / total});
  return dist;
}

JointDistribution empirical_joint(const SampleRun& run, const Tolerances& tol) {
  (void)tol;
  std::map<std::pair<double, double>, std::int64_t> counts;
  for (const auto& rec : run.records) ++counts[{rec.outcome1, rec.outcome2}];
  JointDistribution joint;
  for (const auto& [cell, count] : counts)
    joint.cells.push_back(
        {cell.first, cell.second,
         static_cast<double>(count) / static_cast<double>(run.records.size())});
  return joint;
}

}  // namespace janus
