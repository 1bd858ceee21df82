// janus: side-by-side classical and quantum probability update at the command
// line. Subcommands: epr, update, compare, jpd, sample, spectral. Machine
// records go to stdout as `key = value` lines; '#' lines are human-readable
// decoration; diagnostics go to stderr.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "janus/behavior.hpp"
#include "janus/harness.hpp"
#include "janus/scenario_io.hpp"

namespace {

// Default sampling seed, "JNUS" in ASCII; JANUS_SEED or --seed override it.
constexpr std::uint64_t kDefaultSeed = 0x4A4E5553ULL;
constexpr double kPi = 3.14159265358979323846;

double deg_to_rad(double degrees) { return degrees * kPi / 180.0; }

janus::Tolerances apply_tol_overrides(const std::vector<std::string>& specs) {
  janus::Tolerances tol;
  std::map<std::string, double*> knobs{
      {"herm", &tol.herm},         {"proj", &tol.proj},
      {"norm", &tol.norm},         {"spectral", &tol.spectral},
      {"psd", &tol.psd},           {"schmidt", &tol.schmidt},
      {"commute", &tol.commute},   {"zero-prob", &tol.zero_prob},
      {"feas", &tol.feas},         {"independence", &tol.independence},
      {"cluster", &tol.cluster_rel}};
  for (const auto& spec : specs) {
    const size_t eq = spec.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--tol", "expected NAME=VALUE, got '" + spec + "'");
    const std::string name = spec.substr(0, eq);
    const auto it = knobs.find(name);
    if (it == knobs.end())
      throw CLI::ValidationError("--tol", "unknown tolerance '" + name + "'");
    try {
      *it->second = std::stod(spec.substr(eq + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--tol", "bad value in '" + spec + "'");
    }
  }
  return tol;
}

// A settings reference is either the name of a scenario observable or
// `angle:<degrees>` for a polarizer at that orientation.
janus::Observable resolve_observable(const janus::Scenario& scenario,
                                     const std::string& ref, int default_site,
                                     int* site_out, const janus::Tolerances& tol) {
  if (ref.rfind("angle:", 0) == 0) {
    const double degrees = std::stod(ref.substr(6));
    if (site_out) *site_out = default_site;
    return janus::polarizer_observable(deg_to_rad(degrees));
  }
  const janus::ScenarioObservable& entry = scenario.observable(ref);
  if (site_out) *site_out = entry.site;
  return janus::Observable(entry.matrix, entry.name, tol);
}

std::string required_setting(const janus::Scenario& scenario, const std::string& key) {
  const auto value = scenario.setting(key);
  if (!value)
    throw janus::Error("scenario settings section is missing '" + key + "'");
  return *value;
}

const char* mode_name(janus::SampleMode mode) {
  return mode == janus::SampleMode::Direct ? "direct" : "twostep";
}

int cmd_epr(double angle_a_deg, double angle_b_deg, std::int64_t trials,
            std::uint64_t seed, janus::SampleMode mode, const janus::Tolerances& tol) {
  janus::RecordWriter w(std::cout);
  const janus::EPRScenario scenario =
      janus::EPRScenario::standard(deg_to_rad(angle_a_deg), deg_to_rad(angle_b_deg));
  const janus::Observable pol_a = janus::polarizer_observable(scenario.angle_a);
  const janus::Observable pol_b = janus::polarizer_observable(scenario.angle_b);

  w.comment("photon pair (|xx> + |yy>)/sqrt(2), polarizer I at " +
            janus::format_number(angle_a_deg) + " deg, polarizer II at " +
            janus::format_number(angle_b_deg) + " deg");
  w.record("angle_a_deg", angle_a_deg);
  w.record("angle_b_deg", angle_b_deg);

  const janus::EprJointTable joint = janus::epr_joint_probabilities(scenario, tol);
  w.table({{"", "II=+", "II=-"},
           {"I=+", janus::format_number(joint.pp), janus::format_number(joint.pm)},
           {"I=-", janus::format_number(joint.mp), janus::format_number(joint.mm)}});
  w.record("p_pp", joint.pp);
  w.record("p_pm", joint.pm);
  w.record("p_mp", joint.mp);
  w.record("p_mm", joint.mm);

  const janus::Observable lifted_a =
      janus::lift_observable(pol_a, 1, scenario.state.site_dims());
  for (const double first : {+1.0, -1.0}) {
    const double prior = janus::born_probability(scenario.state, lifted_a, first, tol);
    const std::string tag = first > 0 ? "p" : "m";
    w.record("prior_" + tag, prior);
    if (prior <= tol.zero_prob) continue;
    for (const double second : {+1.0, -1.0}) {
      const double conditional = janus::conditional_probability(
          scenario.state, pol_a, first, pol_b, second, tol);
      w.record("cond_" + std::string(second > 0 ? "p" : "m") + "_given_" + tag,
               conditional);
    }
    const janus::QuantumState updated =
        janus::bipartite_luders_update(scenario.state, pol_a, 1, first, tol);
    w.record("post_state_" + tag, updated.vector());
  }

  if (trials > 0) {
    w.blank();
    w.comment("sampled run: trials=" + std::to_string(trials) + " seed=" +
              std::to_string(seed) + " mode=" + mode_name(mode));
    const janus::SampleRun run =
        janus::sample_outcomes(scenario.state, pol_a, pol_b, trials, seed, mode, tol);
    janus::write_sample_summary(w, run,
                                janus::joint_distribution(scenario.state, pol_a, pol_b, tol),
                                tol);
  }
  return 0;
}

int cmd_update(const std::string& scenario_path, const std::string& observable_name,
               double outcome, const janus::Tolerances& tol) {
  janus::RecordWriter w(std::cout);
  const janus::Scenario scenario = janus::load_scenario(scenario_path);
  const janus::QuantumState state = scenario.state(tol);
  const janus::ScenarioObservable& entry = scenario.observable(observable_name);
  const janus::Observable obs(entry.matrix, entry.name, tol);

  const bool composite = state.num_sites() >= 2;
  const janus::Observable effective =
      composite ? janus::lift_observable(obs, entry.site, state.site_dims()) : obs;

  const double p = janus::born_probability(state, effective, outcome, tol);
  w.comment("measurement of " + entry.name + " at site " + std::to_string(entry.site) +
            ", outcome " + janus::format_number(outcome));
  w.record("born_probability", p);
  w.record("pre_state", state.vector());
  if (composite)
    for (int site = 1; site <= state.num_sites(); ++site)
      w.record("pre_marginal_site" + std::to_string(site),
               janus::marginal_state(state, site, tol).density_matrix());

  const janus::QuantumState updated = janus::luders_update(state, effective, outcome, tol);
  w.record("post_state", updated.vector());
  if (composite)
    for (int site = 1; site <= state.num_sites(); ++site)
      w.record("post_marginal_site" + std::to_string(site),
               janus::marginal_state(updated, site, tol).density_matrix());
  return 0;
}

int cmd_compare(const std::string& scenario_path, const janus::Tolerances& tol) {
  janus::RecordWriter w(std::cout);
  const janus::Scenario scenario = janus::load_scenario(scenario_path);
  const janus::QuantumState state = scenario.state(tol);

  int site1 = 1, site2 = state.num_sites() >= 2 ? 2 : 1;
  const janus::Observable obs1 =
      resolve_observable(scenario, required_setting(scenario, "first"), 1, &site1, tol);
  const janus::Observable obs2 =
      resolve_observable(scenario, required_setting(scenario, "second"), site2, &site2, tol);

  const janus::ComparisonReport report =
      janus::compare_embedding(state, obs1, site1, obs2, site2, tol);
  w.comment("classical embedding vs quantum calculus");
  janus::write_comparison(w, report);
  return report.all_pass() ? 0 : 1;
}

int cmd_jpd(const std::string& behavior_path, const std::string& scenario_path,
            const janus::Tolerances& tol) {
  janus::RecordWriter w(std::cout);
  janus::BehaviorTable behavior;
  if (!behavior_path.empty()) {
    behavior = janus::load_behavior(behavior_path);
  } else {
    const janus::Scenario scenario = janus::load_scenario(scenario_path);
    const janus::QuantumState state = scenario.state(tol);
    const janus::Observable a1 =
        resolve_observable(scenario, required_setting(scenario, "a1"), 1, nullptr, tol);
    const janus::Observable a2 =
        resolve_observable(scenario, required_setting(scenario, "a2"), 1, nullptr, tol);
    const janus::Observable b1 =
        resolve_observable(scenario, required_setting(scenario, "b1"), 2, nullptr, tol);
    const janus::Observable b2 =
        resolve_observable(scenario, required_setting(scenario, "b2"), 2, nullptr, tol);
    behavior = janus::behavior_from_quantum(state, a1, a2, b1, b2, tol);
  }

  const janus::JpdVerdict verdict = janus::jpd_feasible(behavior, tol);
  w.comment("signed CHSH combinations; mask bits E11 E12 E21 E22, set = minus");
  for (int k = 0; k < 8; ++k)
    w.record("chsh_mask_" + std::to_string(verdict.chsh.sign_masks[k]),
             verdict.chsh.values[k]);
  w.record("max_abs_chsh", verdict.chsh.max_abs);
  w.record("verdict", verdict.exists ? "exists" : "not-exists");
  if (verdict.exists) {
    std::vector<double> q(verdict.witness_distribution->data(),
                          verdict.witness_distribution->data() + 16);
    w.comment("witness distribution over (a1,a2,b1,b2), index a1*8+a2*4+b1*2+b2,"
              " outcome order (+1, -1)");
    w.record("witness", q);
  } else {
    w.record("violated_mask",
             static_cast<double>(verdict.chsh.sign_masks[verdict.violated->first]));
    w.record("violated_value", verdict.violated->second);
  }
  return verdict.exists ? 0 : 4;
}

int cmd_sample(const std::string& scenario_path, std::int64_t trials, std::uint64_t seed,
               janus::SampleMode mode, const janus::Tolerances& tol) {
  janus::RecordWriter w(std::cout);
  const janus::Scenario scenario = janus::load_scenario(scenario_path);
  const janus::QuantumState state = scenario.state(tol);

  int site1 = 1, site2 = 2;
  const janus::Observable obs1 =
      resolve_observable(scenario, required_setting(scenario, "first"), 1, &site1, tol);
  const janus::Observable obs2 =
      resolve_observable(scenario, required_setting(scenario, "second"), 2, &site2, tol);
  if (site1 != 1 || site2 != 2)
    throw janus::SiteMismatch("sample expects 'first' on site 1 and 'second' on site 2");

  const janus::SampleRun run =
      janus::sample_outcomes(state, obs1, obs2, trials, seed, mode, tol);
  w.record("trials", static_cast<double>(trials));
  w.record("seed", std::to_string(seed));
  w.record("mode", mode_name(mode));
  for (const auto& rec : run.records)
    w.record("sample", std::to_string(rec.trial) + " " +
                           janus::format_number(rec.outcome1) + " " +
                           janus::format_number(rec.outcome2));
  w.blank();
  janus::write_sample_summary(w, run, janus::joint_distribution(state, obs1, obs2, tol),
                              tol);
  return 0;
}

int cmd_spectral(const std::string& scenario_path, const std::string& observable_name,
                 const janus::Tolerances& tol) {
  janus::RecordWriter w(std::cout);
  const janus::Scenario scenario = janus::load_scenario(scenario_path);
  const janus::ScenarioObservable& entry = scenario.observable(observable_name);
  const janus::Observable obs(entry.matrix, entry.name, tol);

  w.comment("spectral decomposition of " + entry.name);
  w.record("dim", static_cast<double>(obs.dim()));
  w.record("clusters", static_cast<double>(obs.spectrum().size()));
  int index = 1;
  for (const auto& pair : obs.spectrum().pairs) {
    const std::string suffix = "_" + std::to_string(index++);
    w.record("eigenvalue" + suffix, pair.value);
    w.record("rank" + suffix, std::lround(pair.projector.trace().real()));
    w.record("projector" + suffix, pair.projector);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"janus: classical and quantum probability update, side by side"};
  app.require_subcommand(1);

  std::vector<std::string> tol_specs;
  app.add_option("--tol", tol_specs, "tolerance override NAME=VALUE (repeatable)");

  double angle_a_deg = 0.0, angle_b_deg = 0.0, outcome = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = kDefaultSeed;
  janus::SampleMode mode = janus::SampleMode::Direct;
  std::string scenario_path, behavior_path, observable_name;

  const std::map<std::string, janus::SampleMode> mode_map{
      {"direct", janus::SampleMode::Direct}, {"twostep", janus::SampleMode::TwoStep}};

  CLI::App* epr = app.add_subcommand("epr", "joint and conditional polarization"
                                            " probabilities for the standard pair");
  epr->add_option("--angle-a", angle_a_deg, "polarizer I orientation, degrees")
      ->required()
      ->check(CLI::Number);
  epr->add_option("--angle-b", angle_b_deg, "polarizer II orientation, degrees")
      ->required()
      ->check(CLI::Number);
  epr->add_option("--trials", trials, "append an empirical run of this many trials");
  epr->add_option("--seed", seed, "sampling seed")->envname("JANUS_SEED");
  epr->add_option("--mode", mode, "sampling mode")
      ->transform(CLI::CheckedTransformer(mode_map, CLI::ignore_case));

  CLI::App* update = app.add_subcommand("update", "state update conditioned on one"
                                                  " measured outcome");
  update->add_option("--scenario", scenario_path, "scenario file")->required();
  update->add_option("--observable", observable_name, "observable name")->required();
  update->add_option("--outcome", outcome, "measured outcome (eigenvalue)")->required();

  CLI::App* compare = app.add_subcommand("compare", "classical embedding vs quantum"
                                                    " probabilities");
  compare->add_option("--scenario", scenario_path, "scenario file with settings"
                                                   " first/second")->required();

  CLI::App* jpd = app.add_subcommand("jpd", "joint-distribution feasibility and CHSH"
                                            " values");
  jpd->add_option("--behavior", behavior_path, "behavior file");
  jpd->add_option("--scenario", scenario_path, "scenario file with settings a1 a2 b1 b2");

  CLI::App* sample = app.add_subcommand("sample", "seeded per-trial outcome records");
  sample->add_option("--scenario", scenario_path, "scenario file with settings"
                                                  " first/second")->required();
  sample->add_option("--trials", trials, "number of trials")->required();
  sample->add_option("--seed", seed, "sampling seed")->envname("JANUS_SEED");
  sample->add_option("--mode", mode, "sampling mode")
      ->transform(CLI::CheckedTransformer(mode_map, CLI::ignore_case));

  CLI::App* spectral = app.add_subcommand("spectral", "eigenvalues and projectors of a"
                                                      " scenario observable");
  spectral->add_option("--scenario", scenario_path, "scenario file")->required();
  spectral->add_option("--observable", observable_name, "observable name")->required();

  int exit_code = 0;
  try {
    app.parse(argc, argv);
    const janus::Tolerances tol = apply_tol_overrides(tol_specs);

    if (*epr)
      exit_code = cmd_epr(angle_a_deg, angle_b_deg, trials, seed, mode, tol);
    else if (*update)
      exit_code = cmd_update(scenario_path, observable_name, outcome, tol);
    else if (*compare)
      exit_code = cmd_compare(scenario_path, tol);
    else if (*jpd) {
      if (behavior_path.empty() && scenario_path.empty())
        throw CLI::RequiredError("jpd needs --behavior or --scenario");
      exit_code = cmd_jpd(behavior_path, scenario_path, tol);
    } else if (*sample)
      exit_code = cmd_sample(scenario_path, trials, seed, mode, tol);
    else if (*spectral)
      exit_code = cmd_spectral(scenario_path, observable_name, tol);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const janus::NotCompatible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const janus::SignalingBehavior& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const janus::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
