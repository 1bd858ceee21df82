#ifndef JANUS_SCENARIO_IO_HPP
#define JANUS_SCENARIO_IO_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "janus/behavior.hpp"
#include "janus/harness.hpp"
#include "janus/quantum.hpp"

namespace janus {

// Scenario files are line-oriented: `section:` headers (state, observables,
// settings, task) followed by `key = value` entries. Complex numbers are
// written as re,im pairs separated by whitespace, matrices row-major.
//
//   state:
//     dims = 2 2
//     amplitudes = 0,0 0.5,0.5 0.5,-0.5 0,0
//
//   observables:
//     name = A
//     site = 1
//     matrix = 1,0 0,0 0,0 -1,0
//
//   settings:
//     first = A
//
// '#' starts a comment. Observable blocks begin at each `name =` entry.
struct ScenarioObservable {
  std::string name;
  int site = 1;
  ComplexMatrix matrix;
};

struct Scenario {
  std::vector<int> dims;
  ComplexVector amplitudes;
  bool has_state = false;

  std::vector<ScenarioObservable> observables;
  std::map<std::string, std::string> settings;
  std::map<std::string, std::string> task;

  QuantumState state(const Tolerances& tol = default_tolerances()) const;
  bool has_observable(const std::string& name) const;
  const ScenarioObservable& observable(const std::string& name) const;
  std::optional<std::string> setting(const std::string& key) const;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
std::string serialize_scenario(const Scenario& scenario);

// Behavior files use the same syntax: a `settings:` section naming the two
// settings per site, then four `table:` sections, each with `pair = Ai Bj`
// and `p = p(+,+) p(+,-) p(-,+) p(-,-)`.
BehaviorTable parse_behavior(const std::string& text);
BehaviorTable load_behavior(const std::string& path);
std::string serialize_behavior(const BehaviorTable& behavior);

// All numeric report output carries 12 significant digits.
std::string format_number(double v);
std::string format_complex(const Complex& v);

// Machine-readable record stream: `key = value` lines on the data channel,
// '#'-prefixed lines for human-readable decoration. Records round-trip
// through parse_records.
class RecordWriter {
 public:
  explicit RecordWriter(std::ostream& out) : out_(out) {}

  void comment(const std::string& text);
  void blank();
  void record(const std::string& key, const std::string& value);
  void record(const std::string& key, double value);
  void record(const std::string& key, const std::vector<double>& values);
  void record(const std::string& key, const ComplexVector& amplitudes);
  void record(const std::string& key, const ComplexMatrix& matrix);  // row-major
  // Aligned columns rendered as comment lines.
  void table(const std::vector<std::vector<std::string>>& rows);

 private:
  std::ostream& out_;
};

// (key, value) pairs in order of appearance; comments and section headers are
// skipped. Repeated keys are preserved.
std::vector<std::pair<std::string, std::string>> parse_records(const std::string& text);

// Report renderers shared by the CLI and the harness summaries.
void write_comparison(RecordWriter& w, const ComparisonReport& report);
void write_sample_summary(RecordWriter& w, const SampleRun& run,
                          const JointDistribution& expected,
                          const Tolerances& tol = default_tolerances());

}  // namespace janus

#endif  // JANUS_SCENARIO_IO_HPP
