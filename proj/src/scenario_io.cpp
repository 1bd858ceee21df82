#include "janus/scenario_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace janus {

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

struct Line {
  int number = 0;
  std::string section;                 // non-empty for `section:` lines
  std::string key;                     // non-empty for `key = ...` lines
  int key_column = 1;
  std::vector<Token> values;           // tokens after '='
  std::string raw_value;               // value text as written, trimmed
};

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<Token> tokenize(const std::string& s, int base_column) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    tokens.push_back({s.substr(start, i - start), base_column + static_cast<int>(start)});
  }
  return tokens;
}

// Structural pass shared by scenario and behavior files.
std::vector<Line> scan_lines(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string body = trim(raw);
    if (body.empty()) continue;

    Line line;
    line.number = number;
    const size_t eq = raw.find('=');
    if (eq == std::string::npos) {
      if (body.back() != ':')
        throw ParseError("expected `section:` or `key = value`", number,
                         static_cast<int>(raw.find_first_not_of(" \t")) + 1);
      line.section = trim(body.substr(0, body.size() - 1));
      if (line.section.empty())
        throw ParseError("empty section name", number, 1);
    } else {
      line.key = trim(raw.substr(0, eq));
      line.key_column = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
      if (line.key.empty())
        throw ParseError("missing key before '='", number, line.key_column);
      line.raw_value = trim(raw.substr(eq + 1));
      line.values = tokenize(raw.substr(eq + 1), static_cast<int>(eq) + 2);
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

double parse_double(const Token& token, int line) {
  const char* begin = token.text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + token.text.size() || token.text.empty())
    throw ParseError("malformed number '" + token.text + "'", line, token.column);
  return v;
}

long parse_int(const Token& token, int line) {
  const char* begin = token.text.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end != begin + token.text.size() || token.text.empty())
    throw ParseError("malformed integer '" + token.text + "'", line, token.column);
  return v;
}

Complex parse_complex(const Token& token, int line) {
  const size_t comma = token.text.find(',');
  if (comma == std::string::npos)
    throw ParseError("complex entry '" + token.text + "' is not re,im", line,
                     token.column);
  const Token re{token.text.substr(0, comma), token.column};
  const Token im{token.text.substr(comma + 1), token.column + static_cast<int>(comma) + 1};
  return {parse_double(re, line), parse_double(im, line)};
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_complex_full(const Complex& v) {
  return format_full(v.real()) + "," + format_full(v.imag());
}

}  // namespace

QuantumState Scenario::state(const Tolerances& tol) const {
  if (!has_state) throw Error("scenario has no state section");
  return QuantumState::pure(amplitudes, dims, tol);
}

bool Scenario::has_observable(const std::string& name) const {
  for (const auto& obs : observables)
    if (obs.name == name) return true;
  return false;
}

const ScenarioObservable& Scenario::observable(const std::string& name) const {
  for (const auto& obs : observables)
    if (obs.name == name) return obs;
  throw Error("scenario defines no observable named '" + name + "'");
}

std::optional<std::string> Scenario::setting(const std::string& key) const {
  const auto it = settings.find(key);
  if (it == settings.end()) return std::nullopt;
  return it->second;
}

Scenario parse_scenario(const std::string& text) {
  Scenario scenario;
  std::string section;
  ScenarioObservable* current_obs = nullptr;

  for (const Line& line : scan_lines(text)) {
    if (!line.section.empty()) {
      section = line.section;
      if (section != "state" && section != "observables" && section != "settings" &&
          section != "task")
        throw ParseError("unknown section '" + section + "'", line.number, 1);
      current_obs = nullptr;
      continue;
    }
    if (section.empty())
      throw ParseError("entry before any section header", line.number, line.key_column);

    if (section == "state") {
      if (line.key == "dims") {
        if (!scenario.dims.empty())
          throw ParseError("duplicate dims entry", line.number, line.key_column);
        for (const Token& t : line.values) {
          const long d = parse_int(t, line.number);
          if (d < 1 || d > kMaxSiteDim)
            throw ParseError("site dimension out of range 1.." +
                                 std::to_string(kMaxSiteDim),
                             line.number, t.column);
          scenario.dims.push_back(static_cast<int>(d));
        }
        if (scenario.dims.empty())
          throw ParseError("dims needs at least one entry", line.number, line.key_column);
      } else if (line.key == "amplitudes") {
        if (scenario.dims.empty())
          throw ParseError("dims must precede amplitudes", line.number, line.key_column);
        long expected = 1;
        for (int d : scenario.dims) expected *= d;
        if (static_cast<long>(line.values.size()) != expected)
          throw ParseError("expected " + std::to_string(expected) +
                               " amplitudes, found " + std::to_string(line.values.size()),
                           line.number, line.key_column);
        scenario.amplitudes.resize(expected);
        for (size_t i = 0; i < line.values.size(); ++i)
          scenario.amplitudes(static_cast<Eigen::Index>(i)) =
              parse_complex(line.values[i], line.number);
        const double norm = scenario.amplitudes.norm();
        if (std::abs(norm - 1.0) > default_tolerances().norm)
          throw ParseError("state amplitudes have norm " + format_full(norm) +
                               ", expected 1",
                           line.number, line.key_column);
        scenario.has_state = true;
      } else {
        throw ParseError("unknown state entry '" + line.key + "'", line.number,
                         line.key_column);
      }
    } else if (section == "observables") {
      if (line.key == "name") {
        scenario.observables.push_back({line.raw_value, 1, ComplexMatrix()});
        current_obs = &scenario.observables.back();
        if (current_obs->name.empty())
          throw ParseError("observable name is empty", line.number, line.key_column);
      } else if (line.key == "site") {
        if (!current_obs)
          throw ParseError("site entry before any observable name", line.number,
                           line.key_column);
        current_obs->site = static_cast<int>(parse_int(line.values.at(0), line.number));
        if (current_obs->site < 1)
          throw ParseError("site index must be >= 1", line.number,
                           line.values.at(0).column);
      } else if (line.key == "matrix") {
        if (!current_obs)
          throw ParseError("matrix entry before any observable name", line.number,
                           line.key_column);
        const size_t count = line.values.size();
        const int dim = static_cast<int>(std::lround(std::sqrt(static_cast<double>(count))));
        if (static_cast<size_t>(dim) * dim != count)
          throw ParseError("matrix entry count " + std::to_string(count) +
                               " is not a perfect square",
                           line.number, line.key_column);
        current_obs->matrix.resize(dim, dim);
        for (size_t i = 0; i < count; ++i)
          current_obs->matrix(static_cast<Eigen::Index>(i / dim),
                              static_cast<Eigen::Index>(i % dim)) =
              parse_complex(line.values[i], line.number);
        if (!is_hermitian(current_obs->matrix))
          throw ParseError("observable '" + current_obs->name + "' is not Hermitian",
                           line.number, line.key_column);
      } else {
        throw ParseError("unknown observable entry '" + line.key + "'", line.number,
                         line.key_column);
      }
    } else if (section == "settings") {
      scenario.settings[line.key] = line.raw_value;
    } else {  // task
      scenario.task[line.key] = line.raw_value;
    }
  }

  for (const auto& obs : scenario.observables)
    if (obs.matrix.size() == 0)
      throw ParseError("observable '" + obs.name + "' has no matrix", 1, 1);
  return scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& scenario) {
  std::ostringstream out;
  if (scenario.has_state) {
    out << "state:\n  dims =";
    for (int d : scenario.dims) out << ' ' << d;
    out << "\n  amplitudes =";
    for (Eigen::Index i = 0; i < scenario.amplitudes.size(); ++i)
      out << ' ' << format_complex_full(scenario.amplitudes(i));
    out << "\n";
  }
  if (!scenario.observables.empty()) {
    out << "\nobservables:\n";
    for (const auto& obs : scenario.observables) {
      out << "  name = " << obs.name << "\n  site = " << obs.site << "\n  matrix =";
      for (Eigen::Index r = 0; r < obs.matrix.rows(); ++r)
        for (Eigen::Index c = 0; c < obs.matrix.cols(); ++c)
          out << ' ' << format_complex_full(obs.matrix(r, c));
      out << "\n";
    }
  }
  if (!scenario.settings.empty()) {
    out << "\nsettings:\n";
    for (const auto& [key, value] : scenario.settings)
      out << "  " << key << " = " << value << "\n";
  }
  if (!scenario.task.empty()) {
    out << "\ntask:\n";
    for (const auto& [key, value] : scenario.task)
      out << "  " << key << " = " << value << "\n";
  }
  return out.str();
}

BehaviorTable parse_behavior(const std::string& text) {
  BehaviorTable behavior;
  bool have_site1 = false, have_site2 = false;
  bool table_seen[2][2] = {{false, false}, {false, false}};

  std::string section;
  int current_i = -1, current_j = -1;

  auto setting_index = [&](const std::array<std::string, 2>& names, const Token& token,
                           int line) {
    if (token.text == names[0]) return 0;
    if (token.text == names[1]) return 1;
    throw ParseError("unknown setting '" + token.text + "'", line, token.column);
  };

  for (const Line& line : scan_lines(text)) {
    if (!line.section.empty()) {
      section = line.section;
      if (section != "settings" && section != "table")
        throw ParseError("unknown section '" + section + "'", line.number, 1);
      current_i = current_j = -1;
      continue;
    }
    if (section == "settings") {
      if (line.key == "site1" || line.key == "site2") {
        if (line.values.size() != 2)
          throw ParseError(line.key + " needs exactly two setting names", line.number,
                           line.key_column);
        auto& target = (line.key == "site1") ? behavior.site1_settings
                                             : behavior.site2_settings;
        target = {line.values[0].text, line.values[1].text};
        (line.key == "site1" ? have_site1 : have_site2) = true;
      } else {
        throw ParseError("unknown settings entry '" + line.key + "'", line.number,
                         line.key_column);
      }
    } else if (section == "table") {
      if (line.key == "pair") {
        if (!have_site1 || !have_site2)
          throw ParseError("settings section must precede tables", line.number,
                           line.key_column);
        if (line.values.size() != 2)
          throw ParseError("pair needs two setting names", line.number, line.key_column);
        current_i = setting_index(behavior.site1_settings, line.values[0], line.number);
        current_j = setting_index(behavior.site2_settings, line.values[1], line.number);
        if (table_seen[current_i][current_j])
          throw ParseError("duplicate table for this setting pair", line.number,
                           line.key_column);
      } else if (line.key == "p") {
        if (current_i < 0)
          throw ParseError("p entry before pair", line.number, line.key_column);
        if (line.values.size() != 4)
          throw ParseError("p needs 4 probabilities: (+,+) (+,-) (-,+) (-,-)",
                           line.number, line.key_column);
        Eigen::Matrix2d& t = behavior.tables[current_i][current_j];
        t(0, 0) = parse_double(line.values[0], line.number);
        t(0, 1) = parse_double(line.values[1], line.number);
        t(1, 0) = parse_double(line.values[2], line.number);
        t(1, 1) = parse_double(line.values[3], line.number);
        table_seen[current_i][current_j] = true;
      } else {
        throw ParseError("unknown table entry '" + line.key + "'", line.number,
                         line.key_column);
      }
    } else {
      throw ParseError("entry before any section header", line.number, line.key_column);
    }
  }

  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!table_seen[i][j])
        throw ParseError("missing table for setting pair " + behavior.site1_settings[i] +
                             " " + behavior.site2_settings[j],
                         1, 1);
  return behavior;
}

BehaviorTable load_behavior(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open behavior file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_behavior(buffer.str());
}

std::string serialize_behavior(const BehaviorTable& behavior) {
  std::ostringstream out;
  out << "settings:\n  site1 = " << behavior.site1_settings[0] << ' '
      << behavior.site1_settings[1] << "\n  site2 = " << behavior.site2_settings[0]
      << ' ' << behavior.site2_settings[1] << "\n";
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Eigen::Matrix2d& t = behavior.tables[i][j];
      out << "\ntable:\n  pair = " << behavior.site1_settings[i] << ' '
          << behavior.site2_settings[j] << "\n  p = " << format_full(t(0, 0)) << ' '
          << format_full(t(0, 1)) << ' ' << format_full(t(1, 0)) << ' '
          << format_full(t(1, 1)) << "\n";
    }
  }
  return out.str();
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string format_complex(const Complex& v) {
  return format_number(v.real()) + "," + format_number(v.imag());
}

void RecordWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void RecordWriter::blank() { out_ << "\n"; }

void RecordWriter::record(const std::string& key, const std::string& value) {
  out_ << key << " = " << value << "\n";
}

void RecordWriter::record(const std::string& key, double value) {
  record(key, format_number(value));
}

void RecordWriter::record(const std::string& key, const std::vector<double>& values) {
  std::string joined;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) joined += ' ';
    joined += format_number(values[i]);
  }
  record(key, joined);
}

void RecordWriter::record(const std::string& key, const ComplexVector& amplitudes) {
  std::string joined;
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
    if (i) joined += ' ';
    joined += format_complex(amplitudes(i));
  }
  record(key, joined);
}

void RecordWriter::record(const std::string& key, const ComplexMatrix& matrix) {
  std::string joined;
  for (Eigen::Index r = 0; r < matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      if (r || c) joined += ' ';
      joined += format_complex(matrix(r, c));
    }
  record(key, joined);
}

void RecordWriter::table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> widths;
  for (const auto& row : rows)
    for (size_t c = 0; c < row.size(); ++c) {
      if (c >= widths.size()) widths.push_back(0);
      widths[c] = std::max(widths[c], row[c].size());
    }
  for (const auto& row : rows) {
    std::string line = "#";
    for (size_t c = 0; c < row.size(); ++c) {
      line += "  " + row[c];
      if (c + 1 < row.size()) line.append(widths[c] - row[c].size(), ' ');
    }
    out_ << line << "\n";
  }
}

std::vector<std::pair<std::string, std::string>> parse_records(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> records;
  for (const Line& line : scan_lines(text))
    if (!line.key.empty()) records.emplace_back(line.key, line.raw_value);
  return records;
}

void write_comparison(RecordWriter& w, const ComparisonReport& report) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"quantity", report.lhs_name, report.rhs_name, "|diff|", "verdict"});
  for (const auto& row : report.rows)
    rows.push_back({row.label, format_number(row.lhs), format_number(row.rhs),
                    format_number(row.diff), row.pass ? "pass" : "FAIL"});
  w.table(rows);
  int index = 0;
  for (const auto& row : report.rows) {
    w.record("row_" + std::to_string(index++),
             row.label + " " + format_number(row.lhs) + " " + format_number(row.rhs) +
                 " " + format_number(row.diff) + " " + (row.pass ? "pass" : "fail"));
  }
  w.record("all_pass", report.all_pass() ? "true" : "false");
}

void write_sample_summary(RecordWriter& w, const SampleRun& run,
                          const JointDistribution& expected, const Tolerances& tol) {
  w.comment("empirical joint frequencies vs exact probabilities");
  const JointDistribution empirical = empirical_joint(run, tol);
  const double n = static_cast<double>(run.records.size());
  const double match = tol.cluster(1.0);

  std::vector<std::vector<std::string>> rows;
  rows.push_back({"x", "y", "empirical", "exact", "4sigma"});
  for (const auto& cell : expected.cells) {
    double freq = 0.0;
    for (const auto& e : empirical.cells)
      if (std::abs(e.x - cell.x) <= match && std::abs(e.y - cell.y) <= match)
        freq = e.probability;
    const double band = 4.0 * std::sqrt(cell.probability * (1.0 - cell.probability) / n);
    rows.push_back({format_number(cell.x), format_number(cell.y), format_number(freq),
                    format_number(cell.probability), format_number(band)});
    w.record("cell",
             format_number(cell.x) + " " + format_number(cell.y) + " " +
                 format_number(freq) + " " + format_number(cell.probability));
  }
  w.table(rows);

  std::int64_t discordant = 0;
  for (const auto& rec : run.records)
    if (std::abs(rec.outcome1 - rec.outcome2) > match) ++discordant;
  w.record("discordant", static_cast<double>(discordant));
}

}  // namespace janus
