#include "ergocount/scenario.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "ergocount/errors.hpp"

namespace ergo {

namespace {

int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const int64_t v = std::stoll(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::InvalidArgument,
       "scenario key '" + key + "' needs an integer, got '" + value + "'");
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::InvalidArgument,
       "scenario key '" + key + "' needs a number, got '" + value + "'");
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  fail(ErrorCode::InvalidArgument,
       "scenario key '" + key + "' needs true or false, got '" + value + "'");
}

}  // namespace

Experiment experiment_from_name(const std::string& name) {
  if (name == "forms") return Experiment::Forms;
  if (name == "affine-forms") return Experiment::AffineForms;
  if (name == "toral") return Experiment::Toral;
  if (name == "lattice") return Experiment::Lattice;
  if (name == "affine-lattice") return Experiment::AffineLattice;
  if (name == "siegel") return Experiment::Siegel;
  if (name == "origami") return Experiment::Origami;
  if (name == "volume-check") return Experiment::VolumeCheck;
  fail(ErrorCode::InvalidArgument, "unknown experiment: " + name);
}

std::string experiment_name(Experiment experiment) {
  switch (experiment) {
    case Experiment::Forms: return "forms";
    case Experiment::AffineForms: return "affine-forms";
    case Experiment::Toral: return "toral";
    case Experiment::Lattice: return "lattice";
    case Experiment::AffineLattice: return "affine-lattice";
    case Experiment::Siegel: return "siegel";
    case Experiment::Origami: return "origami";
    case Experiment::VolumeCheck: return "volume-check";
  }
  fail(ErrorCode::Internal, "bad experiment value");
}

void Scenario::set(const std::string& key, const std::string& value) {
  if (key == "experiment")
    experiment = experiment_from_name(value);
  else if (key == "m")
    m = static_cast<int>(parse_int(key, value));
  else if (key == "n")
    n = static_cast<int>(parse_int(key, value));
  else if (key == "b")
    b = parse_real(key, value);
  else if (key == "log2T")
    log2T = static_cast<int>(parse_int(key, value));
  else if (key == "N")
    N = parse_int(key, value);
  else if (key == "samples")
    samples = parse_int(key, value);
  else if (key == "seed")
    seed = static_cast<uint64_t>(parse_int(key, value));
  else if (key == "primitive")
    primitive = parse_bool(key, value);
  else if (key == "origami_file" || key == "file")
    origami_file = value;
  else if (key == "theta")
    theta = value;
  else if (key == "target")
    target = value;
  else if (key == "distinct_holonomies")
    distinct_holonomies = parse_bool(key, value);
  else if (key == "format")
    format = value;
  else if (key == "out")
    out = value;
  else if (key == "threads")
    threads = static_cast<int>(parse_int(key, value));
  else
    fail(ErrorCode::InvalidArgument, "unknown scenario key: " + key);
}

void Scenario::validate() const {
  if (m < 1 || n < 1)
    fail(ErrorCode::InvalidArgument, "block sizes m and n must be >= 1");
  if (!(b > 0.0))
    fail(ErrorCode::InvalidArgument, "b must be positive");
  if (samples < 1)
    fail(ErrorCode::InvalidArgument, "samples must be >= 1");
  if (format != "csv" && format != "json")
    fail(ErrorCode::InvalidArgument, "format must be csv or json");
  if (threads < 0)
    fail(ErrorCode::InvalidArgument, "threads must be >= 0");

  switch (experiment) {
    case Experiment::Forms:
    case Experiment::AffineForms:
      if (log2T < 1)
        fail(ErrorCode::InvalidArgument, "log2T must be >= 1");
      break;
    case Experiment::Toral:
      if (N < 2) fail(ErrorCode::InvalidArgument, "N must be >= 2");
      if (target != "zero" && target != "random")
        fail(ErrorCode::InvalidArgument, "target must be zero or random");
      break;
    case Experiment::Lattice:
    case Experiment::AffineLattice:
      if (m != 1 || n != 1)
        fail(ErrorCode::InvalidArgument,
             "lattice experiments draw d = 2 lattices; use the forms "
             "experiments for other splits");
      if (log2T < 1)
        fail(ErrorCode::InvalidArgument, "log2T must be >= 1");
      if (primitive && experiment == Experiment::AffineLattice)
        fail(ErrorCode::InvalidArgument,
             "primitive counting is undefined for lattice translates");
      break;
    case Experiment::Siegel:
      if (m != 1 || n != 1)
        fail(ErrorCode::InvalidArgument, "siegel runs at d = 2 only");
      if (log2T < 1)
        fail(ErrorCode::InvalidArgument, "log2T must be >= 1");
      if (samples < 100)
        fail(ErrorCode::InvalidArgument, "siegel needs samples >= 100");
      break;
    case Experiment::Origami:
      if (origami_file.empty())
        fail(ErrorCode::InvalidArgument, "origami experiment needs a file");
      if (theta != "zero" && theta != "random")
        fail(ErrorCode::InvalidArgument, "theta must be zero or random");
      if (log2T < 1)
        fail(ErrorCode::InvalidArgument, "log2T must be >= 1");
      break;
    case Experiment::VolumeCheck:
      if (samples < 1000)
        fail(ErrorCode::InvalidArgument,
             "volume-check needs at least 1000 points per region");
      break;
  }
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open scenario file: " + path);

  Scenario scenario;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;

    // Strip comments (respecting quoted strings) and whitespace.
    bool quoted = false;
    std::string body;
    for (char ch : line) {
      if (ch == '"') quoted = !quoted;
      if (ch == '#' && !quoted) break;
      body += ch;
    }
    auto trim = [](const std::string& s) {
      size_t first = s.find_first_not_of(" \t\r");
      if (first == std::string::npos) return std::string();
      size_t last = s.find_last_not_of(" \t\r");
      return s.substr(first, last - first + 1);
    };
    body = trim(body);
    if (body.empty()) continue;

    const size_t eq = body.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::Parse, path + ":" + std::to_string(line_number) +
                                 ": expected key = value");
    std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty())
      fail(ErrorCode::Parse, path + ":" + std::to_string(line_number) +
                                 ": expected key = value");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);

    try {
      scenario.set(key, value);
    } catch (const Error& e) {
      fail(ErrorCode::Parse,
           path + ":" + std::to_string(line_number) + ": " + e.what());
    }
  }
  return scenario;
}

}  // namespace ergo
