#ifndef ERGOCOUNT_SCENARIO_HPP
#define ERGOCOUNT_SCENARIO_HPP

#include <cstdint>
#include <string>

namespace ergo {

enum class Experiment {
  Forms,
  AffineForms,
  Toral,
  Lattice,
  AffineLattice,
  Siegel,
  Origami,
  VolumeCheck,
};

Experiment experiment_from_name(const std::string& name);
std::string experiment_name(Experiment experiment);

// Complete description of one harness run.  Scenario keys map 1:1 to the
// CLI flags and to the scenario-file schema.
struct Scenario {
  Experiment experiment = Experiment::Forms;
  int m = 1;
  int n = 1;
  double b = 1.0;
  int log2T = 10;             // dyadic scale ceiling (forms/lattice/origami),
                              // shell top 2^log2T for siegel
  int64_t N = 1000000;        // toral time horizon
  int64_t samples = 100;      // random samples (or MC points for volume-check)
  uint64_t seed = 0;
  bool primitive = false;     // lattice experiment only
  std::string origami_file;
  std::string theta = "random";    // origami: "zero" or "random"
  std::string target = "zero";     // toral: "zero" or "random"
  bool distinct_holonomies = false;
  std::string format = "csv";      // "csv" or "json"
  std::string out;                 // output path; empty means stdout
  int threads = 0;                 // 0 = auto; ERGOCOUNT_THREADS still caps

  // Assign a key from its text form ("seed", "samples", "b", ...),
  // shared by the scenario-file loader and the C API setters.
  void set(const std::string& key, const std::string& value);

  // Throws on incomplete or inconsistent parameter sets.
  void validate() const;
};

// Loads a scenario from a flat TOML file of `key = value` lines
// (strings, integers, floats, booleans; '#' comments).
Scenario load_scenario_file(const std::string& path);

}  // namespace ergo

#endif
