// Command-line front end.  Everything goes through the C API in
// ergocount.h; the C++ core stays behind the shared library boundary.

#include <cinttypes>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "ergocount.h"

namespace {

// Exit codes: 0 success, 2 scenario validation error, 3 candidate budget
// exceeded, 1 anything else.
int exit_code_for(ergo_status status) {
  switch (status) {
    case ERGO_OK: return 0;
    case ERGO_ERROR_INVALID_ARGUMENT:
    case ERGO_ERROR_PARSE: return 2;
    case ERGO_ERROR_BUDGET_EXCEEDED: return 3;
    default: return 1;
  }
}

int report_failure(ergo_status status) {
  std::fprintf(stderr, "ergocount: %s: %s\n", ergo_status_name(status),
               ergo_last_error_message());
  return exit_code_for(status);
}

struct CommonOptions {
  uint64_t seed = 0;
  int64_t samples = -1;  // -1 keeps the experiment default
  std::string out;
  std::string format = "csv";
  int log2T = -1;
  double b = 1.0;
  int m = 1;
  int n = 1;
};

void add_common_flags(CLI::App* cmd, CommonOptions* opts) {
  cmd->add_option("--seed", opts->seed, "master RNG seed");
  cmd->add_option("--samples", opts->samples, "number of random samples");
  cmd->add_option("--out", opts->out, "output path (default stdout)");
  cmd->add_option("--format", opts->format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--log2T", opts->log2T, "largest dyadic scale exponent");
  cmd->add_option("--b", opts->b, "thinning parameter b");
  cmd->add_option("--m", opts->m, "x-block dimension");
  cmd->add_option("--n", opts->n, "y-block dimension");
}

class ScenarioHandle {
 public:
  explicit ScenarioHandle(const char* experiment)
      : handle_(ergo_scenario_create(experiment)) {}
  ~ScenarioHandle() { ergo_scenario_destroy(handle_); }
  ScenarioHandle(const ScenarioHandle&) = delete;
  ScenarioHandle& operator=(const ScenarioHandle&) = delete;

  ergo_scenario* get() { return handle_; }

  ergo_status set_common(const CommonOptions& opts, int default_log2T,
                         int64_t default_samples) {
    ergo_status rc;
    if ((rc = ergo_scenario_set_int(handle_, "seed",
                                    static_cast<int64_t>(opts.seed))))
      return rc;
    if ((rc = ergo_scenario_set_int(
             handle_, "samples",
             opts.samples > 0 ? opts.samples : default_samples)))
      return rc;
    if ((rc = ergo_scenario_set_int(
             handle_, "log2T", opts.log2T > 0 ? opts.log2T : default_log2T)))
      return rc;
    if ((rc = ergo_scenario_set_real(handle_, "b", opts.b))) return rc;
    if ((rc = ergo_scenario_set_int(handle_, "m", opts.m))) return rc;
    if ((rc = ergo_scenario_set_int(handle_, "n", opts.n))) return rc;
    if (!opts.format.empty() &&
        (rc = ergo_scenario_set_string(handle_, "format", opts.format.c_str())))
      return rc;
    if (!opts.out.empty() &&
        (rc = ergo_scenario_set_string(handle_, "out", opts.out.c_str())))
      return rc;
    return ERGO_OK;
  }

 private:
  ergo_scenario* handle_;
};

// Runs the scenario and emits the report; flushes whatever partial report
// exists when the budget is exceeded.
int run_and_emit(ergo_scenario* scenario, const std::string& out,
                 const std::string& format) {
  ergo_report* report = nullptr;
  const ergo_status status = ergo_scenario_run(scenario, &report);
  if (status != ERGO_OK && status != ERGO_ERROR_BUDGET_EXCEEDED) {
    ergo_report_destroy(report);
    return report_failure(status);
  }

  int code = 0;
  if (status == ERGO_ERROR_BUDGET_EXCEEDED) {
    std::fprintf(stderr, "ergocount: budget-exceeded: %s\n",
                 ergo_last_error_message());
    code = exit_code_for(status);
    if (!report || ergo_report_row_count(report) == 0) {
      ergo_report_destroy(report);
      return code;
    }
    std::fprintf(stderr, "ergocount: flushing partial report\n");
  }

  ergo_status emit;
  if (out.empty()) {
    char* text = nullptr;
    emit = ergo_report_render(report, format.c_str(), &text);
    if (emit == ERGO_OK) std::fputs(text, stdout);
    ergo_buffer_free(text);
  } else {
    emit = ergo_report_write_file(report, format.c_str(), out.c_str());
  }
  ergo_report_destroy(report);
  if (emit != ERGO_OK) return report_failure(emit);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"counting laboratory for lattices, forms, toral targets and "
               "square-tiled surfaces"};
  app.require_subcommand(0, 1);

  bool show_version = false;
  app.add_flag("--version", show_version, "print the library version");

  std::string scenario_path;
  app.add_option("--scenario", scenario_path,
                 "run a scenario from a TOML file");

  struct Sub {
    CLI::App* cmd = nullptr;
    CommonOptions opts;
    int default_log2T = 10;
    int64_t default_samples = 100;
  };

  Sub forms, affine_forms, toral, lattice, affine_lattice, siegel, origami,
      volume_check;

  forms.cmd = app.add_subcommand("forms", "homogeneous linear forms counts");
  forms.default_log2T = 16;
  affine_forms.cmd =
      app.add_subcommand("affine-forms", "inhomogeneous linear forms counts");
  affine_forms.default_log2T = 16;

  toral.cmd = app.add_subcommand("toral", "shrinking-target hit counts");
  int64_t toral_N = 1000000;
  std::string toral_target = "zero";
  toral.cmd->add_option("--N", toral_N, "time horizon");
  toral.cmd->add_option("--target", toral_target, "zero or random")
      ->check(CLI::IsMember({"zero", "random"}));

  lattice.cmd =
      app.add_subcommand("lattice", "random unimodular lattice counts");
  bool lattice_primitive = false;
  lattice.cmd->add_flag("--primitive", lattice_primitive,
                        "count primitive vectors only");
  affine_lattice.cmd =
      app.add_subcommand("affine-lattice", "random lattice translate counts");

  siegel.cmd =
      app.add_subcommand("siegel", "mean-value formula verification");
  siegel.default_log2T = 1;
  siegel.default_samples = 200000;

  origami.cmd =
      app.add_subcommand("origami", "saddle-connection counts");
  origami.default_log2T = 12;
  origami.default_samples = 50;
  std::string origami_file;
  std::string origami_theta = "random";
  bool distinct_holonomies = false;
  origami.cmd->add_option("--file", origami_file, "origami description file")
      ->required();
  origami.cmd->add_option("--theta", origami_theta, "zero or random")
      ->check(CLI::IsMember({"zero", "random"}));
  origami.cmd->add_flag("--distinct-holonomies", distinct_holonomies,
                        "count each holonomy vector once");

  volume_check.cmd = app.add_subcommand(
      "volume-check", "Monte Carlo check of the closed-form shell volume");
  volume_check.default_samples = 2000000;

  for (Sub* sub : {&forms, &affine_forms, &toral, &lattice, &affine_lattice,
                   &siegel, &origami, &volume_check})
    add_common_flags(sub->cmd, &sub->opts);

  CLI11_PARSE(app, argc, argv);

  if (show_version) {
    std::printf("ergocount %s\n", ergo_version());
    return 0;
  }

  if (!scenario_path.empty()) {
    ergo_scenario* scenario = nullptr;
    const ergo_status status =
        ergo_scenario_load_file(scenario_path.c_str(), &scenario);
    if (status != ERGO_OK) return report_failure(status);
    char out_path[4096];
    char format[16];
    ergo_status rc;
    if ((rc = ergo_scenario_get_string(scenario, "out", out_path,
                                       sizeof out_path)) ||
        (rc = ergo_scenario_get_string(scenario, "format", format,
                                       sizeof format))) {
      ergo_scenario_destroy(scenario);
      return report_failure(rc);
    }
    const int code = run_and_emit(scenario, out_path, format);
    ergo_scenario_destroy(scenario);
    return code;
  }

  const struct {
    Sub* sub;
    const char* name;
  } dispatch[] = {
      {&forms, "forms"},
      {&affine_forms, "affine-forms"},
      {&toral, "toral"},
      {&lattice, "lattice"},
      {&affine_lattice, "affine-lattice"},
      {&siegel, "siegel"},
      {&origami, "origami"},
      {&volume_check, "volume-check"},
  };

  for (const auto& entry : dispatch) {
    if (!entry.sub->cmd->parsed()) continue;
    ScenarioHandle scenario(entry.name);
    if (!scenario.get()) return report_failure(ERGO_ERROR_INTERNAL);

    ergo_status rc = scenario.set_common(entry.sub->opts,
                                         entry.sub->default_log2T,
                                         entry.sub->default_samples);
    if (rc != ERGO_OK) return report_failure(rc);

    if (entry.sub == &toral) {
      if ((rc = ergo_scenario_set_int(scenario.get(), "N", toral_N)) ||
          (rc = ergo_scenario_set_string(scenario.get(), "target",
                                         toral_target.c_str())))
        return report_failure(rc);
    }
    if (entry.sub == &lattice && lattice_primitive &&
        (rc = ergo_scenario_set_flag(scenario.get(), "primitive", 1)))
      return report_failure(rc);
    if (entry.sub == &origami) {
      if ((rc = ergo_scenario_set_string(scenario.get(), "file",
                                         origami_file.c_str())) ||
          (rc = ergo_scenario_set_string(scenario.get(), "theta",
                                         origami_theta.c_str())))
        return report_failure(rc);
      if (distinct_holonomies &&
          (rc = ergo_scenario_set_flag(scenario.get(), "distinct_holonomies",
                                       1)))
        return report_failure(rc);
    }

    return run_and_emit(scenario.get(), entry.sub->opts.out,
                        entry.sub->opts.format);
  }

  std::fputs(app.help().c_str(), stdout);
  return 0;
}
