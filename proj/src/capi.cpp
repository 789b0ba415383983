#include "ergocount.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "ergocount/geometry.hpp"
#include "ergocount/harness.hpp"
#include "ergocount/region.hpp"
#include "ergocount/siegel.hpp"

struct ergo_scenario {
  ergo::Scenario impl;
};

struct ergo_report {
  ergo::ConvergenceReport impl;
};

namespace {

thread_local std::string g_last_error;

ergo_status status_from(ergo::ErrorCode code) {
  switch (code) {
    case ergo::ErrorCode::InvalidArgument: return ERGO_ERROR_INVALID_ARGUMENT;
    case ergo::ErrorCode::BudgetExceeded: return ERGO_ERROR_BUDGET_EXCEEDED;
    case ergo::ErrorCode::Io: return ERGO_ERROR_IO;
    case ergo::ErrorCode::Parse: return ERGO_ERROR_PARSE;
    case ergo::ErrorCode::Internal: return ERGO_ERROR_INTERNAL;
  }
  return ERGO_ERROR_INTERNAL;
}

template <typename Fn>
ergo_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return ERGO_OK;
  } catch (const ergo::Error& e) {
    g_last_error = e.what();
    return status_from(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ERGO_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return ERGO_ERROR_INTERNAL;
  }
}

ergo_status invalid(const char* message) {
  g_last_error = message;
  return ERGO_ERROR_INVALID_ARGUMENT;
}

char* copy_to_buffer(const std::string& text) {
  char* buffer = static_cast<char*>(::operator new(text.size() + 1));
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return buffer;
}

}  // namespace

extern "C" {

const char* ergo_version(void) { return "0.1.0"; }

const char* ergo_status_name(ergo_status status) {
  switch (status) {
    case ERGO_OK: return "ok";
    case ERGO_ERROR_INVALID_ARGUMENT: return "invalid-argument";
    case ERGO_ERROR_BUDGET_EXCEEDED: return "budget-exceeded";
    case ERGO_ERROR_IO: return "io";
    case ERGO_ERROR_PARSE: return "parse";
    case ERGO_ERROR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* ergo_last_error_message(void) { return g_last_error.c_str(); }

ergo_status ergo_ball_volume(int k, double* out) {
  if (!out) return invalid("null output pointer");
  return guarded([&] { *out = ergo::ball_volume(k); });
}

ergo_status ergo_sphere_area(int k, double* out) {
  if (!out) return invalid("null output pointer");
  return guarded([&] { *out = ergo::sphere_area(k); });
}

ergo_status ergo_zeta(int d, double* out) {
  if (!out) return invalid("null output pointer");
  return guarded([&] { *out = ergo::zeta(d); });
}

ergo_status ergo_region_volume(double b, int m, int n, double y_lo,
                               double y_hi, double* out) {
  if (!out) return invalid("null output pointer");
  return guarded(
      [&] { *out = ergo::ThinningRegion(b, m, n, y_lo, y_hi).volume(); });
}

ergo_scenario* ergo_scenario_create(const char* experiment) {
  if (!experiment) return nullptr;
  try {
    auto* scenario = new ergo_scenario;
    scenario->impl.experiment = ergo::experiment_from_name(experiment);
    return scenario;
  } catch (...) {
    return nullptr;
  }
}

void ergo_scenario_destroy(ergo_scenario* scenario) { delete scenario; }

ergo_status ergo_scenario_load_file(const char* path, ergo_scenario** out) {
  if (!path || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    auto loaded = ergo::load_scenario_file(path);
    *out = new ergo_scenario{std::move(loaded)};
  });
}

ergo_status ergo_scenario_set_int(ergo_scenario* scenario, const char* key,
                                  int64_t value) {
  if (!scenario || !key) return invalid("null argument");
  return guarded([&] { scenario->impl.set(key, std::to_string(value)); });
}

ergo_status ergo_scenario_set_real(ergo_scenario* scenario, const char* key,
                                   double value) {
  if (!scenario || !key) return invalid("null argument");
  return guarded([&] {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    scenario->impl.set(key, buf);
  });
}

ergo_status ergo_scenario_set_string(ergo_scenario* scenario, const char* key,
                                     const char* value) {
  if (!scenario || !key || !value) return invalid("null argument");
  return guarded([&] { scenario->impl.set(key, value); });
}

ergo_status ergo_scenario_set_flag(ergo_scenario* scenario, const char* key,
                                   int value) {
  if (!scenario || !key) return invalid("null argument");
  return guarded(
      [&] { scenario->impl.set(key, value ? "true" : "false"); });
}

ergo_status ergo_scenario_get_string(const ergo_scenario* scenario,
                                     const char* key, char* buffer,
                                     size_t buffer_size) {
  if (!scenario || !key || !buffer || buffer_size == 0)
    return invalid("null argument");
  const std::string name(key);
  std::string value;
  if (name == "out")
    value = scenario->impl.out;
  else if (name == "format")
    value = scenario->impl.format;
  else if (name == "experiment")
    value = ergo::experiment_name(scenario->impl.experiment);
  else if (name == "origami_file" || name == "file")
    value = scenario->impl.origami_file;
  else if (name == "theta")
    value = scenario->impl.theta;
  else if (name == "target")
    value = scenario->impl.target;
  else
    return invalid("unknown string-valued scenario key");
  std::strncpy(buffer, value.c_str(), buffer_size - 1);
  buffer[buffer_size - 1] = '\0';
  g_last_error.clear();
  return ERGO_OK;
}

ergo_status ergo_scenario_run(const ergo_scenario* scenario,
                              ergo_report** out) {
  if (!scenario || !out) return invalid("null argument");
  *out = nullptr;
  try {
    auto report = ergo::run_scenario(scenario->impl);
    *out = new ergo_report{std::move(report)};
    g_last_error.clear();
    return ERGO_OK;
  } catch (const ergo::BudgetExceededWithPartial& e) {
    g_last_error = e.what();
    *out = new (std::nothrow) ergo_report{e.partial()};
    return ERGO_ERROR_BUDGET_EXCEEDED;
  } catch (const ergo::Error& e) {
    g_last_error = e.what();
    return status_from(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ERGO_ERROR_INTERNAL;
  }
}

void ergo_report_destroy(ergo_report* report) { delete report; }

size_t ergo_report_row_count(const ergo_report* report) {
  return report ? report->impl.rows.size() : 0;
}

ergo_status ergo_report_summary(const ergo_report* report, const char* key,
                                double* out) {
  if (!report || !key || !out) return invalid("null argument");
  const auto it = report->impl.summary.find(key);
  if (it == report->impl.summary.end())
    return invalid("no such summary key");
  *out = it->second;
  g_last_error.clear();
  return ERGO_OK;
}

ergo_status ergo_report_render(const ergo_report* report, const char* format,
                               char** out) {
  if (!report || !format || !out) return invalid("null argument");
  *out = nullptr;
  return guarded([&] { *out = copy_to_buffer(report->impl.render(format)); });
}

ergo_status ergo_report_write_file(const ergo_report* report,
                                   const char* format, const char* path) {
  if (!report || !format || !path) return invalid("null argument");
  return guarded([&] {
    const std::string text = report->impl.render(format);
    std::ofstream file(path, std::ios::binary);
    if (!file)
      ergo::fail(ergo::ErrorCode::Io,
                 std::string("cannot open output file: ") + path);
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!file)
      ergo::fail(ergo::ErrorCode::Io,
                 std::string("failed writing output file: ") + path);
  });
}

void ergo_buffer_free(char* buffer) { ::operator delete(buffer); }

}  // extern "C"
