#include "ergocount/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "ergocount/errors.hpp"

namespace ergo {

namespace {

std::string fmt12(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace

std::string ConvergenceReport::render_csv() const {
  std::string out = "experiment,seed,sample,m,n,b,scale,count,expected,ratio\n";
  for (const ReportRow& row : rows) {
    out += experiment;
    out += ',';
    out += std::to_string(seed);
    out += ',';
    out += std::to_string(row.sample);
    out += ',';
    out += std::to_string(m);
    out += ',';
    out += std::to_string(n);
    out += ',';
    out += fmt12(b);
    out += ',';
    out += fmt12(row.scale);
    out += ',';
    out += fmt12(row.count);
    out += ',';
    out += fmt12(row.expected);
    out += ',';
    out += fmt12(row.ratio);
    out += '\n';
  }
  return out;
}

std::string ConvergenceReport::render_json() const {
  nlohmann::ordered_json doc;
  doc["experiment"] = experiment;
  doc["seed"] = seed;
  doc["m"] = m;
  doc["n"] = n;
  doc["b"] = b;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const ReportRow& row : rows) {
    doc["rows"].push_back({{"sample", row.sample},
                           {"scale", row.scale},
                           {"count", row.count},
                           {"expected", row.expected},
                           {"ratio", row.ratio}});
  }
  nlohmann::ordered_json summary_obj;
  for (const auto& [key, value] : summary) summary_obj[key] = value;
  doc["summary"] = std::move(summary_obj);
  return doc.dump(2) + "\n";
}

std::string ConvergenceReport::render(const std::string& format) const {
  if (format == "csv") return render_csv();
  if (format == "json") return render_json();
  fail(ErrorCode::InvalidArgument, "unknown report format: " + format);
}

std::vector<std::pair<double, double>> ConvergenceReport::mean_counts_by_scale()
    const {
  std::map<double, std::pair<double, int64_t>> acc;
  for (const ReportRow& row : rows) {
    auto& slot = acc[row.scale];
    slot.first += row.count;
    slot.second += 1;
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(acc.size());
  for (const auto& [scale, slot] : acc)
    out.emplace_back(scale, slot.first / static_cast<double>(slot.second));
  return out;
}

MonotoneBracket interpolate_monotone(const ConvergenceReport& report,
                                     double T_query) {
  const auto means = report.mean_counts_by_scale();
  if (means.size() < 2)
    fail(ErrorCode::InvalidArgument,
         "report needs at least two scales to bracket");
  const auto norm_it = report.summary.find("normalizer");
  if (norm_it == report.summary.end())
    fail(ErrorCode::InvalidArgument, "report carries no normalizer");
  const double normalizer = norm_it->second;

  for (size_t i = 1; i < means.size(); ++i)
    if (means[i].second < means[i - 1].second)
      fail(ErrorCode::InvalidArgument,
           "counts are not monotone in the scale");

  if (!(T_query >= means.front().first) || !(T_query <= means.back().first))
    fail(ErrorCode::InvalidArgument,
         "query scale outside the report's covered range");

  size_t hi = 1;
  while (hi + 1 < means.size() && means[hi].first <= T_query) ++hi;
  const auto& [t_lo, c_lo] = means[hi - 1];
  const auto& [t_hi, c_hi] = means[hi];

  MonotoneBracket out;
  out.lower_count = T_query == t_hi ? c_hi : c_lo;
  out.upper_count = T_query == t_lo ? c_lo : c_hi;
  const double span = std::log(t_hi / t_lo);
  const double frac =
      span > 0 ? std::log(T_query / t_lo) / span : 0.0;
  out.interpolated_count = c_lo + (c_hi - c_lo) * frac;
  if (T_query == t_lo) out.interpolated_count = c_lo;
  if (T_query == t_hi) out.interpolated_count = c_hi;

  const double denom = normalizer * std::log(T_query);
  out.ratio_lower = out.lower_count / denom;
  out.ratio_upper = out.upper_count / denom;
  out.ratio = out.interpolated_count / denom;
  return out;
}

}  // namespace ergo
