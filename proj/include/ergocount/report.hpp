#ifndef ERGOCOUNT_REPORT_HPP
#define ERGOCOUNT_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ergo {

// One measurement: the count at a scale for one sample, with the expected
// value normalizer * log(scale) recomputed from first-principles
// constants at run time.
struct ReportRow {
  int64_t sample = 0;
  double scale = 0.0;
  double count = 0.0;
  double expected = 0.0;
  double ratio = 0.0;
};

struct ConvergenceReport {
  std::string experiment;
  uint64_t seed = 0;
  int m = 1;
  int n = 1;
  double b = 1.0;
  std::vector<ReportRow> rows;  // ordered by (sample, scale)
  // final_ratio, slope, per_block_mean, normalizer, ... keyed summaries;
  // the ordered map keeps rendering deterministic.
  std::map<std::string, double> summary;

  // CSV schema: header
  //   experiment,seed,sample,m,n,b,scale,count,expected,ratio
  // with floats printed to 12 significant digits, one row per
  // (sample, scale).
  std::string render_csv() const;

  // Same content as the CSV plus the summary object.
  std::string render_json() const;

  std::string render(const std::string& format) const;

  // Mean count over samples at each distinct scale, ascending.
  std::vector<std::pair<double, double>> mean_counts_by_scale() const;
};

// Bracketing of the counting function between recorded dyadic scales:
// counts are nondecreasing in the scale, so count(2^j) <= count(T) <=
// count(2^(j+1)) for 2^j <= T < 2^(j+1).  Ratios are against
// normalizer * log(T_query), and the interpolated count is linear in
// log T between the brackets.
struct MonotoneBracket {
  double lower_count = 0.0;
  double upper_count = 0.0;
  double interpolated_count = 0.0;
  double ratio_lower = 0.0;
  double ratio_upper = 0.0;
  double ratio = 0.0;
};

MonotoneBracket interpolate_monotone(const ConvergenceReport& report,
                                     double T_query);

}  // namespace ergo

#endif
