#include "ergocount/harness.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "ergocount/counting.hpp"
#include "ergocount/diophantine.hpp"
#include "ergocount/origami.hpp"
#include "ergocount/parallel.hpp"
#include "ergocount/sampling.hpp"
#include "ergocount/siegel.hpp"

namespace ergo {

namespace {

struct SampleOutcome {
  std::vector<ReportRow> rows;
  std::optional<Error> error;
};

// Per-sample parallel sweep with deterministic assembly: rows are
// gathered in sample order, and if any sample failed the completed rows
// are attached to the raised error.
std::vector<ReportRow> sweep_samples(
    const Scenario& scenario, ConvergenceReport& report, int64_t samples,
    const std::function<std::vector<ReportRow>(int64_t, SeededStream&)>&
        run_one) {
  std::vector<SampleOutcome> outcomes(samples);
  parallel_for(
      samples,
      [&](int64_t i) {
        SeededStream stream(scenario.seed, static_cast<uint64_t>(i));
        try {
          outcomes[i].rows = run_one(i, stream);
        } catch (const Error& e) {
          outcomes[i].error = e;
        }
      },
      scenario.threads);

  std::vector<ReportRow> rows;
  for (int64_t i = 0; i < samples; ++i)
    if (!outcomes[i].error)
      rows.insert(rows.end(), outcomes[i].rows.begin(),
                  outcomes[i].rows.end());

  for (int64_t i = 0; i < samples; ++i) {
    if (outcomes[i].error) {
      if (outcomes[i].error->code() == ErrorCode::BudgetExceeded) {
        report.rows = rows;
        throw BudgetExceededWithPartial(outcomes[i].error->what(), report);
      }
      throw *outcomes[i].error;
    }
  }
  return rows;
}

double least_squares_slope(const std::vector<std::pair<double, double>>& xy) {
  const double count = static_cast<double>(xy.size());
  double x_mean = 0.0, y_mean = 0.0;
  for (const auto& [x, y] : xy) {
    x_mean += x;
    y_mean += y;
  }
  x_mean /= count;
  y_mean /= count;
  double num = 0.0, den = 0.0;
  for (const auto& [x, y] : xy) {
    num += (x - x_mean) * (y - y_mean);
    den += (x - x_mean) * (x - x_mean);
  }
  return num / den;
}

// Shared summary block: final mean ratio, regression slope of the mean
// count against log(scale) over the top half of the scale grid, and the
// mean dyadic block increment.
void summarize(ConvergenceReport& report, double normalizer) {
  report.summary["normalizer"] = normalizer;

  const auto means = report.mean_counts_by_scale();
  if (means.empty()) return;

  const auto& [final_scale, final_count] = means.back();
  report.summary["final_ratio"] =
      final_count / (normalizer * std::log(final_scale));

  if (means.size() >= 3) {
    std::vector<std::pair<double, double>> top;
    for (size_t i = means.size() / 2; i < means.size(); ++i)
      top.emplace_back(std::log(means[i].first), means[i].second);
    if (top.size() >= 2)
      report.summary["slope"] = least_squares_slope(top);
  }

  double increments = means.front().second;
  int64_t blocks = 1;
  for (size_t i = 1; i < means.size(); ++i) {
    increments += means[i].second - means[i - 1].second;
    ++blocks;
  }
  report.summary["per_block_mean"] = increments / static_cast<double>(blocks);
  report.summary["per_block_expected"] = normalizer * std::log(2.0);
}

std::vector<ReportRow> rows_from_counts(int64_t sample,
                                        const std::vector<int64_t>& counts,
                                        const std::vector<double>& scales,
                                        double normalizer) {
  std::vector<ReportRow> rows;
  rows.reserve(counts.size());
  for (size_t j = 0; j < counts.size(); ++j) {
    const double expected = normalizer * std::log(scales[j]);
    const double count = static_cast<double>(counts[j]);
    rows.push_back(ReportRow{sample, scales[j], count, expected,
                             expected > 0 ? count / expected : 0.0});
  }
  return rows;
}

ConvergenceReport run_forms(const Scenario& scenario, bool affine) {
  ConvergenceReport report;
  report.experiment =
      experiment_name(affine ? Experiment::AffineForms : Experiment::Forms);
  report.seed = scenario.seed;
  report.m = scenario.m;
  report.n = scenario.n;
  report.b = scenario.b;

  const double normalizer = std::pow(scenario.b, scenario.m) *
                            ball_volume(scenario.m) *
                            sphere_area(scenario.n);
  std::vector<double> scales(scenario.log2T);
  for (int j = 0; j < scenario.log2T; ++j) scales[j] = std::ldexp(1.0, j + 1);

  report.rows = sweep_samples(
      scenario, report, scenario.samples,
      [&](int64_t i, SeededStream& stream) {
        const FormSystem system =
            sample_form(scenario.m, scenario.n, affine, stream, scenario.b);
        return rows_from_counts(
            i, count_forms_dyadic(system, scenario.log2T), scales, normalizer);
      });
  summarize(report, normalizer);
  return report;
}

ConvergenceReport run_toral(const Scenario& scenario) {
  ConvergenceReport report;
  report.experiment = experiment_name(Experiment::Toral);
  report.seed = scenario.seed;
  report.m = scenario.m;
  report.n = scenario.m;  // the torus has a single block
  report.b = scenario.b;

  const double normalizer =
      std::pow(scenario.b, scenario.m) * ball_volume(scenario.m);
  const bool random_target = scenario.target == "random";

  std::vector<int64_t> grid;
  for (int64_t s = 2; s <= scenario.N; s *= 2) grid.push_back(s);
  if (grid.empty() || grid.back() != scenario.N) grid.push_back(scenario.N);
  std::vector<double> scales(grid.begin(), grid.end());

  report.rows = sweep_samples(
      scenario, report, scenario.samples,
      [&](int64_t i, SeededStream& stream) {
        Eigen::VectorXd alpha(scenario.m);
        for (int k = 0; k < scenario.m; ++k) alpha[k] = stream.uniform();
        Eigen::VectorXd target = Eigen::VectorXd::Zero(scenario.m);
        if (random_target)
          for (int k = 0; k < scenario.m; ++k) target[k] = stream.uniform();
        const ToralSystem system(std::move(alpha), std::move(target),
                                 scenario.b);
        return rows_from_counts(i, count_toral_at(system, grid), scales,
                                normalizer);
      });
  summarize(report, normalizer);
  return report;
}

ConvergenceReport run_lattice(const Scenario& scenario, bool affine) {
  ConvergenceReport report;
  report.experiment = experiment_name(affine ? Experiment::AffineLattice
                                             : Experiment::Lattice);
  report.seed = scenario.seed;
  report.m = scenario.m;
  report.n = scenario.n;
  report.b = scenario.b;

  double normalizer =
      scenario.b * ball_volume(scenario.m) * sphere_area(scenario.n);
  if (scenario.primitive) normalizer /= zeta(2);

  std::vector<double> scales(scenario.log2T);
  for (int j = 0; j < scenario.log2T; ++j) scales[j] = std::ldexp(1.0, j + 1);

  report.rows = sweep_samples(
      scenario, report, scenario.samples,
      [&](int64_t i, SeededStream& stream) {
        UnimodularBasis basis = sample_haar_x2(stream);
        AffineLattice lattice = affine
                                    ? sample_affine_offset(basis, stream)
                                    : AffineLattice(std::move(basis));
        // Cumulative counts over [1, 2^(j+1)) by flowing block onto block.
        const ThinningRegion base(scenario.b, 1, 1, 1.0, 2.0);
        AffineLattice flowed = reduce_lattice(lattice);
        std::vector<int64_t> counts(scenario.log2T);
        int64_t running = 0;
        for (int j = 0; j < scenario.log2T; ++j) {
          running += count_points(CountRequest{flowed, base,
                                               scenario.primitive,
                                               CountStrategy::Direct,
                                               kDefaultCandidateBudget});
          counts[j] = running;
          if (j + 1 < scenario.log2T)
            flowed = reduce_lattice(apply_flow(flowed, std::log(2.0)));
        }
        return rows_from_counts(i, counts, scales, normalizer);
      });
  summarize(report, normalizer);
  return report;
}

ConvergenceReport run_siegel(const Scenario& scenario) {
  ConvergenceReport report;
  report.experiment = experiment_name(Experiment::Siegel);
  report.seed = scenario.seed;
  report.m = 1;
  report.n = 1;
  report.b = scenario.b;

  const double y_hi = std::ldexp(1.0, scenario.log2T);
  const ThinningRegion region(scenario.b, 1, 1, 1.0, y_hi);
  const double volume = region.volume();

  const struct {
    SiegelVariant variant;
    const char* name;
    double target_scale;  // multiplies the region volume
  } variants[] = {
      {SiegelVariant::Plain, "plain", 1.0},
      {SiegelVariant::Affine, "affine", 1.0},
      {SiegelVariant::Primitive, "primitive", 0.0},  // 1/zeta(2), see below
  };

  int64_t variant_index = 0;
  for (const auto& spec : variants) {
    const double expected =
        spec.target_scale > 0 ? volume * spec.target_scale : volume / zeta(2);
    const MCEstimate estimate = siegel_average(
        region, scenario.samples, spec.variant, scenario.seed,
        static_cast<uint64_t>(variant_index) *
            static_cast<uint64_t>(scenario.samples),
        scenario.threads);
    report.rows.push_back(ReportRow{variant_index, y_hi, estimate.mean,
                                    expected, estimate.mean / expected});
    report.summary[std::string("stderr_") + spec.name] = estimate.stderr_;
    ++variant_index;
  }
  report.summary["volume"] = volume;
  report.summary["samples"] = static_cast<double>(scenario.samples);
  report.summary["normalizer"] =
      scenario.b * ball_volume(1) * sphere_area(1);
  return report;
}

ConvergenceReport run_origami(const Scenario& scenario) {
  ConvergenceReport report;
  report.experiment = experiment_name(Experiment::Origami);
  report.seed = scenario.seed;
  report.m = 1;
  report.n = 1;
  report.b = scenario.b;

  const Origami surface = Origami::load_file(scenario.origami_file);
  const bool random_theta = scenario.theta == "random";
  const double T_final = std::ldexp(1.0, scenario.log2T);

  struct ThetaCounts {
    std::vector<int64_t> counts;
  };
  std::vector<ThetaCounts> outcomes(scenario.samples);
  parallel_for(
      scenario.samples,
      [&](int64_t i) {
        SeededStream stream(scenario.seed, static_cast<uint64_t>(i));
        const double theta =
            random_theta ? 2.0 * M_PI * stream.uniform() : 0.0;
        auto& counts = outcomes[i].counts;
        counts.resize(scenario.log2T);
        for (int j = 0; j < scenario.log2T; ++j)
          counts[j] = surface
                          .count_saddle_connections(
                              scenario.b, std::ldexp(1.0, j + 1), theta,
                              scenario.distinct_holonomies)
                          .count;
      },
      scenario.threads);

  // Empirical growth constant from the final scale; the expected column
  // is 2 b C_hat log(scale).
  double c_hat = 0.0;
  for (const auto& outcome : outcomes)
    c_hat += static_cast<double>(outcome.counts.back()) /
             (2.0 * scenario.b * std::log(T_final));
  c_hat /= static_cast<double>(scenario.samples);

  const double normalizer = 2.0 * scenario.b * c_hat;
  for (int64_t i = 0; i < scenario.samples; ++i) {
    for (int j = 0; j < scenario.log2T; ++j) {
      const double scale = std::ldexp(1.0, j + 1);
      const double expected = normalizer * std::log(scale);
      const double count = static_cast<double>(outcomes[i].counts[j]);
      report.rows.push_back(ReportRow{i, scale, count, expected,
                                      expected > 0 ? count / expected : 0.0});
    }
  }
  summarize(report, normalizer);
  report.summary["c_hat"] = c_hat;
  return report;
}

ConvergenceReport run_volume_check(const Scenario& scenario) {
  ConvergenceReport report;
  report.experiment = experiment_name(Experiment::VolumeCheck);
  report.seed = scenario.seed;
  report.m = 0;
  report.n = 0;
  report.b = 0.0;

  const struct {
    double b;
    int m, n;
    double y_lo, y_hi, theta;
  } combos[] = {
      {1.0, 1, 1, 1.0, 2.0, 0.0},
      {1.0, 1, 1, 1.0, 4.0, 0.0},
      {0.5, 1, 2, 1.0, 4.0, 0.0},
      {2.0, 2, 1, 1.0, 8.0, 0.0},
      {0.7, 1, 1, 1.0, 2.0, 0.7},  // rotated shell
      {1.5, 2, 2, 1.0, 2.0, 0.0},
  };
  constexpr int kChunks = 64;

  double max_rel_error = 0.0;
  int64_t combo_index = 0;
  for (const auto& combo : combos) {
    const ThinningRegion region(combo.b, combo.m, combo.n, combo.y_lo,
                                combo.y_hi, combo.theta);
    const Eigen::VectorXd w = region.bounding_box_half_widths();
    double box_volume = 1.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) box_volume *= 2.0 * w[i];

    const int64_t total = scenario.samples;
    const int64_t per_chunk = (total + kChunks - 1) / kChunks;
    std::vector<int64_t> hits(kChunks, 0);
    std::vector<int64_t> drawn(kChunks, 0);
    parallel_for(
        kChunks,
        [&](int64_t chunk) {
          SeededStream stream(scenario.seed,
                              static_cast<uint64_t>(combo_index) * kChunks +
                                  static_cast<uint64_t>(chunk));
          const int64_t begin = chunk * per_chunk;
          const int64_t end = std::min(begin + per_chunk, total);
          Eigen::VectorXd point(w.size());
          int64_t local_hits = 0;
          for (int64_t s = begin; s < end; ++s) {
            for (Eigen::Index i = 0; i < w.size(); ++i)
              point[i] = stream.uniform(-w[i], w[i]);
            if (region.contains(SplitVector(point, combo.m, combo.n)))
              ++local_hits;
          }
          hits[chunk] = local_hits;
          drawn[chunk] = end > begin ? end - begin : 0;
        },
        scenario.threads);

    int64_t hit_total = 0, drawn_total = 0;
    for (int c = 0; c < kChunks; ++c) {
      hit_total += hits[c];
      drawn_total += drawn[c];
    }
    const double estimate = box_volume * static_cast<double>(hit_total) /
                            static_cast<double>(drawn_total);
    const double expected = region.volume();
    max_rel_error =
        std::max(max_rel_error, std::abs(estimate - expected) / expected);
    report.rows.push_back(
        ReportRow{combo_index, static_cast<double>(drawn_total), estimate,
                  expected, estimate / expected});
    ++combo_index;
  }
  report.summary["max_rel_error"] = max_rel_error;
  return report;
}

}  // namespace

ConvergenceReport run_scenario(const Scenario& scenario) {
  scenario.validate();
  switch (scenario.experiment) {
    case Experiment::Forms: return run_forms(scenario, false);
    case Experiment::AffineForms: return run_forms(scenario, true);
    case Experiment::Toral: return run_toral(scenario);
    case Experiment::Lattice: return run_lattice(scenario, false);
    case Experiment::AffineLattice: return run_lattice(scenario, true);
    case Experiment::Siegel: return run_siegel(scenario);
    case Experiment::Origami: return run_origami(scenario);
    case Experiment::VolumeCheck: return run_volume_check(scenario);
  }
  fail(ErrorCode::Internal, "bad experiment value");
}

}  // namespace ergo
