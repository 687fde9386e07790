#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>

#include "svead/metrics.hpp"
#include "svead/scorer.hpp"
#include "svead/voronoi.hpp"

namespace svead::cli {

namespace {

constexpr std::uint64_t kSubsampleSalt = 0x53554253414d504cULL;
constexpr std::uint64_t kBenchSalt = 0x42454e4348444154ULL;

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 1;
}

Dataset load(const InputOptions& input) {
  return load_csv(input.path, input.csv);
}

void print_warnings(const Diagnostics& diag, std::ostream& err) {
  for (const auto& w : diag.warnings) err << "warning: " << w << '\n';
}

void warn_if_clamped(const Dataset& data, const DetectorConfig& config,
                     std::ostream& err) {
  if (config.effective_m(data.rows()) != config.m) {
    err << "warning: m clamped to " << data.rows() << '\n';
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

int cmd_score(const ScoreOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Dataset data = load(opts.input);
    Diagnostics diag;
    const auto start = std::chrono::steady_clock::now();
    const ScoreVector sv = fit_score(data, opts.config, &diag);
    const double elapsed = seconds_since(start);
    print_warnings(diag, err);
    if (opts.out == "-") {
      write_scores(out, sv, data);
    } else {
      write_scores(opts.out, sv, data);
    }
    err << "n=" << data.rows() << " d=" << data.cols()
        << " m=" << opts.config.effective_m(data.rows()) << " t=" << opts.config.t
        << " seconds=" << format_real(elapsed, 4) << '\n';
    return 0;
  });
}

int cmd_eval(const EvalOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Dataset data = load(opts.input);
    warn_if_clamped(data, opts.config, err);
    const EvalReport report = repeated_eval(data, opts.config, opts.runs);
    out << "metric,value,std\n";
    out << "auc_roc," << format_real(report.roc.mean) << ','
        << format_real(report.roc.std) << '\n';
    out << "auc_pr," << format_real(report.pr.mean) << ','
        << format_real(report.pr.std) << '\n';
    return 0;
  });
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.m_grid.empty() || opts.t_grid.empty()) {
      throw ConfigError("m-grid and t-grid must be non-empty");
    }
    const Dataset data = load(opts.input);
    out << "m,t,auc_roc_mean,auc_roc_std,auc_pr_mean,auc_pr_std\n";
    for (std::size_t m : opts.m_grid) {
      for (std::size_t t : opts.t_grid) {
        DetectorConfig config = opts.config;
        config.m = m;
        config.t = t;
        warn_if_clamped(data, config, err);
        const EvalReport r = repeated_eval(data, config, opts.runs);
        out << m << ',' << t << ',' << format_real(r.roc.mean) << ','
            << format_real(r.roc.std) << ',' << format_real(r.pr.mean) << ','
            << format_real(r.pr.std) << '\n';
      }
    }
    return 0;
  });
}

std::vector<ContaminationRow> contamination_study(const Dataset& dataset,
                                                  const DetectorConfig& config,
                                                  const std::vector<double>& rates,
                                                  std::size_t runs) {
  if (runs == 0) throw ConfigError("runs must be >= 1");
  const auto labels = dataset.labels();
  std::vector<std::size_t> normals;
  std::vector<std::size_t> anomalies;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] ? anomalies : normals).push_back(i);
  }
  if (normals.empty()) throw MetricError("dataset has no normal rows");

  std::vector<ContaminationRow> rows;
  for (double rate : rates) {
    ContaminationRow row;
    row.rate = rate;
    if (!(rate > 0.0 && rate < 1.0)) {
      row.error = "rate must lie strictly between 0 and 1";
      rows.push_back(row);
      continue;
    }
    const double wanted =
        rate * static_cast<double>(normals.size()) / (1.0 - rate);
    const auto target = static_cast<std::size_t>(std::llround(wanted));
    row.anomalies = target;
    if (target == 0) {
      row.error = "rate rounds to zero anomalies";
    } else if (target > anomalies.size()) {
      row.error = "needs " + std::to_string(target) + " anomalies but only " +
                  std::to_string(anomalies.size()) + " are available";
    }
    if (!row.error.empty()) {
      rows.push_back(row);
      continue;
    }
    std::vector<double> rocs;
    for (std::size_t r = 0; r < runs; ++r) {
      DetectorConfig run_config = config;
      run_config.seed = derive_run_seed(config.seed, r);
      double roc;
      if (target == anomalies.size()) {
        roc = auc_roc(fit_score(dataset, run_config).scores, labels);
      } else {
        const auto pick = sample_anchors(
            anomalies.size(), target,
            derive_partition_seed(run_config.seed ^ kSubsampleSalt, target));
        std::vector<std::size_t> keep = normals;
        for (auto p : pick) keep.push_back(anomalies[p]);
        std::sort(keep.begin(), keep.end());
        const Dataset sub = dataset.subset(keep);
        roc = auc_roc(fit_score(sub, run_config).scores, sub.labels());
      }
      rocs.push_back(roc);
    }
    const Summary s = summarize(rocs);
    row.ok = true;
    row.roc_mean = s.mean;
    row.roc_std = s.std;
    rows.push_back(row);
  }
  return rows;
}

int cmd_contaminate(const ContaminateOptions& opts, std::ostream& out,
                    std::ostream& err) {
  return guarded(err, [&] {
    const Dataset data = load(opts.input);
    warn_if_clamped(data, opts.config, err);
    const auto rows = contamination_study(data, opts.config, opts.rates, opts.runs);
    out << "rate,auc_roc_mean,auc_roc_std,anomalies,status\n";
    int status = 0;
    for (const auto& row : rows) {
      out << format_real(row.rate) << ',';
      if (row.ok) {
        out << format_real(row.roc_mean) << ',' << format_real(row.roc_std) << ','
            << row.anomalies << ",ok\n";
      } else {
        out << ",," << row.anomalies << ",error: " << row.error << '\n';
        err << "error: rate " << format_real(row.rate) << ": " << row.error << '\n';
        status = 1;
      }
    }
    return status;
  });
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ConfigError("slope needs at least two (x, y) pairs");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw ConfigError("log-log slope needs positive values");
    }
    sx += std::log(x[i]);
    sy += std::log(y[i]);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw ConfigError("slope needs two distinct x values");
  return sxy / sxx;
}

std::vector<BenchRow> run_bench(const BenchOptions& opts) {
  if (opts.n_list.empty() || opts.d_list.empty()) {
    throw ConfigError("n-list and d-list must be non-empty");
  }
  std::vector<BenchRow> rows;
  std::uint64_t case_index = 0;
  for (std::size_t d : opts.d_list) {
    for (std::size_t n : opts.n_list) {
      if (n == 0 || d == 0) throw ConfigError("benchmark sizes must be positive");
      const Dataset data = gen_uniform(
          derive_partition_seed(opts.config.seed ^ kBenchSalt, case_index++), n, d);
      const auto start = std::chrono::steady_clock::now();
      const ScoreVector sv = fit_score(data, opts.config);
      rows.push_back({n, d, seconds_since(start)});
      if (sv.size() != n) throw std::logic_error("score vector size mismatch");
    }
  }
  return rows;
}

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto rows = run_bench(opts);
    out << "n,d,seconds\n";
    std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>> by_d;
    for (const auto& row : rows) {
      out << row.n << ',' << row.d << ',' << format_real(row.seconds, 6) << '\n';
      by_d[row.d].first.push_back(static_cast<double>(row.n));
      by_d[row.d].second.push_back(row.seconds);
    }
    for (const auto& [d, xy] : by_d) {
      const auto& xs = xy.first;
      if (std::adjacent_find(xs.begin(), xs.end(), std::not_equal_to<>()) ==
          xs.end()) {
        continue;  // a single distinct n: no slope
      }
      out << "# d=" << d << " loglog_slope=" << format_real(loglog_slope(xs, xy.second), 4)
          << '\n';
    }
    return 0;
  });
}

int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Dataset data = [&] {
      if (opts.kind == "s1") return gen_global_s1(opts.seed, opts.sizes);
      if (opts.kind == "s2") return gen_local_s2(opts.seed, opts.sizes);
      if (opts.kind == "s3") return gen_dependency_s3(opts.seed, opts.sizes);
      if (opts.kind == "two-density") {
        return gen_two_density(opts.seed, opts.n_dense, opts.n_sparse,
                               opts.scale_ratio);
      }
      if (opts.kind == "uniform") return gen_uniform(opts.seed, opts.n, opts.d);
      throw ConfigError("unknown synthetic kind '" + opts.kind +
                        "' (expected s1, s2, s3, two-density or uniform)");
    }();
    if (opts.out == "-") {
      write_dataset(out, data);
    } else {
      write_dataset(opts.out, data);
    }
    err << "wrote " << data.rows() << " rows x " << data.cols() << " features"
        << (data.has_labels() ? " + label" : "") << '\n';
    return 0;
  });
}

}  // namespace svead::cli
