#ifndef ANDI_METRICS_HPP
#define ANDI_METRICS_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "andi/errors.hpp"
#include "andi/trajectory.hpp"

namespace andi::metrics {

inline double mae(const std::vector<double>& preds, const std::vector<double>& gts) {
    if (preds.size() != gts.size())
        throw shape_error("mae: size mismatch " + std::to_string(preds.size()) + " vs " +
                          std::to_string(gts.size()));
    if (preds.empty()) throw shape_error("mae: empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) acc += std::fabs(preds[i] - gts[i]);
    return acc / static_cast<double>(preds.size());
}

// Fraction of predictions inside [gt - dalpha/2, gt + dalpha/2], both ends
// inclusive.
inline double f1_regression(const std::vector<double>& preds, const std::vector<double>& gts,
                            double dalpha = 0.1) {
    if (preds.size() != gts.size() || preds.empty())
        throw shape_error("f1_regression: bad input sizes");
    if (!(dalpha > 0.0)) throw domain_error("f1_regression: dalpha must be positive");
    std::int64_t tp = 0;
    // closed interval; the slack keeps exact boundary hits inclusive under
    // floating-point rounding
    for (std::size_t i = 0; i < preds.size(); ++i)
        if (std::fabs(preds[i] - gts[i]) <= dalpha / 2.0 + 1e-12) ++tp;
    return static_cast<double>(tp) / static_cast<double>(preds.size());
}

using ConfusionMatrix = std::array<std::array<std::int64_t, 5>, 5>;

// Entry (i, j) counts ground-truth class i predicted as class j.
inline ConfusionMatrix confusion_matrix(const std::vector<int>& pred_classes,
                                        const std::vector<int>& gt_classes) {
    if (pred_classes.size() != gt_classes.size())
        throw shape_error("confusion_matrix: size mismatch");
    ConfusionMatrix cm{};
    for (std::size_t i = 0; i < pred_classes.size(); ++i) {
        int p = pred_classes[i], g = gt_classes[i];
        if (p < 0 || p >= 5 || g < 0 || g >= 5)
            throw domain_error("confusion_matrix: class code outside [0,5)");
        cm[static_cast<std::size_t>(g)][static_cast<std::size_t>(p)]++;
    }
    return cm;
}

struct F1Scores {
    std::array<double, 5> per_class{};
    double micro = 0.0;
};

// Per-class one-vs-rest f1 = 2TP/(2TP+FP+FN), 0 on empty denominators;
// micro f1 = trace/N (equals accuracy for single-label classification).
inline F1Scores f1_classification(const ConfusionMatrix& cm) {
    std::int64_t total = 0, trace = 0;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            if (cm[i][j] < 0) throw domain_error("f1_classification: negative count");
            total += cm[i][j];
            if (i == j) trace += cm[i][j];
        }
    if (total == 0) throw domain_error("f1_classification: all-zero confusion matrix");

    F1Scores out;
    out.micro = static_cast<double>(trace) / static_cast<double>(total);
    for (std::size_t c = 0; c < 5; ++c) {
        std::int64_t tp = cm[c][c], fn = 0, fp = 0;
        for (std::size_t j = 0; j < 5; ++j) {
            if (j != c) {
                fn += cm[c][j];
                fp += cm[j][c];
            }
        }
        std::int64_t denom = 2 * tp + fp + fn;
        out.per_class[c] = denom == 0 ? 0.0
                                      : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
    }
    return out;
}

// Least-squares slope of log(y) vs log(x).
inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw shape_error("loglog_slope: bad input");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0)) throw domain_error("loglog_slope: nonpositive x");
        if (!(ys[i] > 0.0)) throw degenerate_error("loglog_slope: nonpositive y");
        double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double n = static_cast<double>(xs.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Anomalous-exponent estimate from one path's time-averaged MSD: slope of
// log TA-MSD vs log lag over lags 1..min(10, L/4). Classical baseline and the
// independent sanity oracle for the generators.
inline double tamsd_alpha(const std::vector<double>& positions) {
    const int length = static_cast<int>(positions.size());
    if (length < 12) throw size_error("tamsd_alpha: need L >= 12, got " + std::to_string(length));
    int max_lag = std::min(10, length / 4);
    std::vector<double> lags, msds;
    for (int lag = 1; lag <= max_lag; ++lag) {
        double acc = 0.0;
        for (int i = 0; i + lag < length; ++i) {
            double d = positions[static_cast<std::size_t>(i + lag)] -
                       positions[static_cast<std::size_t>(i)];
            acc += d * d;
        }
        double msd = acc / static_cast<double>(length - lag);
        if (msd == 0.0) throw degenerate_error("tamsd_alpha: zero TA-MSD at lag " +
                                               std::to_string(lag));
        lags.push_back(lag);
        msds.push_back(msd);
    }
    return loglog_slope(lags, msds);
}

inline double tamsd_alpha(const sim::Trajectory& traj) { return tamsd_alpha(traj.positions); }

// Ensemble MSD over a batch of equal-length origin-anchored paths.
inline std::vector<double> ensemble_msd(const std::vector<std::vector<double>>& paths) {
    if (paths.empty()) throw shape_error("ensemble_msd: no paths");
    std::size_t length = paths[0].size();
    std::vector<double> msd(length, 0.0);
    for (const auto& p : paths) {
        if (p.size() != length) throw shape_error("ensemble_msd: ragged path lengths");
        for (std::size_t t = 0; t < length; ++t) msd[t] += p[t] * p[t];
    }
    for (auto& v : msd) v /= static_cast<double>(paths.size());
    return msd;
}

// Log-log slope of the ensemble MSD over t in [t_lo, t_hi].
inline double ensemble_msd_slope(const std::vector<std::vector<double>>& paths, int t_lo = 10,
                                 int t_hi = 100) {
    auto msd = ensemble_msd(paths);
    if (static_cast<int>(msd.size()) <= t_hi) throw shape_error("ensemble_msd_slope: paths too short");
    std::vector<double> ts, ys;
    for (int t = t_lo; t <= t_hi; ++t) {
        ts.push_back(t);
        ys.push_back(msd[static_cast<std::size_t>(t)]);
    }
    return loglog_slope(ts, ys);
}

// One aggregate row of an evaluation report. Empty string = "all".
struct SliceRow {
    std::string model;
    std::string length_bin;
    std::string alpha_bin;
    std::string snr;
    std::string metric;
    double value = 0.0;
    std::int64_t n = 0;
};

struct EvalReport {
    std::string task;
    std::int64_t total_n = 0;
    double overall_mae = 0.0;   // regression
    double overall_f1 = 0.0;    // both tasks (interval f1 / micro f1)
    ConfusionMatrix confusion{};
    std::array<double, 5> per_class_f1{};
    std::vector<SliceRow> slices;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["task"] = task;
        j["n"] = total_n;
        if (task == "regression") j["mae"] = overall_mae;
        j["f1"] = overall_f1;
        if (task == "classification") {
            for (const auto& row : confusion) j["confusion_matrix"].push_back(row);
            for (int c = 0; c < 5; ++c)
                j["per_class_f1"][sim::model_name(static_cast<sim::ModelClass>(c))] =
                    per_class_f1[static_cast<std::size_t>(c)];
        }
        for (const auto& s : slices)
            j["slices"].push_back({{"model", s.model},
                                   {"length_bin", s.length_bin},
                                   {"alpha_bin", s.alpha_bin},
                                   {"snr", s.snr},
                                   {"metric", s.metric},
                                   {"value", s.value},
                                   {"n", s.n}});
        return j;
    }

    void write_csv(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw parse_error("EvalReport: cannot open " + path);
        out << "model,length_bin,alpha_bin,snr,metric,value,n\n";
        for (const auto& s : slices)
            out << s.model << ',' << s.length_bin << ',' << s.alpha_bin << ',' << s.snr << ','
                << s.metric << ',' << s.value << ',' << s.n << '\n';
    }
};

}  // namespace andi::metrics

#endif
