#ifndef ANDI_DATASET_HPP
#define ANDI_DATASET_HPP

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "andi/errors.hpp"
#include "andi/generators.hpp"
#include "andi/rng.hpp"
#include "andi/signal.hpp"

namespace andi::data {

using sim::ModelClass;

// Declarative recipe for a labeled dataset. snr = 0 means "no noise".
struct SamplingPlan {
    std::vector<ModelClass> models;
    std::vector<double> alpha_grid;
    std::vector<int> lengths;
    std::vector<double> snrs;
    std::int64_t count = 0;
    std::uint64_t seed = 0;
};

struct LabeledTrajectory {
    std::vector<double> positions;
    ModelClass model = ModelClass::ATTM;
    double alpha = 0.0;
    double snr = 0.0;

    int length() const { return static_cast<int>(positions.size()); }
};

struct Dataset {
    std::vector<LabeledTrajectory> items;
    SamplingPlan plan;

    std::int64_t size() const { return static_cast<std::int64_t>(items.size()); }
};

struct EpochSplit {
    std::vector<std::int64_t> train_idx;
    std::vector<std::int64_t> val_idx;
};

struct PlanConfig {
    std::vector<ModelClass> models;   // empty -> all five
    std::vector<double> alphas;       // empty -> 0.05 step 0.05 up to 1.95
    std::vector<int> lengths;         // empty -> 10 step 10 up to 1000
    std::vector<double> snrs;         // empty -> {1, 2}
    std::int64_t count = 0;
    std::uint64_t seed = 0;
};

inline std::vector<double> default_alpha_grid() {
    std::vector<double> g;
    for (int i = 1; i <= 39; ++i) g.push_back(static_cast<double>(i * 5) / 100.0);
    return g;
}

inline std::vector<int> default_lengths() {
    std::vector<int> l;
    for (int v = 10; v <= 1000; v += 10) l.push_back(v);
    return l;
}

// Valid (model, alpha) combinations after per-model range filtering.
inline std::int64_t count_valid_pairs(const SamplingPlan& plan) {
    std::int64_t n = 0;
    for (auto m : plan.models) {
        auto range = sim::alpha_range(m);
        for (double a : plan.alpha_grid)
            if (range.contains(a)) ++n;
    }
    return n;
}

inline SamplingPlan build_plan(const PlanConfig& config) {
    SamplingPlan plan;
    plan.models = config.models;
    if (plan.models.empty())
        for (int c = 0; c < sim::kNumModels; ++c) plan.models.push_back(sim::model_from_code(c));
    plan.alpha_grid = config.alphas.empty() ? default_alpha_grid() : config.alphas;
    plan.lengths = config.lengths.empty() ? default_lengths() : config.lengths;
    plan.snrs = config.snrs.empty() ? std::vector<double>{1.0, 2.0} : config.snrs;
    plan.count = config.count;
    plan.seed = config.seed;

    if (plan.count < 1) throw config_error("plan: count must be >= 1");
    for (double a : plan.alpha_grid)
        if (!(a > 0.0 && a <= 1.95 + 1e-12))
            throw config_error("plan: alpha " + std::to_string(a) + " outside (0, 1.95]");
    for (int l : plan.lengths)
        if (l < 10 || l > 1000)
            throw config_error("plan: length " + std::to_string(l) + " outside [10, 1000]");
    for (double s : plan.snrs)
        if (s < 0.0) throw config_error("plan: snr " + std::to_string(s) + " must be >= 0");
    if (plan.models.empty()) throw config_error("plan: models axis is empty");
    if (plan.alpha_grid.empty()) throw config_error("plan: alpha axis is empty");
    if (plan.lengths.empty()) throw config_error("plan: lengths axis is empty");
    if (plan.snrs.empty()) throw config_error("plan: snrs axis is empty");
    if (count_valid_pairs(plan) == 0)
        throw config_error("plan: no valid (model, alpha) combination after range filtering");
    return plan;
}

namespace detail {

// Item i is a pure function of (plan.seed, i): uniform draw over the valid
// (model, alpha, length, snr) cross product, then generation plus noise.
inline LabeledTrajectory make_item(const SamplingPlan& plan,
                                   const std::vector<std::pair<ModelClass, double>>& pairs,
                                   std::int64_t i) {
    std::uint64_t item_seed = Rng::mix64(plan.seed, static_cast<std::uint64_t>(i));
    Rng pick(item_seed, 0);
    const auto& [model, alpha] = pairs[pick.below(pairs.size())];
    int length = plan.lengths[pick.below(plan.lengths.size())];
    double snr = plan.snrs[pick.below(plan.snrs.size())];

    sim::Trajectory traj = sim::generate(model, alpha, length, Rng::mix64(item_seed, 1));

    LabeledTrajectory item;
    item.model = model;
    item.alpha = alpha;
    item.snr = snr;
    if (snr > 0.0 && sig::displacement_std(traj) > 0.0)
        item.positions = sig::add_noise(traj, snr, Rng::mix64(item_seed, 2)).positions;
    else
        item.positions = std::move(traj.positions);
    return item;
}

}  // namespace detail

// Materialize a plan. Output is independent of the worker count because each
// item derives its own random stream from (plan.seed, i).
inline Dataset generate_dataset(const SamplingPlan& plan, int workers = 1) {
    std::vector<std::pair<ModelClass, double>> pairs;
    for (auto m : plan.models) {
        auto range = sim::alpha_range(m);
        for (double a : plan.alpha_grid)
            if (range.contains(a)) pairs.emplace_back(m, a);
    }
    if (pairs.empty()) throw config_error("plan: no valid (model, alpha) combination");

    Dataset ds;
    ds.plan = plan;
    ds.items.resize(static_cast<std::size_t>(plan.count));

    workers = std::max(1, workers);
    if (workers == 1) {
        for (std::int64_t i = 0; i < plan.count; ++i)
            ds.items[static_cast<std::size_t>(i)] = detail::make_item(plan, pairs, i);
    } else {
        std::vector<std::thread> pool;
        std::int64_t chunk = (plan.count + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            std::int64_t lo = w * chunk, hi = std::min<std::int64_t>(plan.count, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (std::int64_t i = lo; i < hi; ++i)
                    ds.items[static_cast<std::size_t>(i)] = detail::make_item(plan, pairs, i);
            });
        }
        for (auto& t : pool) t.join();
    }
    return ds;
}

inline nlohmann::json plan_to_json(const SamplingPlan& plan) {
    nlohmann::json j;
    for (auto m : plan.models) j["models"].push_back(sim::model_name(m));
    j["alpha_grid"] = plan.alpha_grid;
    j["lengths"] = plan.lengths;
    j["snrs"] = plan.snrs;
    j["count"] = plan.count;
    j["seed"] = plan.seed;
    return j;
}

inline SamplingPlan plan_from_json(const nlohmann::json& j) {
    PlanConfig cfg;
    for (const auto& name : j.at("models")) cfg.models.push_back(sim::model_from_name(name));
    cfg.alphas = j.at("alpha_grid").get<std::vector<double>>();
    cfg.lengths = j.at("lengths").get<std::vector<int>>();
    cfg.snrs = j.at("snrs").get<std::vector<double>>();
    cfg.count = j.at("count").get<std::int64_t>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    return build_plan(cfg);
}

// One trajectory per line: model_code;alpha;snr;L;x_1;...;x_L
// Positions carry 17 significant digits so doubles round-trip exactly.
inline void write_dataset(const Dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("write_dataset: cannot open " + path);
    out << "# model_code;alpha;snr;L;x_1;...;x_L\n";
    char buf[40];
    for (const auto& item : ds.items) {
        out << static_cast<int>(item.model) << ';';
        std::snprintf(buf, sizeof buf, "%.17g", item.alpha);
        out << buf << ';';
        std::snprintf(buf, sizeof buf, "%.17g", item.snr);
        out << buf << ';' << item.length();
        for (double x : item.positions) {
            std::snprintf(buf, sizeof buf, "%.17g", x);
            out << ';' << buf;
        }
        out << '\n';
    }
    if (!out) throw parse_error("write_dataset: write failed for " + path);
}

inline Dataset read_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("read_dataset: cannot open " + path);
    Dataset ds;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        LabeledTrajectory item;
        const char* p = line.c_str();
        char* end = nullptr;
        auto fail = [&](const std::string& what) {
            throw parse_error("read_dataset: " + what + " at line " + std::to_string(lineno));
        };
        long code = std::strtol(p, &end, 10);
        if (end == p || *end != ';') fail("bad model code");
        item.model = sim::model_from_code(static_cast<int>(code));
        p = end + 1;
        item.alpha = std::strtod(p, &end);
        if (end == p || *end != ';') fail("bad alpha");
        p = end + 1;
        item.snr = std::strtod(p, &end);
        if (end == p || *end != ';') fail("bad snr");
        p = end + 1;
        long length = std::strtol(p, &end, 10);
        if (end == p || length < 2) fail("bad length");
        p = end;
        item.positions.reserve(static_cast<std::size_t>(length));
        while (*p == ';') {
            ++p;
            double x = std::strtod(p, &end);
            if (end == p) fail("bad position value");
            item.positions.push_back(x);
            p = end;
        }
        if (*p != '\0' && *p != '\r') fail("trailing garbage");
        if (static_cast<long>(item.positions.size()) != length)
            throw integrity_error("read_dataset: declared length " + std::to_string(length) +
                                  " but found " + std::to_string(item.positions.size()) +
                                  " positions at line " + std::to_string(lineno));
        if (!sim::alpha_range(item.model).contains(item.alpha))
            throw integrity_error("read_dataset: alpha " + std::to_string(item.alpha) +
                                  " invalid for model " + sim::model_name(item.model) +
                                  " at line " + std::to_string(lineno));
        ds.items.push_back(std::move(item));
    }
    return ds;
}

// Fresh 90/10 split keyed by (master_seed, epoch).
inline EpochSplit split_epoch(std::int64_t n, int epoch, std::uint64_t master_seed) {
    if (n < 10) throw size_error("split_epoch: need at least 10 items, got " + std::to_string(n));
    std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng(master_seed, 0x73706c6974ull + static_cast<std::uint64_t>(epoch));
    for (std::int64_t i = n - 1; i > 0; --i)
        std::swap(idx[static_cast<std::size_t>(i)],
                  idx[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    auto n_val = static_cast<std::int64_t>(std::llround(0.10 * static_cast<double>(n)));
    EpochSplit split;
    split.val_idx.assign(idx.begin(), idx.begin() + n_val);
    split.train_idx.assign(idx.begin() + n_val, idx.end());
    return split;
}

inline EpochSplit split_epoch(const Dataset& ds, int epoch, std::uint64_t master_seed) {
    return split_epoch(ds.size(), epoch, master_seed);
}

}  // namespace andi::data

#endif
