#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "andi/generators.hpp"
#include "andi/train.hpp"

using namespace andi;
using namespace andi::train;

namespace {

nn::NetworkSpec tiny_regressor(int input_len) {
    return nn::NetworkSpec{input_len, 1,
                           {nn::LayerSpec::conv(4, 3), nn::LayerSpec::lstm(4),
                            nn::LayerSpec::dense(1, nn::Activation::linear)}};
}

nn::NetworkSpec tiny_classifier(int input_len, int classes = 5) {
    return nn::NetworkSpec{input_len, 1,
                           {nn::LayerSpec::conv(4, 3), nn::LayerSpec::lstm(4),
                            nn::LayerSpec::dense(classes, nn::Activation::softmax)}};
}

// Recompute the regression validation MAE for one epoch's held-out split.
double val_mae(nn::Network<float>& net, const data::Dataset& ds, int epoch,
               std::uint64_t seed, int batch) {
    auto features = train::detail::featurize_all(ds, net.spec().input_len);
    auto split = data::split_epoch(ds, epoch, seed);
    double sum = 0.0;
    for (std::size_t begin = 0; begin < split.val_idx.size(); begin += batch) {
        std::size_t end = std::min(begin + static_cast<std::size_t>(batch), split.val_idx.size());
        auto x = train::detail::gather_batch(features, split.val_idx, begin, end,
                                             net.spec().input_len);
        auto out = net.forward(x, false);
        for (std::size_t i = begin; i < end; ++i)
            sum += std::fabs(static_cast<double>(out.data[i - begin]) -
                             ds.items[static_cast<std::size_t>(split.val_idx[i])].alpha);
    }
    return sum / static_cast<double>(split.val_idx.size());
}

}  // namespace

TEST_CASE("memorizing identical items drives the loss to the floor") {
    auto traj = sim::generate(sim::ModelClass::FBM, 1.0, 20, 3);
    data::Dataset ds;
    for (int i = 0; i < 20; ++i)
        ds.items.push_back({traj.positions, sim::ModelClass::FBM, 1.0, 0.0});

    nn::Network<float> net(tiny_regressor(20), 5);
    TrainConfig cfg;
    cfg.task = Task::regression;
    cfg.max_epochs = 5;
    cfg.batch = 4;
    cfg.seed = 9;
    cfg.adam.lr = 0.05;
    auto hist = train::train(net, ds, cfg);

    REQUIRE(hist.epochs_run() == 5);
    CHECK(hist.train_loss.back() < 0.05);
    CHECK(hist.train_loss.back() < hist.train_loss.front());
}

TEST_CASE("early stopping halts exactly patience epochs after the best one") {
    // mixed-alpha dataset a tiny net cannot keep improving on forever
    data::Dataset ds;
    Rng pick(17);
    for (int i = 0; i < 60; ++i) {
        double alpha = 0.4 + 1.2 * pick.uniform();
        auto traj = sim::gen_fbm(alpha, 30, 1000 + static_cast<std::uint64_t>(i));
        ds.items.push_back({traj.positions, sim::ModelClass::FBM, alpha, 0.0});
    }

    nn::Network<float> net(tiny_regressor(30), 8);
    TrainConfig cfg;
    cfg.task = Task::regression;
    cfg.max_epochs = 200;
    cfg.patience = 3;
    cfg.batch = 8;
    cfg.seed = 2;
    cfg.adam.lr = 0.01;
    auto hist = train::train(net, ds, cfg);

    REQUIRE(hist.best_epoch >= 1);
    if (hist.epochs_run() < cfg.max_epochs) {
        CHECK(hist.epochs_run() == hist.best_epoch + cfg.patience);
        for (int e = hist.best_epoch; e < hist.epochs_run(); ++e)
            CHECK(hist.val_metric[static_cast<std::size_t>(e)] >= hist.best_metric);
    }
    CHECK(hist.best_metric ==
          *std::min_element(hist.val_metric.begin(), hist.val_metric.end()));

    // the returned parameters reproduce the best epoch's validation metric
    CHECK(val_mae(net, ds, hist.best_epoch, cfg.seed, cfg.batch) ==
          doctest::Approx(hist.best_metric).epsilon(1e-6));
}

TEST_CASE("classification training separates two easy classes") {
    data::Dataset ds;
    for (int i = 0; i < 30; ++i) {
        auto lw = sim::gen_lw(2.0, 40, 50 + static_cast<std::uint64_t>(i));  // ballistic
        ds.items.push_back({lw.positions, sim::ModelClass::LW, 2.0, 0.0});
        auto ctrw = sim::gen_ctrw(0.3, 40, 90 + static_cast<std::uint64_t>(i));  // plateaus
        ds.items.push_back({ctrw.positions, sim::ModelClass::CTRW, 0.3, 0.0});
    }

    nn::Network<float> net(tiny_classifier(40), 1);
    TrainConfig cfg;
    cfg.task = Task::classification;
    cfg.max_epochs = 20;
    cfg.batch = 10;
    cfg.seed = 4;
    cfg.adam.lr = 0.02;
    auto hist = train::train(net, ds, cfg);

    CHECK(hist.best_metric < 0.3);  // cross-entropy well under the ln5 floor

    int correct = 0;
    auto features = train::detail::featurize_all(ds, 40);
    for (std::size_t i = 0; i < ds.items.size(); ++i) {
        auto x = nn::Tensor<float>::zeros({1, 40, 1});
        std::copy(features[i].begin(), features[i].end(), x.data.begin());
        auto p = net.forward(x, false);
        int best = 0;
        for (int j = 1; j < 5; ++j)
            if (p.data[static_cast<std::size_t>(j)] > p.data[static_cast<std::size_t>(best)])
                best = j;
        correct += best == static_cast<int>(ds.items[i].model) ? 1 : 0;
    }
    CHECK(static_cast<double>(correct) / static_cast<double>(ds.items.size()) > 0.9);
}

TEST_CASE("config and input validation") {
    data::Dataset empty;
    nn::Network<float> net(tiny_regressor(20), 1);
    TrainConfig cfg;
    CHECK_THROWS_AS(train::train(net, empty, cfg), size_error);

    data::Dataset ds;
    auto traj = sim::generate(sim::ModelClass::SBM, 1.0, 20, 1);
    for (int i = 0; i < 12; ++i)
        ds.items.push_back({traj.positions, sim::ModelClass::SBM, 1.0, 0.0});

    TrainConfig bad = cfg;
    bad.patience = 0;
    CHECK_THROWS_AS(train::train(net, ds, bad), config_error);
    bad = cfg;
    bad.batch = 0;
    CHECK_THROWS_AS(train::train(net, ds, bad), config_error);

    CHECK(task_from_name("regression") == Task::regression);
    CHECK(task_from_name("classification") == Task::classification);
    CHECK_THROWS_AS(task_from_name("segmentation"), config_error);
    CHECK(std::string(task_name(Task::classification)) == "classification");
}
