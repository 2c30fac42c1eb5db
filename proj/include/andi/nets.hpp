#ifndef ANDI_NETS_HPP
#define ANDI_NETS_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "andi/network.hpp"
#include "andi/signal.hpp"
#include "andi/trajectory.hpp"

namespace andi::nets {

// Length bin for the per-length regression models. The first bin is the
// closed interval [10,20]; every later bin is half-open ]lo,hi].
struct LengthBin {
    int lo = 0;
    int hi = 0;
    bool lo_inclusive = false;

    bool contains(int len) const { return (lo_inclusive ? len >= lo : len > lo) && len <= hi; }

    std::string label() const { return "L" + std::to_string(lo) + "_" + std::to_string(hi); }

    bool operator==(const LengthBin&) const = default;
};

inline const std::array<LengthBin, 12>& length_bins() {
    static const std::array<LengthBin, 12> bins = {{{10, 20, true},
                                                    {20, 30, false},
                                                    {30, 40, false},
                                                    {40, 50, false},
                                                    {50, 100, false},
                                                    {100, 200, false},
                                                    {200, 300, false},
                                                    {300, 400, false},
                                                    {400, 500, false},
                                                    {500, 600, false},
                                                    {600, 800, false},
                                                    {800, 1000, false}}};
    return bins;
}

inline LengthBin route_bin(int len) {
    for (const auto& bin : length_bins())
        if (bin.contains(len)) return bin;
    throw range_error("route_bin: length " + std::to_string(len) + " outside [10,1000]");
}

inline std::size_t bin_index(const LengthBin& bin) {
    const auto& bins = length_bins();
    for (std::size_t i = 0; i < bins.size(); ++i)
        if (bins[i] == bin) return i;
    throw range_error("bin_index: unknown bin " + bin.label());
}

// Regression net: two conv layers, four bidirectional LSTM blocks each
// followed by dropout, then a single linear node reading the last time step.
inline nn::NetworkSpec build_regressor(int input_len, int hidden = 64) {
    using nn::LayerSpec;
    nn::NetworkSpec spec;
    spec.input_len = input_len;
    spec.in_channels = 1;
    spec.layers.push_back(LayerSpec::conv(32, 5));
    spec.layers.push_back(LayerSpec::conv(64, 5));
    for (int i = 0; i < 4; ++i) {
        spec.layers.push_back(LayerSpec::lstm(hidden));
        spec.layers.push_back(LayerSpec::drop(0.1));
    }
    spec.layers.push_back(LayerSpec::dense(1, nn::Activation::linear));
    return spec;
}

// Classification net: conv/pool twice, three bidirectional LSTMs, dropout,
// then a 20-node relu layer and a 5-way softmax. Fixed input length 1000.
inline nn::NetworkSpec build_classifier(int hidden = 64) {
    using nn::LayerSpec;
    nn::NetworkSpec spec;
    spec.input_len = 1000;
    spec.in_channels = 1;
    spec.layers.push_back(LayerSpec::conv(32, 5));
    spec.layers.push_back(LayerSpec::maxpool(2));
    spec.layers.push_back(LayerSpec::conv(64, 5));
    spec.layers.push_back(LayerSpec::maxpool(2));
    for (int i = 0; i < 3; ++i) spec.layers.push_back(LayerSpec::lstm(hidden));
    spec.layers.push_back(LayerSpec::drop(0.1));
    spec.layers.push_back(LayerSpec::dense(20, nn::Activation::relu));
    spec.layers.push_back(LayerSpec::dense(5, nn::Activation::softmax));
    return spec;
}

// Normalize and lead-pad a trajectory into a [1, target_len, 1] input tensor.
template <typename T = float>
nn::Tensor<T> featurize(const std::vector<double>& positions, int target_len) {
    auto padded = sig::lead_pad(sig::normalize(positions), target_len);
    auto x = nn::Tensor<T>::zeros({1, target_len, 1});
    for (int t = 0; t < target_len; ++t)
        x.data[static_cast<std::size_t>(t)] = static_cast<T>(padded.values[static_cast<std::size_t>(t)]);
    return x;
}

// FNV-1a 64-bit hash of a file's bytes, as a 16-digit hex string.
inline std::string fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("fnv1a64_file: cannot open " + path);
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[1 << 14];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ull;
        }
        if (!in) break;
    }
    std::ostringstream os;
    os << std::hex << std::setfill('0') << std::setw(16) << h;
    return os.str();
}

namespace detail {

inline nlohmann::json read_manifest_or_empty(const std::string& dir) {
    std::ifstream in(dir + "/bank.json");
    if (!in) return nlohmann::json::object();
    nlohmann::json manifest;
    try {
        in >> manifest;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error("bank manifest: " + std::string(e.what()));
    }
    return manifest;
}

inline void write_manifest(const std::string& dir, const nlohmann::json& manifest) {
    std::ofstream out(dir + "/bank.json");
    if (!out) throw parse_error("bank manifest: cannot write " + dir + "/bank.json");
    out << manifest.dump(2) << "\n";
}

}  // namespace detail

// The 12 per-bin regression models. Bins must be populated (trained or
// loaded) before prediction.
class RegressorBank {
  public:
    void set_model(const LengthBin& bin, nn::Network<float> net) {
        int expect = bin.hi;
        if (net.spec().input_len != expect)
            throw config_error("RegressorBank: model input length " +
                               std::to_string(net.spec().input_len) + " does not match bin " +
                               bin.label());
        models_[bin_index(bin)] = std::make_unique<nn::Network<float>>(std::move(net));
    }

    bool has_model(const LengthBin& bin) const { return models_[bin_index(bin)] != nullptr; }

    bool fully_populated() const {
        return std::all_of(models_.begin(), models_.end(), [](const auto& m) { return m != nullptr; });
    }

    nn::Network<float>& model(const LengthBin& bin) {
        auto& slot = models_[bin_index(bin)];
        if (!slot) throw state_error("RegressorBank: no model for bin " + bin.label());
        return *slot;
    }

    static std::string bin_filename(const LengthBin& bin) {
        return "regressor_" + bin.label() + ".bin";
    }

    // Write every populated bin plus a manifest with content hashes. Other
    // manifest entries (the classifier's) are preserved.
    void save(const std::string& dir) const {
        nlohmann::json manifest = detail::read_manifest_or_empty(dir);
        manifest["bins"] = nlohmann::json::array();
        for (std::size_t i = 0; i < models_.size(); ++i) {
            if (!models_[i]) continue;
            const auto& bin = length_bins()[i];
            std::string file = bin_filename(bin);
            nn::save_weights(*models_[i], dir + "/" + file);
            nlohmann::json jb;
            jb["lo"] = bin.lo;
            jb["hi"] = bin.hi;
            jb["file"] = file;
            jb["fnv1a64"] = fnv1a64_file(dir + "/" + file);
            manifest["bins"].push_back(jb);
        }
        detail::write_manifest(dir, manifest);
    }

    // Load all bins listed in the manifest, verifying file hashes.
    void load(const std::string& dir) {
        std::ifstream in(dir + "/bank.json");
        if (!in) throw parse_error("RegressorBank: cannot open " + dir + "/bank.json");
        nlohmann::json manifest;
        try {
            in >> manifest;
        } catch (const nlohmann::json::exception& e) {
            throw parse_error("RegressorBank: bad manifest: " + std::string(e.what()));
        }
        if (!manifest.contains("bins")) return;
        for (const auto& jb : manifest["bins"]) {
            LengthBin bin = route_bin(jb.at("hi").get<int>());
            if (bin.lo != jb.at("lo").get<int>())
                throw integrity_error("RegressorBank: manifest bin [" +
                                      std::to_string(jb.at("lo").get<int>()) + "," +
                                      std::to_string(jb.at("hi").get<int>()) +
                                      "] is not a known length bin");
            std::string path = dir + "/" + jb.at("file").get<std::string>();
            std::string expect = jb.at("fnv1a64").get<std::string>();
            std::string actual = fnv1a64_file(path);
            if (actual != expect)
                throw integrity_error("RegressorBank: hash mismatch for " + path + " (" + actual +
                                      " vs manifest " + expect + ")");
            set_model(bin, nn::load_weights<float>(path));
        }
    }

  private:
    std::array<std::unique_ptr<nn::Network<float>>, 12> models_;
};

// Write the classifier's archive and record its hash in the bank manifest,
// leaving any regressor entries in place.
inline void save_classifier(nn::Network<float>& net, const std::string& dir) {
    nn::save_weights(net, dir + "/classifier.bin");
    nlohmann::json manifest = detail::read_manifest_or_empty(dir);
    manifest["classifier"] = {{"file", "classifier.bin"},
                              {"fnv1a64", fnv1a64_file(dir + "/classifier.bin")}};
    detail::write_manifest(dir, manifest);
}

// Load the classifier, verifying its manifest hash when one is recorded.
inline nn::Network<float> load_classifier(const std::string& dir) {
    std::string path = dir + "/classifier.bin";
    nlohmann::json manifest = detail::read_manifest_or_empty(dir);
    if (manifest.contains("classifier")) {
        std::string expect = manifest["classifier"].at("fnv1a64").get<std::string>();
        std::string actual = fnv1a64_file(path);
        if (actual != expect)
            throw integrity_error("load_classifier: hash mismatch for " + path + " (" + actual +
                                  " vs manifest " + expect + ")");
    }
    return nn::load_weights<float>(path);
}

// Route to the bin model, run inference (dropout off), clamp to [0,2].
inline double predict_alpha(const std::vector<double>& positions, RegressorBank& bank) {
    LengthBin bin = route_bin(static_cast<int>(positions.size()));
    auto& net = bank.model(bin);
    auto x = featurize<float>(positions, bin.hi);
    auto y = net.forward(x, false);
    return std::clamp(static_cast<double>(y.data[0]), 0.0, 2.0);
}

struct ModelPrediction {
    std::array<double, 5> probs{};
    sim::ModelClass model = sim::ModelClass::ATTM;
};

// Pad to the classifier's fixed length and return the class distribution
// together with its argmax.
inline ModelPrediction predict_model(const std::vector<double>& positions,
                                     nn::Network<float>& classifier) {
    int len = static_cast<int>(positions.size());
    route_bin(len);  // range check on [10,1000]
    auto x = featurize<float>(positions, classifier.spec().input_len);
    auto y = classifier.forward(x, false);
    if (y.count() != 5) throw shape_error("predict_model: classifier output is not 5-way");
    ModelPrediction out;
    int best = 0;
    for (int j = 0; j < 5; ++j) {
        out.probs[static_cast<std::size_t>(j)] = static_cast<double>(y.data[static_cast<std::size_t>(j)]);
        if (out.probs[static_cast<std::size_t>(j)] > out.probs[static_cast<std::size_t>(best)]) best = j;
    }
    out.model = sim::model_from_code(best);
    return out;
}

}  // namespace andi::nets

#endif
