#ifndef ANDI_NETWORK_HPP
#define ANDI_NETWORK_HPP

#include <cstdint>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "andi/layers.hpp"
#include "andi/rng.hpp"
#include "andi/tensor.hpp"

namespace andi::nn {

struct NetworkSpec {
    int input_len = 0;
    int in_channels = 1;
    std::vector<LayerSpec> layers;

    bool operator==(const NetworkSpec&) const = default;
};

inline nlohmann::json spec_to_json(const NetworkSpec& spec) {
    nlohmann::json j;
    j["input_len"] = spec.input_len;
    j["in_channels"] = spec.in_channels;
    j["layers"] = nlohmann::json::array();
    for (const auto& l : spec.layers) {
        nlohmann::json jl;
        jl["kind"] = layer_kind_name(l.kind);
        switch (l.kind) {
            case LayerKind::conv1d:
                jl["filters"] = l.filters;
                jl["kernel"] = l.kernel;
                break;
            case LayerKind::maxpool1d: jl["pool"] = l.pool; break;
            case LayerKind::bilstm: jl["hidden"] = l.hidden; break;
            case LayerKind::dropout: jl["rate"] = l.rate; break;
            case LayerKind::dense:
                jl["units"] = l.units;
                jl["activation"] = activation_name(l.activation);
                break;
        }
        j["layers"].push_back(jl);
    }
    return j;
}

inline NetworkSpec spec_from_json(const nlohmann::json& j) {
    NetworkSpec spec;
    spec.input_len = j.at("input_len").get<int>();
    spec.in_channels = j.at("in_channels").get<int>();
    for (const auto& jl : j.at("layers")) {
        LayerKind kind = layer_kind_from_name(jl.at("kind").get<std::string>());
        switch (kind) {
            case LayerKind::conv1d:
                spec.layers.push_back(
                    LayerSpec::conv(jl.at("filters").get<int>(), jl.at("kernel").get<int>()));
                break;
            case LayerKind::maxpool1d:
                spec.layers.push_back(LayerSpec::maxpool(jl.at("pool").get<int>()));
                break;
            case LayerKind::bilstm:
                spec.layers.push_back(LayerSpec::lstm(jl.at("hidden").get<int>()));
                break;
            case LayerKind::dropout:
                spec.layers.push_back(LayerSpec::drop(jl.at("rate").get<double>()));
                break;
            case LayerKind::dense:
                spec.layers.push_back(
                    LayerSpec::dense(jl.at("units").get<int>(),
                                     activation_from_name(jl.at("activation").get<std::string>())));
                break;
        }
    }
    return spec;
}

// A layer sequence materialized from a NetworkSpec. Parameter initialization
// is a pure function of (spec, seed).
template <typename T>
class Network {
  public:
    Network(NetworkSpec spec, std::uint64_t seed) : spec_(std::move(spec)) {
        int channels = spec_.in_channels;
        bool sequence = true;
        int index = 0;
        for (const auto& l : spec_.layers) {
            Rng rng(seed, 0x6c617965ull + static_cast<std::uint64_t>(index));
            switch (l.kind) {
                case LayerKind::conv1d:
                    if (!sequence) throw config_error("conv1d after a dense head");
                    layers_.push_back(
                        std::make_unique<Conv1D<T>>(channels, l.filters, l.kernel, rng));
                    channels = l.filters;
                    break;
                case LayerKind::maxpool1d:
                    if (!sequence) throw config_error("maxpool1d after a dense head");
                    layers_.push_back(std::make_unique<MaxPool1D<T>>(l.pool));
                    break;
                case LayerKind::bilstm:
                    if (!sequence) throw config_error("bilstm after a dense head");
                    layers_.push_back(std::make_unique<BiLSTM<T>>(channels, l.hidden, rng));
                    channels = 2 * l.hidden;
                    break;
                case LayerKind::dropout:
                    layers_.push_back(std::make_unique<Dropout<T>>(l.rate, rng));
                    break;
                case LayerKind::dense:
                    layers_.push_back(
                        std::make_unique<Dense<T>>(channels, l.units, l.activation, rng));
                    channels = l.units;
                    sequence = false;
                    break;
            }
            ++index;
        }
    }

    const NetworkSpec& spec() const { return spec_; }

    Tensor<T> forward(const Tensor<T>& x, bool training = false) {
        Tensor<T> cur = x;
        for (auto& l : layers_) cur = l->forward(cur, training);
        return cur;
    }

    void backward(const Tensor<T>& dout) {
        Tensor<T> cur = dout;
        for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) cur = (*it)->backward(cur);
    }

    std::vector<Param<T>*> params() {
        std::vector<Param<T>*> out;
        for (auto& l : layers_)
            for (auto* p : l->params()) out.push_back(p);
        return out;
    }

    std::int64_t param_count() {
        std::int64_t n = 0;
        for (auto* p : params()) n += p->value.count();
        return n;
    }

    void zero_grad() {
        for (auto* p : params()) p->value.zero_grad();
    }

    void freeze_dropout(bool on) {
        for (auto& l : layers_)
            if (auto* d = dynamic_cast<Dropout<T>*>(l.get())) d->freeze(on);
    }

    std::size_t layer_count() const { return layers_.size(); }
    Layer<T>* layer(std::size_t i) { return layers_[i].get(); }

    // Flat parameter snapshot (early stopping keeps the best epoch's copy).
    std::vector<T> snapshot_params() {
        std::vector<T> out;
        for (auto* p : params()) out.insert(out.end(), p->value.data.begin(), p->value.data.end());
        return out;
    }

    void restore_params(const std::vector<T>& flat) {
        std::size_t off = 0;
        for (auto* p : params()) {
            if (off + p->value.data.size() > flat.size())
                throw integrity_error("restore_params: snapshot too short");
            std::copy(flat.begin() + static_cast<long>(off),
                      flat.begin() + static_cast<long>(off + p->value.data.size()),
                      p->value.data.begin());
            off += p->value.data.size();
        }
        if (off != flat.size()) throw integrity_error("restore_params: snapshot size mismatch");
    }

  private:
    NetworkSpec spec_;
    std::vector<std::unique_ptr<Layer<T>>> layers_;
};

// Weight archive: 8-byte magic + u64 manifest length + JSON manifest + raw
// little-endian float32 tensor payloads in manifest order.
inline constexpr char kWeightMagic[8] = {'A', 'N', 'D', 'I', 'W', 'T', 'S', '1'};

template <typename T>
void save_weights(Network<T>& net, const std::string& path) {
    nlohmann::json manifest;
    manifest["spec"] = spec_to_json(net.spec());
    std::uint64_t offset = 0;
    auto params = net.params();
    for (auto* p : params) {
        nlohmann::json jt;
        jt["name"] = p->name;
        jt["shape"] = p->value.shape;
        jt["offset"] = offset;
        jt["count"] = p->value.count();
        manifest["tensors"].push_back(jt);
        offset += static_cast<std::uint64_t>(p->value.count()) * 4;
    }
    std::string mtext = manifest.dump();

    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("save_weights: cannot open " + path);
    out.write(kWeightMagic, 8);
    std::uint64_t mlen = mtext.size();
    out.write(reinterpret_cast<const char*>(&mlen), 8);
    out.write(mtext.data(), static_cast<std::streamsize>(mtext.size()));
    for (auto* p : params) {
        std::vector<float> buf(p->value.data.begin(), p->value.data.end());
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size() * 4));
    }
    if (!out) throw parse_error("save_weights: write failed for " + path);
}

inline nlohmann::json read_weight_manifest(std::ifstream& in, const std::string& path) {
    char magic[8];
    std::uint64_t mlen = 0;
    if (!in.read(magic, 8) || std::memcmp(magic, kWeightMagic, 8) != 0)
        throw parse_error("load_weights: bad magic in " + path);
    if (!in.read(reinterpret_cast<char*>(&mlen), 8))
        throw parse_error("load_weights: truncated header in " + path);
    std::string mtext(mlen, '\0');
    if (!in.read(mtext.data(), static_cast<std::streamsize>(mlen)))
        throw parse_error("load_weights: truncated manifest in " + path);
    try {
        return nlohmann::json::parse(mtext);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error("load_weights: manifest parse error in " + path + ": " + e.what());
    }
}

// Load weights into an existing network; spec and tensor shapes must agree.
template <typename T>
void load_weights_into(Network<T>& net, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("load_weights: cannot open " + path);
    nlohmann::json manifest = read_weight_manifest(in, path);

    NetworkSpec stored = spec_from_json(manifest.at("spec"));
    if (!(stored == net.spec()))
        throw integrity_error("load_weights: stored architecture does not match target network");

    auto params = net.params();
    const auto& tensors = manifest.at("tensors");
    if (tensors.size() != params.size())
        throw integrity_error("load_weights: tensor count mismatch");
    for (std::size_t i = 0; i < params.size(); ++i) {
        const auto& jt = tensors[i];
        if (jt.at("name").get<std::string>() != params[i]->name ||
            jt.at("shape").get<std::vector<int>>() != params[i]->value.shape)
            throw integrity_error("load_weights: tensor " + params[i]->name +
                                  " shape/name mismatch in manifest");
        std::vector<float> buf(static_cast<std::size_t>(params[i]->value.count()));
        if (!in.read(reinterpret_cast<char*>(buf.data()),
                     static_cast<std::streamsize>(buf.size() * 4)))
            throw parse_error("load_weights: truncated tensor data in " + path);
        std::copy(buf.begin(), buf.end(), params[i]->value.data.begin());
    }
}

// Load a weight archive into a freshly built network.
template <typename T = float>
Network<T> load_weights(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("load_weights: cannot open " + path);
    nlohmann::json manifest = read_weight_manifest(in, path);
    in.close();
    Network<T> net(spec_from_json(manifest.at("spec")), 0);
    load_weights_into(net, path);
    return net;
}

}  // namespace andi::nn

#endif
