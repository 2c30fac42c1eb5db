#ifndef ANDI_TRAJECTORY_HPP
#define ANDI_TRAJECTORY_HPP

#include <cmath>
#include <string>
#include <vector>

#include "andi/errors.hpp"

namespace andi::sim {

// One-dimensional position series sampled at unit frame intervals.
// Generators emit origin-anchored paths: positions[0] == 0.
struct Trajectory {
    std::vector<double> positions;

    int length() const { return static_cast<int>(positions.size()); }
};

// Integer codes are part of the on-disk dataset format; never reorder.
enum class ModelClass : int { ATTM = 0, CTRW = 1, FBM = 2, LW = 3, SBM = 4 };

inline constexpr int kNumModels = 5;

inline const char* model_name(ModelClass m) {
    switch (m) {
        case ModelClass::ATTM: return "ATTM";
        case ModelClass::CTRW: return "CTRW";
        case ModelClass::FBM: return "FBM";
        case ModelClass::LW: return "LW";
        case ModelClass::SBM: return "SBM";
    }
    throw domain_error("unknown model class");
}

inline ModelClass model_from_code(int code) {
    if (code < 0 || code >= kNumModels)
        throw domain_error("model code out of range [0,5): " + std::to_string(code));
    return static_cast<ModelClass>(code);
}

inline ModelClass model_from_name(const std::string& s) {
    for (int c = 0; c < kNumModels; ++c)
        if (s == model_name(static_cast<ModelClass>(c))) return static_cast<ModelClass>(c);
    throw domain_error("unknown model name: " + s);
}

struct AlphaRange {
    double lo, hi;
    bool lo_inclusive, hi_inclusive;

    bool contains(double a) const {
        if (a < lo || a > hi) return false;
        if (a == lo && !lo_inclusive) return false;
        if (a == hi && !hi_inclusive) return false;
        return true;
    }

    std::string str() const {
        return (lo_inclusive ? "[" : "(") + std::to_string(lo) + ", " + std::to_string(hi) +
               (hi_inclusive ? "]" : ")");
    }
};

// Valid anomalous-exponent interval per model. ATTM/CTRW are subdiffusive,
// LW superdiffusive; FBM excludes the ballistic endpoint (H < 1).
inline AlphaRange alpha_range(ModelClass m) {
    switch (m) {
        case ModelClass::ATTM: return {0.0, 1.0, false, true};
        case ModelClass::CTRW: return {0.0, 1.0, false, true};
        case ModelClass::FBM: return {0.0, 2.0, false, false};
        case ModelClass::LW: return {1.0, 2.0, true, true};
        case ModelClass::SBM: return {0.0, 2.0, false, true};
    }
    throw domain_error("unknown model class");
}

}  // namespace andi::sim

#endif
