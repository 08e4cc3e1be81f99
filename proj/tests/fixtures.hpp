// Shared fixtures: the haul-cycle parameter presets and the published
// reference tables the golden tests check against (idle probabilities and
// absolute errors, rounded to three decimals).
#pragma once

#include <array>
#include <string>
#include <vector>

#include "haulnet/moments.hpp"
#include "haulnet/network.hpp"

namespace fixtures {

inline constexpr double kLoadMean = 1.5;
inline constexpr double kLoadVar = 0.140625; // cv 0.25
inline constexpr double kHaulMean = 6.0;
inline constexpr double kHaulVar = 1.44; // cv 0.2
inline constexpr double kDumpMean = 1.0;
inline constexpr double kDumpVar = 0.01; // cv 0.1
inline constexpr double kReturnMean = 4.0;
inline constexpr double kReturnVar = 0.64; // cv 0.2

inline constexpr double kUptimeRate = 1.0 / 300.0;
inline constexpr double kRepairRate = 1.0 / 30.0;

// modified loading moments published for the disturbed scenario
inline constexpr double kModifiedMean = 1.649603;
inline constexpr double kModifiedVar = 9.122382;

// exact K=1 idle probabilities for both scenarios
inline constexpr double kExactIdleBase = 0.880;
inline constexpr double kExactIdleDisturbed = 0.8695925;

inline haulnet::NetworkSpec mining_cycle(int k) {
    using namespace haulnet;
    return NetworkSpec::cycle(
        {
            {NodeKind::SingleServerFcfs, {kLoadMean, kLoadVar}, "loading"},
            {NodeKind::InfiniteServer, {kHaulMean, kHaulVar}, "travel loaded"},
            {NodeKind::SingleServerFcfs, {kDumpMean, kDumpVar}, "unloading"},
            {NodeKind::InfiniteServer, {kReturnMean, kReturnVar}, "travel empty"},
        },
        k);
}

inline haulnet::NetworkSpec mining_cycle_means(const std::array<double, 4>& means,
                                               const std::array<double, 4>& variances, int k) {
    using namespace haulnet;
    return NetworkSpec::cycle(
        {
            {NodeKind::SingleServerFcfs, {means[0], variances[0]}, "loading"},
            {NodeKind::InfiniteServer, {means[1], variances[1]}, "travel loaded"},
            {NodeKind::SingleServerFcfs, {means[2], variances[2]}, "unloading"},
            {NodeKind::InfiniteServer, {means[3], variances[3]}, "travel empty"},
        },
        k);
}

inline haulnet::NetworkSpec disturbed_cycle(int k) {
    haulnet::NetworkSpec spec = mining_cycle(k);
    const haulnet::ModifiedServiceMoments mod = haulnet::modified_service_moments(
        spec.nodes[0].service, {kUptimeRate, kRepairRate});
    spec.nodes[0].service = mod.modified;
    return spec;
}

// ---------------------------------------------------------------------------
// Reference tables. Row order matches the published layout.

inline const std::vector<std::string> kBaseRows = {"FLOW", "MVA", "ST&ST", "GMVA", "ESUM", "EBOTT"};
inline const std::vector<std::string> kDisturbedRows = {"FLOW", "MVA",   "ST&ST", "GMVA",
                                                        "ESUM", "EBOTT", "ST&ST-m"};

inline constexpr std::array<double, 10> kBaseSim = {0.880, 0.762, 0.646, 0.533, 0.424,
                                                    0.319, 0.219, 0.129, 0.056, 0.014};

inline constexpr std::array<std::array<double, 10>, 6> kBaseIdle = {{
    {0.880, 0.760, 0.640, 0.520, 0.400, 0.280, 0.160, 0.040, 0.000, 0.000}, // FLOW
    {0.880, 0.765, 0.656, 0.553, 0.458, 0.372, 0.296, 0.229, 0.174, 0.129}, // MVA
    {0.880, 0.760, 0.641, 0.525, 0.416, 0.315, 0.223, 0.142, 0.075, 0.029}, // ST&ST
    {0.867, 0.738, 0.613, 0.494, 0.382, 0.278, 0.185, 0.105, 0.040, 0.000}, // GMVA
    {0.880, 0.766, 0.654, 0.548, 0.449, 0.359, 0.281, 0.215, 0.163, 0.124}, // ESUM
    {0.880, 0.766, 0.654, 0.548, 0.449, 0.359, 0.281, 0.215, 0.163, 0.124}, // EBOTT
}};

inline constexpr std::array<std::array<double, 10>, 6> kBaseAbsErr = {{
    {0.000, 0.002, 0.006, 0.013, 0.024, 0.039, 0.059, 0.089, 0.056, 0.014}, // FLOW
    {0.000, 0.003, 0.009, 0.020, 0.034, 0.053, 0.076, 0.100, 0.118, 0.114}, // MVA
    {0.000, 0.002, 0.005, 0.008, 0.007, 0.004, 0.004, 0.013, 0.019, 0.014}, // ST&ST
    {0.013, 0.024, 0.033, 0.039, 0.042, 0.041, 0.034, 0.024, 0.016, 0.014}, // GMVA
    {0.000, 0.003, 0.008, 0.015, 0.025, 0.040, 0.061, 0.086, 0.107, 0.110}, // ESUM
    {0.000, 0.003, 0.008, 0.015, 0.025, 0.040, 0.061, 0.086, 0.107, 0.110}, // EBOTT
}};

inline constexpr std::array<double, 10> kDisturbedSim = {0.869, 0.743, 0.623, 0.508, 0.399,
                                                         0.296, 0.202, 0.117, 0.050, 0.013};

inline constexpr std::array<std::array<double, 10>, 7> kDisturbedIdle = {{
    {0.870, 0.739, 0.609, 0.478, 0.348, 0.218, 0.087, 0.000, 0.000, 0.000}, // FLOW
    {0.870, 0.745, 0.628, 0.519, 0.419, 0.330, 0.253, 0.188, 0.136, 0.095}, // MVA
    {0.870, 0.742, 0.638, 0.557, 0.493, 0.439, 0.393, 0.353, 0.318, 0.287}, // ST&ST
    {0.883, 0.773, 0.672, 0.579, 0.497, 0.424, 0.361, 0.308, 0.263, 0.227}, // GMVA
    {0.870, 0.754, 0.647, 0.550, 0.465, 0.391, 0.328, 0.276, 0.232, 0.196}, // ESUM
    {0.870, 0.754, 0.647, 0.550, 0.465, 0.391, 0.328, 0.276, 0.232, 0.196}, // EBOTT
    {0.870, 0.742, 0.619, 0.502, 0.394, 0.295, 0.207, 0.131, 0.069, 0.026}, // ST&ST-m
}};

inline constexpr std::array<std::array<double, 10>, 7> kDisturbedAbsErr = {{
    {0.000, 0.004, 0.014, 0.030, 0.051, 0.078, 0.114, 0.117, 0.050, 0.013}, // FLOW
    {0.000, 0.002, 0.005, 0.010, 0.020, 0.034, 0.051, 0.071, 0.086, 0.082}, // MVA
    {0.000, 0.001, 0.015, 0.049, 0.094, 0.143, 0.192, 0.236, 0.269, 0.275}, // ST&ST
    {0.014, 0.030, 0.049, 0.071, 0.098, 0.128, 0.159, 0.191, 0.214, 0.214}, // GMVA
    {0.000, 0.011, 0.024, 0.042, 0.066, 0.095, 0.127, 0.158, 0.182, 0.183}, // ESUM
    {0.000, 0.011, 0.024, 0.042, 0.066, 0.095, 0.127, 0.158, 0.182, 0.183}, // EBOTT
    {0.000, 0.001, 0.004, 0.006, 0.005, 0.001, 0.005, 0.014, 0.019, 0.014}, // ST&ST-m
}};

inline double round3(double x) { return std::round(x * 1000.0) / 1000.0; }

} // namespace fixtures
