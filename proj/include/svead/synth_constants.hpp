#pragma once

#include <cstddef>

// Geometry of the synthetic anomaly regimes. Only the sample counts and the
// qualitative shape of each regime are fixed externally; every coordinate,
// radius and noise level below is a choice of this repository.
namespace svead::synth_constants {

inline constexpr std::size_t kNormalCount = 270;
inline constexpr std::size_t kAnomalyCount = 30;

// Global anomalies: N(0, I) normals, anomalies uniform (by area) on an annulus.
inline constexpr double kS1NormalSd = 1.0;
inline constexpr double kS1AnnulusInner = 4.0;
inline constexpr double kS1AnnulusOuter = 6.0;

// Local anomalies: two interleaved half circles.
inline constexpr double kS2Radius = 1.0;
inline constexpr double kS2InnerShiftX = 1.0;
inline constexpr double kS2VerticalOffset = 0.5;
inline constexpr double kS2Jitter = 0.05;
// Anomalies are drawn uniformly from the normals' bounding box and rejected
// when closer than this to either arc.
inline constexpr double kS2Clearance = 0.25;
inline constexpr double kS2BoxMinX = -1.0;
inline constexpr double kS2BoxMaxX = 2.0;
inline constexpr double kS2BoxMinY = -0.5;
inline constexpr double kS2BoxMaxY = 1.0;

// Dependency anomalies: y = +x + noise (normal) vs y = -x + noise (anomaly).
inline constexpr double kS3XMin = -2.0;
inline constexpr double kS3XMax = 2.0;
inline constexpr double kS3NoiseSd = 0.1;

// Two-density fixture: dense blob sd 1 at the origin, sparse blob sd
// scale_ratio centred kTwoDensitySeparation * scale_ratio away on axis 0.
inline constexpr double kTwoDensityDenseSd = 1.0;
inline constexpr double kTwoDensitySeparation = 20.0;
inline constexpr std::size_t kTwoDensityMinCount = 10;

}  // namespace svead::synth_constants
