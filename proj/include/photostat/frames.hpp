// SPDX-License-Identifier: Apache-2.0
#ifndef PHOTOSTAT_FRAMES_HPP
#define PHOTOSTAT_FRAMES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "photostat/histogram.hpp"
#include "photostat/rng.hpp"

namespace photostat {

struct Frame {
    int width = 0;
    int height = 0;
    std::vector<std::uint16_t> pixels;  // row-major
    long long pulse_index = 0;

    void validate() const;
};

struct SpotModel {
    double sigma_px = 2.0;
    double amplitude_min = 20000.0;
    double amplitude_max = 40000.0;
    double noise_sigma = 200.0;
    double threshold = 8000.0;
    int min_area_px = 4;

    /// Requires threshold >= 5 * noise_sigma so a noise-only frame stays
    /// below threshold with overwhelming probability.
    void validate() const;
};

struct FrameGeometry {
    int width = 256;
    int height = 256;
    /// Minimum pairwise centre distance enforced by rejection sampling;
    /// 0 disables the constraint.
    double min_separation_px = 0.0;
};

/// `count` Gaussian spots at uniform positions plus additive Gaussian
/// noise, clipped to the 16-bit range. Throws when a separation
/// constraint cannot be satisfied after many attempts.
Frame generate_frame(int count, const SpotModel& model,
                     const FrameGeometry& geometry, Rng& rng);

/// Number of 8-connected components of pixels >= threshold with area >=
/// min_area_px. Touching spots merge; that undercount is the defined
/// behavior.
int count_blobs(const Frame& frame, const SpotModel& model);

struct FrameStreamResult {
    CountHistogram histogram;
    std::vector<long long> skipped;  // pulse indices of invalid frames
};

/// Per-frame blob counts aggregated into a histogram; invalid frames are
/// recorded as skips, never dropped silently. Order-independent.
FrameStreamResult analyze_frame_stream(const std::vector<Frame>& frames,
                                       const SpotModel& model);
FrameStreamResult analyze_frame_stream_serial(const std::vector<Frame>& frames,
                                              const SpotModel& model);

/// Binary PGM (P5, maxval 65535, most significant byte first).
void write_pgm(const std::string& path, const Frame& frame);
Frame read_pgm(const std::string& path);

}  // namespace photostat

#endif
