// SPDX-License-Identifier: Apache-2.0
#include "photostat/frames.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace photostat {
namespace {

bool frame_is_valid(const Frame& f) {
    return f.width > 0 && f.height > 0 &&
           f.pixels.size() ==
               static_cast<std::size_t>(f.width) * static_cast<std::size_t>(f.height);
}

void analyze_into(const std::vector<Frame>& frames, const SpotModel& model,
                  std::vector<long long>& counts_or_skip) {
    // counts_or_skip[i] = blob count, or -1 for an invalid frame.
    for (std::size_t i = 0; i < frames.size(); ++i) {
        counts_or_skip[i] =
            frame_is_valid(frames[i]) ? count_blobs(frames[i], model) : -1;
    }
}

}  // namespace

void Frame::validate() const {
    if (!frame_is_valid(*this)) {
        throw std::runtime_error("frame dimensions inconsistent with pixel data");
    }
}

void SpotModel::validate() const {
    if (!(sigma_px > 0.0)) throw std::domain_error("sigma_px must be positive");
    if (!(amplitude_min > 0.0) || !(amplitude_max >= amplitude_min)) {
        throw std::domain_error("amplitude range must be positive and ordered");
    }
    if (!(noise_sigma >= 0.0)) {
        throw std::domain_error("noise_sigma must be >= 0");
    }
    if (!(threshold >= 5.0 * noise_sigma)) {
        throw std::domain_error("threshold must be at least 5 * noise_sigma");
    }
    if (min_area_px < 1) throw std::domain_error("min_area_px must be >= 1");
}

Frame generate_frame(int count, const SpotModel& model,
                     const FrameGeometry& geometry, Rng& rng) {
    if (count < 0) throw std::domain_error("count must be >= 0");
    model.validate();
    if (geometry.width < 8 || geometry.height < 8) {
        throw std::domain_error("frame geometry too small");
    }

    const double margin = 4.0 * model.sigma_px;
    const double x_span = geometry.width - 2.0 * margin;
    const double y_span = geometry.height - 2.0 * margin;
    if (count > 0 && (x_span <= 0.0 || y_span <= 0.0)) {
        throw std::domain_error("frame too small for the spot size");
    }

    std::vector<double> xs, ys;
    xs.reserve(count);
    ys.reserve(count);
    const double min_sep2 =
        geometry.min_separation_px * geometry.min_separation_px;
    for (int s = 0; s < count; ++s) {
        bool placed = false;
        for (int attempt = 0; attempt < 20000; ++attempt) {
            const double x = margin + x_span * rng.uniform();
            const double y = margin + y_span * rng.uniform();
            bool ok = true;
            if (geometry.min_separation_px > 0.0) {
                for (std::size_t j = 0; j < xs.size(); ++j) {
                    const double dx = xs[j] - x;
                    const double dy = ys[j] - y;
                    if (dx * dx + dy * dy < min_sep2) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) {
                xs.push_back(x);
                ys.push_back(y);
                placed = true;
                break;
            }
        }
        if (!placed) {
            throw std::runtime_error(
                "could not place spots with the requested separation");
        }
    }

    std::vector<float> canvas(
        static_cast<std::size_t>(geometry.width) * geometry.height, 0.0f);
    const double inv_two_sigma2 = 1.0 / (2.0 * model.sigma_px * model.sigma_px);
    const int reach = static_cast<int>(std::ceil(4.0 * model.sigma_px));
    for (int s = 0; s < count; ++s) {
        const double amp =
            model.amplitude_min +
            (model.amplitude_max - model.amplitude_min) * rng.uniform();
        const int cx = static_cast<int>(std::lround(xs[s]));
        const int cy = static_cast<int>(std::lround(ys[s]));
        for (int y = std::max(0, cy - reach);
             y <= std::min(geometry.height - 1, cy + reach); ++y) {
            for (int x = std::max(0, cx - reach);
                 x <= std::min(geometry.width - 1, cx + reach); ++x) {
                const double dx = x - xs[s];
                const double dy = y - ys[s];
                canvas[static_cast<std::size_t>(y) * geometry.width + x] +=
                    static_cast<float>(
                        amp * std::exp(-(dx * dx + dy * dy) * inv_two_sigma2));
            }
        }
    }

    Frame frame;
    frame.width = geometry.width;
    frame.height = geometry.height;
    frame.pixels.resize(canvas.size());
    for (std::size_t i = 0; i < canvas.size(); ++i) {
        double v = canvas[i];
        if (model.noise_sigma > 0.0) v += model.noise_sigma * rng.normal();
        frame.pixels[i] = static_cast<std::uint16_t>(
            std::clamp(std::lround(v), 0l, 65535l));
    }
    return frame;
}

int count_blobs(const Frame& frame, const SpotModel& model) {
    frame.validate();
    model.validate();
    const int w = frame.width;
    const int h = frame.height;
    const auto above = [&](int x, int y) {
        return static_cast<double>(
                   frame.pixels[static_cast<std::size_t>(y) * w + x]) >=
               model.threshold;
    };

    std::vector<std::uint8_t> visited(frame.pixels.size(), 0);
    std::vector<int> stack;
    int blobs = 0;
    for (int y0 = 0; y0 < h; ++y0) {
        for (int x0 = 0; x0 < w; ++x0) {
            const std::size_t idx0 = static_cast<std::size_t>(y0) * w + x0;
            if (visited[idx0] || !above(x0, y0)) continue;
            int area = 0;
            stack.clear();
            stack.push_back(static_cast<int>(idx0));
            visited[idx0] = 1;
            while (!stack.empty()) {
                const int idx = stack.back();
                stack.pop_back();
                ++area;
                const int x = idx % w;
                const int y = idx / w;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        const int nx = x + dx;
                        const int ny = y + dy;
                        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                        const std::size_t nidx =
                            static_cast<std::size_t>(ny) * w + nx;
                        if (!visited[nidx] && above(nx, ny)) {
                            visited[nidx] = 1;
                            stack.push_back(static_cast<int>(nidx));
                        }
                    }
                }
            }
            if (area >= model.min_area_px) ++blobs;
        }
    }
    return blobs;
}

FrameStreamResult analyze_frame_stream(const std::vector<Frame>& frames,
                                       const SpotModel& model) {
    if (frames.empty()) throw std::domain_error("empty frame stream");
    std::vector<long long> per_frame(frames.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < frames.size(); ++i) {
        per_frame[i] =
            frame_is_valid(frames[i]) ? count_blobs(frames[i], model) : -1;
    }
#else
    analyze_into(frames, model, per_frame);
#endif
    FrameStreamResult result;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (per_frame[i] < 0) {
            result.skipped.push_back(frames[i].pulse_index);
        } else {
            result.histogram.add(static_cast<int>(per_frame[i]));
        }
    }
    return result;
}

FrameStreamResult analyze_frame_stream_serial(const std::vector<Frame>& frames,
                                              const SpotModel& model) {
    if (frames.empty()) throw std::domain_error("empty frame stream");
    std::vector<long long> per_frame(frames.size());
    analyze_into(frames, model, per_frame);
    FrameStreamResult result;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (per_frame[i] < 0) {
            result.skipped.push_back(frames[i].pulse_index);
        } else {
            result.histogram.add(static_cast<int>(per_frame[i]));
        }
    }
    return result;
}

void write_pgm(const std::string& path, const Frame& frame) {
    frame.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "P5\n" << frame.width << " " << frame.height << "\n65535\n";
    std::vector<unsigned char> raw(frame.pixels.size() * 2);
    for (std::size_t i = 0; i < frame.pixels.size(); ++i) {
        raw[2 * i] = static_cast<unsigned char>(frame.pixels[i] >> 8);
        raw[2 * i + 1] = static_cast<unsigned char>(frame.pixels[i] & 0xFF);
    }
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
    if (!out) throw std::runtime_error("short write: " + path);
}

Frame read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string magic;
    in >> magic;
    if (magic != "P5") {
        throw std::runtime_error(path + ": not a binary PGM (P5) file");
    }
    auto next_token = [&in, &path]() {
        // Skips whitespace and '#' comment lines per the PGM grammar.
        std::string tok;
        char c;
        while (in.get(c)) {
            if (c == '#') {
                std::string line;
                std::getline(in, line);
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                if (!tok.empty()) break;
                continue;
            }
            tok.push_back(c);
        }
        if (tok.empty()) throw std::runtime_error(path + ": truncated header");
        return tok;
    };
    Frame frame;
    frame.width = std::stoi(next_token());
    frame.height = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (frame.width <= 0 || frame.height <= 0) {
        throw std::runtime_error(path + ": bad dimensions");
    }
    if (maxval != 65535) {
        throw std::runtime_error(path + ": expected maxval 65535");
    }
    const std::size_t n =
        static_cast<std::size_t>(frame.width) * frame.height;
    std::vector<unsigned char> raw(n * 2);
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
        throw std::runtime_error(path + ": truncated pixel data");
    }
    frame.pixels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        frame.pixels[i] = static_cast<std::uint16_t>(
            (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1]);
    }
    return frame;
}

}  // namespace photostat
