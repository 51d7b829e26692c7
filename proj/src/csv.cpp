// SPDX-License-Identifier: Apache-2.0
#include "photostat/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace photostat {
namespace {

[[noreturn]] void fail_line(const std::string& path, std::size_t line,
                            const std::string& what) {
    std::ostringstream msg;
    msg << path << ":" << line << ": " << what;
    throw std::runtime_error(msg.str());
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& tok, const std::string& path,
                    std::size_t line) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0' || errno == ERANGE ||
        !std::isfinite(v)) {
        fail_line(path, line, "expected a finite number, got '" + tok + "'");
    }
    return v;
}

long long parse_int(const std::string& tok, const std::string& path,
                    std::size_t line) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0' || errno == ERANGE) {
        fail_line(path, line, "expected an integer, got '" + tok + "'");
    }
    return v;
}

bool looks_like_header(const std::string& line) {
    for (char c : line) {
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return true;
    }
    return false;
}

}  // namespace

void write_histogram_csv(const std::string& path, const CountHistogram& hist) {
    auto out = open_out(path);
    out << "k,frequency\n";
    for (const auto& [k, f] : hist.counts) {
        out << k << "," << f << "\n";
    }
    if (!out) throw std::runtime_error("short write: " + path);
}

CountHistogram read_histogram_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    CountHistogram hist;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || (line_no == 1 && looks_like_header(line))) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 2) {
            fail_line(path, line_no, "expected 2 fields, got " +
                                         std::to_string(fields.size()));
        }
        const long long k = parse_int(fields[0], path, line_no);
        const long long f = parse_int(fields[1], path, line_no);
        if (k < 0) fail_line(path, line_no, "negative count");
        if (f < 0) fail_line(path, line_no, "negative frequency");
        if (f > 0) hist.add(static_cast<int>(k), static_cast<std::uint64_t>(f));
    }
    if (hist.total_pulses == 0) {
        throw std::runtime_error(path + ": no histogram rows");
    }
    return hist;
}

void write_pmf_csv(const std::string& path, const CountPmf& pmf) {
    auto out = open_out(path);
    out << "support,mass,log10_mass\n";
    for (std::size_t k = 0; k < pmf.probs.size(); ++k) {
        out << k << "," << fmt(pmf.probs[k]) << "," << fmt(pmf.log10_probs[k])
            << "\n";
    }
    if (!out) throw std::runtime_error("short write: " + path);
}

void write_density_csv(const std::string& path, const DiscretizedDensity& d) {
    auto out = open_out(path);
    out << "support,mass,log10_mass\n";
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double lg =
            d.mass[i] > 0.0 ? std::log10(d.mass[i]) : -HUGE_VAL;
        out << fmt(d.grid[i]) << "," << fmt(d.mass[i]) << "," << fmt(lg)
            << "\n";
    }
    if (!out) throw std::runtime_error("short write: " + path);
}

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepPoint>& points) {
    auto out = open_out(path);
    out << "energy,k,frequency\n";
    for (const auto& p : points) {
        for (const auto& [k, f] : p.histogram.counts) {
            out << fmt(p.energy) << "," << k << "," << f << "\n";
        }
    }
    if (!out) throw std::runtime_error("short write: " + path);
}

void write_sweep_means_csv(const std::string& path,
                           const std::vector<SweepPoint>& points) {
    auto out = open_out(path);
    out << "energy,mean\n";
    for (const auto& p : points) {
        out << fmt(p.energy) << "," << fmt(p.mean_count) << "\n";
    }
    if (!out) throw std::runtime_error("short write: " + path);
}

std::vector<std::pair<double, double>> read_xy_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::vector<std::pair<double, double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || (line_no == 1 && looks_like_header(line))) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 2) {
            fail_line(path, line_no, "expected 2 fields, got " +
                                         std::to_string(fields.size()));
        }
        rows.emplace_back(parse_double(fields[0], path, line_no),
                          parse_double(fields[1], path, line_no));
    }
    if (rows.empty()) throw std::runtime_error(path + ": no data rows");
    return rows;
}

}  // namespace photostat
