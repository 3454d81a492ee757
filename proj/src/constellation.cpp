// SPDX-License-Identifier: Apache-2.0
#include "isacaf/constellation.hpp"

#include "isacaf/error.hpp"
#include "isacaf/rng.hpp"
#include "text_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

namespace isacaf {

Constellation::Constellation(std::vector<cplx> points, std::string name)
    : points_(std::move(points)), name_(std::move(name)) {
    if (points_.empty())
        throw Error(ErrorCode::InvalidArgument, "constellation has no points");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].real()) || !std::isfinite(points_[i].imag()))
            throw Error(ErrorCode::InvalidArgument, "constellation point is not finite");
        for (std::size_t j = 0; j < i; ++j)
            if (points_[i] == points_[j])
                throw Error(ErrorCode::InvalidArgument, "constellation contains duplicate points");
    }
}

Constellation Constellation::normalized() const {
    double power = 0.0;
    for (const auto& p : points_) power += std::norm(p);
    power /= static_cast<double>(points_.size());
    if (power <= 0.0)
        throw Error(ErrorCode::InvalidArgument, "cannot normalize a zero-power constellation");
    const double scale = 1.0 / std::sqrt(power);
    std::vector<cplx> scaled(points_);
    for (auto& p : scaled) p *= scale;
    return Constellation(std::move(scaled), name_);
}

Constellation make_psk(int order) {
    if (order < 2)
        throw Error(ErrorCode::InvalidOrder, "PSK order must be at least 2, got " + std::to_string(order));
    std::vector<cplx> pts(static_cast<std::size_t>(order));
    for (int m = 0; m < order; ++m) {
        // Exact values on the axes keep QPSK at {1, j, -1, -j} bit-for-bit.
        if ((4 * m) % order == 0) {
            static constexpr cplx axes[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            pts[static_cast<std::size_t>(m)] = axes[(4 * m) / order];
        } else {
            pts[static_cast<std::size_t>(m)] = std::polar(1.0, 2.0 * std::numbers::pi * m / order);
        }
    }
    std::string name = order == 2 ? "BPSK" : order == 4 ? "QPSK" : std::to_string(order) + "-PSK";
    return Constellation(std::move(pts), std::move(name));
}

Constellation make_qam(int order) {
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(std::max(order, 0)))));
    if (order < 4 || side * side != order)
        throw Error(ErrorCode::UnsupportedOrder,
                    "QAM order must be a perfect square >= 4, got " + std::to_string(order));
    std::vector<cplx> grid;
    grid.reserve(static_cast<std::size_t>(order));
    double power = 0.0;
    for (int i = 0; i < side; ++i) {
        for (int q = 0; q < side; ++q) {
            const cplx p(2.0 * i - (side - 1), 2.0 * q - (side - 1));
            power += std::norm(p);
            grid.push_back(p);
        }
    }
    power /= order;
    const double scale = 1.0 / std::sqrt(power);
    for (auto& p : grid) p *= scale;
    return Constellation(std::move(grid), std::to_string(order) + "-QAM");
}

MomentReport moments(const Constellation& c, double tol) {
    const auto& pts = c.points();
    const double m = static_cast<double>(pts.size());
    MomentReport r;
    r.tolerance = tol;
    for (const auto& p : pts) {
        r.mean += p;
        r.power += std::norm(p);
        r.pseudo_variance += p * p;
        r.fourth_moment += std::norm(p) * std::norm(p);
    }
    r.mean /= m;
    r.power /= m;
    r.pseudo_variance /= m;
    r.fourth_moment /= m;

    double central2 = 0.0;
    double central4 = 0.0;
    for (const auto& p : pts) {
        const double d = std::norm(p - r.mean);
        central2 += d;
        central4 += d * d;
    }
    central2 /= m;
    central4 /= m;
    r.kurtosis = central2 > 0.0 ? central4 / (central2 * central2) : 0.0;

    r.assumption1_ok = std::abs(r.mean) <= tol && std::abs(r.power - 1.0) <= tol &&
                       std::abs(r.pseudo_variance) <= tol;
    return r;
}

CVector sample_symbols(const Constellation& c, std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    const auto& pts = c.points();
    CVector out(n);
    for (auto& s : out) s = pts[rng.bounded(pts.size())];
    return out;
}

Constellation constellation_from_name(const std::string& raw) {
    std::string name;
    for (char ch : raw)
        if (ch != '-' && ch != '_' && ch != ':' && !std::isspace(static_cast<unsigned char>(ch)))
            name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));

    if (name == "bpsk") return make_psk(2);
    if (name == "qpsk") return make_psk(4);

    static const std::regex prefixed("^(\\d+)(psk|qam)$");
    static const std::regex suffixed("^(psk|qam)(\\d+)$");
    std::smatch m;
    std::string family;
    std::string order;
    if (std::regex_match(name, m, prefixed)) {
        order = m[1];
        family = m[2];
    } else if (std::regex_match(name, m, suffixed)) {
        family = m[1];
        order = m[2];
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown constellation '" + raw + "'");
    }
    if (order.size() > 6) throw Error(ErrorCode::UnsupportedOrder, "constellation order too large");
    const int M = std::stoi(order);
    return family == "psk" ? make_psk(M) : make_qam(M);
}

Constellation load_constellation(const std::filesystem::path& path, bool normalize) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open constellation file " + path.string());
    std::vector<cplx> pts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = detail::split_tokens(detail::strip_comment(line));
        if (tokens.empty()) continue;
        if (tokens.size() != 2)
            throw Error(ErrorCode::Parse, path.string() + ":" + std::to_string(lineno) +
                                              ": expected 're im', got " + std::to_string(tokens.size()) +
                                              " fields");
        pts.emplace_back(detail::parse_real(tokens[0]), detail::parse_real(tokens[1]));
    }
    Constellation c(std::move(pts), path.filename().string());
    return normalize ? c.normalized() : c;
}

}  // namespace isacaf
