// SPDX-License-Identifier: Apache-2.0
#include "plot.hpp"

#include "handles.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <utility>

namespace cli::plot {

namespace {

struct Glyph {
    char c;
    std::array<std::uint8_t, 7> rows;  // 5 bits each, MSB on the left
};

constexpr Glyph kFont[] = {
    {' ', {0, 0, 0, 0, 0, 0, 0}},
    {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}},
    {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}},
    {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}},
    {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}},
    {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
    {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}},
    {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
    {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}},
    {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
    {'A', {0x0E, 0x11, 0x11, 0x11, 0x1F, 0x11, 0x11}},
    {'B', {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E}},
    {'C', {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E}},
    {'D', {0x1C, 0x12, 0x11, 0x11, 0x11, 0x12, 0x1C}},
    {'E', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}},
    {'F', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10}},
    {'G', {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F}},
    {'H', {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
    {'I', {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'J', {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C}},
    {'K', {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11}},
    {'L', {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F}},
    {'M', {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11}},
    {'N', {0x11, 0x11, 0x19, 0x15, 0x13, 0x11, 0x11}},
    {'O', {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}},
    {'P', {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10}},
    {'Q', {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D}},
    {'R', {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11}},
    {'S', {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E}},
    {'T', {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}},
    {'U', {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}},
    {'V', {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04}},
    {'W', {0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A}},
    {'X', {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11}},
    {'Y', {0x11, 0x11, 0x11, 0x0A, 0x04, 0x04, 0x04}},
    {'Z', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F}},
    {'-', {0, 0, 0, 0x1F, 0, 0, 0}},
    {'.', {0, 0, 0, 0, 0, 0x0C, 0x0C}},
    {',', {0, 0, 0, 0, 0x0C, 0x04, 0x08}},
    {'(', {0x02, 0x04, 0x08, 0x08, 0x08, 0x04, 0x02}},
    {')', {0x08, 0x04, 0x02, 0x02, 0x02, 0x04, 0x08}},
    {'[', {0x0E, 0x08, 0x08, 0x08, 0x08, 0x08, 0x0E}},
    {']', {0x0E, 0x02, 0x02, 0x02, 0x02, 0x02, 0x0E}},
    {'=', {0, 0, 0x1F, 0, 0x1F, 0, 0}},
    {':', {0, 0x0C, 0x0C, 0, 0x0C, 0x0C, 0}},
    {'/', {0, 0x01, 0x02, 0x04, 0x08, 0x10, 0}},
    {'+', {0, 0x04, 0x04, 0x1F, 0x04, 0x04, 0}},
    {'*', {0, 0x04, 0x15, 0x0E, 0x15, 0x04, 0}},
    {'_', {0, 0, 0, 0, 0, 0, 0x1F}},
    {'|', {0x04, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}},
    {'<', {0x02, 0x04, 0x08, 0x10, 0x08, 0x04, 0x02}},
    {'>', {0x08, 0x04, 0x02, 0x01, 0x02, 0x04, 0x08}},
    {'%', {0x18, 0x19, 0x02, 0x04, 0x08, 0x13, 0x03}},
    {'^', {0x04, 0x0A, 0x11, 0, 0, 0, 0}},
};

const Glyph* glyph(char c) {
    const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (const auto& g : kFont)
        if (g.c == u) return &g;
    return &kFont[0];
}

constexpr int kAdvance = 6;  // 5 columns + 1 spacing

// Piecewise-linear approximation of the viridis map.
Rgb colormap(double t) {
    static constexpr std::array<Rgb, 6> stops = {
        Rgb{68, 1, 84}, Rgb{65, 68, 135}, Rgb{42, 120, 142}, Rgb{34, 168, 132}, Rgb{122, 209, 81}, Rgb{253, 231, 37}};
    t = std::clamp(t, 0.0, 1.0) * static_cast<double>(stops.size() - 1);
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(t), stops.size() - 2);
    const double f = t - static_cast<double>(i);
    auto mix = [f](std::uint8_t a, std::uint8_t b) {
        return static_cast<std::uint8_t>(std::lround(a + (b - a) * f));
    };
    return {mix(stops[i].r, stops[i + 1].r), mix(stops[i].g, stops[i + 1].g), mix(stops[i].b, stops[i + 1].b)};
}

std::string tick_label(double v) {
    if (std::abs(v) < 1e-12) v = 0.0;
    char buf[32];
    if (v != 0.0 && (std::abs(v) >= 1e5 || std::abs(v) < 1e-2))
        std::snprintf(buf, sizeof buf, "%.1e", v);
    else
        std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// Roughly five "nice" ticks spanning [lo, hi].
std::vector<double> nice_ticks(double lo, double hi) {
    const double span = hi - lo;
    if (!(span > 0.0)) return {lo};
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) out.push_back(t);
    return out;
}

constexpr Rgb kBlack{0, 0, 0};
constexpr Rgb kGrey{200, 200, 200};

}  // namespace

Canvas::Canvas(int width, int height, Rgb bg) : w_(width), h_(height), px_(std::size_t(width) * height * 3) {
    fill_rect(0, 0, width - 1, height - 1, bg);
}

void Canvas::set(int x, int y, Rgb c) {
    if (x < 0 || y < 0 || x >= w_ || y >= h_) return;
    auto* p = &px_[(std::size_t(y) * w_ + x) * 3];
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
}

void Canvas::fill_rect(int x0, int y0, int x1, int y1, Rgb c) {
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    for (int y = std::max(0, y0); y <= std::min(h_ - 1, y1); ++y)
        for (int x = std::max(0, x0); x <= std::min(w_ - 1, x1); ++x) set(x, y, c);
}

void Canvas::line(int x0, int y0, int x1, int y1, Rgb c, int thickness) {
    const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
    const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
    const int r = thickness / 2;
    int err = dx + dy;
    while (true) {
        fill_rect(x0 - r, y0 - r, x0 + (thickness - 1 - r), y0 + (thickness - 1 - r), c);
        if (x0 == x1 && y0 == y1) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

int Canvas::text_width(const std::string& s, int scale) {
    return s.empty() ? 0 : (static_cast<int>(s.size()) * kAdvance - 1) * scale;
}

void Canvas::text(int x, int y, const std::string& s, Rgb c, int scale) {
    for (char ch : s) {
        const Glyph* g = glyph(ch);
        for (int row = 0; row < 7; ++row)
            for (int col = 0; col < 5; ++col)
                if (g->rows[row] & (0x10 >> col)) fill_rect(x + col * scale, y + row * scale, x + (col + 1) * scale - 1,
                                                              y + (row + 1) * scale - 1, c);
        x += kAdvance * scale;
    }
}

// Rotated 90 degrees counter-clockwise, reading bottom to top from (x, y).
void Canvas::text_vertical(int x, int y, const std::string& s, Rgb c, int scale) {
    for (char ch : s) {
        const Glyph* g = glyph(ch);
        for (int row = 0; row < 7; ++row)
            for (int col = 0; col < 5; ++col)
                if (g->rows[row] & (0x10 >> col)) {
                    const int px = x + row * scale;
                    const int py = y - col * scale;
                    fill_rect(px, py - scale + 1, px + scale - 1, py, c);
                }
        y -= kAdvance * scale;
    }
}

void Canvas::save_png(const std::filesystem::path& path) const {
    png_image img{};
    img.version = PNG_IMAGE_VERSION;
    img.width = static_cast<png_uint_32>(w_);
    img.height = static_cast<png_uint_32>(h_);
    img.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&img, path.c_str(), 0, px_.data(), 0, nullptr))
        throw Failure(kValidation, "cannot write " + path.string() + ": " + img.message);
}

void heatmap(const std::filesystem::path& path, std::size_t n, const std::vector<double>& values,
             const std::string& title) {
    const int cell = std::max(1, static_cast<int>(512 / n));
    const int side = cell * static_cast<int>(n);
    const int left = 70, top = 40, bar_w = 18, gap = 24;
    Canvas cv(left + side + gap + bar_w + 70, top + side + 50);
    const double ref = values.at(0);

    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t q = 0; q < n; ++q) {
            const double v = values[k * n + q];
            double db = kHeatmapFloorDb;
            if (ref > 0.0 && v > 0.0) db = std::max(kHeatmapFloorDb, 10.0 * std::log10(v / ref));
            const Rgb c = colormap((db - kHeatmapFloorDb) / -kHeatmapFloorDb);
            const int x = left + static_cast<int>(q) * cell;
            const int y = top + static_cast<int>(k) * cell;
            cv.fill_rect(x, y, x + cell - 1, y + cell - 1, c);
        }
    cv.line(left - 1, top - 1, left + side, top - 1, kBlack);
    cv.line(left - 1, top + side, left + side, top + side, kBlack);
    cv.line(left - 1, top - 1, left - 1, top + side, kBlack);
    cv.line(left + side, top - 1, left + side, top + side, kBlack);

    const std::size_t step = n <= 8 ? 1 : n / 4;
    for (std::size_t i = 0; i < n; i += step) {
        const int pos = static_cast<int>(i) * cell + cell / 2;
        const std::string lab = std::to_string(i);
        cv.text(left + pos - Canvas::text_width(lab) / 2, top + side + 6, lab, kBlack);
        cv.text(left - 8 - Canvas::text_width(lab), top + pos - 3, lab, kBlack);
    }
    cv.text(left + side / 2 - Canvas::text_width("DOPPLER Q") / 2, top + side + 22, "Doppler q", kBlack);
    cv.text_vertical(12, top + side / 2 + Canvas::text_width("DELAY K") / 2, "Delay k", kBlack);
    cv.text(left, 12, title, kBlack, 2);

    const int bx = left + side + gap;
    for (int y = 0; y < side; ++y) {
        const double t = 1.0 - static_cast<double>(y) / std::max(1, side - 1);
        cv.fill_rect(bx, top + y, bx + bar_w, top + y, colormap(t));
    }
    for (double db = 0.0; db >= kHeatmapFloorDb; db -= 20.0) {
        const int y = top + static_cast<int>(std::lround((db / kHeatmapFloorDb) * (side - 1)));
        cv.line(bx + bar_w, y, bx + bar_w + 3, y, kBlack);
        cv.text(bx + bar_w + 6, y - 3, tick_label(db), kBlack);
    }
    cv.text(bx - 2, top + side + 22, "dB", kBlack);
    cv.save_png(path);
}

void line_plot(const std::filesystem::path& path, const std::string& title, const std::string& xlabel,
               const std::string& ylabel, const std::vector<Series>& series) {
    const int width = 720, height = 480;
    const int left = 90, right = 20, top = 50, bottom = 60;
    Canvas cv(width, height);
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
    if (ymax == ymin) {
        const double pad = std::max(1.0, std::abs(ymax) * 0.1);
        ymin -= pad;
        ymax += pad;
    } else {
        const double pad = 0.05 * (ymax - ymin);
        ymin -= pad;
        ymax += pad;
    }
    const int pw = width - left - right, ph = height - top - bottom;
    auto px = [&](double x) { return left + static_cast<int>(std::lround((x - xmin) / (xmax - xmin) * pw)); };
    auto py = [&](double y) { return top + ph - static_cast<int>(std::lround((y - ymin) / (ymax - ymin) * ph)); };

    for (double t : nice_ticks(ymin, ymax)) {
        const int y = py(t);
        cv.line(left, y, left + pw, y, kGrey);
        const auto lab = tick_label(t);
        cv.text(left - 8 - Canvas::text_width(lab), y - 3, lab, kBlack);
    }
    for (double t : nice_ticks(xmin, xmax)) {
        const int x = px(t);
        cv.line(x, top, x, top + ph, kGrey);
        const auto lab = tick_label(t);
        cv.text(x - Canvas::text_width(lab) / 2, top + ph + 8, lab, kBlack);
    }
    cv.line(left, top, left, top + ph, kBlack);
    cv.line(left, top + ph, left + pw, top + ph, kBlack);

    for (const auto& s : series) {
        int last_x = 0, last_y = 0;
        bool have_last = false;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i])) {
                have_last = false;
                continue;
            }
            const int x = px(s.x[i]), y = py(s.y[i]);
            if (have_last) cv.line(last_x, last_y, x, y, s.color, 2);
            if (s.markers) cv.fill_rect(x - 3, y - 3, x + 3, y + 3, s.color);
            last_x = x;
            last_y = y;
            have_last = true;
        }
    }

    int legend_w = 0;
    for (const auto& s : series) legend_w = std::max(legend_w, Canvas::text_width(s.label));
    legend_w += 34;
    const int legend_h = static_cast<int>(series.size()) * 14 + 6;
    // corner with the fewest data points under the legend box
    int lx = left + pw - legend_w - 8, ly0 = top + 6;
    std::size_t best = SIZE_MAX;
    for (const auto& [cx, cy] : {std::pair{left + pw - legend_w - 8, top + 6}, std::pair{left + 12, top + 6},
                                 std::pair{left + pw - legend_w - 8, top + ph - legend_h - 2},
                                 std::pair{left + 12, top + ph - legend_h - 2}}) {
        std::size_t hits = 0;
        for (const auto& s : series)
            for (std::size_t i = 0; i + 1 < s.x.size(); ++i) {
                if (!std::isfinite(s.y[i]) || !std::isfinite(s.y[i + 1])) continue;
                for (int t = 0; t <= 32; ++t) {
                    const double f = t / 32.0;
                    const int x = px(s.x[i] + f * (s.x[i + 1] - s.x[i]));
                    const int y = py(s.y[i] + f * (s.y[i + 1] - s.y[i]));
                    if (x >= cx - 4 && x <= cx + legend_w && y >= cy - 4 && y <= cy + legend_h) ++hits;
                }
            }
        if (hits < best) {
            best = hits;
            lx = cx;
            ly0 = cy;
        }
    }
    cv.fill_rect(lx - 4, ly0 - 4, lx + legend_w, ly0 + legend_h - 4, {255, 255, 255});
    cv.line(lx - 4, ly0 - 4, lx + legend_w, ly0 - 4, kGrey);
    cv.line(lx - 4, ly0 + legend_h - 4, lx + legend_w, ly0 + legend_h - 4, kGrey);
    cv.line(lx - 4, ly0 - 4, lx - 4, ly0 + legend_h - 4, kGrey);
    cv.line(lx + legend_w, ly0 - 4, lx + legend_w, ly0 + legend_h - 4, kGrey);
    int ly = ly0;
    for (const auto& s : series) {
        cv.line(lx, ly + 3, lx + 18, ly + 3, s.color, 3);
        cv.text(lx + 26, ly, s.label, kBlack);
        ly += 14;
    }
    cv.text(left, 16, title, kBlack, 2);
    cv.text(left + pw / 2 - Canvas::text_width(xlabel) / 2, height - 24, xlabel, kBlack);
    cv.text_vertical(16, top + ph / 2 + Canvas::text_width(ylabel) / 2, ylabel, kBlack);
    cv.save_png(path);
}

}  // namespace cli::plot
