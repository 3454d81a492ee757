// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace cli::plot {

inline constexpr double kHeatmapFloorDb = -80.0;

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
};

/// RGB raster with a 5x7 bitmap font (upper-case ASCII, digits, common
/// punctuation; lower case is drawn as upper case).
class Canvas {
public:
    Canvas(int width, int height, Rgb background = {255, 255, 255});

    int width() const noexcept { return w_; }
    int height() const noexcept { return h_; }
    void set(int x, int y, Rgb c);
    void fill_rect(int x0, int y0, int x1, int y1, Rgb c);
    void line(int x0, int y0, int x1, int y1, Rgb c, int thickness = 1);
    void text(int x, int y, const std::string& s, Rgb c, int scale = 1);
    void text_vertical(int x, int y, const std::string& s, Rgb c, int scale = 1);
    static int text_width(const std::string& s, int scale = 1);

    void save_png(const std::filesystem::path& path) const;

private:
    int w_, h_;
    std::vector<std::uint8_t> px_;
};

/// Heatmap of a row-major N x N grid (rows = delay k, columns = Doppler q),
/// in dB relative to cell (0,0), clipped at kHeatmapFloorDb.
void heatmap(const std::filesystem::path& path, std::size_t n, const std::vector<double>& values,
             const std::string& title);

struct Series {
    std::string label;
    Rgb color;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = false;
};

void line_plot(const std::filesystem::path& path, const std::string& title, const std::string& xlabel,
               const std::string& ylabel, const std::vector<Series>& series);

}  // namespace cli::plot
