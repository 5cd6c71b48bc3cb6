#include "orgcoupling/heatmap.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace orgcoupling {

namespace {

const char* band_color(CouplingBand band) {
    switch (band) {
        case CouplingBand::VeryHigh: return "#d7191c";   // red
        case CouplingBand::High: return "#fdae61";       // orange
        case CouplingBand::Loose: return "#ffffbf";      // yellow
        case CouplingBand::VeryLoose: return "#a6d96a";  // green
    }
    return "#ffffff";
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_heatmap(const CouplingMatrix& matrix) {
    if (matrix.services.empty()) throw EmptyMatrix("heatmap needs a non-empty matrix");

    const int cell_w = 96;
    const int cell_h = 40;
    std::size_t longest = 0;
    for (const auto& service : matrix.services) longest = std::max(longest, service.size());
    const int label_px = 12 + static_cast<int>(longest) * 8;
    const int left = label_px;
    const int top = label_px;
    const int n = static_cast<int>(matrix.size());
    const int width = left + n * cell_w + 8;
    const int height = top + n * cell_h + 8;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
        << "\" font-family=\"monospace\">\n";

    for (int j = 0; j < n; ++j) {
        const int cx = left + j * cell_w + cell_w / 2;
        svg << "  <text x=\"" << cx << "\" y=\"" << top - 8
            << "\" font-size=\"12\" text-anchor=\"start\" transform=\"rotate(-60 "
            << cx << ' ' << top - 8 << ")\">" << xml_escape(matrix.services[j])
            << "</text>\n";
    }
    for (int i = 0; i < n; ++i) {
        svg << "  <text x=\"" << left - 8 << "\" y=\"" << top + i * cell_h + cell_h / 2 + 4
            << "\" font-size=\"12\" text-anchor=\"end\">" << xml_escape(matrix.services[i])
            << "</text>\n";
    }

    char label[64];
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int x = left + j * cell_w;
            const int y = top + i * cell_h;
            if (i == j) {
                svg << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell_w
                    << "\" height=\"" << cell_h << "\" fill=\"#f0f0f0\" stroke=\"#ffffff\"/>\n";
                continue;
            }
            const CouplingBand band = matrix.bands[i][j];
            svg << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell_w
                << "\" height=\"" << cell_h << "\" fill=\"" << band_color(band)
                << "\" stroke=\"#ffffff\"/>\n";
            std::snprintf(label, sizeof(label), "%.2f", matrix.values[i][j]);
            const char* text_color = band == CouplingBand::VeryHigh ? "#ffffff" : "#000000";
            svg << "  <text x=\"" << x + cell_w / 2 << "\" y=\"" << y + cell_h / 2 + 4
                << "\" font-size=\"11\" text-anchor=\"middle\" fill=\"" << text_color
                << "\">" << label << "</text>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_heatmap_file(const std::string& path, const CouplingMatrix& matrix) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write heatmap: " + path);
    out << render_heatmap(matrix);
}

}  // namespace orgcoupling
