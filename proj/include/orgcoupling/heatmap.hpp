#pragma once

#include "orgcoupling/coupling.hpp"

#include <string>

namespace orgcoupling {

// Service-by-service grid, cells colored by coupling band with the value
// printed at two decimals; the diagonal stays blank. Output is a
// self-contained SVG document, byte-stable for identical input.
std::string render_heatmap(const CouplingMatrix& matrix);

void write_heatmap_file(const std::string& path, const CouplingMatrix& matrix);

}  // namespace orgcoupling
