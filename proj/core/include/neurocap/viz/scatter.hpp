#pragma once

#include <filesystem>
#include <string>

#include "neurocap/viz/projection.hpp"

namespace neurocap::viz {

/// '#'-prefixed diagnostics, an `x<TAB>y<TAB>label` header, then one row per
/// point with 17 significant digits. Only the first two columns are written.
std::string format_scatter_tsv(const ProjectionResult& result);
ProjectionResult parse_scatter_tsv(const std::string& text);

void export_scatter(const ProjectionResult& result, const std::filesystem::path& path);
ProjectionResult import_scatter(const std::filesystem::path& path);

/// Static scatter plot with one <circle> per point, colored by label.
std::string render_scatter_svg(const ProjectionResult& result);
void export_scatter_svg(const ProjectionResult& result, const std::filesystem::path& path);

}  // namespace neurocap::viz
