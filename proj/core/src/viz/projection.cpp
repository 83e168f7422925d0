#include "neurocap/viz/projection.hpp"

#include "neurocap/error.hpp"

namespace neurocap::viz {

std::string_view to_string(Method m) { return m == Method::pca ? "pca" : "tsne"; }

Method method_from_string(std::string_view name) {
    if (name == "pca") return Method::pca;
    if (name == "tsne") return Method::tsne;
    throw ArgumentError("unknown projection method '" + std::string(name) + "'");
}

}  // namespace neurocap::viz
