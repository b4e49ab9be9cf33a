#pragma once

#include "skeletree/feasibility.hpp"
#include "skeletree/inverse.hpp"
#include "skeletree/skeleton.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace skeletree {

/// Unreadable file or malformed document.
class IoError : public Error {
public:
    using Error::Error;
};

using Json = nlohmann::json;

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

/// Parses text as JSON, raising IoError instead of the library's exception.
Json parse_json(std::string_view text);
/// Two-space indented, trailing newline. Doubles use the shortest
/// representation that reads back to the same value.
std::string dump_json(const Json& j);

/// {"vertices": [[x, y], ...]}
Json polygon_to_json(const Polygon& p);
/// Clockwise input is reversed and reported through `warnings`.
Polygon polygon_from_json(const Json& j, const ToleranceConfig& cfg = {}, std::vector<std::string>* warnings = nullptr);

/// {"nodes": [{"id","x","y","t"}], "edges": [{"a","b","defs"}], "leaf_map": [...]}
Json skeleton_to_json(const SkeletonGraph& s);
SkeletonGraph skeleton_from_json(const Json& j);

Json result_to_json(const RibbonTree& tree, const ReconstructionResult& r);
/// Array of result objects.
Json results_to_json(const RibbonTree& tree, std::span<const ReconstructionResult> rs);
Json feasibility_to_json(const RibbonTree& tree, const FeasibilityReport& r);

/// Polygon as a closed black path, skeleton edges in red.
std::string skeleton_svg(const Polygon& p, const SkeletonGraph* s = nullptr);
/// Reconstructed polygon with the embedded tree drawn over it.
std::string reconstruction_svg(const RibbonTree& tree, const ReconstructionResult& r);

} // namespace skeletree
