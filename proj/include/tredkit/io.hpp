#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tredkit/graph.hpp"
#include "tredkit/reduction.hpp"

namespace tredkit {

inline constexpr std::string_view kJsonSchema = "tredkit/1";

using Json = nlohmann::ordered_json;

/// Edge-list text: one arc per line, `<src> <dst> <+|-> [crit] [w=<decimal>]`;
/// a line holding a single name declares a node; `#` starts a comment. Node
/// indices follow first appearance. Throws ParseError (1-based lines).
SignedDigraph parse_edge_list(std::string_view text);

/// Reads a whole file. Throws IoError ("no such file: ...").
std::string read_file(const std::filesystem::path& path);
SignedDigraph load_edge_list(const std::filesystem::path& path);

enum class TextFormat { Edges, Tsv, Dot, Json };
/// Accepts `edges`, `tsv`, `dot`, `json`.
std::optional<TextFormat> parse_format(std::string_view name);

/// The listed arcs of g in edge-list form (tab-separated when `tabs`). Node
/// declarations are emitted first when loading the arc lines alone would
/// number the nodes differently, so load(save(g)) == g.
std::string to_edge_list(const SignedDigraph& g, std::span<const ArcId> arcs, bool tabs = false);
std::string to_edge_list(const SignedDigraph& g, bool tabs = false);

/// DOT digraph; inhibitory arcs get `arrowhead=tee`, critical arcs are bold.
std::string to_dot(const SignedDigraph& g, std::span<const ArcId> arcs);
std::string to_dot(const SignedDigraph& g);

Json arc_json(const SignedDigraph& g, ArcId a);
Json graph_json(const SignedDigraph& g, std::span<const ArcId> arcs);
/// Summary of a reduction with the kept arcs spelled out.
Json result_json(const SignedDigraph& g, const ReductionResult& r);

/// FNV-1a 64-bit digest as 16 hex digits.
std::string digest(std::string_view bytes);

}  // namespace tredkit
