#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pathpair/graph.hpp"
#include "pathpair/pairing.hpp"

namespace pathpair::io {

using nlohmann::json;

// Graph: {"n": int, "edges": [[u,v],...], "labels": optional}. Labels are
//   {"kind": "product", "factors": [|G|,|H|], "coords": [[g,h],...]} or
//   {"kind": "class", "tags": [[class,index],...]}.
json to_json(const Graph& g);
Graph graph_from_json(const json& j);

// Pairing: {"pairs": [[x,y],...]}. Loading does not validate the pairing
// invariants so that `verify` can report them.
json to_json(std::span<const TerminalPair> pairs);
std::vector<TerminalPair> pairs_from_json(const json& j);

enum class RouteEncoding { kPlain, kDelta };

// Path system: {"routes": [[v0,v1,...],...]}. The delta encoding stores the
// first vertex followed by signed differences and adds "encoding": "delta".
json to_json(const PathSystem& system, RouteEncoding encoding = RouteEncoding::kPlain);
PathSystem path_system_from_json(const json& j);

json to_json(const VerifyReport& report);

std::string to_dot(const Graph& g, std::string_view name = "G");

// One "u v" line per edge, preceded by a "# n <count>" header.
std::string to_edge_list(const Graph& g);
Graph graph_from_edge_list(std::string_view text);

// Parses JSON text; failures raise Error(kParse) carrying the byte offset.
json parse(std::string_view text, std::string_view what);

// Whole-file helpers. Paths ending in ".gz" are written gzip-compressed;
// reading detects gzip by its magic bytes.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);
std::string gzip_compress(std::string_view data);
std::string gzip_decompress(std::string_view data);
bool is_gzip(std::string_view data);

}  // namespace pathpair::io
