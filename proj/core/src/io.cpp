#include "pathpair/io.hpp"

#include <zlib.h>

#include <cstdint>
#include <fstream>
#include <sstream>

#include "pathpair/error.hpp"

namespace pathpair::io {

namespace {

[[noreturn]] void parse_fail(const std::string& message) {
  throw Error(ErrorCode::kParse, message);
}

Vertex as_vertex(const json& v, const char* where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0 ||
      v.get<std::int64_t>() > std::int64_t{UINT32_MAX}) {
    parse_fail(std::string(where) + ": expected a non-negative vertex index, got " + v.dump());
  }
  return static_cast<Vertex>(v.get<std::int64_t>());
}

std::pair<Vertex, Vertex> as_pair(const json& v, const char* where) {
  if (!v.is_array() || v.size() != 2) {
    parse_fail(std::string(where) + ": expected a two-element array, got " + v.dump());
  }
  return {as_vertex(v[0], where), as_vertex(v[1], where)};
}

}  // namespace

json to_json(const Graph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  json out = {{"n", g.num_vertices()}, {"edges", std::move(edges)}};
  if (g.has_labels()) {
    if (g.product_shape()) {
      json coords = json::array();
      for (const auto& l : g.labels()) {
        const auto& p = std::get<ProductVertex>(l);
        coords.push_back({p.g, p.h});
      }
      out["labels"] = {{"kind", "product"},
                       {"factors", {g.product_shape()->g_order, g.product_shape()->h_order}},
                       {"coords", std::move(coords)}};
    } else {
      json tags = json::array();
      for (const auto& l : g.labels()) {
        if (const auto* t = std::get_if<ClassTag>(&l)) {
          tags.push_back({t->cls, t->index});
        } else {
          tags.push_back(nullptr);
        }
      }
      out["labels"] = {{"kind", "class"}, {"tags", std::move(tags)}};
    }
  }
  return out;
}

Graph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
    parse_fail("graph: expected an object with \"n\" and \"edges\"");
  }
  const std::size_t n = as_vertex(j["n"], "graph.n");
  if (!j["edges"].is_array()) parse_fail("graph.edges: expected an array");
  std::vector<Edge> edges;
  edges.reserve(j["edges"].size());
  for (const auto& e : j["edges"]) {
    auto [u, v] = as_pair(e, "graph.edges");
    edges.push_back({u, v});
  }
  std::vector<Label> labels;
  std::optional<ProductShape> shape;
  if (j.contains("labels") && !j["labels"].is_null()) {
    const auto& l = j["labels"];
    const std::string kind = l.value("kind", "");
    if (kind == "product") {
      auto [ng, nh] = as_pair(l.at("factors"), "labels.factors");
      shape = ProductShape{ng, nh};
      if (static_cast<std::size_t>(ng) * nh != n) parse_fail("labels.factors: product != n");
      labels.reserve(n);
      for (Vertex v = 0; v < n; ++v) {
        const auto expected = product_coords(v, nh);
        if (l.contains("coords")) {
          auto [g, h] = as_pair(l["coords"].at(v), "labels.coords");
          if (g != expected.g || h != expected.h) {
            parse_fail("labels.coords: vertex " + std::to_string(v) +
                       " does not follow the g*|H|+h numbering");
          }
        }
        labels.emplace_back(expected);
      }
    } else if (kind == "class") {
      if (!l.contains("tags") || l["tags"].size() != n) parse_fail("labels.tags: need n entries");
      for (const auto& t : l["tags"]) {
        if (t.is_null()) {
          labels.emplace_back(std::monostate{});
        } else {
          auto [c, i] = as_pair(t, "labels.tags");
          labels.emplace_back(ClassTag{c, i});
        }
      }
    } else {
      parse_fail("labels.kind: expected \"product\" or \"class\"");
    }
  }
  try {
    return Graph::from_edges(n, std::move(edges), std::move(labels), shape);
  } catch (const Error& e) {
    parse_fail(std::string("graph: ") + e.what());
  }
}

json to_json(std::span<const TerminalPair> pairs) {
  json list = json::array();
  for (const auto& p : pairs) list.push_back({p.first, p.second});
  return {{"pairs", std::move(list)}};
}

std::vector<TerminalPair> pairs_from_json(const json& j) {
  if (!j.is_object() || !j.contains("pairs") || !j["pairs"].is_array()) {
    parse_fail("pairing: expected {\"pairs\": [[x,y],...]}");
  }
  std::vector<TerminalPair> pairs;
  for (const auto& p : j["pairs"]) {
    auto [x, y] = as_pair(p, "pairs");
    pairs.push_back({x, y});
  }
  return pairs;
}

json to_json(const PathSystem& system, RouteEncoding encoding) {
  json routes = json::array();
  for (const auto& route : system.routes) {
    json r = json::array();
    if (encoding == RouteEncoding::kPlain) {
      for (Vertex v : route.vertices) r.push_back(v);
    } else {
      std::int64_t prev = 0;
      for (std::size_t i = 0; i < route.vertices.size(); ++i) {
        const std::int64_t v = route.vertices[i];
        r.push_back(i == 0 ? v : v - prev);
        prev = v;
      }
    }
    routes.push_back(std::move(r));
  }
  json out = {{"routes", std::move(routes)}};
  if (encoding == RouteEncoding::kDelta) out["encoding"] = "delta";
  return out;
}

PathSystem path_system_from_json(const json& j) {
  if (!j.is_object() || !j.contains("routes") || !j["routes"].is_array()) {
    parse_fail("path system: expected {\"routes\": [[v0,v1,...],...]}");
  }
  const std::string encoding = j.value("encoding", "plain");
  if (encoding != "plain" && encoding != "delta") parse_fail("path system: unknown encoding");
  const bool delta = encoding == "delta";
  PathSystem system;
  system.routes.reserve(j["routes"].size());
  for (const auto& r : j["routes"]) {
    if (!r.is_array()) parse_fail("path system: each route must be an array");
    Path path;
    path.vertices.reserve(r.size());
    std::int64_t prev = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (!r[i].is_number_integer()) parse_fail("path system: non-integer vertex " + r[i].dump());
      std::int64_t v = r[i].get<std::int64_t>();
      if (delta && i > 0) v += prev;
      if (v < 0 || v > std::int64_t{UINT32_MAX}) parse_fail("path system: vertex out of range");
      path.vertices.push_back(static_cast<Vertex>(v));
      prev = v;
    }
    system.routes.push_back(std::move(path));
  }
  return system;
}

json to_json(const VerifyReport& report) {
  json failures = json::array();
  json counts = json::object();
  for (const auto& f : report.failures) {
    json entry = {{"kind", to_string(f.kind)}, {"routes", f.routes}, {"detail", f.detail}};
    if (f.edge) entry["edge"] = {f.edge->u, f.edge->v};
    failures.push_back(std::move(entry));
    counts[to_string(f.kind)] = counts.value(to_string(f.kind), 0) + 1;
  }
  return {{"ok", report.ok},
          {"routes_checked", report.routes_checked},
          {"edges_used", report.edges_used},
          {"failure_counts", std::move(counts)},
          {"failures", std::move(failures)}};
}

std::string to_dot(const Graph& g, std::string_view name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    out << "  " << v;
    if (g.has_labels()) {
      if (const auto* p = std::get_if<ProductVertex>(&g.label(v))) {
        out << " [label=\"(" << p->g << "," << p->h << ")\"]";
      } else if (const auto* t = std::get_if<ClassTag>(&g.label(v))) {
        out << " [label=\"" << t->cls << ":" << t->index << "\"]";
      }
    }
    out << ";\n";
  }
  for (const auto& e : g.edges()) out << "  " << e.u << " -- " << e.v << ";\n";
  out << "}\n";
  return out.str();
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "# n " << g.num_vertices() << "\n";
  for (const auto& e : g.edges()) out << e.u << " " << e.v << "\n";
  return out.str();
}

Graph graph_from_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<std::size_t> declared;
  std::vector<Edge> edges;
  std::size_t max_vertex = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    if (line[0] == '#') {
      std::string hash, key;
      std::size_t value = 0;
      if (fields >> hash >> key >> value && key == "n") declared = value;
      continue;
    }
    std::int64_t u = -1, v = -1;
    if (!(fields >> u >> v) || u < 0 || v < 0) {
      parse_fail("edge list line " + std::to_string(line_no) + ": expected \"u v\"");
    }
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    max_vertex = std::max<std::size_t>(max_vertex, static_cast<std::size_t>(std::max(u, v)) + 1);
  }
  try {
    return Graph::from_edges(declared.value_or(max_vertex), std::move(edges));
  } catch (const Error& e) {
    parse_fail(std::string("edge list: ") + e.what());
  }
}

json parse(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string(what) + ": " + e.what() + " (byte " +
                                       std::to_string(e.byte) + ")");
  }
}

bool is_gzip(std::string_view data) {
  return data.size() >= 2 && static_cast<unsigned char>(data[0]) == 0x1f &&
         static_cast<unsigned char>(data[1]) == 0x8b;
}

std::string gzip_compress(std::string_view data) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw Error(ErrorCode::kInvalidArgument, "gzip: deflateInit2 failed");
  }
  std::string out;
  out.resize(deflateBound(&zs, static_cast<uLong>(data.size())) + 32);
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw Error(ErrorCode::kInvalidArgument, "gzip: deflate failed");
  return out;
}

std::string gzip_decompress(std::string_view data) {
  z_stream zs{};
  if (inflateInit2(&zs, 15 + 32) != Z_OK) throw Error(ErrorCode::kParse, "gzip: init failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  std::string out;
  char buffer[1 << 16];
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    zs.next_out = reinterpret_cast<Bytef*>(buffer);
    zs.avail_out = sizeof(buffer);
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw Error(ErrorCode::kParse, "gzip: corrupt stream");
    }
    out.append(buffer, sizeof(buffer) - zs.avail_out);
  }
  inflateEnd(&zs);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string data = buffer.str();
  return is_gzip(data) ? gzip_decompress(data) : data;
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0) {
    const auto packed = gzip_compress(data);
    out.write(packed.data(), static_cast<std::streamsize>(packed.size()));
  } else {
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
  }
}

}  // namespace pathpair::io
