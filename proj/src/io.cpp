#include "tredkit/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "tredkit/errors.hpp"

namespace tredkit {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

SignedDigraph parse_edge_list(std::string_view text) {
  SignedDigraph::Builder b;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() == 1) {
      b.add_node(std::string(tok[0]));
      continue;
    }
    if (tok.size() == 2) throw ParseError(line_no, "missing sign");
    Sign label;
    if (tok[2] == "+")
      label = Sign::Pos;
    else if (tok[2] == "-")
      label = Sign::Neg;
    else
      throw ParseError(line_no, "sign must be + or -, got '" + std::string(tok[2]) + "'");
    bool critical = false;
    Weight w = kUnitWeight;
    for (std::size_t i = 3; i < tok.size(); ++i) {
      if (tok[i] == "crit") {
        critical = true;
      } else if (tok[i].starts_with("w=")) {
        try {
          w = Weight::parse(tok[i].substr(2));
        } catch (const DomainError& e) {
          throw ParseError(line_no, e.what());
        }
      } else {
        throw ParseError(line_no, "unexpected token '" + std::string(tok[i]) + "'");
      }
    }
    NodeId u = b.add_node(std::string(tok[0]));
    NodeId v = b.add_node(std::string(tok[1]));
    b.add_arc(u, v, label, w, critical);
  }
  return std::move(b).build();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("no such file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SignedDigraph load_edge_list(const std::filesystem::path& path) { return parse_edge_list(read_file(path)); }

std::optional<TextFormat> parse_format(std::string_view name) {
  if (name == "edges") return TextFormat::Edges;
  if (name == "tsv") return TextFormat::Tsv;
  if (name == "dot") return TextFormat::Dot;
  if (name == "json") return TextFormat::Json;
  return std::nullopt;
}

std::string to_edge_list(const SignedDigraph& g, std::span<const ArcId> arcs, bool tabs) {
  const char sep = tabs ? '\t' : ' ';
  // Would the arc lines alone reproduce node numbering?
  std::vector<char> seen(g.node_count(), 0);
  NodeId next = 0;
  bool in_order = true;
  for (ArcId a : arcs) {
    for (NodeId v : {g.arc(a).src, g.arc(a).dst}) {
      if (seen[v]) continue;
      seen[v] = 1;
      in_order = in_order && v == next;
      ++next;
    }
  }
  in_order = in_order && next == g.node_count();
  std::string out;
  if (!in_order)
    for (NodeId v = 0; v < g.node_count(); ++v) out += g.name(v) + "\n";
  for (ArcId a : arcs) {
    const Arc& arc = g.arc(a);
    out += g.name(arc.src);
    out += sep;
    out += g.name(arc.dst);
    out += sep;
    out += sign_char(arc.label);
    if (arc.critical) {
      out += sep;
      out += "crit";
    }
    if (arc.weight != kUnitWeight) {
      out += sep;
      out += "w=" + arc.weight.to_string();
    }
    out += '\n';
  }
  return out;
}

std::string to_edge_list(const SignedDigraph& g, bool tabs) { return to_edge_list(g, g.all_arcs(), tabs); }

std::string to_dot(const SignedDigraph& g, std::span<const ArcId> arcs) {
  std::string out = "digraph {\n";
  for (NodeId v = 0; v < g.node_count(); ++v) out += "  " + quoted(g.name(v)) + ";\n";
  for (ArcId a : arcs) {
    const Arc& arc = g.arc(a);
    out += "  " + quoted(g.name(arc.src)) + " -> " + quoted(g.name(arc.dst));
    std::vector<std::string> attrs;
    if (arc.label == Sign::Neg) attrs.push_back("arrowhead=tee");
    if (arc.critical) attrs.push_back("style=bold");
    if (arc.weight != kUnitWeight) attrs.push_back("label=" + quoted(arc.weight.to_string()));
    if (!attrs.empty()) {
      out += " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) out += (i ? ", " : "") + attrs[i];
      out += "]";
    }
    out += ";\n";
  }
  return out + "}\n";
}

std::string to_dot(const SignedDigraph& g) { return to_dot(g, g.all_arcs()); }

Json arc_json(const SignedDigraph& g, ArcId a) {
  const Arc& arc = g.arc(a);
  return Json{{"src", g.name(arc.src)},
              {"dst", g.name(arc.dst)},
              {"label", std::string(1, sign_char(arc.label))},
              {"critical", arc.critical},
              {"weight", arc.weight.to_string()}};
}

Json graph_json(const SignedDigraph& g, std::span<const ArcId> arcs) {
  Json nodes = Json::array();
  for (NodeId v = 0; v < g.node_count(); ++v) nodes.push_back(g.name(v));
  Json list = Json::array();
  for (ArcId a : arcs) list.push_back(arc_json(g, a));
  return Json{{"nodes", nodes}, {"arcs", list}};
}

Json result_json(const SignedDigraph& g, const ReductionResult& r) {
  Json j;
  j["algorithm"] = r.algorithm;
  j["label_aware"] = r.label_aware;
  j["verified"] = r.verified;
  j["kept"] = r.stats.kept_count;
  j["total"] = r.stats.total_count;
  j["deleted"] = r.deleted.size();
  j["R"] = r.stats.redundancy;
  j["lower_bound"] = r.stats.lower_bound ? Json(*r.stats.lower_bound) : Json(nullptr);
  j["kept_weight"] = r.kept_weight.to_string();
  Json aug = Json::array();
  for (ArcId a : r.augmentation) aug.push_back(arc_json(g, a));
  j["augmentation"] = aug;
  Json diag = Json::object();
  for (const auto& [k, v] : r.diagnostics) diag[k] = v;
  j["diagnostics"] = diag;
  j["graph"] = graph_json(g, r.kept);
  return j;
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tredkit
