#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "chemlat/error.hpp"
#include "chemlat/lattice_io.hpp"

namespace chemlat {

Relation parse_relation(std::string_view text) {
  std::vector<std::vector<bool>> cells;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::vector<bool> row;
    for (char ch : line) {
      if (ch == '0' || ch == '1') {
        row.push_back(ch == '1');
      } else if (ch != ' ' && ch != '\t' && ch != '\r') {
        throw InputError("relation line " + std::to_string(line_no) +
                         ": unexpected character '" + std::string(1, ch) + "'");
      }
    }
    if (!row.empty()) cells.push_back(std::move(row));
  }
  return Relation::from_cells(cells);
}

Relation read_relation_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open relation file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_relation(buf.str());
}

std::string format_relation(const Relation& rel) {
  std::string out;
  for (unsigned i = 0; i < rel.n_rows(); ++i) {
    for (unsigned j = 0; j < rel.n_cols(); ++j) {
      if (j) out += ' ';
      out += rel.related(i, j) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<unsigned> parse_uint_list(std::string_view s, const std::string& field) {
  std::vector<unsigned> out;
  while (!s.empty()) {
    const std::size_t comma = s.find(',');
    const std::string_view tok = s.substr(0, comma);
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
      throw ConfigError("expected comma-separated integers, got '" + std::string(tok) + "'",
                        field);
    }
    out.push_back(v);
    s = comma == std::string_view::npos ? std::string_view{} : s.substr(comma + 1);
  }
  return out;
}

}  // namespace

BlockSpec parse_block_spec(std::string_view spec) {
  BlockSpec out;
  bool have_blocks = false;
  while (!spec.empty()) {
    const std::size_t semi = spec.find(';');
    const std::string_view part = spec.substr(0, semi);
    spec = semi == std::string_view::npos ? std::string_view{} : spec.substr(semi + 1);
    if (part == "fill") {
      out.fill = true;
      continue;
    }
    const std::size_t eq = part.find('=');
    const std::string key(part.substr(0, eq));
    if (eq == std::string_view::npos) throw ConfigError("unknown generator option", key);
    const std::string_view value = part.substr(eq + 1);
    if (key == "blocks") {
      out.sizes = parse_uint_list(value, key);
      have_blocks = true;
    } else if (key == "overlap") {
      out.overlap = parse_uint_list(value, key);
    } else {
      throw ConfigError("unknown generator option", key);
    }
  }
  if (!have_blocks) throw ConfigError("generator spec needs blocks=...", "blocks");
  return out;
}

std::string to_dot(const Lattice& lat) {
  std::ostringstream out;
  out << "digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n";
  std::map<int, std::vector<std::size_t>> ranks;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    out << "  n" << i << " [label=\"" << set_label(lat.elements[i]) << "\"];\n";
    ranks[lat.elements[i].size()].push_back(i);
  }
  for (const auto& [rank, ids] : ranks) {
    out << "  { rank=same;";
    for (std::size_t i : ids) out << " n" << i << ';';
    out << " }\n";
  }
  for (const Cover& c : lat.covers) out << "  n" << c.lower << " -> n" << c.upper << ";\n";
  out << "}\n";
  return out.str();
}

namespace {

const char* status_name(OrthoStatus s) {
  switch (s) {
    case OrthoStatus::orthomodular: return "orthomodular";
    case OrthoStatus::law_violated: return "law_violated";
    case OrthoStatus::no_orthocomplementation: return "no_orthocomplementation";
    case OrthoStatus::search_exhausted: return "search_exhausted";
  }
  return "unknown";
}

nlohmann::json labels(const std::vector<RowSet>& sets) {
  auto arr = nlohmann::json::array();
  for (RowSet s : sets) arr.push_back(set_label(s));
  return arr;
}

}  // namespace

nlohmann::json laws_to_json(const Lattice& lat, const LawReport& report) {
  nlohmann::json j;
  j["element_count"] = report.element_count;
  j["elements"] = labels(lat.elements);
  j["cover_count"] = lat.covers.size();
  if (report.distributive.checked) {
    j["distributive"] = report.distributive.distributive;
  } else {
    j["distributive"] = nullptr;
  }
  nlohmann::json witness = {{"distributive", nullptr}, {"orthomodular", nullptr}};
  if (const auto& w = report.distributive.witness) {
    witness["distributive"] = labels({(*w)[0], (*w)[1], (*w)[2]});
  }
  if (const auto& w = report.ortho.witness) {
    witness["orthomodular"] = labels({w->first, w->second});
  }
  j["witness"] = witness;
  j["orthomodular"] = report.ortho.orthomodular();
  j["ortho_status"] = status_name(report.ortho.status);
  nlohmann::json comp = nlohmann::json::object();
  for (std::size_t i = 0; i < report.ortho.complement.size(); ++i) {
    comp[set_label(lat.elements[i])] = set_label(report.ortho.complement[i]);
  }
  j["complement_map"] = comp;
  auto blocks = nlohmann::json::array();
  for (const auto& b : report.blocks) {
    blocks.push_back({{"atoms", labels(b.atoms)}, {"element_count", b.elements.size()}});
  }
  j["blocks"] = blocks;
  j["shared"] = labels(report.shared);
  return j;
}

}  // namespace chemlat
