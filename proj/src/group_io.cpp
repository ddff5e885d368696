#include "kk/group_io.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

namespace kk {

namespace {

struct ParsedLines {
  std::vector<std::string> body;
  std::vector<std::pair<int, std::string>> labels;
};

ParsedLines split_lines(const std::string& text) {
  ParsedLines out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream probe(line);
    std::string first;
    if (!(probe >> first)) continue;  // blank
    if (first == "#") continue;       // comment
    if (first == "label") {
      int idx;
      std::string name;
      if (!(probe >> idx >> name)) throw IoError("malformed label line: " + line);
      out.labels.emplace_back(idx, name);
      continue;
    }
    out.body.push_back(line);
  }
  return out;
}

}  // namespace

std::vector<int> parse_cycles(const std::string& line, int degree) {
  std::vector<int> image(degree);
  std::iota(image.begin(), image.end(), 0);
  std::size_t pos = 0;
  bool saw_cycle = false;
  while (pos < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[pos]))) {
      ++pos;
      continue;
    }
    if (line[pos] != '(') throw IoError("expected '(' in cycle notation: " + line);
    const std::size_t close = line.find(')', pos);
    if (close == std::string::npos) throw IoError("unbalanced cycle: " + line);
    std::istringstream body(line.substr(pos + 1, close - pos - 1));
    std::vector<int> cyc;
    int v;
    while (body >> v) {
      if (v < 0 || v >= degree) throw IoError("cycle point out of range: " + line);
      cyc.push_back(v);
    }
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      image[cyc[i]] = cyc[(i + 1) % cyc.size()];
    }
    pos = close + 1;
    saw_cycle = true;
  }
  if (!saw_cycle) throw IoError("no cycles found in line: " + line);
  return image;
}

GroupPtr parse_group_text(const std::string& text, std::size_t max_cells) {
  auto lines = split_lines(text);
  if (lines.body.empty()) throw IoError("empty group description");

  std::istringstream header(lines.body[0]);
  std::string kind;
  int n = 0;
  if (!(header >> kind >> n) || n <= 0) {
    throw IoError("bad header line: " + lines.body[0]);
  }

  GroupPtr g;
  std::vector<std::string> labels;
  if (!lines.labels.empty()) {
    labels.assign(n, "");
    for (auto& [idx, name] : lines.labels) {
      if (idx < 0) throw IoError("label index out of range");
      // For perm input the group order is unknown until closure; sizes are
      // rechecked below.
      if (idx >= static_cast<int>(labels.size())) labels.resize(idx + 1, "");
      labels[idx] = name;
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i].empty()) labels[i] = std::to_string(i);
    }
  }

  if (kind == "table") {
    if (static_cast<std::size_t>(n) * n > max_cells) {
      throw SizeCap("table exceeds the cell cap");
    }
    if (lines.body.size() != static_cast<std::size_t>(n) + 1) {
      throw IoError("expected " + std::to_string(n) + " table rows");
    }
    std::vector<std::vector<int>> table(n);
    for (int i = 0; i < n; ++i) {
      std::istringstream row(lines.body[i + 1]);
      int v;
      while (row >> v) table[i].push_back(v);
      if (table[i].size() != static_cast<std::size_t>(n)) {
        throw IoError("row " + std::to_string(i) + " has wrong length");
      }
    }
    if (!labels.empty() && labels.size() != static_cast<std::size_t>(n)) {
      throw IoError("label index out of range for table group");
    }
    g = FiniteGroup::from_table(table, std::move(labels));
  } else if (kind == "perm") {
    std::vector<std::vector<int>> gens;
    for (std::size_t i = 1; i < lines.body.size(); ++i) {
      gens.push_back(parse_cycles(lines.body[i], n));
    }
    if (gens.empty()) gens.push_back(parse_cycles("()", n));
    g = FiniteGroup::from_permutations(n, gens, max_cells);
    if (!labels.empty()) {
      if (labels.size() > static_cast<std::size_t>(g->order())) {
        throw IoError("label index out of range for generated group");
      }
      labels.resize(g->order());
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i].empty()) labels[i] = std::to_string(i);
      }
      // Rebuild with labels attached.
      std::vector<int> flat(static_cast<std::size_t>(g->order()) * g->order());
      for (int x = 0; x < g->order(); ++x) {
        for (int y = 0; y < g->order(); ++y) {
          flat[static_cast<std::size_t>(x) * g->order() + y] = g->mul(x, y);
        }
      }
      g = FiniteGroup::trusted(std::move(flat), g->order(), std::move(labels));
    }
  } else {
    throw IoError("unknown group format: " + kind);
  }
  return g;
}

GroupPtr read_group_file(const std::string& path, std::size_t max_cells) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read group file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_group_text(buf.str(), max_cells);
}

std::string write_group_table(const FiniteGroup& g) {
  std::ostringstream out;
  out << "table " << g.order() << "\n";
  for (int x = 0; x < g.order(); ++x) {
    for (int y = 0; y < g.order(); ++y) {
      if (y) out << ' ';
      out << g.mul(x, y);
    }
    out << "\n";
  }
  if (g.has_labels()) {
    for (int x = 0; x < g.order(); ++x) {
      out << "label " << x << ' ' << g.label(x) << "\n";
    }
  }
  return out.str();
}

std::vector<int> parse_element_list(const std::string& text) {
  std::vector<int> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    try {
      std::size_t used = 0;
      const int v = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad element list entry: " + token);
    }
  }
  return out;
}

}  // namespace kk
