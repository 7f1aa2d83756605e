#include "ppx/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <map>

#include "ppx/errors.hpp"

namespace ppx {

std::string class_name(ClassTag t) {
  switch (t) {
    case ClassTag::positive:
      return "positive";
    case ClassTag::regular:
      return "regular";
    case ClassTag::unchecked:
      return "unchecked";
  }
  return "unchecked";
}

static ClassTag parse_class(const std::string& s) {
  if (s == "positive") return ClassTag::positive;
  if (s == "regular") return ClassTag::regular;
  if (s == "unchecked") return ClassTag::unchecked;
  throw ParseError("unknown class '" + s + "'");
}

json term_to_json(const Polygraph& p, const Term& t) {
  switch (t->kind) {
    case TermNode::Kind::gen:
      return json{{"gen", p.cells.at(t->cell).id}};
    case TermNode::Kind::comp:
      return json{{"comp", json::array({term_to_json(p, t->left), term_to_json(p, t->right), t->k})}};
    case TermNode::Kind::bnd:
      return json{{"bnd", json::array({term_to_json(p, t->left), t->k, sign_str(t->sign)})}};
  }
  return {};
}

static Term parse_term(const json& j, const std::map<int, int>& index) {
  if (!j.is_object() || j.size() != 1) throw ParseError("term must be an object with one key");
  if (j.contains("gen")) {
    const int id = j.at("gen").get<int>();
    auto it = index.find(id);
    if (it == index.end()) throw ParseError("dangling reference to cell id " + std::to_string(id));
    return gen(it->second);
  }
  if (j.contains("comp")) {
    const auto& a = j.at("comp");
    if (!a.is_array() || a.size() != 3) throw ParseError("comp takes [left, right, k]");
    const int k = a[2].get<int>();
    if (k < 0) throw ParseError("negative composition level");
    return comp(parse_term(a[0], index), parse_term(a[1], index), k);
  }
  if (j.contains("bnd")) {
    const auto& a = j.at("bnd");
    if (!a.is_array() || a.size() != 3) throw ParseError("bnd takes [term, k, sign]");
    const int k = a[1].get<int>();
    const std::string s = a[2].get<std::string>();
    if (k < 0) throw ParseError("negative boundary level");
    if (s != "+" && s != "-") throw ParseError("sign must be '+' or '-'");
    return bnd(parse_term(a[0], index), k, s == "+" ? Sign::plus : Sign::minus);
  }
  throw ParseError("unknown term constructor");
}

Term term_from_json(const Polygraph& p, const json& j) {
  std::map<int, int> index;
  for (int i = 0; i < p.size(); ++i) index[p.cells[i].id] = i;
  return parse_term(j, index);
}

json polygraph_to_json(const Polygraph& p) {
  json cells = json::array();
  for (const auto& c : p.cells) {
    json o{{"id", c.id}, {"dim", c.dim}};
    if (!c.name.empty()) o["name"] = c.name;
    if (c.dim > 0) {
      o["src"] = term_to_json(p, c.src);
      o["tgt"] = term_to_json(p, c.tgt);
    }
    cells.push_back(std::move(o));
  }
  return json{{"class", class_name(p.tag)}, {"cells", std::move(cells)}};
}

Polygraph polygraph_from_json(const json& j) {
  try {
    Polygraph p;
    if (j.contains("class")) p.tag = parse_class(j.at("class").get<std::string>());
    const auto& cells = j.at("cells");
    if (!cells.is_array()) throw ParseError("cells must be an array");
    std::map<int, int> index;
    for (const auto& c : cells) {
      Cell cell;
      cell.id = c.at("id").get<int>();
      cell.dim = c.at("dim").get<int>();
      if (cell.dim < 0) throw ParseError("negative dimension");
      if (c.contains("name")) cell.name = c.at("name").get<std::string>();
      if (!index.emplace(cell.id, p.size()).second) throw ParseError("duplicate cell id " + std::to_string(cell.id));
      p.cells.push_back(std::move(cell));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto& c = cells[i];
      Cell& cell = p.cells[i];
      if (cell.dim == 0) {
        if (c.contains("src") || c.contains("tgt")) throw ParseError("0-cell with a boundary");
        continue;
      }
      if (!c.contains("src") || !c.contains("tgt")) throw ParseError("cell " + std::to_string(cell.id) + " lacks src/tgt");
      cell.src = parse_term(c.at("src"), index);
      cell.tgt = parse_term(c.at("tgt"), index);
    }
    return p;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed polygraph: ") + e.what());
  }
}

json morphism_to_json(const Morphism& f) {
  json images = json::array();
  for (int i = 0; i < f.domain->size(); ++i)
    images.push_back(json{{"cell", f.domain->cells[i].id}, {"term", term_to_json(*f.codomain, f.image[i])}});
  return json{{"domain", polygraph_to_json(*f.domain)}, {"codomain", polygraph_to_json(*f.codomain)}, {"images", images}};
}

static Polygraph polygraph_ref(const json& j, const std::string& base_dir) {
  if (j.is_string()) return load_polygraph((std::filesystem::path(base_dir) / j.get<std::string>()).string());
  return polygraph_from_json(j);
}

Morphism morphism_from_json(const json& j, const std::string& base_dir) {
  try {
    Morphism f;
    f.domain = std::make_shared<const Polygraph>(polygraph_ref(j.at("domain"), base_dir));
    f.codomain = std::make_shared<const Polygraph>(polygraph_ref(j.at("codomain"), base_dir));
    f.image.assign(f.domain->size(), nullptr);
    for (const auto& e : j.at("images")) {
      const int i = f.domain->index_of_id(e.at("cell").get<int>());
      if (i < 0) throw ParseError("image given for unknown cell");
      if (f.image[i]) throw ParseError("image given twice");
      f.image[i] = term_from_json(*f.codomain, e.at("term"));
    }
    for (int i = 0; i < f.domain->size(); ++i)
      if (!f.image[i]) throw ParseError("no image for cell " + f.domain->label(i));
    return f;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed morphism: ") + e.what());
  }
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Polygraph load_polygraph(const std::string& path) { return polygraph_from_json(read_json(path)); }

Morphism load_morphism(const std::string& path) {
  return morphism_from_json(read_json(path), std::filesystem::path(path).parent_path().string());
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace ppx
