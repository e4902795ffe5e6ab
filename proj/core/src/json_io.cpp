#include "loopblocks/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "loopblocks/errors.hpp"

namespace loopblocks {

namespace {

using nlohmann::json;

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw validation_error(path + ": " + e.what());
  }
}

Word to_word(const json& arr) {
  Word w;
  for (const auto& t : arr) w.push_back(t.get<int>());
  return w;
}

GroupPresentation to_presentation(const json& j) {
  GroupPresentation p;
  p.num_generators = j.at("generators").get<int>();
  if (j.contains("relators"))
    for (const auto& r : j["relators"]) p.relators.push_back(to_word(r));
  if (j.contains("boundary"))
    for (const auto& b : j["boundary"]) p.boundary_words.push_back(to_word(b));
  validate_presentation(p);
  return p;
}

json dim_to_json(const SymbolicDim& d) {
  return json{{"coeff", d.coeff}, {"gpow", d.gpow}};
}

}  // namespace

FiniteGroup load_group_json(const std::string& path) {
  json j = load_file(path);
  try {
    if (j.contains("family"))
      return builtin_group(j.at("family").get<std::string>(),
                           j.at("param").get<int>());
    auto cayley = j.at("cayley").get<std::vector<std::vector<Elem>>>();
    std::string name = j.value("name", "file:" + path);
    FiniteGroup g = FiniteGroup::from_cayley(std::move(cayley), name);
    if (j.contains("elem_names"))
      g.set_elem_names(j["elem_names"].get<std::vector<std::string>>());
    return g;
  } catch (const json::exception& e) {
    throw validation_error(path + ": " + e.what());
  }
}

std::string group_to_json(const FiniteGroup& g) {
  json j{{"name", g.name()},
         {"order", g.order()},
         {"cayley", g.cayley()}};
  if (!g.elem_names().empty()) j["elem_names"] = g.elem_names();
  return j.dump(2);
}

std::string character_table_to_json(const CharacterTable& ct) {
  json classes = json::array();
  for (int c = 0; c < ct.conj.num_classes(); ++c)
    classes.push_back(json{{"rep", ct.conj.class_rep[c]},
                           {"size", ct.class_sizes[c]},
                           {"rep_name", ct.group.elem_name(ct.conj.class_rep[c])}});
  json irreps = json::array();
  for (int a = 0; a < ct.num_irreps; ++a) {
    json row = json::array();
    for (const cplx& v : ct.chars[a])
      row.push_back(json::array({v.real(), v.imag()}));
    irreps.push_back(json{{"dim", ct.dims[a]}, {"chars", row}});
  }
  return json{{"group", ct.group.name()},
              {"order", ct.order()},
              {"classes", classes},
              {"irreps", irreps}}
      .dump(2);
}

std::string block_structure_to_json(const BlockStructure& bs) {
  json blocks = json::array();
  for (const Block& b : bs.blocks)
    blocks.push_back(json{{"label", b.label},
                          {"label_tuples", b.label_tuples},
                          {"mult", dim_to_json(b.mult)},
                          {"rows", dim_to_json(b.rows)},
                          {"cols", dim_to_json(b.cols)}});
  json dropped = json::array();
  for (const DroppedLabel& d : bs.dropped)
    dropped.push_back(json{{"label", d.label},
                           {"row_coeff", d.row_coeff},
                           {"col_coeff", d.col_coeff}});
  return json{{"group_order", bs.group_order},
              {"total_dof", bs.total_dof},
              {"lattice",
               json{{"vx", bs.lattice.vx},
                    {"vy", bs.lattice.vy},
                    {"vboundary", bs.lattice.vboundary},
                    {"base_points", bs.lattice.base_points}}},
              {"blocks", blocks},
              {"dropped", dropped}}
      .dump(2);
}

std::string gauge_blocks_to_json(const GaugeBlockStructure& gb) {
  json orbits = json::array();
  for (const GaugeOrbit& o : gb.orbits) {
    json sectors = json::array();
    for (const GaugeSector& s : o.sectors)
      sectors.push_back(json{{"alphas", s.alphas},
                             {"d", s.d},
                             {"x", s.x},
                             {"y", s.y}});
    orbits.push_back(json{{"rep", o.rep},
                          {"orbit_size", o.orbit_size},
                          {"stab_order", o.stab_order},
                          {"sectors", sectors}});
  }
  return json{{"base_points", gb.base_points}, {"orbits", orbits}}.dump(2);
}

BlocksRoundTrip reparse_blocks_json(const std::string& text) {
  BlocksRoundTrip rt;
  try {
    json j = json::parse(text);
    rt.total_dof = j.at("total_dof").get<long long>();
    for (const auto& b : j.at("blocks"))
      rt.recomputed += b.at("mult").at("coeff").get<long long>() *
                       b.at("rows").at("coeff").get<long long>() *
                       b.at("cols").at("coeff").get<long long>();
  } catch (const json::exception& e) {
    throw validation_error(std::string("blocks document: ") + e.what());
  }
  rt.consistent = rt.total_dof == rt.recomputed;
  return rt;
}

std::vector<SectorAmplitudes> load_state_json(const std::string& path) {
  json j = load_file(path);
  std::vector<SectorAmplitudes> out;
  try {
    for (const auto& a : j.at("amplitudes")) {
      SectorAmplitudes s;
      s.orbit = a.at("orbit").get<std::vector<Elem>>();
      s.sector = a.at("sector").get<std::vector<int>>();
      s.values = a.at("values").get<std::vector<double>>();
      out.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw validation_error(path + ": " + e.what());
  }
  return out;
}

GenericCut load_generic_cut_json(const std::string& path) {
  json j = load_file(path);
  GenericCut gc;
  try {
    gc.pres_x = to_presentation(j.at("x"));
    gc.pres_y = to_presentation(j.at("y"));
    int nb = static_cast<int>(gc.pres_x.boundary_words.size());
    if (j.contains("pairing"))
      gc.pairing = j["pairing"].get<std::vector<int>>();
    else
      for (int c = 0; c < nb; ++c) gc.pairing.push_back(c);
    if (j.contains("signs"))
      gc.signs = j["signs"].get<std::vector<int>>();
    else
      gc.signs.assign(nb, 1);
    gc.base_points = j.value("base_points", 1);
  } catch (const json::exception& e) {
    throw validation_error(path + ": " + e.what());
  }
  return gc;
}

}  // namespace loopblocks
