#include "tarski/json_io.hpp"

namespace tarski {

Json group_to_json(const GroupSpec& spec) {
  Json factors = Json::array();
  for (int i = 0; i < spec.factor_count(); ++i) {
    factors.push_back({{"name", spec.factor(i).name}, {"order", spec.factor(i).order}});
  }
  return Json{{"factors", factors}};
}

GroupSpec group_from_json(const Json& j) {
  if (!j.contains("factors")) throw JsonError("group spec needs a factors array");
  std::vector<CyclicFactor> fs;
  for (const auto& f : j.at("factors")) {
    fs.push_back({f.at("name").get<std::string>(), f.at("order").get<long>()});
  }
  return GroupSpec(std::move(fs));
}

Json model_to_json(const ActionModel& m) {
  return Json{{"kind", m.kind == ActionKind::Boundary ? "boundary" : "selfaction"},
              {"group", group_to_json(m.spec)}};
}

ModelRef model_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind != "boundary" && kind != "selfaction")
    throw JsonError("action kind must be boundary or selfaction");
  return make_model(group_from_json(j.at("group")),
                    kind == "boundary" ? ActionKind::Boundary : ActionKind::SelfAction);
}

Json clopen_to_json(const ClopenSet& s) {
  const GroupSpec& spec = s.spec();
  if (s.kind() == ActionKind::Boundary) {
    Json cyl = Json::array();
    for (const auto& w : s.antichain()) cyl.push_back(letters_to_string(spec, w));
    return Json{{"cyl", cyl}};
  }
  Json cones = Json::array(), points = Json::array();
  for (const auto& w : s.cones()) cones.push_back(letters_to_string(spec, w));
  for (const auto& p : s.points()) points.push_back(letters_to_string(spec, p));
  return Json{{"depth", s.depth()}, {"cones", cones}, {"points", points}};
}

ClopenSet clopen_from_json(const ModelRef& m, const Json& j) {
  const GroupSpec& spec = m->spec;
  if (j.is_object() && j.contains("op")) {
    std::string op = j.at("op").get<std::string>();
    const Json& args = j.at("args");
    std::vector<ClopenSet> sets;
    for (const auto& a : args) sets.push_back(clopen_from_json(m, a));
    if (op == "complement") {
      if (sets.size() != 1) throw JsonError("complement takes one argument");
      return sets[0].complement();
    }
    if (op == "minus") {
      if (sets.size() != 2) throw JsonError("minus takes two arguments");
      return sets[0].set_minus(sets[1]);
    }
    if (sets.empty()) throw JsonError("set expression needs arguments");
    ClopenSet acc = sets[0];
    for (size_t i = 1; i < sets.size(); ++i) {
      if (op == "union")
        acc = acc.set_union(sets[i]);
      else if (op == "intersect")
        acc = acc.set_intersect(sets[i]);
      else
        throw JsonError("unknown set operation: " + op);
    }
    return acc;
  }
  if (j.is_object() && j.contains("all")) {
    return j.at("all").get<bool>() ? ClopenSet::whole(m) : ClopenSet::empty(m);
  }
  if (j.is_object() && j.contains("cyl")) {
    if (m->kind != ActionKind::Boundary)
      throw JsonError("cylinder literal needs a boundary model");
    std::vector<LetterWord> words;
    for (const auto& w : j.at("cyl"))
      words.push_back(spell(spec, parse_word(spec, w.get<std::string>())));
    return ClopenSet::from_cylinders(m, std::move(words));
  }
  if (j.is_object() && (j.contains("cones") || j.contains("points"))) {
    if (m->kind != ActionKind::SelfAction)
      throw JsonError("cone literal needs a self-action model");
    std::vector<LetterWord> cones, points;
    if (j.contains("cones"))
      for (const auto& w : j.at("cones"))
        cones.push_back(spell(spec, parse_word(spec, w.get<std::string>())));
    if (j.contains("points"))
      for (const auto& w : j.at("points"))
        points.push_back(spell(spec, parse_word(spec, w.get<std::string>())));
    int depth = j.value("depth", 0);
    for (const auto& w : cones) depth = std::max(depth, static_cast<int>(w.size()));
    for (const auto& p : points) depth = std::max(depth, static_cast<int>(p.size()) + 1);
    return ClopenSet::from_cones_points(m, depth, std::move(cones), std::move(points));
  }
  throw JsonError("unrecognized clopen set literal");
}

Json rational_to_json(const mpq_class& q) { return q.get_str(); }

mpq_class rational_from_json(const Json& j) {
  mpq_class q;
  if (j.is_number_integer()) {
    q = j.get<long>();
    return q;
  }
  if (q.set_str(j.get<std::string>(), 10) != 0) throw JsonError("bad rational literal");
  q.canonicalize();
  return q;
}

Json paradox_cert_to_json(const ParadoxCert& cert) {
  const GroupSpec& spec = cert.region.spec();
  Json pieces = Json::array();
  for (const auto& p : cert.pieces) {
    pieces.push_back(
        {{"set", clopen_to_json(p.set)}, {"t", word_to_string(spec, p.translator)}});
  }
  return Json{{"schema", kSchemaVersion},
              {"model", model_to_json(*cert.region.model())},
              {"set", clopen_to_json(cert.region)},
              {"split", cert.split},
              {"pieces", pieces}};
}

ParadoxCert paradox_cert_from_json(const Json& j) {
  ModelRef m = model_from_json(j.at("model"));
  ParadoxCert cert;
  cert.region = clopen_from_json(m, j.at("set"));
  cert.split = j.at("split").get<int>();
  for (const auto& p : j.at("pieces")) {
    cert.pieces.push_back({clopen_from_json(m, p.at("set")),
                           parse_word(m->spec, p.at("t").get<std::string>())});
  }
  return cert;
}

Json tsg_element_to_json(const TsgElement& x) {
  Json levels = Json::array();
  for (const auto& l : x.levels()) levels.push_back(clopen_to_json(l));
  return Json{{"levels", levels}};
}

TsgElement tsg_element_from_json(const ModelRef& m, const Json& j) {
  std::vector<ClopenSet> levels;
  for (const auto& l : j.at("levels")) levels.push_back(clopen_from_json(m, l));
  return TsgElement::make(m, std::move(levels));
}

Json equidecomp_cert_to_json(const ModelRef& m, const EquidecompCert& cert) {
  const GroupSpec& spec = m->spec;
  Json moves = Json::array();
  // same piece schema as paradox certificates, plus the two level indices
  for (const auto& mv : cert.moves) {
    moves.push_back({{"set", clopen_to_json(mv.piece)},
                     {"t", word_to_string(spec, mv.translator)},
                     {"from", mv.src_level},
                     {"to", mv.dst_level}});
  }
  return Json{{"schema", kSchemaVersion}, {"moves", moves}};
}

EquidecompCert equidecomp_cert_from_json(const ModelRef& m, const Json& j) {
  EquidecompCert cert;
  for (const auto& mv : j.at("moves")) {
    cert.moves.push_back({clopen_from_json(m, mv.at("set")), mv.at("from").get<int>(),
                          parse_word(m->spec, mv.at("t").get<std::string>()),
                          mv.at("to").get<int>()});
  }
  return cert;
}

Json lp_instance_to_json(const LPInstance& inst) {
  const GroupSpec& spec = inst.normalized.spec();
  Json family = Json::array();
  for (const auto& f : inst.family) family.push_back(clopen_to_json(f));
  Json ks = Json::array();
  for (const auto& k : inst.invariance) ks.push_back(word_to_string(spec, k));
  Json atoms = Json::array();
  for (const auto& a : inst.atoms) atoms.push_back(clopen_to_json(a));
  return Json{{"family", family},
              {"invariance", ks},
              {"normalized", clopen_to_json(inst.normalized)},
              {"atoms", atoms}};
}

Json measure_table_to_json(const MeasureTable& mt, const LPInstance& inst) {
  Json values = Json::array();
  for (const auto& v : mt.atom_values) values.push_back(rational_to_json(v));
  return Json{{"schema", kSchemaVersion},
              {"kind", "measure"},
              {"atom_values", values},
              {"atoms", lp_instance_to_json(inst).at("atoms")}};
}

MeasureTable measure_table_from_json(const LPInstance& inst, const Json& j) {
  MeasureTable mt;
  for (const auto& v : j.at("atom_values")) mt.atom_values.push_back(rational_from_json(v));
  if (mt.atom_values.size() != inst.atoms.size())
    throw JsonError("measure table does not match the instance atoms");
  return mt;
}

Json farkas_to_json(const FarkasCert& fc) {
  Json ms = Json::array();
  for (const auto& y : fc.multipliers) ms.push_back(rational_to_json(y));
  return Json{{"schema", kSchemaVersion}, {"kind", "farkas"}, {"multipliers", ms}};
}

FarkasCert farkas_from_json(const Json& j) {
  FarkasCert fc;
  for (const auto& y : j.at("multipliers")) fc.multipliers.push_back(rational_from_json(y));
  return fc;
}

Json simple_function_to_json(const SimpleFunction& f) {
  Json pieces = Json::array();
  for (const auto& [r, v] : f.pieces())
    pieces.push_back({{"set", clopen_to_json(r)}, {"val", rational_to_json(v)}});
  return Json{{"pieces", pieces}};
}

SimpleFunction simple_function_from_json(const ModelRef& m, const Json& j) {
  std::vector<std::pair<ClopenSet, mpq_class>> pieces;
  for (const auto& p : j.at("pieces"))
    pieces.emplace_back(clopen_from_json(m, p.at("set")), rational_from_json(p.at("val")));
  return SimpleFunction::from_pieces(m, std::move(pieces));
}

Json cp_element_to_json(const CPElement& x) {
  Json terms = Json::array();
  if (!x.is_zero()) {
    const GroupSpec& spec = x.model()->spec;
    for (const auto& [t, f] : x.terms())
      terms.push_back({{"t", word_to_string(spec, t)}, {"coef", simple_function_to_json(f)}});
  }
  return Json{{"terms", terms}};
}

CPElement cp_element_from_json(const ModelRef& m, const Json& j) {
  CPElement x(m);
  for (const auto& t : j.at("terms")) {
    x = cp_add(x, CPElement::term(parse_word(m->spec, t.at("t").get<std::string>()),
                                  simple_function_from_json(m, t.at("coef"))));
  }
  return x;
}

Json partition_cert_to_json(const GroupSpec& spec, const Partition3Cert& cert) {
  Json classes = Json::array();
  for (const auto& [w, c] : cert.classes)
    classes.push_back({{"g", word_to_string(spec, w)}, {"color", c}});
  return Json{{"schema", kSchemaVersion},
              {"t", word_to_string(spec, cert.t)},
              {"radius", cert.radius},
              {"num_colors", cert.num_colors},
              {"rule", cert.rule},
              {"two_sided", cert.two_sided},
              {"classes", classes}};
}

Partition3Cert partition_cert_from_json(const GroupSpec& spec, const Json& j) {
  Partition3Cert cert;
  cert.t = parse_word(spec, j.at("t").get<std::string>());
  cert.radius = j.at("radius").get<int>();
  cert.num_colors = j.at("num_colors").get<int>();
  cert.rule = j.at("rule").get<std::string>();
  cert.two_sided = j.at("two_sided").get<bool>();
  for (const auto& c : j.at("classes"))
    cert.classes.emplace_back(parse_word(spec, c.at("g").get<std::string>()),
                              c.at("color").get<int>());
  return cert;
}

std::string fnv1a_hex(const std::string& bytes) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tarski
