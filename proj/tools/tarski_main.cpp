// Command line front end: every operation of the toolkit behind one binary
// with JSON input/output. Exit codes: 0 = decided/verified, 2 = result is
// not-found-within-bounds, 1 = error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "tarski/json_io.hpp"

using namespace tarski;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotFound = 2;

struct InputHasher {
  std::string bytes;
  void add_file(const std::string& path, std::string* content_out = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw JsonError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    bytes += ss.str();
    if (content_out) *content_out = ss.str();
  }
  std::string hash() const { return fnv1a_hex(bytes); }
};

Json read_json(const std::string& path, InputHasher& hasher) {
  std::string content;
  hasher.add_file(path, &content);
  try {
    return Json::parse(content);
  } catch (const std::exception& e) {
    throw JsonError("parse error in " + path + ": " + e.what());
  }
}

void emit(const Json& payload, const std::string& out_path) {
  std::string text = payload.dump(2);
  text += "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw JsonError("cannot write output file: " + out_path);
    out << text;
  }
}

Json envelope(const std::string& command, const InputHasher& hasher) {
  return Json{{"schema", kSchemaVersion}, {"command", command}, {"inputs_hash", hasher.hash()}};
}

std::vector<Word> words_from_json(const GroupSpec& spec, const Json& j) {
  const Json& arr = j.is_array() ? j : j.at("translators");
  std::vector<Word> out;
  for (const auto& w : arr) out.push_back(parse_word(spec, w.get<std::string>()));
  return out;
}

std::vector<ClopenSet> family_from_json(const ModelRef& m, const Json& j) {
  const Json& arr = j.is_array() ? j : j.at("family");
  std::vector<ClopenSet> out;
  for (const auto& s : arr) out.push_back(clopen_from_json(m, s));
  return out;
}

// ---------------------------------------------------------------------------
// demo corpus

Json run_lp_to_json(const std::vector<ClopenSet>& family, const std::vector<Word>& K,
                    const ClopenSet& E, const ModelRef& model) {
  auto inst = make_lp_instance(family, K, E);
  auto res = lp_feasibility(inst);
  Json out{{"model", model_to_json(*model)},
           {"instance", lp_instance_to_json(inst)},
           {"status", std::holds_alternative<MeasureTable>(res) ? "feasible" : "infeasible"}};
  if (std::holds_alternative<MeasureTable>(res))
    out["certificate"] = measure_table_to_json(std::get<MeasureTable>(res), inst);
  else
    out["certificate"] = farkas_to_json(std::get<FarkasCert>(res));
  return out;
}

Json verification_transcript(const ParadoxCert& cert) {
  std::string why;
  bool ok = verify_paradox(cert, &why);
  Json t{{"verified", ok}};
  if (!ok) t["violation"] = why;
  t["pieces"] = cert.pieces.size();
  t["split"] = cert.split;
  return t;
}

int cmd_demo(const std::string& outdir, unsigned long seed) {
  fs::create_directories(outdir);
  Json manifest{{"schema", kSchemaVersion}, {"seed", seed}, {"files", Json::array()}};
  auto save = [&](const std::string& name, const Json& payload) {
    std::string text = payload.dump(2);
    text += "\n";
    std::ofstream out(fs::path(outdir) / name, std::ios::binary);
    out << text;
    manifest["files"].push_back({{"name", name}, {"hash", fnv1a_hex(text)}});
  };

  auto mb = make_model(GroupSpec({{"a", 0}, {"b", 0}}), ActionKind::Boundary);
  auto ms = make_model(GroupSpec({{"a", 0}, {"b", 0}}), ActionKind::SelfAction);
  auto mz = make_model(GroupSpec({{"a", 0}}), ActionKind::SelfAction);
  save("action_boundary_f2.json", model_to_json(*mb));
  save("action_selfaction_f2.json", model_to_json(*ms));
  save("action_selfaction_z.json", model_to_json(*mz));

  // Paradox certificates for the whole boundary and every cylinder of
  // depth <= 2 (the clopen basis realized concretely).
  {
    auto X = ClopenSet::whole(mb);
    auto cert = find_paradox(X, 1, 4);
    if (!cert) throw ClopenError("demo: boundary doubling not found (internal)");
    Json j = paradox_cert_to_json(*cert);
    j["transcript"] = verification_transcript(*cert);
    save("cert_boundary_whole.json", j);
  }
  int cyl_index = 0;
  for (int depth = 1; depth <= 2; ++depth) {
    for (const Word& w : sphere(mb->spec, depth)) {
      auto U = ClopenSet::cylinder(mb, w);
      std::optional<ParadoxCert> cert;
      for (int r = 1; r <= 3 && !cert; ++r) cert = find_paradox(U, r, 8);
      if (!cert) throw ClopenError("demo: cylinder doubling not found (internal)");
      Json j = paradox_cert_to_json(*cert);
      j["transcript"] = verification_transcript(*cert);
      save("cert_boundary_cyl" + std::to_string(cyl_index++) + ".json", j);
    }
  }

  // The classical doubling of F2 acting on itself, cone-algebra pieces.
  {
    ParadoxCert cert;
    cert.region = ClopenSet::whole(ms);
    cert.pieces = {{ClopenSet::cone(ms, parse_word(ms->spec, "a")), parse_word(ms->spec, "a")},
                   {ClopenSet::cone(ms, parse_word(ms->spec, "a")).complement(), Word{}},
                   {ClopenSet::cone(ms, parse_word(ms->spec, "b")), parse_word(ms->spec, "a b")},
                   {ClopenSet::cone(ms, parse_word(ms->spec, "b")).complement(),
                    parse_word(ms->spec, "a b^-1")}};
    cert.split = 2;
    std::string why;
    if (!verify_paradox(cert, &why))
      throw ClopenError("demo: classical certificate failed: " + why);
    Json j = paradox_cert_to_json(cert);
    j["transcript"] = verification_transcript(cert);
    save("cert_selfaction_f2_classical.json", j);
  }

  // Feasible invariant measures for Z at radii 1..5.
  for (int r = 1; r <= 5; ++r) {
    auto Z = ClopenSet::whole(mz);
    std::vector<ClopenSet> family;
    for (const Word& w : ball(mz->spec, r))
      if (!w.is_identity()) family.push_back(ClopenSet::cone(mz, w));
    family.push_back(ClopenSet::point(mz, Word{}));
    save("measure_z_r" + std::to_string(r) + ".json",
         run_lp_to_json(family, ball(mz->spec, 1), Z, mz));
  }

  emit(manifest, (fs::path(outdir) / "MANIFEST.json").string());
  std::cout << "demo corpus written to " << outdir << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact certificates for paradoxical decompositions, invariant measures, "
               "and the type semigroup over free products of cyclic groups"};
  app.require_subcommand(1);

  std::string action_path, set_path, out_path, group_path, word_text, t_text, g_text;
  std::string family_path, translators_path, normalize_path, cert_path, x_path, y_path;
  std::string expr_path, measure_path, samples_path, direction, outdir = "demo_corpus";
  int radius = 1, max_pieces = 4, nn = 2, mm = 1;
  unsigned long seed = 0;
  long random_count = 200;
  bool two_sided = false;

  // ---- grp ----
  auto* grp = app.add_subcommand("grp", "words, balls, orders, partitions");
  auto* grp_reduce = grp->add_subcommand("reduce", "reduce a raw word to normal form");
  grp_reduce->add_option("--group", group_path)->required();
  grp_reduce->add_option("--word", word_text)->required();
  auto* grp_ball = grp->add_subcommand("ball", "enumerate a metric ball");
  grp_ball->add_option("--group", group_path)->required();
  grp_ball->add_option("-r,--radius", radius)->required();
  auto* grp_order = grp->add_subcommand("order", "order of an element");
  grp_order->add_option("--group", group_path)->required();
  grp_order->add_option("--word", word_text)->required();
  auto* grp_part = grp->add_subcommand("partition", "three- or two-set partition certificate");
  grp_part->add_option("--group", group_path)->required();
  grp_part->add_option("--t", t_text)->required();
  grp_part->add_option("-r,--radius", radius)->required();
  grp_part->add_flag("--two", two_sided, "require the two-set form G2 = t.G1");
  grp_part->add_option("-o,--out", out_path);

  // ---- clopen ----
  auto* clopen = app.add_subcommand("clopen", "boolean algebra of clopen sets");
  auto* clopen_op = clopen->add_subcommand("op", "evaluate a set expression");
  clopen_op->add_option("--action", action_path)->required();
  clopen_op->add_option("--expr", expr_path)->required();
  clopen_op->add_option("-o,--out", out_path);
  auto* clopen_tr = clopen->add_subcommand("translate", "translate a set by a group element");
  clopen_tr->add_option("--action", action_path)->required();
  clopen_tr->add_option("--set", set_path)->required();
  clopen_tr->add_option("--g", g_text)->required();
  clopen_tr->add_option("-o,--out", out_path);
  auto* clopen_atoms = clopen->add_subcommand("atoms", "atoms of a finite subalgebra");
  clopen_atoms->add_option("--action", action_path)->required();
  clopen_atoms->add_option("--family", family_path)->required();
  clopen_atoms->add_option("-o,--out", out_path);

  // ---- paradox ----
  auto* paradox = app.add_subcommand("paradox", "paradoxical decomposition certificates");
  auto* par_find = paradox->add_subcommand("find", "bounded certificate search");
  par_find->add_option("--action", action_path)->required();
  par_find->add_option("--set", set_path)->required();
  par_find->add_option("-r,--radius", radius)->required();
  par_find->add_option("-p,--pieces", max_pieces)->required();
  par_find->add_option("-o,--out", out_path);
  auto* par_verify = paradox->add_subcommand("verify", "verify a certificate file");
  par_verify->add_option("cert", cert_path)->required();
  auto* par_doub = paradox->add_subcommand("doubling", "flow-based doubling check");
  par_doub->add_option("--action", action_path)->required();
  par_doub->add_option("--set", set_path)->required();
  par_doub->add_option("--translators", translators_path)->required();
  par_doub->add_option("-r,--radius", radius)->required();
  par_doub->add_option("-o,--out", out_path);

  // ---- measure ----
  auto* measure = app.add_subcommand("measure", "invariant-measure LP feasibility");
  auto* meas_lp = measure->add_subcommand("lp", "decide feasibility on a window");
  meas_lp->add_option("--action", action_path)->required();
  meas_lp->add_option("--family", family_path)->required();
  meas_lp->add_option("--translators", translators_path)->required();
  meas_lp->add_option("--normalize", normalize_path)->required();
  meas_lp->add_option("-o,--out", out_path);
  auto* meas_check = measure->add_subcommand("check", "re-verify a stored LP result");
  meas_check->add_option("result", measure_path)->required();

  // ---- tsg ----
  auto* tsg = app.add_subcommand("tsg", "type semigroup certificates");
  auto* tsg_equi = tsg->add_subcommand("equi", "equidecomposability search");
  auto* tsg_leq = tsg->add_subcommand("leq", "subequivalence search");
  for (auto* cmd : {tsg_equi, tsg_leq}) {
    cmd->add_option("--action", action_path)->required();
    cmd->add_option("--x", x_path)->required();
    cmd->add_option("--y", y_path)->required();
    cmd->add_option("-r,--radius", radius)->required();
    cmd->add_option("-p,--moves", max_pieces)->required();
    cmd->add_option("-o,--out", out_path);
  }
  auto* tsg_propinf = tsg->add_subcommand("propinf", "certificate for 2[E] <= [E]");
  tsg_propinf->add_option("--action", action_path)->required();
  tsg_propinf->add_option("--set", set_path)->required();
  tsg_propinf->add_option("-r,--radius", radius)->required();
  tsg_propinf->add_option("-p,--moves", max_pieces)->required();
  tsg_propinf->add_option("-o,--out", out_path);
  auto* tsg_convert = tsg->add_subcommand("convert", "convert between certificate kinds");
  tsg_convert->add_option("--direction", direction)
      ->required()
      ->check(CLI::IsMember({"to-paradox", "to-tsg"}));
  tsg_convert->add_option("--cert", cert_path)->required();
  tsg_convert->add_option("--action", action_path);
  tsg_convert->add_option("--set", set_path);
  tsg_convert->add_option("-o,--out", out_path);
  auto* tsg_probe = tsg->add_subcommand("probe", "almost-unperforation probe");
  tsg_probe->add_option("--action", action_path)->required();
  tsg_probe->add_option("--x", x_path)->required();
  tsg_probe->add_option("--y", y_path)->required();
  tsg_probe->add_option("-n", nn)->required();
  tsg_probe->add_option("-m", mm)->required();
  tsg_probe->add_option("-r,--radius", radius)->required();
  tsg_probe->add_option("-p,--moves", max_pieces)->required();
  tsg_probe->add_option("-o,--out", out_path);

  // ---- cp ----
  auto* cp = app.add_subcommand("cp", "symbolic crossed-product algebra");
  auto* cp_mul_cmd = cp->add_subcommand("mul", "multiply two elements");
  cp_mul_cmd->add_option("--action", action_path)->required();
  cp_mul_cmd->add_option("--x", x_path)->required();
  cp_mul_cmd->add_option("--y", y_path)->required();
  cp_mul_cmd->add_option("-o,--out", out_path);
  auto* cp_expect = cp->add_subcommand("expect", "conditional expectation");
  cp_expect->add_option("--action", action_path)->required();
  cp_expect->add_option("--x", x_path)->required();
  cp_expect->add_option("-o,--out", out_path);
  auto* cp_wb = cp->add_subcommand("witness-build", "witness pair from a certificate");
  cp_wb->add_option("cert", cert_path)->required();
  cp_wb->add_option("-o,--out", out_path);
  auto* cp_wv = cp->add_subcommand("witness-verify", "verify a witness pair");
  cp_wv->add_option("witness", x_path)->required();
  cp_wv->add_option("--set", set_path)->required();
  cp_wv->add_option("--action", action_path)->required();
  auto* cp_we = cp->add_subcommand("witness-extract", "certificate from a witness pair");
  cp_we->add_option("witness", x_path)->required();
  cp_we->add_option("--set", set_path)->required();
  cp_we->add_option("--action", action_path)->required();
  cp_we->add_option("-o,--out", out_path);
  auto* cp_l52 = cp->add_subcommand("lemma52", "randomized expectation identity check");
  cp_l52->add_option("--action", action_path)->required();
  cp_l52->add_option("--random", random_count);
  cp_l52->add_option("--seed", seed);
  auto* cp_tc = cp->add_subcommand("trace-check", "trace identity against a measure");
  cp_tc->add_option("measure", measure_path)->required();
  cp_tc->add_option("samples", samples_path)->required();
  cp_tc->add_option("--action", action_path)->required();

  // ---- demo ----
  auto* demo = app.add_subcommand("demo", "write the worked-example corpus");
  demo->add_option("-o,--out", outdir);
  demo->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    InputHasher hasher;

    if (*grp_reduce || *grp_order) {
      auto spec = group_from_json(read_json(group_path, hasher));
      Word w = parse_word(spec, word_text);
      Json out = envelope(*grp_reduce ? "grp reduce" : "grp order", hasher);
      if (*grp_reduce) {
        out["word"] = word_to_string(spec, w);
        out["length"] = word_length(spec, w);
      } else {
        auto n = order(spec, w);
        out["order"] = n.has_value() ? Json(*n) : Json("infinite");
      }
      emit(out, out_path);
      return kExitOk;
    }
    if (*grp_ball) {
      auto spec = group_from_json(read_json(group_path, hasher));
      auto b = ball(spec, radius);
      Json elems = Json::array();
      for (const Word& w : b) elems.push_back(word_to_string(spec, w));
      Json out = envelope("grp ball", hasher);
      out["size"] = b.size();
      out["elements"] = elems;
      emit(out, out_path);
      return kExitOk;
    }
    if (*grp_part) {
      auto spec = group_from_json(read_json(group_path, hasher));
      Word t = parse_word(spec, t_text);
      Partition3Cert cert =
          two_sided ? two_partition(spec, t, radius) : three_partition(spec, t, radius);
      std::string why;
      bool ok = verify_partition(spec, cert, &why);
      Json out = envelope("grp partition", hasher);
      out["cert"] = partition_cert_to_json(spec, cert);
      out["verified"] = ok;
      if (!ok) out["violation"] = why;
      auto n = order(spec, t);
      if (n.has_value() && *n % 2 == 1 && *n > 1)
        out["two_colorable_cycle"] = cycle_two_colorable(static_cast<int>(*n));
      emit(out, out_path);
      return ok ? kExitOk : kExitError;
    }

    if (*clopen_op) {
      auto model = model_from_json(read_json(action_path, hasher));
      auto s = clopen_from_json(model, read_json(expr_path, hasher));
      Json out = envelope("clopen op", hasher);
      out["set"] = clopen_to_json(s);
      out["empty"] = s.is_empty();
      emit(out, out_path);
      return kExitOk;
    }
    if (*clopen_tr) {
      auto model = model_from_json(read_json(action_path, hasher));
      auto s = clopen_from_json(model, read_json(set_path, hasher));
      Json out = envelope("clopen translate", hasher);
      out["set"] = clopen_to_json(s.translated(parse_word(model->spec, g_text)));
      emit(out, out_path);
      return kExitOk;
    }
    if (*clopen_atoms) {
      auto model = model_from_json(read_json(action_path, hasher));
      auto family = family_from_json(model, read_json(family_path, hasher));
      Json out = envelope("clopen atoms", hasher);
      Json arr = Json::array();
      for (const auto& a : atoms(family)) arr.push_back(clopen_to_json(a));
      out["atoms"] = arr;
      emit(out, out_path);
      return kExitOk;
    }

    if (*par_find) {
      auto model = model_from_json(read_json(action_path, hasher));
      auto U = clopen_from_json(model, read_json(set_path, hasher));
      auto cert = find_paradox(U, radius, max_pieces);
      Json out = envelope("paradox find", hasher);
      if (!cert) {
        out["status"] = "not-found-within-bounds";
        emit(out, out_path);
        return kExitNotFound;
      }
      out["status"] = "found";
      out["cert"] = paradox_cert_to_json(*cert);
      out["cert"]["transcript"] = verification_transcript(*cert);
      emit(out, out_path);
      return kExitOk;
    }
    if (*par_verify) {
      Json j = read_json(cert_path, hasher);
      if (j.contains("cert")) j = j.at("cert");
      ParadoxCert cert = paradox_cert_from_json(j);
      std::string why;
      bool ok = verify_paradox(cert, &why);
      Json out = envelope("paradox verify", hasher);
      out["verified"] = ok;
      if (!ok) out["violation"] = why;
      emit(out, "");
      return ok ? kExitOk : kExitError;
    }
    if (*par_doub) {
      auto model = model_from_json(read_json(action_path, hasher));
      auto E = clopen_from_json(model, read_json(set_path, hasher));
      auto K = words_from_json(model->spec, read_json(translators_path, hasher));
      auto rep = doubling_check(E, K, radius);
      Json out = envelope("paradox doubling", hasher);
      out["window_size"] = rep.window_size;
      out["flow"] = rep.flow;
      out["slack"] = rep.slack;
      out["empty_window"] = rep.empty_window;
      if (rep.slack > 0) {
        Json viol = Json::array();
        for (const Word& w : rep.deficient_set) viol.push_back(word_to_string(model->spec, w));
        out["deficient_set"] = viol;
        out["deficient_neighbours"] = rep.deficient_neighbours;
      }
      emit(out, out_path);
      return kExitOk;
    }

    if (*meas_lp) {
      auto model = model_from_json(read_json(action_path, hasher));
      auto family = family_from_json(model, read_json(family_path, hasher));
      auto K = words_from_json(model->spec, read_json(translators_path, hasher));
      auto E = clopen_from_json(model, read_json(normalize_path, hasher));
      Json out = envelope("measure lp", hasher);
      Json body = run_lp_to_json(family, K, E, model);
      for (auto& [k, v] : body.items()) out[k] = v;
      emit(out, out_path);
      return kExitOk;
    }
    if (*meas_check) {
      Json j = read_json(measure_path, hasher);
      auto model = model_from_json(j.at("model"));
      auto family = family_from_json(model, j.at("instance").at("family"));
      auto K = words_from_json(model->spec, j.at("instance").at("invariance"));
      auto E = clopen_from_json(model, j.at("instance").at("normalized"));
      auto inst = make_lp_instance(family, K, E);
      std::string why;
      bool ok;
      if (j.at("status") == "feasible")
        ok = check_measure(measure_table_from_json(inst, j.at("certificate")), inst, &why);
      else
        ok = check_farkas(farkas_from_json(j.at("certificate")), inst, &why);
      Json out = envelope("measure check", hasher);
      out["verified"] = ok;
      if (!ok) out["violation"] = why;
      emit(out, "");
      return ok ? kExitOk : kExitError;
    }

    if (*tsg_equi || *tsg_leq) {
      auto model = model_from_json(read_json(action_path, hasher));
      auto x = tsg_element_from_json(model, read_json(x_path, hasher));
      auto y = tsg_element_from_json(model, read_json(y_path, hasher));
      auto cert = *tsg_equi ? find_equi(x, y, radius, max_pieces)
                            : find_leq(x, y, radius, max_pieces);
      Json out = envelope(*tsg_equi ? "tsg equi" : "tsg leq", hasher);
      if (!cert) {
        out["status"] = "not-found-within-bounds";
        emit(out, out_path);
        return kExitNotFound;
      }
      out["status"] = "found";
      out["cert"] = equidecomp_cert_to_json(model, *cert);
      emit(out, out_path);
      return kExitOk;
    }
    if (*tsg_propinf) {
      auto model = model_from_json(read_json(action_path, hasher));
      auto E = clopen_from_json(model, read_json(set_path, hasher));
      auto cert = properly_infinite(E, radius, max_pieces);
      Json out = envelope("tsg propinf", hasher);
      if (!cert) {
        out["status"] = "not-found-within-bounds";
        emit(out, out_path);
        return kExitNotFound;
      }
      out["status"] = "found";
      out["cert"] = equidecomp_cert_to_json(model, *cert);
      emit(out, out_path);
      return kExitOk;
    }
    if (*tsg_convert) {
      Json cj = read_json(cert_path, hasher);
      if (cj.contains("cert")) cj = cj.at("cert");
      Json out = envelope("tsg convert", hasher);
      if (direction == "to-tsg") {
        ParadoxCert pc = paradox_cert_from_json(cj);
        EquidecompCert ec = paradox_to_tsg(pc);
        out["cert"] = equidecomp_cert_to_json(pc.region.model(), ec);
      } else {
        if (action_path.empty() || set_path.empty())
          throw JsonError("to-paradox conversion needs --action and --set");
        auto model = model_from_json(read_json(action_path, hasher));
        auto E = clopen_from_json(model, read_json(set_path, hasher));
        EquidecompCert ec = equidecomp_cert_from_json(model, cj);
        ParadoxCert pc = tsg_to_paradox(E, ec);
        out["cert"] = paradox_cert_to_json(pc);
        out["cert"]["transcript"] = verification_transcript(pc);
      }
      emit(out, out_path);
      return kExitOk;
    }
    if (*tsg_probe) {
      auto model = model_from_json(read_json(action_path, hasher));
      auto x = tsg_element_from_json(model, read_json(x_path, hasher));
      auto y = tsg_element_from_json(model, read_json(y_path, hasher));
      auto probe = unperforation_probe(x, y, nn, mm, radius, max_pieces);
      Json out = envelope("tsg probe", hasher);
      out["premise_found"] = probe.premise_found;
      out["conclusion_found"] = probe.conclusion_found;
      out["candidate_violation"] = probe.candidate_violation;
      if (probe.candidate_violation) out["note"] = probe.note;
      emit(out, out_path);
      return kExitOk;
    }

    if (*cp_mul_cmd) {
      auto model = model_from_json(read_json(action_path, hasher));
      auto x = cp_element_from_json(model, read_json(x_path, hasher));
      auto y = cp_element_from_json(model, read_json(y_path, hasher));
      Json out = envelope("cp mul", hasher);
      out["product"] = cp_element_to_json(cp_mul(x, y));
      emit(out, out_path);
      return kExitOk;
    }
    if (*cp_expect) {
      auto model = model_from_json(read_json(action_path, hasher));
      auto x = cp_element_from_json(model, read_json(x_path, hasher));
      Json out = envelope("cp expect", hasher);
      out["expectation"] = simple_function_to_json(cond_expectation(x));
      emit(out, out_path);
      return kExitOk;
    }
    if (*cp_wb) {
      Json cj = read_json(cert_path, hasher);
      if (cj.contains("cert")) cj = cj.at("cert");
      ParadoxCert cert = paradox_cert_from_json(cj);
      auto [x, y] = build_witness(cert);
      Json out = envelope("cp witness-build", hasher);
      out["model"] = model_to_json(*cert.region.model());
      out["set"] = clopen_to_json(cert.region);
      out["x"] = cp_element_to_json(x);
      out["y"] = cp_element_to_json(y);
      emit(out, out_path);
      return kExitOk;
    }
    if (*cp_wv || *cp_we) {
      auto model = model_from_json(read_json(action_path, hasher));
      Json wj = read_json(x_path, hasher);
      auto U = clopen_from_json(model, read_json(set_path, hasher));
      auto x = cp_element_from_json(model, wj.at("x"));
      auto y = cp_element_from_json(model, wj.at("y"));
      if (*cp_wv) {
        auto rep = verify_witness(x, y, U);
        Json out = envelope("cp witness-verify", hasher);
        out["verified"] = rep.ok;
        if (!rep.ok) out["violation"] = rep.failed_clause;
        emit(out, "");
        return rep.ok ? kExitOk : kExitError;
      }
      ParadoxCert cert = extract_paradox(x, y, U);
      Json out = envelope("cp witness-extract", hasher);
      out["cert"] = paradox_cert_to_json(cert);
      out["cert"]["transcript"] = verification_transcript(cert);
      emit(out, out_path);
      return kExitOk;
    }
    if (*cp_l52) {
      auto model = model_from_json(read_json(action_path, hasher));
      const GroupSpec& spec = model->spec;
      std::mt19937_64 rng(seed);
      auto window = ball(spec, 2);
      long failures = 0;
      for (long i = 0; i < random_count; ++i) {
        CPElement x(model);
        int support = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < support; ++k) {
          Word t = window[rng() % window.size()];
          ClopenSet s = model->kind == ActionKind::Boundary
                            ? ClopenSet::cylinder(model, window[rng() % window.size()])
                            : ClopenSet::cone(model, window[rng() % window.size()]);
          mpq_class v(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
          v.canonicalize();
          if (v == 0) v = 1;
          x = cp_add(x, CPElement::term(t, SimpleFunction::indicator(s, v)));
        }
        if (!check_expectation_identities(x)) ++failures;
      }
      Json out = envelope("cp lemma52", hasher);
      out["samples"] = random_count;
      out["seed"] = seed;
      out["failures"] = failures;
      emit(out, "");
      return failures == 0 ? kExitOk : kExitError;
    }
    if (*cp_tc) {
      Json mj = read_json(measure_path, hasher);
      auto model = model_from_json(read_json(action_path, hasher));
      if (mj.at("status") != "feasible")
        throw JsonError("trace-check needs a feasible measure result");
      auto family = family_from_json(model, mj.at("instance").at("family"));
      auto K = words_from_json(model->spec, mj.at("instance").at("invariance"));
      auto E = clopen_from_json(model, mj.at("instance").at("normalized"));
      auto inst = make_lp_instance(family, K, E);
      auto mt = measure_table_from_json(inst, mj.at("certificate"));
      Json sj = read_json(samples_path, hasher);
      std::vector<CPElement> samples;
      for (const auto& s : (sj.is_array() ? sj : sj.at("samples")))
        samples.push_back(cp_element_from_json(model, s));
      auto rep = trace_check(inst, mt, samples);
      Json out = envelope("cp trace-check", hasher);
      out["checked"] = rep.checked;
      out["window_too_small"] = rep.window_too_small;
      out["ok"] = rep.ok;
      emit(out, "");
      return rep.ok ? kExitOk : kExitError;
    }

    if (*demo) return cmd_demo(outdir, seed);

    std::cerr << "no subcommand selected\n";
    return kExitError;
  } catch (const AtomCapExceeded& e) {
    std::cerr << Json{{"error", e.what()}, {"code", "atom-cap-exceeded"}}.dump() << "\n";
    return kExitError;
  } catch (const JsonError& e) {
    std::cerr << Json{{"error", e.what()}, {"code", "parse-error"}}.dump() << "\n";
    return kExitError;
  } catch (const GroupError& e) {
    std::cerr << Json{{"error", e.what()}, {"code", "group-error"}}.dump() << "\n";
    return kExitError;
  } catch (const ClopenError& e) {
    std::cerr << Json{{"error", e.what()}, {"code", "model-error"}}.dump() << "\n";
    return kExitError;
  } catch (const MeasureError& e) {
    std::cerr << Json{{"error", e.what()}, {"code", "measure-error"}}.dump() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", e.what()}, {"code", "internal-error"}}.dump() << "\n";
    return kExitError;
  }
}
