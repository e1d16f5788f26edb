// Command-line front end.
//
// Exit codes: 0 ok, 1 relation failure, 2 malformed input, 3 oracle
// disagreement or internal consistency failure, 4 theorem violation.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aperv/arrangement.hpp"
#include "aperv/embedfunctor.hpp"
#include "aperv/io.hpp"
#include "aperv/quiverrep.hpp"

using namespace aperv;
using io::Json;

namespace {

enum Exit { kOk = 0, kRelation = 1, kMalformed = 2, kOracle = 3, kTheorem = 4 };

constexpr int kDefaultMaxRank = 4;

struct Global {
  std::string format = "text";
  std::string out;
  bool quiet = false;
  bool allow_large = false;
};

struct Output {
  const Global& g;
  std::ostringstream text;
  Json json = Json::object();

  void emit() const {
    if (g.quiet) return;
    if (g.format == "json") {
      std::cout << json.dump(2) << '\n';
    } else {
      std::cout << text.str();
    }
  }
};

std::string label(int i, int j) { return "L(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

void check_rank(const Global& g, int n) {
  if (n > kDefaultMaxRank && !g.allow_large) {
    throw MalformedInput("n = " + std::to_string(n) + " exceeds " + std::to_string(kDefaultMaxRank) +
                         "; pass --allow-large to proceed");
  }
}

DoubleRep load_rep(const Global& g, const std::string& path) {
  const Json j = io::read_json_file(path);
  if (j.contains("poset") && j["poset"].value("type", "") == "braid" && j["poset"].contains("n") &&
      j["poset"]["n"].is_number_integer()) {
    check_rank(g, j["poset"]["n"].get<int>());
  }
  return io::rep_from_json(j);
}

void write_out(const Global& g, const Json& payload) {
  if (!g.out.empty()) io::write_json_file(g.out, payload);
}

std::string superscript_square(std::size_t m) { return std::to_string(m) + "²"; }

// ---------------------------------------------------------------------------

struct FacesArgs {
  int n = 0;
  std::string arrangement;
  bool oracle = false;
};

int cmd_faces(const Global& g, const FacesArgs& a) {
  PosetPtr poset;
  if (!a.arrangement.empty()) {
    const Arrangement arr = io::arrangement_from_json(io::read_json_file(a.arrangement));
    if (auto n = arr.braid_rank()) check_rank(g, *n);
    poset = enumerate_faces(arr);
  } else {
    if (a.n < 1) throw MalformedInput("--n must be at least 1");
    check_rank(g, a.n);
    poset = enumerate_faces(braid_arrangement(a.n));
  }
  std::map<int, int> by_dim;
  for (const auto& f : poset->faces()) ++by_dim[f.dim];

  Output out{g};
  out.text << "faces: " << poset->size() << " (";
  Json dims = Json::object();
  bool first = true;
  for (const auto& [d, count] : by_dim) {
    out.text << (first ? "" : ", ") << "dim " << d << ": " << count;
    dims[std::to_string(d)] = count;
    first = false;
  }
  out.text << ")\n";
  out.json["faces"] = poset->size();
  out.json["by_dim"] = dims;
  out.json["chambers"] = poset->chambers().size();

  int code = kOk;
  if (a.oracle) {
    const auto n = poset->arrangement().braid_rank();
    if (!n) throw MalformedInput("--oracle needs a braid arrangement");
    const bool agree = poset->same_as(*faces_from_osp(*n));
    out.text << "oracle: " << (agree ? "agree" : "disagree") << '\n';
    out.json["oracle"] = agree ? "agree" : "disagree";
    if (!agree) code = kOracle;
  }
  write_out(g, io::to_json(*poset));
  out.emit();
  return code;
}

// ---------------------------------------------------------------------------

const char* kRelationGroups[] = {"structure", "monotonicity", "transitivity", "invertibility"};

std::string group_of(const std::string& relation) {
  if (relation == "shape" || relation == "identity" || relation == "composition") return "structure";
  return relation;
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? sep : "") + xs[k];
  return s;
}

int cmd_check(const Global& g, const std::string& path) {
  const DoubleRep rep = load_rep(g, path);
  const ViolationReport report = is_in_J(rep);
  Output out{g};
  for (const char* group : kRelationGroups) {
    std::vector<const Violation*> hits;
    for (const auto& v : report) {
      if (group_of(v.relation) == group) hits.push_back(&v);
    }
    if (hits.empty()) {
      out.text << group << ": pass\n";
    } else {
      out.text << group << ": FAIL (" << hits.size() << (hits.size() == 1 ? " violation" : " violations")
               << "; first: " << hits.front()->relation << " at (" << join(hits.front()->faces, ", ") << "): "
               << hits.front()->detail << ")\n";
    }
  }
  out.text << (report.empty() ? "in J\n" : "not in J\n");
  out.json["in_J"] = report.empty();
  out.json["violations"] = io::to_json(report);
  write_out(g, out.json);
  out.emit();
  return report.empty() ? kOk : kRelation;
}

// ---------------------------------------------------------------------------

struct FunctorArgs {
  std::string rep;
  int i = 0;
  int j = 0;
  std::string verify = "all";
};

int cmd_functor(const Global& g, const FunctorArgs& a) {
  const DoubleRep rep = load_rep(g, a.rep);
  const auto n = rep.poset().arrangement().braid_rank();
  if (!n) throw MalformedInput("extension by zero needs a representation on a braid poset");
  check_rank(g, *n + 1);
  if (a.i < 1 || a.i >= a.j || a.j > *n + 2) {
    throw MalformedInput("need 1 <= i < j <= " + std::to_string(*n + 2));
  }
  const EmbeddingMap emb = iota_braid(*n, a.i, a.j);
  const DoubleRep image = phi_functor(rep, emb).output;

  Output out{g};
  out.json["embedding"] = io::to_json(emb);
  out.text << "extension by zero along " << label(a.i, a.j) << ": A_" << *n << " -> A_" << *n + 1 << '\n';

  const ViolationReport source = is_in_J(rep);
  if (!source.empty()) {
    out.text << "input is not in J: " << source.front().relation << " at (" << join(source.front().faces, ", ") << ")\n";
    out.json["input_in_J"] = false;
    out.json["violations"] = io::to_json(source);
    write_out(g, io::to_json(image));
    out.emit();
    return kRelation;
  }
  out.json["input_in_J"] = true;

  const bool all = a.verify == "all";
  Json checks = Json::object();
  bool ok = true;
  auto record = [&](const std::string& name, const CheckReport& r) {
    for (const auto& c : r.checks) {
      out.text << "  " << name << "/" << c.name << ": " << (c.passed ? "pass" : "FAIL");
      if (!c.passed && !c.detail.empty()) out.text << " (" << c.detail << ")";
      out.text << '\n';
    }
    checks[name] = io::to_json(r);
    ok = ok && r.passed();
  };
  if (all || a.verify == "relations") record("relations", verify_functor_preserves_J(rep, emb));
  if (all || a.verify == "hom") {
    const std::vector<std::pair<std::string, DoubleRep>> partners{
        {"self", rep},
        {"constant(1)", constant_rep(rep.poset_ptr(), 1)},
        {"skyscraper(0)", skyscraper_rep(rep.poset_ptr(), rep.poset().origin(), 1)},
    };
    CheckReport hom;
    for (const auto& [name, other] : partners) {
      for (const auto& c : verify_fully_faithful(rep, other, emb).checks) hom.add(c.name + " (to " + name + ")", c.passed, c.detail);
      for (const auto& c : verify_fully_faithful(other, rep, emb).checks) hom.add(c.name + " (from " + name + ")", c.passed, c.detail);
    }
    record("hom", hom);
  }
  if (all || a.verify == "dual") record("dual", verify_duality_commutes(rep, emb));
  if ((all || a.verify == "simple") && !rep.is_zero()) {
    const SimpleToSimple s = verify_simple_to_simple(rep, emb);
    record("simple", s.report);
  }
  out.json["checks"] = checks;
  out.text << (ok ? "all checks pass\n" : "THEOREM VIOLATION\n");
  out.json["passed"] = ok;
  write_out(g, io::to_json(image));
  out.emit();
  return ok ? kOk : kTheorem;
}

// ---------------------------------------------------------------------------

int cmd_simple(const Global& g, const std::string& path) {
  const DoubleRep rep = load_rep(g, path);
  Output out{g};
  const ViolationReport violations = is_in_J(rep);
  if (!violations.empty()) {
    out.text << "input is not in J: " << violations.front().relation << " at (" << join(violations.front().faces, ", ")
             << ")\n";
    out.json["input_in_J"] = false;
    out.json["violations"] = io::to_json(violations);
    write_out(g, out.json);
    out.emit();
    return kRelation;
  }
  const SimplicityCertificate cert = is_absolutely_simple(rep);
  const std::size_t m2 = cert.total_dim * cert.total_dim;
  out.json["simple"] = cert.simple;
  out.json["algebra_dim"] = cert.algebra_dim;
  out.json["total_dim"] = cert.total_dim;
  if (cert.simple) {
    out.text << "simple (dim A = " << cert.algebra_dim << " = " << superscript_square(cert.total_dim) << ")\n";
  } else {
    out.text << "not simple (dim A = " << cert.algebra_dim << " < " << m2 << " = " << superscript_square(cert.total_dim)
             << ")\n";
  }

  int code = kOk;
  if (cert.simple && rep.poset().arrangement().braid_rank()) {
    const CorollaryVerdict v = corollary_analysis(rep);
    Json verdict;
    verdict["chamber_dims_ok"] = v.chamber_dims_ok;
    verdict["zero_open_cells"] = v.zero_profile;
    if (v.restriction_applicable) {
      Json covering = Json::array();
      for (const auto& [i, j] : v.covering_hyperplanes) covering.push_back(label(i, j));
      verdict["covering_hyperplanes"] = covering;
      if (v.recovered_via) verdict["recovered_via"] = label(v.recovered_via->first, v.recovered_via->second);
      verdict["recovered_in_J"] = v.recovered_in_J;
      verdict["round_trip"] = v.round_trip_ok;
    }
    if (v.wall_bound_checked) verdict["wall_bound_ok"] = v.wall_bound_ok;
    verdict["violations"] = v.violations;
    out.json["corollary"] = verdict;

    if (v.zero_profile && v.recovered_via) {
      out.text << "simple; open cells zero; recovered via " << label(v.recovered_via->first, v.recovered_via->second)
               << "; round-trip " << (v.round_trip_ok ? "OK" : "FAILED") << '\n';
    }
    if (v.theorem_violation()) {
      for (const auto& why : v.violations) out.text << "THEOREM VIOLATION: " << why << '\n';
      code = kTheorem;
    }
  }
  write_out(g, out.json);
  out.emit();
  return code;
}

// ---------------------------------------------------------------------------

int cmd_dual(const Global& g, const std::string& path) {
  const DoubleRep rep = load_rep(g, path);
  const ViolationReport structure = validate_structure(rep);
  if (!structure.empty()) {
    std::cerr << "input fails " << structure.front().relation << " at (" << join(structure.front().faces, ", ") << ")\n";
    return kRelation;
  }
  const Json payload = io::to_json(dual(rep));
  write_out(g, payload);
  if (g.out.empty() && !g.quiet) std::cout << payload.dump(2) << '\n';
  return kOk;
}

int cmd_hom(const Global& g, const std::string& source, const std::string& target) {
  const DoubleRep a = load_rep(g, source);
  const DoubleRep b = load_rep(g, target);
  const HomSpace h = hom_space(a, b);
  Output out{g};
  out.text << "hom dimension: " << h.dimension << '\n';
  out.json["dimension"] = h.dimension;
  Json basis = Json::array();
  for (const auto& m : h.basis) {
    Json components = Json::object();
    for (FaceId c = 0; c < a.poset().size(); ++c) {
      if (m.components[c].size() > 0) components[a.poset().face(c).sign.str()] = io::to_json(m.components[c]);
    }
    basis.push_back(components);
  }
  out.json["basis"] = basis;
  write_out(g, out.json);
  out.emit();
  return kOk;
}

// ---------------------------------------------------------------------------

struct CollinearArgs {
  int n = 0;
  std::vector<std::string> faces;
};

int cmd_collinear(const Global& g, const CollinearArgs& a) {
  if (a.n < 1) throw MalformedInput("--n must be at least 1");
  check_rank(g, a.n);
  const PosetPtr p = braid_poset(a.n);
  Output out{g};
  if (a.faces.empty()) {
    const auto& triples = p->collinear_triples();
    out.text << "collinear triples: " << triples.size() << " of " << p->size() * p->size() * p->size() << '\n';
    out.json["collinear_triples"] = triples.size();
    Json list = Json::array();
    for (const auto& t : triples) list.push_back({p->face(t.a).sign.str(), p->face(t.b).sign.str(), p->face(t.c).sign.str()});
    write_out(g, list);
  } else {
    if (a.faces.size() != 3) throw MalformedInput("give exactly three faces A B C");
    std::vector<FaceId> ids;
    for (const auto& s : a.faces) {
      const auto id = p->find(SignVector::parse(s));
      if (!id) throw MalformedInput("\"" + s + "\" is not a face of A_" + std::to_string(a.n));
      ids.push_back(*id);
    }
    const bool c = collinear(*p, ids[0], ids[1], ids[2]);
    out.text << (c ? "collinear" : "not collinear") << '\n';
    out.json["faces"] = a.faces;
    out.json["collinear"] = c;
    write_out(g, out.json);
  }
  out.emit();
  return kOk;
}

// ---------------------------------------------------------------------------

struct RepArgs {
  int n = 0;
  std::vector<std::string> kinds;
  int rank = 1;
  std::string face;
  std::vector<int> extend;
};

int cmd_rep(const Global& g, const RepArgs& a) {
  if (a.n < 1) throw MalformedInput("--n must be at least 1");
  check_rank(g, a.n + (a.extend.empty() ? 0 : 1));
  if (a.rank < 0) throw MalformedInput("--rank must be nonnegative");
  const PosetPtr p = braid_poset(a.n);
  std::optional<DoubleRep> rep;
  for (const auto& kind : a.kinds) {
    DoubleRep part = zero_rep(p);
    if (kind == "constant") {
      part = constant_rep(p, a.rank);
    } else if (kind == "skyscraper") {
      FaceId f = p->origin();
      if (!a.face.empty()) {
        const auto id = p->find(SignVector::parse(a.face));
        if (!id) throw MalformedInput("\"" + a.face + "\" is not a face of A_" + std::to_string(a.n));
        f = *id;
      }
      part = skyscraper_rep(p, f, a.rank);
    } else if (kind != "zero") {
      throw MalformedInput("unknown kind \"" + kind + "\"");
    }
    rep = rep ? direct_sum(*rep, part) : part;
  }
  if (!rep) rep = zero_rep(p);
  if (!a.extend.empty()) {
    if (a.extend.size() != 2) throw MalformedInput("--extend takes I J");
    if (a.extend[0] < 1 || a.extend[0] >= a.extend[1] || a.extend[1] > a.n + 2) {
      throw MalformedInput("need 1 <= i < j <= " + std::to_string(a.n + 2));
    }
    rep = phi_functor(*rep, iota_braid(a.n, a.extend[0], a.extend[1])).output;
  }
  const Json payload = io::to_json(*rep);
  write_out(g, payload);
  if (g.out.empty() && !g.quiet) std::cout << payload.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Face posets of braid arrangements, double representations and extension by zero"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", g.out, "Write the main result as JSON to this file");
  app.add_flag("--quiet", g.quiet, "Print nothing; report through the exit code");
  app.add_flag("--allow-large", g.allow_large, "Allow braid rank above 4");

  int code = kOk;

  FacesArgs faces;
  auto* sub_faces = app.add_subcommand("faces", "Enumerate the faces of an arrangement");
  auto* faces_n = sub_faces->add_option("--n", faces.n, "Braid rank");
  auto* faces_arr = sub_faces->add_option("--arrangement", faces.arrangement, "Arrangement JSON file");
  faces_n->excludes(faces_arr);
  sub_faces->add_flag("--oracle", faces.oracle, "Cross-check against ordered set partitions");
  sub_faces->callback([&] {
    if (faces_n->count() + faces_arr->count() != 1) throw CLI::ValidationError("faces", "give --n or --arrangement");
    code = cmd_faces(g, faces);
  });

  std::string check_rep;
  auto* sub_check = app.add_subcommand("check", "Check the relations on a representation");
  sub_check->add_option("--rep", check_rep, "Representation JSON file")->required();
  sub_check->callback([&] { code = cmd_check(g, check_rep); });

  FunctorArgs functor;
  auto* sub_functor = app.add_subcommand("functor", "Extend a representation by zero along L(i,j)");
  sub_functor->add_option("--rep", functor.rep, "Representation JSON file")->required();
  sub_functor->add_option("--i", functor.i, "First index")->required();
  sub_functor->add_option("--j", functor.j, "Second index")->required();
  sub_functor->add_option("--verify", functor.verify, "Checks to run")
      ->check(CLI::IsMember({"all", "relations", "hom", "dual", "simple", "none"}));
  sub_functor->callback([&] { code = cmd_functor(g, functor); });

  std::string simple_rep;
  auto* sub_simple = app.add_subcommand("simple", "Test absolute simplicity");
  sub_simple->add_option("--rep", simple_rep, "Representation JSON file")->required();
  sub_simple->callback([&] { code = cmd_simple(g, simple_rep); });

  std::string dual_rep;
  auto* sub_dual = app.add_subcommand("dual", "Dual representation");
  sub_dual->add_option("--rep", dual_rep, "Representation JSON file")->required();
  sub_dual->callback([&] { code = cmd_dual(g, dual_rep); });

  std::string hom_source, hom_target;
  auto* sub_hom = app.add_subcommand("hom", "Space of morphisms between two representations");
  sub_hom->add_option("--rep", hom_source, "Source representation")->required();
  sub_hom->add_option("--rep2", hom_target, "Target representation")->required();
  sub_hom->callback([&] { code = cmd_hom(g, hom_source, hom_target); });

  CollinearArgs col;
  auto* sub_col = app.add_subcommand("collinear", "Collinearity of faces of A_n");
  sub_col->add_option("--n", col.n, "Braid rank")->required();
  sub_col->add_option("faces", col.faces, "Sign strings A B C; omit to count all collinear triples");
  sub_col->callback([&] { code = cmd_collinear(g, col); });

  RepArgs rep;
  auto* sub_rep = app.add_subcommand("rep", "Build a standard representation of A_n");
  sub_rep->add_option("--n", rep.n, "Braid rank")->required();
  sub_rep->add_option("--kind", rep.kinds, "constant, skyscraper or zero; repeat for a direct sum")->required();
  sub_rep->add_option("--rank", rep.rank, "Dimension of each nonzero space");
  sub_rep->add_option("--face", rep.face, "Face of the skyscraper (default: origin)");
  sub_rep->add_option("--extend", rep.extend, "Extend by zero along L(I,J)")->expected(2);
  sub_rep->callback([&] { code = cmd_rep(g, rep); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? kOk : kMalformed;
  } catch (const InternalConsistencyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOracle;
  } catch (const MalformedInput& e) {
    std::cerr << "malformed input: " << e.what() << '\n';
    return kMalformed;
  } catch (const StructuralError& e) {
    std::cerr << "malformed input: " << e.what() << '\n';
    return kMalformed;
  } catch (const DomainError& e) {
    std::cerr << "malformed input: " << e.what() << '\n';
    return kMalformed;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "malformed input: " << e.what() << '\n';
    return kMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMalformed;
  }
  return code;
}
