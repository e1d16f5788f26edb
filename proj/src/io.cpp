#include "aperv/io.hpp"

#include <fstream>
#include <sstream>

namespace aperv::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedInput(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw MalformedInput(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw MalformedInput("rational must be a string \"p/q\" or an integer, got " + j.dump());
}

std::pair<std::string, std::string> split_key(const std::string& key) {
  const auto slash = key.find('/');
  if (slash == std::string::npos) throw MalformedInput("map key \"" + key + "\" is not \"<face>/<face>\"");
  return {key.substr(0, slash), key.substr(slash + 1)};
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const QVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const QMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

QVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw MalformedInput("expected a list of rationals");
  QVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = rational_from_json(j[k]);
  return v;
}

QMatrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    throw MalformedInput("expected a matrix with " + std::to_string(rows) + " rows");
  }
  QMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw MalformedInput("matrix row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rational_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

Json to_json(const Arrangement& arr) {
  Json out;
  out["ambient_dim"] = arr.ambient_dim();
  out["subspace"] = to_json(arr.subspace());
  Json hs = Json::array();
  for (const auto& h : arr.hyperplanes()) hs.push_back({{"label", h.label}, {"normal", to_json(h.normal)}});
  out["hyperplanes"] = std::move(hs);
  return out;
}

Arrangement arrangement_from_json(const Json& j) {
  const int dim = int_field(j, "ambient_dim");
  if (dim <= 0) throw MalformedInput("ambient_dim must be positive");
  QMatrix subspace(0, dim);
  if (j.contains("subspace")) {
    const Json& rows = j.at("subspace");
    if (!rows.is_array()) throw MalformedInput("subspace must be a list of rows");
    subspace = matrix_from_json(rows, static_cast<Eigen::Index>(rows.size()), dim);
  }
  std::vector<Hyperplane> hyperplanes;
  const Json& hs = field(j, "hyperplanes");
  if (!hs.is_array()) throw MalformedInput("hyperplanes must be a list");
  for (const Json& h : hs) {
    const Json& lbl = field(h, "label");
    if (!lbl.is_string()) throw MalformedInput("hyperplane label must be a string");
    QVector normal = vector_from_json(field(h, "normal"));
    if (normal.size() != dim) throw MalformedInput("hyperplane " + lbl.get<std::string>() + " normal has the wrong length");
    hyperplanes.push_back({lbl.get<std::string>(), std::move(normal)});
  }
  Arrangement arr(dim, std::move(subspace), std::move(hyperplanes));
  // Recognise braid arrangements so downstream consumers get the braid tag.
  const auto m = static_cast<int>(dim) - 1;
  if (m >= 1) {
    const Arrangement braid = braid_arrangement(m);
    if (braid == arr) return braid;
  }
  return arr;
}

Json to_json(const FacePoset& poset) {
  Json out;
  out["arrangement"] = to_json(poset.arrangement());
  Json faces = Json::array();
  for (const auto& f : poset.faces()) {
    faces.push_back({{"sign", f.sign.str()}, {"dim", f.dim}, {"witness", to_json(f.witness)}});
  }
  out["faces"] = std::move(faces);
  Json hasse = Json::array();
  for (const auto& [lo, up] : poset.hasse()) hasse.push_back({poset.face(lo).sign.str(), poset.face(up).sign.str()});
  out["hasse"] = std::move(hasse);
  return out;
}

Json poset_reference(const FacePoset& poset) {
  if (auto n = poset.arrangement().braid_rank()) return Json{{"type", "braid"}, {"n", *n}};
  return Json{{"type", "arrangement"}, {"arrangement", to_json(poset.arrangement())}};
}

PosetPtr poset_from_reference(const Json& j) {
  const Json& type = field(j, "type");
  if (type == "braid") {
    const int n = int_field(j, "n");
    if (n < 1) throw MalformedInput("braid rank must be >= 1");
    return braid_poset(n);
  }
  if (type == "arrangement") {
    const Arrangement arr = arrangement_from_json(field(j, "arrangement"));
    if (auto n = arr.braid_rank()) return braid_poset(*n);
    return enumerate_faces(arr);
  }
  throw MalformedInput("unknown poset type " + type.dump());
}

Json to_json(const DoubleRep& rep) {
  const FacePoset& p = rep.poset();
  Json out;
  out["poset"] = poset_reference(p);
  Json dims = Json::object();
  for (FaceId c = 0; c < p.size(); ++c) dims[p.face(c).sign.str()] = rep.dim(c);
  Json gamma = Json::object();
  Json delta = Json::object();
  for (const auto& [lo, up] : p.hasse()) {
    if (rep.dim(lo) == 0 || rep.dim(up) == 0) continue;
    const std::string l = p.face(lo).sign.str();
    const std::string u = p.face(up).sign.str();
    gamma[l + "/" + u] = to_json(rep.gamma(lo, up));
    delta[u + "/" + l] = to_json(rep.delta(up, lo));
  }
  out["dims"] = std::move(dims);
  out["gamma"] = std::move(gamma);
  out["delta"] = std::move(delta);
  return out;
}

DoubleRep rep_from_json(const Json& j) {
  PosetPtr poset = poset_from_reference(field(j, "poset"));
  const FacePoset& p = *poset;

  std::vector<int> dims(p.size(), 0);
  const Json& jd = field(j, "dims");
  if (!jd.is_object()) throw MalformedInput("dims must be an object keyed by sign strings");
  for (const auto& [key, value] : jd.items()) {
    const auto id = p.find(SignVector::parse(key));
    if (!id) throw MalformedInput("dims names unknown face \"" + key + "\"");
    if (!value.is_number_integer() || value.get<int>() < 0) throw MalformedInput("dims[\"" + key + "\"] must be a nonnegative integer");
    dims[*id] = value.get<int>();
  }

  EdgeMaps edges;
  for (const auto& [lo, up] : p.hasse()) {
    edges.gamma.push_back(QMatrix::Zero(dims[up], dims[lo]));
    edges.delta.push_back(QMatrix::Zero(dims[lo], dims[up]));
  }
  auto edge_of = [&](FaceId lo, FaceId up, const std::string& key) {
    const auto& h = p.hasse();
    auto it = std::lower_bound(h.begin(), h.end(), std::make_pair(lo, up));
    if (it == h.end() || *it != std::make_pair(lo, up)) throw MalformedInput("\"" + key + "\" is not a Hasse edge");
    return static_cast<std::size_t>(it - h.begin());
  };
  auto lookup = [&](const std::string& sign, const std::string& key) {
    const auto id = p.find(SignVector::parse(sign));
    if (!id) throw MalformedInput("map key \"" + key + "\" names an unknown face");
    return *id;
  };

  std::vector<bool> seen_gamma(p.hasse().size(), false);
  std::vector<bool> seen_delta(p.hasse().size(), false);
  if (j.contains("gamma")) {
    for (const auto& [key, value] : j.at("gamma").items()) {
      const auto [l, u] = split_key(key);
      const FaceId lo = lookup(l, key);
      const FaceId up = lookup(u, key);
      const std::size_t k = edge_of(lo, up, key);
      edges.gamma[k] = matrix_from_json(value, dims[up], dims[lo]);
      seen_gamma[k] = true;
    }
  }
  if (j.contains("delta")) {
    for (const auto& [key, value] : j.at("delta").items()) {
      const auto [u, l] = split_key(key);
      const FaceId up = lookup(u, key);
      const FaceId lo = lookup(l, key);
      const std::size_t k = edge_of(lo, up, key);
      edges.delta[k] = matrix_from_json(value, dims[lo], dims[up]);
      seen_delta[k] = true;
    }
  }
  for (std::size_t k = 0; k < p.hasse().size(); ++k) {
    const auto [lo, up] = p.hasse()[k];
    if (dims[lo] > 0 && dims[up] > 0 && (!seen_gamma[k] || !seen_delta[k])) {
      throw MalformedInput("missing map on Hasse edge " + p.face(lo).sign.str() + "/" + p.face(up).sign.str());
    }
  }
  return DoubleRep::from_hasse(std::move(poset), std::move(dims), edges);
}

Json to_json(const ViolationReport& report) {
  Json out = Json::array();
  for (const auto& v : report) out.push_back({{"relation", v.relation}, {"faces", v.faces}, {"detail", v.detail}});
  return out;
}

Json to_json(const CheckReport& report) {
  Json out = Json::array();
  for (const auto& c : report.checks) {
    Json entry{{"check", c.name}, {"pass", c.passed}};
    if (!c.detail.empty()) entry["detail"] = c.detail;
    out.push_back(std::move(entry));
  }
  return out;
}

Json to_json(const EmbeddingMap& emb) {
  Json out;
  out["n"] = emb.n;
  out["i"] = emb.i;
  out["j"] = emb.j;
  Json table = Json::object();
  for (FaceId s = 0; s < emb.table.size(); ++s) {
    table[emb.source->face(s).sign.str()] = emb.target->face(emb.table[s]).sign.str();
  }
  out["table"] = std::move(table);
  return out;
}

EmbeddingMap embedding_from_json(const Json& j) {
  EmbeddingMap emb;
  emb.n = int_field(j, "n");
  emb.i = int_field(j, "i");
  emb.j = int_field(j, "j");
  if (emb.n < 1 || emb.i < 1 || emb.i >= emb.j || emb.j > emb.n + 2) throw MalformedInput("embedding indices out of range");
  emb.source = braid_poset(emb.n);
  emb.target = braid_poset(emb.n + 1);
  emb.table.assign(emb.source->size(), 0);
  std::vector<bool> seen(emb.source->size(), false);
  const Json& table = field(j, "table");
  if (!table.is_object()) throw MalformedInput("table must be an object");
  for (const auto& [key, value] : table.items()) {
    const auto s = emb.source->find(SignVector::parse(key));
    if (!s || !value.is_string()) throw MalformedInput("bad table entry \"" + key + "\"");
    const auto t = emb.target->find(SignVector::parse(value.get<std::string>()));
    if (!t) throw MalformedInput("table maps to unknown face " + value.dump());
    emb.table[*s] = *t;
    seen[*s] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw MalformedInput("table does not cover every source face");
  return emb;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace aperv::io
