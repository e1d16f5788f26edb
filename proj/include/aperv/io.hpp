#pragma once

// JSON interchange. Rationals are strings "p/q" (or "p"), faces are sign
// strings over "+-0" in hyperplane order, and key order is canonical so that
// output is byte-stable.

#include <json.hpp>

#include "aperv/arrangement.hpp"
#include "aperv/embedfunctor.hpp"
#include "aperv/quiverrep.hpp"

namespace aperv::io {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& q);
Json to_json(const QVector& v);
Json to_json(const QMatrix& m);  // row-major list of rows
QVector vector_from_json(const Json& j);
/// `rows` x `cols` is required because an empty list cannot carry a width.
QMatrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols);

Json to_json(const Arrangement& arr);
Arrangement arrangement_from_json(const Json& j);

/// Arrangement, faces with dim and witness, and Hasse edges.
Json to_json(const FacePoset& poset);

/// {"type": "braid", "n": n} for braid arrangements, inline otherwise.
Json poset_reference(const FacePoset& poset);
PosetPtr poset_from_reference(const Json& j);

/// Maps are written on Hasse edges only, keyed "<lower>/<upper>" for gamma
/// and "<upper>/<lower>" for delta; edges touching a zero space are omitted.
Json to_json(const DoubleRep& rep);
/// Recomputes all-pairs composites from the Hasse edges. Throws
/// MalformedInput (bad JSON shape) or StructuralError (bad matrix shape).
DoubleRep rep_from_json(const Json& j);

Json to_json(const ViolationReport& report);
Json to_json(const CheckReport& report);
Json to_json(const EmbeddingMap& emb);
EmbeddingMap embedding_from_json(const Json& j);

/// Reads a whole file as JSON; throws MalformedInput on I/O or parse errors.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace aperv::io
