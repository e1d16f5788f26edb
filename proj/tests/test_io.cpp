#include <doctest.h>

#include <filesystem>

#include "aperv/io.hpp"
#include "fixtures.hpp"

using namespace aperv;
using aperv::io::Json;

TEST_CASE("rationals and matrices") {
  CHECK(io::to_json(Rational(-3, 6)) == "-1/2");
  CHECK(io::vector_from_json(Json::parse(R"(["1/2", 3, "-4"])")) == (QVector(3) << Rational(1, 2), 3, -4).finished());
  const QMatrix m = fixture::mat(2, 2, {1, 2, 3, 4});
  CHECK(io::matrix_from_json(io::to_json(m), 2, 2) == m);
  CHECK(io::matrix_from_json(Json::array(), 0, 3).cols() == 3);
  CHECK_THROWS_AS(io::matrix_from_json(io::to_json(m), 2, 3), MalformedInput);
  CHECK_THROWS_AS(io::vector_from_json(Json::parse(R"(["1/0"])")), MalformedInput);
  CHECK_THROWS_AS(io::vector_from_json(Json::parse(R"([1.5])")), MalformedInput);
}

TEST_CASE("arrangement round trip") {
  const Arrangement a = braid_arrangement(2);
  const Arrangement back = io::arrangement_from_json(io::to_json(a));
  CHECK(back == a);
  CHECK(back.braid_rank() == 2);

  const Arrangement chart = rn_chart(2);
  const Arrangement chart_back = io::arrangement_from_json(io::to_json(chart));
  CHECK(chart_back == chart);
  CHECK_FALSE(chart_back.braid_rank().has_value());
  CHECK(io::poset_from_reference(io::poset_reference(*enumerate_faces(chart)))->size() == 13);

  CHECK_THROWS_AS(io::arrangement_from_json(Json::parse(R"({"ambient_dim": 2})")), MalformedInput);
  CHECK_THROWS_AS(io::arrangement_from_json(Json::parse(R"({"ambient_dim": 2, "hyperplanes": [{"label": "H", "normal": ["1"]}]})")),
                  MalformedInput);
}

TEST_CASE("poset references") {
  CHECK(io::poset_reference(*braid_poset(2)) == Json::parse(R"({"type": "braid", "n": 2})"));
  CHECK(io::poset_from_reference(Json::parse(R"({"type": "braid", "n": 1})")) == braid_poset(1));
  CHECK_THROWS_AS(io::poset_from_reference(Json::parse(R"({"type": "braid", "n": 0})")), MalformedInput);
  CHECK_THROWS_AS(io::poset_from_reference(Json::parse(R"({"type": "other"})")), MalformedInput);

  const Json poset = io::to_json(*braid_poset(1));
  CHECK(poset["faces"].size() == 3);
  CHECK(poset["faces"][0]["sign"] == "0");
  CHECK(poset["hasse"] == Json::parse(R"([["0", "-"], ["0", "+"]])"));
}

TEST_CASE("rep round trip") {
  for (int n = 1; n <= 2; ++n) {
    for (const auto& [name, rep] : fixture::suite(n)) CHECK_MESSAGE(io::rep_from_json(io::to_json(rep)) == rep, name);
  }
  CHECK(io::rep_from_json(io::to_json(fixture::broken_transitivity_a2())) == fixture::broken_transitivity_a2());

  const Json t = io::to_json(fixture::twisted_a1());
  CHECK(t["dims"] == Json::parse(R"({"0": 2, "-": 1, "+": 1})"));
  CHECK(t["gamma"]["0/-"] == Json::parse(R"([["1", "1"]])"));
  CHECK(t["delta"]["+/0"] == Json::parse(R"([["1"], ["0"]])"));

  // Edges touching a zero space are omitted and default to zero.
  const Json sky = io::to_json(skyscraper_rep(braid_poset(2), 0, 1));
  CHECK(sky["gamma"].empty());
  CHECK(sky["delta"].empty());
  CHECK(io::rep_from_json(sky) == skyscraper_rep(braid_poset(2), 0, 1));

  // Output is byte-stable.
  CHECK(io::to_json(constant_rep(braid_poset(2), 1)).dump() == io::to_json(constant_rep(braid_poset(2), 1)).dump());
}

TEST_CASE("rep parse errors") {
  Json good = io::to_json(constant_rep(braid_poset(1), 1));

  Json missing = good;
  missing["gamma"].erase("0/+");
  CHECK_THROWS_AS(io::rep_from_json(missing), MalformedInput);

  Json not_edge = good;
  not_edge["gamma"]["-/+"] = Json::parse(R"([["1"]])");
  CHECK_THROWS_AS(io::rep_from_json(not_edge), MalformedInput);

  Json bad_face = good;
  bad_face["dims"]["++"] = 1;
  CHECK_THROWS_AS(io::rep_from_json(bad_face), MalformedInput);

  Json negative = good;
  negative["dims"]["+"] = -1;
  CHECK_THROWS_AS(io::rep_from_json(negative), MalformedInput);

  Json wrong_shape = good;
  wrong_shape["gamma"]["0/+"] = Json::parse(R"([["1", "2"]])");
  CHECK_THROWS_AS(io::rep_from_json(wrong_shape), MalformedInput);

  Json no_poset = good;
  no_poset.erase("poset");
  CHECK_THROWS_AS(io::rep_from_json(no_poset), MalformedInput);
}

TEST_CASE("reports") {
  const Json v = io::to_json(is_in_J(fixture::broken_monotonicity_a1()));
  REQUIRE(v.is_array());
  CHECK(v[0]["relation"] == "monotonicity");
  CHECK(v[0]["faces"] == Json::parse(R"(["0", "+"])"));

  const Json c = io::to_json(verify_order_embedding(iota_braid(1, 1, 2)));
  CHECK(c.size() == 5);
  CHECK(c[0]["check"] == "injective");
  CHECK(c[0]["pass"] == true);
}

TEST_CASE("embedding round trip") {
  const EmbeddingMap e = iota_braid(1, 1, 3);
  const Json j = io::to_json(e);
  CHECK(j["table"]["-"] == "-0+");
  const EmbeddingMap back = io::embedding_from_json(j);
  CHECK(back.table == e.table);
  CHECK(back.i == 1);
  CHECK(back.j == 3);

  Json partial = j;
  partial["table"].erase("+");
  CHECK_THROWS_AS(io::embedding_from_json(partial), MalformedInput);
  Json out_of_range = j;
  out_of_range["j"] = 4;
  CHECK_THROWS_AS(io::embedding_from_json(out_of_range), MalformedInput);
}

TEST_CASE("files") {
  const auto path = std::filesystem::temp_directory_path() / "aperv_io_test.json";
  const Json rep = io::to_json(constant_rep(braid_poset(1), 2));
  io::write_json_file(path.string(), rep);
  CHECK(io::read_json_file(path.string()) == rep);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(io::read_json_file(path.string()), MalformedInput);
}
