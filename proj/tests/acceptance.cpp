// Acceptance suite: one PASS/FAIL line per criterion. Exit status is 0 when
// everything passes, 4 when a corollary check reports a theorem violation,
// and 1 for any other failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "aperv/embedfunctor.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace aperv;

namespace {

constexpr double kFaceSmallLimitSeconds = 10.0;   // n <= 3
constexpr double kFaceLargeLimitSeconds = 120.0;  // n = 4
constexpr double kEmbeddingLimitSeconds = 30.0;
constexpr double kCollinearLimitSeconds = 120.0;
constexpr double kPreservesJLimitSeconds = 300.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  bool theorem_violation = false;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail << "[first failure: " << why << "] ";
    pass = false;
  }
};

std::vector<std::pair<int, int>> hyperplanes_of(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= n + 2; ++i) {
    for (int j = i + 1; j <= n + 2; ++j) out.emplace_back(i, j);
  }
  return out;
}

bool contains(const ViolationReport& r, const std::string& relation, const std::vector<std::string>& faces) {
  for (const auto& v : r) {
    if (v.relation == relation && v.faces == faces) return true;
  }
  return false;
}

void face_counts(Outcome& o) {
  const long expected[] = {0, 3, 13, 75, 541};
  for (int n = 1; n <= 4; ++n) {
    const auto start = Clock::now();
    const PosetPtr p = enumerate_faces(braid_arrangement(n));
    const double t = seconds_since(start);
    const long faces = static_cast<long>(p->size());
    const long chambers = static_cast<long>(p->chambers().size());
    o.detail << (n > 1 ? "; " : "") << "n=" << n << ": " << faces << " faces, " << chambers << " chambers, " << t << " s";
    if (faces != oracle::fubini(n + 1) || faces != expected[n]) o.fail("face count for n=" + std::to_string(n));
    if (chambers != oracle::factorial(n + 1)) o.fail("chamber count for n=" + std::to_string(n));
    if (static_cast<long>(ordered_set_partitions(n + 1).size()) != faces) o.fail("ordered set partitions for n=" + std::to_string(n));
    // The enumerated sign vectors are exactly those of ordered set partitions.
    const PosetPtr osp = faces_from_osp(n);
    if (!p->same_as(*osp)) o.fail("sign vectors differ from ordered set partitions for n=" + std::to_string(n));
    if (t > (n <= 3 ? kFaceSmallLimitSeconds : kFaceLargeLimitSeconds)) o.fail("time limit for n=" + std::to_string(n));
  }
}

void embedding_theorem(Outcome& o) {
  const auto start = Clock::now();
  int cases = 0;
  for (int n = 1; n <= 2; ++n) {
    for (const auto& [i, j] : hyperplanes_of(n)) {
      const std::string tag = "n=" + std::to_string(n) + " L(" + std::to_string(i) + "," + std::to_string(j) + ")";
      try {
        const EmbeddingMap b = iota_braid(n, i, j);
        const EmbeddingMap g = iota_geometric(n, i, j);
        if (b.table != g.table) o.fail("tables differ for " + tag);
        const CheckReport r = verify_order_embedding(b);
        if (r.checks.size() != 5 || !r.passed()) o.fail("order-embedding checks for " + tag);
        if (static_cast<long>(b.table.size()) != oracle::fubini(n + 1)) o.fail("image size for " + tag);
      } catch (const std::exception& e) {
        o.fail(tag + ": " + e.what());
      }
      ++cases;
    }
  }
  const double t = seconds_since(start);
  o.detail << cases << " embeddings, " << t << " s";
  if (t > kEmbeddingLimitSeconds) o.fail("time limit");
}

void collinearity(Outcome& o) {
  const auto start = Clock::now();
  const PosetPtr p = braid_poset(2);
  const oracle::SegmentCollinearity sampled(*p, 2, {1, 2, 3}, {1, 2});
  int triples = 0, positives = 0, fm_mismatch = 0, sample_mismatch = 0;
  for (FaceId a = 0; a < p->size(); ++a) {
    for (FaceId b = 0; b < p->size(); ++b) {
      for (FaceId c = 0; c < p->size(); ++c) {
        const bool lp = collinear(*p, a, b, c);
        const bool fm = oracle::fm_collinear(2, p->face(a).sign.str(), p->face(b).sign.str(), p->face(c).sign.str());
        fm_mismatch += lp != fm;
        sample_mismatch += lp != sampled(a, b, c);
        positives += lp;
        ++triples;
      }
    }
  }
  const double t = seconds_since(start);
  o.detail << triples << " triples, " << positives << " collinear, " << fm_mismatch << " Fourier-Motzkin mismatches, "
           << sample_mismatch << " segment-walk mismatches, " << t << " s";
  if (triples != 2197) o.fail("triple count");
  if (fm_mismatch != 0) o.fail("Fourier-Motzkin oracle disagrees");
  if (sample_mismatch != 0) o.fail("segment-walk oracle disagrees");
  if (t > kCollinearLimitSeconds) o.fail("time limit");
}

void relations(Outcome& o) {
  int in_j = 0;
  for (int n = 1; n <= 2; ++n) {
    for (const auto& [name, rep] : fixture::suite(n)) {
      if (!is_in_J(rep).empty()) o.fail(name + " on A_" + std::to_string(n) + " is not in J");
      ++in_j;
    }
  }
  o.detail << in_j << " suite reps in J; ";

  const ViolationReport mono = is_in_J(fixture::broken_monotonicity_a1());
  if (!contains(mono, "monotonicity", {"0", "+"})) o.fail("broken monotonicity not named at (0, +)");
  const ViolationReport trans = is_in_J(fixture::broken_transitivity_a2());
  if (!contains(trans, "transitivity", fixture::kTransitivityWitness)) o.fail("broken transitivity witness missing");
  for (const auto& v : trans) {
    if (v.relation != "transitivity") o.fail("broken transitivity fixture reports " + v.relation);
  }
  const ViolationReport inv = is_in_J(fixture::broken_invertibility_a1());
  if (!contains(inv, "invertibility", {"+", "-", "0"})) o.fail("broken invertibility not named at (+, -, 0)");
  const ViolationReport comp = is_in_J(fixture::broken_composition_a2());
  bool composition_named = false;
  for (const auto& v : comp) {
    if (v.relation == "composition" && v.faces.size() == 3 && v.faces[0] == "000") composition_named = true;
  }
  if (!composition_named) o.fail("broken composition not named");
  const PosetPtr a1 = braid_poset(1);
  if (!contains(is_in_J(skyscraper_rep(a1, a1->id_of("+"), 1)), "monotonicity", {"0", "+"})) {
    o.fail("skyscraper at a chamber passes");
  }
  o.detail << "5 broken fixtures named";
}

void preserves_j(Outcome& o) {
  const auto start = Clock::now();
  int cases = 0;
  for (const auto& [i, j] : hyperplanes_of(1)) {
    const EmbeddingMap e = iota_braid(1, i, j);
    for (const auto& [name, rep] : fixture::suite(1)) {
      const CheckReport r = verify_functor_preserves_J(rep, e);
      for (const auto& c : r.checks) {
        if (!c.passed) o.fail(name + " L(" + std::to_string(i) + "," + std::to_string(j) + "): " + c.name);
      }
      ++cases;
    }
  }
  const double t = seconds_since(start);
  o.detail << cases << " cases, " << t << " s";
  if (t > kPreservesJLimitSeconds) o.fail("time limit");
}

void fully_faithful(Outcome& o) {
  const auto reps = fixture::suite(1);
  int cases = 0;
  for (const auto& [i, j] : hyperplanes_of(1)) {
    const EmbeddingMap e = iota_braid(1, i, j);
    for (const auto& a : reps) {
      for (const auto& b : reps) {
        const CheckReport r = verify_fully_faithful(a.rep, b.rep, e);
        for (const auto& c : r.checks) {
          if (!c.passed) o.fail(a.name + " -> " + b.name + ": " + c.name + " " + c.detail);
        }
        ++cases;
      }
    }
  }
  o.detail << reps.size() << " reps, " << cases << " cases (ordered pairs x 3 hyperplanes)";
  if (reps.size() < 4) o.fail("suite too small");
}

void duality(Outcome& o) {
  int cases = 0;
  for (int n = 1; n <= 2; ++n) {
    for (const auto& [name, rep] : fixture::suite(n)) {
      if (!(dual(dual(rep)) == rep)) o.fail("dual is not an involution on " + name);
      if (!is_in_J(dual(rep)).empty()) o.fail("dual of " + name + " leaves J");
      ++cases;
    }
  }
  for (const auto& bad : {fixture::broken_monotonicity_a1(), fixture::broken_invertibility_a1()}) {
    if (is_in_J(dual(bad)).empty()) o.fail("dual of a broken fixture is in J");
  }
  if (is_in_J(dual(fixture::broken_transitivity_a2())).empty()) o.fail("dual of broken transitivity is in J");
  for (const auto& [i, j] : hyperplanes_of(1)) {
    const EmbeddingMap e = iota_braid(1, i, j);
    for (const auto& [name, rep] : fixture::suite(1)) {
      if (!verify_duality_commutes(rep, e).passed()) o.fail("Phi(dual) != dual(Phi) on " + name);
      ++cases;
    }
  }
  o.detail << cases << " cases";
}

void simple_to_simple(Outcome& o) {
  const PosetPtr a1 = braid_poset(1);
  const PosetPtr a2 = braid_poset(2);
  const SimplicityCertificate c1 = is_absolutely_simple(constant_rep(a1, 1));
  if (!c1.simple || c1.algebra_dim != 9 || c1.total_dim != 3) o.fail("constant(1) on A_1");
  for (const auto& [i, j] : hyperplanes_of(1)) {
    const EmbeddingMap e = iota_braid(1, i, j);
    const SimpleToSimple img = verify_simple_to_simple(constant_rep(a1, 1), e);
    if (!img.image.simple || img.image.algebra_dim != 9 || img.image.total_dim != 3) o.fail("image of constant(1)");
    const SimpleToSimple sky = verify_simple_to_simple(skyscraper_rep(a1, 0, 1), e);
    if (!sky.image.simple || sky.image.algebra_dim != 1) o.fail("image of skyscraper");
    for (const auto& [name, rep] : fixture::suite(1)) {
      if (!verify_simple_to_simple(rep, e).report.passed()) o.fail("simple-to-simple on " + name);
    }
  }
  for (const PosetPtr& p : {a1, a2}) {
    const SimplicityCertificate s = is_absolutely_simple(skyscraper_rep(p, 0, 1));
    if (!s.simple || s.algebra_dim != 1) o.fail("skyscraper");
  }
  int sums = 0;
  for (int n = 1; n <= 2; ++n) {
    for (const auto& [name, rep] : fixture::suite(n)) {
      if (name.find('+') == std::string::npos) continue;
      const SimplicityCertificate s = is_absolutely_simple(rep);
      if (s.simple || s.algebra_dim >= s.total_dim * s.total_dim) o.fail(name + " passes the dimension count");
      ++sums;
    }
  }
  o.detail << "constant(1): 9 = 3^2 before and after; skyscrapers: 1; " << sums << " direct sums rejected";
}

void corollaries(Outcome& o) {
  int simple = 0, zero_profile = 0;
  for (const auto& [name, rep] : fixture::suite_a2_with_images()) {
    if (rep.is_zero() || !is_in_J(rep).empty() || !is_absolutely_simple(rep).simple) continue;
    ++simple;
    const CorollaryVerdict v = corollary_analysis(rep);
    if (v.zero_profile) {
      ++zero_profile;
      if (!v.round_trip_ok) o.fail(name + " does not round-trip");
    }
    if (v.theorem_violation()) {
      o.theorem_violation = true;
      for (const auto& why : v.violations) o.fail(name + ": " + why);
    }
  }
  o.detail << simple << " simple reps, " << zero_profile << " with zero open cells";
  if (simple == 0 || zero_profile == 0) o.fail("suite exercises no case");
}

void phi_well_defined(Outcome& o) {
  long comparisons = 0;
  for (int n = 1; n <= 2; ++n) {
    for (const auto& [name, rep] : fixture::suite(n)) {
      const FacePoset& p = rep.poset();
      for (FaceId a = 0; a < p.size(); ++a) {
        for (FaceId b = 0; b < p.size(); ++b) {
          const QMatrix through_origin = phi(rep, a, b);
          for (FaceId c = 0; c < p.size(); ++c) {
            if (!p.leq(c, a) || !p.leq(c, b)) continue;
            if (phi_through(rep, a, b, c) != through_origin) o.fail(name + " at " + p.face(a).sign.str() + "," + p.face(b).sign.str());
            ++comparisons;
          }
        }
      }
    }
  }
  o.detail << comparisons << " comparisons";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "face counts match ordered set partitions", face_counts},
      {2, "iota_braid equals iota_geometric and is an order embedding", embedding_theorem},
      {3, "collinear agrees with a Fourier-Motzkin oracle on A_2", collinearity},
      {4, "relations suite", relations},
      {5, "extension by zero preserves J", preserves_j},
      {6, "extension by zero preserves hom dimensions", fully_faithful},
      {7, "duality", duality},
      {8, "simple objects map to simple objects", simple_to_simple},
      {9, "open-cell and wall bounds, recovery round trip", corollaries},
      {10, "phi is independent of the common lower bound", phi_well_defined},
  };
  bool all = true;
  bool theorem = false;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str());
    if (o.theorem_violation) std::printf("THEOREM VIOLATION in criterion %d\n", c.id);
    std::fflush(stdout);
    all = all && o.pass;
    theorem = theorem || o.theorem_violation;
  }
  if (theorem) return 4;
  return all ? 0 : 1;
}
