#include <catch2/catch_amalgamated.hpp>

#include "mvnet/checks.hpp"
#include "support.hpp"

using namespace mvnet;

// Randomized statement verification at unit scale; the acceptance suite
// repeats this over seeds 0..999. A statement may only fail when its
// hypotheses fail, and the hypothesis violation must be reported.
TEST_CASE("random instances never falsify a statement") {
  for (std::uint32_t seed = 0; seed < 150; ++seed) {
    CAPTURE(seed);
    const MultivaluedMap f = testutil::random_instance(seed);
    StatementVerifier verifier(f);
    for (const auto& [id, description] : statement_ids()) {
      const Verdict v = verifier.verify(id);
      CAPTURE(id);
      if (v.failed()) CHECK_FALSE(v.hypothesis_ok);
    }
  }
}

TEST_CASE("trap and reachability statements hold for stepwise versions") {
  for (std::uint32_t seed = 0; seed < 150; ++seed) {
    CAPTURE(seed);
    StatementVerifier verifier(stepwise(testutil::random_instance(seed)));
    const Verdict trap = verifier.verify("prop1");
    CHECK(trap.hypothesis_ok);
    CHECK(trap.outcome == Verdict::Outcome::kPass);
    const Verdict reach = verifier.verify("prop2");
    CHECK(reach.hypothesis_ok);
    CHECK(reach.outcome == Verdict::Outcome::kPass);
  }
}

TEST_CASE("edge and cycle transfer statements hold unconditionally") {
  // These have no hypothesis beyond the instance itself, so any failure is
  // a defect regardless of seed.
  for (std::uint32_t seed = 0; seed < 60; ++seed) {
    CAPTURE(seed);
    StatementVerifier verifier(testutil::random_instance(seed));
    for (const std::string id : {"lemma1", "lemma2", "lemma3", "lemma4", "lemma5", "thm1",
                                 "thm2", "prop3"}) {
      CAPTURE(id);
      const Verdict v = verifier.verify(id);
      CHECK(v.hypothesis_ok);
      CHECK(v.outcome == Verdict::Outcome::kPass);
    }
  }
}
