#include <catch2/catch_amalgamated.hpp>

#include "mvnet/conversion.hpp"
#include "mvnet/checks.hpp"
#include "support.hpp"

using namespace mvnet;

TEST_CASE("embedding examples") {
  MultiSpace sp({3, 2, 2});
  CHECK(embed(sp, {2, 1, 1}) == BoolState{1, 1, 0, 1, 0, 1, 0});
  CHECK(embed(sp, {0, 0, 0}) == BoolState(7, 0));
  MultiSpace boolean({1, 1, 1});
  CHECK(embed(boolean, {1, 0, 1}) == BoolState{1, 0, 1});
}

TEST_CASE("projection inverts the embedding") {
  MultiSpace sp({3, 2, 2});
  CHECK(project(sp, {1, 1, 0, 1, 0, 1, 0}) == MultiState{2, 1, 1});
  CHECK(project(sp, BoolState(7, 1)) == MultiState{3, 2, 2});
  CHECK_THROWS_AS(project(sp, {0, 1, 0, 0, 0, 0, 0}), NonAdmissibleState);
  for (StateRank x = 0; x < sp.state_count(); ++x) {
    const MultiState state = sp.coordinates(x);
    CHECK(project(sp, embed(sp, state)) == state);
  }
}

TEST_CASE("admissibility is the staircase condition") {
  MultiSpace sp({3, 3});
  CHECK(is_admissible(sp, {1, 0, 0, 1, 1, 0}));
  CHECK_FALSE(is_admissible(sp, {0, 1, 0, 1, 0, 1}));
  CHECK(is_admissible(sp, BoolState(6, 0)));
}

TEST_CASE("psi examples") {
  MultiSpace sp322({3, 2, 2});
  CHECK(psi(sp322, {0, 1, 1, 1, 0, 0, 1}) == BoolState{1, 1, 0, 1, 0, 1, 0});
  MultiSpace sp33({3, 3});
  CHECK(psi(sp33, {0, 1, 0, 1, 0, 1}) == BoolState{1, 0, 0, 1, 1, 0});
  // Identity on admissible states.
  const BoolState admissible{1, 1, 0, 1, 0, 1, 0};
  CHECK(psi(sp322, admissible) == admissible);
}

TEST_CASE("psi is an idempotent sum-preserving projection") {
  for (const std::vector<int>& levels :
       {std::vector<int>{3, 2, 2}, {3, 3}, {1, 1, 1}, {4, 4, 4, 4}}) {
    MultiSpace sp(levels);
    const int m = sp.boolean_dim();
    const std::uint64_t size = std::uint64_t{1} << m;
    std::uint64_t admissible_count = 0;
    for (std::uint64_t y = 0; y < size; ++y) {
      const StateRank yr = static_cast<StateRank>(y);
      const StateRank z = bits::psi_rank(sp, yr);
      CHECK(bits::is_admissible_rank(sp, z));
      CHECK(bits::psi_rank(sp, z) == z);
      for (int i = 1; i <= sp.component_count(); ++i)
        CHECK(bits::block_sum(sp, z, i) == bits::block_sum(sp, yr, i));
      if (bits::is_admissible_rank(sp, yr)) {
        ++admissible_count;
        CHECK(z == yr);
      }
    }
    CHECK(admissible_count == sp.state_count());
  }
}

TEST_CASE("partial conversion satisfies the commuting diagram") {
  const auto fig1 = example("fig1").map;
  const BooleanConversion fb = partial_conversion(fig1);
  CHECK(fb.domain() == ConversionDomain::kAdmissibleOnly);
  CHECK(fb.image(0b000) == 0b100);
  CHECK(fb.image(0b111) == 0b111);
  CHECK_THROWS_AS(fb.image(0b010), NonAdmissibleState);
  CHECK(is_boolean_conversion_of(fb, fig1));

  for (std::uint32_t seed = 0; seed < 30; ++seed) {
    const auto f = testutil::random_instance(seed);
    const BooleanConversion pb = partial_conversion(f);
    const MultiSpace& sp = f.space();
    for (StateRank x = 0; x < sp.state_count(); ++x)
      CHECK(pb.image(bits::embed_rank(sp, x)) == bits::embed_rank(sp, f.image(x)));
  }
}

TEST_CASE("partial conversion of the identity is the identity on the admissible region") {
  MultiSpace sp({2, 1});
  const BooleanConversion fb = partial_conversion(MultivaluedMap::identity(sp));
  for (StateRank y : admissible_ranks(sp)) CHECK(fb.image(y) == y);
}

TEST_CASE("extension through psi") {
  const auto richard = example("richard_stepwise").map;
  const BooleanConversion F = extend_via_psi(richard);
  CHECK(F.total());
  CHECK(F.image(0b010101) == 0b000111);

  const auto fig1 = example("fig1").map;
  const BooleanConversion F1 = extend_via_psi(fig1);
  CHECK(F1.image(0b010) == 0b101);
  CHECK(F1.image(0b011) == 0b111);

  // Agrees with the partial conversion on the admissible region, images
  // always admissible.
  const BooleanConversion fb = partial_conversion(fig1);
  const MultiSpace& sp = fig1.space();
  for (StateRank y = 0; y < F1.bit_space().state_count(); ++y) {
    CHECK(bits::is_admissible_rank(sp, F1.image(y)));
    if (bits::is_admissible_rank(sp, y)) CHECK(F1.image(y) == fb.image(y));
  }
}

TEST_CASE("extension of a constant map is constant") {
  MultiSpace sp({2, 2});
  const MultiState c{1, 2};
  auto f = MultivaluedMap::from_function(sp, [&](const MultiState&) { return c; });
  const BooleanConversion F = extend_via_psi(f);
  const StateRank expected = bits::embed_rank(sp, rank(sp, c));
  for (StateRank y = 0; y < F.bit_space().state_count(); ++y) CHECK(F.image(y) == expected);
}

TEST_CASE("binarisation of 2 - x") {
  const auto f = example("two_minus_x").map;
  const BooleanConversion B = binarise(f);
  CHECK(B.image(0b00) == 0b11);
  CHECK(B.image(0b10) == 0b10);
  CHECK(B.image(0b01) == 0b01);
  CHECK(B.image(0b11) == 0b00);
}

TEST_CASE("binarisation keeps every fibre state of a fixed point fixed") {
  for (std::uint32_t seed = 0; seed < 30; ++seed) {
    const auto f = testutil::random_instance(seed);
    const MultiSpace& sp = f.space();
    const BooleanConversion B = binarise(f);
    for (StateRank y = 0; y < B.bit_space().state_count(); ++y) {
      const StateRank x = bits::psi_project_rank(sp, y);
      if (f.image(x) == x) CHECK(B.image(y) == y);
    }
  }
}

namespace {

// All permutations of {1..m} as level maps.
std::vector<std::vector<int>> permutations_of(int m) {
  std::vector<int> base(m);
  for (int j = 0; j < m; ++j) base[j] = j + 1;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

}  // namespace

TEST_CASE("binarisation is symmetric under within-component permutations") {
  for (std::uint32_t seed = 0; seed < 8; ++seed) {
    const auto f = testutil::random_instance(seed);
    const MultiSpace& sp = f.space();
    if (sp.boolean_dim() > 7) continue;
    const BooleanConversion B = binarise(f);
    const int n = sp.component_count();

    // Enumerate one permutation tuple at a time.
    std::vector<std::vector<std::vector<int>>> per_component;
    for (int i = 1; i <= n; ++i) per_component.push_back(permutations_of(sp.level(i)));
    std::vector<std::size_t> choice(n, 0);
    while (true) {
      // sigma_i maps level j to sigma[i-1][j-1].
      std::vector<std::vector<int>> sigma;
      for (int i = 0; i < n; ++i) sigma.push_back(per_component[i][choice[i]]);
      for (StateRank y = 0; y < B.bit_space().state_count(); ++y) {
        // Permuted state: bit (i, sigma_i(j)) of y' equals bit (i, j) of y.
        StateRank yp = 0;
        for (int i = 1; i <= n; ++i)
          for (int j = 1; j <= sp.level(i); ++j) {
            const int from = sp.pair_position({i, j});
            const int to = sp.pair_position({i, sigma[i - 1][j - 1]});
            if (bits::bit_at(sp, y, from))
              yp |= StateRank{1} << (sp.boolean_dim() - 1 - to);
          }
        for (int i = 1; i <= n; ++i)
          for (int j = 1; j <= sp.level(i); ++j) {
            const int pos = sp.pair_position({i, j});
            const int pos_permuted = sp.pair_position({i, sigma[i - 1][j - 1]});
            CHECK(bits::bit_at(sp, B.image(y), pos) ==
                  bits::bit_at(sp, B.image(yp), pos_permuted));
          }
      }
      int k = n - 1;
      while (k >= 0 && ++choice[k] == per_component[k].size()) choice[k--] = 0;
      if (k < 0) break;
    }
  }
}

TEST_CASE("compatibility") {
  const auto fig1 = example("fig1");
  REQUIRE(fig1.given_conversion.has_value());
  CHECK(is_compatible(*fig1.given_conversion, fig1.map));

  const auto ex2 = example("ex2_not_stepwise").map;
  CHECK_FALSE(is_compatible(extend_via_psi(ex2), ex2));

  for (std::uint32_t seed = 0; seed < 30; ++seed) {
    const auto f = stepwise(testutil::random_instance(seed));
    CHECK(is_compatible(extend_via_psi(f), f));
  }
}

TEST_CASE("compatibility errors") {
  const auto fig1 = example("fig1").map;
  const auto richard = example("richard_stepwise").map;
  CHECK_THROWS_AS(is_compatible(extend_via_psi(fig1), richard), SpaceMismatch);
  CHECK_THROWS_AS(is_compatible(partial_conversion(fig1), fig1), PartialMapNotSupported);
}

TEST_CASE("trap property of conversions of stepwise maps") {
  // Any Boolean conversion of a stepwise map keeps the admissible region
  // closed under asynchronous moves.
  for (std::uint32_t seed = 0; seed < 40; ++seed) {
    const auto f = stepwise(testutil::random_instance(seed));
    const BooleanConversion F = testutil::random_conversion(f, seed);
    const MultiSpace& sp = f.space();
    const int m = sp.boolean_dim();
    for (StateRank x = 0; x < sp.state_count(); ++x) {
      const StateRank y = bits::embed_rank(sp, x);
      const StateRank img = F.image(y);
      for (int p = 0; p < m; ++p) {
        const StateRank mask = StateRank{1} << (m - 1 - p);
        if (((y ^ img) & mask) != 0) CHECK(bits::is_admissible_rank(sp, y ^ mask));
      }
    }
  }
}

TEST_CASE("admissible-only tables reject malformed domains") {
  MultiSpace sp({2});
  // Defined on a non-admissible state.
  std::vector<StateRank> bad(4, 0);
  CHECK_THROWS_AS(BooleanConversion(sp, ConversionDomain::kAdmissibleOnly, bad), Error);
}
