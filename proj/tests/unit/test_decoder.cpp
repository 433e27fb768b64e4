#include <array>
#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "planar/decoder.hpp"
#include "planar/gf2.hpp"
#include "planar/ml_decoder.hpp"

using namespace planar;

TEST(Decoder, EmptySyndromeGivesEmptyCorrection) {
  const auto L = CodeLayout::planar(5);
  const auto c = decode(Syndrome{}, L, IndependentXZ{0.1, 0.1});
  EXPECT_TRUE(c.frame.empty());
  EXPECT_EQ(c.total_weight, 0);
}

TEST(Decoder, CorrectsEverySingleError) {
  for (int d : {3, 5, 7}) {
    const auto L = CodeLayout::planar(d);
    const int n = L.num_qubits();
    for (int q = 0; q < n; ++q) {
      for (const auto& err : {PauliFrame::x_on(n, {q}), PauliFrame::z_on(n, {q}), compose(PauliFrame::x_on(n, {q}), PauliFrame::z_on(n, {q}))}) {
        const auto c = decode(syndrome_of(err, L), L, Depolarizing{0.1});
        const auto residual = compose(err, c.frame);
        EXPECT_TRUE(syndrome_of(residual, L).empty());
        EXPECT_FALSE(logical_effect(residual, L).any()) << "d=" << d << " q=" << q;
      }
    }
  }
}

TEST(Decoder, CorrectsUpToHalfDistance) {
  // Any (d-1)/2 sigma^x errors are fixed at d = 5.
  const auto L = CodeLayout::planar(5);
  const int n = L.num_qubits();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const auto err = PauliFrame::x_on(n, {a, b});
      const auto c = decode(syndrome_of(err, L), L, IndependentXZ{0.1, 0});
      ASSERT_FALSE(logical_effect(compose(err, c.frame), L).any()) << a << "," << b;
    }
  }
}

TEST(Decoder, PrunedMatchingHasFullGraphWeight) {
  Rng rng(9);
  for (int d : {5, 9}) {
    const auto L = CodeLayout::planar(d);
    for (int i = 0; i < 200; ++i) {
      const auto s = sample(IndependentXZ{0.12, 0.12}, L, rng);
      const auto syn = syndrome_of(s.frame, L);
      for (auto t : {StabilizerType::Plaquette, StabilizerType::Vertex}) {
        const auto defects = defects_of(syn, t);
        const auto g = build_graph(defects, t, L);
        std::int64_t full = 0;
        for (auto [u, v] : mwpm(g)) {
          for (const auto& e : g.edges) {
            if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) {
              full += e.weight;
              break;
            }
          }
        }
        std::int64_t pruned = 0;
        match_defects(defects, t, L, &pruned);
        ASSERT_EQ(pruned, full);
      }
    }
  }
}

TEST(Decoder, CorrectionClearsSyndromeWithinMatchedWeight) {
  Rng rng(4);
  const auto L = CodeLayout::planar(7);
  for (int i = 0; i < 100; ++i) {
    const auto s = sample(IndependentXZ{0.08, 0.0}, L, rng);
    const auto c = decode(syndrome_of(s.frame, L), L, IndependentXZ{0.08, 0.0});
    EXPECT_LE(static_cast<std::int64_t>(c.frame.x_part().count()), c.total_weight);
    EXPECT_TRUE(syndrome_of(compose(s.frame, c.frame), L).empty());
  }
}

TEST(Decoder, PhenomenologicalMeasurementErrorOnly) {
  // One flipped outcome in round 1 shows up in rounds 1 and 2 and is
  // matched in time: no data correction.
  const auto L = CodeLayout::planar(5);
  Syndrome syn;
  syn.rounds.resize(4);
  syn.rounds[1].m_defects = {7};
  syn.rounds[2].m_defects = {7};
  const auto c = decode(syn, L, Phenomenological{0.01, 0.01, 3});
  EXPECT_TRUE(c.frame.empty());
  EXPECT_EQ(c.total_weight, 1);
}

TEST(Decoder, PhenomenologicalDecodesSampledNoise) {
  const auto L = CodeLayout::planar(5);
  Rng rng(12);
  int failures = 0;
  for (int i = 0; i < 300; ++i) {
    const Phenomenological m{0.005, 0.005, 5};
    const auto s = sample(m, L, rng);
    const auto c = decode(measured_syndrome(s, L), L, m);
    const auto residual = compose(s.frame, c.frame);
    ASSERT_TRUE(syndrome_of(residual, L).empty());
    failures += logical_effect(residual, L).any();
  }
  EXPECT_LE(failures, 3);
}

TEST(Decoder, JsonForm) {
  const auto L = CodeLayout::planar(3);
  Syndrome syn;
  syn.m_defects = {0};
  const auto j = to_json(decode(syn, L, IndependentXZ{}));
  EXPECT_EQ(j.at("total_weight").get<int>(), 1);
  EXPECT_EQ(j.at("m_pairing").size(), 1u);
  EXPECT_EQ(j.at("m_pairing")[0][1], "boundary");
  EXPECT_EQ(syndrome_from_json(nlohmann::json{{"m_defects", {3, 1}}}).m_defects, (std::vector<int>{1, 3}));
}

namespace {

// Coset probabilities by direct enumeration and a GF(2) membership test:
// e ~ f iff e + f lies in the span of the vertex supports.
double ml_failure_oracle(const CodeLayout& L, double p) {
  const int n = L.num_qubits();
  std::vector<BitVec> rows;
  for (const auto& v : L.vertices()) rows.push_back(BitVec::from_indices(static_cast<std::size_t>(n), v.support));
  const BitVec lz = BitVec::from_indices(static_cast<std::size_t>(n), L.logical_z());
  // Per syndrome, probability of each logical class.
  std::map<std::vector<int>, std::array<double, 2>> classes;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    BitVec e(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q)
      if (m >> q & 1) e.set(static_cast<std::size_t>(q));
    const auto w = static_cast<double>(e.count());
    const double prob = std::pow(p, w) * std::pow(1 - p, n - w);
    classes[plaquette_defects(e, L).indices()][e.dot(lz)] += prob;
  }
  double fail = 0;
  for (const auto& [s, c] : classes) fail += std::min(c[0], c[1]);
  return fail;
}

}  // namespace

TEST(MlDecoder, ExactFailureMatchesCosetOracle) {
  const auto L = CodeLayout::planar(3);
  for (double p : {0.01, 0.05, 0.1, 0.2}) {
    const auto f = exact_failure_probability(L, p);
    EXPECT_NEAR(f.ml, ml_failure_oracle(L, p), 1e-12);
    EXPECT_LE(f.ml, f.mwpm + 1e-15);
  }
}

TEST(MlDecoder, StabilizerEquivalenceViaGf2) {
  // The ML correction differs from the error by a stabilizer or a logical.
  const auto L = CodeLayout::planar(3);
  const int n = L.num_qubits();
  std::vector<BitVec> rows;
  for (const auto& v : L.vertices()) rows.push_back(BitVec::from_indices(static_cast<std::size_t>(n), v.support));
  for (int q = 0; q < n; ++q) {
    const auto err = PauliFrame::x_on(n, {q});
    const auto c = ml_decode(syndrome_of(err, L), L, 0.05);
    const auto diff = compose(err, c.frame).x_part();
    EXPECT_TRUE(gf2::solve(rows, diff).has_value()) << q;
  }
}

TEST(MlDecoder, RejectsLargeCodes) {
  EXPECT_THROW(ml_decode(Syndrome{}, CodeLayout::planar(5), 0.1), std::invalid_argument);
}

TEST(Gf2, RankAndSolve) {
  std::vector<BitVec> rows{BitVec::from_indices(4, {0, 1}), BitVec::from_indices(4, {1, 2}),
                           BitVec::from_indices(4, {0, 2})};
  EXPECT_EQ(gf2::rank(rows), 2);
  EXPECT_TRUE(gf2::solve(rows, BitVec::from_indices(4, {0, 2})).has_value());
  EXPECT_FALSE(gf2::solve(rows, BitVec::from_indices(4, {3})).has_value());
  const auto c = gf2::solve(rows, BitVec::from_indices(4, {0, 1}));
  ASSERT_TRUE(c);
  BitVec acc(4);
  c->for_each_set([&](std::size_t i) { acc ^= rows[i]; });
  EXPECT_EQ(acc, BitVec::from_indices(4, {0, 1}));
}
