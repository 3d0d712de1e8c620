#include <gtest/gtest.h>

#include <cstdlib>
#include <numeric>
#include <set>

#include "helpers.hpp"
#include "schur/enumerate.hpp"

using namespace schur;
using namespace schur::testing;

TEST(CandidateSpace, EncodeDecodeRoundTrip) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 1000; ++trial) {
    const int p = trial % 2 ? 3 : 2;
    const CandidateSpace space(p, 3 + trial % 2);
    const std::uint64_t code = rng() % space.size();
    EXPECT_EQ(space.encode(space.decode(code)), code);
  }
}

TEST(CandidateSpace, DigitOrderPutsCommutatorsFirst) {
  const CandidateSpace space(3, 3);
  EXPECT_EQ(space.digits(), 12);
  // most significant digit: first coordinate of c_12
  const Presentation P = space.decode(space.size() / 3);
  EXPECT_EQ(P.comm(0, 1)[0], 1);
  // least significant digit: second coordinate of f_3
  const Presentation Q = space.decode(1);
  EXPECT_EQ(Q.power(2)[1], 1);
}

TEST(CandidateSpace, ValidCommutatorCounts) {
  // surjections /\^2 F_2^3 -> F_2^2: (8 - 1)(8 - 2) = 42; each has trivial radical
  EXPECT_EQ(CandidateSpace(2, 3).valid_c_codes().size(), 42u);
  EXPECT_EQ(CandidateSpace(3, 3).valid_c_codes().size(), 26u * 24u);
}

TEST(Streams, ExhaustiveCountsAtTwo) {
  EnumerationTask task;
  task.p = 2;
  task.d = 3;
  const auto all = stream_candidates(task);
  EXPECT_EQ(all.size(), 2688u);
  for (const Candidate& c : all) {
    EXPECT_TRUE(validate(c.P).is_special_rank2);
    EXPECT_EQ(c.r, 2);
  }
}

TEST(Streams, CyclicAndTrivialStreamsAreEmptyAtTwo) {
  for (int d : {3, 4})
    for (GpMode mode : {GpMode::cyclic, GpMode::trivial}) {
      EnumerationTask task;
      task.p = 2;
      task.d = d;
      task.gp_mode = mode;
      EXPECT_TRUE(stream_candidates(task).empty()) << d << " " << to_string(mode);
      task.sampling = Sampling{500, 1};
      EXPECT_TRUE(stream_candidates(task).empty()) << d << " " << to_string(mode) << " sampled";
    }
}

TEST(Streams, ModesPartitionOddCandidates) {
  EnumerationTask task;
  task.p = 3;
  task.d = 3;
  std::size_t total = 0;
  for (GpMode mode : {GpMode::full, GpMode::cyclic, GpMode::trivial}) {
    task.gp_mode = mode;
    const auto cs = stream_candidates(task);
    for (const Candidate& c : cs)
      EXPECT_EQ(c.r, required_r(mode));
    total += cs.size();
  }
  task.gp_mode = GpMode::all;
  EXPECT_EQ(stream_candidates(task).size(), total);
  EXPECT_EQ(total, 624u * 729u);
}

TEST(Streams, SamplingIsDeterministicAndRespectsMode) {
  EnumerationTask task;
  task.p = 5;
  task.d = 4;
  task.gp_mode = GpMode::cyclic;
  task.sampling = Sampling{300, 0xC0FFEE};
  const auto a = stream_candidates(task);
  const auto b = stream_candidates(task);
  ASSERT_EQ(a.size(), 300u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].code, b[i].code);
    EXPECT_EQ(a[i].r, 1);
    EXPECT_TRUE(validate(a[i].P).is_special_rank2);
  }
  task.sampling->seed = 1;
  const auto c = stream_candidates(task);
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    same += a[i].code == c[i].code;
  EXPECT_LT(same, 10u);
}

TEST(Budget, GuardsAndOverride) {
  EnumerationTask task;
  task.p = 5;
  task.d = 6;
  const CandidateSpace big(5, 6);
  EXPECT_THROW(check_task_budget(task, big), BudgetExceeded);
  task.sampling = Sampling{kSampleBudget + 1, 0};
  EXPECT_THROW(check_task_budget(task, big), BudgetExceeded);
  task.sampling = Sampling{1000, 0};
  EXPECT_NO_THROW(check_task_budget(task, big));
  task.dedupe = true;
  EXPECT_THROW(check_task_budget(task, big), BudgetExceeded);
  ::setenv("SCHUR_BUDGET_OVERRIDE", "1", 1);
  EXPECT_NO_THROW(check_task_budget(task, big));
  ::setenv("SCHUR_BUDGET_OVERRIDE", "0", 1);
  EXPECT_THROW(check_task_budget(task, big), BudgetExceeded);
  ::unsetenv("SCHUR_BUDGET_OVERRIDE");
}

TEST(Dedupe, OrbitSizesDivideTheGroupOrder) {
  const std::uint64_t order = gl_order(3, 3) * gl_order(3, 2);
  const DedupeResult dd = dedupe_classes(3, 3, GpMode::all);
  std::uint64_t total = 0;
  for (const OrbitClass& oc : dd.classes) {
    EXPECT_EQ(order % oc.orbit_size, 0u) << oc.representative;
    total += oc.orbit_size;
  }
  EXPECT_EQ(total, 624u * 729u);
  // representatives are the least code of their class
  for (std::size_t code = 0; code < dd.class_of.size(); ++code) {
    if (dd.class_of[code] >= 0) {
      EXPECT_LE(dd.classes[static_cast<std::size_t>(dd.class_of[code])].representative, code);
    }
  }
}

TEST(Dedupe, GeneratorsReachAllOfGL) {
  EXPECT_EQ(gl_order(2, 3), 168u);
  EXPECT_EQ(gl_order(3, 2), 48u);
  // orbit of a nonzero vector under the generators is everything but zero
  for (int p : {2, 3, 5})
    for (int n : {2, 3}) {
      const Modulus mod(p);
      const auto gens = gl_generators(mod, n);
      std::set<std::vector<int>> seen;
      std::vector<Vector> queue{Vector::unit(mod, static_cast<std::size_t>(n), 0)};
      auto key = [](const Vector& v) { return std::vector<int>(v.coords().begin(), v.coords().end()); };
      seen.insert(key(queue.front()));
      while (!queue.empty()) {
        const Vector v = queue.back();
        queue.pop_back();
        for (const auto& g : gens) {
          Vector w(mod, static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i)
            w.axpy(v[i], g[i]);
          if (seen.insert(key(w)).second)
            queue.push_back(w);
        }
      }
      int total = 1;
      for (int i = 0; i < n; ++i)
        total *= p;
      EXPECT_EQ(static_cast<int>(seen.size()), total - 1) << p << " " << n;
    }
}

TEST(Fingerprint, InvariantUnderGLAction) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 1000; ++trial) {
    const Modulus mod(trial % 3 == 0 ? 2 : 3);
    const int d = 3 + trial % 2;
    const Presentation P = random_special(rng, mod, d, 2);
    const Presentation Q = transform(P, random_invertible(rng, mod, d), random_invertible(rng, mod, 2));
    EXPECT_EQ(fingerprint(audit_group(P)), fingerprint(audit_group(Q)));
  }
}

TEST(Verify, TheoremNamesAndScope) {
  EXPECT_EQ(parse_theorem("S1"), TheoremId::S1);
  EXPECT_EQ(parse_theorem("p2"), TheoremId::p2);
  EXPECT_THROW(parse_theorem("S4"), ParseError);
  EnumerationTask task;
  task.p = 2;
  EXPECT_THROW(verify_theorem(TheoremId::S3, task), ValidationError);
  task.p = 3;
  EXPECT_THROW(verify_theorem(TheoremId::p2, task), ValidationError);
}

TEST(Verify, SquaresAlwaysGenerateTheDerivedSubgroupAtTwo) {
  EnumerationTask task;
  task.p = 2;
  task.d = 3;
  const VerificationReport r = verify_theorem(TheoremId::p2, task);
  EXPECT_EQ(r.groups_checked, 2688);
  EXPECT_TRUE(r.ok());
  task.gp_mode = GpMode::cyclic;
  EXPECT_TRUE(stream_candidates(task).empty());
}

TEST(Verify, NoCapableClassBesidesPhi4AtThreeThree) {
  EnumerationTask task;
  task.p = 3;
  task.d = 3;
  task.dedupe = true;
  const VerificationReport r = verify_theorem(TheoremId::S3, task);
  EXPECT_TRUE(r.ok()) << r.violation_count;
  EXPECT_EQ(r.groups_checked, 624);
  ASSERT_EQ(r.classes.size(), 1u);
  EXPECT_TRUE(r.classes[0].capable);
  EXPECT_EQ(r.classes[0].order_exponent, 6);
  const CandidateSpace space(3, 3);
  const auto dd = dedupe_classes(3, 3, GpMode::trivial);
  EXPECT_EQ(dd.find(space.encode(catalog::phi4_1_5(3))), std::optional<std::size_t>(0));
}

TEST(Verify, SampledReportsDoNotDependOnThreadCount) {
  EnumerationTask task;
  task.p = 3;
  task.d = 4;
  task.sampling = Sampling{200, 99};
  const VerificationReport one = verify_theorem(TheoremId::S2, task);
  task.jobs = 3;
  const VerificationReport three = verify_theorem(TheoremId::S2, task);
  EXPECT_EQ(one.groups_checked, 200);
  EXPECT_EQ(one.groups_checked, three.groups_checked);
  EXPECT_EQ(one.order_exponents, three.order_exponents);
  EXPECT_EQ(one.violations, three.violations);
  EXPECT_TRUE(one.ok());
}

TEST(Verify, ViolationListIsTruncated) {
  VerificationReport r;
  for (std::size_t i = 0; i < VerificationReport::kMaxListed + 5; ++i)
    r.add_violation({i, "clause", ""});
  EXPECT_EQ(r.violations.size(), VerificationReport::kMaxListed);
  EXPECT_EQ(r.violation_count, static_cast<long long>(VerificationReport::kMaxListed + 5));
  EXPECT_FALSE(r.ok());
}

TEST(Identities, OddPrimeEngineIdentitiesHoldAtThreeThreeSampled) {
  EnumerationTask task;
  task.p = 3;
  task.d = 3;
  task.sampling = Sampling{2000, 5};
  const IdentityReport r = check_identities(task);
  EXPECT_EQ(r.groups, 2000);
  EXPECT_TRUE(r.ok());
}

TEST(Identities, X2RankFormulaFailsAtTwo) {
  EnumerationTask task;
  task.p = 2;
  task.d = 3;
  const IdentityReport r = check_identities(task);
  EXPECT_EQ(r.groups, 2688);
  EXPECT_EQ(r.ganea_mismatches, 0);
  EXPECT_EQ(r.eq1_mismatches, 0);
  // predicted dim X2 = 5; observed 3, 4, 5, 6
  EXPECT_EQ(r.x2_by_r.at("r=2 dim=3"), 210);
  EXPECT_EQ(r.x2_by_r.at("r=2 dim=4"), 756);
  EXPECT_EQ(r.x2_by_r.at("r=2 dim=5"), 1134);
  EXPECT_EQ(r.x2_by_r.at("r=2 dim=6"), 588);
  EXPECT_EQ(r.x2_mismatches, 2688 - 1134);
}
