// Copyright 2026 The qoptics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include "json.hpp"
#include "qoptics/dsl.h"
#include "qoptics/search.h"
#include "test_support.h"

namespace qoptics {
namespace {

using testing::M;
const PathId A('a'), B('b'), C('c');

std::shared_ptr<const Composite> ParitySorterComposite() {
  auto c = std::make_shared<Composite>();
  c->name = "parity_sorter";
  c->elements = ParseSetup(
                    "BS[psi,a,b] -> Reflection[XXX,a] -> DP[XXX,a,1] -> Reflection[XXX,b] -> "
                    "Reflection[XXX,b] -> BS[XXX,a,b]")
                    .elements;
  return c;
}

Toolbox CycleToolboxWithSorter() {
  Toolbox tb = Toolbox::ForCycles();
  tb.learned.push_back({ParitySorterComposite(), 0, 0, 0});
  return tb;
}

SearchOptions WitnessOptions(std::uint64_t seed, std::uint64_t iterations) {
  SearchOptions o;
  o.criteria.mode = SearchMode::kCycle;
  o.criteria.cycle.min_length = 3;
  o.constraints.paths = {A, B, C};
  o.seed = seed;
  o.iterations = iterations;
  return o;
}

TEST(SeedStream, BoundedDrawsStayInRange) {
  SeedStream rng(1);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_LT(rng.Below(7), 7u);
    const int v = rng.Between(-3, 2);
    EXPECT_GE(v, -3);
    EXPECT_LE(v, 2);
    const double u = rng.Unit();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(RandomConfig, SameSeedSameText) {
  SeedStream r1(42), r2(42);
  const std::string first = PrintSetup(RandomConfig(Toolbox::ForSrv(), r1));
  EXPECT_EQ(first, PrintSetup(RandomConfig(Toolbox::ForSrv(), r2)));
  // mt19937_64 is fully specified, so the first draw is fixed everywhere.
  EXPECT_EQ(SeedStream(42).Next(), std::mt19937_64(42)());
}

TEST(RandomConfig, RespectsToolboxAndPaths) {
  Toolbox only_bs{{ElementKind::kBeamSplitter}, {}};
  SamplingConstraints two;
  two.paths = {A, B};
  SeedStream rng(3);
  for (int i = 0; i < 200; ++i) {
    const ExperimentConfig cfg = RandomConfig(only_bs, rng, two);
    ASSERT_GE(cfg.size(), 1u);
    ASSERT_LE(cfg.size(), 15u);
    for (const Element& e : cfg.elements) {
      ASSERT_EQ(e.kind(), ElementKind::kBeamSplitter);
      const auto p = e.paths();
      EXPECT_TRUE((p[0] == A && p[1] == B) || (p[0] == B && p[1] == A));
    }
  }
}

TEST(RandomConfig, ParameterRanges) {
  SeedStream rng(8);
  std::map<int, int> shifts;
  for (int i = 0; i < 300; ++i) {
    for (const Element& e : RandomConfig(Toolbox::ForSrv(), rng).elements) {
      if (e.kind() == ElementKind::kOamHologram) ++shifts[*e.param()];
      if (e.kind() == ElementKind::kDovePrism) {
        EXPECT_TRUE(*e.param() == 1 || *e.param() == 2);
      }
    }
  }
  EXPECT_FALSE(shifts.contains(0));
  EXPECT_EQ(shifts.begin()->first, -9);
  EXPECT_EQ(shifts.rbegin()->first, 9);
  EXPECT_EQ(shifts.size(), 18u);
}

TEST(RandomConfig, KindFrequenciesAreUniform) {
  Toolbox tb = Toolbox::ForSrv();
  tb.learned.push_back({ParitySorterComposite(), 0, 0, 0});
  SamplingConstraints one;
  one.min_elements = one.max_elements = 1;
  SeedStream rng(2718);
  const int n = 10000;
  std::map<std::string, int> counts;
  for (int i = 0; i < n; ++i) {
    const Element e = RandomConfig(tb, rng, one).elements.at(0);
    ++counts[e.kind() == ElementKind::kComposite ? "composite"
                                                 : std::string(ElementKindName(e.kind()))];
  }
  const double k = static_cast<double>(tb.option_count());
  ASSERT_EQ(counts.size(), tb.option_count());
  const double expected = n / k;
  const double sigma = std::sqrt(n * (1 / k) * (1 - 1 / k));
  double chi2 = 0;
  for (const auto& [name, c] : counts) {
    EXPECT_LT(std::abs(c - expected), 3 * sigma) << name;
    chi2 += (c - expected) * (c - expected) / expected;
  }
  // chi-square critical value, 6 degrees of freedom, p = 0.001
  EXPECT_LT(chi2, 22.458);
}

TEST(EnumerateTriggers, SinglesPairsThenConsecutiveTriples) {
  QuantumState s;
  for (int l : {1, -1, 0}) s.Add(PhotonTerm{M('a', l), M('b', -l)}, 1.0);
  const auto ts = EnumerateTriggers(s, A);
  ASSERT_EQ(ts.size(), 3u + 3u + 1u);
  EXPECT_EQ(ts[0], MakeTrigger({-1}));
  EXPECT_EQ(ts[3], MakeTrigger({-1, 0}));
  EXPECT_EQ(ts[5], MakeTrigger({0, 1}));
  EXPECT_EQ(ts[6], MakeTrigger({-1, 0, 1}));
}

TEST(EvaluateSrv, GhzRowWithItsTrigger) {
  SrvCriteria crit;
  const auto f = EvaluateSrvCandidate(testing::SrvRow("dc1-3-3-3").config, crit, MakeTrigger({0, 1}));
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->srv->sorted, (std::array<int, 3>{3, 3, 3}));
}

TEST(EvaluateSrv, EmptySetupGivesNothing) {
  EXPECT_FALSE(EvaluateSrvCandidate(ExperimentConfig{}, SrvCriteria{}).has_value());
}

TEST(EvaluateSrv, TenSixFiveRow) {
  SrvCriteria crit;
  crit.source.dc_order = 2;
  const auto f = EvaluateSrvCandidate(testing::SrvRow("dc2-10-6-5").config, crit, MakeTrigger({1}));
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->srv->sorted, (std::array<int, 3>{10, 6, 5}));
}

TEST(EvaluateSrv, EnumerationFindsSomeTriggerForGhzRow) {
  const auto f = EvaluateSrvCandidate(testing::SrvRow("dc1-3-3-3").config, SrvCriteria{});
  ASSERT_TRUE(f.has_value());
  EXPECT_TRUE(IsNontrivial(*f->srv));
  EXPECT_TRUE(ReverifyFinding(*f, Criteria{}));
}

TEST(EvaluateCycle, Examples) {
  CycleCriteria four;
  four.basis.pols = {Polarization::H};
  four.min_length = 4;
  const auto f = EvaluateCycleCandidate(testing::CycleRow("cycle-4-oam").config, four);
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->cycle->length(), 4u);

  CycleCriteria two;
  two.min_length = 2;
  EXPECT_FALSE(EvaluateCycleCandidate(ExperimentConfig{}, two).has_value());

  const GoldenCycleCase& row = testing::CycleRow("cycle-14-oam-pol-path");
  CycleCriteria fourteen;
  fourteen.basis = row.basis;
  fourteen.min_length = 14;
  EXPECT_TRUE(EvaluateCycleCandidate(row.config, fourteen).has_value());
}

Finding FourCycleFinding() {
  CycleCriteria crit;
  crit.basis.pols = {Polarization::H};
  auto f = EvaluateCycleCandidate(testing::CycleRow("cycle-4-oam").config, crit);
  if (!f) throw std::runtime_error("4-cycle row lost its cycle");
  return *f;
}

TEST(Learning, AdmitsLongCyclesAndAddsComposite) {
  const Finding f = FourCycleFinding();
  ASSERT_TRUE(AdmitForLearning(f, LearningPolicy{}));
  const Toolbox tb = Learn(Toolbox::ForCycles(), f, "rot4");
  ASSERT_EQ(tb.learned.size(), 1u);
  EXPECT_EQ(tb.learned[0].composite->name, "rot4");
  EXPECT_EQ(tb.learned[0].cycle_length, 4);
  // Learning the same setup again is a no-op.
  EXPECT_EQ(Learn(tb, f, "again").learned.size(), 1u);

  // A toolbox holding only the composite can emit it.
  Toolbox only{{}, tb.learned};
  SeedStream rng(1);
  const ExperimentConfig cfg = RandomConfig(only, rng);
  ASSERT_FALSE(cfg.empty());
  EXPECT_EQ(cfg.elements[0].kind(), ElementKind::kComposite);
}

TEST(Learning, RejectsSmallFindings) {
  Finding two;
  two.cycle = CycleResult{{M('a', 0), M('a', 1)}, {1.0, 1.0}};
  EXPECT_FALSE(AdmitForLearning(two, LearningPolicy{}));
  Finding mixed;
  mixed.cycle = CycleResult{{M('a', 0), M('a', 1, Polarization::V)}, {1.0, 1.0}};
  EXPECT_TRUE(AdmitForLearning(mixed, LearningPolicy{}));
  Finding srv;
  srv.srv = SchmidtRankVector::FromRanks({3, 3, 3});
  EXPECT_FALSE(AdmitForLearning(srv, LearningPolicy{}));
}

TEST(Learning, ExpandedCompositeActsLikeItsElements) {
  const Finding f = FourCycleFinding();
  const Toolbox tb = Learn(Toolbox::ForCycles(), f, "rot4");
  const Element composite = Element::FromComposite(tb.learned[0].composite);
  ExperimentConfig flat;
  flat.elements = f.simplified.elements;
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const QuantumState s = testing::RandomState(rng, 4, 2, 'b', 5);
    const QuantumState x = ApplyElement(s, composite);
    const QuantumState y = ApplySetup(s, flat);
    EXPECT_LT(StateNorm(x.Plus(y.Scaled(-1.0))), 1e-9);
  }
}

TEST(Forget, Extremes) {
  Toolbox tb = CycleToolboxWithSorter();
  tb.learned.push_back(tb.learned[0]);
  SeedStream rng(5);
  EXPECT_EQ(Forget(tb, rng, 0.0).learned.size(), 2u);
  const Toolbox gone = Forget(tb, rng, 1.0);
  EXPECT_TRUE(gone.learned.empty());
  EXPECT_EQ(gone.primitives, tb.primitives);
  EXPECT_THROW(Forget(tb, rng, 1.5), std::invalid_argument);
}

TEST(Forget, EvictionRateMatchesProbability) {
  const Toolbox tb = CycleToolboxWithSorter();
  SeedStream rng(77);
  int evicted = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) evicted += Forget(tb, rng, 0.1).learned.empty() ? 1 : 0;
  EXPECT_NEAR(evicted / double(trials), 0.1, 0.01);
}

TEST(Simplify, RemovesIdentityHologramPair) {
  const GoldenSrvCase& row = testing::SrvRow("dc1-3-3-3");
  ExperimentConfig padded = row.config;
  padded.elements.insert(padded.elements.begin() + 1, Element::OamHologram(C, 4));
  padded.elements.insert(padded.elements.begin() + 2, Element::OamHologram(C, -4));
  SpdcSpec spec;
  const auto check = SameHeraldedState(spec, row.trigger, HeraldedState(spec, row.config, row.trigger));
  EXPECT_EQ(Simplify(padded, check), row.config);
}

TEST(Simplify, RemovesDoubleMachZehnderTogether) {
  const GoldenSrvCase& row = testing::SrvRow("dc1-3-3-3");
  ExperimentConfig padded = row.config;
  for (int i = 0; i < 4; ++i) padded.elements.push_back(Element::BeamSplitter(B, PathId('d')));
  SpdcSpec spec;
  const auto check = SameHeraldedState(spec, row.trigger, HeraldedState(spec, row.config, row.trigger));
  ASSERT_TRUE(check(padded));
  // No single BS or pair of them can go on its own here.
  for (std::size_t i = row.config.size(); i < padded.size(); ++i) {
    ExperimentConfig one = padded;
    one.elements.erase(one.elements.begin() + static_cast<long>(i));
    EXPECT_FALSE(check(one));
  }
  EXPECT_EQ(Simplify(padded, check), row.config);
}

TEST(Simplify, VerticalOnlyPbsBecomesMirror) {
  const ExperimentConfig cfg = ParseSetup("PBS[psi,a,b] -> OAMHolo[XXX,a,1]");
  CycleCriteria crit;
  crit.basis.pols = {Polarization::V};
  const CycleResult want = LargestCycle(cfg, crit.basis);
  ASSERT_EQ(want.length(), 2u);
  const ExperimentConfig out = Simplify(cfg, SameLargestCycle(crit.basis, want.cycle));
  EXPECT_EQ(out, ParseSetup("Reflection[psi,a] -> OAMHolo[XXX,a,1]"));
}

TEST(Simplify, SoundShorterAndIdempotent) {
  SeedStream rng(12);
  CycleCriteria crit;
  int checked = 0;
  for (int i = 0; i < 400 && checked < 10; ++i) {
    SamplingConstraints sc;
    sc.paths = {A, B};
    sc.max_elements = 8;
    const ExperimentConfig cfg = RandomConfig(Toolbox::ForCycles(), rng, sc);
    const CycleResult r = LargestCycle(cfg, crit.basis);
    if (r.length() < 2) continue;
    ++checked;
    const auto check = SameLargestCycle(crit.basis, r.cycle);
    const ExperimentConfig once = Simplify(cfg, check);
    EXPECT_TRUE(check(once));
    EXPECT_LE(once.size(), cfg.size());
    EXPECT_EQ(Simplify(once, check), once);
  }
  EXPECT_EQ(checked, 10);
}

TEST(Simplify, RejectsInconsistentPredicate) {
  EXPECT_THROW(Simplify(ExperimentConfig{}, [](const ExperimentConfig&) { return false; }),
               std::invalid_argument);
}

TEST(Simplify, MergesPaths) {
  // The mirror on f only touches vacuum, so path f can be folded away.
  const ExperimentConfig cfg = ParseSetup("OAMHolo[psi,a,1] -> Reflection[XXX,a]");
  ExperimentConfig padded = cfg;
  padded.elements.push_back(Element::HalfWavePlate(PathId('f')));
  CycleCriteria crit;
  const CycleResult r = LargestCycle(cfg, crit.basis);
  EXPECT_EQ(Simplify(padded, SameLargestCycle(crit.basis, r.cycle)), cfg);
}

TEST(SearchLoop, ZeroBudgetFindsNothing) {
  const SearchResult r = SearchLoop(WitnessOptions(4, 0), CycleToolboxWithSorter());
  EXPECT_TRUE(r.findings.empty());
  EXPECT_EQ(r.iterations_run, 0u);
}

TEST(SearchLoop, ReproducibleForFixedSeed) {
  const SearchResult x = SearchLoop(WitnessOptions(4, 60), CycleToolboxWithSorter());
  const SearchResult y = SearchLoop(WitnessOptions(4, 60), CycleToolboxWithSorter());
  ASSERT_EQ(x.findings.size(), y.findings.size());
  ASSERT_FALSE(x.findings.empty());
  for (std::size_t i = 0; i < x.findings.size(); ++i) {
    EXPECT_EQ(x.findings[i].iteration, y.findings[i].iteration);
    EXPECT_EQ(x.findings[i].config, y.findings[i].config);
    EXPECT_EQ(x.findings[i].simplified, y.findings[i].simplified);
  }
}

TEST(SearchLoop, LearningDoesNotChangePrefix) {
  SearchOptions on = WitnessOptions(2, 250);
  SearchOptions off = on;
  off.learning = false;
  const SearchResult with = SearchLoop(on, CycleToolboxWithSorter());
  const SearchResult without = SearchLoop(off, CycleToolboxWithSorter());
  ASSERT_FALSE(with.findings.empty());
  std::optional<std::uint64_t> first_learn;
  for (const Finding& f : with.findings) {
    if (AdmitForLearning(f, on.policy)) {
      first_learn = f.iteration;
      break;
    }
  }
  ASSERT_TRUE(first_learn.has_value());
  std::size_t compared = 0;
  for (std::size_t i = 0; i < with.findings.size() && with.findings[i].iteration <= *first_learn;
       ++i) {
    ASSERT_LT(i, without.findings.size());
    EXPECT_EQ(with.findings[i].iteration, without.findings[i].iteration);
    EXPECT_EQ(with.findings[i].config, without.findings[i].config);
    ++compared;
  }
  EXPECT_GE(compared, 1u);
  EXPECT_GT(with.final_toolbox.learned.size() + 0, 0u);
}

TEST(SearchLoop, FindingsReverify) {
  const SearchOptions o = WitnessOptions(4, 60);
  const SearchResult r = SearchLoop(o, CycleToolboxWithSorter());
  for (const Finding& f : r.findings) EXPECT_TRUE(ReverifyFinding(f, o.criteria));
}

TEST(SearchLoop, SeveralWorkers) {
  SearchOptions o = WitnessOptions(4, 30);
  o.workers = 3;
  const SearchResult r = SearchLoop(o, CycleToolboxWithSorter());
  EXPECT_EQ(r.iterations_run, 90u);
  for (const Finding& f : r.findings) {
    EXPECT_GE(f.worker, 0);
    EXPECT_LT(f.worker, 3);
    EXPECT_TRUE(ReverifyFinding(f, o.criteria));
  }
}

TEST(FindingsStore, WritesOneJsonObjectPerLine) {
  const auto path = std::filesystem::temp_directory_path() / "qoptics_findings_test.jsonl";
  std::filesystem::remove(path);
  {
    FindingsStore store(path);
    SearchLoop(WitnessOptions(4, 60), CycleToolboxWithSorter(), &store);
    ASSERT_FALSE(store.findings().empty());
  }
  std::ifstream in(path);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    for (const char* key : {"seed", "iteration", "config_dsl", "simplified_dsl", "trigger", "state",
                            "cycle", "timestamps"}) {
      EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["seed"], 4);
    EXPECT_GE(j["cycle_length"].get<int>(), 3);
    // The stored setups parse back.
    EXPECT_NO_THROW(ParseSetup(j["config_dsl"].get<std::string>()));
    ++lines;
  }
  EXPECT_GT(lines, 0);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace qoptics
