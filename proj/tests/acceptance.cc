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

// Acceptance run: one PASS/FAIL line per criterion, details indented below.
//
//   qoptics_acceptance [--expect-fail 3,4] [--dc25] [--manifest file]
//
// Exit status is 0 when the failing criteria are exactly the ones named by
// --expect-fail (none by default).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "exact_rank.h"
#include "qoptics/dsl.h"
#include "qoptics/elements.h"
#include "qoptics/golden.h"
#include "qoptics/manifest.h"
#include "qoptics/search.h"
#include "qoptics/spdc.h"
#include "qoptics/srv.h"

namespace qoptics {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string summary;
  std::vector<std::string> details;
};

struct Options {
  bool dc25 = false;
  std::string manifest;
};

ModeLabel Mode(char path, int oam) { return ModeLabel{PathId(path), oam, Polarization::H}; }

// |A,B,C,D> kets with signs as written.
QuantumState FourKets(std::initializer_list<std::pair<int, std::array<int, 4>>> kets) {
  QuantumState s;
  for (const auto& [sign, l] : kets) {
    s.Add(PhotonTerm{Mode('a', l[0]), Mode('b', l[1]), Mode('c', l[2]), Mode('d', l[3])},
          static_cast<double>(sign));
  }
  return s;
}

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string Fmt(Amplitude z) {
  const double im = std::abs(z.imag()) < 1e-15 ? 0.0 : z.imag();
  return Fmt(z.real()) + (im < 0 ? "-" : "+") + Fmt(std::abs(im)) + "i";
}

// Bosonic norm: a term prod_m a_m^{n_m} has squared length prod_m n_m!.
double FockNorm(const QuantumState& s) {
  double total = 0;
  for (const auto& [term, amp] : s.terms()) {
    double weight = 1;
    const auto modes = term.modes();
    for (std::size_t i = 0; i < modes.size();) {
      std::size_t j = i;
      while (j < modes.size() && modes[j] == modes[i]) ++j;
      weight *= std::tgamma(static_cast<double>(j - i) + 1.0);
      i = j;
    }
    total += std::norm(amp) * weight;
  }
  return std::sqrt(total);
}

// ---------------------------------------------------------------------------

Outcome HongOuMandel() {
  Outcome o;
  const QuantumState in = QuantumState::Of(PhotonTerm{Mode('a', 3), Mode('b', -3)});
  const QuantumState out = ApplyBeamSplitter(in, PathId('a'), PathId('b'));
  double coincidence = 0;
  for (const auto& [term, amp] : out.terms()) {
    if (term.CountInPath(PathId('a')) == 1) coincidence = std::max(coincidence, std::abs(amp));
  }
  const double aa = std::abs(out.At(PhotonTerm{Mode('a', -3), Mode('a', -3)}));
  const double bb = std::abs(out.At(PhotonTerm{Mode('b', 3), Mode('b', 3)}));
  o.pass = coincidence < 1e-12 && aa > 0.1 && std::abs(aa - bb) < 1e-12 && out.size() == 2;
  o.summary = "BS on a[3] b[-3]: coincidence amplitude " + Fmt(coincidence) + ", |a[-3]^2| = " +
              Fmt(aa) + ", |b[3]^2| = " + Fmt(bb);
  o.details.push_back("output: " + SerializeState(out).substr(0, SerializeState(out).size() - 1));
  return o;
}

// ---------------------------------------------------------------------------

Outcome GhzPipeline() {
  Outcome o;
  const std::vector<PathId> abcd = {PathId('a'), PathId('b'), PathId('c'), PathId('d')};
  const ExperimentConfig cfg = ParseSetup(
      "\"LI[psi,b,c]\", \"Reflection[XXX,a]\", \"OAMHolo[XXX,a,-2]\", \"BS[XXX,a,c]\"");
  // Published intermediate states, signs as printed.
  const std::vector<std::pair<std::string, QuantumState>> steps = {
      {"after parity sorter", FourKets({{1, {0, 0, 0, 0}},
                                        {1, {1, -1, 1, -1}},
                                        {1, {1, -1, -1, 1}},
                                        {1, {-1, 1, 1, -1}},
                                        {1, {-1, 1, -1, 1}}})},
      {"after mirror in A", FourKets({{1, {0, 0, 0, 0}},
                                      {1, {-1, -1, 1, -1}},
                                      {1, {-1, -1, -1, 1}},
                                      {1, {1, 1, 1, -1}},
                                      {1, {1, 1, -1, 1}}})},
      {"after hologram in A", FourKets({{1, {-2, 0, 0, 0}},
                                        {1, {-3, -1, 1, -1}},
                                        {1, {-3, -1, -1, 1}},
                                        {1, {-1, 1, 1, -1}},
                                        {1, {-1, 1, -1, 1}}})},
      {"after BS(A,C), red terms cancelled", FourKets({{1, {0, 0, -2, 0}},
                                                       {-1, {2, 0, 0, 0}},
                                                       {1, {1, -1, -3, -1}},
                                                       {-1, {3, -1, -1, -1}},
                                                       {1, {-1, -1, -3, 1}},
                                                       {-1, {3, -1, 1, 1}},
                                                       {1, {-1, 1, -1, 1}},
                                                       {-1, {1, 1, 1, 1}}})},
  };
  const QuantumState source = BuildDoubleSpdc(SpdcSpec{});
  QuantumState state = source;
  bool all = true;
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    state = ApplyElement(state, cfg.elements[k]);
    const QuantumState coinc = PostSelectCoincidence(state, abcd);
    const bool ok = StateEquiv(coinc, steps[k].second, 1e-9);
    all = all && ok;
    o.details.push_back(std::string(ok ? "ok  " : "BAD ") + steps[k].first + " (" +
                        std::to_string(coinc.size()) + " terms)");
    if (!ok) o.details.push_back("    computed: " + SerializeState(coinc.Normalized()));
  }
  // The cancelling pair comes from |-1,1,1,-1>: either both photons cross
  // the splitter or both are reflected. Each history is the product of the
  // single-photon images.
  const QuantumState incoming = FourKets({{1, {-1, 1, 1, -1}}});
  const Element& bs = cfg.elements.back();
  const QuantumState from_a = ApplyElement(QuantumState::Of(PhotonTerm{Mode('a', -1)}), bs);
  const QuantumState from_c = ApplyElement(QuantumState::Of(PhotonTerm{Mode('c', 1)}), bs);
  const Amplitude crossed =
      from_a.At(PhotonTerm{Mode('c', -1)}) * from_c.At(PhotonTerm{Mode('a', 1)});
  const Amplitude mirrored =
      from_a.At(PhotonTerm{Mode('a', 1)}) * from_c.At(PhotonTerm{Mode('c', -1)});
  const PhotonTerm red{Mode('a', 1), Mode('b', 1), Mode('c', -1), Mode('d', -1)};
  const Amplitude merged = ApplyElement(incoming, bs).At(red);
  const bool cancels = std::abs(crossed) > 0.1 && std::abs(mirrored) > 0.1 &&
                       std::abs(crossed + mirrored) < 1e-12 && std::abs(merged) < 1e-12 &&
                       std::abs(state.At(red)) < 1e-12;
  all = all && cancels;
  o.details.push_back(std::string(cancels ? "ok  " : "BAD ") + "|1,1,-1,-1>: crossed " +
                      Fmt(crossed) + ", reflected " + Fmt(mirrored) + ", together " +
                      Fmt(std::abs(merged)));

  const QuantumState heralded = HeraldedState(SpdcSpec{}, cfg, MakeTrigger({0, 1}));
  const PartyPaths bcd = HeraldedParties(SpdcSpec{});
  QuantumState published;
  for (const auto& [sign, l] : std::vector<std::pair<int, std::array<int, 3>>>{
           {1, {0, -2, 0}}, {1, {-1, -3, -1}}, {-1, {1, 1, 1}}}) {
    published.Add(PhotonTerm{Mode('b', l[0]), Mode('c', l[1]), Mode('d', l[2])}, double(sign));
  }
  const bool final_ok = StateEquiv(heralded, published, 1e-9);
  const SchmidtRankVector srv = ComputeSchmidtRankVector(ToTensor(heralded, bcd));
  const auto ghz = GhzDimension(heralded, bcd);
  all = all && final_ok && srv.per_party == std::array<int, 3>{3, 3, 3} && ghz == 3;
  o.details.push_back(std::string(final_ok ? "ok  " : "BAD ") +
                      "trigger |0>+|1>: state matches the published three-term state");
  o.pass = all;
  o.summary = "GHZ derivation step by step; heralded SRV " + srv.ToString() + ", GHZ dimension " +
              (ghz ? std::to_string(*ghz) : "none");
  return o;
}

// ---------------------------------------------------------------------------

Outcome GoldenTable(const GoldenManifest& g) {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t srv_ok = 0, state_ok = 0, order = 0;
  std::set<int> dcs;
  for (const GoldenSrvCase& c : g.srv_cases) {
    dcs.insert(c.dc_order);
    const SrvCaseReport r = RunSrvCase(c);
    srv_ok += r.srv_ok();
    order += r.srv_match == SrvMatch::kPartyOrder;
    state_ok += r.state_match;
    if (!r.srv_ok() || !r.state_match) {
      std::string line = c.id + ": SRV " + (r.computed_srv ? r.computed_srv->ToString() : "-") +
                         " (" + std::string(SrvMatchName(r.srv_match)) + ")";
      if (r.published_state_srv && r.published_state_srv->sorted != c.expected_srv) {
        line += ", published state itself has SRV " + r.published_state_srv->ToString();
      }
      line += r.state_match ? ", state matches" : ", state differs: " + r.diff.Summary();
      o.details.push_back(line);
    }
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  const std::size_t n = g.srv_cases.size();
  const double state_rate = n ? double(state_ok) / double(n) : 0.0;
  o.pass = n >= 40 && dcs.size() >= 3 && srv_ok == n && state_rate >= 0.9 && seconds < 120;
  o.summary = std::to_string(n) + " rows: SRV " + std::to_string(srv_ok) + "/" +
              std::to_string(n) + " (" + std::to_string(order) + " in party order), states " +
              std::to_string(state_ok) + "/" + std::to_string(n) + " (" +
              Fmt(100.0 * state_rate) + "%), " + Fmt(seconds) + " s";
  return o;
}

// ---------------------------------------------------------------------------

Outcome GoldenCycles(const GoldenManifest& g) {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t ok = 0;
  std::string lengths;
  for (const GoldenCycleCase& c : g.cycle_cases) {
    const CycleCaseReport r = RunCycleCase(c);
    ok += r.ok();
    lengths += (lengths.empty() ? "" : ",") + std::to_string(r.computed.length());
    std::string line = std::string(r.ok() ? "ok  " : "BAD ") + c.id + ": expected length " +
                       std::to_string(c.expected_length) + ", computed " +
                       std::to_string(r.computed.length());
    if (r.length_match && !r.sequence_match) line += ", sequence differs";
    o.details.push_back(line);
    if (!r.ok()) {
      o.details.push_back("    computed: " + r.computed.ToString());
      std::string missing;
      for (const ModeLabel& m : r.missing) missing += " " + ToKet(m);
      if (!missing.empty()) o.details.push_back("    listed but not in the cycle:" + missing);
      for (const CycleResult& alt : r.cycles_of_expected_length) {
        o.details.push_back("    cycle of the listed length: " + alt.ToString());
      }
    }
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  o.pass = ok == g.cycle_cases.size() && g.cycle_cases.size() == 5;
  o.summary = std::to_string(ok) + "/" + std::to_string(g.cycle_cases.size()) +
              " cycle setups exact; largest lengths " + lengths + " (listed 4,3,6,8,14), " +
              Fmt(seconds) + " s";
  return o;
}

// ---------------------------------------------------------------------------

Outcome DcRobustness(const GoldenManifest& g, const Options& opt) {
  Outcome o;
  const GoldenSrvCase* ghz_row = nullptr;
  for (const auto& c : g.srv_cases) {
    if (c.id == "dc1-3-3-3") ghz_row = &c;
  }
  if (!ghz_row) {
    o.summary = "GHZ row missing from manifest";
    return o;
  }
  const Trigger trigger = MakeTrigger({0, 1});
  const ExperimentConfig& cfg = ghz_row->config;
  const DcStabilityReport with = VerifyDcStability(cfg, trigger, 1, 10);
  bool keeps = with.stable();
  bool window = true;
  std::string kept;
  for (const auto& e : with.entries) {
    keeps = keeps && e.srv && e.srv->per_party == std::array<int, 3>{3, 3, 3};
    window = window && e.window_kept;
    kept += " " + std::to_string(e.dc_order) + ":" + (e.srv ? e.srv->ToString() : "-");
  }
  o.details.push_back(std::string(keeps ? "ok  " : "BAD ") + "with mirror, SRV per DC:" + kept);
  o.details.push_back(std::string("    DC 1 terms unchanged inside the DC 1 mode window: ") +
                      (window ? "yes, at every DC" : "no"));

  ExperimentConfig no_mirror = cfg;
  std::erase_if(no_mirror.elements, [](const Element& e) {
    return e.kind() == ElementKind::kReflection && e.paths()[0] == PathId('a');
  });
  const DcStabilityReport without = VerifyDcStability(no_mirror, trigger, 1, 10);
  std::optional<int> lost;
  std::string trace;
  for (const auto& e : without.entries) {
    trace += " " + std::to_string(e.dc_order) + ":" +
             (e.ghz_dimension ? std::to_string(*e.ghz_dimension) : "-");
    if (!lost && e.dc_order >= 2 && e.ghz_dimension != 3) lost = e.dc_order;
  }
  const bool starts_ghz = !without.entries.empty() && without.entries[0].ghz_dimension == 3;
  o.details.push_back(std::string(lost && starts_ghz ? "ok  " : "BAD ") +
                      "without mirror, GHZ dimension per DC:" + trace);
  bool window_lost = false;
  for (const auto& e : without.entries) window_lost = window_lost || !e.window_kept;
  o.details.push_back(std::string("    DC 1 terms unchanged inside the DC 1 mode window: ") +
                      (window_lost ? "no" : "yes"));
  bool dc25_ok = true;
  if (opt.dc25) {
    const auto t0 = Clock::now();
    const DcStabilityReport far = VerifyDcStability(cfg, trigger, 1, 25);
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    dc25_ok = far.stable() && s < 600;
    bool far_window = true;
    for (const auto& e : far.entries) far_window = far_window && e.window_kept;
    o.details.push_back(std::string(dc25_ok ? "ok  " : "BAD ") + "DC 1..25 stable: " +
                        (far.stable() ? "yes" : "no") + ", DC 1 window kept: " +
                        (far_window ? "yes" : "no") + " (" + Fmt(s) + " s)");
  } else {
    o.details.push_back("DC 25 sweep not run (pass --dc25)");
  }
  o.pass = keeps && lost && starts_ghz && dc25_ok;
  o.summary = std::string("SRV (3,3,3) stable to DC 10: ") + (keeps ? "yes" : "no") +
              "; mirror-removed variant loses GHZ dimension 3 at DC " +
              (lost ? std::to_string(*lost) : "never");
  return o;
}

// ---------------------------------------------------------------------------

QuantumState RandomState(std::mt19937_64& rng, int max_photons) {
  std::uniform_int_distribution<int> path(0, 3), oam(-8, 8), pol(0, 1), terms(1, 6),
      photons(1, max_photons);
  std::normal_distribution<double> g;
  QuantumState s;
  const int n = photons(rng);
  for (int t = terms(rng); t > 0; --t) {
    std::vector<ModeLabel> modes;
    for (int p = 0; p < n; ++p) {
      modes.push_back(ModeLabel{PathId(static_cast<char>('a' + path(rng))), oam(rng),
                                pol(rng) ? Polarization::V : Polarization::H});
    }
    s.Add(PhotonTerm(std::move(modes)), Amplitude(g(rng), g(rng)));
  }
  return s;
}

Outcome Unitarity() {
  Outcome o;
  std::mt19937_64 rng(20160101);
  const PathId a('a'), b('b');
  const std::vector<Element> unitary = {
      Element::Reflection(a),   Element::BeamSplitter(a, b), Element::PolarizingBeamSplitter(a, b),
      Element::HalfWavePlate(a), Element::OamHologram(a, 5), Element::OamHologram(b, -3),
      Element::DovePrism(a, 1), Element::DovePrism(a, 2),  Element::ParitySorter(a, b)};
  double worst = 0;
  std::size_t checks = 0;
  for (int i = 0; i < 1000; ++i) {
    const QuantumState s = RandomState(rng, 3);
    const double before = FockNorm(s);
    for (const Element& e : unitary) {
      worst = std::max(worst, std::abs(FockNorm(ApplyElement(s, e)) - before) / before);
      ++checks;
    }
  }
  o.details.push_back("norm (bosonic weights) worst relative drift " + Fmt(worst) + " over " +
                      std::to_string(checks) + " applications");
  // Mirror and half-wave plate square to -1 on single-photon states.
  bool involutions = true;
  bool group = true;
  std::uniform_int_distribution<int> shift(-9, 9);
  for (int i = 0; i < 1000; ++i) {
    QuantumState single;
    {
      std::uniform_int_distribution<int> oam(-8, 8), pol(0, 1), terms(1, 5);
      std::normal_distribution<double> g;
      for (int t = terms(rng); t > 0; --t) {
        single.Add(PhotonTerm{ModeLabel{a, oam(rng), pol(rng) ? Polarization::V : Polarization::H}},
                   Amplitude(g(rng), g(rng)));
      }
    }
    const QuantumState minus = single.Scaled(-1.0);
    involutions = involutions && ApplyReflection(ApplyReflection(single, a), a) == minus &&
                  ApplyHalfWavePlate(ApplyHalfWavePlate(single, a), a) == minus;
    const int n = shift(rng), m = shift(rng);
    const QuantumState s = RandomState(rng, 3);
    group = group && ApplyOamHologram(ApplyOamHologram(s, a, n), a, m) ==
                         ApplyOamHologram(s, a, n + m);
  }
  o.details.push_back(std::string(involutions ? "ok  " : "BAD ") +
                      "Reflection^2 = HWP^2 = -1 on 1000 single-photon states");
  o.details.push_back(std::string(group ? "ok  " : "BAD ") +
                      "hologram(n) then hologram(m) equals hologram(n+m), exact");
  o.pass = worst <= 1e-9 && involutions && group;
  o.summary = "1000 random states x " + std::to_string(unitary.size()) +
              " unitary elements, involution phases, hologram group law";
  return o;
}

// ---------------------------------------------------------------------------

Outcome SrvOracle() {
  Outcome o;
  std::mt19937_64 rng(500);
  std::uniform_int_distribution<int> dim(1, 4), entry(-1, 1);
  int agree = 0, trials = 0;
  while (trials < 500) {
    testing::IntTensor it;
    it.dims = {std::size_t(dim(rng)), std::size_t(dim(rng)), std::size_t(dim(rng))};
    it.v.resize(it.dims[0] * it.dims[1] * it.dims[2]);
    for (auto& x : it.v) x = entry(rng);
    if (std::all_of(it.v.begin(), it.v.end(), [](auto x) { return x == 0; })) continue;
    TripartiteTensor t;
    t.parties = {PathId('b'), PathId('c'), PathId('d')};
    for (int k = 0; k < 3; ++k) {
      for (std::size_t i = 0; i < it.dims[k]; ++i) t.basis[k].push_back(LocalMode{int(i)});
    }
    for (auto x : it.v) t.coeffs.emplace_back(double(x), 0.0);
    const auto exact = testing::ExactSchmidtRanks(it);
    const auto numeric = ComputeSchmidtRankVector(t).per_party;
    ++trials;
    if (exact == numeric) {
      ++agree;
    } else if (o.details.size() < 5) {
      o.details.push_back("mismatch on trial " + std::to_string(trials));
    }
  }
  o.pass = agree == trials;
  o.summary = std::to_string(agree) + "/" + std::to_string(trials) +
              " random {0,+-1} tensors agree with exact fraction-free elimination";
  return o;
}

// ---------------------------------------------------------------------------

Outcome SimplifierPadding(const GoldenManifest& g) {
  Outcome o;
  std::mt19937_64 rng(8);
  const std::vector<PathId> all_paths = {PathId('a'), PathId('b'), PathId('c'),
                                         PathId('d'), PathId('e'), PathId('f')};
  // Rows at DC=1 keep the trial count cheap; the setups are the same kind.
  std::vector<const GoldenSrvCase*> rows;
  for (const auto& c : g.srv_cases) {
    if (c.dc_order == 1) rows.push_back(&c);
  }
  int passed = 0;
  const int trials = 50;
  const auto t0 = Clock::now();
  for (int trial = 0; trial < trials; ++trial) {
    const GoldenSrvCase& row = *rows[rng() % rows.size()];
    SpdcSpec spec;
    spec.dc_order = row.dc_order;
    const QuantumState target = HeraldedState(spec, row.config, row.trigger);
    const BehaviorCheck check = SameHeraldedState(spec, row.trigger, target);
    if (!check(row.config)) {
      o.details.push_back("row " + row.id + " fails its own check");
      continue;
    }
    const ExperimentConfig base = Simplify(row.config, check);

    ExperimentConfig padded = row.config;
    auto insert_at = [&](std::size_t pos, std::vector<Element> block) {
      padded.elements.insert(padded.elements.begin() + static_cast<long>(pos), block.begin(),
                             block.end());
    };
    std::uniform_int_distribution<int> shift(1, 9);
    const int pairs = 1 + static_cast<int>(rng() % 2);
    for (int k = 0; k < pairs; ++k) {
      const PathId p = all_paths[rng() % all_paths.size()];
      const int n = shift(rng) * (rng() % 2 ? 1 : -1);
      insert_at(rng() % (padded.size() + 1),
                {Element::OamHologram(p, n), Element::OamHologram(p, -n)});
    }
    const PathId p = all_paths[rng() % all_paths.size()];
    PathId q = all_paths[rng() % all_paths.size()];
    while (q == p) q = all_paths[rng() % all_paths.size()];
    const Element bs = Element::BeamSplitter(p, q);
    // Appended: in the middle, BS^4 = -1 per photon is not a global phase.
    insert_at(padded.size(), {bs, bs, bs, bs});

    const ExperimentConfig out = Simplify(padded, check);
    const bool sound = check(out);
    const bool idempotent = Simplify(out, check) == out;
    const bool stripped = out.size() <= base.size() && out.size() <= row.config.size();
    const bool ok = sound && idempotent && stripped;
    passed += ok;
    if (!ok) {
      o.details.push_back("trial " + std::to_string(trial) + " (" + row.id + "): " +
                          std::to_string(padded.size()) + " -> " + std::to_string(out.size()) +
                          " elements, check " + (sound ? "ok" : "FAILED") + ", idempotent " +
                          (idempotent ? "yes" : "no"));
    }
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  o.pass = passed == trials;
  o.summary = std::to_string(passed) + "/" + std::to_string(trials) +
              " padded golden setups reduced to at most their unpadded minimum, sound and "
              "idempotent, " + Fmt(seconds) + " s";
  return o;
}

// ---------------------------------------------------------------------------

Outcome SearchSmoke(const GoldenManifest& g) {
  Outcome o;
  if (!g.search_witness) {
    o.summary = "no search witness in the manifest";
    return o;
  }
  const SearchWitness& w = *g.search_witness;
  Toolbox toolbox = Toolbox::ForCycles();
  for (const auto& [name, cfg] : w.composites) {
    auto comp = std::make_shared<Composite>();
    comp->name = name;
    comp->elements = cfg.elements;
    toolbox.learned.push_back({std::move(comp), 0, 0, 0});
  }
  SearchOptions opt;
  opt.criteria.mode = SearchMode::kCycle;
  opt.criteria.cycle.min_length = w.min_length;
  opt.constraints.paths = w.paths;
  opt.seed = w.seed;
  opt.iterations = w.iterations;
  opt.learning = true;
  opt.workers = 1;
  const auto t0 = Clock::now();
  const SearchResult r = SearchLoop(opt, toolbox);
  const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  std::size_t reverified = 0;
  bool long_enough = false;
  for (const Finding& f : r.findings) {
    reverified += ReverifyFinding(f, opt.criteria);
    long_enough = long_enough || static_cast<int>(f.cycle->length()) >= w.min_length;
  }
  if (!r.findings.empty()) {
    const Finding& f = r.findings.front();
    o.details.push_back("first finding at iteration " + std::to_string(f.iteration) + ": " +
                        f.cycle->ToString());
    o.details.push_back("simplified setup: " + PrintSetupInline(f.simplified));
  }
  o.details.push_back("learned composites at the end: " +
                      std::to_string(r.final_toolbox.learned.size()));
  o.pass = long_enough && reverified == r.findings.size();
  o.summary = "seed " + std::to_string(w.seed) + ", budget " + std::to_string(w.iterations) +
              ": " + std::to_string(r.findings.size()) + " findings, " +
              std::to_string(reverified) + " re-verified, " + Fmt(seconds) + " s";
  return o;
}

}  // namespace
}  // namespace qoptics

int main(int argc, char** argv) {
  using namespace qoptics;
  CLI::App app{"Acceptance criteria run"};
  std::vector<int> expect_fail;
  Options opt;
  opt.manifest = std::string(QOPTICS_DATA_DIR) + "/golden_manifest.json";
  app.add_option("--expect-fail", expect_fail, "criteria known to fail")->delimiter(',');
  app.add_flag("--dc25", opt.dc25, "also sweep DC 1..25 (10 minute budget)");
  app.add_option("--manifest", opt.manifest, "golden manifest");
  CLI11_PARSE(app, argc, argv);

  GoldenManifest golden;
  try {
    golden = LoadGoldenManifest(opt.manifest);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cannot load manifest: %s\n", e.what());
    return 2;
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"HOM bunching", [] { return HongOuMandel(); }},
      {"GHZ pipeline", [] { return GhzPipeline(); }},
      {"golden SRV table", [&] { return GoldenTable(golden); }},
      {"golden cycles", [&] { return GoldenCycles(golden); }},
      {"DC robustness", [&] { return DcRobustness(golden, opt); }},
      {"unitarity", [] { return Unitarity(); }},
      {"SRV oracle", [] { return SrvOracle(); }},
      {"simplifier padding", [&] { return SimplifierPadding(golden); }},
      {"search smoke test", [&] { return SearchSmoke(golden); }},
  };
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out.pass = false;
      out.summary = std::string("exception: ") + e.what();
    }
    if (!out.pass) failed.insert(id);
    std::printf("AC%d %s  %s: %s\n", id, out.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                out.summary.c_str());
    for (const std::string& d : out.details) std::printf("      %s\n", d.c_str());
    std::fflush(stdout);
  }
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  std::printf("\n%zu/%zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
  if (failed != expected) {
    for (int id : failed) {
      if (!expected.contains(id)) std::printf("unexpected failure: AC%d\n", id);
    }
    for (int id : expected) {
      if (!failed.contains(id)) std::printf("listed as failing but passed: AC%d\n", id);
    }
    return 1;
  }
  if (!expected.empty()) {
    std::printf("failing criteria match the recorded list (see README for the analysis)\n");
  }
  return 0;
}
