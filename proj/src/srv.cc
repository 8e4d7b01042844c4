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

#include "qoptics/srv.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>

namespace qoptics {
namespace {

// Index of the photon of `path` in `term`, after checking the term has
// exactly one photon per party and nothing else.
std::array<LocalMode, 3> SplitTerm(const PhotonTerm& term, const PartyPaths& parties) {
  if (term.photon_count() != 3) {
    throw std::invalid_argument("tripartite analysis needs three-photon terms, got " +
                                TermToString(term));
  }
  std::array<LocalMode, 3> out;
  std::array<int, 3> seen{};
  for (const ModeLabel& m : term.modes()) {
    auto it = std::find(parties.begin(), parties.end(), m.path);
    if (it == parties.end()) {
      throw std::invalid_argument("photon outside the party paths in " + TermToString(term));
    }
    const auto k = static_cast<std::size_t>(it - parties.begin());
    out[k] = {m.oam, m.pol};
    ++seen[k];
  }
  if (seen != std::array<int, 3>{1, 1, 1}) {
    throw std::invalid_argument("bunched or missing party photon in " + TermToString(term));
  }
  return out;
}

int NumericalRank(const Eigen::MatrixXcd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cut = tol * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++rank;
  }
  return rank;
}

}  // namespace

TripartiteTensor ToTensor(const QuantumState& state, const PartyPaths& parties) {
  if (state.is_zero()) throw std::invalid_argument("cannot build a tensor from the zero state");
  if (parties[0] == parties[1] || parties[0] == parties[2] || parties[1] == parties[2]) {
    throw std::invalid_argument("party paths must be distinct");
  }
  std::array<std::set<LocalMode>, 3> seen;
  std::vector<std::pair<std::array<LocalMode, 3>, Amplitude>> entries;
  for (const auto& [term, amp] : state.terms()) {
    auto local = SplitTerm(term, parties);
    for (std::size_t k = 0; k < 3; ++k) seen[k].insert(local[k]);
    entries.emplace_back(local, amp);
  }
  TripartiteTensor t;
  t.parties = parties;
  for (std::size_t k = 0; k < 3; ++k) t.basis[k].assign(seen[k].begin(), seen[k].end());
  const auto d = t.dims();
  t.coeffs.assign(d[0] * d[1] * d[2], Amplitude{});
  auto index = [&t](std::size_t k, const LocalMode& m) {
    return static_cast<std::size_t>(std::lower_bound(t.basis[k].begin(), t.basis[k].end(), m) -
                                    t.basis[k].begin());
  };
  for (const auto& [local, amp] : entries) {
    t.at(index(0, local[0]), index(1, local[1]), index(2, local[2])) += amp;
  }
  return t;
}

SchmidtRankVector SchmidtRankVector::FromRanks(std::array<int, 3> ranks) {
  SchmidtRankVector srv;
  srv.per_party = ranks;
  srv.sorted = ranks;
  std::sort(srv.sorted.begin(), srv.sorted.end(), std::greater<>());
  return srv;
}

std::string SchmidtRankVector::ToString() const {
  return "(" + std::to_string(per_party[0]) + "," + std::to_string(per_party[1]) + "," +
         std::to_string(per_party[2]) + ")";
}

SchmidtRankVector ComputeSchmidtRankVector(const TripartiteTensor& t, double tol) {
  const auto d = t.dims();
  std::array<int, 3> ranks{};
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t a = (k + 1) % 3;
    const std::size_t b = (k + 2) % 3;
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(d[k]), static_cast<Eigen::Index>(d[a] * d[b]));
    for (std::size_t i = 0; i < d[0]; ++i) {
      for (std::size_t j = 0; j < d[1]; ++j) {
        for (std::size_t l = 0; l < d[2]; ++l) {
          const std::array<std::size_t, 3> idx{i, j, l};
          m(static_cast<Eigen::Index>(idx[k]),
            static_cast<Eigen::Index>(idx[a] * d[b] + idx[b])) = t.at(i, j, l);
        }
      }
    }
    ranks[k] = NumericalRank(m, tol);
  }
  return SchmidtRankVector::FromRanks(ranks);
}

bool IsNontrivial(const SchmidtRankVector& srv) {
  return std::all_of(srv.per_party.begin(), srv.per_party.end(), [](int r) { return r >= 2; });
}

bool IsMaxEntangled(const QuantumState& state, const PartyPaths& parties, double tol) {
  if (state.is_zero()) return false;
  const TripartiteTensor t = ToTensor(state, parties);
  double lo = INFINITY;
  double hi = 0.0;
  double largest = 0.0;
  for (const Amplitude& c : t.coeffs) largest = std::max(largest, std::abs(c));
  for (const Amplitude& c : t.coeffs) {
    const double m = std::abs(c);
    if (m <= state.limits().zero_tolerance * std::max(1.0, largest)) continue;
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  return hi > 0.0 && (hi - lo) <= tol * hi;
}

std::optional<int> GhzDimension(const QuantumState& state, const PartyPaths& parties,
                                double tol) {
  if (state.is_zero() || !IsMaxEntangled(state, parties, tol)) return std::nullopt;
  std::array<std::set<LocalMode>, 3> seen;
  for (const auto& [term, amp] : state.terms()) {
    const auto local = SplitTerm(term, parties);
    for (std::size_t k = 0; k < 3; ++k) {
      if (!seen[k].insert(local[k]).second) return std::nullopt;
    }
  }
  return static_cast<int>(state.size());
}

}  // namespace qoptics
