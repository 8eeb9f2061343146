// Copyright 2026 The qcdbounds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcd/orc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "qcd/error.hpp"

namespace qcd {
namespace {

void check_params(const OrcParams& p) {
  detail::require_probability(p.q_b, "q_B");
  detail::require_probability(p.q_t, "q_T");
  if (p.u < 1) throw DomainError("rounds u must be at least 1");
  if (p.m < 2) throw DomainError("cells m must be at least 2");
}

void check_enumerable(const OrcParams& p, const char* who) {
  if (static_cast<long>(p.u) * p.m > kMaxEnumerateBits) {
    throw GuardError(std::string(who) + ": u*m = " + std::to_string(p.u * p.m) +
                     " exceeds " + std::to_string(kMaxEnumerateBits) +
                     "; use h_mu_weights instead");
  }
}

double weight_vector_count(int u, int m) {
  return std::pow(static_cast<double>(u) + 1.0, m);
}

// q^k (1-q)^{n-k} with 0^0 = 1.
double bernoulli_term(double q, int k, int n) {
  return std::pow(q, k) * std::pow(1.0 - q, n - k);
}

// Histogram of (w_min, w_max, W) over all strings x in {0,1}^{um}.
struct WeightHistogram {
  int u;
  int m;
  std::vector<std::uint64_t> counts;

  std::size_t index(int wmin, int wmax, int total) const {
    const auto uu = static_cast<std::size_t>(u + 1);
    const auto tt = static_cast<std::size_t>(u * m + 1);
    return (static_cast<std::size_t>(wmin) * uu + static_cast<std::size_t>(wmax)) * tt +
           static_cast<std::size_t>(total);
  }
};

WeightHistogram enumerate_strings(int m, int u) {
  WeightHistogram h{u, m, {}};
  h.counts.assign(static_cast<std::size_t>((u + 1) * (u + 1) * (u * m + 1)), 0);
  const std::uint32_t mask = (std::uint32_t{1} << u) - 1;
  const std::uint64_t n_strings = std::uint64_t{1} << (u * m);
  for (std::uint64_t x = 0; x < n_strings; ++x) {
    int wmin = u, wmax = 0, total = 0;
    for (int l = 0; l < m; ++l) {
      const int w = std::popcount(static_cast<std::uint32_t>(x >> (l * u)) & mask);
      wmin = std::min(wmin, w);
      wmax = std::max(wmax, w);
      total += w;
    }
    ++h.counts[h.index(wmin, wmax, total)];
  }
  return h;
}

double sum_histogram(const WeightHistogram& h, const OrcParams& p) {
  double sum = 0.0;
  for (int wmin = 0; wmin <= h.u; ++wmin) {
    for (int wmax = wmin; wmax <= h.u; ++wmax) {
      for (int total = 0; total <= h.u * h.m; ++total) {
        const std::uint64_t c = h.counts[h.index(wmin, wmax, total)];
        if (c != 0) sum += static_cast<double>(c) * g_w(p, wmin, wmax, total);
      }
    }
  }
  return 1.0 - sum / static_cast<double>(p.m);
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0.0;
  k = std::min(k, n - k);
  if (n <= 50) {
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return static_cast<double>(c);
  }
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

double f_u(double q0, double q1, int u) {
  detail::require_probability(q0, "q0");
  detail::require_probability(q1, "q1");
  if (u < 1) throw DomainError("rounds u must be at least 1");
  if (q0 == q1) return 0.5;  // identical hypotheses; the sum below only rounds to 1/2
  // 1/2 - (1/4) sum |a_k - b_k| equals (1/2) sum min(a_k, b_k) since both sum to one;
  // the second form keeps full relative precision when the error is tiny.
  double g = 0.0;
  for (int k = 0; k <= u; ++k) {
    g += binomial(u, k) * std::min(bernoulli_term(q0, k, u), bernoulli_term(q1, k, u));
  }
  return 0.5 * g;
}

BoundReport qec_binary(double q0, double q1, int u) {
  return BoundReport::make(f_u(q0, q1, u), BoundReport::Kind::exact, "qec_binary",
                           {{"q0", q0}, {"q1", q1}, {"u", u}});
}

BoundReport qdc_binary(double q0, double q1, int u, int d, bool entangled) {
  detail::require_probability(q0, "q0");
  detail::require_probability(q1, "q1");
  if (d < 2) throw DomainError("qdc_binary: d must be at least 2");
  const double dd = static_cast<double>(d);
  const double c = entangled ? 1.0 - 1.0 / (dd * dd) : 1.0 - 1.0 / dd;
  return BoundReport::make(f_u(c * q0, c * q1, u), BoundReport::Kind::exact,
                           entangled ? "qdc_binary_entangled" : "qdc_binary_classical",
                           {{"q0", q0}, {"q1", q1}, {"u", u}, {"d", d}});
}

double g_w(const OrcParams& p, int w_min, int w_max, int total_weight) {
  const int w = p.q_t >= p.q_b ? w_max : w_min;
  return bernoulli_term(p.q_t, w, p.u) *
         bernoulli_term(p.q_b, total_weight - w, (p.m - 1) * p.u);
}

double h_mu_enumerate(const OrcParams& p) {
  check_params(p);
  check_enumerable(p, "h_mu_enumerate");
  return sum_histogram(enumerate_strings(p.m, p.u), p);
}

std::vector<double> h_mu_enumerate_batch(int m, int u,
                                         std::span<const std::pair<double, double>> qb_qt) {
  OrcParams probe{0.0, 0.0, u, m};
  check_params(probe);
  check_enumerable(probe, "h_mu_enumerate_batch");
  const WeightHistogram h = enumerate_strings(m, u);
  std::vector<double> out;
  out.reserve(qb_qt.size());
  for (const auto& [qb, qt] : qb_qt) {
    const OrcParams p{qb, qt, u, m};
    check_params(p);
    out.push_back(sum_histogram(h, p));
  }
  return out;
}

double h_mu_orbits(const OrcParams& p) {
  check_params(p);
  check_enumerable(p, "h_mu_orbits");
  const int u = p.u, m = p.m;
  const int bits = u * m;
  const std::uint64_t full = (std::uint64_t{1} << bits) - 1;
  const std::uint64_t mask = (std::uint64_t{1} << u) - 1;
  auto shift_blocks = [&](std::uint64_t x) {
    // Block l moves to block l+1 (mod m).
    return ((x << u) | (x >> (bits - u))) & full;
  };
  std::vector<int> w(static_cast<std::size_t>(m));
  double success = 0.0;
  for (std::uint64_t x = 0; x <= full; ++x) {
    std::uint64_t y = x;
    std::uint64_t rep = x;
    int distinct = 0;
    for (int n = 0; n < m; ++n) {
      if (n > 0 && y == x) break;
      ++distinct;
      rep = std::min(rep, y);
      y = shift_blocks(y);
    }
    if (rep != x) continue;
    for (int l = 0; l < m; ++l) w[static_cast<std::size_t>(l)] = std::popcount((x >> (l * u)) & mask);
    // Best placement of the target block over the orbit.
    double best = 0.0;
    for (int target = 0; target < m; ++target) {
      double g = 1.0;
      for (int l = 0; l < m; ++l) {
        const double q = l == target ? p.q_t : p.q_b;
        g *= bernoulli_term(q, w[static_cast<std::size_t>(l)], u);
      }
      best = std::max(best, g);
    }
    success += static_cast<double>(distinct) / static_cast<double>(m) * best;
  }
  return 1.0 - success;
}

double h_mu_weights(const OrcParams& p) {
  check_params(p);
  const int u = p.u, m = p.m;
  if (weight_vector_count(u, m) > kMaxWeightVectors) {
    throw GuardError("h_mu_weights: (u+1)^m exceeds 1e7 weight vectors; no exact route fits");
  }
  std::vector<double> choose(static_cast<std::size_t>(u + 1));
  for (int k = 0; k <= u; ++k) choose[static_cast<std::size_t>(k)] = binomial(u, k);
  // g_w depends on (min, max, sum) only, so every permutation of a weight vector
  // contributes equally. Walk non-decreasing vectors and weight each by the number
  // of distinct orderings m! / prod_v c_v!.
  std::vector<int> w(static_cast<std::size_t>(m), 0);
  double sum = 0.0;
  while (true) {
    double mult = 1.0;
    int total = 0;
    int remaining = m;
    for (std::size_t i = 0; i < w.size();) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      const int run = static_cast<int>(j - i);
      mult *= binomial(remaining, run) * std::pow(choose[static_cast<std::size_t>(w[i])], run);
      remaining -= run;
      total += run * w[i];
      i = j;
    }
    sum += mult * g_w(p, w.front(), w.back(), total);
    // Next non-decreasing vector: bump the last coordinate below u, reset the tail to it.
    int pos = m - 1;
    while (pos >= 0 && w[static_cast<std::size_t>(pos)] == u) --pos;
    if (pos < 0) break;
    const int v = w[static_cast<std::size_t>(pos)] + 1;
    for (int i = pos; i < m; ++i) w[static_cast<std::size_t>(i)] = v;
  }
  return 1.0 - sum / static_cast<double>(m);
}

double h_m1_closed(double q_b, double q_t, int m) {
  detail::require_probability(q_b, "q_B");
  detail::require_probability(q_t, "q_T");
  if (m < 2) throw DomainError("cells m must be at least 2");
  const double md = static_cast<double>(m);
  if (q_b == 1.0) return (md - 1.0) * q_t / md;
  if (q_b == 0.0) return (md - 1.0) * (1.0 - q_t) / md;
  // 1 - (1-q_B)^m without cancellation for small q_B.
  const double mixed = -std::expm1(md * std::log1p(-q_b)) - std::pow(q_b, m);
  const double ratio = std::max(q_t / q_b, (1.0 - q_t) / (1.0 - q_b));
  return 1.0 - (q_t * std::pow(q_b, m - 1) + (1.0 - q_t) * std::pow(1.0 - q_b, m - 1) +
                mixed * ratio) /
                   md;
}

double h_mu(const OrcParams& p) {
  check_params(p);
  // Every cell sees the same channel: guessing is all that is left.
  if (p.q_b == p.q_t) return 1.0 - 1.0 / static_cast<double>(p.m);
  if (p.u == 1) return h_m1_closed(p.q_b, p.q_t, p.m);
  if (weight_vector_count(p.u, p.m) <= kMaxWeightVectors) return h_mu_weights(p);
  return h_mu_enumerate(p);
}

BoundReport qec_cpf(double q_b, double q_t, int m, int u) {
  const double v = h_mu({q_b, q_t, u, m});
  return BoundReport::make(v, BoundReport::Kind::exact, "qec_cpf",
                           {{"q_B", q_b}, {"q_T", q_t}, {"m", m}, {"u", u}});
}

BoundReport qdc_cpf(double q_b, double q_t, int m, int u, int d, bool entangled) {
  detail::require_probability(q_b, "q_B");
  detail::require_probability(q_t, "q_T");
  if (d < 2) throw DomainError("qdc_cpf: d must be at least 2");
  const double dd = static_cast<double>(d);
  const double c = entangled ? 1.0 - 1.0 / (dd * dd) : 1.0 - 1.0 / dd;
  const double v = h_mu({c * q_b, c * q_t, u, m});
  return BoundReport::make(v, BoundReport::Kind::exact,
                           entangled ? "qdc_cpf_entangled" : "qdc_cpf_classical",
                           {{"q_B", q_b}, {"q_T", q_t}, {"m", m}, {"u", u}, {"d", d}});
}

}  // namespace qcd
