// Copyright 2026 The privguess Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include <doctest.h>

#include "privguess/rng.hpp"
#include "privguess/vector_models.hpp"

using namespace privguess;

namespace {

double ipow(double b, int e) {
  double out = 1.0;
  for (int i = 0; i < e; ++i) out *= b;
  return out;
}

JointPmf random_small_joint(SplitMix64& rng, std::size_t m, std::size_t n) {
  std::vector<double> t(m * n);
  double sum = 0.0;
  for (double& v : t) {
    v = rng.next_unit();
    sum += v;
  }
  for (double& v : t) v /= sum;
  return JointPmf(m, n, std::move(t));
}

}  // namespace

TEST_CASE("iid joint tables") {
  IidModel m1(1, 0.6, 0.2);
  JointPmf j1 = iid_joint(m1);
  CHECK(j1.at(0, 0) == doctest::Approx(0.32).epsilon(1e-15));
  CHECK(j1.at(0, 1) == doctest::Approx(0.08).epsilon(1e-15));
  CHECK(j1.at(1, 0) == doctest::Approx(0.12).epsilon(1e-15));
  CHECK(j1.at(1, 1) == doctest::Approx(0.48).epsilon(1e-15));

  // n = 2 entries are bit-exact products of n = 1 entries
  IidModel m2(2, 0.6, 0.2);
  JointPmf j2 = iid_joint(m2);
  for (unsigned x = 0; x < 4; ++x)
    for (unsigned y = 0; y < 4; ++y) {
      double expected = j1.at(x & 1, y & 1) * j1.at(x >> 1, y >> 1);
      CHECK(j2.at(x, y) == expected);
    }

  // marginals factorize
  std::vector<double> px = j2.x_marginal();
  std::vector<double> qy = j2.y_marginal();
  for (unsigned x = 0; x < 4; ++x) {
    int w = (x & 1) + (x >> 1);
    CHECK(px[x] == doctest::Approx(ipow(0.6, w) * ipow(0.4, 2 - w))
                       .epsilon(1e-12));
  }
  double q = 0.56;
  for (unsigned y = 0; y < 4; ++y) {
    int w = (y & 1) + (y >> 1);
    CHECK(qy[y] ==
          doctest::Approx(ipow(q, w) * ipow(1.0 - q, 2 - w)).epsilon(1e-12));
  }

  CHECK_THROWS_AS(iid_joint(IidModel(13, 0.6, 0.2)), ValidationError);
  CHECK_THROWS_AS(IidModel(2, 0.85, 0.2), ValidationError);  // 1-a <= p
}

TEST_CASE("product rule for guessing probabilities") {
  JointPmf f(2, 2, {0.4, 0.1, 0.1, 0.4});  // Pc = 0.8
  CHECK(pc_product({f, f, f}) == doctest::Approx(0.512).epsilon(1e-15));

  JointPmf sure(2, 2, {0.3, 0.0, 0.0, 0.7});  // Pc = 1
  CHECK(pc_product({f, sure}) == doctest::Approx(0.8).epsilon(1e-15));

  IidModel m2(2, 0.6, 0.2);
  JointPmf j2 = iid_joint(m2);
  CHECK(pc_conditional(j2) == doctest::Approx(0.64).epsilon(1e-14));
  std::vector<double> px = j2.x_marginal();
  CHECK(pc_marginal(px) == doctest::Approx(0.36).epsilon(1e-14));

  SplitMix64 rng(404);
  for (int i = 0; i < 30; ++i) {
    std::vector<JointPmf> factors;
    int n = 2 + i % 3;
    for (int k = 0; k < n; ++k)
      factors.push_back(random_small_joint(rng, 2, 2 + (i + k) % 2));
    JointPmf tensor = factors[0];
    for (int k = 1; k < n; ++k) tensor = tensor_product(tensor, factors[k]);
    CHECK(std::abs(pc_product(factors) - pc_conditional(tensor)) < 1e-12);
  }
}

TEST_CASE("vector tradeoff closed form, n = 2 and n = 10") {
  IidModel m2(2, 0.6, 0.2);
  // squared curve: 1.4 eps^2 + 0.104
  for (double eps : {0.75, 0.78, 0.8}) {
    TradeoffPoint pt = underline_h_n_iid_formula(m2, eps);
    double sq = pt.utility * pt.utility;
    CHECK(sq == doctest::Approx(1.4 * eps * eps + 0.104).epsilon(1e-12));
  }
  // certified region: exact certificate against the materialized joint
  TradeoffPoint cert = underline_h_n_iid(m2, 0.78);
  CHECK(cert.achieved);
  REQUIRE(cert.filter.has_value());
  JointPmf j2 = iid_joint(m2);
  LeakagePair lp = evaluate_filter(j2, *cert.filter);
  CHECK(lp.privacy == doctest::Approx(0.78 * 0.78).epsilon(1e-9));
  CHECK(lp.utility ==
        doctest::Approx(cert.utility * cert.utility).epsilon(1e-9));

  IidModel m10(10, 0.6, 0.2);
  double a10 = ipow(0.56, 10) / (ipow(0.48, 10) - ipow(0.08, 10));
  double b10 = 1.0 - ipow(0.8, 10) * a10;
  CHECK(a10 == doctest::Approx(4.67162).epsilon(1e-5));
  CHECK(b10 == doctest::Approx(0.498388).epsilon(1e-5));
  for (double eps : {0.7, 0.75, 0.799}) {
    TradeoffPoint pt = underline_h_n_iid_formula(m10, eps);
    CHECK(ipow(pt.utility, 10) ==
          doctest::Approx(a10 * ipow(eps, 10) + b10).epsilon(1e-12));
  }
  CHECK(underline_h_n_iid(m10, 0.8).utility == doctest::Approx(1.0));
  CHECK_THROWS_AS(underline_h_n_iid(m10, 0.75), RegimeError);
  CHECK_THROWS_AS(underline_h_n_iid_formula(m10, 0.85), ValidationError);
}

TEST_CASE("n = 1 reduces to the scalar closed form") {
  IidModel m(1, 0.6, 0.2);
  for (double eps : {0.6, 0.66, 0.75, 0.8}) {
    TradeoffPoint v = underline_h_n_iid(m, eps);
    CHECK(v.utility == doctest::Approx(1.4 * eps - 0.12).epsilon(2e-15));
    TradeoffPoint s = h_n_memoryless(m, eps);
    CHECK(v.utility == doctest::Approx(s.utility).epsilon(2e-15));
  }
}

TEST_CASE("memoryless filter curve is independent of n") {
  for (double eps : {0.6, 0.7, 0.8}) {
    double u2 = h_n_memoryless(IidModel(2, 0.6, 0.2), eps).utility;
    double u10 = h_n_memoryless(IidModel(10, 0.6, 0.2), eps).utility;
    CHECK(u2 == u10);
    CHECK(u2 == doctest::Approx(1.4 * eps - 0.12).epsilon(1e-12));
  }
  CHECK(h_n_memoryless(IidModel(3, 0.6, 0.2), 0.8).utility ==
        doctest::Approx(1.0));

  // tensor certificate for small n: the per-coordinate filter achieves
  // (eps^n, value^n) on the vector joint
  for (int n = 2; n <= 4; ++n) {
    IidModel m(n, 0.6, 0.2);
    double eps = 0.72;
    TradeoffPoint pt = h_n_memoryless(m, eps);
    Channel tensor = tensor_power(*pt.filter, n);
    LeakagePair lp = evaluate_filter(iid_joint(m), tensor);
    CHECK(lp.privacy == doctest::Approx(ipow(eps, n)).epsilon(1e-9));
    CHECK(lp.utility == doctest::Approx(ipow(pt.utility, n)).epsilon(1e-9));
  }

  // the restricted-alphabet optimum can only improve on it
  IidModel m2(2, 0.6, 0.2);
  for (double eps : {0.76, 0.78}) {
    CHECK(h_n_memoryless(m2, eps).utility <=
          underline_h_n_iid(m2, eps).utility + 1e-12);
  }
}

TEST_CASE("memoryless gap bounds") {
  IidModel m10(10, 0.6, 0.2);
  GapBounds g = gap_bounds(m10, 0.7);
  double phi1 = 0.56 / 0.4;
  double phi10 =
      ipow(0.56, 10) * ipow(0.8, 9) / (ipow(0.48, 10) - ipow(0.08, 10));
  CHECK(g.lower == doctest::Approx(0.1 * (phi1 - phi10)).epsilon(1e-12));
  CHECK_FALSE(g.upper.has_value());

  // n = 1: no gap at all
  IidModel m1(1, 0.6, 0.2);
  CHECK(gap_bounds(m1, 0.7).lower == doctest::Approx(0.0).epsilon(1e-15));

  // uniform source: two-sided bound alpha/(2 alpha-bar)
  IidModel u(6, 0.5, 0.2);
  GapBounds gu = gap_bounds(u, 0.7);
  CHECK(gu.lower == 0.0);
  REQUIRE(gu.upper.has_value());
  CHECK(*gu.upper == doctest::Approx(0.125).epsilon(1e-12));
  for (int n = 1; n <= 10; ++n) {
    IidModel mu(n, 0.5, 0.2);
    double eps = 0.79;  // close to the right endpoint, always certified
    double gap = underline_h_n_iid_formula(mu, eps).utility -
                 h_n_memoryless(mu, eps).utility;
    CHECK(gap >= -1e-9);
    CHECK(gap <= 0.125 + 1e-9);
  }
}

TEST_CASE("markov joint construction") {
  // r = 0: only constant x rows survive
  MarkovModel frozen(2, 0.6, 0.2, 0.0);
  JointPmf j = markov_joint(frozen);
  for (unsigned y = 0; y < 4; ++y) {
    CHECK(j.at(1, y) == 0.0);
    CHECK(j.at(2, y) == 0.0);
  }
  CHECK(j.at(3, 0) == doctest::Approx(0.6 * 0.04).epsilon(1e-14));
  CHECK(j.at(3, 1) == doctest::Approx(0.6 * 0.16).epsilon(1e-14));
  CHECK(j.at(3, 2) == doctest::Approx(0.6 * 0.16).epsilon(1e-14));
  CHECK(j.at(3, 3) == doctest::Approx(0.6 * 0.64).epsilon(1e-14));

  // first coordinate is Bernoulli(p)
  MarkovModel m(3, 0.7, 0.2, 0.1);
  JointPmf j3 = markov_joint(m);
  double first_one = 0.0;
  for (unsigned x = 0; x < 8; ++x) {
    if ((x & 1u) == 0) continue;
    for (unsigned y = 0; y < 8; ++y) first_one += j3.at(x, y);
  }
  CHECK(first_one == doctest::Approx(0.7).epsilon(1e-12));

  double total = 0.0;
  for (double v : j3.p) total += v;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("markov conditional guessing closed form") {
  MarkovModel m(3, 0.6, 0.2, 0.05);
  double expected = 0.512 * 0.9025 * 1.75;
  CHECK(pc_markov_cond(m) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(std::abs(pc_markov_cond(m) - pc_conditional(markov_joint(m))) <
        1e-12);

  // n = 1 collapses to the scalar endpoint
  MarkovModel m1(1, 0.6, 0.2, 0.3);
  CHECK(pc_markov_cond(m1) == doctest::Approx(0.8).epsilon(1e-15));

  // frozen parameter: theta stays fixed
  MarkovModel frozen(3, 0.6, 0.2, 0.0);
  CHECK(pc_markov_cond(frozen) == doctest::Approx(0.896).epsilon(1e-15));
  CHECK(std::abs(pc_markov_cond(frozen) -
                 pc_conditional(markov_joint(frozen))) < 1e-12);

  CHECK_THROWS_AS(pc_markov_cond(MarkovModel(4, 0.6, 0.2, 0.05)),
                  ValidationError);
}

TEST_CASE("markov bounds and the achieving channel") {
  MarkovModel m(3, 0.6, 0.2, 0.05);
  REQUIRE(m.mixing_hypothesis());
  double t = pc_markov_cond(m);
  double top = std::pow(t, 1.0 / 3.0);

  MarkovBounds at_top = underline_h_n_markov_bounds(m, top);
  CHECK(at_top.lower.utility == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(at_top.upper == doctest::Approx(1.0).epsilon(1e-12));

  MarkovBounds b = underline_h_n_markov_bounds(m, 0.92);
  CHECK(b.lower.utility < b.upper);
  CHECK(b.lower.achieved);
  REQUIRE(b.lower.filter.has_value());
  LeakagePair lp = evaluate_filter(markov_joint(m), *b.lower.filter);
  CHECK(lp.privacy == doctest::Approx(ipow(0.92, 3)).epsilon(1e-9));
  CHECK(lp.utility ==
        doctest::Approx(ipow(b.lower.utility, 3)).epsilon(1e-9));

  // Pr(Y = all ones) strictly above alpha^n separates the bounds
  CHECK(pr_yn_all_ones(m) > ipow(0.2, 3));

  // mixing hypothesis violated: r too large for this n
  MarkovModel bad(3, 0.6, 0.2, 0.4);
  CHECK_FALSE(bad.mixing_hypothesis());
  CHECK_THROWS_AS(underline_h_n_markov_bounds(bad, 0.9), ValidationError);
}

TEST_CASE("parametric closed form and its r = 0 equivalence") {
  ParametricModel m(3, 0.6, 0.2);
  CHECK(m.pc_theta_given_yn() == doctest::Approx(0.896).epsilon(1e-15));
  double top = std::pow(0.896, 1.0 / 3.0);
  CHECK(parametric_h_n(m, top).utility == doctest::Approx(1.0).epsilon(1e-12));

  double eps = 0.95;
  TradeoffPoint pt = parametric_h_n(m, eps);
  double zeta = (0.896 - ipow(eps, 3)) / 0.304;
  CHECK(ipow(pt.utility, 3) ==
        doctest::Approx(1.0 - zeta * 0.3104).epsilon(1e-12));
  CHECK(pt.achieved);

  // the r = 0 Markov lower bound is the same display
  MarkovModel frozen(3, 0.6, 0.2, 0.0);
  MarkovBounds mb = underline_h_n_markov_bounds(frozen, eps);
  CHECK(mb.lower.utility == doctest::Approx(pt.utility).epsilon(1e-15));

  CHECK_THROWS_AS(ParametricModel(4, 0.6, 0.2), ValidationError);  // even n
}

TEST_CASE("noiseless markov observations give a diagonal joint") {
  MarkovModel m(3, 0.6, 0.0, 0.1);
  JointPmf j = markov_joint(m);
  for (unsigned x = 0; x < 8; ++x)
    for (unsigned y = 0; y < 8; ++y) {
      if (x != y) CHECK(j.at(x, y) == 0.0);
    }
  CHECK(pc_conditional(j) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(pc_markov_cond(m), ValidationError);
}
