#include <doctest.h>

#include <set>

#include "bell/errors.hpp"
#include "bell/lhv.hpp"
#include "test_support.hpp"

using namespace bell;
using namespace bell::lhv;
using bell::testing::max_abs_diff;

namespace {

const Scenario kChsh = Scenario::uniform(2, 2, 2);

ModelComponent deterministic_component(double weight, const std::vector<int>& outcomes) {
  ModelComponent c;
  c.weight = weight;
  for (int a : outcomes) {
    std::vector<double> dist(2, 0.0);
    dist[a] = 1.0;
    c.responses.push_back(dist);
  }
  return c;
}

}  // namespace

TEST_CASE("enumerate_deterministic") {
  CHECK(enumerate_deterministic(kChsh).size() == 16);
  CHECK(enumerate_deterministic(Scenario::uniform(3, 2, 2)).size() == 64);
  CHECK(enumerate_deterministic(Scenario::uniform(1, 1, 2)).size() == 2);
  CHECK(enumerate_deterministic(Scenario({{3, 2}, {2}})).size() == 12);

  const auto all = enumerate_deterministic(Scenario::uniform(3, 2, 2));
  std::set<std::vector<int>> distinct;
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].index() == i);
    distinct.insert(all[i].assignment());
  }
  CHECK(distinct.size() == all.size());
  // 2^24 strategies exceed the guard.
  CHECK_THROWS_AS(enumerate_deterministic(Scenario::uniform(1, 24, 2)), LimitError);
}

TEST_CASE("behavior_from_model examples") {
  SUBCASE("deterministic all-zero outcomes") {
    const StochasticLocalModel m(kChsh, {deterministic_component(1.0, {0, 0, 0, 0})});
    const Behavior b = behavior_from_model(m);
    for (std::size_t js = 0; js < 4; ++js) CHECK(b.at(js, 0) == 1.0);
  }
  SUBCASE("equal mixture of all +1 and all -1") {
    const StochasticLocalModel m(kChsh,
                                 {deterministic_component(0.5, {0, 0, 0, 0}), deterministic_component(0.5, {1, 1, 1, 1})});
    const Behavior b = behavior_from_model(m);
    // Hand-computed: p(0,0|x,y) = p(1,1|x,y) = 1/2.
    for (std::size_t js = 0; js < 4; ++js) {
      CHECK(correlator(b, js) == 1.0);
      CHECK(b.at(js, 0) == 0.5);
      CHECK(b.at(js, 3) == 0.5);
      for (int p = 0; p < 2; ++p) CHECK(marginal(b, p, js) == std::vector<double>{0.5, 0.5});
    }
  }
  SUBCASE("one non-deterministic component factorizes") {
    ModelComponent c{1.0, {{0.2, 0.8}, {0.6, 0.4}, {0.35, 0.65}, {0.9, 0.1}}};
    const Behavior b = behavior_from_model(StochasticLocalModel(kChsh, {c}));
    CHECK(is_product_behavior(b, 1e-12));
    CHECK(no_signalling_check(b, 1e-12).passes);
  }
}

TEST_CASE("model invariants") {
  CHECK_THROWS_AS(StochasticLocalModel(kChsh, {}), InvariantError);
  CHECK_THROWS_AS(StochasticLocalModel(kChsh, {deterministic_component(0.7, {0, 0, 0, 0})}), InvariantError);
  ModelComponent negative{1.0, {{1.2, -0.2}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}}};
  CHECK_THROWS_AS(StochasticLocalModel(kChsh, {negative}), InvariantError);
  ModelComponent short_responses{1.0, {{0.5, 0.5}}};
  CHECK_THROWS_AS(StochasticLocalModel(kChsh, {short_responses}), StructureError);
  CHECK_THROWS_AS(JointDistribution(kChsh, std::vector<double>(16, 0.1)), InvariantError);
  CHECK_THROWS_AS(JointDistribution(kChsh, std::vector<double>(15, 1.0 / 15)), StructureError);
  CHECK_THROWS_AS(DeterministicStrategy(kChsh, {0, 0, 2, 0}), StructureError);
}

TEST_CASE("joint_from_model examples") {
  SUBCASE("deterministic component is a point mass") {
    const StochasticLocalModel m(kChsh, {deterministic_component(1.0, {1, 0, 1, 1})});
    const auto j = joint_from_model(m);
    for (std::size_t i = 0; i < 16; ++i) CHECK(j.table()[i] == (i == 11 ? 1.0 : 0.0));
  }
  SUBCASE("uniform responses give the uniform joint") {
    ModelComponent c{1.0, std::vector<std::vector<double>>(4, {0.5, 0.5})};
    const auto j = joint_from_model(StochasticLocalModel(kChsh, {c}));
    for (double v : j.table()) CHECK(v == 1.0 / 16);
  }
  SUBCASE("all +1 strategy sits at index 0") {
    const auto j = joint_from_model(model_of_strategy(DeterministicStrategy(kChsh, {0, 0, 0, 0})));
    CHECK(j.table()[0] == 1.0);
  }
}

TEST_CASE("behavior_from_joint examples") {
  std::vector<double> point(16, 0.0);
  point[6] = 1.0;
  const auto b = behavior_from_joint(JointDistribution(kChsh, point));
  const auto expected = behavior_of_strategy(DeterministicStrategy(kChsh, kChsh.full_assignment(6)));
  CHECK(max_abs_diff(b.table(), expected.table()) == 0.0);

  const auto u = behavior_from_joint(JointDistribution(kChsh, std::vector<double>(16, 1.0 / 16)));
  CHECK(max_abs_diff(u.table(), uniform_behavior(kChsh).table()) < 1e-15);
  CHECK(no_signalling_check(u).passes);
}

TEST_CASE("model_from_joint examples") {
  std::vector<double> point(16, 0.0);
  point[3] = 1.0;
  const auto single = model_from_joint(JointDistribution(kChsh, point));
  REQUIRE(single.components().size() == 1);
  CHECK(single.components()[0].weight == 1.0);

  const auto uniform = model_from_joint(JointDistribution(kChsh, std::vector<double>(16, 1.0 / 16)));
  CHECK(uniform.components().size() == 16);
  for (const auto& c : uniform.components()) {
    CHECK(c.weight == 1.0 / 16);
    for (const auto& dist : c.responses) CHECK(std::max(dist[0], dist[1]) == 1.0);
  }

  std::vector<double> sparse(16, 0.0);
  sparse[0] = 0.25;
  sparse[9] = 0.75;
  const auto m = model_from_joint(JointDistribution(kChsh, sparse));
  CHECK(m.components().size() == 2);
  CHECK(max_abs_diff(behavior_from_model(m).table(),
                     behavior_from_joint(JointDistribution(kChsh, sparse)).table()) < 1e-15);
}

TEST_CASE("property: both directions of the model/joint equivalence") {
  for (const Scenario& s : {kChsh, Scenario::uniform(3, 2, 2), Scenario({{3, 2}, {2, 2}})}) {
    Rng rng(kDefaultSeed);
    for (int trial = 0; trial < 100; ++trial) {
      const auto m = random_model(rng, s);
      CHECK(max_abs_diff(behavior_from_joint(joint_from_model(m)).table(), behavior_from_model(m).table()) <= 1e-12);
    }
    for (int trial = 0; trial < 100; ++trial) {
      const auto j = random_joint(rng, s);
      const auto m = model_from_joint(j);
      CHECK(max_abs_diff(joint_from_model(m).table(), j.table()) <= 1e-12);
      CHECK(max_abs_diff(behavior_from_model(m).table(), behavior_from_joint(j).table()) <= 1e-12);
    }
  }
}

TEST_CASE("property: model behaviors are valid and non-signalling") {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const Scenario s = trial % 2 ? kChsh : Scenario::uniform(3, 2, 2);
    const auto m = random_model(rng, s);
    CHECK(m.components().size() >= 1);
    CHECK(m.components().size() <= 8);
    const Behavior b = behavior_from_model(m);
    CHECK(validate_behavior(b, 1e-9).is_valid);
    CHECK(no_signalling_check(b, 1e-9).passes);
  }
}

TEST_CASE("random generation is reproducible") {
  Rng a(5), b(5);
  CHECK(random_joint(a, kChsh).table() == random_joint(b, kChsh).table());
}

TEST_CASE("PR box") {
  const Behavior pr = make_pr_box();
  CHECK(validate_behavior(pr).is_valid);
  CHECK(no_signalling_check(pr).passes);
  CHECK(correlator(pr, 0) == 1.0);
  CHECK(correlator(pr, 1) == 1.0);
  CHECK(correlator(pr, 2) == 1.0);
  CHECK(correlator(pr, 3) == -1.0);
}
