#include <doctest.h>

#include <algorithm>

#include "stitkit/btac.hpp"
#include "stitkit/parser.hpp"
#include "stitkit/sweep.hpp"
#include "test_support.hpp"

using namespace stitkit;
using namespace stitkit::testing;

namespace {

// two branches out of the root
BTACModel fork_model() {
  BTFrame frame({"m1", "m2", "m3"}, {{"m1", "m2"}, {"m1", "m3"}});
  std::map<std::string, std::map<std::string, std::vector<std::vector<std::string>>>> choice;
  choice["a"]["m1"] = {{"m2"}, {"m3"}};
  choice["a"]["m2"] = {{"m2"}};
  choice["a"]["m3"] = {{"m3"}};
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> valuation;
  valuation["p"] = {{"m1", "m2"}};
  return BTACModel(std::move(frame), {AgentId("a")}, choice, valuation);
}

}  // namespace

TEST_CASE("history computation on the basic shapes") {
  BTFrame single({"m1"}, {});
  auto hs = histories(single);
  REQUIRE(hs.size() == 1);
  CHECK(hs[0].moments == 1);

  BTFrame fork({"m1", "m2", "m3"}, {{"m1", "m2"}, {"m1", "m3"}});
  auto fork_hs = histories(fork);
  REQUIRE(fork_hs.size() == 2);
  CHECK(fork_hs[0].moments == fork.below(1) + subset_single(1));
  CHECK(fork_hs[0].moments == 0b011);  // {m1, m2}
  CHECK(fork_hs[1].moments == 0b101);  // {m1, m3}

  BTFrame chain({"m1", "m2", "m3"}, {{"m1", "m2"}, {"m2", "m3"}});
  auto chain_hs = histories(chain);
  REQUIRE(chain_hs.size() == 1);
  CHECK(chain_hs[0].moments == 0b111);
  CHECK(chain_hs[0].top == 2);
}

TEST_CASE("transitive closure is taken at construction") {
  BTFrame chain({"m1", "m2", "m3"}, {{"m1", "m2"}, {"m2", "m3"}});
  CHECK(chain.less(0, 2));
  CHECK(!chain.less(2, 0));
}

TEST_CASE("histories through a moment") {
  BTFrame fork({"m1", "m2", "m3"}, {{"m1", "m2"}, {"m1", "m3"}});
  CHECK(histories_through(fork, "m1").size() == 2);
  auto at_m2 = histories_through(fork, "m2");
  REQUIRE(at_m2.size() == 1);
  CHECK(at_m2[0].moments == 0b011);

  BTFrame single({"m1"}, {});
  CHECK(histories_through(single, "m1").size() == 1);
  CHECK_THROWS_AS(histories_through(single, "m9"), ModelError);
}

TEST_CASE("frame report catches order violations") {
  BTFrame cyclic({"m1", "m2"}, {{"m1", "m2"}, {"m2", "m1"}});
  CheckReport rep = cyclic.report();
  CHECK(!rep.holds);
  CHECK(rep.witness.at("violated") == "irreflexivity");
  CHECK_THROWS_AS(histories(cyclic), ModelError);

  // two incomparable predecessors of one moment
  BTFrame diamond_in({"m1", "m2", "m3"}, {{"m2", "m1"}, {"m3", "m1"}});
  CheckReport rep2 = diamond_in.report();
  CHECK(!rep2.holds);
  CHECK(rep2.witness.at("violated") == "backward-linearity");
  CHECK(rep2.witness.at("moment") == "m1");
}

TEST_CASE("down-set histories equal brute-force maximal chains") {
  for (int n = 1; n <= 4; ++n) {
    for (const auto& above : all_strict_orders(n)) {
      if (!backward_linear(above)) continue;
      std::vector<std::string> names;
      for (int i = 0; i < n; ++i) names.push_back("m" + std::to_string(i + 1));
      std::vector<std::pair<std::string, std::string>> order;
      for (int i = 0; i < n; ++i) {
        for (int j : subset_members(above[i])) order.emplace_back(names[i], names[j]);
      }
      BTFrame frame(names, order);
      std::vector<Subset> got;
      for (const History& h : histories(frame)) got.push_back(h.moments);
      std::vector<Subset> expected = maximal_chains_oracle(above);
      std::sort(got.begin(), got.end());
      std::sort(expected.begin(), expected.end());
      CHECK(got == expected);
    }
  }
}

TEST_CASE("classical evaluation on the fork model") {
  BTACModel m = fork_model();
  Index idx = m.index_of("m1", "m2");

  CHECK(eval_cstit(m, idx, parse("box true")));
  CHECK(eval_cstit(m, idx, parse("[stit:a] p")));
  CHECK(!eval_cstit(m, idx, parse("box p")));
  CHECK(eval_cstit(m, idx, parse("dia p")));
  CHECK(!eval_cstit(m, m.index_of("m1", "m3"), parse("[stit:a] p")));
  CHECK(eval_cstit(m, m.index_of("m1", "m3"), parse("<stit:a> ~p")));
  CHECK(!eval_cstit(m, m.index_of("m2", "m2"), parse("p")));

  CHECK_THROWS_AS(eval_cstit(m, idx, parse("[a] p")), ModelError);
  CHECK_THROWS_AS(eval_cstit(m, idx, parse("[E:a] p")), ModelError);
  CHECK_THROWS_AS(eval_cstit(m, Index{0, 99}, parse("p")), ModelError);
}

TEST_CASE("vacuous choice makes stit collapse to box") {
  BTFrame frame({"m1", "m2", "m3"}, {{"m1", "m2"}, {"m1", "m3"}});
  std::map<std::string, std::map<std::string, std::vector<std::vector<std::string>>>> choice;
  choice["a"]["m1"] = {{"m2", "m3"}};  // single cell: all of H_m1
  choice["a"]["m2"] = {{"m2"}};
  choice["a"]["m3"] = {{"m3"}};
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> valuation;
  valuation["p"] = {{"m1", "m2"}, {"m3", "m3"}};
  BTACModel m(std::move(frame), {AgentId("a")}, choice, valuation);

  for (const char* text : {"p", "~p", "p | ~p"}) {
    Formula f = parse(text);
    Formula stit_f = Formula::stit(AgentId("a"), f);
    Formula box_f = Formula::box(f);
    for (const char* h : {"m2", "m3"}) {
      Index idx = m.index_of("m1", h);
      CHECK(eval_cstit(m, idx, stit_f) == eval_cstit(m, idx, box_f));
    }
  }
}

TEST_CASE("box implies stit at every index") {
  Rng rng(606);
  for (int i = 0; i < 60; ++i) {
    BTACModel m = random_btac_model(rng.next_u64(), 4, 2, 2);
    REQUIRE(validate_btac(m).holds);
    Formula f = random_osstit_formula(rng, 2, {}, 1);  // purely Boolean over atoms
    Formula box_f = Formula::box(f);
    for (int mm = 0; mm < m.frame().num_moments(); ++mm) {
      for (int h : subset_members(m.hm(mm))) {
        Index idx{mm, h};
        if (eval_cstit(m, idx, box_f)) {
          for (const AgentId& agent : m.agents()) {
            CHECK(eval_cstit(m, idx, Formula::stit(agent, f)));
          }
        }
        // box is history-local: constant across the histories through mm
        CHECK(eval_cstit(m, idx, box_f) == eval_cstit(m, Index{mm, subset_members(m.hm(mm))[0]},
                                                      box_f));
      }
    }
  }
}

TEST_CASE("model validation") {
  CHECK(validate_btac(fork_model()).holds);

  // independence failure: both agents pick the same singleton partition
  BTFrame frame({"m1", "m2", "m3"}, {{"m1", "m2"}, {"m1", "m3"}});
  std::map<std::string, std::map<std::string, std::vector<std::vector<std::string>>>> choice;
  for (const char* agent : {"a", "b"}) {
    choice[agent]["m1"] = {{"m2"}, {"m3"}};
    choice[agent]["m2"] = {{"m2"}};
    choice[agent]["m3"] = {{"m3"}};
  }
  BTACModel bad(frame, {AgentId("a"), AgentId("b")}, choice, {});
  CheckReport rep = validate_btac(bad);
  CHECK(!rep.holds);
  CHECK(rep.witness.at("violated") == "independence");

  // partition failure: a history missing from every cell
  std::map<std::string, std::map<std::string, std::vector<std::vector<std::string>>>> gap;
  gap["a"]["m1"] = {{"m2"}};
  gap["a"]["m2"] = {{"m2"}};
  gap["a"]["m3"] = {{"m3"}};
  BTACModel holes(frame, {AgentId("a")}, gap, {});
  CheckReport rep2 = validate_btac(holes);
  CHECK(!rep2.holds);
  CHECK(rep2.witness.at("violated") == "cells do not cover H_m");

  // overlap failure
  std::map<std::string, std::map<std::string, std::vector<std::vector<std::string>>>> overlap;
  overlap["a"]["m1"] = {{"m2", "m3"}, {"m3"}};
  overlap["a"]["m2"] = {{"m2"}};
  overlap["a"]["m3"] = {{"m3"}};
  BTACModel lapped(frame, {AgentId("a")}, overlap, {});
  CHECK(!validate_btac(lapped).holds);
}

TEST_CASE("valuation indices must pass through their moment") {
  BTFrame frame({"m1", "m2", "m3"}, {{"m1", "m2"}, {"m1", "m3"}});
  std::map<std::string, std::map<std::string, std::vector<std::vector<std::string>>>> choice;
  choice["a"]["m1"] = {{"m2"}, {"m3"}};
  choice["a"]["m2"] = {{"m2"}};
  choice["a"]["m3"] = {{"m3"}};
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> bad_val;
  bad_val["p"] = {{"m2", "m3"}};  // history m3 does not pass through m2
  CHECK_THROWS_AS(BTACModel(frame, {AgentId("a")}, choice, bad_val), ModelError);
}

TEST_CASE("BT+AC files round trip") {
  BTACModel m = fork_model();
  nlohmann::json j = btac_model_to_json(m);
  BTACModel back = btac_model_from_json(j);
  CHECK(btac_model_to_json(back) == j);
  CHECK(back.frame().num_moments() == 3);
  CHECK(back.all_histories().size() == 2);
  CHECK(eval_cstit(back, back.index_of("m1", "m2"), parse("p")));

  Rng rng(607);
  for (int i = 0; i < 30; ++i) {
    BTACModel rnd = random_btac_model(rng.next_u64(), 4, 2, 2);
    nlohmann::json out = btac_model_to_json(rnd);
    CHECK(btac_model_to_json(btac_model_from_json(out)) == out);
  }

  nlohmann::json broken = j;
  broken["choice"]["a"]["m1"] = {{"m9"}};
  CHECK_THROWS_AS(btac_model_from_json(broken), ModelError);
}
