#include "builders.hpp"
#include "generators.hpp"

#include "rtc/errors.hpp"
#include "rtc/extract.hpp"
#include "rtc/game.hpp"
#include "rtc/verify.hpp"

#include "doctest.h"

using namespace rtc;
using namespace rtc::test;

namespace
{
  std::vector<ActionId> with_gamma(std::vector<ActionId> v, ActionId g)
  {
    v.push_back(g);
    return v;
  }

  RtcProblem random_problem(rng& r, const std::vector<ActionId>& C,
                            const std::vector<ActionId>& U, std::size_t env_states)
  {
    RtcProblem p;
    p.env = random_dlts(r, env_states, C, U, 0.55, true, "E");
    for (ActionId c : C)
      p.controllable.insert(c);
    std::vector<ActionId> all = C;
    all.insert(all.end(), U.begin(), U.end());
    p.spec.fluents.add(random_fluent(r, all, "F"));
    p.spec.fluents.add(random_fluent(r, all, "G"));
    if (coin(r, 0.4))
      p.spec.safety.push_back(random_safety(r, 2, 2));
    if (coin(r, 0.5))
      p.spec.assumptions.push_back(random_combo(r, 2, 1));
    p.spec.guarantees.push_back(random_combo(r, 2, 1));
    return p;
  }
}

TEST_CASE("extraction needs both yield actions")
{
  auto d = make_dlts("M", 1, {"c"}, {"u"}, {{0, "u", 0}});
  CHECK_THROWS_AS(extract_rtc_controller(d), usage_error);
}

TEST_CASE("uncontrollable self loop without yields stays on the environment side")
{
  Dlts mp("M+");
  mp.add_state("t");
  mp.add_controlled(yield_controller());
  mp.add_monitored(yield_environment());
  mp.add_monitored(ActionId("u"));
  mp.add_transition(0, ActionId("u"), 0);
  mp.set_initial(0);
  Dlts m = extract_rtc_controller(mp);
  REQUIRE(m.num_states() == 1);
  CHECK(m.state_name(m.initial()) == "e:t");
  auto ts = m.transitions();
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].action == ActionId("u"));
  CHECK(m.alphabet().all() == actions({"u"}));
}

TEST_CASE("detour through both yields replaces the direct move")
{
  // t0 -u-> t0 directly, and t0 -γE-> t1 -γC-> t2 -u-> t3
  Dlts mp("M+");
  for (int i = 0; i < 4; ++i)
    mp.add_state("t" + std::to_string(i));
  mp.add_controlled(yield_controller());
  mp.add_controlled(ActionId("c"));
  mp.add_monitored(yield_environment());
  mp.add_monitored(ActionId("u"));
  mp.add_transition(0, ActionId("u"), 0);
  mp.add_transition(0, yield_environment(), 1);
  mp.add_transition(1, yield_controller(), 2);
  mp.add_transition(2, ActionId("u"), 3);
  mp.add_transition(1, ActionId("c"), 3);
  mp.set_initial(0);
  Dlts m = extract_rtc_controller(mp);
  auto succ = m.successors(m.initial(), ActionId("u"));
  REQUIRE(succ.size() == 1);
  CHECK(m.state_name(succ[0]) == "e:t3");
  auto csucc = m.successors(m.initial(), ActionId("c"));
  REQUIRE(csucc.size() == 1);
  CHECK(m.state_name(csucc[0]) == "c:t3");
}

TEST_CASE("extraction size bound and determinism")
{
  rng r(11);
  auto C = named_actions("c", 2), U = named_actions("u", 2);
  for (int k = 0; k < 300; ++k)
    {
      bool det = coin(r);
      auto mp = random_dlts(r, 1 + pick(r, 8), with_gamma(C, yield_controller()),
                            with_gamma(U, yield_environment()), 0.5, det, "M+");
      Dlts m = extract_rtc_controller(mp);
      CHECK(m.num_states() <= 2 * mp.num_states());
      if (det)
        CHECK(is_deterministic(m));
    }
}

namespace
{
  bool starts_on_environment_turn(const RtcProblem& p, const Dlts& m)
  {
    for (const Edge& x : p.env.out(p.env.initial()))
      if (!p.controllable.count(x.action) && !m.enables(m.initial(), x.action))
        return false;
    return true;
  }

  bool solves(const RtcProblem& p, const Dlts& m)
  {
    return check_rtc_legality(p.env, m, p.controllable).legal()
           && check_deadlock_free(p.env, m).holds && check_rtc_goal(p, m).holds;
  }

  void check_round_trip(const RtcProblem& p, const Dlts& m)
  {
    Dlts mp = embed_rtc_controller(m, p.env, p.controllable);
    CHECK(is_deterministic(mp));
    StdProblem sp = build_modified_problem(p);
    CHECK(check_standard_legality(sp.env, mp, sp.controllable).legal());
    CHECK(check_deadlock_free(sp.env, mp).holds);
    CHECK(check_standard_goal(sp, mp).holds);
    Dlts back = extract_rtc_controller(mp);
    CHECK(is_deterministic(back));
    CHECK(back.num_states() <= 2 * mp.num_states());
    CHECK(solves(p, back));
  }
}

TEST_CASE("embedding a solution and extracting it back preserves the solution")
{
  rng r(5);
  auto C = named_actions("c", 2), U = named_actions("u", 2);
  int from_random = 0, from_synthesis = 0;
  for (int k = 0; k < 4000; ++k)
    {
      RtcProblem p = random_problem(r, C, U, 3);
      auto m = random_dlts(r, 1 + pick(r, 3), C, U, 0.6, true, "M");
      CAPTURE(k);
      if (solves(p, m) && starts_on_environment_turn(p, m))
        {
          ++from_random;
          check_round_trip(p, m);
        }
      if (k % 20 == 0)
        {
          auto res = synthesize(build_modified_problem(p));
          if (res.realizable)
            {
              ++from_synthesis;
              check_round_trip(p, extract_rtc_controller(*res.controller));
            }
        }
    }
  CHECK(from_random >= 20);
  CHECK(from_synthesis >= 20);
}

TEST_CASE("embedding requires the environment to move first")
{
  auto e = make_dlts("E", 1, {"c"}, {"u"}, {{0, "u", 0}, {0, "c", 0}});
  auto m = make_dlts("M", 2, {"c"}, {"u"}, {{0, "c", 1}, {1, "u", 1}, {1, "c", 1}});
  REQUIRE(check_rtc_legality(e, m, actions({"c"})).legal());
  CHECK_THROWS_AS(embed_rtc_controller(m, e, actions({"c"})), usage_error);
}

TEST_CASE("embedding requires an RTC-legal controller")
{
  auto e = make_dlts("E", 1, {"c"}, {"u", "v"}, {{0, "u", 0}, {0, "v", 0}, {0, "c", 0}});
  auto m = make_dlts("M", 1, {"c"}, {"u", "v"}, {{0, "u", 0}});
  CHECK_THROWS_AS(embed_rtc_controller(m, e, actions({"c"})), usage_error);
}

TEST_CASE("synthesised controllers pass independent verification")
{
  rng r(23);
  auto C = named_actions("c", 2), U = named_actions("u", 2);
  int realizable = 0, unrealizable = 0;
  for (int k = 0; k < 200; ++k)
    {
      RtcProblem p = random_problem(r, C, U, 2 + pick(r, 3));
      StdProblem sp = build_modified_problem(p);
      auto res = synthesize(sp);
      CAPTURE(k);
      if (!res.realizable)
        {
          ++unrealizable;
          continue;
        }
      ++realizable;
      REQUIRE(res.controller);
      CHECK(check_standard_legality(sp.env, *res.controller, sp.controllable).legal());
      CHECK(check_deadlock_free(sp.env, *res.controller).holds);
      CHECK(check_standard_goal(sp, *res.controller).holds);
      Dlts m = extract_rtc_controller(*res.controller);
      CHECK(m.num_states() <= 2 * res.controller->num_states());
      CHECK(is_deterministic(m));
      CHECK(check_rtc_legality(p.env, m, p.controllable).legal());
      CHECK(check_deadlock_free(p.env, m).holds);
      CHECK(check_rtc_goal(p, m).holds);
    }
  CHECK(realizable > 20);
  CHECK(unrealizable > 5);
}
