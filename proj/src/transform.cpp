#include "rtc/transform.hpp"

#include "rtc/errors.hpp"

namespace rtc
{
  ActionSet RtcProblem::uncontrollable() const
  {
    ActionSet u;
    for (ActionId a : env.alphabet().all())
      if (!controllable.count(a))
        u.insert(a);
    return u;
  }

  void RtcProblem::validate() const
  {
    ActionSet all = env.alphabet().all();
    for (ActionId a : all)
      if (is_yield(a))
        throw model_error("action name '" + a.name() + "' is reserved");
    for (ActionId c : controllable)
      if (!all.count(c))
        throw model_error("controllable action '" + c.name()
                          + "' is not in the environment alphabet");
    if (!is_deterministic(env))
      throw spec_error("environment '" + env.name() + "' is not deterministic");
    for (const Fluent& f : spec.fluents)
      for (const ActionSet* s : {&f.initiating, &f.terminating})
        for (ActionId a : *s)
          if (is_yield(a))
            throw spec_error("fluent '" + f.name + "' mentions reserved action '"
                             + a.name() + "'");
    spec.validate();
  }

  ActionSet StdProblem::uncontrollable() const
  {
    ActionSet u;
    for (ActionId a : env.alphabet().all())
      if (!controllable.count(a))
        u.insert(a);
    return u;
  }

  DerivedAtoms derive_atoms(FluentSet& fluents, const ActionSet& controllable,
                            const ActionSet& uncontrollable, bool with_controller)
  {
    ActionSet act = controllable;
    act.insert(uncontrollable.begin(), uncontrollable.end());
    auto dot = [&](ActionId a) { return BoolCombo::fluent(fluents.action(a, act)); };
    auto en = [&](ActionId a, const char* tag) {
      return BoolCombo::fluent(fluents.proposition(PropId(enabledness_prop_name(a, tag))));
    };

    std::vector<BoolCombo> c, u, all, pe, pm;
    for (ActionId a : controllable)
      {
        c.push_back(dot(a));
        all.push_back(dot(a));
        if (with_controller)
          pm.push_back(!en(a, "M"));
      }
    for (ActionId a : uncontrollable)
      {
        u.push_back(dot(a));
        all.push_back(dot(a));
        pe.push_back(!en(a, "E"));
      }
    DerivedAtoms d;
    d.c = BoolCombo::any_of(c);
    d.u = BoolCombo::any_of(u);
    d.all_a = BoolCombo::any_of(all);
    d.pass_e = BoolCombo::all_of(pe);
    d.pass_m = BoolCombo::all_of(pm);
    return d;
  }

  Dlts with_partition(const Dlts& d, const ActionSet& controllable)
  {
    const Alphabet& al = d.alphabet();
    if (!al.controlled.empty() && al.controlled != controllable)
      throw model_error("controllable actions differ from those declared by '" + d.name()
                        + "'");
    Dlts r(d.name());
    for (ActionId a : al.all())
      {
        if (controllable.count(a))
          r.add_controlled(a);
        else
          r.add_monitored(a);
      }
    for (PropId p : d.props())
      r.add_prop(p);
    for (StateId s = 0; s < d.num_states(); ++s)
      {
        r.add_state(d.state_name(s));
        for (PropId p : d.labels(s))
          r.add_label(s, p);
      }
    for (const Transition& t : d.transitions())
      r.add_transition(t.src, t.action, t.dst);
    r.set_initial(d.initial());
    return r;
  }

  Dlts build_yield(const ActionSet& uncontrollable, const ActionSet& controllable)
  {
    ActionId gc = yield_controller(), ge = yield_environment();
    Dlts y("yield");
    for (ActionId a : controllable)
      {
        if (is_yield(a))
          throw model_error("action name '" + a.name() + "' is reserved");
        y.add_controlled(a);
      }
    for (ActionId a : uncontrollable)
      {
        if (is_yield(a))
          throw model_error("action name '" + a.name() + "' is reserved");
        y.add_monitored(a);
      }
    y.add_controlled(gc);
    y.add_monitored(ge);
    StateId e = y.add_state("e");
    StateId c = y.add_state("c");
    y.set_initial(e);
    y.add_transition(c, gc, e);
    y.add_transition(e, ge, c);
    for (ActionId a : uncontrollable)
      y.add_transition(e, a, e);
    for (ActionId a : controllable)
      y.add_transition(c, a, c);
    return y;
  }

  Dlts remove_livelock(const Dlts& n)
  {
    Dlts pruned(n.name());
    for (ActionId a : n.alphabet().controlled)
      pruned.add_controlled(a);
    for (ActionId a : n.alphabet().monitored)
      pruned.add_monitored(a);
    for (PropId p : n.props())
      pruned.add_prop(p);
    for (StateId s = 0; s < n.num_states(); ++s)
      {
        pruned.add_state(n.state_name(s));
        for (PropId p : n.labels(s))
          pruned.add_label(s, p);
      }
    auto progresses = [&](StateId s) {
      for (const Edge& e : n.out(s))
        if (!is_yield(e.action))
          return true;
      return false;
    };
    for (const Transition& t : n.transitions())
      if (!is_yield(t.action) || progresses(t.dst))
        pruned.add_transition(t.src, t.action, t.dst);
    pruned.set_initial(n.initial());
    return reachable(pruned);
  }

  namespace
  {
    void copy_user_goal(const Sgr1Spec& spec, StdProblem& out)
    {
      out.fluents = spec.fluents;
      out.safety = spec.safety;
      for (const auto& a : spec.assumptions)
        out.assumptions.push_back({a, false});
      for (const auto& g : spec.guarantees)
        out.guarantees.push_back({g, false});
    }

    FluentIndex reserved_fluent(FluentSet& fs, Fluent f)
    {
      if (fs.find(f.name))
        throw spec_error("fluent name '" + f.name + "' is reserved");
      return fs.add(std::move(f));
    }
  }

  StdProblem build_modified_problem(const RtcProblem& p)
  {
    p.validate();
    ActionSet C = p.controllable;
    ActionSet U = p.uncontrollable();
    ActionId gc = yield_controller(), ge = yield_environment();

    Dlts annotated = annotate_enabledness(with_partition(p.env, C), "E");
    Dlts composed = parallel_compose(annotated, build_yield(U, C));
    composed.set_name(p.env.name().empty() ? "live" : "live(" + p.env.name() + ")");

    StdProblem out;
    out.env = remove_livelock(composed);
    copy_user_goal(p.spec, out);

    Fluent en_e;
    en_e.name = "en_e";
    en_e.initiating = {gc};
    en_e.terminating = {ge};
    en_e.initially = true;
    Fluent en_m;
    en_m.name = "en_m";
    en_m.initiating = {ge};
    en_m.terminating = {gc};
    auto fe = BoolCombo::fluent(reserved_fluent(out.fluents, en_e));
    auto fm = BoolCombo::fluent(reserved_fluent(out.fluents, en_m));

    std::vector<BoolCombo> no_u, no_c;
    for (ActionId a : U)
      no_u.push_back(
        !BoolCombo::fluent(out.fluents.proposition(PropId(enabledness_prop_name(a, "E")))));
    for (ActionId a : C)
      no_c.push_back(
        !BoolCombo::fluent(out.fluents.proposition(PropId(enabledness_prop_name(a, "E")))));
    ActionSet act = C;
    act.insert(U.begin(), U.end());
    std::vector<BoolCombo> any;
    for (ActionId a : act)
      any.push_back(BoolCombo::fluent(out.fluents.action(a, act)));

    out.buchi = GoalAtom{fe || BoolCombo::all_of(no_u), true};
    out.assumptions.insert(out.assumptions.begin(),
                           GoalAtom{fm || BoolCombo::all_of(no_c), true});
    out.assumptions.push_back(GoalAtom{BoolCombo::any_of(any), false});
    out.controllable = C;
    out.controllable.insert(gc);
    return out;
  }

  StdProblem build_standard_problem(const RtcProblem& p)
  {
    p.validate();
    StdProblem out;
    out.env = with_partition(p.env, p.controllable);
    copy_user_goal(p.spec, out);
    out.controllable = p.controllable;
    return out;
  }
}
