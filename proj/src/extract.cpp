#include "rtc/extract.hpp"

#include "rtc/errors.hpp"
#include "rtc/verify.hpp"

#include <deque>
#include <map>
#include <tuple>

namespace rtc
{
  Dlts extract_rtc_controller(const Dlts& mplus)
  {
    ActionId gc = yield_controller(), ge = yield_environment();
    const Alphabet& al = mplus.alphabet();
    if (!al.controlled.count(gc) || !al.monitored.count(ge))
      throw usage_error("'" + mplus.name() + "' does not declare both yield actions");

    ActionSet C, U;
    for (ActionId a : al.controlled)
      if (a != gc)
        C.insert(a);
    for (ActionId a : al.monitored)
      if (a != ge)
        U.insert(a);

    Dlts m(mplus.name());
    for (ActionId a : C)
      m.add_controlled(a);
    for (ActionId a : U)
      m.add_monitored(a);
    for (PropId p : mplus.props())
      m.add_prop(p);

    std::size_t n = mplus.num_states();
    auto e_side = [](StateId t) { return 2 * t; };
    auto c_side = [](StateId t) { return 2 * t + 1; };
    for (StateId t = 0; t < n; ++t)
      for (const char* side : {"e:", "c:"})
        {
          StateId s = m.add_state(side + mplus.state_name(t));
          for (PropId p : mplus.labels(t))
            m.add_label(s, p);
        }

    for (StateId t = 0; t < n; ++t)
      {
        auto after_ge = mplus.successors(t, ge);
        bool detour = false;
        for (StateId t1 : after_ge)
          for (StateId t2 : mplus.successors(t1, gc))
            {
              detour = true;
              // (i) uncontrollable after a full γ_E·γ_C round
              for (const Edge& x : mplus.out(t2))
                if (U.count(x.action))
                  m.add_transition(e_side(t), x.action, e_side(x.dst));
            }
        // (ii) direct uncontrollable when no round exists
        if (!detour)
          for (const Edge& x : mplus.out(t))
            if (U.count(x.action))
              m.add_transition(e_side(t), x.action, e_side(x.dst));
        // (iii) controllable right after γ_E
        for (StateId t2 : after_ge)
          for (const Edge& x : mplus.out(t2))
            if (C.count(x.action))
              m.add_transition(e_side(t), x.action, c_side(x.dst));
        for (const Edge& x : mplus.out(t))
          if (C.count(x.action))   // (iv)
            m.add_transition(c_side(t), x.action, c_side(x.dst));
        for (StateId t2 : mplus.successors(t, gc))   // (v)
          for (const Edge& x : mplus.out(t2))
            if (U.count(x.action))
              m.add_transition(c_side(t), x.action, e_side(x.dst));
      }
    m.set_initial(e_side(mplus.initial()));
    return reachable(m);
  }

  Dlts embed_rtc_controller(const Dlts& m, const Dlts& env, const ActionSet& controllable)
  {
    if (!check_rtc_legality(env, m, controllable).legal())
      throw usage_error("'" + m.name() + "' is not run-to-completion legal for '"
                        + env.name() + "'");
    ActionId gc = yield_controller(), ge = yield_environment();
    auto comp = compose_with_map(m, env);
    const Dlts& p = comp.product;
    // the yield-extended environment starts on its own turn, so the first
    // state has to let it move freely
    for (const Edge& x : env.out(env.initial()))
      if (!controllable.count(x.action) && !m.enables(m.initial(), x.action))
        throw usage_error("'" + m.name() + "' blocks '" + x.action.name()
                          + "' in its initial state");

    Dlts out(m.name().empty() ? "embedded" : m.name() + "+");
    for (ActionId a : env.alphabet().all())
      {
        if (controllable.count(a))
          out.add_controlled(a);
        else
          out.add_monitored(a);
      }
    out.add_controlled(gc);
    out.add_monitored(ge);
    for (PropId q : m.props())
      out.add_prop(q);

    // key: (product state, copy) with copy 0 = e side, 1 and 2 = controller turn
    std::map<std::pair<StateId, int>, StateId> index;
    std::deque<std::pair<StateId, int>> queue;
    auto intern = [&](StateId k, int copy) {
      auto [it, inserted] = index.try_emplace({k, copy}, 0);
      if (inserted)
        {
          auto [ms, es] = comp.components[k];
          std::string name = env.state_name(es) + (copy == 0 ? ",e," : ",c,")
                             + m.state_name(ms);
          if (copy)
            name += "," + std::to_string(copy);
          it->second = out.add_state(name);
          for (PropId q : m.labels(ms))
            out.add_label(it->second, q);
          queue.push_back({k, copy});
        }
      return it->second;
    };

    auto has = [&](StateId k, bool want_c) {
      for (const Edge& x : p.out(k))
        if (controllable.count(x.action) == static_cast<std::size_t>(want_c))
          return true;
      return false;
    };

    out.set_initial(intern(p.initial(), 0));
    while (!queue.empty())
      {
        auto [k, copy] = queue.front();
        queue.pop_front();
        StateId from = index.at({k, copy});
        StateId es = comp.components[k].second;
        if (copy == 0)
          {
            for (const Edge& x : p.out(k))
              if (!controllable.count(x.action))
                out.add_transition(from, x.action, intern(x.dst, 0));
            bool env_c = false;
            for (const Edge& x : env.out(es))
              if (controllable.count(x.action))
                env_c = true;
            if (env_c)
              out.add_transition(from, ge, intern(k, 1));
            continue;
          }
        bool gamma_c = has(k, true), gamma_u = has(k, false);
        if (copy == 1 && !gamma_c)
          out.add_transition(from, gc, intern(k, 0));
        if (copy == 2 && gamma_u)
          out.add_transition(from, gc, intern(k, 0));
        if (copy == 1 || !gamma_u)
          for (const Edge& x : p.out(k))
            if (controllable.count(x.action))
              out.add_transition(from, x.action, intern(x.dst, 2));
      }
    return out;
  }
}
