#include "rtc/dlts.hpp"

#include "rtc/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace rtc
{
  ActionSet Alphabet::all() const
  {
    ActionSet s = controlled;
    s.insert(monitored.begin(), monitored.end());
    return s;
  }

  StateId Dlts::add_state(std::string display_name)
  {
    auto id = static_cast<StateId>(out_.size());
    if (display_name.empty())
      display_name = std::to_string(id);
    state_names_.push_back(std::move(display_name));
    labels_.emplace_back();
    out_.emplace_back();
    return id;
  }

  void Dlts::check_state(StateId s) const
  {
    if (s >= out_.size())
      throw usage_error("unknown state " + std::to_string(s) + " in DLTS '"
                        + name_ + "'");
  }

  void Dlts::set_initial(StateId s)
  {
    check_state(s);
    initial_ = s;
  }

  void Dlts::add_controlled(ActionId a)
  {
    if (alphabet_.monitored.count(a))
      throw model_error("action '" + a.name()
                        + "' is both controlled and monitored in '" + name_ + "'");
    alphabet_.controlled.insert(a);
  }

  void Dlts::add_monitored(ActionId a)
  {
    if (alphabet_.controlled.count(a))
      throw model_error("action '" + a.name()
                        + "' is both controlled and monitored in '" + name_ + "'");
    alphabet_.monitored.insert(a);
  }

  void Dlts::add_prop(PropId p)
  {
    props_.insert(p);
  }

  void Dlts::add_label(StateId s, PropId p)
  {
    check_state(s);
    props_.insert(p);
    auto& l = labels_[s];
    auto it = std::lower_bound(l.begin(), l.end(), p);
    if (it == l.end() || *it != p)
      l.insert(it, p);
  }

  void Dlts::add_transition(StateId src, ActionId action, StateId dst)
  {
    check_state(src);
    check_state(dst);
    if (!alphabet_.contains(action))
      throw model_error("action '" + action.name() + "' is not in the alphabet of '"
                        + name_ + "'");
    auto& o = out_[src];
    Edge e{action, dst};
    auto it = std::lower_bound(o.begin(), o.end(), e);
    if (it == o.end() || *it != e)
      o.insert(it, e);
  }

  std::size_t Dlts::num_transitions() const noexcept
  {
    std::size_t n = 0;
    for (const auto& o : out_)
      n += o.size();
    return n;
  }

  const std::string& Dlts::state_name(StateId s) const
  {
    check_state(s);
    return state_names_[s];
  }

  std::span<const PropId> Dlts::labels(StateId s) const
  {
    check_state(s);
    return labels_[s];
  }

  bool Dlts::has_label(StateId s, PropId p) const
  {
    auto l = labels(s);
    return std::binary_search(l.begin(), l.end(), p);
  }

  std::span<const Edge> Dlts::out(StateId s) const
  {
    check_state(s);
    return out_[s];
  }

  std::vector<Transition> Dlts::transitions() const
  {
    std::vector<Transition> r;
    for (StateId s = 0; s < out_.size(); ++s)
      for (const auto& e : out_[s])
        r.push_back({s, e.action, e.dst});
    return r;
  }

  std::vector<StateId> Dlts::successors(StateId s, ActionId a) const
  {
    std::vector<StateId> r;
    auto o = out(s);
    auto it = std::lower_bound(o.begin(), o.end(), Edge{a, 0});
    for (; it != o.end() && it->action == a; ++it)
      r.push_back(it->dst);
    return r;
  }

  bool Dlts::enables(StateId s, ActionId a) const
  {
    auto o = out(s);
    auto it = std::lower_bound(o.begin(), o.end(), Edge{a, 0});
    return it != o.end() && it->action == a;
  }

  ActionSet enabled_actions(const Dlts& d, StateId s,
                            const std::optional<ActionSet>& restrict)
  {
    ActionSet r;
    for (const auto& e : d.out(s))
      if (!restrict || restrict->count(e.action))
        r.insert(e.action);
    return r;
  }

  namespace
  {
    using prop_map = std::unordered_map<PropId, PropId>;

    // Renames props that occur on both sides. Enabledness props must stay
    // unique, so a collision among them is an error.
    std::pair<prop_map, prop_map> namespace_props(const Dlts& m, const Dlts& e)
    {
      prop_map mm, em;
      std::string mname = m.name().empty() ? "left" : m.name();
      std::string ename = e.name().empty() ? "right" : e.name();
      for (PropId p : m.props())
        {
          if (!e.props().count(p))
            continue;
          if (is_enabledness_prop(p))
            throw model_error("enabledness proposition '" + p.name()
                              + "' occurs in both composed models");
          if (mname == ename)
            throw model_error("proposition '" + p.name()
                              + "' collides and both models are named '" + mname + "'");
          PropId pm(mname + "." + p.name());
          PropId pe(ename + "." + p.name());
          if (m.props().count(pm) || e.props().count(pm) || m.props().count(pe)
              || e.props().count(pe))
            throw model_error("proposition-name collision after namespacing '"
                              + p.name() + "'");
          mm[p] = pm;
          em[p] = pe;
        }
      return {mm, em};
    }

    PropId rename(const prop_map& m, PropId p)
    {
      auto it = m.find(p);
      return it == m.end() ? p : it->second;
    }
  }

  Composition compose_with_map(const Dlts& m, const Dlts& e)
  {
    auto [mren, eren] = namespace_props(m, e);

    std::string name = m.name();
    if (!m.name().empty() || !e.name().empty())
      name = m.name() + "||" + e.name();
    Composition r{Dlts(name), {}};
    Dlts& p = r.product;

    const Alphabet& am = m.alphabet();
    const Alphabet& ae = e.alphabet();
    for (ActionId a : am.controlled)
      p.add_controlled(a);
    for (ActionId a : ae.controlled)
      if (!am.controlled.count(a))
        p.add_controlled(a);
    for (const Alphabet* al : {&am, &ae})
      for (ActionId a : al->monitored)
        if (!p.alphabet().controlled.count(a))
          p.add_monitored(a);
    for (PropId q : m.props())
      p.add_prop(rename(mren, q));
    for (PropId q : e.props())
      p.add_prop(rename(eren, q));

    std::map<std::pair<StateId, StateId>, StateId> index;
    std::deque<std::pair<StateId, StateId>> queue;
    auto state_of = [&](StateId ms, StateId es) {
      auto [it, inserted] = index.try_emplace({ms, es}, 0);
      if (inserted)
        {
          it->second = p.add_state("(" + m.state_name(ms) + "," + e.state_name(es) + ")");
          for (PropId q : m.labels(ms))
            p.add_label(it->second, rename(mren, q));
          for (PropId q : e.labels(es))
            p.add_label(it->second, rename(eren, q));
          r.components.emplace_back(ms, es);
          queue.emplace_back(ms, es);
        }
      return it->second;
    };

    p.set_initial(state_of(m.initial(), e.initial()));
    while (!queue.empty())
      {
        auto [ms, es] = queue.front();
        queue.pop_front();
        StateId src = index.at({ms, es});
        for (const Edge& me : m.out(ms))
          {
            if (!ae.contains(me.action))
              p.add_transition(src, me.action, state_of(me.dst, es));
            else
              for (StateId ed : e.successors(es, me.action))
                p.add_transition(src, me.action, state_of(me.dst, ed));
          }
        for (const Edge& ee : e.out(es))
          if (!am.contains(ee.action))
            p.add_transition(src, ee.action, state_of(ms, ee.dst));
      }
    return r;
  }

  Dlts parallel_compose(const Dlts& m, const Dlts& e)
  {
    return compose_with_map(m, e).product;
  }

  bool is_deterministic(const Dlts& d)
  {
    for (StateId s = 0; s < d.num_states(); ++s)
      {
        auto o = d.out(s);
        for (std::size_t i = 1; i < o.size(); ++i)
          if (o[i].action == o[i - 1].action)
            return false;
      }
    return true;
  }

  Dlts reachable(const Dlts& d)
  {
    std::vector<StateId> renum(d.num_states(), static_cast<StateId>(-1));
    std::vector<StateId> order;
    std::deque<StateId> queue{d.initial()};
    renum[d.initial()] = 0;
    order.push_back(d.initial());
    while (!queue.empty())
      {
        StateId s = queue.front();
        queue.pop_front();
        for (const Edge& e : d.out(s))
          if (renum[e.dst] == static_cast<StateId>(-1))
            {
              renum[e.dst] = static_cast<StateId>(order.size());
              order.push_back(e.dst);
              queue.push_back(e.dst);
            }
      }

    Dlts r(d.name());
    for (ActionId a : d.alphabet().controlled)
      r.add_controlled(a);
    for (ActionId a : d.alphabet().monitored)
      r.add_monitored(a);
    for (PropId p : d.props())
      r.add_prop(p);
    for (StateId s : order)
      {
        StateId n = r.add_state(d.state_name(s));
        for (PropId p : d.labels(s))
          r.add_label(n, p);
      }
    for (StateId s : order)
      for (const Edge& e : d.out(s))
        r.add_transition(renum[s], e.action, renum[e.dst]);
    r.set_initial(0);
    return r;
  }

  std::vector<Scc> scc_decompose(const Dlts& d, const StateFilter& state_filter,
                                 const TransitionFilter& transition_filter)
  {
    std::vector<bool> keep(d.num_states(), true);
    if (state_filter)
      for (StateId s = 0; s < d.num_states(); ++s)
        keep[s] = state_filter(s);
    return strongly_connected_components(d.num_states(), keep, [&](std::uint32_t s) {
      std::vector<std::uint32_t> succ;
      for (const Edge& e : d.out(s))
        if (!transition_filter || transition_filter(s, e.action, e.dst))
          succ.push_back(e.dst);
      return succ;
    });
  }

  Dlts annotate_enabledness(const Dlts& d, std::string_view tag)
  {
    Dlts r = d;
    for (ActionId a : d.alphabet().all())
      {
        PropId p(enabledness_prop_name(a, tag));
        if (d.props().count(p))
          throw model_error("enabledness proposition '" + p.name() + "' already present");
        r.add_prop(p);
        for (StateId s = 0; s < d.num_states(); ++s)
          if (d.enables(s, a))
            r.add_label(s, p);
      }
    return r;
  }

  bool is_execution_of(const Execution& x, const Dlts& d)
  {
    if (x.states.empty() || x.states.front() != d.initial())
      return false;
    std::size_t steps = x.actions.size();
    if (x.is_lasso())
      {
        if (x.states.size() != steps || *x.loop_start >= steps)
          return false;
      }
    else if (x.states.size() != steps + 1)
      return false;
    for (std::size_t i = 0; i < steps; ++i)
      {
        StateId next = (x.is_lasso() && i + 1 == steps) ? x.states[*x.loop_start]
                                                        : x.states[i + 1];
        auto succ = d.successors(x.states[i], x.actions[i]);
        if (std::find(succ.begin(), succ.end(), next) == succ.end())
          return false;
      }
    return true;
  }
}
