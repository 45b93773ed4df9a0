#include "rtc/verify.hpp"

#include "rtc/errors.hpp"
#include "rtc/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace rtc
{
  namespace
  {
    void check_alphabets(const Dlts& e, const Dlts& m)
    {
      if (e.alphabet().all() != m.alphabet().all())
        throw usage_error("controller '" + m.name() + "' and environment '" + e.name()
                          + "' have different alphabets");
    }
  }

  LegalityReport check_standard_legality(const Dlts& e, const Dlts& m,
                                         const ActionSet& controllable)
  {
    check_alphabets(e, m);
    auto comp = compose_with_map(m, e);
    LegalityReport r;
    for (StateId k = 0; k < comp.product.num_states(); ++k)
      {
        auto [ms, es] = comp.components[k];
        for (ActionId a : e.alphabet().all())
          {
            bool in_e = e.enables(es, a), in_m = m.enables(ms, a);
            if (!controllable.count(a) && in_e && !in_m)
              r.violations.push_back({k, 1, a});
            if (controllable.count(a) && !in_e && in_m)
              r.violations.push_back({k, 2, a});
          }
      }
    return r;
  }

  LegalityReport check_rtc_legality(const Dlts& e, const Dlts& m,
                                    const ActionSet& controllable)
  {
    check_alphabets(e, m);
    std::vector<bool> after_u(m.num_states(), false);
    for (const Transition& t : m.transitions())
      if (!controllable.count(t.action))
        after_u[t.dst] = true;

    auto comp = compose_with_map(m, e);
    LegalityReport r;
    for (StateId k = 0; k < comp.product.num_states(); ++k)
      {
        auto [ms, es] = comp.components[k];
        bool m_allows_u = false;
        for (const Edge& x : m.out(ms))
          if (!controllable.count(x.action))
            m_allows_u = true;
        for (ActionId a : e.alphabet().all())
          {
            bool in_e = e.enables(es, a), in_m = m.enables(ms, a);
            if (!controllable.count(a) && in_e && !in_m)
              {
                if (m_allows_u)
                  r.violations.push_back({k, 1, a});
                if (after_u[ms])
                  r.violations.push_back({k, 2, a});
              }
            if (controllable.count(a) && !in_e && in_m)
              r.violations.push_back({k, 3, a});
          }
      }
    return r;
  }

  Verdict check_deadlock_free(const Dlts& e, const Dlts& m)
  {
    check_alphabets(e, m);
    Verdict v;
    v.product = parallel_compose(m, e);
    const Dlts& p = v.product;
    // BFS order from the initial state gives shortest paths
    std::vector<StateId> parent(p.num_states(), static_cast<StateId>(-1));
    std::vector<ActionId> via(p.num_states());
    std::vector<bool> seen(p.num_states(), false);
    std::deque<StateId> queue{p.initial()};
    seen[p.initial()] = true;
    while (!queue.empty())
      {
        StateId s = queue.front();
        queue.pop_front();
        if (p.out(s).empty())
          {
            Execution x;
            for (StateId t = s; t != static_cast<StateId>(-1); t = parent[t])
              {
                x.states.push_back(t);
                if (parent[t] != static_cast<StateId>(-1))
                  x.actions.push_back(via[t]);
              }
            std::reverse(x.states.begin(), x.states.end());
            std::reverse(x.actions.begin(), x.actions.end());
            v.holds = false;
            v.failure = Failure::deadlock;
            v.counterexample = std::move(x);
            return v;
          }
        for (const Edge& ed : p.out(s))
          if (!seen[ed.dst])
            {
              seen[ed.dst] = true;
              parent[ed.dst] = s;
              via[ed.dst] = ed.action;
              queue.push_back(ed.dst);
            }
      }
    return v;
  }

  Dlts rtc_product(const Dlts& e, const Dlts& m)
  {
    check_alphabets(e, m);
    return parallel_compose(annotate_enabledness(m, "M"), annotate_enabledness(e, "E"));
  }

  // ---------------------------------------------------- goal checking core

  namespace
  {
    struct named_atom
    {
      std::string name;
      GoalAtom atom;
    };

    struct goal_shape
    {
      FluentSet fluents;
      std::vector<SafetyFormula> safety;
      std::optional<GoalAtom> safety_guard;   // violation counts only if this recurs
      std::vector<named_atom> recur;
      std::vector<named_atom> assumptions;
      std::vector<named_atom> guarantees;
    };

    struct vertex
    {
      StateId state;
      std::uint64_t atoms;
      bool violated;
      std::size_t violated_formula;
      std::vector<std::pair<ActionId, std::uint32_t>> out;
    };

    class checker
    {
    public:
      checker(const Dlts& d, const goal_shape& g) : d_(d), g_(g)
      {
        if (g.recur.size() + g.assumptions.size() + g.guarantees.size() + 1 > 64)
          throw spec_error("too many goal atoms");
        for (FluentIndex i = 0; i < g.fluents.size(); ++i)
          stateful_.push_back(g.fluents[i].kind == FluentKind::transition
                              && !g.fluents[i].action);
        for (const auto& s : g.safety)
          monitors_.emplace_back(s);
        build();
      }

      Verdict run()
      {
        Verdict v;
        v.product = d_;
        std::size_t n = vs_.size();
        auto succ = [&](std::uint32_t x) {
          std::vector<std::uint32_t> s;
          for (auto& [a, y] : vs_[x].out)
            s.push_back(y);
          return s;
        };

        // safety
        {
          std::vector<bool> keep(n);
          for (std::uint32_t x = 0; x < n; ++x)
            keep[x] = vs_[x].violated;
          for (const Scc& c : strongly_connected_components(n, keep, succ))
            {
              if (!c.cyclic)
                continue;
              std::vector<std::uint32_t> targets{c.vertices.front()};
              if (g_.safety_guard)
                {
                  auto it = std::find_if(c.vertices.begin(), c.vertices.end(),
                                         [&](auto x) { return vs_[x].atoms & guard_bit(); });
                  if (it == c.vertices.end())
                    continue;
                  targets = {*it};
                }
              return fail(v, Failure::safety, vs_[targets[0]].violated_formula, c, targets);
            }
        }
        // unconditional recurrence
        for (std::size_t r = 0; r < g_.recur.size(); ++r)
          {
            std::vector<bool> keep(n);
            for (std::uint32_t x = 0; x < n; ++x)
              keep[x] = !(vs_[x].atoms & recur_bit(r));
            for (const Scc& c : strongly_connected_components(n, keep, succ))
              if (c.cyclic)
                return fail(v, Failure::recurrence, r, c, {c.vertices.front()});
          }
        // assumptions → guarantees
        for (std::size_t j = 0; j < g_.guarantees.size(); ++j)
          {
            std::vector<bool> keep(n);
            for (std::uint32_t x = 0; x < n; ++x)
              keep[x] = !(vs_[x].atoms & guarantee_bit(j));
            for (const Scc& c : strongly_connected_components(n, keep, succ))
              {
                if (!c.cyclic)
                  continue;
                std::vector<std::uint32_t> targets;
                bool all = true;
                for (std::size_t i = 0; i < g_.assumptions.size() && all; ++i)
                  {
                    auto it = std::find_if(c.vertices.begin(), c.vertices.end(), [&](auto x) {
                      return vs_[x].atoms & assumption_bit(i);
                    });
                    if (it == c.vertices.end())
                      all = false;
                    else
                      targets.push_back(*it);
                  }
                if (!all)
                  continue;
                if (targets.empty())
                  targets.push_back(c.vertices.front());
                return fail(v, Failure::guarantee, j, c, targets);
              }
          }
        return v;
      }

    private:
      std::uint64_t recur_bit(std::size_t r) const { return 1ull << r; }
      std::uint64_t assumption_bit(std::size_t i) const
      {
        return 1ull << (g_.recur.size() + i);
      }
      std::uint64_t guarantee_bit(std::size_t j) const
      {
        return 1ull << (g_.recur.size() + g_.assumptions.size() + j);
      }
      std::uint64_t guard_bit() const
      {
        return 1ull << (g_.recur.size() + g_.assumptions.size() + g_.guarantees.size());
      }

      static bool holds(const GoalAtom& g, ActionId a, const FluentValuation& v)
      {
        if (is_yield(a) && !g.at_yield_positions)
          return false;
        return eval_combo(g.combo, v);
      }

      void build()
      {
        std::vector<FluentValuation> vals;
        std::vector<std::vector<SafetyMonitor::State>> mons;
        std::map<std::vector<std::uint32_t>, std::uint32_t> index;
        std::deque<std::uint32_t> queue;

        auto intern = [&](StateId s, FluentValuation v, std::vector<SafetyMonitor::State> m,
                          std::uint64_t atoms) {
          for (std::size_t i = 0; i < v.size(); ++i)
            if (!stateful_[i])
              v.values[i] = false;
          std::vector<std::uint32_t> key{s, static_cast<std::uint32_t>(atoms),
                                         static_cast<std::uint32_t>(atoms >> 32)};
          key.insert(key.end(), m.begin(), m.end());
          for (bool b : v.values)
            key.push_back(b);
          auto [it, inserted] = index.try_emplace(std::move(key), 0);
          if (inserted)
            {
              it->second = static_cast<std::uint32_t>(vs_.size());
              vertex x{s, atoms, false, 0, {}};
              for (std::size_t k = 0; k < m.size(); ++k)
                if (monitors_[k].is_violation(m[k]))
                  {
                    x.violated = true;
                    x.violated_formula = k;
                    break;
                  }
              vs_.push_back(std::move(x));
              vals.push_back(std::move(v));
              mons.push_back(std::move(m));
              queue.push_back(it->second);
            }
          return it->second;
        };

        std::vector<SafetyMonitor::State> m0;
        for (auto& m : monitors_)
          m0.push_back(m.initial());
        initial_ = intern(d_.initial(), initial_valuation(g_.fluents, d_.labels(d_.initial())),
                          m0, 0);
        while (!queue.empty())
          {
            auto x = queue.front();
            queue.pop_front();
            StateId s = vs_[x].state;
            for (const Edge& e : d_.out(s))
              {
                FluentValuation v = step_valuation(g_.fluents, vals[x], e.action, d_.labels(s));
                std::uint64_t atoms = 0;
                for (std::size_t r = 0; r < g_.recur.size(); ++r)
                  if (holds(g_.recur[r].atom, e.action, v))
                    atoms |= recur_bit(r);
                for (std::size_t i = 0; i < g_.assumptions.size(); ++i)
                  if (holds(g_.assumptions[i].atom, e.action, v))
                    atoms |= assumption_bit(i);
                for (std::size_t j = 0; j < g_.guarantees.size(); ++j)
                  if (holds(g_.guarantees[j].atom, e.action, v))
                    atoms |= guarantee_bit(j);
                if (g_.safety_guard && holds(*g_.safety_guard, e.action, v))
                  atoms |= guard_bit();
                auto m = mons[x];
                if (!is_yield(e.action))
                  for (std::size_t k = 0; k < monitors_.size(); ++k)
                    m[k] = monitors_[k].step(m[k], v);
                auto y = intern(e.dst, std::move(v), std::move(m), atoms);
                vs_[x].out.emplace_back(e.action, y);
              }
          }
      }

      // shortest path from `from` to `to` inside `allowed`; with `nonempty`
      // and from == to the result is a proper cycle
      std::vector<std::pair<ActionId, std::uint32_t>>
      path(std::uint32_t from, std::uint32_t to, const std::vector<bool>& allowed,
           bool nonempty) const
      {
        std::vector<std::pair<ActionId, std::uint32_t>> r;
        if (from == to && !nonempty)
          return r;
        std::size_t n = vs_.size();
        std::vector<std::uint32_t> parent(n);
        std::vector<ActionId> via(n);
        std::vector<bool> seen(n, false);
        std::deque<std::uint32_t> queue{from};
        seen[from] = from != to;
        bool found = false;
        while (!queue.empty() && !found)
          {
            auto x = queue.front();
            queue.pop_front();
            for (auto& [a, y] : vs_[x].out)
              if (allowed[y] && !seen[y])
                {
                  seen[y] = true;
                  parent[y] = x;
                  via[y] = a;
                  if (y == to)
                    {
                      found = true;
                      break;
                    }
                  queue.push_back(y);
                }
          }
        if (!found)
          throw std::logic_error("witness path not found");
        std::uint32_t cur = to;
        do
          {
            r.emplace_back(via[cur], cur);
            cur = parent[cur];
          }
        while (cur != from);
        std::reverse(r.begin(), r.end());
        return r;
      }

      Verdict& fail(Verdict& v, Failure f, std::size_t index, const Scc& scc,
                    const std::vector<std::uint32_t>& targets)
      {
        std::size_t n = vs_.size();
        std::vector<bool> all(n, true), in_scc(n, false);
        for (auto x : scc.vertices)
          in_scc[x] = true;

        std::vector<std::pair<ActionId, std::uint32_t>> prefix;
        prefix = path(initial_, targets[0], all, false);
        std::vector<std::uint32_t> stops;
        for (auto t : targets)
          if (std::find(stops.begin(), stops.end(), t) == stops.end())
            stops.push_back(t);
        std::vector<std::pair<ActionId, std::uint32_t>> cycle;
        for (std::size_t k = 0; k < stops.size(); ++k)
          {
            auto to = stops[(k + 1) % stops.size()];
            auto seg = path(stops[k], to, in_scc, stops[k] == to);
            cycle.insert(cycle.end(), seg.begin(), seg.end());
          }

        Execution x;
        std::vector<std::uint32_t> at;   // graph vertex of each position's source
        std::uint32_t cur = initial_;
        for (auto& [a, y] : prefix)
          {
            x.states.push_back(vs_[cur].state);
            x.actions.push_back(a);
            at.push_back(y);
            cur = y;
          }
        x.loop_start = x.states.size();
        for (auto& [a, y] : cycle)
          {
            x.states.push_back(vs_[cur].state);
            x.actions.push_back(a);
            at.push_back(y);
            cur = y;
          }
        for (auto y : at)
          v.position_atoms.push_back(atom_names(vs_[y].atoms));

        v.holds = false;
        v.failure = f;
        v.index = index;
        v.counterexample = std::move(x);
        return v;
      }

      std::vector<std::string> atom_names(std::uint64_t atoms) const
      {
        std::vector<std::string> r;
        for (std::size_t i = 0; i < g_.recur.size(); ++i)
          if (atoms & recur_bit(i))
            r.push_back(g_.recur[i].name);
        for (std::size_t i = 0; i < g_.assumptions.size(); ++i)
          if (atoms & assumption_bit(i))
            r.push_back(g_.assumptions[i].name);
        for (std::size_t j = 0; j < g_.guarantees.size(); ++j)
          if (atoms & guarantee_bit(j))
            r.push_back(g_.guarantees[j].name);
        return r;
      }

      const Dlts& d_;
      const goal_shape& g_;
      std::vector<bool> stateful_;
      std::vector<SafetyMonitor> monitors_;
      std::vector<vertex> vs_;
      std::uint32_t initial_ = 0;
    };
  }

  Verdict check_rtc_goal(const RtcProblem& p, const Dlts& m)
  {
    p.validate();
    Dlts product = rtc_product(p.env, m);
    goal_shape g;
    g.fluents = p.spec.fluents;
    g.safety = p.spec.safety;
    auto atoms = derive_atoms(g.fluents, p.controllable, p.uncontrollable(), true);
    GoalAtom psi_e{atoms.c || atoms.pass_m, false};
    g.recur.push_back({"psi_c", {atoms.u || atoms.pass_e, false}});
    g.safety_guard = psi_e;
    g.assumptions.push_back({"psi_e", psi_e});
    for (std::size_t i = 0; i < p.spec.assumptions.size(); ++i)
      g.assumptions.push_back({"a" + std::to_string(i), {p.spec.assumptions[i], false}});
    for (std::size_t j = 0; j < p.spec.guarantees.size(); ++j)
      g.guarantees.push_back({"g" + std::to_string(j), {p.spec.guarantees[j], false}});
    return checker(product, g).run();
  }

  Verdict check_standard_goal(const StdProblem& p, const Dlts& m)
  {
    check_alphabets(p.env, m);
    Dlts product = parallel_compose(m, p.env);
    goal_shape g;
    g.fluents = p.fluents;
    g.safety = p.safety;
    if (p.buchi)
      g.recur.push_back({"b", *p.buchi});
    for (std::size_t i = 0; i < p.assumptions.size(); ++i)
      g.assumptions.push_back({"a" + std::to_string(i), p.assumptions[i]});
    for (std::size_t j = 0; j < p.guarantees.size(); ++j)
      g.guarantees.push_back({"g" + std::to_string(j), p.guarantees[j]});
    return checker(product, g).run();
  }

  // ------------------------------------------------------------- lassos

  namespace
  {
    using step = std::pair<StateId, ActionId>;   // (source, action), target implied

    struct lasso_enum
    {
      const Dlts& d;
      std::size_t max_len;
      std::vector<Execution> out;
      std::vector<StateId> states;
      std::vector<ActionId> actions;

      // The lasso prefix = steps [0, k), cycle = steps [k, n) returning to
      // states[k]. Canonical iff the cycle is primitive and the last prefix
      // step differs from the last cycle step.
      void emit(std::size_t k)
      {
        std::size_t n = actions.size();
        std::size_t len = n - k;
        // primitive: no proper divisor period
        for (std::size_t p = 1; p < len; ++p)
          {
            if (len % p)
              continue;
            bool periodic = true;
            for (std::size_t i = k; i + p < n && periodic; ++i)
              periodic = states[i] == states[i + p] && actions[i] == actions[i + p];
            if (periodic)
              return;
          }
        if (k > 0 && states[k - 1] == states[n - 1] && actions[k - 1] == actions[n - 1])
          return;
        Execution x;
        x.states = states;
        x.actions = actions;
        x.loop_start = k;
        out.push_back(std::move(x));
      }

      void walk(StateId s)
      {
        // s is the state reached after `actions`; close a cycle to any
        // earlier position with the same state
        std::size_t n = actions.size();
        for (std::size_t k = 0; k < n; ++k)
          if (states[k] == s)
            emit(k);
        if (n == max_len)
          return;
        for (const Edge& e : d.out(s))
          {
            states.push_back(s);
            actions.push_back(e.action);
            walk(e.dst);
            states.pop_back();
            actions.pop_back();
          }
      }
    };
  }

  std::vector<Execution> enumerate_lassos(const Dlts& d, std::size_t max_len,
                                          std::size_t state_bound)
  {
    if (d.num_states() > state_bound)
      throw usage_error("lasso enumeration is limited to " + std::to_string(state_bound)
                        + " states");
    lasso_enum e{d, max_len, {}, {}, {}};
    e.walk(d.initial());
    return std::move(e.out);
  }
}
