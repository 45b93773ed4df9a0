#include "rtc/game.hpp"

#include "rtc/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace rtc
{
  void GameArena::validate() const
  {
    if (initial >= vertices.size())
      throw usage_error("arena initial vertex out of range");
    if (1 + num_assumptions + num_guarantees > 64)
      throw usage_error("too many goal atoms for the arena encoding");
    for (const auto& v : vertices)
      {
        if (v.edges.empty())
          throw usage_error("arena vertex without successors");
        for (const auto& e : v.edges)
          if (e.dst >= vertices.size())
            throw usage_error("arena edge target out of range");
      }
  }

  // ---------------------------------------------------------------- arena

  namespace
  {
    class arena_builder
    {
    public:
      explicit arena_builder(const StdProblem& p) : p_(p)
      {
        if (!is_deterministic(p.env))
          throw spec_error("environment '" + p.env.name() + "' is not deterministic");
        a_.num_assumptions = p.assumptions.size();
        a_.num_guarantees = p.guarantees.size();
        if (1 + a_.num_assumptions + a_.num_guarantees > 64)
          throw spec_error("too many assumptions and guarantees");
        for (ActionId c : p.controllable)
          a_.alphabet.controlled.insert(c);
        for (ActionId u : p.uncontrollable())
          a_.alphabet.monitored.insert(u);
        for (FluentIndex i = 0; i < p.fluents.size(); ++i)
          {
            const Fluent& f = p.fluents[i];
            stateful_.push_back(f.kind == FluentKind::transition && !f.action);
          }
        for (const auto& s : p.safety)
          monitors_.emplace_back(s);
      }

      GameArena build()
      {
        // vertex 0 is the losing sink
        GameArena::Vertex sink;
        sink.kind = VertexKind::sink;
        sink.edges.push_back({ActionId(), 0, true});
        a_.vertices.push_back(sink);
        vals_.emplace_back();
        mons_.emplace_back();

        const Dlts& env = p_.env;
        FluentValuation v0 = clear(initial_valuation(p_.fluents, env.labels(env.initial())));
        std::vector<SafetyMonitor::State> m0;
        for (auto& m : monitors_)
          m0.push_back(m.initial());
        a_.initial = intern(env.initial(), v0, m0, 0);

        while (!queue_.empty())
          {
            std::uint32_t v = queue_.front();
            queue_.pop_front();
            expand(v);
          }
        return std::move(a_);
      }

    private:
      FluentValuation clear(FluentValuation v) const
      {
        for (std::size_t i = 0; i < v.size(); ++i)
          if (!stateful_[i])
            v.values[i] = false;
        return v;
      }

      std::uint32_t intern(StateId s, const FluentValuation& v,
                           const std::vector<SafetyMonitor::State>& m, std::uint64_t atoms)
      {
        std::vector<std::uint32_t> key{s, static_cast<std::uint32_t>(atoms),
                                       static_cast<std::uint32_t>(atoms >> 32)};
        key.insert(key.end(), m.begin(), m.end());
        std::uint32_t word = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
          {
            if (v[i])
              word |= 1u << (i % 32);
            if (i % 32 == 31)
              {
                key.push_back(word);
                word = 0;
              }
          }
        key.push_back(word);
        auto [it, inserted] = index_.try_emplace(std::move(key), 0);
        if (inserted)
          {
            it->second = static_cast<std::uint32_t>(a_.vertices.size());
            GameArena::Vertex vx;
            vx.env_state = s;
            vx.atoms = atoms;
            a_.vertices.push_back(std::move(vx));
            vals_.push_back(v);
            mons_.push_back(m);
            queue_.push_back(it->second);
          }
        return it->second;
      }

      bool atom_holds(const GoalAtom& g, ActionId a, const FluentValuation& v) const
      {
        if (is_yield(a) && !g.at_yield_positions)
          return false;
        return eval_combo(g.combo, v);
      }

      // Target of the position (s, a) taken from vertex `from`.
      std::uint32_t position(std::uint32_t from, ActionId a)
      {
        const Dlts& env = p_.env;
        StateId s = a_.vertices[from].env_state;
        StateId t = env.successors(s, a).front();
        FluentValuation v = step_valuation(p_.fluents, vals_[from], a, env.labels(s));

        std::uint64_t atoms = 0;
        if (!p_.buchi || atom_holds(*p_.buchi, a, v))
          atoms |= GameArena::buchi_bit;
        for (std::size_t i = 0; i < p_.assumptions.size(); ++i)
          if (atom_holds(p_.assumptions[i], a, v))
            atoms |= a_.assumption_bit(i);
        for (std::size_t j = 0; j < p_.guarantees.size(); ++j)
          if (atom_holds(p_.guarantees[j], a, v))
            atoms |= a_.guarantee_bit(j);

        std::vector<SafetyMonitor::State> m = mons_[from];
        if (!is_yield(a))
          for (std::size_t k = 0; k < monitors_.size(); ++k)
            {
              m[k] = monitors_[k].step(m[k], v);
              if (monitors_[k].is_violation(m[k]))
                return 0;
            }
        return intern(t, clear(std::move(v)), m, atoms);
      }

      void expand(std::uint32_t v)
      {
        const Dlts& env = p_.env;
        StateId s = a_.vertices[v].env_state;
        std::vector<ActionId> cs, us;
        for (const Edge& e : env.out(s))
          {
            if (p_.controllable.count(e.action))
              cs.push_back(e.action);
            else
              us.push_back(e.action);
          }
        std::vector<ArenaEdge> edges;
        Owner owner = Owner::environment;
        if (cs.empty() && us.empty())
          edges.push_back({ActionId(), 0, true});
        else if (cs.empty())
          for (ActionId u : us)
            edges.push_back({u, position(v, u), false});
        else if (us.empty())
          {
            owner = Owner::controller;
            for (ActionId c : cs)
              edges.push_back({c, position(v, c), false});
          }
        else
          {
            owner = Owner::controller;
            std::vector<ArenaEdge> env_moves;
            for (ActionId u : us)
              env_moves.push_back({u, position(v, u), false});
            for (ActionId c : cs)
              {
                auto moves = env_moves;
                moves.insert(moves.begin(), ArenaEdge{c, position(v, c), false});
                std::sort(moves.begin(), moves.end(), [](const auto& x, const auto& y) {
                  return x.action < y.action;
                });
                edges.push_back({c, add_proposal(s, std::move(moves)), false});
              }
            edges.push_back({ActionId(), add_proposal(s, std::move(env_moves)), true});
          }
        a_.vertices[v].owner = owner;
        a_.vertices[v].edges = std::move(edges);
      }

      std::uint32_t add_proposal(StateId s, std::vector<ArenaEdge> moves)
      {
        GameArena::Vertex p;
        p.kind = VertexKind::proposal;
        p.env_state = s;
        p.edges = std::move(moves);
        a_.vertices.push_back(std::move(p));
        vals_.emplace_back();
        mons_.emplace_back();
        return static_cast<std::uint32_t>(a_.vertices.size() - 1);
      }

      const StdProblem& p_;
      GameArena a_;
      std::vector<bool> stateful_;
      std::vector<SafetyMonitor> monitors_;
      std::vector<FluentValuation> vals_;
      std::vector<std::vector<SafetyMonitor::State>> mons_;
      std::map<std::vector<std::uint32_t>, std::uint32_t> index_;
      std::deque<std::uint32_t> queue_;
    };
  }

  GameArena build_arena(const StdProblem& p)
  {
    return arena_builder(p).build();
  }

  // ---------------------------------------------------------- attractors

  namespace
  {
    constexpr std::uint32_t none = static_cast<std::uint32_t>(-1);

    struct graph_view
    {
      std::vector<Owner> owner;
      std::vector<std::vector<std::uint32_t>> succ;
      std::vector<std::vector<std::uint32_t>> pred;

      void build_pred()
      {
        pred.assign(succ.size(), {});
        for (std::uint32_t v = 0; v < succ.size(); ++v)
          for (auto w : succ[v])
            pred[w].push_back(v);
        for (auto& p : pred)
          {
            std::sort(p.begin(), p.end());
            p.erase(std::unique(p.begin(), p.end()), p.end());
          }
      }
    };

    // Attractor of `target` for `player` inside `in`. Writes the successor
    // index used to enter the attractor into `choice` for player vertices.
    std::vector<bool> attractor(const graph_view& g, const std::vector<bool>& in,
                                const std::vector<bool>& target, Owner player,
                                std::vector<std::int32_t>* choice)
    {
      std::size_t n = g.succ.size();
      std::vector<bool> attr(n, false);
      std::vector<std::uint32_t> count(n, 0);
      std::deque<std::uint32_t> queue;
      for (std::uint32_t v = 0; v < n; ++v)
        {
          if (!in[v])
            continue;
          for (auto w : g.succ[v])
            count[v] += in[w] ? 1 : 0;
          if (target[v])
            {
              attr[v] = true;
              queue.push_back(v);
            }
        }
      while (!queue.empty())
        {
          auto w = queue.front();
          queue.pop_front();
          for (auto v : g.pred[w])
            {
              if (!in[v] || attr[v])
                continue;
              bool take = false;
              if (g.owner[v] == player)
                take = true;
              else
                {
                  // one fewer escape per distinct edge into w
                  for (auto x : g.succ[v])
                    if (x == w)
                      --count[v];
                  take = count[v] == 0;
                }
              if (!take)
                continue;
              attr[v] = true;
              // w entered the attractor before v, so moving there makes progress
              if (g.owner[v] == player && choice)
                for (std::size_t k = 0; k < g.succ[v].size(); ++k)
                  if (g.succ[v][k] == w)
                    {
                      (*choice)[v] = static_cast<std::int32_t>(k);
                      break;
                    }
              queue.push_back(v);
            }
        }
      return attr;
    }

    Owner opponent(Owner o)
    {
      return o == Owner::controller ? Owner::environment : Owner::controller;
    }

    struct zielonka
    {
      const ParityGame& game;
      graph_view g;
      std::vector<std::int32_t> strategy;

      explicit zielonka(const ParityGame& pg) : game(pg)
      {
        g.owner = pg.owner;
        g.succ = pg.successors;
        g.build_pred();
        strategy.assign(pg.size(), -1);
      }

      // Controller's winning region within the trap `in`. Each round either
      // hands all of `in` to the player of the top priority or removes an
      // opponent attractor, so recursion depth is bounded by the number of
      // priorities.
      std::vector<bool> solve(std::vector<bool> in)
      {
        std::size_t n = game.size();
        std::vector<bool> ctrl(n, false);
        for (;;)
          {
            int d = -1;
            for (std::uint32_t v = 0; v < n; ++v)
              if (in[v])
                d = std::max<int>(d, game.priority[v]);
            if (d < 0)
              return ctrl;
            Owner p = d % 2 == 0 ? Owner::controller : Owner::environment;
            std::vector<bool> top(n, false);
            for (std::uint32_t v = 0; v < n; ++v)
              top[v] = in[v] && game.priority[v] == d;
            auto a = attractor(g, in, top, p, &strategy);
            std::vector<bool> rest(n, false);
            for (std::uint32_t v = 0; v < n; ++v)
              rest[v] = in[v] && !a[v];
            auto sub = solve(rest);
            std::vector<bool> w_opp(n, false);
            bool opp_empty = true;
            for (std::uint32_t v = 0; v < n; ++v)
              if (rest[v] && sub[v] != (p == Owner::controller))
                {
                  w_opp[v] = true;
                  opp_empty = false;
                }
            if (opp_empty)
              {
                for (std::uint32_t v = 0; v < n; ++v)
                  if (top[v] && game.owner[v] == p)
                    for (std::size_t k = 0; k < game.successors[v].size(); ++k)
                      if (in[game.successors[v][k]])
                        {
                          strategy[v] = static_cast<std::int32_t>(k);
                          break;
                        }
                if (p == Owner::controller)
                  for (std::uint32_t v = 0; v < n; ++v)
                    if (in[v])
                      ctrl[v] = true;
                return ctrl;
              }
            auto b = attractor(g, in, w_opp, opponent(p), &strategy);
            for (std::uint32_t v = 0; v < n; ++v)
              if (b[v])
                {
                  in[v] = false;
                  if (p == Owner::environment)
                    ctrl[v] = true;
                }
          }
      }
    };
  }

  ParitySolution solve_parity(const ParityGame& g)
  {
    for (std::uint32_t v = 0; v < g.size(); ++v)
      {
        if (g.successors[v].empty())
          throw usage_error("parity game vertex " + std::to_string(v) + " has no successor");
        for (auto w : g.successors[v])
          if (w >= g.size())
            throw usage_error("parity game edge out of range");
      }
    zielonka z(g);
    ParitySolution r;
    r.controller_wins = z.solve(std::vector<bool>(g.size(), true));
    r.strategy = std::move(z.strategy);
    for (std::uint32_t v = 0; v < g.size(); ++v)
      if (r.controller_wins[v] != (g.owner[v] == Owner::controller))
        r.strategy[v] = -1;
    return r;
  }

  // ------------------------------------------------------ counter product

  namespace
  {
    struct counter_product
    {
      std::vector<std::uint32_t> arena;
      std::vector<std::uint16_t> ac, gc;
      std::vector<std::vector<std::uint32_t>> succ;
      std::vector<std::vector<std::uint32_t>> edge;   // arena edge index per successor
      std::vector<std::uint32_t> entry;               // per arena vertex
    };

    std::uint16_t advance(std::uint16_t k, std::size_t n, std::uint64_t atoms,
                          std::uint64_t (GameArena::*bit)(std::size_t) const,
                          const GameArena& a)
    {
      std::size_t c = k == n ? 0 : k;
      while (c < n && (atoms & (a.*bit)(c)))
        ++c;
      return static_cast<std::uint16_t>(c);
    }

    counter_product build_counters(const GameArena& a, const std::vector<bool>& keep)
    {
      counter_product cp;
      std::size_t n = a.num_assumptions, m = a.num_guarantees;
      std::map<std::tuple<std::uint32_t, std::uint16_t, std::uint16_t>, std::uint32_t> index;
      std::deque<std::uint32_t> queue;
      auto intern = [&](std::uint32_t v, std::uint16_t ac, std::uint16_t gc) {
        auto [it, inserted] = index.try_emplace({v, ac, gc}, 0);
        if (inserted)
          {
            it->second = static_cast<std::uint32_t>(cp.arena.size());
            cp.arena.push_back(v);
            cp.ac.push_back(ac);
            cp.gc.push_back(gc);
            cp.succ.emplace_back();
            cp.edge.emplace_back();
            queue.push_back(it->second);
          }
        return it->second;
      };
      auto enter = [&](std::uint32_t v, std::uint16_t ac, std::uint16_t gc) {
        std::uint64_t atoms = a.vertices[v].atoms;
        return intern(v, advance(ac, n, atoms, &GameArena::assumption_bit, a),
                      advance(gc, m, atoms, &GameArena::guarantee_bit, a));
      };
      cp.entry.assign(a.size(), none);
      for (std::uint32_t v = 0; v < a.size(); ++v)
        if (keep[v])
          cp.entry[v] = enter(v, 0, 0);
      while (!queue.empty())
        {
          auto x = queue.front();
          queue.pop_front();
          const auto& vx = a.vertices[cp.arena[x]];
          for (std::uint32_t k = 0; k < vx.edges.size(); ++k)
            {
              auto w = vx.edges[k].dst;
              if (!keep[w])
                continue;
              auto y = enter(w, cp.ac[x], cp.gc[x]);
              cp.succ[x].push_back(y);
              cp.edge[x].push_back(k);
            }
        }
      return cp;
    }

    // Hits of the two Streett pairs at a counter vertex:
    // pair 0 = (A* , G*), pair 1 = (true, b).
    struct hits
    {
      bool r[2];
      bool g[2];
    };

    hits hits_at(const GameArena& a, const counter_product& cp, std::uint32_t x)
    {
      hits h{};
      h.r[0] = cp.ac[x] == a.num_assumptions;
      h.g[0] = cp.gc[x] == a.num_guarantees;
      h.r[1] = true;
      h.g[1] = (a.vertices[cp.arena[x]].atoms & GameArena::buchi_bit) != 0;
      return h;
    }

    // Index appearance record over two pairs. perm 0 = [0,1], perm 1 = [1,0].
    // Returns (priority, next perm).
    std::pair<std::uint8_t, std::uint8_t> iar_step(std::uint8_t perm, const hits& h)
    {
      int order[2] = {perm == 0 ? 0 : 1, perm == 0 ? 1 : 0};
      int moved[2], rest[2], nm = 0, nr = 0, hpos = 0;
      for (int pos = 0; pos < 2; ++pos)
        {
          int i = order[pos];
          if (h.g[i])
            {
              moved[nm++] = i;
              hpos = pos + 1;
            }
          else
            rest[nr++] = i;
        }
      int next[2];
      int k = 0;
      for (int i = 0; i < nm; ++i)
        next[k++] = moved[i];
      for (int i = 0; i < nr; ++i)
        next[k++] = rest[i];
      int fpos = 0;
      for (int pos = 0; pos < 2; ++pos)
        if (h.r[next[pos]])
          fpos = pos + 1;
      int pr = std::max(2 * hpos, fpos > 0 ? 2 * fpos - 1 : 0);
      return {static_cast<std::uint8_t>(pr), static_cast<std::uint8_t>(next[0] == 0 ? 0 : 1)};
    }

    // Parity vertex 2x + perm.
    ParityGame build_iar(const GameArena& a, const counter_product& cp)
    {
      ParityGame pg;
      std::size_t n = cp.arena.size();
      pg.owner.resize(2 * n);
      pg.priority.resize(2 * n);
      pg.successors.resize(2 * n);
      for (std::uint32_t x = 0; x < n; ++x)
        {
          auto h = hits_at(a, cp, x);
          for (std::uint8_t perm = 0; perm < 2; ++perm)
            {
              auto [pr, next] = iar_step(perm, h);
              std::uint32_t v = 2 * x + perm;
              pg.owner[v] = a.vertices[cp.arena[x]].owner;
              pg.priority[v] = pr;
              for (auto y : cp.succ[x])
                pg.successors[v].push_back(2 * y + next);
            }
        }
      return pg;
    }

    graph_view arena_view(const GameArena& a)
    {
      graph_view g;
      for (const auto& v : a.vertices)
        {
          g.owner.push_back(v.owner);
          std::vector<std::uint32_t> s;
          for (const auto& e : v.edges)
            s.push_back(e.dst);
          g.succ.push_back(std::move(s));
        }
      g.build_pred();
      return g;
    }
  }

  // ------------------------------------------------------------ read-back

  namespace
  {
    std::string tag(Owner o)
    {
      return o == Owner::controller ? "c:" : "e:";
    }

    Dlts empty_controller(const GameArena& a, const std::string& name)
    {
      Dlts d(name);
      for (ActionId c : a.alphabet.controlled)
        d.add_controlled(c);
      for (ActionId u : a.alphabet.monitored)
        d.add_monitored(u);
      return d;
    }

    // M⁺: reachable parity vertices under the controller strategy; proposal
    // vertices are folded into the controller vertex that chose them.
    Dlts package_mplus(const GameArena& a, const counter_product& cp, const ParityGame& pg,
                       const ParitySolution& sol, std::uint32_t start)
    {
      Dlts d = empty_controller(a, "controller");
      std::map<std::uint32_t, StateId> id;
      std::deque<std::uint32_t> queue;
      auto state_of = [&](std::uint32_t v) {
        auto [it, inserted] = id.try_emplace(v, 0);
        if (inserted)
          {
            it->second = d.add_state(tag(pg.owner[v]) + std::to_string(id.size() - 1));
            queue.push_back(v);
          }
        return it->second;
      };
      auto arena_edge = [&](std::uint32_t v, std::size_t k) -> const ArenaEdge& {
        std::uint32_t x = v / 2;
        return a.vertices[cp.arena[x]].edges[cp.edge[x][k]];
      };
      auto is_proposal = [&](std::uint32_t v) {
        return a.vertices[cp.arena[v / 2]].kind == VertexKind::proposal;
      };

      d.set_initial(state_of(start));
      while (!queue.empty())
        {
          auto v = queue.front();
          queue.pop_front();
          StateId src = id.at(v);
          std::vector<std::pair<std::uint32_t, std::size_t>> moves;   // (vertex, succ idx)
          if (pg.owner[v] == Owner::controller)
            {
              auto k = sol.strategy[v];
              if (k < 0)
                throw std::logic_error("controller strategy undefined on winning vertex");
              auto w = pg.successors[v][k];
              if (is_proposal(w))
                for (std::size_t j = 0; j < pg.successors[w].size(); ++j)
                  moves.emplace_back(w, j);
              else
                moves.emplace_back(v, static_cast<std::size_t>(k));
            }
          else
            for (std::size_t j = 0; j < pg.successors[v].size(); ++j)
              moves.emplace_back(v, j);
          for (auto [u, j] : moves)
            {
              const ArenaEdge& e = arena_edge(u, j);
              if (e.silent)
                throw std::logic_error("silent edge in a winning controller");
              d.add_transition(src, e.action, state_of(pg.successors[u][j]));
            }
        }
      return d;
    }

    // Environment strategy from a losing initial vertex. Nodes are either
    // parity vertices (safe part) or arena vertices in the safety attractor.
    Dlts package_counterexample(const GameArena& a, const std::vector<bool>& safe,
                                const std::vector<std::int32_t>& unsafe_choice,
                                const counter_product& cp, const ParityGame& pg,
                                const ParitySolution& sol)
    {
      Dlts d = empty_controller(a, "counterexample");
      using node = std::pair<bool, std::uint32_t>;   // (in parity game, id)
      std::map<node, StateId> id;
      std::deque<node> queue;
      auto owner_of = [&](node n) {
        return n.first ? pg.owner[n.second] : a.vertices[n.second].owner;
      };
      auto kind_of = [&](node n) {
        return a.vertices[n.first ? cp.arena[n.second / 2] : n.second].kind;
      };
      auto state_of = [&](node n) {
        auto [it, inserted] = id.try_emplace(n, 0);
        if (inserted)
          {
            std::string name = kind_of(n) == VertexKind::sink
                                 ? "lose"
                                 : tag(owner_of(n)) + std::to_string(id.size() - 1);
            it->second = d.add_state(name);
            queue.push_back(n);
          }
        return it->second;
      };
      // successors of a node as (edge, target node)
      auto successors = [&](node n) {
        std::vector<std::pair<ArenaEdge, node>> out;
        if (n.first)
          {
            std::uint32_t x = n.second / 2;
            const auto& vx = a.vertices[cp.arena[x]];
            // safe successors through the product, unsafe ones at arena level
            std::size_t j = 0;
            for (std::size_t k = 0; k < vx.edges.size(); ++k)
              {
                if (j < cp.edge[x].size() && cp.edge[x][j] == k)
                  {
                    out.push_back({vx.edges[k], {true, pg.successors[n.second][j]}});
                    ++j;
                  }
                else
                  out.push_back({vx.edges[k], {false, vx.edges[k].dst}});
              }
          }
        else
          for (const auto& e : a.vertices[n.second].edges)
            out.push_back({e, {false, e.dst}});
        return out;
      };
      // the environment's pick at an environment-owned node
      auto env_pick = [&](node n) -> std::pair<ArenaEdge, node> {
        auto out = successors(n);
        if (n.first)
          {
            std::uint32_t x = n.second / 2;
            auto k = sol.strategy[n.second];
            if (k < 0)
              throw std::logic_error("environment strategy undefined on winning vertex");
            // map parity successor index back to the arena edge list
            std::size_t arena_k = cp.edge[x][k];
            return out[arena_k];
          }
        auto k = unsafe_choice[n.second];
        if (k < 0)
          throw std::logic_error("attractor strategy undefined");
        return out[k];
      };

      node start = safe[a.initial] ? node{true, 2 * cp.entry[a.initial]}
                                   : node{false, a.initial};
      d.set_initial(state_of(start));
      while (!queue.empty())
        {
          node n = queue.front();
          queue.pop_front();
          StateId src = id.at(n);
          if (kind_of(n) == VertexKind::sink)
            continue;
          std::vector<std::pair<ArenaEdge, node>> moves;
          if (owner_of(n) == Owner::environment)
            moves.push_back(env_pick(n));
          else
            for (auto& [e, t] : successors(n))
              moves.push_back(kind_of(t) == VertexKind::proposal ? env_pick(t)
                                                                 : std::pair{e, t});
          for (auto& [e, t] : moves)
            {
              StateId dst = state_of(t);
              if (!e.silent)
                d.add_transition(src, e.action, dst);
              else if (kind_of(t) == VertexKind::sink)
                {
                  // deadlock: leave src without transitions, mark the state
                }
            }
        }
      return reachable(d);
    }
  }

  SynthesisResult solve(const GameArena& a)
  {
    a.validate();
    SynthesisResult r;
    r.stats.arena_vertices = a.size();

    // (1) safety: environment attractor of the sinks
    auto view = arena_view(a);
    std::vector<bool> all(a.size(), true), sinks(a.size(), false);
    for (std::uint32_t v = 0; v < a.size(); ++v)
      sinks[v] = a.vertices[v].kind == VertexKind::sink;
    std::vector<std::int32_t> unsafe_choice(a.size(), -1);
    auto unsafe = attractor(view, all, sinks, Owner::environment, &unsafe_choice);
    std::vector<bool> safe(a.size());
    for (std::uint32_t v = 0; v < a.size(); ++v)
      {
        safe[v] = !unsafe[v];
        r.stats.safe_vertices += safe[v];
      }

    // (2) counters, (3) index appearance record, (4) parity solve
    auto cp = build_counters(a, safe);
    auto pg = build_iar(a, cp);
    auto sol = solve_parity(pg);
    r.stats.counter_vertices = cp.arena.size();
    r.stats.parity_vertices = pg.size();
    for (bool w : sol.controller_wins)
      r.stats.parity_winning += w;

    r.arena_winning.assign(a.size(), false);
    for (std::uint32_t v = 0; v < a.size(); ++v)
      if (safe[v])
        r.arena_winning[v] = sol.controller_wins[2 * cp.entry[v]];

    r.realizable = r.arena_winning[a.initial];
    // (5) read-back
    if (r.realizable)
      r.controller = package_mplus(a, cp, pg, sol, 2 * cp.entry[a.initial]);
    else
      r.counterexample = package_counterexample(a, safe, unsafe_choice, cp, pg, sol);
    return r;
  }

  // --------------------------------------------------------- brute force

  std::vector<bool> brute_force_winning(const GameArena& a, std::size_t bound)
  {
    a.validate();
    if (a.size() > bound)
      throw usage_error("arena has " + std::to_string(a.size())
                        + " vertices, above the brute-force bound of "
                        + std::to_string(bound));
    std::vector<bool> all(a.size(), true);
    auto cp = build_counters(a, all);
    std::size_t n = cp.arena.size();
    std::vector<bool> b(n), astar(n), gstar(n);
    std::vector<Owner> owner(n);
    for (std::uint32_t x = 0; x < n; ++x)
      {
        b[x] = a.vertices[cp.arena[x]].atoms & GameArena::buchi_bit;
        astar[x] = cp.ac[x] == a.num_assumptions;
        gstar[x] = cp.gc[x] == a.num_guarantees;
        owner[x] = a.vertices[cp.arena[x]].owner;
      }
    using set = std::vector<bool>;
    auto cpre = [&](const set& s) {
      set r(n, false);
      for (std::uint32_t x = 0; x < n; ++x)
        {
          bool any = false, every = true;
          for (auto y : cp.succ[x])
            {
              any = any || s[y];
              every = every && s[y];
            }
          r[x] = owner[x] == Owner::controller ? any : every;
        }
      return r;
    };
    auto lfp = [&](auto f) {
      set s(n, false);
      for (;;)
        {
          set t = f(s);
          if (t == s)
            return s;
          s = std::move(t);
        }
    };
    auto gfp = [&](auto f) {
      set s(n, true);
      for (;;)
        {
          set t = f(s);
          if (t == s)
            return s;
          s = std::move(t);
        }
    };

    set z = gfp([&](const set& Z) {
      set cz = cpre(Z);
      set reach_b = lfp([&](const set& Y) {
        set cy = cpre(Y), r(n);
        for (std::uint32_t x = 0; x < n; ++x)
          r[x] = (b[x] && cz[x]) || cy[x];
        return r;
      });
      set streett = lfp([&](const set& Y) {
        set cy = cpre(Y);
        return gfp([&](const set& X) {
          set cx = cpre(X);
          return lfp([&](const set& W) {
            set cw = cpre(W), r(n);
            for (std::uint32_t x = 0; x < n; ++x)
              r[x] = (gstar[x] && cz[x]) || cy[x] || (!astar[x] && b[x] && cx[x])
                     || (!astar[x] && cw[x]);
            return r;
          });
        });
      });
      set r(n);
      for (std::uint32_t x = 0; x < n; ++x)
        r[x] = reach_b[x] && streett[x];
      return r;
    });

    std::vector<bool> win(a.size(), false);
    for (std::uint32_t v = 0; v < a.size(); ++v)
      win[v] = z[cp.entry[v]];
    return win;
  }
}
