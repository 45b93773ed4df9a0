#include "rtc/formula.hpp"

#include "rtc/errors.hpp"

#include <algorithm>
#include <deque>

namespace rtc
{
  struct SafetyFormula::node
  {
    Op op;
    BoolCombo guard;
    std::optional<SafetyFormula> left;
    std::optional<SafetyFormula> right;
  };

  SafetyFormula SafetyFormula::state(BoolCombo b)
  {
    return SafetyFormula(std::make_shared<const node>(node{Op::state, std::move(b), {}, {}}));
  }

  SafetyFormula SafetyFormula::always(SafetyFormula f)
  {
    return SafetyFormula(
      std::make_shared<const node>(node{Op::always, {}, std::move(f), {}}));
  }

  SafetyFormula SafetyFormula::weak_until(SafetyFormula f, SafetyFormula g)
  {
    return SafetyFormula(
      std::make_shared<const node>(node{Op::weak_until, {}, std::move(f), std::move(g)}));
  }

  SafetyFormula SafetyFormula::implies(BoolCombo b, SafetyFormula f)
  {
    return SafetyFormula(
      std::make_shared<const node>(node{Op::implies, std::move(b), std::move(f), {}}));
  }

  SafetyFormula SafetyFormula::conjunction(SafetyFormula f, SafetyFormula g)
  {
    return SafetyFormula(
      std::make_shared<const node>(node{Op::conjunction, {}, std::move(f), std::move(g)}));
  }

  SafetyFormula SafetyFormula::disjunction(SafetyFormula f, SafetyFormula g)
  {
    return SafetyFormula(
      std::make_shared<const node>(node{Op::disjunction, {}, std::move(f), std::move(g)}));
  }

  SafetyFormula::Op SafetyFormula::op() const { return node_->op; }
  const BoolCombo& SafetyFormula::guard() const { return node_->guard; }

  const SafetyFormula& SafetyFormula::left() const
  {
    if (!node_->left)
      throw usage_error("formula has no left operand");
    return *node_->left;
  }

  const SafetyFormula& SafetyFormula::right() const
  {
    if (!node_->right)
      throw usage_error("formula has no right operand");
    return *node_->right;
  }

  bool SafetyFormula::operator==(const SafetyFormula& other) const
  {
    if (node_ == other.node_)
      return true;
    if (op() != other.op() || !(guard() == other.guard()))
      return false;
    if (node_->left.has_value() != other.node_->left.has_value()
        || node_->right.has_value() != other.node_->right.has_value())
      return false;
    if (node_->left && !(*node_->left == *other.node_->left))
      return false;
    if (node_->right && !(*node_->right == *other.node_->right))
      return false;
    return true;
  }

  void collect_fluents(const SafetyFormula& f, std::set<FluentIndex>& out)
  {
    using Op = SafetyFormula::Op;
    switch (f.op())
      {
      case Op::state:
        collect_fluents(f.guard(), out);
        return;
      case Op::implies:
        collect_fluents(f.guard(), out);
        collect_fluents(f.left(), out);
        return;
      case Op::always:
        collect_fluents(f.left(), out);
        return;
      default:
        collect_fluents(f.left(), out);
        collect_fluents(f.right(), out);
      }
  }

  std::string to_string(const SafetyFormula& f, const FluentSet& fluents)
  {
    using Op = SafetyFormula::Op;
    switch (f.op())
      {
      case Op::state:
        return to_string(f.guard(), fluents);
      case Op::always:
        return "G (" + to_string(f.left(), fluents) + ")";
      case Op::weak_until:
        return "(" + to_string(f.left(), fluents) + ") W (" + to_string(f.right(), fluents)
               + ")";
      case Op::implies:
        return "(" + to_string(f.guard(), fluents) + ") -> (" + to_string(f.left(), fluents)
               + ")";
      case Op::conjunction:
        return "(" + to_string(f.left(), fluents) + ") && (" + to_string(f.right(), fluents)
               + ")";
      case Op::disjunction:
        return "(" + to_string(f.left(), fluents) + ") || (" + to_string(f.right(), fluents)
               + ")";
      }
    return {};
  }

  SafetyFormula asap(const BoolCombo& psi, const ActionSet& controlled,
                     const ActionSet& act, FluentSet& fluents)
  {
    std::vector<BoolCombo> none, some;
    for (ActionId c : controlled)
      {
        auto f = BoolCombo::fluent(fluents.action(c, act));
        none.push_back(!f);
        some.push_back(f);
      }
    auto inner = SafetyFormula::weak_until(SafetyFormula::state(BoolCombo::any_of(some)),
                                           SafetyFormula::state(psi));
    return SafetyFormula::weak_until(SafetyFormula::state(BoolCombo::all_of(none)), inner);
  }

  SafetyFormula urg_rsp(const BoolCombo& phi, const BoolCombo& psi,
                        const ActionSet& controlled, const ActionSet& act,
                        FluentSet& fluents)
  {
    return SafetyFormula::always(
      SafetyFormula::implies(phi, asap(psi, controlled, act, fluents)));
  }

  void Sgr1Spec::validate() const
  {
    if (safety.empty() && guarantees.empty())
      throw spec_error("goal has neither safety formulas nor guarantees");
    std::set<FluentIndex> used;
    for (const auto& s : safety)
      collect_fluents(s, used);
    for (const auto& b : assumptions)
      collect_fluents(b, used);
    for (const auto& b : guarantees)
      collect_fluents(b, used);
    for (FluentIndex i : used)
      if (i >= fluents.size())
        throw spec_error("goal refers to undeclared fluent #" + std::to_string(i));
  }

  namespace
  {
    using clause = std::vector<std::uint32_t>;
    using dnf = std::vector<clause>;

    const dnf dnf_true{clause{}};
    const dnf dnf_false{};

    // Sorts, removes duplicates and clauses subsumed by a smaller one.
    dnf minimise(dnf d)
    {
      for (auto& c : d)
        {
          std::sort(c.begin(), c.end());
          c.erase(std::unique(c.begin(), c.end()), c.end());
        }
      std::sort(d.begin(), d.end(), [](const clause& a, const clause& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
      });
      d.erase(std::unique(d.begin(), d.end()), d.end());
      dnf r;
      for (auto& c : d)
        {
          bool subsumed = std::any_of(r.begin(), r.end(), [&](const clause& k) {
            return std::includes(c.begin(), c.end(), k.begin(), k.end());
          });
          if (!subsumed)
            r.push_back(std::move(c));
        }
      std::sort(r.begin(), r.end());
      return r;
    }

    dnf dnf_or(const dnf& a, const dnf& b)
    {
      dnf r = a;
      r.insert(r.end(), b.begin(), b.end());
      return minimise(std::move(r));
    }

    dnf dnf_and(const dnf& a, const dnf& b)
    {
      dnf r;
      for (const auto& x : a)
        for (const auto& y : b)
          {
            clause c = x;
            c.insert(c.end(), y.begin(), y.end());
            r.push_back(std::move(c));
          }
      return minimise(std::move(r));
    }
  }

  SafetyMonitor::SafetyMonitor(const SafetyFormula& f)
  {
    collect_fluents(f, fluents_);
    std::uint32_t root = intern_node(f);
    intern_residual(dnf{clause{root}});
    violation_ = intern_residual(dnf_false);
  }

  std::uint32_t SafetyMonitor::intern_node(const SafetyFormula& f)
  {
    using Op = SafetyFormula::Op;
    tnode n{f.op(), {}, 0, 0};
    switch (f.op())
      {
      case Op::state:
        n.guard = f.guard();
        break;
      case Op::implies:
        n.guard = f.guard();
        n.left = intern_node(f.left());
        break;
      case Op::always:
        n.left = intern_node(f.left());
        break;
      default:
        n.left = intern_node(f.left());
        n.right = intern_node(f.right());
      }
    nodes_.push_back(std::move(n));
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }

  SafetyMonitor::State SafetyMonitor::intern_residual(dnf d)
  {
    auto [it, inserted] = residual_index_.try_emplace(d, 0);
    if (inserted)
      {
        it->second = static_cast<State>(residuals_.size());
        residuals_.push_back(std::move(d));
      }
    return it->second;
  }

  SafetyMonitor::dnf SafetyMonitor::progress(std::uint32_t id,
                                             const FluentValuation& v) const
  {
    using Op = SafetyFormula::Op;
    const tnode& n = nodes_[id];
    switch (n.op)
      {
      case Op::state:
        return eval_combo(n.guard, v) ? dnf_true : dnf_false;
      case Op::always:
        return dnf_and(progress(n.left, v), dnf{clause{id}});
      case Op::weak_until:
        return dnf_or(progress(n.right, v), dnf_and(progress(n.left, v), dnf{clause{id}}));
      case Op::implies:
        return eval_combo(n.guard, v) ? progress(n.left, v) : dnf_true;
      case Op::conjunction:
        return dnf_and(progress(n.left, v), progress(n.right, v));
      case Op::disjunction:
        return dnf_or(progress(n.left, v), progress(n.right, v));
      }
    return dnf_false;
  }

  SafetyMonitor::State SafetyMonitor::step(State s, const FluentValuation& v)
  {
    if (s >= residuals_.size())
      throw usage_error("unknown monitor state " + std::to_string(s));
    std::vector<bool> key;
    key.reserve(fluents_.size());
    for (FluentIndex f : fluents_)
      {
        if (f >= v.size())
          throw usage_error("valuation lacks fluent #" + std::to_string(f));
        key.push_back(v[f]);
      }
    auto ck = std::make_pair(s, std::move(key));
    if (auto it = cache_.find(ck); it != cache_.end())
      return it->second;

    dnf result = dnf_false;
    const dnf current = residuals_[s];
    for (const clause& c : current)
      {
        dnf conj = dnf_true;
        for (std::uint32_t atom : c)
          {
            conj = dnf_and(conj, progress(atom, v));
            if (conj.empty())
              break;
          }
        result = dnf_or(result, conj);
      }
    State next = intern_residual(std::move(result));
    cache_.emplace(std::move(ck), next);
    return next;
  }

  namespace
  {
    // Moore partition refinement; the violation sink is its own class.
    MonitorDlts minimise(const MonitorDlts& m, const ActionSet& alphabet)
    {
      const Dlts& d = m.dlts;
      std::size_t n = d.num_states();
      std::vector<std::uint32_t> block(n, 0);
      if (m.violation)
        for (StateId s = 0; s < n; ++s)
          block[s] = s == *m.violation ? 1 : 0;
      std::size_t count = 0;
      for (;;)
        {
          std::map<std::vector<std::uint32_t>, std::uint32_t> sig_index;
          std::vector<std::uint32_t> next(n);
          for (StateId s = 0; s < n; ++s)
            {
              std::vector<std::uint32_t> sig{block[s]};
              for (ActionId a : alphabet)
                sig.push_back(block[d.successors(s, a).front()]);
              auto [it, _] = sig_index.try_emplace(sig, sig_index.size());
              next[s] = it->second;
            }
          block = std::move(next);
          if (sig_index.size() == count)
            break;
          count = sig_index.size();
        }

      // renumber blocks by first occurrence in BFS order from the initial state
      MonitorDlts r{Dlts(d.name()), std::nullopt};
      for (ActionId a : alphabet)
        r.dlts.add_monitored(a);
      std::vector<StateId> id(count, static_cast<StateId>(-1));
      std::vector<StateId> rep;
      std::deque<StateId> queue{d.initial()};
      auto visit = [&](StateId s) {
        if (id[block[s]] != static_cast<StateId>(-1))
          return id[block[s]];
        bool bad = m.violation && s == *m.violation;
        id[block[s]] = r.dlts.add_state(bad ? "violation"
                                            : "m" + std::to_string(rep.size()));
        if (bad)
          r.violation = id[block[s]];
        rep.push_back(s);
        queue.push_back(s);
        return id[block[s]];
      };
      queue.clear();
      r.dlts.set_initial(visit(d.initial()));
      while (!queue.empty())
        {
          StateId s = queue.front();
          queue.pop_front();
          for (ActionId a : alphabet)
            {
              StateId t = d.successors(s, a).front();
              r.dlts.add_transition(id[block[s]], a, visit(t));
            }
        }
      return r;
    }
  }

  MonitorDlts compile_safety_monitor(const SafetyFormula& f, const FluentSet& fluents,
                                     const ActionSet& alphabet)
  {
    SafetyMonitor mon(f);
    for (FluentIndex i : mon.fluents())
      {
        if (i >= fluents.size())
          throw spec_error("formula refers to undeclared fluent #" + std::to_string(i));
        if (fluents[i].kind == FluentKind::proposition)
          throw spec_error("monitor for '" + to_string(f, fluents)
                           + "' depends on state propositions");
      }

    auto restrict = [&](FluentValuation v) {
      for (FluentIndex i = 0; i < v.size(); ++i)
        if (!mon.fluents().count(i))
          v.values[i] = false;
      return v;
    };

    MonitorDlts r{Dlts("monitor"), std::nullopt};
    Dlts& d = r.dlts;
    for (ActionId a : alphabet)
      d.add_monitored(a);

    std::map<std::pair<SafetyMonitor::State, std::vector<bool>>, StateId> index;
    std::deque<std::pair<SafetyMonitor::State, FluentValuation>> queue;
    auto state_of = [&](SafetyMonitor::State s, const FluentValuation& v) -> StateId {
      if (mon.is_violation(s))
        {
          if (!r.violation)
            {
              r.violation = d.add_state("violation");
              for (ActionId a : alphabet)
                d.add_transition(*r.violation, a, *r.violation);
            }
          return *r.violation;
        }
      auto [it, inserted] = index.try_emplace({s, v.values}, 0);
      if (inserted)
        {
          it->second = d.add_state("m" + std::to_string(index.size() - 1));
          queue.emplace_back(s, v);
        }
      return it->second;
    };

    std::vector<PropId> none;
    d.set_initial(state_of(mon.initial(), restrict(initial_valuation(fluents, none))));
    while (!queue.empty())
      {
        auto [s, v] = queue.front();
        queue.pop_front();
        StateId src = index.at({s, v.values});
        for (ActionId a : alphabet)
          {
            FluentValuation nv = restrict(step_valuation(fluents, v, a, none));
            d.add_transition(src, a, state_of(mon.step(s, nv), nv));
          }
      }
    return minimise(r, alphabet);
  }
}
