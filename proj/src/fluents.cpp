#include "rtc/fluents.hpp"

#include "rtc/errors.hpp"

#include <algorithm>

namespace rtc
{
  Fluent action_fluent(ActionId l, const ActionSet& act)
  {
    if (!act.count(l))
      throw usage_error("action '" + l.name() + "' is not in the fluent alphabet");
    Fluent f;
    f.name = "'" + l.name();
    f.initiating = {l};
    f.terminating = act;
    f.terminating.erase(l);
    f.initially = false;
    f.action = l;
    return f;
  }

  Fluent proposition_fluent(PropId p)
  {
    Fluent f;
    f.name = p.name();
    f.kind = FluentKind::proposition;
    f.prop = p;
    return f;
  }

  FluentIndex FluentSet::add(Fluent f)
  {
    if (f.name.empty())
      throw usage_error("fluent names must be non-empty");
    if (by_name_.count(f.name))
      throw usage_error("fluent '" + f.name + "' declared twice");
    if (f.kind == FluentKind::proposition)
      {
        if (!f.initiating.empty() || !f.terminating.empty())
          throw usage_error("proposition fluent '" + f.name + "' cannot have actions");
      }
    else
      for (ActionId a : f.initiating)
        if (f.terminating.count(a))
          throw usage_error("fluent '" + f.name + "': action '" + a.name()
                            + "' both initiates and terminates");
    auto idx = static_cast<FluentIndex>(fluents_.size());
    by_name_.emplace(f.name, idx);
    fluents_.push_back(std::move(f));
    return idx;
  }

  FluentIndex FluentSet::add_or_get(Fluent f)
  {
    if (auto i = find(f.name))
      {
        if (fluents_[*i] != f)
          throw usage_error("fluent '" + f.name + "' redeclared differently");
        return *i;
      }
    return add(std::move(f));
  }

  std::optional<FluentIndex> FluentSet::find(std::string_view name) const
  {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end())
      return std::nullopt;
    return it->second;
  }

  namespace
  {
    bool labelled(std::span<const PropId> labels, PropId p)
    {
      return std::binary_search(labels.begin(), labels.end(), p);
    }
  }

  FluentValuation initial_valuation(const FluentSet& fluents,
                                    std::span<const PropId> initial_state_labels)
  {
    FluentValuation v;
    v.values.reserve(fluents.size());
    for (const Fluent& f : fluents)
      v.values.push_back(f.kind == FluentKind::proposition
                           ? labelled(initial_state_labels, f.prop)
                           : f.initially);
    return v;
  }

  FluentValuation step_valuation(const FluentSet& fluents, const FluentValuation& v,
                                 ActionId action, std::span<const PropId> labels)
  {
    if (v.size() != fluents.size())
      throw usage_error("valuation does not match the fluent set");
    FluentValuation r = v;
    for (FluentIndex i = 0; i < fluents.size(); ++i)
      {
        const Fluent& f = fluents[i];
        if (f.kind == FluentKind::proposition)
          r.values[i] = labelled(labels, f.prop);
        else if (f.initiating.count(action))
          r.values[i] = true;
        else if (f.terminating.count(action))
          r.values[i] = false;
      }
    return r;
  }

  std::vector<FluentValuation>
  trace_valuations(const FluentSet& fluents, std::span<const ActionId> actions,
                   std::span<const std::vector<PropId>> state_labels,
                   FluentIndexing indexing)
  {
    if (state_labels.size() < actions.size())
      throw usage_error("trace needs the labels of every position");
    std::vector<FluentValuation> out;
    std::vector<PropId> none;
    FluentValuation v = initial_valuation(
      fluents, state_labels.empty() ? std::span<const PropId>(none)
                                    : std::span<const PropId>(state_labels[0]));
    for (std::size_t i = 0; i < actions.size(); ++i)
      {
        FluentValuation next = step_valuation(fluents, v, actions[i], state_labels[i]);
        if (indexing == FluentIndexing::inclusive)
          out.push_back(next);
        else
          {
            // transition fluents lag one step; proposition fluents do not
            FluentValuation lag = step_valuation(fluents, v, actions[i], state_labels[i]);
            for (FluentIndex f = 0; f < fluents.size(); ++f)
              if (fluents[f].kind == FluentKind::transition)
                lag.values[f] = v[f];
            out.push_back(std::move(lag));
          }
        v = std::move(next);
      }
    return out;
  }

  struct BoolCombo::node
  {
    Op op = Op::constant;
    bool value = true;
    FluentIndex fluent = 0;
    std::vector<BoolCombo> children;
  };

  BoolCombo::BoolCombo() : BoolCombo(constant(true)) {}

  BoolCombo BoolCombo::constant(bool value)
  {
    static const auto t = std::make_shared<const node>(node{Op::constant, true, 0, {}});
    static const auto f = std::make_shared<const node>(node{Op::constant, false, 0, {}});
    return BoolCombo(value ? t : f);
  }

  BoolCombo BoolCombo::fluent(FluentIndex f)
  {
    return BoolCombo(std::make_shared<const node>(node{Op::fluent, false, f, {}}));
  }

  BoolCombo BoolCombo::all_of(std::vector<BoolCombo> parts)
  {
    std::vector<BoolCombo> kept;
    for (auto& p : parts)
      {
        if (p.op() == Op::constant)
          {
            if (!p.value())
              return constant(false);
            continue;
          }
        kept.push_back(std::move(p));
      }
    if (kept.empty())
      return constant(true);
    if (kept.size() == 1)
      return kept.front();
    return BoolCombo(std::make_shared<const node>(
      node{Op::conjunction, false, 0, std::move(kept)}));
  }

  BoolCombo BoolCombo::any_of(std::vector<BoolCombo> parts)
  {
    std::vector<BoolCombo> kept;
    for (auto& p : parts)
      {
        if (p.op() == Op::constant)
          {
            if (p.value())
              return constant(true);
            continue;
          }
        kept.push_back(std::move(p));
      }
    if (kept.empty())
      return constant(false);
    if (kept.size() == 1)
      return kept.front();
    return BoolCombo(std::make_shared<const node>(
      node{Op::disjunction, false, 0, std::move(kept)}));
  }

  BoolCombo operator!(const BoolCombo& b)
  {
    if (b.op() == BoolCombo::Op::constant)
      return BoolCombo::constant(!b.value());
    if (b.op() == BoolCombo::Op::negation)
      return b.children().front();
    return BoolCombo(std::make_shared<const BoolCombo::node>(
      BoolCombo::node{BoolCombo::Op::negation, false, 0, {b}}));
  }

  BoolCombo operator&&(const BoolCombo& a, const BoolCombo& b)
  {
    return BoolCombo::all_of({a, b});
  }

  BoolCombo operator||(const BoolCombo& a, const BoolCombo& b)
  {
    return BoolCombo::any_of({a, b});
  }

  BoolCombo::Op BoolCombo::op() const { return node_->op; }
  bool BoolCombo::value() const { return node_->value; }
  FluentIndex BoolCombo::fluent() const { return node_->fluent; }
  std::span<const BoolCombo> BoolCombo::children() const { return node_->children; }

  bool BoolCombo::operator==(const BoolCombo& other) const
  {
    if (node_ == other.node_)
      return true;
    if (op() != other.op())
      return false;
    switch (op())
      {
      case Op::constant:
        return value() == other.value();
      case Op::fluent:
        return fluent() == other.fluent();
      default:
        return std::equal(children().begin(), children().end(),
                          other.children().begin(), other.children().end());
      }
  }

  bool eval_combo(const BoolCombo& b, const FluentValuation& v)
  {
    switch (b.op())
      {
      case BoolCombo::Op::constant:
        return b.value();
      case BoolCombo::Op::fluent:
        if (b.fluent() >= v.size())
          throw usage_error("fluent #" + std::to_string(b.fluent())
                            + " is not part of the valuation");
        return v[b.fluent()];
      case BoolCombo::Op::negation:
        return !eval_combo(b.children().front(), v);
      case BoolCombo::Op::conjunction:
        for (const auto& c : b.children())
          if (!eval_combo(c, v))
            return false;
        return true;
      case BoolCombo::Op::disjunction:
        for (const auto& c : b.children())
          if (eval_combo(c, v))
            return true;
        return false;
      }
    return false;
  }

  void collect_fluents(const BoolCombo& b, std::set<FluentIndex>& out)
  {
    if (b.op() == BoolCombo::Op::fluent)
      out.insert(b.fluent());
    for (const auto& c : b.children())
      collect_fluents(c, out);
  }

  namespace
  {
    void print(const BoolCombo& b, const FluentSet& fluents, std::string& out, int ctx)
    {
      // ctx: 0 top, 1 inside ||, 2 inside &&, 3 inside !
      switch (b.op())
        {
        case BoolCombo::Op::constant:
          out += b.value() ? "true" : "false";
          return;
        case BoolCombo::Op::fluent:
          out += fluents[b.fluent()].name;
          return;
        case BoolCombo::Op::negation:
          out += "!";
          print(b.children().front(), fluents, out, 3);
          return;
        case BoolCombo::Op::conjunction:
        case BoolCombo::Op::disjunction:
          {
            bool conj = b.op() == BoolCombo::Op::conjunction;
            int mine = conj ? 2 : 1;
            // nested operators of the same kind keep their grouping
            bool paren = ctx >= mine;
            if (paren)
              out += "(";
            bool first = true;
            for (const auto& c : b.children())
              {
                if (!first)
                  out += conj ? " && " : " || ";
                first = false;
                print(c, fluents, out, mine);
              }
            if (paren)
              out += ")";
            return;
          }
        }
    }
  }

  std::string to_string(const BoolCombo& b, const FluentSet& fluents)
  {
    std::string s;
    print(b, fluents, s, 0);
    return s;
  }
}
