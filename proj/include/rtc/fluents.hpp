#pragma once

#include "rtc/dlts.hpp"

#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace rtc
{
  enum class FluentKind
  {
    transition,
    proposition,
  };

  /// ⟨I_f, T_f, Init_f⟩, or a proposition fluent tracking a state label.
  struct Fluent
  {
    std::string name;
    ActionSet initiating;
    ActionSet terminating;
    bool initially = false;
    FluentKind kind = FluentKind::transition;
    PropId prop{};                        // proposition fluents only
    std::optional<ActionId> action;       // set for action fluents ℓ̇

    bool operator==(const Fluent&) const = default;
  };

  /// ℓ̇ = ⟨{ℓ}, Act \ {ℓ}, false⟩. Throws usage_error if ℓ ∉ Act.
  Fluent action_fluent(ActionId l, const ActionSet& act);
  Fluent proposition_fluent(PropId p);

  using FluentIndex = std::uint32_t;

  /// Declared fluents, addressed by index. Indices are stable under add().
  class FluentSet
  {
  public:
    /// Validates I ∩ T = ∅ and that proposition fluents have no actions.
    FluentIndex add(Fluent f);
    /// Returns the existing index when an identical fluent is declared.
    FluentIndex add_or_get(Fluent f);
    std::optional<FluentIndex> find(std::string_view name) const;

    FluentIndex action(ActionId l, const ActionSet& act)
    {
      return add_or_get(action_fluent(l, act));
    }
    FluentIndex proposition(PropId p) { return add_or_get(proposition_fluent(p)); }

    std::size_t size() const noexcept { return fluents_.size(); }
    const Fluent& operator[](FluentIndex i) const { return fluents_.at(i); }
    auto begin() const { return fluents_.begin(); }
    auto end() const { return fluents_.end(); }

  private:
    std::vector<Fluent> fluents_;
    std::unordered_map<std::string, FluentIndex> by_name_;
  };

  struct FluentValuation
  {
    std::vector<bool> values;

    bool operator[](FluentIndex i) const { return values[i]; }
    std::size_t size() const noexcept { return values.size(); }
    bool operator==(const FluentValuation&) const = default;
  };

  /// Valuation before any action: transition fluents take Init_f,
  /// proposition fluents read the labels of the initial state.
  FluentValuation initial_valuation(const FluentSet& fluents,
                                    std::span<const PropId> initial_state_labels);

  /// Applies one position: transition fluents are set by I_f, cleared by
  /// T_f and otherwise kept; proposition fluents read `labels`, the labels of
  /// the state the action is taken from. Labels must be sorted.
  FluentValuation step_valuation(const FluentSet& fluents, const FluentValuation& v,
                                 ActionId action, std::span<const PropId> labels);

  /// j ≤ i (inclusive) is the reading where the action at position i already
  /// affects the valuation at i; exclusive lags one position.
  enum class FluentIndexing
  {
    inclusive,
    exclusive,
  };

  /// Valuations at every position of a finite trace; `state_labels[i]` are the
  /// labels of s_i, `actions[i]` is ℓ_i.
  std::vector<FluentValuation>
  trace_valuations(const FluentSet& fluents, std::span<const ActionId> actions,
                   std::span<const std::vector<PropId>> state_labels,
                   FluentIndexing indexing = FluentIndexing::inclusive);

  /// Boolean combination of fluents; immutable, cheap to copy.
  class BoolCombo
  {
  public:
    enum class Op
    {
      constant,
      fluent,
      negation,
      conjunction,
      disjunction,
    };

    BoolCombo();  // true

    static BoolCombo constant(bool value);
    static BoolCombo fluent(FluentIndex f);
    static BoolCombo all_of(std::vector<BoolCombo> parts);
    static BoolCombo any_of(std::vector<BoolCombo> parts);

    friend BoolCombo operator!(const BoolCombo& b);
    friend BoolCombo operator&&(const BoolCombo& a, const BoolCombo& b);
    friend BoolCombo operator||(const BoolCombo& a, const BoolCombo& b);

    Op op() const;
    bool value() const;           // constant
    FluentIndex fluent() const;   // fluent
    std::span<const BoolCombo> children() const;

    bool operator==(const BoolCombo& other) const;

  private:
    struct node;
    explicit BoolCombo(std::shared_ptr<const node> n) : node_(std::move(n)) {}
    std::shared_ptr<const node> node_;
  };

  /// Throws usage_error when a referenced fluent is outside the valuation.
  bool eval_combo(const BoolCombo& b, const FluentValuation& v);
  void collect_fluents(const BoolCombo& b, std::set<FluentIndex>& out);
  /// Concrete syntax: action fluents as 'a, others by name.
  std::string to_string(const BoolCombo& b, const FluentSet& fluents);
}

template <>
struct std::hash<rtc::FluentValuation>
{
  std::size_t operator()(const rtc::FluentValuation& v) const noexcept
  {
    return std::hash<std::vector<bool>>()(v.values);
  }
};
