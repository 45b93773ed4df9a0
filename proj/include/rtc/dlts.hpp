#pragma once

#include "rtc/graph.hpp"
#include "rtc/symbols.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace rtc
{
  using StateId = std::uint32_t;
  using ActionSet = std::set<ActionId>;
  using PropSet = std::set<PropId>;

  /// Actions partitioned into those the machine controls and those it only
  /// monitors.
  struct Alphabet
  {
    ActionSet controlled;
    ActionSet monitored;

    bool contains(ActionId a) const
    {
      return controlled.count(a) || monitored.count(a);
    }
    ActionSet all() const;
    bool operator==(const Alphabet&) const = default;
  };

  struct Edge
  {
    ActionId action;
    StateId dst;

    auto operator<=>(const Edge&) const = default;
  };

  struct Transition
  {
    StateId src;
    ActionId action;
    StateId dst;

    auto operator<=>(const Transition&) const = default;
  };

  /// Doubly-labelled transition system: states carry propositions,
  /// transitions carry actions.
  class Dlts
  {
  public:
    explicit Dlts(std::string name = {}) : name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    StateId add_state(std::string display_name = {});
    void set_initial(StateId s);
    void add_controlled(ActionId a);
    void add_monitored(ActionId a);
    void add_prop(PropId p);
    /// Adds `p` to props and to L(s).
    void add_label(StateId s, PropId p);
    /// Both endpoints must exist and the action must be in the alphabet.
    void add_transition(StateId src, ActionId action, StateId dst);

    std::size_t num_states() const noexcept { return out_.size(); }
    std::size_t num_transitions() const noexcept;
    StateId initial() const noexcept { return initial_; }
    const Alphabet& alphabet() const noexcept { return alphabet_; }
    const PropSet& props() const noexcept { return props_; }
    const std::string& state_name(StateId s) const;
    std::span<const PropId> labels(StateId s) const;
    bool has_label(StateId s, PropId p) const;
    /// Outgoing edges, sorted by (action, dst).
    std::span<const Edge> out(StateId s) const;
    std::vector<Transition> transitions() const;
    /// Δ_a(s)
    std::vector<StateId> successors(StateId s, ActionId a) const;
    bool enables(StateId s, ActionId a) const;

    void check_state(StateId s) const;

  private:
    std::string name_;
    std::vector<std::string> state_names_;
    std::vector<std::vector<PropId>> labels_;
    std::vector<std::vector<Edge>> out_;
    Alphabet alphabet_;
    PropSet props_;
    StateId initial_ = 0;
  };

  /// { ℓ | Δ_ℓ(s) ≠ ∅ }, optionally intersected with `restrict`.
  ActionSet enabled_actions(const Dlts& d, StateId s,
                            const std::optional<ActionSet>& restrict = std::nullopt);

  /// Synchronous product on shared actions, interleaving otherwise; only
  /// reachable pairs are built. Colliding proposition names are prefixed
  /// with the machine names; colliding enabledness propositions are an error.
  Dlts parallel_compose(const Dlts& m, const Dlts& e);

  /// Like parallel_compose, also returning the component states of each
  /// product state.
  struct Composition
  {
    Dlts product;
    std::vector<std::pair<StateId, StateId>> components;
  };
  Composition compose_with_map(const Dlts& m, const Dlts& e);

  bool is_deterministic(const Dlts& d);

  /// Restriction to states reachable from the initial state (renumbered in
  /// BFS order, initial state becomes 0).
  Dlts reachable(const Dlts& d);

  using StateFilter = std::function<bool(StateId)>;
  using TransitionFilter = std::function<bool(StateId, ActionId, StateId)>;

  std::vector<Scc> scc_decompose(const Dlts& d, const StateFilter& state_filter = {},
                                 const TransitionFilter& transition_filter = {});

  /// Adds proposition `ℓ^p_tag` for every action ℓ of the alphabet and labels
  /// every state enabling ℓ with it.
  Dlts annotate_enabledness(const Dlts& d, std::string_view tag);

  /// Alternating run s0 a0 s1 a1 ... as a finite prefix plus a cycle. The
  /// cycle (when present) starts at `states[loop_start]` and its last action
  /// returns there. `states.size() == actions.size()` for lassos and
  /// `actions.size() + 1` for finite paths.
  struct Execution
  {
    std::vector<StateId> states;
    std::vector<ActionId> actions;
    std::optional<std::size_t> loop_start;

    bool is_lasso() const noexcept { return loop_start.has_value(); }
    bool operator==(const Execution&) const = default;
  };

  /// True iff consecutive triples are transitions of `d` and the run starts
  /// at the initial state.
  bool is_execution_of(const Execution& x, const Dlts& d);
}
