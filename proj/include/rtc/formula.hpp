#pragma once

#include "rtc/fluents.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rtc
{
  /// Syntactically safe FLTL: β | □φ | φ W ψ | β → φ | φ ∧ ψ | φ ∨ ψ,
  /// where β is a Boolean combination of fluents.
  class SafetyFormula
  {
  public:
    enum class Op
    {
      state,
      always,
      weak_until,
      implies,
      conjunction,
      disjunction,
    };

    static SafetyFormula state(BoolCombo b);
    static SafetyFormula always(SafetyFormula f);
    static SafetyFormula weak_until(SafetyFormula f, SafetyFormula g);
    static SafetyFormula implies(BoolCombo b, SafetyFormula f);
    static SafetyFormula conjunction(SafetyFormula f, SafetyFormula g);
    static SafetyFormula disjunction(SafetyFormula f, SafetyFormula g);

    Op op() const;
    const BoolCombo& guard() const;            // state, implies
    const SafetyFormula& left() const;         // always, weak_until, implies, ∧, ∨
    const SafetyFormula& right() const;        // weak_until, ∧, ∨

    bool operator==(const SafetyFormula& other) const;

  private:
    struct node;
    explicit SafetyFormula(std::shared_ptr<const node> n) : node_(std::move(n)) {}
    std::shared_ptr<const node> node_;
  };

  void collect_fluents(const SafetyFormula& f, std::set<FluentIndex>& out);
  std::string to_string(const SafetyFormula& f, const FluentSet& fluents);

  /// (⋀_{ℓ∈C} ¬ℓ̇) W ((⋁_{ℓ∈C} ℓ̇) W ψ); action fluents are declared over `act`.
  SafetyFormula asap(const BoolCombo& psi, const ActionSet& controlled,
                     const ActionSet& act, FluentSet& fluents);
  /// □(φ → asap(ψ))
  SafetyFormula urg_rsp(const BoolCombo& phi, const BoolCombo& psi,
                        const ActionSet& controlled, const ActionSet& act,
                        FluentSet& fluents);

  /// ⋀ safety ∧ (⋀ GF assumption → ⋀ GF guarantee)
  struct Sgr1Spec
  {
    FluentSet fluents;
    std::vector<SafetyFormula> safety;
    std::vector<BoolCombo> assumptions;
    std::vector<BoolCombo> guarantees;

    /// Throws spec_error on an empty goal or on references to undeclared
    /// fluents.
    void validate() const;
  };

  /// Deterministic monitor for a safety formula, built by formula progression
  /// on demand. States are residual obligations in minimal DNF; the violation
  /// state is the residual `false`. Not thread-safe: step() extends the cache.
  class SafetyMonitor
  {
  public:
    using State = std::uint32_t;

    explicit SafetyMonitor(const SafetyFormula& f);

    State initial() const noexcept { return 0; }
    State violation() const noexcept { return violation_; }
    bool is_violation(State s) const noexcept { return s == violation_; }
    /// Residual after reading one position with valuation `v`.
    State step(State s, const FluentValuation& v);
    std::size_t num_states() const noexcept { return residuals_.size(); }
    const std::set<FluentIndex>& fluents() const noexcept { return fluents_; }

  private:
    using clause = std::vector<std::uint32_t>;
    using dnf = std::vector<clause>;

    struct tnode
    {
      SafetyFormula::Op op;
      BoolCombo guard;
      std::uint32_t left = 0;
      std::uint32_t right = 0;
    };

    std::uint32_t intern_node(const SafetyFormula& f);
    State intern_residual(dnf d);
    dnf progress(std::uint32_t node, const FluentValuation& v) const;

    std::vector<tnode> nodes_;
    std::vector<dnf> residuals_;
    std::map<dnf, State> residual_index_;
    std::map<std::pair<State, std::vector<bool>>, State> cache_;
    std::set<FluentIndex> fluents_;
    State violation_ = 0;
  };

  /// The monitor as a DLTS over `alphabet`: states are (residual, valuation
  /// of the referenced fluents). Only transition fluents may be referenced;
  /// throws spec_error otherwise. All actions are monitored.
  struct MonitorDlts
  {
    Dlts dlts;
    std::optional<StateId> violation;
  };
  MonitorDlts compile_safety_monitor(const SafetyFormula& f, const FluentSet& fluents,
                                     const ActionSet& alphabet);
}
