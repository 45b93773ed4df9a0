#pragma once

#include "rtc/formula.hpp"

#include <optional>
#include <vector>

namespace rtc
{
  /// ε = ⟨E, φ, C⟩. U is the rest of E's alphabet.
  struct RtcProblem
  {
    Dlts env;
    Sgr1Spec spec;
    ActionSet controllable;

    ActionSet uncontrollable() const;
    /// Throws model_error on reserved or unknown actions, spec_error on a
    /// nondeterministic environment or an ill-formed goal.
    void validate() const;
  };

  /// A goal atom read at one position. Atoms that are not evaluated at yield
  /// positions are false there.
  struct GoalAtom
  {
    BoolCombo combo;
    bool at_yield_positions = false;
  };

  /// Standard control problem □ρ ∧ GF b ∧ (⋀ GF a_i → ⋀ GF g_j). Safety
  /// monitors only read non-yield positions.
  struct StdProblem
  {
    Dlts env;
    FluentSet fluents;
    std::vector<SafetyFormula> safety;
    std::optional<GoalAtom> buchi;
    std::vector<GoalAtom> assumptions;
    std::vector<GoalAtom> guarantees;
    ActionSet controllable;

    ActionSet uncontrollable() const;
  };

  /// c, u, pass_E, pass_M, allA over the original alphabet, plus the yield
  /// fluents en_e/en_m when declared.
  struct DerivedAtoms
  {
    BoolCombo c, u, pass_e, pass_m, all_a;
    std::optional<BoolCombo> en_e, en_m;
  };

  /// Adds the action fluents of C ∪ U and the enabledness proposition fluents
  /// ℓ^p_E (and ℓ^p_M when `with_controller` is set) to `fluents`.
  DerivedAtoms derive_atoms(FluentSet& fluents, const ActionSet& controllable,
                            const ActionSet& uncontrollable, bool with_controller);

  /// Copy of `d` whose controlled actions are exactly `controllable`.
  /// Throws model_error if `d` already partitions its alphabet differently.
  Dlts with_partition(const Dlts& d, const ActionSet& controllable);

  /// Two states e (initial) and c: e -γ_E-> c, c -γ_C-> e, U loops on e,
  /// C loops on c.
  Dlts build_yield(const ActionSet& uncontrollable, const ActionSet& controllable);

  /// Drops γ transitions into states that enable only γ actions; restricted
  /// to reachable states.
  Dlts remove_livelock(const Dlts& n);

  /// ⟨live(E∥Y), φ′, C ∪ {γ_C}⟩ with E annotated by ℓ^p_E before composing.
  StdProblem build_modified_problem(const RtcProblem& p);

  /// The same goal read under standard control: no yields, no GF b.
  StdProblem build_standard_problem(const RtcProblem& p);
}
