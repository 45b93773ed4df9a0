#pragma once

#include "rtc/transform.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rtc
{
  struct LegalityViolation
  {
    StateId product_state;   // state of m ∥ e
    int bullet;              // 1-based, in the order of the definition
    ActionId action;
  };

  struct LegalityReport
  {
    std::vector<LegalityViolation> violations;
    bool legal() const noexcept { return violations.empty(); }
  };

  /// Standard legality on reachable pairs of m ∥ e: every enabled
  /// uncontrollable action of e is enabled by m, no controllable action
  /// disabled in e is enabled by m. Alphabets must agree (usage_error).
  LegalityReport check_standard_legality(const Dlts& e, const Dlts& m,
                                         const ActionSet& controllable);

  /// RTC legality: (1) if m enables some uncontrollable action it enables all
  /// those e enables, (2) likewise in every m-state reached by an
  /// uncontrollable transition of m, (3) as standard bullet 2.
  LegalityReport check_rtc_legality(const Dlts& e, const Dlts& m,
                                    const ActionSet& controllable);

  enum class Failure
  {
    none,
    deadlock,
    safety,        // a safety formula is violated (index = formula)
    recurrence,    // an unconditional GF atom fails (ψ_c or b)
    guarantee,     // assumptions hold, guarantee `index` fails
  };

  struct Verdict
  {
    bool holds = true;
    Failure failure = Failure::none;
    std::size_t index = 0;
    Dlts product;                           // the system the witness runs in
    std::optional<Execution> counterexample;
    std::vector<std::vector<std::string>> position_atoms;   // names true at each position
  };

  /// No reachable state of e ∥ m without outgoing transitions.
  Verdict check_deadlock_free(const Dlts& e, const Dlts& m);

  /// E∥M with E annotated ℓ^p_E and M annotated ℓ^p_M.
  Dlts rtc_product(const Dlts& e, const Dlts& m);

  /// Every infinite execution of E∥M satisfies ψ_c ∧ (ψ_e → φ); see
  /// check_rtc_legality and check_deadlock_free for the other obligations.
  Verdict check_rtc_goal(const RtcProblem& p, const Dlts& m);

  /// Every infinite execution of env ∥ m satisfies the standard goal
  /// □ρ ∧ GF b ∧ (⋀ GF a_i → ⋀ GF g_j).
  Verdict check_standard_goal(const StdProblem& p, const Dlts& m);

  /// Ultimately periodic executions whose prefix and cycle (walks) have
  /// total length ≤ max_len, each given once (shortest prefix, primitive
  /// cycle). Throws usage_error above `state_bound` states.
  std::vector<Execution> enumerate_lassos(const Dlts& d, std::size_t max_len,
                                          std::size_t state_bound = 10);
}
