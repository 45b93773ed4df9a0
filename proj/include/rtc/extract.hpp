#pragma once

#include "rtc/dlts.hpp"

namespace rtc
{
  /// Turns a solution M⁺ of the yield-extended problem into a controller
  /// over the original alphabet. States are pairs (side, t) with side e
  /// (reached by an uncontrollable move) or c; γ steps are folded into the
  /// surrounding moves, preferring a γ_E·γ_C detour before uncontrollable
  /// actions. Only reachable pairs are kept, so the result has at most
  /// 2·|M⁺| states. Throws usage_error when M⁺ lacks either yield action.
  Dlts extract_rtc_controller(const Dlts& mplus);

  /// Inverse direction: from an RTC-legal controller m for env (over the
  /// partition `controllable`), the M⁺ whose states are (s, e, t) and two
  /// controller-turn copies (s, c, t, 1|2). Throws usage_error when m is not
  /// RTC-legal or blocks an uncontrollable action in its initial state.
  Dlts embed_rtc_controller(const Dlts& m, const Dlts& env, const ActionSet& controllable);
}
