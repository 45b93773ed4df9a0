#pragma once

#include "rtc/game.hpp"
#include "rtc/verify.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rtc
{
  enum class Mode
  {
    rtc,
    standard,
  };

  std::string_view mode_name(Mode m);
  /// Throws usage_error on anything but "rtc" or "standard".
  Mode parse_mode(std::string_view s);

  /// A parsed problem file. `rtc` is present when the file stays inside the
  /// user-level fragment (no yield actions, no Büchi atom, no yield-position
  /// atoms); `standard` is always filled: the file read as a standard control
  /// problem.
  struct ProblemFile
  {
    Mode mode = Mode::rtc;
    std::optional<RtcProblem> rtc;
    StdProblem standard;
    std::vector<Dlts> models;   // every dlts/compose definition, in order
  };

  /// Line-oriented problem syntax:
  ///
  ///   mode rtc|standard
  ///   dlts NAME
  ///     states: s0 s1
  ///     init: s0
  ///     controlled: a b        monitored: c
  ///     props: p               label s0: p
  ///     trans s0 a s1
  ///   end
  ///   compose SYS = A || B
  ///   environment SYS
  ///   controllable: a b
  ///   fluent F = <{a}, {b}, false>       fluent 'a       fluent prop p
  ///   goal safety: G ('a -> F)
  ///   assume GF !F
  ///   guarantee GF 'b
  ///   buchi GF en_e @yield
  ///
  /// `[v:1..3]` anywhere on a line repeats the line for each value, with
  /// `[v]` substituted; a bare `[1..3]` inside a name expands that name into
  /// a list. Formulas accept `forall v in 1..3 (…)`, `exists v in 1..3 (…)`,
  /// `asap(ψ)` and `urgRsp(φ, ψ)`. Throws parse_error (positioned),
  /// model_error or spec_error.
  ProblemFile parse_problem(std::string_view text);

  /// Only the dlts/compose definitions of a file (e.g. a controller).
  std::vector<Dlts> parse_models(std::string_view text);

  std::string print_dlts(const Dlts& d);
  std::string print_problem(const RtcProblem& p);
  std::string print_problem(const StdProblem& p);

  /// Graphviz text, byte-identical for equal input. States named "c:…" are
  /// drawn as boxes, "e:…" as ellipses, the losing state double-octagon.
  std::string export_dot(const Dlts& d);

  struct VerifyOutcome
  {
    Mode mode = Mode::rtc;
    LegalityReport legality;
    Verdict deadlock;
    Verdict goal;

    bool holds() const { return legality.legal() && deadlock.holds && goal.holds; }
  };

  /// Runs the legality, deadlock and goal checks of `mode` for controller m.
  /// Throws usage_error when the file has no RTC reading and mode is rtc.
  VerifyOutcome verify_controller(const ProblemFile& f, const Dlts& m, Mode mode);

  /// JSON reports, `schema: 1`.
  std::string synthesis_report(Mode mode, const SynthesisResult& r,
                               const std::optional<Dlts>& controller);
  std::string verify_report(const VerifyOutcome& v);
}
