#pragma once

#include "rtc/transform.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rtc
{
  enum class Owner : std::uint8_t
  {
    environment,
    controller,
  };

  enum class VertexKind : std::uint8_t
  {
    position,   // reached by taking an action of the environment model
    proposal,   // controller has picked which controllable action to enable
    sink,       // safety violation or deadlock; losing for the controller
  };

  struct ArenaEdge
  {
    ActionId action;
    std::uint32_t dst = 0;
    bool silent = false;   // carries no action (proposal choice, deadlock)
  };

  /// Turn-based game. Atoms are attached to vertices: bit 0 is the Büchi atom
  /// b, then one bit per assumption, then one per guarantee.
  struct GameArena
  {
    struct Vertex
    {
      Owner owner = Owner::environment;
      VertexKind kind = VertexKind::position;
      StateId env_state = 0;
      std::uint64_t atoms = 0;
      std::vector<ArenaEdge> edges;
    };

    std::vector<Vertex> vertices;
    std::uint32_t initial = 0;
    std::size_t num_assumptions = 0;
    std::size_t num_guarantees = 0;
    Alphabet alphabet;   // controlled = C⁺

    static constexpr std::uint64_t buchi_bit = 1;
    std::uint64_t assumption_bit(std::size_t i) const { return 1ull << (1 + i); }
    std::uint64_t guarantee_bit(std::size_t j) const
    {
      return 1ull << (1 + num_assumptions + j);
    }

    std::size_t size() const noexcept { return vertices.size(); }
    /// Every vertex has a successor and every edge target exists.
    void validate() const;
  };

  /// Product of the environment, the fluent valuation and the safety
  /// monitors. Vertices where both sides could move let the controller pick
  /// one controllable action (or none) through a proposal vertex owned by
  /// the environment. Throws spec_error on a nondeterministic environment.
  GameArena build_arena(const StdProblem& p);

  /// Max-parity game, even priorities win for the controller.
  struct ParityGame
  {
    std::vector<Owner> owner;
    std::vector<std::uint8_t> priority;
    std::vector<std::vector<std::uint32_t>> successors;

    std::size_t size() const noexcept { return owner.size(); }
  };

  struct ParitySolution
  {
    std::vector<bool> controller_wins;
    /// Index into successors[v] for the owner of v on its winning region,
    /// -1 elsewhere.
    std::vector<std::int32_t> strategy;
  };

  /// Zielonka's recursive algorithm. Every vertex needs a successor.
  ParitySolution solve_parity(const ParityGame& g);

  struct SynthesisStats
  {
    std::size_t arena_vertices = 0;
    std::size_t safe_vertices = 0;
    std::size_t counter_vertices = 0;
    std::size_t parity_vertices = 0;
    std::size_t parity_winning = 0;
  };

  struct SynthesisResult
  {
    bool realizable = false;
    std::optional<Dlts> controller;       // M⁺ when realizable
    std::optional<Dlts> counterexample;   // environment strategy otherwise
    std::vector<bool> arena_winning;      // per arena vertex
    SynthesisStats stats;
  };

  /// Safety attractor, counter product, index appearance record, parity
  /// solve, then strategy read-back. The controller enables one action per
  /// turn.
  SynthesisResult solve(const GameArena& arena);

  inline SynthesisResult synthesize(const StdProblem& p)
  {
    return solve(build_arena(p));
  }

  /// Independent oracle: nested fixpoint for GF b ∧ (GF A* → GF G*) on the
  /// counter product, without safety preprocessing or parity conversion.
  /// Throws usage_error for arenas above `bound` vertices.
  std::vector<bool> brute_force_winning(const GameArena& arena, std::size_t bound = 12);
}
