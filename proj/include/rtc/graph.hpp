#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

namespace rtc
{
  struct Scc
  {
    std::vector<std::uint32_t> vertices;  // sorted
    bool cyclic = false;                  // contains at least one edge
  };

  /// Tarjan's algorithm (iterative) on the subgraph induced by `keep`.
  /// `successors(v)` returns a range of vertex indices; edges leaving the
  /// kept set are ignored. Components come out in reverse topological order.
  template <class Successors>
  std::vector<Scc>
  strongly_connected_components(std::size_t n, const std::vector<bool>& keep,
                                Successors&& successors)
  {
    constexpr std::uint32_t unvisited = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> index(n, unvisited), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    std::vector<Scc> result;
    std::uint32_t counter = 0;

    struct frame
    {
      std::uint32_t v;
      std::vector<std::uint32_t> succ;
      std::size_t next = 0;
    };
    std::vector<frame> call;

    auto push = [&](std::uint32_t v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      frame f{v, {}, 0};
      for (auto w : successors(v))
        if (keep[w])
          f.succ.push_back(static_cast<std::uint32_t>(w));
      call.push_back(std::move(f));
    };

    for (std::uint32_t root = 0; root < n; ++root)
      {
        if (!keep[root] || index[root] != unvisited)
          continue;
        push(root);
        while (!call.empty())
          {
            frame& f = call.back();
            if (f.next < f.succ.size())
              {
                std::uint32_t w = f.succ[f.next++];
                if (index[w] == unvisited)
                  push(w);
                else if (on_stack[w])
                  low[f.v] = std::min(low[f.v], index[w]);
                continue;
              }
            std::uint32_t v = f.v;
            bool self_loop =
              std::find(f.succ.begin(), f.succ.end(), v) != f.succ.end();
            call.pop_back();
            if (!call.empty())
              low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] != index[v])
              continue;
            Scc scc;
            std::uint32_t w;
            do
              {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                scc.vertices.push_back(w);
              }
            while (w != v);
            std::sort(scc.vertices.begin(), scc.vertices.end());
            scc.cyclic = scc.vertices.size() > 1 || self_loop;
            result.push_back(std::move(scc));
          }
      }
    return result;
  }
}
