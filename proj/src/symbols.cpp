#include "rtc/symbols.hpp"

#include "rtc/errors.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace rtc
{
  namespace
  {
    class interner
    {
    public:
      std::uint32_t intern(std::string_view name)
      {
        if (name.empty())
          throw usage_error("symbol names must be non-empty");
        {
          std::shared_lock lock(mutex_);
          if (auto it = ids_.find(std::string(name)); it != ids_.end())
            return it->second;
        }
        std::unique_lock lock(mutex_);
        auto [it, inserted] =
          ids_.try_emplace(std::string(name),
                           static_cast<std::uint32_t>(names_.size()));
        if (inserted)
          names_.emplace_back(name);
        return it->second;
      }

      const std::string& name(std::uint32_t id) const
      {
        std::shared_lock lock(mutex_);
        if (id >= names_.size())
          throw usage_error("unknown symbol id " + std::to_string(id));
        // deque never relocates existing elements
        return names_[id];
      }

    private:
      mutable std::shared_mutex mutex_;
      std::unordered_map<std::string, std::uint32_t> ids_;
      std::deque<std::string> names_;
    };

    interner& actions()
    {
      static interner table;
      return table;
    }

    interner& props()
    {
      static interner table;
      return table;
    }

    constexpr std::string_view enabledness_marker = "^p_";
  }

  namespace detail
  {
    std::uint32_t intern_action(std::string_view name)
    {
      return actions().intern(name);
    }

    std::uint32_t intern_prop(std::string_view name)
    {
      return props().intern(name);
    }

    const std::string& action_name(std::uint32_t id)
    {
      return actions().name(id);
    }

    const std::string& prop_name(std::uint32_t id)
    {
      return props().name(id);
    }
  }

  ActionId yield_controller()
  {
    static const ActionId a("yieldC");
    return a;
  }

  ActionId yield_environment()
  {
    static const ActionId a("yieldE");
    return a;
  }

  bool is_yield(ActionId a)
  {
    return a == yield_controller() || a == yield_environment();
  }

  std::string enabledness_prop_name(ActionId a, std::string_view tag)
  {
    std::string s = a.name();
    s += enabledness_marker;
    s += tag;
    return s;
  }

  bool is_enabledness_prop(PropId p)
  {
    return p.name().find(enabledness_marker) != std::string::npos;
  }
}
