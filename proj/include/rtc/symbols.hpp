#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace rtc
{
  namespace detail
  {
    std::uint32_t intern_action(std::string_view name);
    std::uint32_t intern_prop(std::string_view name);
    const std::string& action_name(std::uint32_t id);
    const std::string& prop_name(std::uint32_t id);
  }

  /// Interned action label. Ids are process-wide; equal names give equal ids.
  class ActionId
  {
  public:
    constexpr ActionId() = default;
    explicit ActionId(std::string_view name) : id_(detail::intern_action(name)) {}

    static constexpr ActionId from_index(std::uint32_t id)
    {
      ActionId a;
      a.id_ = id;
      return a;
    }

    constexpr std::uint32_t index() const noexcept { return id_; }
    const std::string& name() const { return detail::action_name(id_); }

    constexpr auto operator<=>(const ActionId&) const = default;

  private:
    std::uint32_t id_ = 0;
  };

  /// Interned state-proposition name.
  class PropId
  {
  public:
    constexpr PropId() = default;
    explicit PropId(std::string_view name) : id_(detail::intern_prop(name)) {}

    constexpr std::uint32_t index() const noexcept { return id_; }
    const std::string& name() const { return detail::prop_name(id_); }

    constexpr auto operator<=>(const PropId&) const = default;

  private:
    std::uint32_t id_ = 0;
  };

  /// Reserved yield actions (γ_C hands the turn to the environment,
  /// γ_E hands it to the controller).
  ActionId yield_controller();
  ActionId yield_environment();
  bool is_yield(ActionId a);

  /// Name of the enabledness proposition for action `a` under `tag`.
  std::string enabledness_prop_name(ActionId a, std::string_view tag);
  bool is_enabledness_prop(PropId p);
}

template <>
struct std::hash<rtc::ActionId>
{
  std::size_t operator()(rtc::ActionId a) const noexcept { return a.index(); }
};

template <>
struct std::hash<rtc::PropId>
{
  std::size_t operator()(rtc::PropId p) const noexcept { return p.index(); }
};
