#include "rtc/io.hpp"

#include "rtc/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <set>
#include <sstream>

namespace rtc
{
  std::string_view mode_name(Mode m)
  {
    return m == Mode::rtc ? "rtc" : "standard";
  }

  Mode parse_mode(std::string_view s)
  {
    if (s == "rtc")
      return Mode::rtc;
    if (s == "standard")
      return Mode::standard;
    throw usage_error("unknown mode '" + std::string(s) + "' (expected rtc or standard)");
  }

  // ------------------------------------------------------------ lexing

  namespace
  {
    struct token
    {
      enum kind_t
      {
        ident,
        string,
        symbol,
      } kind;
      std::string text;
      int col;
    };

    bool ident_start(char c)
    {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    bool ident_char(char c)
    {
      return ident_start(c) || c == '.' || c == '^' || c == '[' || c == ']';
    }

    std::vector<token> tokenize(const std::string& s, int line)
    {
      std::vector<token> out;
      std::size_t i = 0;
      while (i < s.size())
        {
          char c = s[i];
          int col = static_cast<int>(i) + 1;
          if (std::isspace(static_cast<unsigned char>(c)))
            {
              ++i;
              continue;
            }
          if (ident_start(c))
            {
              std::size_t j = i;
              while (j < s.size() && ident_char(s[j]))
                ++j;
              out.push_back({token::ident, s.substr(i, j - i), col});
              i = j;
              continue;
            }
          if (c == '"')
            {
              std::string v;
              std::size_t j = i + 1;
              for (; j < s.size() && s[j] != '"'; ++j)
                {
                  if (s[j] == '\\' && j + 1 < s.size())
                    ++j;
                  v += s[j];
                }
              if (j >= s.size())
                throw parse_error("unterminated string", line, col);
              out.push_back({token::string, v, col});
              i = j + 1;
              continue;
            }
          static const char* two[] = {"->", "&&", "||"};
          bool matched = false;
          for (const char* t : two)
            if (s.compare(i, 2, t) == 0)
              {
                out.push_back({token::symbol, t, col});
                i += 2;
                matched = true;
                break;
              }
          if (matched)
            continue;
          if (std::string_view("!(){}<>,:=@").find(c) != std::string_view::npos)
            {
              out.push_back({token::symbol, std::string(1, c), col});
              ++i;
              continue;
            }
          throw parse_error(std::string("unexpected character '") + c + "'", line, col);
        }
      return out;
    }

    int to_int(const std::string& s) { return std::stoi(s); }

    // `[v:lo..hi]` repeats the whole line, substituting `[v]`.
    std::vector<std::string> expand_binders(const std::string& s, int line)
    {
      static const std::regex binder(R"(\[([A-Za-z_][A-Za-z0-9_]*):(-?[0-9]+)\.\.(-?[0-9]+)\])");
      std::smatch m;
      if (!std::regex_search(s, m, binder))
        return {s};
      std::string var = m[1];
      int lo = to_int(m[2]), hi = to_int(m[3]);
      if (lo > hi)
        throw parse_error("empty range for '" + var + "'",
                          line, static_cast<int>(m.position(0)) + 1);
      std::vector<std::string> out;
      for (int v = lo; v <= hi; ++v)
        {
          std::string val = "[" + std::to_string(v) + "]";
          std::string t = s.substr(0, m.position(0)) + val + s.substr(m.position(0) + m.length(0));
          std::string use = "[" + var + "]";
          for (std::size_t p = t.find(use); p != std::string::npos; p = t.find(use, p + val.size()))
            t.replace(p, use.size(), val);
          for (auto& x : expand_binders(t, line))
            out.push_back(std::move(x));
        }
      return out;
    }

    // `forall v in lo..hi (body)` / `exists …` inside formulas.
    std::string expand_quantifiers(std::string s, int line)
    {
      static const std::regex q(
        R"(\b(forall|exists)\s+([A-Za-z_][A-Za-z0-9_]*)\s+in\s+(-?[0-9]+)\.\.(-?[0-9]+)\s*\()");
      std::smatch m;
      while (std::regex_search(s, m, q))
        {
          std::size_t open = m.position(0) + m.length(0) - 1;
          int depth = 0;
          std::size_t close = open;
          for (; close < s.size(); ++close)
            {
              if (s[close] == '(')
                ++depth;
              else if (s[close] == ')' && --depth == 0)
                break;
            }
          if (close >= s.size())
            throw parse_error("unbalanced parenthesis after quantifier", line,
                              static_cast<int>(open) + 1);
          bool all = m[1] == "forall";
          std::string var = m[2];
          int lo = to_int(m[3]), hi = to_int(m[4]);
          std::string body = s.substr(open + 1, close - open - 1);
          std::string use = "[" + var + "]";
          std::string r;
          for (int v = lo; v <= hi; ++v)
            {
              std::string inst = body, val = "[" + std::to_string(v) + "]";
              for (std::size_t p = inst.find(use); p != std::string::npos;
                   p = inst.find(use, p + val.size()))
                inst.replace(p, use.size(), val);
              if (!r.empty())
                r += all ? " && " : " || ";
              r += "(" + inst + ")";
            }
          if (r.empty())
            r = all ? "true" : "false";
          s = s.substr(0, m.position(0)) + "(" + r + ")" + s.substr(close + 1);
        }
      return s;
    }

    // A bare `[lo..hi]` inside a name expands it into a list.
    std::vector<std::string> expand_name(const std::string& s)
    {
      static const std::regex range(R"(\[(-?[0-9]+)\.\.(-?[0-9]+)\])");
      std::smatch m;
      if (!std::regex_search(s, m, range))
        return {s};
      std::vector<std::string> out;
      for (int v = to_int(m[1]); v <= to_int(m[2]); ++v)
        for (auto& x : expand_name(s.substr(0, m.position(0)) + "[" + std::to_string(v) + "]"
                                   + s.substr(m.position(0) + m.length(0))))
          out.push_back(std::move(x));
      return out;
    }

    bool plain_name(const std::string& s)
    {
      if (s.empty() || !ident_start(s[0]) || s[0] == '\'' || s.find("..") != std::string::npos)
        return false;
      return std::all_of(s.begin(), s.end(), ident_char);
    }

    std::string quote(const std::string& s)
    {
      if (plain_name(s))
        return s;
      std::string r = "\"";
      for (char c : s)
        {
          if (c == '"' || c == '\\')
            r += '\\';
          r += c;
        }
      return r + "\"";
    }
  }

  // ------------------------------------------------------------ parsing

  namespace
  {
    struct statement
    {
      int line;
      std::vector<token> toks;
    };

    class cursor
    {
    public:
      cursor(const statement& s) : s_(s) {}

      bool done() const { return i_ >= s_.toks.size(); }
      const token& peek() const
      {
        if (done())
          fail("unexpected end of line");
        return s_.toks[i_];
      }
      bool at(std::string_view text) const
      {
        return !done() && s_.toks[i_].kind != token::string && s_.toks[i_].text == text;
      }
      const token& next()
      {
        const token& t = peek();
        ++i_;
        return t;
      }
      void expect(std::string_view text)
      {
        if (!at(text))
          fail("expected '" + std::string(text) + "'");
        ++i_;
      }
      std::string name()
      {
        const token& t = peek();
        if (t.kind == token::symbol)
          fail("expected a name");
        ++i_;
        return t.text;
      }
      // names with `[lo..hi]` expanded
      std::vector<std::string> names()
      {
        const token& t = peek();
        if (t.kind == token::symbol)
          fail("expected a name");
        ++i_;
        if (t.kind == token::string)
          return {t.text};
        return expand_name(t.text);
      }
      void finish() const
      {
        if (!done())
          fail("unexpected '" + s_.toks[i_].text + "'");
      }
      [[noreturn]] void fail(const std::string& msg) const
      {
        int col = done() ? (s_.toks.empty() ? 1 : s_.toks.back().col + 1) : s_.toks[i_].col;
        throw parse_error(msg, s_.line, col);
      }
      int line() const { return s_.line; }

    private:
      const statement& s_;
      std::size_t i_ = 0;
    };

    struct expr
    {
      bool temporal = false;
      BoolCombo combo;
      std::optional<SafetyFormula> formula;

      SafetyFormula as_formula() const
      {
        return temporal ? *formula : SafetyFormula::state(combo);
      }
    };

    expr state_expr(BoolCombo b)
    {
      expr e;
      e.combo = std::move(b);
      return e;
    }

    expr temporal_expr(SafetyFormula f)
    {
      expr e;
      e.temporal = true;
      e.formula = std::move(f);
      return e;
    }

    struct goal_context
    {
      FluentSet& fluents;
      const Dlts& env;
      const ActionSet& act;           // A, without yield actions
      const ActionSet& controllable;  // C, without γ_C
    };

    class formula_parser
    {
    public:
      formula_parser(cursor& c, goal_context& g) : c_(c), g_(g) {}

      expr implication()
      {
        auto lhs = until();
        if (!c_.at("->"))
          return lhs;
        c_.next();
        if (lhs.temporal)
          c_.fail("the left side of '->' must be a state formula");
        auto rhs = implication();
        return temporal_expr(SafetyFormula::implies(lhs.combo, rhs.as_formula()));
      }

      BoolCombo combo()
      {
        auto e = implication();
        if (e.temporal)
          c_.fail("expected a boolean combination of fluents");
        return e.combo;
      }

    private:
      expr until()
      {
        auto lhs = disjunction();
        if (!c_.at("W"))
          return lhs;
        c_.next();
        auto rhs = until();
        return temporal_expr(SafetyFormula::weak_until(lhs.as_formula(), rhs.as_formula()));
      }

      expr disjunction() { return nary("||", false); }
      expr conjunction() { return nary("&&", true); }

      expr nary(const char* op, bool conj)
      {
        std::vector<expr> parts{conj ? unary() : conjunction()};
        while (c_.at(op))
          {
            c_.next();
            parts.push_back(conj ? unary() : conjunction());
          }
        if (parts.size() == 1)
          return parts.front();
        bool temporal = std::any_of(parts.begin(), parts.end(),
                                    [](const expr& e) { return e.temporal; });
        if (!temporal)
          {
            std::vector<BoolCombo> bs;
            for (auto& p : parts)
              bs.push_back(p.combo);
            return state_expr(conj ? BoolCombo::all_of(bs) : BoolCombo::any_of(bs));
          }
        SafetyFormula f = parts.front().as_formula();
        for (std::size_t i = 1; i < parts.size(); ++i)
          f = conj ? SafetyFormula::conjunction(f, parts[i].as_formula())
                   : SafetyFormula::disjunction(f, parts[i].as_formula());
        return temporal_expr(f);
      }

      expr unary()
      {
        if (c_.at("!"))
          {
            c_.next();
            auto e = unary();
            if (e.temporal)
              c_.fail("negation applies to state formulas only");
            return state_expr(!e.combo);
          }
        if (c_.at("G"))
          {
            c_.next();
            return temporal_expr(SafetyFormula::always(unary().as_formula()));
          }
        return primary();
      }

      expr primary()
      {
        if (c_.at("("))
          {
            c_.next();
            auto e = implication();
            c_.expect(")");
            return e;
          }
        if (c_.at("true") || c_.at("false"))
          return state_expr(BoolCombo::constant(c_.next().text == "true"));
        if (c_.at("asap"))
          {
            c_.next();
            c_.expect("(");
            auto psi = combo();
            c_.expect(")");
            return temporal_expr(asap(psi, g_.controllable, g_.act, g_.fluents));
          }
        if (c_.at("urgRsp"))
          {
            c_.next();
            c_.expect("(");
            auto phi = combo();
            c_.expect(",");
            auto psi = combo();
            c_.expect(")");
            return temporal_expr(urg_rsp(phi, psi, g_.controllable, g_.act, g_.fluents));
          }
        const token& t = c_.peek();
        if (t.kind == token::symbol)
          c_.fail("unexpected '" + t.text + "'");
        c_.next();
        return state_expr(BoolCombo::fluent(resolve(t)));
      }

      FluentIndex resolve(const token& t)
      {
        if (t.kind == token::ident && t.text.size() > 1 && t.text[0] == '\'')
          {
            ActionId a(t.text.substr(1));
            if (!g_.act.count(a))
              throw parse_error("unknown action '" + a.name() + "'", c_.line(), t.col);
            return g_.fluents.action(a, g_.act);
          }
        if (auto f = g_.fluents.find(t.text))
          return *f;
        PropId p(t.text);
        if (g_.env.props().count(p))
          return g_.fluents.proposition(p);
        throw parse_error("unknown fluent '" + t.text + "'", c_.line(), t.col);
      }

      cursor& c_;
      goal_context& g_;
    };

    class problem_parser
    {
    public:
      ProblemFile run(std::string_view text, bool models_only)
      {
        read(text);
        if (block_)
          throw parse_error("dlts '" + block_->name() + "' is not closed with 'end'",
                            block_line_, 1);
        if (models_only)
          return std::move(out_);
        finish();
        return std::move(out_);
      }

    private:
      void read(std::string_view text)
      {
        std::istringstream in{std::string(text)};
        std::string raw;
        int line = 0;
        while (std::getline(in, raw))
          {
            ++line;
            if (auto h = raw.find('#'); h != std::string::npos)
              raw.erase(h);
            if (raw.find_first_not_of(" \t\r") == std::string::npos)
              continue;
            for (auto& l : expand_binders(raw, line))
              {
                statement s{line, tokenize(expand_quantifiers(l, line), line)};
                if (!s.toks.empty())
                  dispatch(s);
              }
          }
      }

      void dispatch(const statement& s)
      {
        cursor c(s);
        std::string head = c.peek().kind == token::symbol ? "" : c.next().text;
        if (block_)
          return block_statement(head, c);
        if (head == "dlts")
          {
            std::string name = c.name();
            c.finish();
            if (model_index_.count(name))
              c.fail("model '" + name + "' defined twice");
            block_.emplace(name);
            block_states_.clear();
            declared_states_ = false;
            init_.reset();
            block_line_ = s.line;
          }
        else if (head == "compose")
          {
            std::string name = c.name();
            c.expect("=");
            Dlts d = model(c);
            while (c.at("||"))
              {
                c.next();
                d = parallel_compose(d, model(c));
              }
            c.finish();
            if (model_index_.count(name))
              c.fail("model '" + name + "' defined twice");
            d.set_name(name);
            add_model(std::move(d));
          }
        else if (head == "environment")
          {
            env_name_ = c.name();
            env_line_ = s.line;
            c.finish();
          }
        else if (head == "mode")
          {
            std::string m = c.name();
            c.finish();
            if (m == "rtc")
              out_.mode = Mode::rtc;
            else if (m == "standard")
              out_.mode = Mode::standard;
            else
              c.fail("unknown mode '" + m + "'");
          }
        else if (head == "controllable")
          {
            c.expect(":");
            controllable_.emplace();
            while (!c.done())
              for (auto& n : c.names())
                controllable_->push_back({n, s.line});
          }
        else if (head == "fluent" || head == "goal" || head == "assume" || head == "guarantee"
                 || head == "buchi")
          deferred_.push_back(s);
        else
          c.fail(head.empty() ? "expected a statement" : "unknown statement '" + head + "'");
      }

      Dlts model(cursor& c)
      {
        std::string name = c.name();
        auto it = model_index_.find(name);
        if (it == model_index_.end())
          c.fail("unknown model '" + name + "'");
        return out_.models[it->second];
      }

      void add_model(Dlts d)
      {
        model_index_[d.name()] = out_.models.size();
        out_.models.push_back(std::move(d));
      }

      StateId state(cursor& c, const std::string& name)
      {
        auto it = block_states_.find(name);
        if (it != block_states_.end())
          return it->second;
        if (declared_states_)
          c.fail("undeclared state '" + name + "'");
        StateId s = block_->add_state(name);
        block_states_[name] = s;
        return s;
      }

      ActionId action(cursor& c, const std::string& name)
      {
        ActionId a(name);
        if (!block_->alphabet().all().count(a))
          c.fail("undeclared action '" + name + "'");
        return a;
      }

      void block_statement(const std::string& head, cursor& c)
      {
        Dlts& d = *block_;
        if (head == "end")
          {
            c.finish();
            if (d.num_states() == 0)
              c.fail("dlts '" + d.name() + "' has no states");
            d.set_initial(init_ ? *init_ : 0);
            Dlts done = std::move(d);
            block_.reset();
            add_model(std::move(done));
            return;
          }
        if (head == "states")
          {
            c.expect(":");
            if (d.num_states() > 0)
              c.fail("states must be declared before use");
            while (!c.done())
              for (auto& n : c.names())
                {
                  if (block_states_.count(n))
                    c.fail("state '" + n + "' declared twice");
                  block_states_[n] = d.add_state(n);
                }
            declared_states_ = true;
          }
        else if (head == "init")
          {
            c.expect(":");
            init_ = state(c, c.name());
            c.finish();
          }
        else if (head == "controlled" || head == "monitored")
          {
            c.expect(":");
            while (!c.done())
              for (auto& n : c.names())
                {
                  try
                    {
                      if (head == "controlled")
                        d.add_controlled(ActionId(n));
                      else
                        d.add_monitored(ActionId(n));
                    }
                  catch (const std::exception& e)
                    {
                      c.fail(e.what());
                    }
                }
          }
        else if (head == "props")
          {
            c.expect(":");
            while (!c.done())
              for (auto& n : c.names())
                d.add_prop(PropId(n));
          }
        else if (head == "label")
          {
            auto ss = c.names();
            c.expect(":");
            std::vector<std::string> ps;
            while (!c.done())
              for (auto& n : c.names())
                ps.push_back(n);
            for (auto& sn : ss)
              {
                StateId s = state(c, sn);
                for (auto& p : ps)
                  d.add_label(s, PropId(p));
              }
          }
        else if (head == "trans")
          {
            auto srcs = c.names();
            auto acts = c.names();
            auto dsts = c.names();
            c.finish();
            for (auto& s : srcs)
              for (auto& a : acts)
                for (auto& t : dsts)
                  {
                    // named in reading order, so implicit states number left to right
                    StateId from = state(c, s);
                    ActionId act = action(c, a);
                    d.add_transition(from, act, state(c, t));
                  }
          }
        else
          c.fail("unknown dlts statement '" + head + "'");
      }

      // ------------------------------------------------ goal, after reading

      void finish()
      {
        if (out_.models.empty())
          throw parse_error("no dlts defined", 1, 1);
        std::size_t env_idx = out_.models.size() - 1;
        if (env_name_)
          {
            auto it = model_index_.find(*env_name_);
            if (it == model_index_.end())
              throw parse_error("unknown model '" + *env_name_ + "'", env_line_, 1);
            env_idx = it->second;
          }
        const Dlts& env = out_.models[env_idx];
        ActionSet all = env.alphabet().all();
        bool yields_in_env = false;
        ActionSet act;
        for (ActionId a : all)
          {
            if (is_yield(a))
              yields_in_env = true;
            else
              act.insert(a);
          }

        ActionSet C;
        if (controllable_)
          for (auto& [n, line] : *controllable_)
            {
              ActionId a(n);
              if (!all.count(a))
                throw parse_error("controllable action '" + n + "' is not in the alphabet of '"
                                    + env.name() + "'",
                                  line, 1);
              C.insert(a);
            }
        else
          C = env.alphabet().controlled;
        ActionSet user_c;
        for (ActionId a : C)
          if (!is_yield(a))
            user_c.insert(a);

        FluentSet fluents;
        std::vector<SafetyFormula> safety;
        std::vector<GoalAtom> assumptions, guarantees;
        std::optional<GoalAtom> buchi;
        int extra_line = 0;
        goal_context g{fluents, env, act, user_c};

        for (const statement& s : deferred_)
          {
            cursor c(s);
            std::string head = c.next().text;
            if (head == "fluent")
              {
                fluent_statement(c, g, all);
                continue;
              }
            if (head == "goal")
              {
                if (!c.at("safety"))
                  c.fail("expected 'safety'");
                c.next();
                c.expect(":");
                formula_parser fp(c, g);
                safety.push_back(fp.implication().as_formula());
                c.finish();
                continue;
              }
            c.expect("GF");
            formula_parser fp(c, g);
            GoalAtom atom{fp.combo(), false};
            if (c.at("@"))
              {
                c.next();
                c.expect("yield");
                atom.at_yield_positions = true;
                extra_line = extra_line ? extra_line : s.line;
              }
            c.finish();
            if (head == "assume")
              assumptions.push_back(atom);
            else if (head == "guarantee")
              guarantees.push_back(atom);
            else
              {
                if (buchi)
                  c.fail("only one buchi atom is allowed");
                buchi = atom;
                extra_line = extra_line ? extra_line : s.line;
              }
          }

        bool extras = yields_in_env || extra_line;
        if (extras && out_.mode == Mode::rtc)
          {
            if (yields_in_env)
              throw parse_error("actions 'yieldC' and 'yieldE' are reserved in rtc mode",
                                env_line_ ? env_line_ : 1, 1);
            throw parse_error("buchi and @yield atoms need mode standard", extra_line, 1);
          }

        if (!extras)
          {
            RtcProblem p;
            p.env = env;
            p.controllable = C;
            p.spec.fluents = fluents;
            p.spec.safety = safety;
            for (auto& a : assumptions)
              p.spec.assumptions.push_back(a.combo);
            for (auto& a : guarantees)
              p.spec.guarantees.push_back(a.combo);
            if (out_.mode == Mode::rtc)
              p.validate();
            else
              try
                {
                  p.validate();
                }
              catch (const model_error&)
                {
                  p.controllable.clear();
                }
              catch (const spec_error&)
                {
                  p.controllable.clear();
                }
            if (!p.controllable.empty() || out_.mode == Mode::rtc)
              {
                out_.rtc = p;
                out_.standard = build_standard_problem(p);
                return;
              }
          }
        if (safety.empty() && guarantees.empty() && !buchi)
          throw spec_error("goal has neither safety formulas nor guarantees");
        StdProblem& sp = out_.standard;
        sp.env = with_partition(env, C);
        sp.fluents = fluents;
        sp.safety = safety;
        sp.buchi = buchi;
        sp.assumptions = assumptions;
        sp.guarantees = guarantees;
        sp.controllable = C;
      }

      void fluent_statement(cursor& c, goal_context& g, const ActionSet& all)
      {
        const token& t = c.peek();
        if (t.kind == token::ident && t.text.size() > 1 && t.text[0] == '\'')
          {
            c.next();
            c.finish();
            ActionId a(t.text.substr(1));
            if (!g.act.count(a))
              c.fail("unknown action '" + a.name() + "'");
            g.fluents.action(a, g.act);
            return;
          }
        if (c.at("prop"))
          {
            c.next();
            std::string p = c.name();
            c.finish();
            if (!g.env.props().count(PropId(p)))
              c.fail("unknown proposition '" + p + "'");
            g.fluents.proposition(PropId(p));
            return;
          }
        std::string name = c.name();
        if (name == "G" || name == "W" || name == "true" || name == "false")
          c.fail("'" + name + "' is reserved");
        c.expect("=");
        c.expect("<");
        Fluent f;
        f.name = name;
        for (ActionSet* set : {&f.initiating, &f.terminating})
          {
            c.expect("{");
            while (!c.at("}"))
              {
                for (auto& n : c.names())
                  {
                    ActionId a(n);
                    if (!all.count(a))
                      c.fail("unknown action '" + n + "'");
                    set->insert(a);
                  }
                if (!c.at("}"))
                  c.expect(",");
              }
            c.next();
            c.expect(",");
          }
        std::string init = c.name();
        if (init != "true" && init != "false")
          c.fail("expected true or false");
        f.initially = init == "true";
        c.expect(">");
        c.finish();
        try
          {
            g.fluents.add(std::move(f));
          }
        catch (const usage_error& e)
          {
            c.fail(e.what());
          }
      }

      ProblemFile out_;
      std::map<std::string, std::size_t> model_index_;
      std::optional<Dlts> block_;
      std::map<std::string, StateId> block_states_;
      bool declared_states_ = false;
      std::optional<StateId> init_;
      int block_line_ = 0;
      std::optional<std::string> env_name_;
      int env_line_ = 0;
      std::optional<std::vector<std::pair<std::string, int>>> controllable_;
      std::vector<statement> deferred_;
    };
  }

  ProblemFile parse_problem(std::string_view text)
  {
    return problem_parser().run(text, false);
  }

  std::vector<Dlts> parse_models(std::string_view text)
  {
    return problem_parser().run(text, true).models;
  }

  // ------------------------------------------------------------ printing

  namespace
  {
    std::string join(const ActionSet& s)
    {
      std::vector<std::string> names;
      for (ActionId a : s)
        names.push_back(quote(a.name()));
      std::sort(names.begin(), names.end());
      std::string r;
      for (auto& n : names)
        r += (r.empty() ? "" : " ") + n;
      return r;
    }

    std::string join_sets(const ActionSet& s)
    {
      std::vector<std::string> names;
      for (ActionId a : s)
        names.push_back(quote(a.name()));
      std::sort(names.begin(), names.end());
      std::string r;
      for (auto& n : names)
        r += (r.empty() ? "" : ", ") + n;
      return r;
    }

    void print_goal(std::ostringstream& o, const FluentSet& fs,
                    const std::vector<SafetyFormula>& safety)
    {
      for (const Fluent& f : fs)
        {
          if (f.action)
            o << "fluent '" << f.action->name() << "\n";
          else if (f.kind == FluentKind::proposition)
            o << "fluent prop " << quote(f.prop.name()) << "\n";
          else
            o << "fluent " << f.name << " = <{" << join_sets(f.initiating) << "}, {"
              << join_sets(f.terminating) << "}, " << (f.initially ? "true" : "false") << ">\n";
        }
      for (const auto& s : safety)
        o << "goal safety: " << to_string(s, fs) << "\n";
    }

    std::string atom_line(const char* kw, const GoalAtom& a, const FluentSet& fs)
    {
      return std::string(kw) + " GF " + to_string(a.combo, fs)
             + (a.at_yield_positions ? " @yield" : "") + "\n";
    }
  }

  std::string print_dlts(const Dlts& d)
  {
    std::ostringstream o;
    o << "dlts " << quote(d.name().empty() ? "unnamed" : d.name()) << "\n";
    o << "  states:";
    for (StateId s = 0; s < d.num_states(); ++s)
      o << " " << quote(d.state_name(s));
    o << "\n  init: " << quote(d.state_name(d.initial())) << "\n";
    if (!d.alphabet().controlled.empty())
      o << "  controlled: " << join(d.alphabet().controlled) << "\n";
    if (!d.alphabet().monitored.empty())
      o << "  monitored: " << join(d.alphabet().monitored) << "\n";
    if (!d.props().empty())
      {
        std::vector<std::string> ps;
        for (PropId p : d.props())
          ps.push_back(quote(p.name()));
        std::sort(ps.begin(), ps.end());
        o << "  props:";
        for (auto& p : ps)
          o << " " << p;
        o << "\n";
      }
    for (StateId s = 0; s < d.num_states(); ++s)
      if (!d.labels(s).empty())
        {
          o << "  label " << quote(d.state_name(s)) << ":";
          for (PropId p : d.labels(s))
            o << " " << quote(p.name());
          o << "\n";
        }
    for (const Transition& t : d.transitions())
      o << "  trans " << quote(d.state_name(t.src)) << " " << quote(t.action.name()) << " "
        << quote(d.state_name(t.dst)) << "\n";
    o << "end\n";
    return o.str();
  }

  std::string print_problem(const RtcProblem& p)
  {
    std::ostringstream o;
    o << "mode rtc\n" << print_dlts(p.env);
    o << "environment " << quote(p.env.name().empty() ? "unnamed" : p.env.name()) << "\n";
    o << "controllable: " << join(p.controllable) << "\n";
    print_goal(o, p.spec.fluents, p.spec.safety);
    for (const auto& a : p.spec.assumptions)
      o << atom_line("assume", {a, false}, p.spec.fluents);
    for (const auto& g : p.spec.guarantees)
      o << atom_line("guarantee", {g, false}, p.spec.fluents);
    return o.str();
  }

  std::string print_problem(const StdProblem& p)
  {
    std::ostringstream o;
    o << "mode standard\n" << print_dlts(p.env);
    o << "environment " << quote(p.env.name().empty() ? "unnamed" : p.env.name()) << "\n";
    o << "controllable: " << join(p.controllable) << "\n";
    print_goal(o, p.fluents, p.safety);
    if (p.buchi)
      o << atom_line("buchi", *p.buchi, p.fluents);
    for (const auto& a : p.assumptions)
      o << atom_line("assume", a, p.fluents);
    for (const auto& g : p.guarantees)
      o << atom_line("guarantee", g, p.fluents);
    return o.str();
  }

  std::string export_dot(const Dlts& d)
  {
    auto esc = [](const std::string& s) {
      std::string r;
      for (char c : s)
        {
          if (c == '"' || c == '\\')
            r += '\\';
          r += c;
        }
      return r;
    };
    std::ostringstream o;
    o << "digraph \"" << esc(d.name()) << "\" {\n  rankdir=LR;\n  __init [shape=point];\n";
    for (StateId s = 0; s < d.num_states(); ++s)
      {
        const std::string& n = d.state_name(s);
        std::string shape = "circle";
        if (n.rfind("c:", 0) == 0)
          shape = "box";
        else if (n.rfind("e:", 0) == 0)
          shape = "ellipse";
        else if (n == "lose")
          shape = "doubleoctagon";
        std::string label = esc(n);
        if (!d.labels(s).empty())
          {
            label += "\\n{";
            bool first = true;
            for (PropId p : d.labels(s))
              {
                label += (first ? "" : ",") + esc(p.name());
                first = false;
              }
            label += "}";
          }
        o << "  " << s << " [label=\"" << label << "\", shape=" << shape << "];\n";
      }
    o << "  __init -> " << d.initial() << ";\n";
    auto ts = d.transitions();
    std::sort(ts.begin(), ts.end(), [](const Transition& a, const Transition& b) {
      return std::tuple(a.src, a.action.name(), a.dst) < std::tuple(b.src, b.action.name(), b.dst);
    });
    for (const Transition& t : ts)
      o << "  " << t.src << " -> " << t.dst << " [label=\"" << esc(t.action.name()) << "\"];\n";
    o << "}\n";
    return o.str();
  }

  // ------------------------------------------------------------ reports

  VerifyOutcome verify_controller(const ProblemFile& f, const Dlts& m, Mode mode)
  {
    VerifyOutcome v;
    v.mode = mode;
    if (mode == Mode::rtc)
      {
        if (!f.rtc)
          throw usage_error("the problem has no run-to-completion reading");
        const RtcProblem& p = *f.rtc;
        v.legality = check_rtc_legality(p.env, m, p.controllable);
        v.deadlock = check_deadlock_free(p.env, m);
        v.goal = check_rtc_goal(p, m);
      }
    else
      {
        const StdProblem& p = f.standard;
        v.legality = check_standard_legality(p.env, m, p.controllable);
        v.deadlock = check_deadlock_free(p.env, m);
        v.goal = check_standard_goal(p, m);
      }
    return v;
  }

  namespace
  {
    using nlohmann::json;

    json stats_json(const SynthesisStats& s)
    {
      return {{"arena_vertices", s.arena_vertices},
              {"safe_vertices", s.safe_vertices},
              {"counter_vertices", s.counter_vertices},
              {"parity_vertices", s.parity_vertices},
              {"parity_winning", s.parity_winning}};
    }

    json size_json(const Dlts& d)
    {
      return {{"name", d.name()}, {"states", d.num_states()}, {"transitions", d.num_transitions()}};
    }

    const char* failure_name(Failure f)
    {
      switch (f)
        {
        case Failure::none:
          return "none";
        case Failure::deadlock:
          return "deadlock";
        case Failure::safety:
          return "safety";
        case Failure::recurrence:
          return "recurrence";
        case Failure::guarantee:
          return "guarantee";
        }
      return "none";
    }

    json run_json(const Verdict& v)
    {
      json j = {{"holds", v.holds}, {"failure", failure_name(v.failure)}};
      if (v.failure == Failure::safety || v.failure == Failure::recurrence
          || v.failure == Failure::guarantee)
        j["index"] = v.index;
      if (!v.counterexample)
        return j;
      const Execution& x = *v.counterexample;
      json prefix = json::array(), cycle = json::array();
      std::size_t loop = x.loop_start.value_or(x.actions.size());
      for (std::size_t i = 0; i < x.actions.size(); ++i)
        {
          json step = {{"state", v.product.state_name(x.states[i])},
                       {"action", x.actions[i].name()}};
          if (i < v.position_atoms.size())
            step["atoms"] = v.position_atoms[i];
          (i < loop ? prefix : cycle).push_back(step);
        }
      j["prefix"] = prefix;
      if (x.is_lasso())
        j["cycle"] = cycle;
      else
        j["end"] = v.product.state_name(x.states.back());
      return j;
    }
  }

  std::string synthesis_report(Mode mode, const SynthesisResult& r,
                               const std::optional<Dlts>& controller)
  {
    json j = {{"schema", 1},
              {"command", "synthesize"},
              {"mode", mode_name(mode)},
              {"realizable", r.realizable},
              {"stats", stats_json(r.stats)}};
    if (r.controller && mode == Mode::rtc)
      j["mplus"] = size_json(*r.controller);
    if (controller)
      j["controller"] = size_json(*controller);
    if (r.counterexample)
      j["counterexample"] = size_json(*r.counterexample);
    return j.dump(2) + "\n";
  }

  std::string verify_report(const VerifyOutcome& v)
  {
    json violations = json::array();
    for (const auto& x : v.legality.violations)
      violations.push_back(
        {{"state", x.product_state}, {"rule", x.bullet}, {"action", x.action.name()}});
    json j = {{"schema", 1},
              {"command", "verify"},
              {"mode", mode_name(v.mode)},
              {"holds", v.holds()},
              {"checks",
               {{"legality", {{"holds", v.legality.legal()}, {"violations", violations}}},
                {"deadlock", run_json(v.deadlock)},
                {"goal", run_json(v.goal)}}}};
    return j.dump(2) + "\n";
  }
}
