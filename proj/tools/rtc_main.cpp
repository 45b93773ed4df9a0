// Command-line front end: synthesize, verify, transform.
//
// Exit codes: 0 realizable / holds / done, 1 unrealizable / fails,
// 2 input or usage error.

#include "rtc/errors.hpp"
#include "rtc/extract.hpp"
#include "rtc/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace rtc;

namespace
{
  std::string read_file(const std::string& path)
  {
    std::ifstream in(path);
    if (!in)
      throw usage_error("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  void write_file(const std::string& path, const std::string& text)
  {
    if (path == "-")
      {
        std::cout << text;
        return;
      }
    std::ofstream out(path);
    if (!out || !(out << text))
      throw usage_error("cannot write '" + path + "'");
  }

  struct synth_opts
  {
    std::string input, mode, out, dot, mplus, report;
  };

  int run_synthesize(const synth_opts& o)
  {
    auto file = parse_problem(read_file(o.input));
    Mode mode = o.mode.empty() ? file.mode : parse_mode(o.mode);
    SynthesisResult res;
    std::optional<Dlts> controller;
    if (mode == Mode::rtc)
      {
        if (!file.rtc)
          throw usage_error("the problem uses yield actions or Büchi atoms; use --mode standard");
        res = synthesize(build_modified_problem(*file.rtc));
        if (res.controller)
          controller = extract_rtc_controller(*res.controller);
      }
    else
      {
        res = synthesize(file.standard);
        controller = res.controller;
      }
    const std::optional<Dlts>& shown = res.realizable ? controller : res.counterexample;
    if (!o.out.empty() && shown)
      write_file(o.out, print_dlts(*shown));
    if (!o.dot.empty() && shown)
      write_file(o.dot, export_dot(*shown));
    if (!o.mplus.empty() && mode == Mode::rtc && res.controller)
      write_file(o.mplus, print_dlts(*res.controller));
    std::string report = synthesis_report(mode, res, controller);
    if (o.report.empty())
      std::cout << report;
    else
      write_file(o.report, report);
    return res.realizable ? 0 : 1;
  }

  struct verify_opts
  {
    std::string problem, controller, mode, name, report;
  };

  int run_verify(const verify_opts& o)
  {
    auto file = parse_problem(read_file(o.problem));
    auto models = parse_models(read_file(o.controller));
    if (models.empty())
      throw usage_error("'" + o.controller + "' defines no dlts");
    const Dlts* m = &models.back();
    if (!o.name.empty())
      {
        m = nullptr;
        for (const Dlts& d : models)
          if (d.name() == o.name)
            m = &d;
        if (!m)
          throw usage_error("no dlts named '" + o.name + "' in '" + o.controller + "'");
      }
    Mode mode = o.mode.empty() ? file.mode : parse_mode(o.mode);
    auto v = verify_controller(file, *m, mode);
    std::string report = verify_report(v);
    if (o.report.empty())
      std::cout << report;
    else
      write_file(o.report, report);
    return v.holds() ? 0 : 1;
  }

  int run_transform(const std::string& input, const std::string& out)
  {
    auto file = parse_problem(read_file(input));
    if (!file.rtc)
      throw usage_error("'" + input + "' is not a run-to-completion problem");
    write_file(out.empty() ? "-" : out, print_problem(build_modified_problem(*file.rtc)));
    return 0;
  }
}

int main(int argc, char** argv)
{
  CLI::App app{"Run-to-completion controller synthesis"};
  app.require_subcommand(1);

  synth_opts so;
  auto* syn = app.add_subcommand("synthesize", "Synthesise a controller");
  syn->add_option("problem", so.input, "Problem file")->required();
  syn->add_option("--mode", so.mode, "rtc or standard (default: the file's mode)");
  syn->add_option("--out", so.out, "Write the controller (or counter-strategy) here; - for stdout");
  syn->add_option("--dot", so.dot, "Write a Graphviz drawing here");
  syn->add_option("--emit-mplus", so.mplus, "Write the controller of the transformed game");
  syn->add_option("--report", so.report, "Write the JSON report here instead of stdout");

  verify_opts vo;
  auto* ver = app.add_subcommand("verify", "Check a controller against a problem");
  ver->add_option("problem", vo.problem, "Problem file")->required();
  ver->add_option("controller", vo.controller, "File defining the controller dlts")->required();
  ver->add_option("--mode", vo.mode, "rtc or standard (default: the file's mode)");
  ver->add_option("--controller-name", vo.name, "Which dlts to use (default: the last)");
  ver->add_option("--report", vo.report, "Write the JSON report here instead of stdout");

  std::string tin, tout;
  auto* tra = app.add_subcommand("transform", "Print the transformed standard problem");
  tra->add_option("problem", tin, "Problem file")->required();
  tra->add_option("--out", tout, "Output file (default: stdout)");

  try
    {
      app.parse(argc, argv);
    }
  catch (const CLI::ParseError& e)
    {
      int code = app.exit(e);
      return code == 0 ? 0 : 2;
    }

  try
    {
      if (*syn)
        return run_synthesize(so);
      if (*ver)
        return run_verify(vo);
      return run_transform(tin, tout);
    }
  catch (const std::exception& e)
    {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
}
