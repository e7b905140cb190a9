#include "mproots/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mproots/analysis.hpp"
#include "mproots/basins.hpp"
#include "mproots/bench.hpp"
#include "mproots/expr.hpp"
#include "mproots/solvers.hpp"

namespace mproots::cli {

namespace {

constexpr const char* kGrammar =
    "expression grammar:\n"
    "  expr   := term (('+'|'-') term)*\n"
    "  term   := factor (('*'|'/') factor)*\n"
    "  factor := '-' factor | power\n"
    "  power  := atom ('^' factor)?        ('^' is right-associative)\n"
    "  atom   := number | 'x' | 'pi' | 'e' | ident '(' expr ')' | '(' expr ')'\n"
    "  ident  := sin | cos | exp | ln | abs\n"
    "Implicit multiplication is not accepted: write 10*x, not 10x.\n";

struct MethodFlags {
  std::string method = "om8";
  std::string alpha = "0", beta = "3", gamma = "0", delta = "1";
  int shift_exponent = 3;
  std::string shift_scale = "1";

  void attach(CLI::App* cmd) {
    cmd->add_option("--method", method, "newton|steffensen|sm7|om8|om8df")
        ->check(CLI::IsMember({"newton", "steffensen", "sm7", "om8", "om8df"}));
    cmd->add_option("--alpha", alpha, "weight parameter alpha (om8/om8df)");
    cmd->add_option("--beta", beta, "weight parameter beta (om8/om8df)");
    cmd->add_option("--gamma", gamma, "weight parameter gamma (om8/om8df)");
    cmd->add_option("--delta", delta, "weight parameter delta (om8/om8df)");
    cmd->add_option("--shift-exponent", shift_exponent,
                    "om8df shift exponent m in w = x + a*f(x)^m");
    cmd->add_option("--shift-scale", shift_scale, "om8df shift scale a");
  }

  MethodSpec build(Precision prec, std::ostream& err) const {
    MethodKind kind = MethodSpec::kind_from_string(method);
    switch (kind) {
      case MethodKind::Newton: return MethodSpec::newton();
      case MethodKind::Steffensen: return MethodSpec::steffensen();
      case MethodKind::Sm7: return MethodSpec::sm7(prec);
      case MethodKind::Om8: return MethodSpec::om8(params(prec));
      case MethodKind::Om8Df: {
        if (shift_exponent < 1) throw CLI::ValidationError("--shift-exponent must be >= 1");
        if (shift_exponent < 3) {
          err << "warning: om8df keeps eighth order only for shift exponents >= 3; "
              << "m=1 gives order 5 and m=2 order 7\n";
        }
        return MethodSpec::om8_df(params(prec), shift_exponent,
                                  Real::from_decimal(shift_scale, prec));
      }
    }
    throw CLI::ValidationError("unknown method");
  }

  FamilyParams params(Precision prec) const {
    return {Real::from_decimal(alpha, prec), Real::from_decimal(beta, prec),
            Real::from_decimal(gamma, prec), Real::from_decimal(delta, prec)};
  }

  void echo(std::ostream& err) const {
    err << "method = " << method << "\nalpha = " << alpha << "\nbeta = " << beta
        << "\ngamma = " << gamma << "\ndelta = " << delta
        << "\nshift-exponent = " << shift_exponent << "\nshift-scale = " << shift_scale
        << '\n';
  }
};

struct SolveCmd {
  std::string function, guess;
  MethodFlags method;
  int digits = 1000;
  std::string tol = "1e-50";
  int max_iters = 100;
  bool trace = false;

  int run(std::ostream& out, std::ostream& err, bool verbose) const {
    Precision prec(digits);
    if (verbose) {
      err << "[solve]\nfunction = " << function << "\nguess = " << guess << '\n';
      method.echo(err);
      err << "digits = " << digits << "\ntol = " << tol << "\nmax-iters = " << max_iters
          << "\ntrace = " << (trace ? "true" : "false") << '\n';
    }
    MethodSpec spec = method.build(prec, err);
    ScalarFunction f = resolve_function(function);
    Real x0 = Real::from_decimal(guess, prec);
    SolveConfig cfg = SolveConfig::tolerance(prec, tol, max_iters);
    SolveResult r = solve(spec, f, x0, cfg);

    if (trace) {
      for (const auto& rec : r.trace) {
        out << "n=" << rec.n << "  |f(x_n)| = " << rec.abs_f.to_string(3) << '\n';
      }
    }
    out << "root: " << r.root.to_string(40) << '\n';
    out << "status: " << to_string(r.status) << '\n';
    out << "iterations: " << r.iterations << '\n';
    out << "TNFE: " << r.tnfe << '\n';
    return r.status == SolveStatus::Converged ? 0 : 2;
  }
};

struct BenchCmd {
  std::string suite = "all";
  std::string methods = "om8";
  std::string out_path;
  std::string format = "csv";
  int digits = 1000;
  std::string tol = "1e-50";
  int max_iters = 100;

  std::vector<MethodSpec> method_list(Precision prec, std::ostream& err) const {
    std::vector<MethodSpec> list;
    std::stringstream ss(methods);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name.empty()) continue;
      MethodFlags flags;
      flags.method = name;
      list.push_back(flags.build(prec, err));
    }
    if (list.empty()) throw CLI::ValidationError("--methods must name at least one method");
    return list;
  }

  int run(std::ostream& out, std::ostream& err, bool verbose) const {
    Precision prec(digits);
    if (verbose) {
      err << "[bench]\nsuite = " << suite << "\nmethods = " << methods
          << "\nout = " << out_path << "\nformat = " << format << "\ndigits = " << digits
          << "\ntol = " << tol << "\nmax-iters = " << max_iters << '\n';
    }
    auto list = method_list(prec, err);
    auto cases = reference_cases(list);

    std::string text;
    auto render = [&](const BenchmarkReport& report) {
      return format == "markdown" ? emit_markdown(report) : emit_csv(report);
    };
    if (suite == "table2") {
      text = render(run_tnfe12(cases, prec));
    } else if (suite == "table3") {
      text = render(run_tolerance(cases, Real::from_decimal(tol, prec), prec, max_iters));
    } else {
      BenchmarkReport t2 = run_tnfe12(cases, prec);
      BenchmarkReport t3 =
          run_tolerance(cases, Real::from_decimal(tol, prec), prec, max_iters);
      if (format == "markdown") {
        text = emit_markdown(t2) + "\n" + emit_markdown(t3);
      } else {
        std::string csv3 = emit_csv(t3);
        text = emit_csv(t2) + csv3.substr(csv3.find('\n') + 1);
      }
    }

    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw CLI::ValidationError("cannot open output file '" + out_path + "'");
      file << text;
      out << "wrote " << out_path << '\n';
    }
    return 0;
  }
};

struct CocCmd {
  std::string function, guess;
  MethodFlags method;
  int digits = 1000;

  int run(std::ostream& out, std::ostream& err, bool verbose) const {
    Precision prec(digits);
    if (verbose) {
      err << "[coc]\nfunction = " << function << "\nguess = " << guess << '\n';
      method.echo(err);
      err << "digits = " << digits << '\n';
    }
    MethodSpec spec = method.build(prec, err);
    ScalarFunction f = resolve_function(function);
    Real x0 = Real::from_decimal(guess, prec);

    // Long trace: run down toward the precision floor so several
    // asymptotic steps land inside the measurement window.
    SolveConfig cfg = SolveConfig::tolerance(
        prec, "1e-" + std::to_string(3 * digits / 4), 500);
    SolveResult r = solve(spec, f, x0, cfg);
    if (r.status != SolveStatus::Converged) {
      err << "no convergent trace (status: " << to_string(r.status) << ")\n";
      return 2;
    }

    std::vector<Real> errors;
    bool increment_based = false;
    if (is_builtin(function)) {
      Real root = reference_root(function, Precision(2 * digits));
      errors = errors_from_trace(r, root);
    } else {
      // No reference root for ad-hoc expressions; successive increments
      // stand in for the errors (worth about +-0.2 extra tolerance).
      increment_based = true;
      for (size_t i = 0; i + 1 < r.trace.size(); ++i) {
        errors.push_back(r.trace[i + 1].x - r.trace[i].x);
      }
    }

    try {
      CocEstimate est = coc(errors, prec);
      out << "COC: " << est.value << '\n';
      out << "spread: " << est.spread << '\n';
      out << "samples: " << est.samples << '\n';
      out << "window: trace[" << est.window.first << ".." << est.window.second << "]\n";
      if (increment_based) out << "basis: increments (no reference root)\n";
      else out << "basis: reference root\n";
    } catch (const ZeroError&) {
      out << "COC: exact (an iterate hit the root exactly)\n";
    }
    return 0;
  }
};

struct BasinCmd {
  std::string polynomial;
  std::vector<double> window{-2, 2, -2, 2};
  std::string resolution = "512x512";
  std::string out_path;
  MethodFlags method;
  int max_iters = 25;
  double tol = 1e-8;

  int run(std::ostream& out, std::ostream& err, bool verbose) const {
    if (verbose) {
      err << "[basin]\npolynomial = " << polynomial << "\nwindow = " << window[0] << ','
          << window[1] << ',' << window[2] << ',' << window[3]
          << "\nresolution = " << resolution << "\nout = " << out_path << '\n';
      method.echo(err);
      err << "max-iters = " << max_iters << "\ntol = " << tol << '\n';
    }
    BasinConfig cfg;
    cfg.re_min = window[0];
    cfg.re_max = window[1];
    cfg.im_min = window[2];
    cfg.im_max = window[3];
    cfg.max_iters = max_iters;
    cfg.tol = tol;
    cfg.method = MethodSpec::kind_from_string(method.method);
    cfg.alpha = std::stod(method.alpha);
    cfg.beta = std::stod(method.beta);
    cfg.gamma = std::stod(method.gamma);
    cfg.delta = std::stod(method.delta);
    cfg.shift_exponent = method.shift_exponent;
    cfg.shift_scale = std::stod(method.shift_scale);

    std::stringstream ss(polynomial);
    std::string item;
    while (std::getline(ss, item, ',')) {
      cfg.polynomial.emplace_back(std::stod(item), 0.0);
    }

    auto xpos = resolution.find('x');
    if (xpos == std::string::npos) {
      throw CLI::ValidationError("--resolution must look like 512x512");
    }
    cfg.width = std::stoi(resolution.substr(0, xpos));
    cfg.height = std::stoi(resolution.substr(xpos + 1));

    BasinImage img = render_basin(cfg);
    write_ppm(img, out_path);
    out << "wrote " << out_path << " (" << cfg.width << "x" << cfg.height << ")\n";
    return 0;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"High-precision multipoint root-finding toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value configuration file (flags override)");
  app.allow_config_extras(CLI::config_extras_mode::error);

  bool verbose = false;
  app.add_flag("--verbose", verbose, "echo the effective options to stderr");

  SolveCmd solve_cmd;
  auto* solve_app = app.add_subcommand("solve", "find one root of a function");
  solve_app->add_option("--function", solve_cmd.function, "builtin id (f1..f7) or expression")
      ->required();
  solve_app->add_option("--guess", solve_cmd.guess, "starting point (decimal)")->required();
  solve_cmd.method.attach(solve_app);
  solve_app->add_option("--digits", solve_cmd.digits, "working precision in digits");
  solve_app->add_option("--tol", solve_cmd.tol, "stop when |f(x_{n+1})| < tol");
  solve_app->add_option("--max-iters", solve_cmd.max_iters, "iteration budget");
  solve_app->add_flag("--trace", solve_cmd.trace, "print per-iteration |f(x_n)|");

  BenchCmd bench_cmd;
  auto* bench_app = app.add_subcommand("bench", "reproduce the benchmark tables");
  bench_app->add_option("--suite", bench_cmd.suite, "table2|table3|all")
      ->check(CLI::IsMember({"table2", "table3", "all"}));
  bench_app->add_option("--methods", bench_cmd.methods, "comma list of methods");
  bench_app->add_option("--out", bench_cmd.out_path, "output path (default stdout)");
  bench_app->add_option("--format", bench_cmd.format, "csv|markdown")
      ->check(CLI::IsMember({"csv", "markdown"}));
  bench_app->add_option("--digits", bench_cmd.digits, "working precision in digits");
  bench_app->add_option("--tol", bench_cmd.tol, "tolerance for the table3 protocol");
  bench_app->add_option("--max-iters", bench_cmd.max_iters, "table3 iteration budget");

  CocCmd coc_cmd;
  auto* coc_app = app.add_subcommand("coc", "measure the computational order of convergence");
  coc_app->add_option("--function", coc_cmd.function, "builtin id (f1..f7) or expression")
      ->required();
  coc_app->add_option("--guess", coc_cmd.guess, "starting point (decimal)")->required();
  coc_cmd.method.attach(coc_app);
  coc_app->add_option("--digits", coc_cmd.digits, "working precision in digits");

  BasinCmd basin_cmd;
  auto* basin_app = app.add_subcommand("basin", "render attraction basins to a PPM image");
  basin_app->add_option("--polynomial", basin_cmd.polynomial,
                        "ascending coefficients c0,c1,...,cn")
      ->required();
  basin_app->add_option("--window", basin_cmd.window, "re_min re_max im_min im_max")
      ->expected(4);
  basin_app->add_option("--resolution", basin_cmd.resolution, "WxH pixels");
  basin_app->add_option("--out", basin_cmd.out_path, "output .ppm path")->required();
  basin_cmd.method.attach(basin_app);
  basin_app->add_option("--max-iters", basin_cmd.max_iters, "iteration cap per pixel");
  basin_app->add_option("--tol", basin_cmd.tol, "root classification distance");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help() << '\n' << kGrammar;
    return 1;
  }

  try {
    if (solve_app->parsed()) return solve_cmd.run(out, err, verbose);
    if (bench_app->parsed()) return bench_cmd.run(out, err, verbose);
    if (coc_app->parsed()) return coc_cmd.run(out, err, verbose);
    if (basin_app->parsed()) return basin_cmd.run(out, err, verbose);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << '\n' << kGrammar;
    return 1;
  } catch (const UnknownIdentifier& e) {
    err << "error: " << e.what() << '\n' << kGrammar;
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return 3;
  }
  err << "error: no subcommand\n";
  return 1;
}

int run_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace mproots::cli
