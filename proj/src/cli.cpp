#include "lattice_sight/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "lattice_sight/forest.hpp"
#include "lattice_sight/numtheory.hpp"
#include "lattice_sight/render.hpp"
#include "lattice_sight/serialize.hpp"
#include "lattice_sight/visibility.hpp"
#include "lattice_sight/zeta.hpp"

namespace lsight::cli {

namespace {

using u64 = std::uint64_t;

// Command-line problems detected after CLI11 parsing (missing flag
// combinations, malformed numbers in positionals).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

BigInt parse_nat(const std::string& text, const char* what) {
  if (text.empty() || !std::all_of(text.begin(), text.end(),
                                   [](unsigned char c) { return std::isdigit(c); })) {
    throw UsageError(std::string(what) + " must be a nonnegative decimal integer, got '" +
                     text + "'");
  }
  return BigInt(text);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit(std::ostream& out, const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + out_path + "'");
  file << payload;
  if (!file) throw std::runtime_error("failed writing output file '" + out_path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

struct Options {
  unsigned b = 1;
  std::vector<unsigned> b_list;
  u64 n = 0;
  unsigned zeta_s = 2;
  double tol = 1e-12;
  u64 cols = 0, rows = 0;
  u64 rmax = 0, smax = 0;
  std::string r_text, s_text;
  std::string method = "brute";
  std::string format = "pbm";
  std::string primes_path, out_path;
  unsigned threads = 1;
  u64 budget = kDefaultCellBudget;
  bool csv = false, plain = false, invert = false;
};

PrimeMatrix matrix_from_options(const Options& opt) {
  if (!opt.primes_path.empty()) {
    PrimeMatrix P = parse_prime_matrix(read_file(opt.primes_path));
    if ((opt.cols != 0 && opt.cols != P.cols) || (opt.rows != 0 && opt.rows != P.rows)) {
      throw UsageError("--cols/--rows disagree with the " + std::to_string(P.cols) + "x" +
                       std::to_string(P.rows) + " matrix in '" + opt.primes_path + "'");
    }
    return P;
  }
  if (opt.cols == 0 || opt.rows == 0) {
    throw UsageError("--cols and --rows are required when no --primes file is given");
  }
  return build_prime_matrix(opt.cols, opt.rows);
}

void cmd_ggcd(const Options& opt, std::ostream& out) {
  const BigInt r = parse_nat(opt.r_text, "r");
  const BigInt s = parse_nat(opt.s_text, "s");
  out << ggcd(opt.b, r, s).str() << '\n';
}

void cmd_visible(const Options& opt, std::ostream& out) {
  const Point p{parse_nat(opt.r_text, "r"), parse_nat(opt.s_text, "s")};
  out << (is_b_visible(opt.b, p) ? "true" : "false") << '\n';
}

void cmd_coeff(const Options& opt, std::ostream& out) {
  const Point p{parse_nat(opt.r_text, "r"), parse_nat(opt.s_text, "s")};
  const Rational a = sight_coefficient(opt.b, p);
  if (opt.plain) {
    out << a.num.str() << '/' << a.den.str() << '\n';
  } else {
    out << to_json(a).dump(2) << '\n';
  }
}

void cmd_density(const Options& opt, std::ostream& out) {
  const DensityReport rep =
      density_report(opt.b, opt.n, method_from_name(opt.method), opt.threads, opt.budget);
  if (opt.csv) {
    out << density_csv_header() << '\n' << density_csv_row(rep) << '\n';
  } else if (opt.plain) {
    out << density_plain(rep);
  } else {
    out << to_json(rep).dump(2) << '\n';
  }
}

void cmd_table(const Options& opt, std::ostream& out) {
  const std::vector<DensityReport> rows =
      table_rows(opt.b_list, opt.n, method_from_name(opt.method), opt.threads);
  if (opt.csv) {
    out << density_csv_header() << '\n';
    for (const auto& rep : rows) out << density_csv_row(rep) << '\n';
  } else if (opt.plain) {
    for (const auto& rep : rows) out << density_plain(rep);
  } else {
    out << to_json(rows).dump(2) << '\n';
  }
}

void cmd_zeta(const Options& opt, std::ostream& out) {
  const ZetaValue z = zeta_int(opt.zeta_s, opt.tol);
  if (opt.plain) {
    out << fmt17(z.value) << '\n';
  } else {
    out << to_json(z).dump(2) << '\n';
  }
}

void cmd_forest_construct(const Options& opt, std::ostream& out) {
  const Forest f = construct_forest(matrix_from_options(opt), opt.b);
  if (opt.plain) {
    out << "r = " << f.anchor.r.str() << '\n'
        << "s = " << f.anchor.s.str() << '\n'
        << "r_modulus = " << f.r_modulus->str() << '\n'
        << "s_modulus = " << f.s_modulus->str() << '\n';
  } else {
    out << to_json(f).dump(2) << '\n';
  }
}

void cmd_forest_verify(const Options& opt, std::ostream& out) {
  Forest f;
  f.b = opt.b;
  f.anchor.r = parse_nat(opt.r_text, "r");
  f.anchor.s = parse_nat(opt.s_text, "s");
  f.n = opt.cols;
  f.m = opt.rows;
  const WitnessGrid W = verify_forest(f);
  if (opt.plain) {
    // Top row first, like the prime-matrix file format.
    for (u64 line = 0; line < W.rows; ++line) {
      const u64 j = W.rows - 1 - line;
      for (u64 i = 0; i < W.cols; ++i) {
        if (i > 0) out << ' ';
        out << W.at(i, j).value.str();
      }
      out << '\n';
    }
  } else {
    out << to_json(W).dump(2) << '\n';
  }
}

void cmd_forest_search(const Options& opt, std::ostream& out) {
  const auto result = find_nearest_forest(opt.b, opt.cols, opt.rows, opt.rmax, opt.smax);
  if (!result) {
    throw std::runtime_error("no " + std::to_string(opt.cols) + "x" + std::to_string(opt.rows) +
                             " " + std::to_string(opt.b) + "-invisible forest anchors within [1," +
                             std::to_string(opt.rmax) + "]x[1," + std::to_string(opt.smax) +
                             "] (larger bounds may still contain one)");
  }
  if (opt.plain) {
    out << "distance_sq = " << result->distance_sq << '\n';
    for (const Forest& f : result->forests) {
      out << "anchor " << f.anchor.r.str() << ' ' << f.anchor.s.str() << '\n';
    }
  } else {
    out << to_json(*result).dump(2) << '\n';
  }
}

void cmd_render(const Options& opt, std::ostream& out) {
  RenderSpec spec;
  spec.format = format_from_name(opt.format);
  spec.n = opt.n;
  spec.b = opt.b;
  spec.invert = opt.invert;
  const VisibilityGrid grid = sieve_grid(opt.b, opt.n, opt.n, opt.budget);
  emit(out, render_grid(grid, spec), opt.out_path);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  std::function<void()> action;

  CLI::App app{"generalized lattice-point visibility toolkit"};
  app.name("lattice-sight");
  app.require_subcommand(1);

  // All integer flags share the same domain: whole numbers >= 1.
  const CLI::Validator positive_int(
      [](std::string& input) -> std::string {
        if (input.empty() ||
            !std::all_of(input.begin(), input.end(),
                         [](unsigned char c) { return std::isdigit(c); })) {
          return "'" + input + "' is not a positive integer";
        }
        if (input.find_first_not_of('0') == std::string::npos) return "must be >= 1";
        return {};
      },
      "INT>=1", "positive");

  const auto add_b = [&](CLI::App* cmd) {
    cmd->add_option("--b", opt.b, "visibility exponent b")->required()->check(positive_int);
  };
  const auto add_point = [&](CLI::App* cmd) {
    cmd->add_option("r", opt.r_text, "abscissa (decimal)")->required();
    cmd->add_option("s", opt.s_text, "ordinate (decimal)")->required();
  };
  const auto add_plain = [&](CLI::App* cmd) {
    cmd->add_flag("--plain", opt.plain, "plain text instead of JSON");
  };
  const auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", opt.threads, "worker threads (never changes results)")
        ->check(positive_int);
  };
  const auto add_budget = [&](CLI::App* cmd) {
    cmd->add_option("--budget", opt.budget, "sieve cell budget")->check(positive_int);
  };

  CLI::App* ggcd_cmd = app.add_subcommand("ggcd", "generalized gcd of r and s");
  add_b(ggcd_cmd);
  add_point(ggcd_cmd);
  ggcd_cmd->callback([&] { action = [&] { cmd_ggcd(opt, out); }; });

  CLI::App* visible_cmd = app.add_subcommand("visible", "is (r,s) b-visible?");
  add_b(visible_cmd);
  add_point(visible_cmd);
  visible_cmd->callback([&] { action = [&] { cmd_visible(opt, out); }; });

  CLI::App* coeff_cmd = app.add_subcommand("coeff", "line-of-sight coefficient s/r^b");
  add_b(coeff_cmd);
  add_point(coeff_cmd);
  add_plain(coeff_cmd);
  coeff_cmd->callback([&] { action = [&] { cmd_coeff(opt, out); }; });

  CLI::App* density_cmd = app.add_subcommand("density", "b-invisible density over [1,n]^2");
  add_b(density_cmd);
  density_cmd->add_option("--n", opt.n, "grid side")->required()->check(positive_int);
  density_cmd->add_option("--method", opt.method, "counting method")
      ->check(CLI::IsMember({"brute", "sieve", "moebius"}));
  add_threads(density_cmd);
  add_budget(density_cmd);
  density_cmd->add_flag("--csv", opt.csv, "CSV instead of JSON");
  add_plain(density_cmd);
  density_cmd->callback([&] { action = [&] { cmd_density(opt, out); }; });

  CLI::App* table_cmd = app.add_subcommand("table", "density reports for several exponents");
  table_cmd->add_option("--b", opt.b_list, "comma-separated exponents")
      ->required()
      ->delimiter(',')
      ->check(positive_int);
  table_cmd->add_option("--n", opt.n, "grid side")->required()->check(positive_int);
  table_cmd->add_option("--method", opt.method, "counting method")
      ->check(CLI::IsMember({"brute", "sieve", "moebius"}));
  add_threads(table_cmd);
  table_cmd->add_flag("--csv", opt.csv, "CSV instead of JSON");
  add_plain(table_cmd);
  table_cmd->callback([&] { action = [&] { cmd_table(opt, out); }; });

  CLI::App* zeta_cmd = app.add_subcommand("zeta", "Riemann zeta at an integer s >= 2");
  zeta_cmd->add_option("s", opt.zeta_s, "argument")->required();
  zeta_cmd->add_option("--tol", opt.tol, "absolute error tolerance (>= 1e-14)");
  add_plain(zeta_cmd);
  zeta_cmd->callback([&] { action = [&] { cmd_zeta(opt, out); }; });

  CLI::App* forest_cmd = app.add_subcommand("forest", "b-invisible forests");
  forest_cmd->require_subcommand(1);

  CLI::App* construct_cmd =
      forest_cmd->add_subcommand("construct", "CRT forest from a prime matrix");
  add_b(construct_cmd);
  construct_cmd->add_option("--cols,--n", opt.cols, "width (x-extent)")
      ->check(positive_int);
  construct_cmd->add_option("--rows,--m", opt.rows, "height (y-extent)")
      ->check(positive_int);
  construct_cmd->add_option("--primes", opt.primes_path,
                            "prime matrix file, top row first");
  add_plain(construct_cmd);
  construct_cmd->callback([&] { action = [&] { cmd_forest_construct(opt, out); }; });

  CLI::App* verify_cmd = forest_cmd->add_subcommand("verify", "witness every cell of a claimed forest");
  add_b(verify_cmd);
  add_point(verify_cmd);
  verify_cmd->add_option("--cols,--n", opt.cols, "width (x-extent)")
      ->required()
      ->check(positive_int);
  verify_cmd->add_option("--rows,--m", opt.rows, "height (y-extent)")
      ->required()
      ->check(positive_int);
  add_plain(verify_cmd);
  verify_cmd->callback([&] { action = [&] { cmd_forest_verify(opt, out); }; });

  CLI::App* search_cmd = forest_cmd->add_subcommand("search", "nearest forest by exhaustive scan");
  add_b(search_cmd);
  search_cmd->add_option("--cols,--n", opt.cols, "width (x-extent)")
      ->required()
      ->check(positive_int);
  search_cmd->add_option("--rows,--m", opt.rows, "height (y-extent)")
      ->required()
      ->check(positive_int);
  search_cmd->add_option("--rmax", opt.rmax, "anchor bound for r")
      ->required()
      ->check(positive_int);
  search_cmd->add_option("--smax", opt.smax, "anchor bound for s")
      ->required()
      ->check(positive_int);
  add_plain(search_cmd);
  search_cmd->callback([&] { action = [&] { cmd_forest_search(opt, out); }; });

  CLI::App* render_cmd = app.add_subcommand("render", "PBM or SVG picture of the invisible set");
  add_b(render_cmd);
  render_cmd->add_option("--n", opt.n, "grid side")->required()->check(positive_int);
  render_cmd->add_option("--format", opt.format, "image format")
      ->check(CLI::IsMember({"pbm", "svg"}));
  render_cmd->add_flag("--invert", opt.invert, "swap foreground and background");
  render_cmd->add_option("--out", opt.out_path, "write to a file instead of stdout");
  add_budget(render_cmd);
  render_cmd->callback([&] { action = [&] { cmd_render(opt, out); }; });

  // Help lands on the deepest subcommand the parser reached.
  const auto active_command = [&]() -> const CLI::App* {
    const CLI::App* a = &app;
    while (!a->get_subcommands().empty()) a = a->get_subcommands().front();
    return a;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << active_command()->help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << active_command()->help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    err << "Run 'lattice-sight --help' for the command grammar.\n";
    return 2;
  }

  try {
    action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    err << "Run 'lattice-sight --help' for the command grammar.\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace lsight::cli
