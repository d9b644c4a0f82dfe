#include "dichogen/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include "dichogen/genlang.hpp"
#include "dichogen/numtree.hpp"
#include "dichogen/stattests.hpp"
#include "dichogen/viz.hpp"

namespace dichogen::cli {

namespace {

// Thrown for semantic usage problems found after CLI11 parsing succeeded.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Source {
  std::string spec_path;
  std::string builtin_name;
  CLI::Option* spec_opt = nullptr;
  CLI::Option* builtin_opt = nullptr;

  void attach(CLI::App* cmd) {
    spec_opt = cmd->add_option("--spec", spec_path, "generator spec file (JSON or key = value)");
    builtin_opt = cmd->add_option("--builtin", builtin_name, "registry key, see `builtins`");
    spec_opt->excludes(builtin_opt);
    builtin_opt->excludes(spec_opt);
  }

  GeneratorSpec load() const {
    if (spec_opt->count() == 0 && builtin_opt->count() == 0) {
      throw UsageError("one of --spec or --builtin is required");
    }
    return lang::compile(spec_opt->count() ? lang::load_spec(spec_path)
                                           : lang::builtin(builtin_name));
  }
};

void check_level_cap(std::int64_t level, std::int64_t max_level) {
  if (level < -1) throw UsageError("--level must be >= -1");
  if (level > max_level) {
    throw UsageError("--level " + std::to_string(level) + " exceeds --max-level " +
                     std::to_string(max_level));
  }
}

template <class Range>
std::string join(const Range& items, const std::string& sep) {
  std::string out;
  bool first = true;
  for (const auto& item : items) {
    if (!first) out += sep;
    first = false;
    if constexpr (std::is_same_v<std::decay_t<decltype(item)>, ExtNat>) {
      out += item.to_string();
    } else {
      out += item.str();
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

void print_report(std::ostream& out, const ContinuativityReport& r) {
  out << "certificate: " << to_string(r.certificate) << '\n';
  out << "absorption: " << to_string(r.absorption) << '\n';
  out << "checked_level: " << r.checked_level << '\n';
  if (r.witness) {
    out << "witness: level " << r.witness->level << ", index " << r.witness->index << '\n';
  } else {
    out << "witness: none\n";
  }
  out << "extended_continuative: " << (r.extended_continuative ? "true" : "false") << '\n';
}

}  // namespace

std::string format_word(const Word& values, const std::string& sep) {
  const bool digits =
      sep.empty() && std::all_of(values.begin(), values.end(), [](Value v) { return v >= 0 && v < 10; });
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i && !digits) out += sep.empty() ? " " : sep;
    out += std::to_string(values[i]);
  }
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dichotomic sequence generator and randomness battery", "dicho"};
  app.require_subcommand(1);

  std::int64_t level = 0;
  std::int64_t max_level = 24;
  std::string sep;
  bool extended = false;
  std::string index_text;
  std::uint64_t count = 1;
  double alpha = stats::kDefaultAlpha;
  std::string out_dir;
  std::int64_t depth = 12;
  std::size_t seq_count = 0;

  auto* gen = app.add_subcommand("gen", "print the row E(g, k)");
  Source gen_src;
  gen_src.attach(gen);
  gen->add_option("--level", level, "row level k")->required();
  gen->add_option("--max-level", max_level, "upper bound accepted for --level");
  gen->add_flag("--extended", extended, "include the seeds at both ends");
  gen->add_option("--sep", sep, "separator between values");

  auto* access = app.add_subcommand("access", "random access into an extended row");
  Source access_src;
  access_src.attach(access);
  access->add_option("--level", level, "row level k")->required();
  access->add_option("--index", index_text, "first index i in [0, 2^(k+1)]")->required();
  access->add_option("--count", count, "number of consecutive indices")->check(CLI::PositiveNumber);
  access->add_option("--sep", sep, "separator between values");

  auto* test = app.add_subcommand("test", "run the bit battery on E(g, k)");
  Source test_src;
  test_src.attach(test);
  test->add_option("--level", level, "row level k")->required();
  test->add_option("--max-level", max_level, "upper bound accepted for --level");
  test->add_option("--alpha", alpha, "significance level")->check(CLI::Range(0.0, 1.0));

  auto* plot = app.add_subcommand("plot", "write SVG and CSV diagrams of E(g, k)");
  Source plot_src;
  plot_src.attach(plot);
  plot->add_option("--level", level, "row level k")->required();
  plot->add_option("--max-level", max_level, "upper bound accepted for --level");
  plot->add_option("--out", out_dir, "output directory")->required();

  auto* check = app.add_subcommand("check", "continuativity report");
  Source check_src;
  check_src.attach(check);
  check->add_option("--depth", depth, "rows compared for prefix nesting")->check(CLI::NonNegativeNumber);

  auto* tree = app.add_subcommand("tree", "natural binary tree sequences");
  tree->require_subcommand(1);
  auto* escheme = tree->add_subcommand("escheme", "evolution scheme row of node labels");
  escheme->add_option("--level", level, "row level k")->required();
  escheme->add_option("--max-level", max_level, "upper bound accepted for --level");
  auto* concat = tree->add_subcommand("concat", "concatenated scheme rows");
  concat->add_option("--count", seq_count, "number of terms")->required();
  auto* a025480 = tree->add_subcommand("a025480", "zero-joined scheme");
  a025480->add_option("--count", seq_count, "number of terms")->required();

  auto* builtins = app.add_subcommand("builtins", "list the registered generators");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help on the app or on a subcommand
      CLI::App* target = &app;
      while (!target->get_subcommands().empty()) target = target->get_subcommands().front();
      out << target->help();
      return kOk;
    }
    err << "usage error: " << e.what() << "\nrun with --help for usage\n";
    return kUsage;
  }

  try {
    if (gen->parsed()) {
      check_level_cap(level, max_level);
      const GeneratorSpec spec = gen_src.load();
      out << format_word(extended ? extended_row(spec, level) : row(spec, level), sep) << '\n';
    } else if (access->parsed()) {
      if (level < 0) throw UsageError("--level must be >= 0");
      BigInt first;
      try {
        first = BigInt(index_text);
      } catch (const std::exception&) {
        throw UsageError("--index: not an integer: " + index_text);
      }
      const GeneratorSpec spec = access_src.load();
      Word values;
      for (std::uint64_t c = 0; c < count; ++c) {
        values.push_back(dicho_access(spec, static_cast<std::uint64_t>(level), first + c));
      }
      out << format_word(values, sep) << '\n';
    } else if (test->parsed()) {
      check_level_cap(level, max_level);
      const GeneratorSpec spec = test_src.load();
      const auto report = stats::run_battery(row(spec, level), alpha);
      out << stats::report_json(report) << '\n';
      const bool too_short = std::any_of(report.begin(), report.end(),
                                         [](const stats::TestResult& r) { return r.too_short; });
      if (too_short) {
        err << "some tests were skipped: sequence shorter than their minimum length\n";
        return kBatteryTooShort;
      }
    } else if (plot->parsed()) {
      check_level_cap(level, max_level);
      const GeneratorSpec spec = plot_src.load();
      const Word values = row(spec, level);
      const std::filesystem::path dir(out_dir);
      std::filesystem::create_directories(dir);
      const auto emit = [&](const std::string& stem, const viz::Diagram& d) {
        write_file(dir / (stem + ".svg"), viz::render_svg(d));
        write_file(dir / (stem + ".csv"), viz::emit_csv(d));
      };
      emit("bar", viz::bar_diagram(values));
      emit("dft", viz::dft_diagram(values));
      emit("walk", viz::walk_diagram(values));
      emit("scatter", viz::scatter_diagram(stats::horner_pairs(stats::project_mod2(values))));
      out << "wrote bar, dft, walk and scatter diagrams to " << dir.string() << '\n';
    } else if (check->parsed()) {
      print_report(out, continuativity(check_src.load(), depth));
    } else if (escheme->parsed()) {
      check_level_cap(level, max_level);
      out << join(escheme_row(level), " ") << '\n';
    } else if (concat->parsed()) {
      out << join(scheme_concat(seq_count), " ") << '\n';
    } else if (a025480->parsed()) {
      out << join(zero_joined_scheme(seq_count), " ") << '\n';
    } else if (builtins->parsed()) {
      for (const auto& info : lang::builtin_registry()) {
        out << info.name << "\t" << info.formula << "\ta=" << info.config.a
            << " b=" << info.config.b << '\n';
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const lang::ParseError& e) {
    err << "spec error: " << e.what() << '\n';
    return kSpecError;
  } catch (const lang::SpecError& e) {
    err << "spec error: " << e.what() << '\n';
    return kSpecError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"dicho"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace dichogen::cli
