// lexconf: generate A(n), find its period, fold it into a finite incidence
// matrix, and verify the result.
//
// Exit codes: 0 success, 1 other error, 2 usage, 3 row budget exhausted,
// 4 verification found a violation, 5 I/O or checkpoint error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lexconf/bitkernels.hpp"
#include "lexconf/checkpoint.hpp"
#include "lexconf/errors.hpp"
#include "lexconf/fold.hpp"
#include "lexconf/galfs.hpp"
#include "lexconf/isomorphism.hpp"
#include "lexconf/period.hpp"
#include "lexconf/persistence.hpp"
#include "lexconf/rowlog.hpp"
#include "lexconf/verifier.hpp"

namespace fs = std::filesystem;
using namespace lexconf;

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kBudget = 3, kViolation = 4, kIo = 5 };

constexpr const char* kCheckpointDirEnv = "LEXCONF_CHECKPOINT_DIR";

class UsageError : public Error {
 public:
  using Error::Error;
};

// Accepts 1000000, 10^6 and 1e6.
Index parse_count(const std::string& text) {
  auto digits = [&](const std::string& s) -> Index {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("not a row count: " + text);
    return std::stoull(s);
  };
  auto power = [&](Index base, Index exp) {
    Index out = 1;
    for (Index i = 0; i < exp; ++i) {
      if (__builtin_mul_overflow(out, base, &out)) throw UsageError("row count too large: " + text);
    }
    return out;
  };
  if (auto caret = text.find('^'); caret != std::string::npos)
    return power(digits(text.substr(0, caret)), digits(text.substr(caret + 1)));
  if (auto e = text.find_first_of("eE"); e != std::string::npos) {
    Index out = 0;
    if (__builtin_mul_overflow(digits(text.substr(0, e)), power(10, digits(text.substr(e + 1))), &out))
      throw UsageError("row count too large: " + text);
    return out;
  }
  return digits(text);
}

fs::path checkpoint_dir() {
  const char* env = std::getenv(kCheckpointDirEnv);
  return env && *env ? fs::path(env) : fs::path(".");
}

// Relative checkpoint paths live in the default checkpoint directory.
fs::path resolve_checkpoint(const std::string& path) {
  fs::path p(path);
  return p.is_absolute() ? p : checkpoint_dir() / p;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("cannot write " + path);
}

MatrixFormat input_format(const std::string& name) {
  if (name == "p1") return MatrixFormat::p1;
  if (name == "sparse") return MatrixFormat::sparse;
  if (name == "dense") return MatrixFormat::dense;
  return MatrixFormat::automatic;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// gen

struct GenArgs {
  unsigned n = 0;
  Index rows = 0;
  std::string out;
  std::string checkpoint;
  Index checkpoint_rows = 1'000'000;
  unsigned checkpoint_seconds = 600;
  unsigned progress = 0;
};

int cmd_gen(const GenArgs& a) {
  if (!a.checkpoint.empty() && (a.out.empty() || a.out == "-"))
    throw UsageError("--checkpoint needs --out: the row log must be a file to resume");
  if (a.out.empty() || a.out == "-") {
    Generator g(a.n);
    std::string buf;
    for (Index i = 0; i < a.rows; ++i) {
      const Index k = g.next_k();
      append_row_line(buf, k, g.advance());
      if (buf.size() >= (1u << 16)) {
        std::cout << buf;
        buf.clear();
      }
    }
    std::cout << buf;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to standard output");
    return kOk;
  }
  GenJobOptions opt;
  opt.log = a.out;
  if (!a.checkpoint.empty()) opt.checkpoint = resolve_checkpoint(a.checkpoint);
  opt.checkpoint_every_rows = a.checkpoint_rows;
  opt.checkpoint_every = std::chrono::seconds(a.checkpoint_seconds);
  opt.progress_every = std::chrono::seconds(a.progress);
  const auto t0 = std::chrono::steady_clock::now();
  opt.on_progress = [&](Index rows) {
    std::cerr << "gen n=" << a.n << " rows=" << rows << " rows/s=" << static_cast<Index>(rows / seconds_since(t0))
              << "\n";
  };
  const auto r = generate_to_log(a.n, a.rows, opt);
  if (r.resumed_rows > 0) std::cerr << "resumed from row " << r.resumed_rows << "\n";
  return kOk;
}

// period

struct PeriodArgs {
  std::optional<unsigned> n;
  std::string max_rows = "10^7";
  std::string checkpoint;
  std::string resume;
  Index checkpoint_rows = 1'000'000;
  unsigned checkpoint_seconds = 600;
  unsigned progress = 0;
  std::string format = "text";
  bool timing = false;
};

std::string period_text(const PeriodResult& r) {
  std::ostringstream os;
  os << "n=" << r.n << " pp=" << r.pp << " p=" << r.p << "\n";
  os << "breadth: " << r.b_breadth << "\n";
  os << "max row length: " << r.l_max << "\n";
  os << "zero-frontier shortcut: " << (r.case1 ? "yes" : "no") << "\n";
  os << "rows examined: " << r.rows_examined << "\n";
  os << "minimal fold multiplier: " << minimal_fold_multiplier(r) << "\n";
  return os.str();
}

nlohmann::ordered_json period_json(const PeriodResult& r) {
  nlohmann::ordered_json j;
  j["status"] = "found";
  j["n"] = r.n;
  j["preperiod"] = r.pp;
  j["period"] = r.p;
  j["breadth"] = r.b_breadth;
  j["max_row_length"] = r.l_max;
  j["zero_frontier_shortcut"] = r.case1;
  j["rows_examined"] = r.rows_examined;
  j["minimal_fold_multiplier"] = minimal_fold_multiplier(r);
  return j;
}

int cmd_period(const PeriodArgs& a) {
  const Index max_rows = parse_count(a.max_rows);
  if (max_rows < 1) throw UsageError("--max-rows must be at least 1");
  if (!a.n && a.resume.empty()) throw UsageError("-n is required unless --resume is given");

  std::optional<Checkpoint> start;
  if (!a.resume.empty()) {
    start = load_checkpoint(resolve_checkpoint(a.resume));
    if (a.n && *a.n != start->generator.order())
      throw UsageError("checkpoint belongs to n = " + std::to_string(start->generator.order()));
  }
  const unsigned n = start ? start->generator.order() : *a.n;
  const fs::path ckpt_path = a.checkpoint.empty() ? checkpoint_dir() / ("period-n" + std::to_string(n) + ".ckpt")
                                                  : resolve_checkpoint(a.checkpoint);

  const auto t0 = std::chrono::steady_clock::now();
  PeriodOptions opt;
  opt.checkpoint_every_rows = a.checkpoint_rows;
  opt.checkpoint_every = std::chrono::seconds(a.checkpoint_seconds);
  opt.on_checkpoint = [&](const Checkpoint& cp) { save_checkpoint(cp, ckpt_path); };
  opt.progress_every = std::chrono::seconds(a.progress);
  opt.on_progress = [&](Index rows, std::size_t depth) {
    std::cerr << "period n=" << n << " rows=" << rows << " stack=" << depth
              << " rows/s=" << static_cast<Index>(rows / seconds_since(t0)) << "\n";
  };

  PeriodSearch search = start ? PeriodSearch::resume(*start, opt) : PeriodSearch(n, opt);
  const Index done = search.rows_examined();
  std::optional<PeriodResult> result;
  if (done < max_rows) result = search.run(max_rows - done);
  const double wall = seconds_since(t0);

  if (!result) {
    save_checkpoint(search.checkpoint(), ckpt_path);
    if (a.format == "json") {
      nlohmann::ordered_json j;
      j["status"] = "budget_exhausted";
      j["n"] = n;
      j["rows_examined"] = search.rows_examined();
      j["checkpoint"] = ckpt_path.string();
      if (a.timing) j["wall_time_s"] = wall;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "budget exhausted: no period within " << search.rows_examined() << " rows for n=" << n << "\n";
      std::cout << "checkpoint: " << ckpt_path.string() << "\n";
      if (a.timing) std::cout << "wall time: " << wall << " s\n";
    }
    return kBudget;
  }
  if (a.format == "json") {
    auto j = period_json(*result);
    if (a.timing) j["wall_time_s"] = wall;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << period_text(*result);
    if (a.timing) std::cout << "wall time: " << wall << " s\n";
  }
  return kOk;
}

// fold

struct FoldArgs {
  unsigned n = 0;
  std::optional<Index> m;
  std::optional<Index> v;
  bool compact = false;
  std::string format = "sparse";
  std::string out;
  std::string row_log;
  bool allow_short_period = false;
  std::string max_rows = "10^7";
};

std::vector<SparseRow> rows_from_log(const std::string& path, Index first, Index last) {
  std::vector<SparseRow> rows;
  for (auto& row : read_row_log(path))
    if (row.index >= first && row.index <= last) rows.push_back(std::move(row));
  if (rows.size() != last - first + 1 || rows.front().index != first)
    throw PreconditionError("row log " + path + " does not hold rows " + std::to_string(first) + ".." +
                            std::to_string(last));
  return rows;
}

int cmd_fold(const FoldArgs& a) {
  const PeriodResult r = detect_period(a.n, parse_count(a.max_rows));
  IncidenceMatrix b;
  if (a.compact) {
    if (a.m || a.v) throw UsageError("--compact takes neither --m nor --v");
    b = a.row_log.empty() ? compact_plane(r) : compact_plane(r, rows_from_log(a.row_log, 1, r.p));
  } else {
    const auto hyp = a.allow_short_period ? FoldHypotheses::allow_short_period : FoldHypotheses::enforce;
    const FoldParams params = make_fold_params(r, a.m.value_or(minimal_fold_multiplier(r)), a.v, hyp);
    b = a.row_log.empty() ? fold(r, params, hyp)
                          : fold(r, params, rows_from_log(a.row_log, params.v + 1, params.v + params.p_bar), hyp);
  }
  write_output(a.format == "p1" ? to_p1(b) : to_sparse(b), a.out);
  return kOk;
}

// verify

struct VerifyArgs {
  std::string file;
  std::optional<unsigned> n;
  std::optional<unsigned> iso;
  bool aut = false;
  std::string levi;
  std::string input_format = "auto";
};

int cmd_verify(const VerifyArgs& a) {
  const IncidenceMatrix b = read_matrix_file(a.file, input_format(a.input_format));
  if (b.rows() == 0) throw ParseError(a.file + ": empty matrix");
  const unsigned n = a.n ? *a.n : static_cast<unsigned>(b.row_weight(0)) - 1;
  if (!a.n && b.row_weight(0) == 0) throw UsageError("first line is empty; pass -n");

  VerificationReport report;
  const auto outcome = verify_configuration(b, n);
  if (const auto* bad = std::get_if<Violation>(&outcome)) {
    report.violation = *bad;
    std::cout << report.to_text();
    return kViolation;
  }
  const auto& c = std::get<Configuration>(outcome);
  report.v = c.v;
  report.k = c.k;
  report.plane = is_projective_plane(c);
  if (a.iso) {
    report.iso_order = *a.iso;
    report.isomorphic = isomorphic(c, reference_plane(*a.iso));
  }
  if (a.aut) report.automorphisms = automorphism_count(c);
  if (!a.levi.empty()) write_output(levi_dot(c), a.levi);
  std::cout << report.to_text();
  return kOk;
}

// galfs

int cmd_galfs(const std::string& file, const std::string& out, const std::string& format) {
  const auto cells = compute_galfs(read_matrix_file(file, input_format(format)));
  std::string text;
  for (const auto& c : cells) text += std::to_string(c.row) + "," + std::to_string(c.col) + "\n";
  write_output(text, out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy lexicographic symmetric configurations: generate, find periods, fold, verify"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write rows of A(n) in row-log format");
  gen_cmd->add_option("-n", gen.n, "Order n (row weight n+1)")->required()->check(CLI::Range(1u, kMaxOrder));
  gen_cmd->add_option("--rows", gen.rows, "Number of rows")
      ->required()
      ->check(CLI::Range(Index{1}, std::numeric_limits<Index>::max()));
  gen_cmd->add_option("--out", gen.out, "Row log path (default: standard output)");
  gen_cmd->add_option("--checkpoint", gen.checkpoint, "Checkpoint file; resumed from when present");
  gen_cmd->add_option("--checkpoint-rows", gen.checkpoint_rows, "Rows between checkpoints")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--checkpoint-seconds", gen.checkpoint_seconds, "Seconds between checkpoints");
  gen_cmd->add_option("--progress", gen.progress, "Seconds between progress lines on stderr (0: off)");

  PeriodArgs period;
  auto* period_cmd = app.add_subcommand("period", "Find the preperiod and period of A(n)");
  period_cmd->add_option("-n", period.n, "Order n")->check(CLI::Range(1u, kMaxOrder));
  period_cmd->add_option("--max-rows", period.max_rows, "Total row budget, e.g. 5000000, 10^7 or 6e6");
  period_cmd->add_option("--checkpoint", period.checkpoint, "Checkpoint file (default: period-n<N>.ckpt)");
  period_cmd->add_option("--resume", period.resume, "Continue from this checkpoint");
  period_cmd->add_option("--checkpoint-rows", period.checkpoint_rows, "Rows between checkpoints")
      ->check(CLI::PositiveNumber);
  period_cmd->add_option("--checkpoint-seconds", period.checkpoint_seconds, "Seconds between checkpoints");
  period_cmd->add_option("--progress", period.progress, "Seconds between progress lines on stderr (0: off)");
  period_cmd->add_option("--format", period.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  period_cmd->add_flag("--timing", period.timing, "Include wall time in the report");

  FoldArgs fold_args;
  auto* fold_cmd = app.add_subcommand("fold", "Wrap the periodic part of A(n) into a finite incidence matrix");
  fold_cmd->add_option("-n", fold_args.n, "Order n")->required()->check(CLI::Range(1u, kMaxOrder));
  fold_cmd->add_option("--m", fold_args.m, "Period multiplier (default: smallest valid)")
      ->check(CLI::PositiveNumber);
  fold_cmd->add_option("--v", fold_args.v, "Row offset (default: preperiod + m*p)");
  fold_cmd->add_flag("--compact", fold_args.compact, "Leading p x p block (preperiod 0 only)");
  fold_cmd->add_option("--format", fold_args.format, "Output format")->check(CLI::IsMember({"sparse", "p1"}));
  fold_cmd->add_option("--out", fold_args.out, "Output path (default: standard output)");
  fold_cmd->add_option("--row-log", fold_args.row_log, "Take rows from this row log instead of regenerating");
  fold_cmd->add_flag("--allow-short-period", fold_args.allow_short_period,
                     "Accept m*p < 2*(max row length); the output is still fully verified");
  fold_cmd->add_option("--max-rows", fold_args.max_rows, "Row budget for the period search");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check configuration axioms of an incidence matrix");
  verify_cmd->add_option("file", verify.file, "Matrix file (P1, sparse or dense)")->required();
  verify_cmd->add_option("-n", verify.n, "Order n (default: first row weight - 1)");
  verify_cmd->add_option("--iso", verify.iso, "Compare with PG(2,q)");
  verify_cmd->add_flag("--aut", verify.aut, "Count automorphisms");
  verify_cmd->add_option("--levi", verify.levi, "Write the Levi graph as DOT");
  verify_cmd->add_option("--input-format", verify.input_format, "Input format")
      ->check(CLI::IsMember({"auto", "p1", "sparse", "dense"}));

  std::string galfs_file;
  std::string galfs_out;
  std::string galfs_format = "auto";
  auto* galfs_cmd = app.add_subcommand("galfs", "List galf cells of a finite 0-1 matrix");
  galfs_cmd->add_option("file", galfs_file, "Matrix file")->required();
  galfs_cmd->add_option("--out", galfs_out, "Output path (default: standard output)");
  galfs_cmd->add_option("--input-format", galfs_format, "Input format")
      ->check(CLI::IsMember({"auto", "p1", "sparse", "dense"}));

  app.add_subcommand("info", "Show build and runtime details");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (period_cmd->parsed()) return cmd_period(period);
    if (fold_cmd->parsed()) return cmd_fold(fold_args);
    if (verify_cmd->parsed()) return cmd_verify(verify);
    if (galfs_cmd->parsed()) return cmd_galfs(galfs_file, galfs_out, galfs_format);
    std::cout << "simd: " << simd::active().name << "\n";
    std::cout << "checkpoint directory: " << checkpoint_dir().string() << "\n";
    return kOk;
  } catch (const BudgetExhausted& e) {
    std::cerr << "lexconf: " << e.what() << "\n";
    return kBudget;
  } catch (const UsageError& e) {
    std::cerr << "lexconf: usage: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidParameter& e) {
    std::cerr << "lexconf: usage: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "lexconf: " << e.what() << "\n";
    return kIo;
  } catch (const CorruptCheckpoint& e) {
    std::cerr << "lexconf: " << e.what() << "\n";
    return kIo;
  } catch (const VersionMismatch& e) {
    std::cerr << "lexconf: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    std::cerr << "lexconf: error: " << e.what() << "\n";
    return kFailure;
  } catch (const InvariantViolation& e) {
    std::cerr << "lexconf: internal error: " << e.what() << "\n";
    return kFailure;
  }
}
