#pragma once

// Command-line front end. Everything except main() lives here so the tests
// can drive it in process.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <exception>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "dualcs/fock.hpp"
#include "dualcs/states.hpp"

namespace dualcs::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailure = 1,
  kDivergence = 2,
  kUsage = 3,
  kSupportDomain = 4,
};

/// "RE+IMi", "RE-IMi", "RE", "IMi", "i", "-i". Throws std::invalid_argument.
std::complex<double> parse_complex(std::string_view text);

/// "start:stop:steps" -> steps equally spaced values including both ends.
std::vector<double> parse_grid(std::string_view text);

/// Comma-separated reals; the empty string gives an empty list.
std::vector<double> parse_list(std::string_view text);

/// Fixed 17-significant-digit rendering used by every table.
std::string format_double(double v);

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::string comment;  ///< run settings, written as a leading "# ..." line
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> footer;
};

void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);

struct Preset {
  std::string name = "ho1d";
  double k = 1.0;       ///< su11 Bargmann index, b = [2k]
  std::string a;        ///< geometric: single value; custom: list
  std::string b;        ///< custom: list
};

ModelParams model_from_preset(const Preset& preset);

/// Evaluates fn(0) .. fn(n-1) on up to `threads` workers. Results keep index
/// order; the lowest-index exception is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t n, unsigned threads,
                            const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < n; i += stride) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

struct Check {
  std::string name;
  double error = 0.0;
  double tolerance = 0.0;
  std::string status;  ///< pass, fail or skip
  std::string note;
};

struct VerifyOptions {
  std::size_t identity_dim = 15;
  std::size_t nodes = 200;
  double beta = 1.0;
};

/// Invariant suite for one model and family.
std::vector<Check> run_checks(const ModelParams& model, Family family, const VerifyOptions& opts);

/// Exit status for an exception escaping a subcommand.
int exit_code_for(const std::exception& e);

/// Full command line; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dualcs::cli
