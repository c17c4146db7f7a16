#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lensembed::cli {

enum exit_code : int { ok = 0, mismatch = 1, usage = 2, budget = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { json, csv, human };

struct Command {
  std::string name;
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::vector<std::int64_t> terms;  // eval, dual, tiling multiplicities
  std::vector<std::int64_t> sigma;
  bool all = false;
  bool allow_sum = false;
  std::int64_t min_p = 2;
  std::int64_t max_p = 0;
  std::int64_t cap = 0;
  std::vector<std::string> types;
  Format format = Format::json;
  unsigned jobs = 1;
  std::optional<std::string> cache_dir;
  bool force = false;
  bool all_records = false;
  std::uint64_t budget = 100'000'000;
  double unit = 12.0;
  bool help = false;
  std::string help_text;
};

// Throws UsageError on malformed or out-of-range input.
Command parse(const std::vector<std::string>& args);

int run(const Command& cmd, std::ostream& out, std::ostream& err);

// parse + run with usage errors reported on err.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lensembed::cli
