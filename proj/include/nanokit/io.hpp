#pragma once
#include <string>
#include <utility>
#include <vector>

namespace nanokit {

// Output root resolution: explicit flag, then NANOKIT_OUTPUT_DIR, then the
// working directory.  The directory is created if missing.
std::string resolve_output_dir(const std::string& flag_value);

// Shortest round-trip decimal form of a double (%.17g).
std::string format_double(double x);

// Comma-separated CSV with a header row; numeric cells use format_double so
// identical data gives byte-identical files.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// One key=value per line, in the order given.
void write_summary(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& kv);

}  // namespace nanokit
