#pragma once

#include <string>
#include <vector>

#include "mfbose/cli/config.hpp"

namespace mfbose::cli {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// %.17g; "nan", "inf" and "-inf" for non-finite values in CSV.
std::string format_double(double v);

/// JSON text with every floating-point number printed as %.17g (null when
/// non-finite). Integers, strings and booleans follow nlohmann's dump.
std::string dump_json(const Json& j);

/// Header plus one line per row, LF endings.
std::string table_to_csv(const Table& t);

/// {"meta": ..., "rows": [{column: value, ...}, ...]}
std::string table_to_json(const Table& t, const Json& meta);

/// Writes to path, or to stdout when path is empty.
void write_output(const std::string& text, const std::string& path);

/// {"command", "config", "version"} for the meta block.
Json make_meta(const RunConfig& cfg);

}  // namespace mfbose::cli
