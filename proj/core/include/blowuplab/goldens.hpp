#pragma once

#include <map>
#include <string>

namespace blowuplab {

/// Plain-text key=value store for the frozen oracle constants.
/// Lines starting with '#' are comments.
std::map<std::string, double> read_goldens(const std::string& path);
void write_goldens(const std::string& path, const std::map<std::string, double>& values);

/// Default location: $BLOWUPLAB_GOLDENS if set, else the repository copy
/// baked in at configure time, else "data/golden_constants.txt".
std::string default_goldens_path();

}  // namespace blowuplab
