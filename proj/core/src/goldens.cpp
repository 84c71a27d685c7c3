#include "blowuplab/goldens.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace blowuplab {

std::map<std::string, double> read_goldens(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("goldens: cannot open '" + path + "'");
    std::map<std::string, double> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("goldens: malformed line '" + line + "' in " + path);
        const std::string key = line.substr(0, eq);
        out[key] = std::stod(line.substr(eq + 1));
    }
    if (out.empty()) throw std::runtime_error("goldens: no entries in " + path);
    return out;
}

void write_goldens(const std::string& path, const std::map<std::string, double>& values) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("goldens: cannot write '" + path + "'");
    out << "# ground-state reference constants (bisection shooting + Richardson)\n";
    out << "# regenerate with: blowuplab regen-goldens\n";
    out << std::setprecision(17);
    for (const auto& [k, v] : values) out << k << "=" << v << "\n";
}

std::string default_goldens_path() {
    if (const char* env = std::getenv("BLOWUPLAB_GOLDENS")) return env;
#ifdef BLOWUPLAB_SOURCE_DIR
    return std::string(BLOWUPLAB_SOURCE_DIR) + "/data/golden_constants.txt";
#else
    return "data/golden_constants.txt";
#endif
}

}  // namespace blowuplab
