#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rcp/estimators.hpp"
#include "rcp/rng.hpp"

namespace rcp {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Shortest round-trip decimal representation.
inline std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

/// Run metadata echoed (deterministic fields only) as "#" comment lines at
/// the top of every result file; the wall time lands in a sidecar manifest
/// so result bytes stay reproducible.
struct RunManifest {
    std::string command;
    std::string body;
    int dim = 0;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> extra;

    std::string header_lines() const {
        std::ostringstream os;
        os << "# rcp " << kArtifactVersion << "\n";
        os << "# command=" << command << "\n";
        os << "# body=" << body << " dim=" << dim << "\n";
        os << "# seed=" << seed << " generator=" << kGeneratorName << "\n";
        for (const auto& [k, v] : extra) os << "# " << k << "=" << v << "\n";
        return os.str();
    }
};

/// Atomic write: temp file in the same directory, then rename.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw GeometryError("cannot write " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw GeometryError("cannot rename " + tmp + " -> " + path);
}

struct CsvRow {
    long n = 0;
    double mean = 0.0;
    double stderr_ = 0.0;
    long trials = 0;
    long rejected = 0;
    std::string functional;
};

inline constexpr const char* kCsvHeader =
    "n,mean,stderr,trials,rejected,functional,body,dim,seed";

inline std::string render_csv(const RunManifest& man, const std::vector<CsvRow>& rows) {
    std::ostringstream os;
    os << man.header_lines() << kCsvHeader << "\n";
    for (const CsvRow& r : rows) {
        os << r.n << ',' << format_double(r.mean) << ',' << format_double(r.stderr_)
           << ',' << r.trials << ',' << r.rejected << ',' << r.functional << ','
           << man.body << ',' << man.dim << ',' << man.seed << "\n";
    }
    return os.str();
}

inline void write_csv(const std::string& path, const RunManifest& man,
                      const std::vector<CsvRow>& rows) {
    write_file_atomic(path, render_csv(man, rows));
}

/// Sidecar with the non-deterministic bits.
inline void write_manifest_sidecar(const std::string& path, const RunManifest& man,
                                   double wall_seconds) {
    std::ostringstream os;
    os << "{\n"
       << "  \"version\": \"" << kArtifactVersion << "\",\n"
       << "  \"command\": \"" << man.command << "\",\n"
       << "  \"body\": \"" << man.body << "\",\n"
       << "  \"dim\": " << man.dim << ",\n"
       << "  \"seed\": " << man.seed << ",\n"
       << "  \"generator\": \"" << kGeneratorName << "\",\n"
       << "  \"wall_seconds\": " << format_double(wall_seconds) << "\n"
       << "}\n";
    write_file_atomic(path + ".manifest.json", os.str());
}

/// Reads rows back (skipping '#' comments and the header line).
inline std::vector<CsvRow> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GeometryError("cannot open " + path);
    std::vector<CsvRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("n,", 0) == 0) continue;
        CsvRow r;
        std::istringstream ls(line);
        std::string tok;
        std::getline(ls, tok, ',');
        r.n = std::stol(tok);
        std::getline(ls, tok, ',');
        r.mean = std::stod(tok);
        std::getline(ls, tok, ',');
        r.stderr_ = std::stod(tok);
        std::getline(ls, tok, ',');
        r.trials = std::stol(tok);
        std::getline(ls, tok, ',');
        r.rejected = std::stol(tok);
        std::getline(ls, r.functional, ',');
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace rcp
