#pragma once

#include <complex>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

// Deterministic file output: CSV with fixed 17-significant-digit floats
// (round-trip exact for doubles) and a JSON manifest next to every data
// file naming the quantity it holds. No timestamps or environment state
// go into either, so identical configurations produce identical bytes.

namespace istep::io {

std::string fmt17(double v);
// compact complex form used for single-value printing, e.g. "0+0.5i"
std::string compact_complex(std::complex<double> v);

class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    // mixed row: already-formatted cells
    void raw_row(const std::vector<std::string>& cells);

  private:
    struct Impl;
    Impl* impl_;
};

// writes <data_path>.manifest.json
void write_manifest(const std::string& data_path, const std::string& quantity,
                    const nlohmann::json& config, const nlohmann::json& diagnostics);

}  // namespace istep::io
