#include "io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace istep::io {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string compact_complex(std::complex<double> v) {
    auto compact = [](double d) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", d);
        return std::string(buf);
    };
    std::string re = compact(v.real() == 0.0 ? 0.0 : v.real());  // normalize -0
    double im = v.imag() == 0.0 ? 0.0 : v.imag();
    std::string ims = compact(im);
    if (im >= 0.0) return re + "+" + ims + "i";
    return re + ims + "i";
}

struct CsvWriter::Impl {
    std::ofstream out;
    std::size_t ncols = 0;
};

CsvWriter::CsvWriter(const std::string& path) : impl_(new Impl) {
    impl_->out.open(path, std::ios::binary);  // binary: no platform newline games
    if (!impl_->out) {
        delete impl_;
        throw std::runtime_error("cannot open output file: " + path);
    }
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::header(const std::vector<std::string>& names) {
    impl_->ncols = names.size();
    for (std::size_t i = 0; i < names.size(); ++i)
        impl_->out << (i ? "," : "") << names[i];
    impl_->out << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    if (impl_->ncols && values.size() != impl_->ncols)
        throw std::runtime_error("csv row width does not match header");
    for (std::size_t i = 0; i < values.size(); ++i)
        impl_->out << (i ? "," : "") << fmt17(values[i]);
    impl_->out << "\n";
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
    if (impl_->ncols && cells.size() != impl_->ncols)
        throw std::runtime_error("csv row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i)
        impl_->out << (i ? "," : "") << cells[i];
    impl_->out << "\n";
}

void write_manifest(const std::string& data_path, const std::string& quantity,
                    const nlohmann::json& config, const nlohmann::json& diagnostics) {
    nlohmann::json m;
    m["quantity"] = quantity;
    m["data_file"] = data_path.substr(data_path.find_last_of('/') + 1);
    m["config"] = config;
    if (!diagnostics.is_null()) m["diagnostics"] = diagnostics;
    m["format_version"] = 1;
    std::ofstream out(data_path + ".manifest.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot open manifest for: " + data_path);
    out << m.dump(2) << "\n";
}

}  // namespace istep::io
