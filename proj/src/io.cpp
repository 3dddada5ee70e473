#include "gevwave/io.hpp"

#include "gevwave/errors.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <memory>

#include <fmt/format.h>
#include <openssl/evp.h>

namespace gevwave::io {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.17g", value);
    return {buf.data(), static_cast<std::size_t>(n)};
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()) {
    if (!out_) throw InputError(fmt::format("cannot open {} for writing", path.string()));
    bool first = true;
    for (auto name : header) {
        if (!first) out_ << ',';
        out_ << name;
        first = false;
    }
    out_ << '\n';
}

CsvWriter::~CsvWriter() {
    if (out_.is_open()) out_.close();
}

void CsvWriter::row(std::initializer_list<double> values) {
    if (values.size() != columns_) {
        throw InputError(fmt::format("{}: row has {} fields, header has {}", path_.string(), values.size(), columns_));
    }
    line_.clear();
    bool first = true;
    for (double v : values) {
        if (!first) line_ += ',';
        line_ += format_number(v);
        first = false;
    }
    line_ += '\n';
    out_ << line_;
}

void CsvWriter::close() {
    out_.close();
    if (out_.fail()) throw InputError(fmt::format("write to {} failed", path_.string()));
}

void write_json(const std::filesystem::path& path, const Json& value) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError(fmt::format("cannot open {} for writing", path.string()));
    out << value.dump(2) << '\n';
    out.close();
    if (out.fail()) throw InputError(fmt::format("write to {} failed", path.string()));
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(fmt::format("cannot open {} for hashing", path.string()));
    const std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
        throw InputError("SHA-256 context initialisation failed");
    }
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        const auto got = in.gcount();
        if (got > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(got));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
    std::string hex;
    hex.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
    return hex;
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config", fmt::format("cannot read config file {}", path.string()));
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config", fmt::format("config file {} is not valid JSON: {}", path.string(), e.what()));
    }
}

} // namespace gevwave::io
