#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace gevwave::io {

using Json = nlohmann::ordered_json;

// Shortest-stable "%.17g" rendering; non-finite values print as nan / inf / -inf.
[[nodiscard]] std::string format_number(double value);

// Comma-separated writer with a header row and LF line endings.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header);
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;
    ~CsvWriter();

    void row(std::initializer_list<double> values);
    // Closes the stream and throws InputError on any write failure.
    void close();

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t columns_;
    std::string line_;
};

// Pretty-printed JSON followed by a newline.
void write_json(const std::filesystem::path& path, const Json& value);

// Lowercase hex SHA-256 of the file contents.
[[nodiscard]] std::string sha256_file(const std::filesystem::path& path);

// Reads and parses a JSON document; throws ConfigError naming the file on failure.
[[nodiscard]] Json read_json(const std::filesystem::path& path);

} // namespace gevwave::io
