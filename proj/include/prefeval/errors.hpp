#pragma once

#include <stdexcept>
#include <string>

namespace prefeval {

// Base for every error the library throws.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed value: probabilities off the simplex, duplicate ids, mixed pairs.
class validation_error : public error {
public:
    using error::error;
};

// Outcome not covered by a utility function, or mismatched domains.
class domain_error : public error {
public:
    using error::error;
};

// Numeric argument outside its admissible interval.
class range_error : public error {
public:
    using error::error;
};

class precondition_error : public error {
public:
    using error::error;
};

// Sample too small or without variance for the requested statistic.
class degenerate_sample_error : public error {
public:
    using error::error;
};

// Input file problems. Carries the file and 1-based line when known.
class data_error : public error {
public:
    data_error(std::string file, std::size_t line, const std::string& what)
        : error(format(file, line, what)), file_(std::move(file)), line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& file, std::size_t line, const std::string& what) {
        std::string out = file.empty() ? std::string("<input>") : file;
        if (line > 0) out += ":" + std::to_string(line);
        return out + ": " + what;
    }

    std::string file_;
    std::size_t line_ = 0;
};

}  // namespace prefeval
