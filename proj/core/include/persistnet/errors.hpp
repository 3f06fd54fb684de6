#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace persistnet {

// Base for every error raised by the library. `module()` names the
// pipeline stage that raised it so the CLI can report "module: cause".
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& message)
        : std::runtime_error(message), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

class ParseError : public Error {
public:
    ParseError(std::string module, std::size_t line, const std::string& message)
        : Error(std::move(module), "line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

#define PERSISTNET_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                         \
    public:                                                             \
        using Error::Error;                                             \
    }

PERSISTNET_DEFINE_ERROR(ValidationError);
PERSISTNET_DEFINE_ERROR(InsufficientDataError);
PERSISTNET_DEFINE_ERROR(BoundsError);
PERSISTNET_DEFINE_ERROR(ParameterError);
PERSISTNET_DEFINE_ERROR(DimensionError);
PERSISTNET_DEFINE_ERROR(SizeError);
PERSISTNET_DEFINE_ERROR(ConfigError);
PERSISTNET_DEFINE_ERROR(DomainError);
PERSISTNET_DEFINE_ERROR(SplitError);
PERSISTNET_DEFINE_ERROR(DegenerateAssetError);
PERSISTNET_DEFINE_ERROR(SpecError);
PERSISTNET_DEFINE_ERROR(IoError);

#undef PERSISTNET_DEFINE_ERROR

}  // namespace persistnet
