#pragma once

#include <stdexcept>
#include <string>

namespace svx {

struct IoError : std::runtime_error {
    explicit IoError(const std::string &msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string &msg) : std::invalid_argument(msg) {}
};

} // namespace svx
