#pragma once

#include <stdexcept>
#include <string>

namespace gcnm {

/// Quadrature failed to converge, accumulated loss of significance, etc.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// File could not be opened, written, or flushed.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gcnm
