#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace idyll {

/// Base of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mixed ranks, foreign elements, malformed descriptors.
class structural_error : public error {
public:
    using error::error;
};

/// The idyll has no procedure for the requested operation (e.g. sum sets over phases).
class unsupported_operation : public error {
public:
    using error::error;
};

class precondition_error : public error {
public:
    using error::error;
};

/// A search exceeded its node budget. Never converted into a numeric answer.
class resource_error : public error {
public:
    using error::error;
};

/// Two engines disagreed.
class verification_error : public error {
public:
    using error::error;
};

class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t position)
        : error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace idyll
