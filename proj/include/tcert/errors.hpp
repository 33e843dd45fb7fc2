#pragma once
#include <stdexcept>
#include <string>

namespace tcert {

// Bad input: malformed expressions, context mismatches, violated preconditions.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A configured cap (reduction steps, term count) was exceeded.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tcert
