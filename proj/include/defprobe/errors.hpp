#pragma once

#include <stdexcept>
#include <string>

namespace defprobe {

// Request is well-formed but outside what the implementation can compute
// (enumeration guards, 64-bit rank width).
class capability_error : public std::runtime_error {
public:
    explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace defprobe
