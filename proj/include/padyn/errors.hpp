#pragma once

#include <stdexcept>
#include <string>

namespace padyn {

struct NoRootInBox : std::runtime_error {
    explicit NoRootInBox(const std::string& m) : std::runtime_error(m) {}
};
struct AmbiguousRoot : std::runtime_error {
    explicit AmbiguousRoot(const std::string& m) : std::runtime_error(m) {}
};
struct ZeroInput : std::domain_error {
    explicit ZeroInput(const std::string& m) : std::domain_error(m) {}
};
struct DegenerateInput : std::domain_error {
    explicit DegenerateInput(const std::string& m) : std::domain_error(m) {}
};
struct ResourceCap : std::runtime_error {
    explicit ResourceCap(const std::string& m) : std::runtime_error(m) {}
};
struct ComputationError : std::logic_error {
    explicit ComputationError(const std::string& m) : std::logic_error(m) {}
};

}  // namespace padyn
