#pragma once

#include <stdexcept>
#include <string>

namespace citemet {

// Anything traceable to input data or a violated call precondition.
// The CLI maps this to exit code 2.
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace citemet
