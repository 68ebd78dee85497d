#pragma once

#include <stdexcept>
#include <string>

namespace drxsim {

// Error categories. The CLI maps config/parse to exit code 2 and everything
// else to exit code 1.
enum class errc {
    invalid_input,
    parse,
    config,
    overlap,
    invalid_comparison,
    empty_series,
    insufficient_data,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

}  // namespace drxsim
