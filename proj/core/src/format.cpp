#include "drxsim/format.hpp"

#include <charconv>

namespace drxsim {

std::string format_double(double value) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, end);
}

}  // namespace drxsim
