#pragma once

#include <string>

namespace drxsim {

// Shortest decimal representation that round-trips the value exactly.
std::string format_double(double value);

}  // namespace drxsim
