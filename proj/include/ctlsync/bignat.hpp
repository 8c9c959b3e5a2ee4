#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ctlsync {

/// Arbitrary-precision natural used for step counts and witnesses.
using BigNat = boost::multiprecision::cpp_int;

}  // namespace ctlsync
