#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace tameconf {

using BigInt = boost::multiprecision::cpp_int;

}  // namespace tameconf
