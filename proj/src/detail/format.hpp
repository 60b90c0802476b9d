#pragma once

#include <cstdio>
#include <string>

namespace lorentzpol::detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace lorentzpol::detail
