#pragma once

#include <cstddef>
#include <stdexcept>

namespace lowdiss::kernels {

template <typename... Sizes>
inline void require_same_size(std::size_t first, Sizes... rest) {
    if (((rest != first) || ...)) {
        throw std::invalid_argument("kernel spans must have equal lengths");
    }
}

}  // namespace lowdiss::kernels
