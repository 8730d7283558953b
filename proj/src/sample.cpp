#include "ustatboot/sample.hpp"

#include <cmath>
#include <string>

#include "ustatboot/error.hpp"

namespace ustatboot {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            fail(ErrorKind::InvalidInput, "non-finite observation at index " + std::to_string(i));
        }
    }
}

}  // namespace ustatboot
