#include "regspec/parallel.hpp"

#include "regspec/errors.hpp"

namespace regspec {

int resolve_threads(int requested) {
    require(requested >= 0, "thread count must be nonnegative");
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace regspec
