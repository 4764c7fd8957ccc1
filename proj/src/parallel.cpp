#include "cdulab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cdulab {

unsigned default_workers() {
    if (const char* env = std::getenv("CDU_LAB_WORKERS")) {
        try {
            const auto v = std::stoul(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace cdulab
