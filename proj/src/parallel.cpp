#include "chiral/parallel.hpp"

#include <cstdlib>
#include <string>

namespace chiral {

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CHIRAL_SPECTRA_THREADS")) {
        try {
            const long value = std::stol(env);
            if (value > 0) return static_cast<unsigned>(value);
        } catch (const std::exception&) {
            // unparsable values fall back to auto
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace chiral
