#include "honest/rng.hpp"

namespace honest {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Engine stream_engine(std::uint64_t seed, std::uint64_t path_index, RandomStream stream) {
    const std::uint64_t key =
        splitmix64(splitmix64(seed) ^ splitmix64(path_index + 0x632be59bd9b4e019ULL) ^
                   (static_cast<std::uint64_t>(stream) * 0xd1b54a32d192ed03ULL));
    return Engine(key);
}

}  // namespace honest
