#pragma once

#include <cstdint>

#include <boost/random/mersenne_twister.hpp>

namespace honest {

// Independent random streams of one path. Each (seed, path_index, stream)
// triple owns its own engine, so toggling an optional feature (bridge
// sampling, tail completion) never shifts the draws of another stream.
enum class RandomStream : std::uint64_t {
    increments = 0,
    bridge = 1,
    completion = 2,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

using Engine = boost::random::mt19937_64;

Engine stream_engine(std::uint64_t seed, std::uint64_t path_index, RandomStream stream);

}  // namespace honest
