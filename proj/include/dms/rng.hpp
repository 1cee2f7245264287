#pragma once

#include <cstdint>
#include <random>

namespace dms {

using RngEngine = std::mt19937_64;

// Derives a stream seed from a base seed and a stream index (splitmix64 mix).
// Used to give every Monte Carlo replication its own seed so results do not
// depend on how replications are scheduled across threads.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index);

} // namespace dms
