#include "pcfss/rng.hpp"

namespace pcfss {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t run)
    : key_(splitmix64(splitmix64(seed) ^ (run * 0xd1b54a32d192ed03ULL))) {}

double CounterRng::next() {
  std::uint64_t x = splitmix64(key_ + 0x632be59bd9b4e019ULL * counter_++);
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace pcfss
