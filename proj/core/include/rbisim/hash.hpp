#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace rbisim {

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  // splitmix-style mixing; good enough for container keys.
  v += 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  return seed ^ (v ^ (v >> 31));
}

template <class T>
std::size_t hash_value(const T& v) {
  return std::hash<T>{}(v);
}

template <class It>
std::size_t hash_range(It first, It last, std::size_t seed = 0x51ab5e) {
  for (; first != last; ++first) seed = hash_combine(seed, hash_value(*first));
  return seed;
}

}  // namespace rbisim
