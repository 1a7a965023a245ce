#include "fcpp/random.hpp"

namespace fcpp {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, std::uint64_t tag) {
  std::uint64_t h = mix64(base);
  h = mix64(h ^ mix64(index + 0x632be59bd9b4e019ULL));
  h = mix64(h ^ mix64(tag + 0x8cb92ba72f3d8dd7ULL));
  return h;
}

}  // namespace fcpp
