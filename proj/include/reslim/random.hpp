/*
   Copyright 2026 The reslim Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef RESLIM_RANDOM_HPP
#define RESLIM_RANDOM_HPP

#include <complex>
#include <cmath>
#include <cstdint>

namespace reslim {

// Reproducible across platforms and standard-library versions, unlike the
// std:: distributions. Experiment cells derive their own stream from
// (seed, key...) so results do not depend on scheduling order.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    /// Uniform point on the complex unit circle.
    std::complex<double> unit_complex() {
        const double phase = 2.0 * 3.14159265358979323846 * u01();
        return {std::cos(phase), std::sin(phase)};
    }

  private:
    std::uint64_t state_;
};

/// Mixes a cell key into a base seed; used to give every experiment cell
/// an independent deterministic stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t key) {
    std::uint64_t z = base ^ (0x9e3779b97f4a7c15ull + (key << 6) + (key >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace reslim

#endif // RESLIM_RANDOM_HPP
