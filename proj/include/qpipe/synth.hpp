#pragma once

#include <cstddef>
#include <cstdint>

#include "qpipe/phasemap.hpp"

// Seeded synthetic test images. Every generator draws from its own
// std::mt19937_64, so identical arguments give identical pixels.
namespace qpipe::synth {

/// Left-to-right linear ramp from 0 to range - 1.
Image ramp(std::size_t width, std::size_t height, double range);

/// Centered block of `high` on a `low` background. The block spans
/// [w/4, w - w/4) x [h/4, h - h/4), so every edge is a high -> low step.
Image step(std::size_t width, std::size_t height, double high = 200.0, double low = 0.0);

/// Ellipse phantom with multiplicative speckle I (1 + sigma g), g ~ N(0, 1),
/// clipped into [0, range).
Image phantom_speckle(std::size_t width, std::size_t height, double range, double sigma,
                      std::uint64_t seed);

/// Independent uniform intensities in [0, range).
Image uniform(std::size_t width, std::size_t height, double range, std::uint64_t seed);

/// Independent uniform integers 0..levels-1.
Image levels(std::size_t width, std::size_t height, int levels, std::uint64_t seed);

/// Floors every pixel into 0..range-1 and tags the bit depth when range is a power of two.
Image quantize(const Image& image, double range);

}  // namespace qpipe::synth
