#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gae2e/param_space.hpp"

namespace gae2e {

/// Concatenated fixed-width binary encoding of a parameter vector: each
/// coordinate quantized onto 2^bits levels across its bounds and written
/// MSB-first, segments in declaration order. Not used by the evolution
/// operators (those are real-coded); exists for compact logging and
/// external tools.
struct BinaryChromosome {
    std::vector<std::uint8_t> bits; // one entry per bit, 0 or 1, MSB-first per segment
    int bits_per_param = 16;

    std::size_t size() const { return bits.size(); }

    /// Hex string, 4 bits per character, zero-padded at the tail when the
    /// bit count is not a multiple of four.
    std::string to_hex() const;

    /// Inverse of to_hex. `n_bits` recovers the exact length.
    static BinaryChromosome from_hex(const std::string& hex, std::size_t n_bits,
                                     int bits_per_param);
};

/// Quantizes v onto the space's grid. Throws OutOfBoundsError when v leaves
/// its bounds, BadBitWidthError unless 1 <= bits_per_param <= 32.
BinaryChromosome encode(const ParamVector& v, const ParamSpace& space,
                        int bits_per_param = 16);

/// Maps each segment's unsigned value k back to lower + k/(2^bits-1)*range.
/// Throws LengthMismatchError when the bit count is inconsistent.
ParamVector decode(const BinaryChromosome& c, const ParamSpace& space);

} // namespace gae2e
