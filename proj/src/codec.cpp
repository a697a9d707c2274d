#include "gae2e/codec.hpp"

#include <cmath>

#include "gae2e/errors.hpp"

namespace gae2e {

namespace {
constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw MalformedLogError(std::string("invalid hex digit '") + c + "'");
}
} // namespace

std::string BinaryChromosome::to_hex() const {
    std::string out;
    out.reserve((bits.size() + 3) / 4);
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        int nibble = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            nibble <<= 1;
            if (i + j < bits.size()) nibble |= bits[i + j];
        }
        out.push_back(kHexDigits[nibble]);
    }
    return out;
}

BinaryChromosome BinaryChromosome::from_hex(const std::string& hex, std::size_t n_bits,
                                            int bits_per_param) {
    if (hex.size() != (n_bits + 3) / 4) {
        throw LengthMismatchError("hex string length " + std::to_string(hex.size()) +
                                  " does not hold " + std::to_string(n_bits) + " bits");
    }
    BinaryChromosome c;
    c.bits_per_param = bits_per_param;
    c.bits.reserve(n_bits);
    for (std::size_t i = 0; i < n_bits; ++i) {
        const int nibble = hex_value(hex[i / 4]);
        c.bits.push_back(static_cast<std::uint8_t>((nibble >> (3 - i % 4)) & 1));
    }
    return c;
}

BinaryChromosome encode(const ParamVector& v, const ParamSpace& space,
                        int bits_per_param) {
    if (bits_per_param < 1 || bits_per_param > 32) {
        throw BadBitWidthError("bits_per_param must be in [1, 32], got " +
                               std::to_string(bits_per_param));
    }
    space.check_dimension(v);
    if (!space.contains(v)) {
        throw OutOfBoundsError("cannot encode a vector outside its bounds");
    }
    const double max_level =
        static_cast<double>((std::uint64_t{1} << bits_per_param) - 1);

    BinaryChromosome c;
    c.bits_per_param = bits_per_param;
    c.bits.reserve(space.dimension() * static_cast<std::size_t>(bits_per_param));
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& s = space.spec(i);
        const double frac = (v[i] - s.lower) / (s.upper - s.lower);
        const auto level = static_cast<std::uint64_t>(std::llround(frac * max_level));
        for (int b = bits_per_param - 1; b >= 0; --b) {
            c.bits.push_back(static_cast<std::uint8_t>((level >> b) & 1));
        }
    }
    return c;
}

ParamVector decode(const BinaryChromosome& c, const ParamSpace& space) {
    const auto bits_per_param = static_cast<std::size_t>(c.bits_per_param);
    if (c.bits_per_param < 1 || c.bits_per_param > 32) {
        throw BadBitWidthError("bits_per_param must be in [1, 32]");
    }
    if (c.bits.size() != space.dimension() * bits_per_param) {
        throw LengthMismatchError("chromosome has " + std::to_string(c.bits.size()) +
                                  " bits, space needs " +
                                  std::to_string(space.dimension() * bits_per_param));
    }
    const double max_level =
        static_cast<double>((std::uint64_t{1} << c.bits_per_param) - 1);

    ParamVector v(space.dimension());
    for (std::size_t i = 0; i < space.dimension(); ++i) {
        std::uint64_t level = 0;
        for (std::size_t b = 0; b < bits_per_param; ++b) {
            level = (level << 1) | c.bits[i * bits_per_param + b];
        }
        const auto& s = space.spec(i);
        v[i] = s.lower + static_cast<double>(level) / max_level * (s.upper - s.lower);
    }
    return v;
}

} // namespace gae2e
