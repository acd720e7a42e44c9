#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topocode/diagram_ops.hpp"
#include "topocode/image.hpp"
#include "topocode/persistence.hpp"

namespace topocode {

// Wire layout (all multi-byte integers big-endian):
//   magic "TPC1" | width u16 | height u16 | bits_per_pixel u8 (= 8) |
//   orientation u8 (0 sublevel, 1 superlevel) | group_count u8 |
//   payload width*height bytes (row-major pixels) |
//   per group: id u8 | finite-pair count u16 | essential count u8 |
//              finite pairs as (birth, death) bytes | essential birth bytes
// Group ids are strictly increasing and every stored finite pair satisfies
// death byte > birth byte.

constexpr std::uint8_t kPacketMagic[4] = {'T', 'P', 'C', '1'};
constexpr std::size_t kPacketFixedHeaderBytes = 11;
constexpr std::size_t kPacketGroupHeaderBytes = 4;

struct DecodedPacket {
    int width = 0;
    int height = 0;
    Orientation orientation = Orientation::sublevel;
    std::vector<std::uint8_t> payload;
    QuantizedDiagram quantized;
    PersistenceDiagram diagram;         // dequantized, degenerate pairs dropped
    std::vector<std::string> warnings;  // one entry per dropped/ignored element
};

struct DecodeError {
    enum class Kind { bad_magic, truncated, bad_field, non_monotone_group_ids, trailing_bytes };
    Kind kind = Kind::bad_magic;
    std::string field;
    std::size_t offset = 0;
    std::string message;
};

struct DecodeResult {
    std::optional<DecodedPacket> packet;
    std::optional<DecodeError> error;
    bool ok() const { return packet.has_value(); }
};

// Serialize payload bytes plus the quantized diagram. Throws DimensionError
// when a dimension exceeds 16 bits or the payload size does not match, and
// ValueError when a diagram coordinate is outside [0, 1].
std::vector<std::uint8_t> encode_packet(const std::vector<std::uint8_t>& payload,
                                        int width, int height,
                                        const PersistenceDiagram& diagram,
                                        Orientation orientation);

// Total parser: any byte sequence yields either a packet or a structured
// error naming the failing field and offset; never reads past the buffer.
// Corrupted pairs (death <= birth) are dropped with a warning and parsing
// continues.
DecodeResult decode_packet(std::span<const std::uint8_t> bytes);

// Byte ranges of a well-formed packet that carry channel-exposed data: the
// payload and the per-group coordinate bytes. Everything else is framing.
struct PacketRegions {
    std::size_t payload_offset = 0;
    std::size_t payload_size = 0;
    std::vector<std::pair<std::size_t, std::size_t>> coordinate_regions; // (offset, size)
    std::size_t coordinate_bytes() const;
};

PacketRegions locate_regions(std::span<const std::uint8_t> bytes);

} // namespace topocode
