#include "topocode/packet.hpp"

#include <algorithm>

#include "topocode/errors.hpp"

namespace topocode {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::size_t offset() const { return offset_; }
    std::size_t remaining() const { return bytes_.size() - offset_; }

    bool read_u8(std::uint8_t& v) {
        if (remaining() < 1) return false;
        v = bytes_[offset_++];
        return true;
    }
    bool read_u16(std::uint16_t& v) {
        if (remaining() < 2) return false;
        v = static_cast<std::uint16_t>((bytes_[offset_] << 8) | bytes_[offset_ + 1]);
        offset_ += 2;
        return true;
    }
    bool read_block(std::size_t count, std::vector<std::uint8_t>& out) {
        if (remaining() < count) return false;
        out.assign(bytes_.begin() + static_cast<std::ptrdiff_t>(offset_),
                   bytes_.begin() + static_cast<std::ptrdiff_t>(offset_ + count));
        offset_ += count;
        return true;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t offset_ = 0;
};

DecodeResult fail(DecodeError::Kind kind, const std::string& field, std::size_t offset,
                  const std::string& message) {
    DecodeResult r;
    r.error = DecodeError{kind, field, offset, message};
    return r;
}

} // namespace

std::vector<std::uint8_t> encode_packet(const std::vector<std::uint8_t>& payload,
                                        int width, int height,
                                        const PersistenceDiagram& diagram,
                                        Orientation orientation) {
    if (width < 1 || height < 1 || width > 0xFFFF || height > 0xFFFF)
        throw DimensionError("encode_packet: dimensions outside 16-bit range");
    if (payload.size() != static_cast<std::size_t>(width) * height)
        throw DimensionError("encode_packet: payload size does not match dimensions");

    QuantizedDiagram q = quantize(diagram);
    // pairs that collapse to one 8-bit level carry no information and would
    // violate the death > birth wire invariant
    for (QuantizedGroup& group : q.groups)
        std::erase_if(group.finite, [](const QuantizedPair& p) { return p.death <= p.birth; });

    std::vector<std::uint8_t> out;
    out.reserve(kPacketFixedHeaderBytes + payload.size() + 2 * kPacketGroupHeaderBytes + q.coordinate_bytes());
    out.insert(out.end(), std::begin(kPacketMagic), std::end(kPacketMagic));
    put_u16(out, static_cast<std::uint16_t>(width));
    put_u16(out, static_cast<std::uint16_t>(height));
    out.push_back(8); // bits per pixel
    out.push_back(static_cast<std::uint8_t>(orientation));
    out.push_back(2); // groups H0 and H1, always declared
    out.insert(out.end(), payload.begin(), payload.end());

    for (int h = 0; h <= 1; ++h) {
        const QuantizedGroup& group = q.group(h);
        if (group.finite.size() > 0xFFFF)
            throw DimensionError("encode_packet: too many finite pairs for a group");
        if (group.essential.size() > 0xFF)
            throw DimensionError("encode_packet: too many essential classes for a group");
        out.push_back(static_cast<std::uint8_t>(h));
        put_u16(out, static_cast<std::uint16_t>(group.finite.size()));
        out.push_back(static_cast<std::uint8_t>(group.essential.size()));
        for (const QuantizedPair& pair : group.finite) {
            out.push_back(pair.birth);
            out.push_back(pair.death);
        }
        out.insert(out.end(), group.essential.begin(), group.essential.end());
    }
    return out;
}

DecodeResult decode_packet(std::span<const std::uint8_t> bytes) {
    Reader reader(bytes);

    std::vector<std::uint8_t> magic;
    if (!reader.read_block(4, magic))
        return fail(DecodeError::Kind::truncated, "magic", 0, "buffer shorter than magic");
    if (!std::equal(magic.begin(), magic.end(), std::begin(kPacketMagic)))
        return fail(DecodeError::Kind::bad_magic, "magic", 0, "magic bytes do not match TPC1");

    DecodedPacket packet;
    std::uint16_t width = 0, height = 0;
    std::uint8_t bpp = 0, orientation = 0, group_count = 0;
    if (!reader.read_u16(width)) return fail(DecodeError::Kind::truncated, "width", reader.offset(), "missing width");
    if (!reader.read_u16(height)) return fail(DecodeError::Kind::truncated, "height", reader.offset(), "missing height");
    if (!reader.read_u8(bpp)) return fail(DecodeError::Kind::truncated, "bits_per_pixel", reader.offset(), "missing bits per pixel");
    if (!reader.read_u8(orientation)) return fail(DecodeError::Kind::truncated, "orientation", reader.offset(), "missing orientation");
    if (!reader.read_u8(group_count)) return fail(DecodeError::Kind::truncated, "group_count", reader.offset(), "missing group count");

    if (width == 0 || height == 0)
        return fail(DecodeError::Kind::bad_field, "dimensions", 4, "zero width or height");
    if (bpp != 8)
        return fail(DecodeError::Kind::bad_field, "bits_per_pixel", 8, "unsupported bits per pixel");
    if (orientation > 1)
        return fail(DecodeError::Kind::bad_field, "orientation", 9, "orientation byte must be 0 or 1");

    packet.width = width;
    packet.height = height;
    packet.orientation = static_cast<Orientation>(orientation);

    const std::size_t payload_offset = reader.offset();
    if (!reader.read_block(static_cast<std::size_t>(width) * height, packet.payload))
        return fail(DecodeError::Kind::truncated, "payload", payload_offset, "payload shorter than declared");

    int previous_id = -1;
    for (std::uint8_t g = 0; g < group_count; ++g) {
        std::uint8_t id = 0, essential_count = 0;
        std::uint16_t finite_count = 0;
        const std::size_t group_offset = reader.offset();
        if (!reader.read_u8(id)) return fail(DecodeError::Kind::truncated, "group_id", group_offset, "missing group id");
        if (static_cast<int>(id) <= previous_id)
            return fail(DecodeError::Kind::non_monotone_group_ids, "group_id", group_offset,
                        "group ids must be strictly increasing");
        previous_id = id;
        if (!reader.read_u16(finite_count))
            return fail(DecodeError::Kind::truncated, "finite_count", reader.offset(), "missing finite-pair count");
        if (!reader.read_u8(essential_count))
            return fail(DecodeError::Kind::truncated, "essential_count", reader.offset(), "missing essential count");

        std::vector<std::uint8_t> coords;
        const std::size_t coords_offset = reader.offset();
        if (!reader.read_block(2u * finite_count + essential_count, coords))
            return fail(DecodeError::Kind::truncated, "group_data", coords_offset, "group data shorter than declared");

        const bool known_dim = id <= 1;
        if (!known_dim)
            packet.warnings.push_back("group id " + std::to_string(id) + " ignored (only H0/H1 supported)");
        for (std::uint16_t k = 0; k < finite_count; ++k) {
            const std::uint8_t birth = coords[2u * k];
            const std::uint8_t death = coords[2u * k + 1];
            if (death <= birth) {
                packet.warnings.push_back("group " + std::to_string(id) + " pair " + std::to_string(k) +
                                          " dropped: death byte <= birth byte");
                continue;
            }
            if (known_dim) packet.quantized.group(id).finite.push_back({birth, death});
        }
        for (std::uint8_t k = 0; k < essential_count; ++k)
            if (known_dim) packet.quantized.group(id).essential.push_back(coords[2u * finite_count + k]);
    }

    if (reader.remaining() != 0)
        return fail(DecodeError::Kind::trailing_bytes, "end", reader.offset(),
                    std::to_string(reader.remaining()) + " trailing bytes after declared structure");

    packet.diagram = dequantize(packet.quantized);
    DecodeResult result;
    result.packet = std::move(packet);
    return result;
}

std::size_t PacketRegions::coordinate_bytes() const {
    std::size_t total = 0;
    for (const auto& [offset, size] : coordinate_regions) total += size;
    return total;
}

PacketRegions locate_regions(std::span<const std::uint8_t> bytes) {
    const DecodeResult parsed = decode_packet(bytes);
    if (!parsed.ok())
        throw ValueError("locate_regions: not a well-formed packet: " + parsed.error->message);

    PacketRegions regions;
    regions.payload_offset = kPacketFixedHeaderBytes;
    regions.payload_size = static_cast<std::size_t>(parsed.packet->width) * parsed.packet->height;

    // walk the groups again to record coordinate byte ranges
    std::size_t offset = regions.payload_offset + regions.payload_size;
    while (offset < bytes.size()) {
        const std::uint16_t finite_count = static_cast<std::uint16_t>((bytes[offset + 1] << 8) | bytes[offset + 2]);
        const std::uint8_t essential_count = bytes[offset + 3];
        const std::size_t data_size = 2u * finite_count + essential_count;
        offset += kPacketGroupHeaderBytes;
        if (data_size > 0) regions.coordinate_regions.emplace_back(offset, data_size);
        offset += data_size;
    }
    return regions;
}

} // namespace topocode
