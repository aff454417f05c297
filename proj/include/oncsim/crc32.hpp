#pragma once

#include <array>
#include <cstdint>
#include <span>

// Two independent 32-bit CRCs frame the two source messages so receivers
// can tell which message a slot carries without any signalling. Both are
// standard reflected CRCs (init 0xFFFFFFFF, final xor 0xFFFFFFFF):
//   code 1: polynomial 0x04C11DB7 (the Ethernet CRC), check("123456789") = 0xCBF43926
//   code 2: polynomial 0x1EDC6F41 (Castagnoli),       check("123456789") = 0xE3069283

namespace oncsim {

enum class CrcCode { code1, code2 };

namespace detail {

inline constexpr std::uint32_t kPolyReflected1 = 0xEDB88320u; // 0x04C11DB7 bit-reversed
inline constexpr std::uint32_t kPolyReflected2 = 0x82F63B78u; // 0x1EDC6F41 bit-reversed

constexpr std::array<std::uint32_t, 256> make_crc_table(std::uint32_t poly) {
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t crc = i;
        for (int bit = 0; bit < 8; ++bit) {
            crc = (crc >> 1) ^ ((crc & 1u) ? poly : 0u);
        }
        table[i] = crc;
    }
    return table;
}

inline constexpr auto kCrcTable1 = make_crc_table(kPolyReflected1);
inline constexpr auto kCrcTable2 = make_crc_table(kPolyReflected2);

} // namespace detail

inline std::uint32_t crc32_compute(CrcCode code, std::span<const std::uint8_t> data) {
    const auto& table = code == CrcCode::code1 ? detail::kCrcTable1 : detail::kCrcTable2;
    std::uint32_t crc = 0xFFFFFFFFu;
    for (std::uint8_t byte : data) {
        crc = (crc >> 8) ^ table[(crc ^ byte) & 0xFFu];
    }
    return crc ^ 0xFFFFFFFFu;
}

} // namespace oncsim
