#pragma once

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

namespace masse {

using Bytes = std::vector<std::uint8_t>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct FormatError : Error {
    using Error::Error;
};

struct CapacityError : Error {
    using Error::Error;
};

struct CryptoError : Error {
    using Error::Error;
};

struct NetError : Error {
    using Error::Error;
};

inline void append_bytes(Bytes& out, const void* data, std::size_t len) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    out.insert(out.end(), p, p + len);
}

inline void append_bytes(Bytes& out, const Bytes& data) {
    out.insert(out.end(), data.begin(), data.end());
}

inline void append_bytes(Bytes& out, const std::string& data) {
    append_bytes(out, data.data(), data.size());
}

inline void append_u8(Bytes& out, std::uint8_t v) {
    out.push_back(v);
}

inline void append_u16(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

inline void append_u32(Bytes& out, std::uint32_t v) {
    for (int i = 3; i >= 0; --i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void append_u64(Bytes& out, std::uint64_t v) {
    for (int i = 7; i >= 0; --i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class ByteReader {
public:
    ByteReader(const std::uint8_t* data, std::size_t len) : data_(data), len_(len) {}
    explicit ByteReader(const Bytes& b) : ByteReader(b.data(), b.size()) {}

    std::size_t remaining() const { return len_ - pos_; }
    bool done() const { return pos_ == len_; }

    const std::uint8_t* take(std::size_t n) {
        if (remaining() < n)
            throw FormatError("truncated input");
        const std::uint8_t* p = data_ + pos_;
        pos_ += n;
        return p;
    }

    std::uint8_t u8() { return *take(1); }

    std::uint16_t u16() {
        const std::uint8_t* p = take(2);
        return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
    }

    std::uint32_t u32() {
        const std::uint8_t* p = take(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v = (v << 8) | p[i];
        return v;
    }

    std::uint64_t u64() {
        const std::uint8_t* p = take(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v = (v << 8) | p[i];
        return v;
    }

    Bytes bytes(std::size_t n) {
        const std::uint8_t* p = take(n);
        return Bytes(p, p + n);
    }

private:
    const std::uint8_t* data_;
    std::size_t len_;
    std::size_t pos_ = 0;
};

inline std::string to_hex(const Bytes& b) {
    static const char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(b.size() * 2);
    for (std::uint8_t v : b) {
        s.push_back(digits[v >> 4]);
        s.push_back(digits[v & 0xf]);
    }
    return s;
}

inline Bytes from_hex(const std::string& s) {
    auto nib = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw FormatError("bad hex digit");
    };
    if (s.size() % 2 != 0)
        throw FormatError("odd hex length");
    Bytes out(s.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>((nib(s[2 * i]) << 4) | nib(s[2 * i + 1]));
    return out;
}

inline Bytes xor_bytes(const Bytes& a, const Bytes& b) {
    if (a.size() != b.size())
        throw FormatError("xor length mismatch");
    Bytes out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] ^ b[i];
    return out;
}

}  // namespace masse
