#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "lexred/error.hpp"

namespace lexred {

// Little-endian binary serialization, byte order pinned for on-disk formats.

inline void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 24));
}

inline void put_f32(std::vector<uint8_t>& out, float f) {
    uint32_t v;
    std::memcpy(&v, &f, 4);
    put_u32(out, v);
}

inline void put_bytes(std::vector<uint8_t>& out, const void* p, size_t n) {
    const auto* b = static_cast<const uint8_t*>(p);
    out.insert(out.end(), b, b + n);
}

inline void put_string(std::vector<uint8_t>& out, const std::string& s) {
    put_u32(out, static_cast<uint32_t>(s.size()));
    put_bytes(out, s.data(), s.size());
}

// Cursor over a loaded byte buffer; throws DataError on short reads.
class ByteReader {
public:
    ByteReader(const std::vector<uint8_t>& buf, std::string name)
        : buf_(buf), name_(std::move(name)) {}

    uint32_t u32() {
        need(4);
        uint32_t v = static_cast<uint32_t>(buf_[pos_]) |
                     static_cast<uint32_t>(buf_[pos_ + 1]) << 8 |
                     static_cast<uint32_t>(buf_[pos_ + 2]) << 16 |
                     static_cast<uint32_t>(buf_[pos_ + 3]) << 24;
        pos_ += 4;
        return v;
    }

    float f32() {
        uint32_t v = u32();
        float f;
        std::memcpy(&f, &v, 4);
        return f;
    }

    std::string str() {
        uint32_t n = u32();
        need(n);
        std::string s(reinterpret_cast<const char*>(buf_.data() + pos_), n);
        pos_ += n;
        return s;
    }

    void f32_array(float* dst, size_t n) {
        need(4 * n);
        for (size_t i = 0; i < n; ++i) dst[i] = f32_fast();
    }

    bool at_end() const { return pos_ == buf_.size(); }
    size_t pos() const { return pos_; }

private:
    float f32_fast() {
        uint32_t v = static_cast<uint32_t>(buf_[pos_]) |
                     static_cast<uint32_t>(buf_[pos_ + 1]) << 8 |
                     static_cast<uint32_t>(buf_[pos_ + 2]) << 16 |
                     static_cast<uint32_t>(buf_[pos_ + 3]) << 24;
        pos_ += 4;
        float f;
        std::memcpy(&f, &v, 4);
        return f;
    }

    void need(size_t n) const {
        if (pos_ + n > buf_.size())
            throw DataError(name_ + ": truncated file (needed " + std::to_string(n) +
                            " bytes at offset " + std::to_string(pos_) + ")");
    }

    const std::vector<uint8_t>& buf_;
    std::string name_;
    size_t pos_ = 0;
};

inline std::vector<uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open file: " + path);
    std::vector<uint8_t> buf((std::istreambuf_iterator<char>(f)),
                             std::istreambuf_iterator<char>());
    return buf;
}

inline void write_file_bytes(const std::string& path, const std::vector<uint8_t>& buf) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("cannot open file for writing: " + path);
    f.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
    if (!f) throw DataError("write failed: " + path);
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("cannot open file for writing: " + path);
    f << text;
    if (!f) throw DataError("write failed: " + path);
}

// Fixed-precision float formatting so output files are reproducible.
inline std::string fmt_fixed(double v, int precision = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

} // namespace lexred
