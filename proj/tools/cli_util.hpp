#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "masse/datamodel.hpp"
#include "masse/net.hpp"
#include "masse/params.hpp"

namespace cli {

using masse::Bytes;

inline Bytes slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw masse::ConfigError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string& s = ss.str();
    return Bytes(s.begin(), s.end());
}

// Write-then-rename so a crash cannot leave a half-written file behind.
inline void spit(const std::string& path, const Bytes& data) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw masse::ConfigError("cannot write " + tmp);
        out.write(reinterpret_cast<const char*>(data.data()),
                  static_cast<std::streamsize>(data.size()));
        if (!out)
            throw masse::ConfigError("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw masse::ConfigError("cannot replace " + path);
}

inline bool file_exists(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return in.good();
}

inline std::string trimmed(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline Bytes read_hex_file(const std::string& path) {
    Bytes raw = slurp(path);
    return masse::from_hex(trimmed(std::string(raw.begin(), raw.end())));
}

inline void write_hex_file(const std::string& path, const Bytes& data) {
    std::string hex = masse::to_hex(data) + "\n";
    spit(path, Bytes(hex.begin(), hex.end()));
}

// The security parameter is recoverable from any persisted object: every
// encoding starts magic(4) + version(2) + tag(1) + curve(1).
inline int peek_lambda(const Bytes& data) {
    if (data.size() < 8)
        throw masse::FormatError("file too short to carry a format header");
    switch (data[7]) {
        case masse::wire::curve_id<masse::Bls12_381>::value:
            return masse::Bls12_381::LAMBDA;
        case masse::wire::curve_id<masse::Bls12_383>::value:
            return masse::Bls12_383::LAMBDA;
    }
    throw masse::FormatError("unknown group configuration in file header");
}

inline std::string resolve_passphrase(const std::string& flag, const std::string& env_name) {
    if (!flag.empty())
        return flag;
    if (!env_name.empty()) {
        const char* v = std::getenv(env_name.c_str());
        if (!v || !*v)
            throw masse::ConfigError("environment variable " + env_name + " is empty or unset");
        return v;
    }
    throw masse::ConfigError("a passphrase is required (--passphrase or --passphrase-env)");
}

inline std::vector<Bytes> split_csv(const std::string& s) {
    std::vector<Bytes> out;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, ','))
        if (!trimmed(cur).empty()) {
            std::string t = trimmed(cur);
            out.emplace_back(t.begin(), t.end());
        }
    return out;
}

// ---------------------------------------------------------------------------
// Frame files: the exact bytes a frame occupies on the wire, so a message
// written to disk by one tool can be replayed to a socket or applied offline
// by another.

inline Bytes frame_to_bytes(masse::FrameType type, const Bytes& payload) {
    Bytes out;
    masse::append_u32(out, static_cast<std::uint32_t>(payload.size() + 1));
    masse::append_u8(out, static_cast<std::uint8_t>(type));
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

inline masse::Frame frame_from_bytes(const Bytes& data) {
    masse::ByteReader r(data);
    std::uint32_t len = r.u32();
    if (len == 0)
        throw masse::FormatError("empty frame");
    std::uint8_t type = r.u8();
    if (!masse::frame_type_known(type))
        throw masse::FormatError("unknown frame type");
    masse::Frame f;
    f.type = static_cast<masse::FrameType>(type);
    f.payload = r.bytes(len - 1);
    if (!r.done())
        throw masse::FormatError("trailing bytes after frame");
    return f;
}

// ---------------------------------------------------------------------------
// Plaintext database description: a line-oriented text format so corpora can
// be written by hand or by scripts.
//
//   attr <keyword> <attribute> [<attribute> ...]
//   pair <doc-id> <keyword>
//
// '#' starts a comment. Tokens are whitespace-separated and taken as UTF-8.

inline masse::PlainDatabase parse_db_text(const Bytes& text) {
    masse::PlainDatabase db;
    std::istringstream in(std::string(text.begin(), text.end()));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line.substr(0, line.find('#'));
        std::istringstream ls(stripped);
        std::string verb;
        if (!(ls >> verb))
            continue;
        auto fail = [&](const std::string& why) {
            throw masse::FormatError("database text line " + std::to_string(lineno) + ": " +
                                     why);
        };
        if (verb == "attr") {
            std::string kw, attr;
            if (!(ls >> kw))
                fail("attr needs a keyword");
            std::set<Bytes>& attrs = db.attr_of_kw[Bytes(kw.begin(), kw.end())];
            std::size_t added = 0;
            while (ls >> attr) {
                attrs.insert(Bytes(attr.begin(), attr.end()));
                ++added;
            }
            if (added == 0)
                fail("attr needs at least one attribute");
        } else if (verb == "pair") {
            std::string doc, kw;
            if (!(ls >> doc >> kw))
                fail("pair needs a doc id and a keyword");
            db.pairs.insert({Bytes(doc.begin(), doc.end()), Bytes(kw.begin(), kw.end())});
        } else {
            fail("unknown verb '" + verb + "' (expected attr or pair)");
        }
    }
    db.validate();
    return db;
}

// ---------------------------------------------------------------------------
// Server sidecar: state the server accumulates beyond the owner-produced
// encrypted database. Client dictionaries and delete tombstones, each as a
// count followed by length-prefixed blobs.

template <class C>
struct StoreSidecar {
    std::vector<masse::ClientDictionary<C>> dicts;
    masse::ByteSet tombstones;
};

template <class C>
Bytes encode_sidecar(const StoreSidecar<C>& s) {
    Bytes out;
    masse::append_u32(out, static_cast<std::uint32_t>(s.dicts.size()));
    for (const auto& d : s.dicts)
        masse::wire::put_blob(out, masse::serialize(d));
    masse::append_u32(out, static_cast<std::uint32_t>(s.tombstones.size()));
    for (const Bytes& t : s.tombstones)
        masse::wire::put_blob(out, t);
    return out;
}

template <class C>
StoreSidecar<C> decode_sidecar(const Bytes& in) {
    masse::ByteReader r(in);
    StoreSidecar<C> out;
    std::uint32_t n = r.u32();
    out.dicts.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i)
        out.dicts.push_back(masse::deserialize_dictionary<C>(masse::wire::take_blob(r)));
    std::uint32_t m = r.u32();
    for (std::uint32_t i = 0; i < m; ++i)
        out.tombstones.insert(masse::wire::take_blob(r));
    masse::wire::finish(r);
    return out;
}

inline std::string printable_id(const Bytes& id) {
    bool text = !id.empty();
    for (std::uint8_t b : id)
        if (b < 0x20 || b > 0x7e)
            text = false;
    if (text)
        return std::string(id.begin(), id.end());
    return "hex:" + masse::to_hex(id);
}

inline int run_guarded(int (*body)(int, char**), int argc, char** argv) {
    try {
        return body(argc, argv);
    } catch (const masse::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

}  // namespace cli
