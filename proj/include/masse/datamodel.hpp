#pragma once

#include <algorithm>
#include <cstring>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "masse/common.hpp"
#include "masse/curve.hpp"
#include "masse/pairing.hpp"
#include "masse/prf.hpp"
#include "masse/scalar.hpp"

namespace masse {

// Tset label for slot c of a keyword's list.
inline Bytes tset_label(const Bytes& stag, std::uint64_t c) {
    Bytes buf = stag;
    append_u64(buf, c);
    return hash_h(buf);
}

struct BytesHash {
    std::size_t operator()(const Bytes& b) const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint8_t c : b) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return h;
    }
};

using ByteSet = std::unordered_set<Bytes, BytesHash>;

inline constexpr std::size_t MAX_DOC_ID_BYTES = 64;
inline constexpr std::size_t MAX_ATTR_BYTES = 32;
inline constexpr std::size_t ATTR_BLOCK_BYTES = 32;
inline constexpr std::uint8_t DUMMY_ID_PREFIX = 0xFF;

// Reserved-namespace identifiers for padding entries: clients discard them
// after decryption, and their uniqueness per (keyword, slot) keeps them out
// of every conjunctive cross-check.
inline Bytes make_dummy_id(std::uint32_t kw_index, std::uint32_t slot) {
    Bytes b;
    append_u8(b, DUMMY_ID_PREFIX);
    append_u32(b, kw_index);
    append_u32(b, slot);
    return b;
}

inline bool is_dummy_id(const Bytes& id) {
    return !id.empty() && id[0] == DUMMY_ID_PREFIX;
}

// XOR of a keyword's attribute names as fixed-width blocks; order-free, so
// any enumeration of the set derives the same label input.
inline Bytes xor_attrs(const std::set<Bytes>& attrs) {
    Bytes block(ATTR_BLOCK_BYTES, 0);
    for (const Bytes& a : attrs) {
        if (a.empty() || a.size() > MAX_ATTR_BYTES)
            throw FormatError("attribute length out of range");
        for (std::size_t i = 0; i < a.size(); ++i)
            block[i] ^= a[i];
    }
    return block;
}

struct PlainDatabase {
    // (doc_id, keyword) postings plus the attribute structure over keywords
    std::set<std::pair<Bytes, Bytes>> pairs;
    std::map<Bytes, std::set<Bytes>> attr_of_kw;

    std::set<Bytes> keywords() const {
        std::set<Bytes> w;
        for (const auto& [kw, _] : attr_of_kw)
            w.insert(kw);
        return w;
    }

    std::map<Bytes, std::set<Bytes>> kw_of_attr() const {
        std::map<Bytes, std::set<Bytes>> out;
        for (const auto& [kw, attrs] : attr_of_kw)
            for (const Bytes& a : attrs)
                out[a].insert(kw);
        return out;
    }

    std::vector<Bytes> docs_of(const Bytes& keyword) const {
        std::vector<Bytes> out;
        for (const auto& [ind, kw] : pairs)
            if (kw == keyword)
                out.push_back(ind);
        return out;
    }

    void validate() const {
        for (const auto& [ind, kw] : pairs) {
            if (ind.empty() || ind.size() > MAX_DOC_ID_BYTES)
                throw FormatError("document id length out of range");
            if (is_dummy_id(ind))
                throw FormatError("document id collides with reserved namespace");
            if (kw.empty())
                throw FormatError("empty keyword");
            auto it = attr_of_kw.find(kw);
            if (it == attr_of_kw.end() || it->second.empty())
                throw FormatError("keyword lacks attributes");
        }
        for (const auto& [kw, attrs] : attr_of_kw) {
            if (attrs.empty())
                throw FormatError("keyword lacks attributes");
            for (const Bytes& a : attrs)
                if (a.empty() || a.size() > MAX_ATTR_BYTES)
                    throw FormatError("attribute length out of range");
            if (docs_of(kw).empty())
                throw FormatError("keyword with no documents");
        }
    }
};

template <class C>
struct TsetEntry {
    Bytes e;
    Scalar<C> y;

    bool operator==(const TsetEntry& o) const { return e == o.e && y == o.y; }
};

template <class C>
struct EncryptedDatabase {
    std::unordered_map<Bytes, TsetEntry<C>, BytesHash> tset;
    ByteSet xset;  // compressed xtag encodings
    std::unordered_map<Bytes, Bytes, BytesHash> cset;

    bool operator==(const EncryptedDatabase& o) const {
        return tset == o.tset && xset == o.xset && cset == o.cset;
    }
};

struct KeyTables {
    std::map<Bytes, Bytes> s_h;
    std::map<Bytes, Bytes> s_v;
    std::map<Bytes, std::uint64_t> count;

    bool operator==(const KeyTables& o) const {
        return s_h == o.s_h && s_v == o.s_v && count == o.count;
    }
};

template <class C>
struct ClientDictionary {
    G1<C> client_pk;
    G1<C> sigma;
    ByteSet ctoken;

    bool operator==(const ClientDictionary& o) const {
        return client_pk == o.client_pk && sigma == o.sigma && ctoken == o.ctoken;
    }
};

template <class C>
struct ClientCredentials {
    Bytes k_x;
    Bytes k_z;
    struct PerKw {
        Bytes h;
        Bytes v;
        bool operator==(const PerKw& o) const { return h == o.h && v == o.v; }
    };
    std::map<Bytes, PerKw> per_kw;
    std::map<Bytes, std::uint64_t> freq_hint;
    G2<C> owner_pk;
    Scalar<C> client_sk;
    G1<C> client_pk;
    G2<C> dh;  // owner_pk^client_sk, query independent

    bool operator==(const ClientCredentials& o) const {
        return k_x == o.k_x && k_z == o.k_z && per_kw == o.per_kw &&
               freq_hint == o.freq_hint && owner_pk == o.owner_pk &&
               client_sk == o.client_sk && client_pk == o.client_pk && dh == o.dh;
    }
};

template <class C>
struct SearchToken {
    G1<C> client_pk;
    G1<C> wtag1;
    G1<C> a_xtoken;
    G2<C> dh;
    Bytes f_h1w1;
    std::vector<G1<C>> xtokens;  // positions j = 2..n

    bool operator==(const SearchToken& o) const {
        return client_pk == o.client_pk && wtag1 == o.wtag1 && a_xtoken == o.a_xtoken &&
               dh == o.dh && f_h1w1 == o.f_h1w1 && xtokens == o.xtokens;
    }
};

enum class UpdateOp : std::uint8_t { Add = 1, Del = 2 };

template <class C>
struct UpdateMessage {
    UpdateOp op = UpdateOp::Add;
    Bytes label;
    Bytes e;           // add only
    Scalar<C> y;       // add only
    G1<C> xtag;

    bool operator==(const UpdateMessage& o) const {
        return op == o.op && label == o.label && e == o.e && y == o.y && xtag == o.xtag;
    }
};

enum class RevocationScope : std::uint8_t { Full = 1, Keyword = 2 };

template <class C>
struct RevocationMessage {
    RevocationScope scope = RevocationScope::Full;
    G1<C> client_pk;
    G1<C> sigma_new;             // keyword scope only
    std::vector<Bytes> remove;   // Ctoken hashes, keyword scope only

    bool operator==(const RevocationMessage& o) const {
        return scope == o.scope && client_pk == o.client_pk && sigma_new == o.sigma_new &&
               remove == o.remove;
    }
};

template <class C>
struct CtokenSupplement {
    G1<C> client_pk;
    std::vector<Bytes> add;  // Ctoken hashes for later-added documents

    bool operator==(const CtokenSupplement& o) const {
        return client_pk == o.client_pk && add == o.add;
    }
};

enum class SearchStatus : std::uint8_t { Ok = 0, ProtocolError = 1 };

struct SearchResponse {
    SearchStatus status = SearchStatus::Ok;
    std::vector<Bytes> results;

    bool operator==(const SearchResponse& o) const {
        return status == o.status && results == o.results;
    }
};

// ---------------------------------------------------------------------------
// Binary encoding: magic, format version, type tag, curve id, then fields in
// declaration order. Fixed-width values (hashes, scalars, points) are written
// bare; variable-length byte strings and collections carry u32 prefixes.

namespace wire {

inline constexpr char MAGIC[4] = {'M', 'S', 'S', 'E'};
inline constexpr std::uint16_t VERSION = 1;

enum class Tag : std::uint8_t {
    PlainDb = 1,
    Edb = 2,
    KeyTables = 3,
    Dictionary = 4,
    Credentials = 5,
    Token = 6,
    Update = 7,
    Revocation = 8,
    Supplement = 9,
    SearchResponse = 10,
    OwnerState = 11,
    OxtDb = 12,
};

template <class C>
struct curve_id;
template <>
struct curve_id<Bls12_381> {
    static constexpr std::uint8_t value = 1;
};
template <>
struct curve_id<Bls12_383> {
    static constexpr std::uint8_t value = 2;
};
// curve id 0 marks curve-independent payloads

inline void put_header(Bytes& out, Tag tag, std::uint8_t curve) {
    out.insert(out.end(), MAGIC, MAGIC + 4);
    append_u16(out, VERSION);
    append_u8(out, static_cast<std::uint8_t>(tag));
    append_u8(out, curve);
}

inline void take_header(ByteReader& r, Tag tag, std::uint8_t curve) {
    Bytes magic = r.bytes(4);
    if (std::memcmp(magic.data(), MAGIC, 4) != 0)
        throw FormatError("bad magic");
    if (r.u16() != VERSION)
        throw FormatError("unsupported format version");
    if (r.u8() != static_cast<std::uint8_t>(tag))
        throw FormatError("unexpected payload type");
    if (r.u8() != curve)
        throw FormatError("group configuration mismatch");
}

inline void put_blob(Bytes& out, const Bytes& b) {
    append_u32(out, static_cast<std::uint32_t>(b.size()));
    out.insert(out.end(), b.begin(), b.end());
}

inline Bytes take_blob(ByteReader& r) { return r.bytes(r.u32()); }

inline void put_fixed(Bytes& out, const Bytes& b, std::size_t n) {
    if (b.size() != n)
        throw FormatError("fixed-width field has wrong length");
    out.insert(out.end(), b.begin(), b.end());
}

template <class G>
void put_point(Bytes& out, const G& p) {
    Bytes b = p.to_bytes();
    out.insert(out.end(), b.begin(), b.end());
}

template <class G>
G take_point(ByteReader& r) {
    return G::from_bytes(r.bytes(G::BYTES));
}

template <class C>
void put_scalar(Bytes& out, const Scalar<C>& s) {
    Bytes b = s.to_bytes();
    out.insert(out.end(), b.begin(), b.end());
}

template <class C>
Scalar<C> take_scalar(ByteReader& r) {
    return Scalar<C>::from_bytes(r.bytes(C::SCALAR_BYTES));
}

inline void finish(ByteReader& r) {
    if (!r.done())
        throw FormatError("trailing bytes");
}

template <class Container>
std::vector<typename Container::key_type> sorted_keys(const Container& c) {
    std::vector<typename Container::key_type> keys;
    keys.reserve(c.size());
    for (const auto& kv : c)
        keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    return keys;
}

inline std::vector<Bytes> sorted_values(const ByteSet& s) {
    std::vector<Bytes> v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace wire

inline Bytes serialize(const PlainDatabase& db) {
    Bytes out;
    wire::put_header(out, wire::Tag::PlainDb, 0);
    append_u32(out, static_cast<std::uint32_t>(db.pairs.size()));
    for (const auto& [ind, kw] : db.pairs) {
        wire::put_blob(out, ind);
        wire::put_blob(out, kw);
    }
    append_u32(out, static_cast<std::uint32_t>(db.attr_of_kw.size()));
    for (const auto& [kw, attrs] : db.attr_of_kw) {
        wire::put_blob(out, kw);
        append_u32(out, static_cast<std::uint32_t>(attrs.size()));
        for (const Bytes& a : attrs)
            wire::put_blob(out, a);
    }
    return out;
}

inline PlainDatabase deserialize_plain_db(const Bytes& in) {
    ByteReader r(in);
    wire::take_header(r, wire::Tag::PlainDb, 0);
    PlainDatabase db;
    for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
        Bytes ind = wire::take_blob(r);
        Bytes kw = wire::take_blob(r);
        db.pairs.emplace(std::move(ind), std::move(kw));
    }
    for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
        Bytes kw = wire::take_blob(r);
        std::set<Bytes> attrs;
        for (std::uint32_t j = 0, m = r.u32(); j < m; ++j)
            attrs.insert(wire::take_blob(r));
        db.attr_of_kw.emplace(std::move(kw), std::move(attrs));
    }
    wire::finish(r);
    return db;
}

template <class C>
Bytes serialize(const EncryptedDatabase<C>& edb) {
    Bytes out;
    wire::put_header(out, wire::Tag::Edb, wire::curve_id<C>::value);
    append_u32(out, static_cast<std::uint32_t>(edb.tset.size()));
    for (const Bytes& label : wire::sorted_keys(edb.tset)) {
        const auto& entry = edb.tset.at(label);
        wire::put_fixed(out, label, 32);
        wire::put_blob(out, entry.e);
        wire::put_scalar<C>(out, entry.y);
    }
    append_u32(out, static_cast<std::uint32_t>(edb.xset.size()));
    for (const Bytes& x : wire::sorted_values(edb.xset))
        wire::put_fixed(out, x, G1<C>::BYTES);
    append_u32(out, static_cast<std::uint32_t>(edb.cset.size()));
    for (const Bytes& ctag : wire::sorted_keys(edb.cset)) {
        wire::put_fixed(out, ctag, 32);
        wire::put_fixed(out, edb.cset.at(ctag), C::KEY_BYTES);
    }
    return out;
}

template <class C>
EncryptedDatabase<C> deserialize_edb(const Bytes& in) {
    ByteReader r(in);
    wire::take_header(r, wire::Tag::Edb, wire::curve_id<C>::value);
    EncryptedDatabase<C> edb;
    for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
        Bytes label = r.bytes(32);
        TsetEntry<C> entry;
        entry.e = wire::take_blob(r);
        entry.y = wire::take_scalar<C>(r);
        edb.tset.emplace(std::move(label), std::move(entry));
    }
    for (std::uint32_t i = 0, n = r.u32(); i < n; ++i)
        edb.xset.insert(r.bytes(G1<C>::BYTES));
    for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
        Bytes ctag = r.bytes(32);
        edb.cset.emplace(std::move(ctag), r.bytes(C::KEY_BYTES));
    }
    wire::finish(r);
    return edb;
}

template <class C>
Bytes serialize_key_tables(const KeyTables& kt) {
    Bytes out;
    wire::put_header(out, wire::Tag::KeyTables, wire::curve_id<C>::value);
    append_u32(out, static_cast<std::uint32_t>(kt.s_h.size()));
    for (const auto& [w, h] : kt.s_h) {
        wire::put_blob(out, w);
        wire::put_fixed(out, h, C::KEY_BYTES);
        wire::put_fixed(out, kt.s_v.at(w), C::KEY_BYTES);
        append_u64(out, kt.count.at(w));
    }
    return out;
}

template <class C>
KeyTables deserialize_key_tables(const Bytes& in) {
    ByteReader r(in);
    wire::take_header(r, wire::Tag::KeyTables, wire::curve_id<C>::value);
    KeyTables kt;
    for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
        Bytes w = wire::take_blob(r);
        kt.s_h[w] = r.bytes(C::KEY_BYTES);
        kt.s_v[w] = r.bytes(C::KEY_BYTES);
        kt.count[w] = r.u64();
    }
    wire::finish(r);
    return kt;
}

template <class C>
Bytes serialize(const ClientDictionary<C>& d) {
    Bytes out;
    wire::put_header(out, wire::Tag::Dictionary, wire::curve_id<C>::value);
    wire::put_point(out, d.client_pk);
    wire::put_point(out, d.sigma);
    append_u32(out, static_cast<std::uint32_t>(d.ctoken.size()));
    for (const Bytes& h : wire::sorted_values(d.ctoken))
        wire::put_fixed(out, h, 32);
    return out;
}

template <class C>
ClientDictionary<C> deserialize_dictionary(const Bytes& in) {
    ByteReader r(in);
    wire::take_header(r, wire::Tag::Dictionary, wire::curve_id<C>::value);
    ClientDictionary<C> d;
    d.client_pk = wire::take_point<G1<C>>(r);
    d.sigma = wire::take_point<G1<C>>(r);
    for (std::uint32_t i = 0, n = r.u32(); i < n; ++i)
        d.ctoken.insert(r.bytes(32));
    wire::finish(r);
    return d;
}

template <class C>
Bytes serialize(const ClientCredentials<C>& c) {
    Bytes out;
    wire::put_header(out, wire::Tag::Credentials, wire::curve_id<C>::value);
    wire::put_fixed(out, c.k_x, C::KEY_BYTES);
    wire::put_fixed(out, c.k_z, C::KEY_BYTES);
    append_u32(out, static_cast<std::uint32_t>(c.per_kw.size()));
    for (const auto& [w, hv] : c.per_kw) {
        wire::put_blob(out, w);
        wire::put_fixed(out, hv.h, C::KEY_BYTES);
        wire::put_fixed(out, hv.v, C::KEY_BYTES);
    }
    append_u32(out, static_cast<std::uint32_t>(c.freq_hint.size()));
    for (const auto& [w, n] : c.freq_hint) {
        wire::put_blob(out, w);
        append_u64(out, n);
    }
    wire::put_point(out, c.owner_pk);
    // the secret is absent in owner-issued credentials until the client
    // merges in its own key
    append_u8(out, c.client_sk.is_zero() ? 0 : 1);
    if (!c.client_sk.is_zero())
        wire::put_scalar<C>(out, c.client_sk);
    wire::put_point(out, c.client_pk);
    wire::put_point(out, c.dh);
    return out;
}

template <class C>
ClientCredentials<C> deserialize_credentials(const Bytes& in) {
    ByteReader r(in);
    wire::take_header(r, wire::Tag::Credentials, wire::curve_id<C>::value);
    ClientCredentials<C> c;
    c.k_x = r.bytes(C::KEY_BYTES);
    c.k_z = r.bytes(C::KEY_BYTES);
    for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
        Bytes w = wire::take_blob(r);
        typename ClientCredentials<C>::PerKw hv;
        hv.h = r.bytes(C::KEY_BYTES);
        hv.v = r.bytes(C::KEY_BYTES);
        c.per_kw.emplace(std::move(w), std::move(hv));
    }
    for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
        Bytes w = wire::take_blob(r);
        c.freq_hint[w] = r.u64();
    }
    c.owner_pk = wire::take_point<G2<C>>(r);
    std::uint8_t has_sk = r.u8();
    if (has_sk > 1)
        throw FormatError("bad secret-key flag");
    if (has_sk)
        c.client_sk = wire::take_scalar<C>(r);
    c.client_pk = wire::take_point<G1<C>>(r);
    c.dh = wire::take_point<G2<C>>(r);
    wire::finish(r);
    return c;
}

template <class C>
Bytes serialize(const SearchToken<C>& t) {
    Bytes out;
    wire::put_header(out, wire::Tag::Token, wire::curve_id<C>::value);
    wire::put_point(out, t.client_pk);
    wire::put_point(out, t.wtag1);
    wire::put_point(out, t.a_xtoken);
    wire::put_point(out, t.dh);
    wire::put_fixed(out, t.f_h1w1, C::KEY_BYTES);
    append_u32(out, static_cast<std::uint32_t>(t.xtokens.size()));
    for (const auto& x : t.xtokens)
        wire::put_point(out, x);
    return out;
}

template <class C>
SearchToken<C> deserialize_token(const Bytes& in) {
    ByteReader r(in);
    wire::take_header(r, wire::Tag::Token, wire::curve_id<C>::value);
    SearchToken<C> t;
    t.client_pk = wire::take_point<G1<C>>(r);
    t.wtag1 = wire::take_point<G1<C>>(r);
    t.a_xtoken = wire::take_point<G1<C>>(r);
    t.dh = wire::take_point<G2<C>>(r);
    t.f_h1w1 = r.bytes(C::KEY_BYTES);
    for (std::uint32_t i = 0, n = r.u32(); i < n; ++i)
        t.xtokens.push_back(wire::take_point<G1<C>>(r));
    wire::finish(r);
    return t;
}

template <class C>
Bytes serialize(const UpdateMessage<C>& m) {
    Bytes out;
    wire::put_header(out, wire::Tag::Update, wire::curve_id<C>::value);
    append_u8(out, static_cast<std::uint8_t>(m.op));
    wire::put_fixed(out, m.label, 32);
    if (m.op == UpdateOp::Add) {
        wire::put_blob(out, m.e);
        wire::put_scalar<C>(out, m.y);
    }
    wire::put_point(out, m.xtag);
    return out;
}

template <class C>
UpdateMessage<C> deserialize_update(const Bytes& in) {
    ByteReader r(in);
    wire::take_header(r, wire::Tag::Update, wire::curve_id<C>::value);
    UpdateMessage<C> m;
    std::uint8_t op = r.u8();
    if (op != static_cast<std::uint8_t>(UpdateOp::Add) &&
        op != static_cast<std::uint8_t>(UpdateOp::Del))
        throw FormatError("bad update op");
    m.op = static_cast<UpdateOp>(op);
    m.label = r.bytes(32);
    if (m.op == UpdateOp::Add) {
        m.e = wire::take_blob(r);
        m.y = wire::take_scalar<C>(r);
    }
    m.xtag = wire::take_point<G1<C>>(r);
    wire::finish(r);
    return m;
}

template <class C>
Bytes serialize(const RevocationMessage<C>& m) {
    Bytes out;
    wire::put_header(out, wire::Tag::Revocation, wire::curve_id<C>::value);
    append_u8(out, static_cast<std::uint8_t>(m.scope));
    wire::put_point(out, m.client_pk);
    if (m.scope == RevocationScope::Keyword) {
        wire::put_point(out, m.sigma_new);
        append_u32(out, static_cast<std::uint32_t>(m.remove.size()));
        for (const Bytes& h : m.remove)
            wire::put_fixed(out, h, 32);
    }
    return out;
}

template <class C>
RevocationMessage<C> deserialize_revocation(const Bytes& in) {
    ByteReader r(in);
    wire::take_header(r, wire::Tag::Revocation, wire::curve_id<C>::value);
    RevocationMessage<C> m;
    std::uint8_t scope = r.u8();
    if (scope != static_cast<std::uint8_t>(RevocationScope::Full) &&
        scope != static_cast<std::uint8_t>(RevocationScope::Keyword))
        throw FormatError("bad revocation scope");
    m.scope = static_cast<RevocationScope>(scope);
    m.client_pk = wire::take_point<G1<C>>(r);
    if (m.scope == RevocationScope::Keyword) {
        m.sigma_new = wire::take_point<G1<C>>(r);
        for (std::uint32_t i = 0, n = r.u32(); i < n; ++i)
            m.remove.push_back(r.bytes(32));
    }
    wire::finish(r);
    return m;
}

template <class C>
Bytes serialize(const CtokenSupplement<C>& m) {
    Bytes out;
    wire::put_header(out, wire::Tag::Supplement, wire::curve_id<C>::value);
    wire::put_point(out, m.client_pk);
    append_u32(out, static_cast<std::uint32_t>(m.add.size()));
    for (const Bytes& h : m.add)
        wire::put_fixed(out, h, 32);
    return out;
}

template <class C>
CtokenSupplement<C> deserialize_supplement(const Bytes& in) {
    ByteReader r(in);
    wire::take_header(r, wire::Tag::Supplement, wire::curve_id<C>::value);
    CtokenSupplement<C> m;
    m.client_pk = wire::take_point<G1<C>>(r);
    for (std::uint32_t i = 0, n = r.u32(); i < n; ++i)
        m.add.push_back(r.bytes(32));
    wire::finish(r);
    return m;
}

inline Bytes serialize(const SearchResponse& resp) {
    Bytes out;
    wire::put_header(out, wire::Tag::SearchResponse, 0);
    append_u8(out, static_cast<std::uint8_t>(resp.status));
    append_u32(out, static_cast<std::uint32_t>(resp.results.size()));
    for (const Bytes& e : resp.results)
        wire::put_blob(out, e);
    return out;
}

inline SearchResponse deserialize_response(const Bytes& in) {
    ByteReader r(in);
    wire::take_header(r, wire::Tag::SearchResponse, 0);
    SearchResponse resp;
    std::uint8_t st = r.u8();
    if (st > static_cast<std::uint8_t>(SearchStatus::ProtocolError))
        throw FormatError("bad status");
    resp.status = static_cast<SearchStatus>(st);
    for (std::uint32_t i = 0, n = r.u32(); i < n; ++i)
        resp.results.push_back(wire::take_blob(r));
    wire::finish(r);
    return resp;
}

}  // namespace masse
