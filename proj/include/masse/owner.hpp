#pragma once

#include <openssl/evp.h>

#include <map>
#include <optional>
#include <set>
#include <utility>

#include "masse/datamodel.hpp"
#include "masse/prf.hpp"
#include "masse/rand.hpp"
#include "masse/sym.hpp"

namespace masse {

template <class C>
struct RegisteredClient {
    std::set<Bytes> keywords;  // current authorized set
    Scalar<C> gamma;

    bool operator==(const RegisteredClient& o) const {
        return keywords == o.keywords && gamma == o.gamma;
    }
};

template <class C>
struct OwnerState {
    Bytes k1, k2, k_t, k_x, k_z;
    Scalar<C> sk_o;
    G2<C> pk_o;

    KeyTables key_tables;
    std::map<Bytes, std::set<Bytes>> attr_of_kw;
    std::map<Bytes, std::set<Bytes>> kw_of_attr;
    std::map<std::pair<Bytes, Bytes>, std::uint64_t> locator;  // (keyword, doc) -> slot
    std::map<Bytes, std::uint64_t> next_free_slot;
    std::map<Bytes, RegisteredClient<C>> registered;  // key: compressed client pk
    std::uint64_t alpha = 0;
};

template <class C>
OwnerState<C> keygen_owner() {
    OwnerState<C> st;
    st.k1 = random_bytes(C::KEY_BYTES);
    st.k2 = random_bytes(C::KEY_BYTES);
    st.k_t = random_bytes(C::KEY_BYTES);
    st.k_x = random_bytes(C::KEY_BYTES);
    st.k_z = random_bytes(C::KEY_BYTES);
    st.sk_o = random_scalar<C>();
    st.pk_o = G2<C>::generator().mul(st.sk_o.value());
    return st;
}

namespace detail {

// Per-keyword derivation chain shared by setup, registration and updates.
template <class C>
struct KeywordMaterial {
    Bytes h, v, stag, theta;
    Scalar<C> wtag_exp, z, xtrap;
};

template <class C>
KeywordMaterial<C> derive_keyword(const OwnerState<C>& st, const Bytes& w,
                                  const std::set<Bytes>& attrs) {
    KeywordMaterial<C> m;
    Bytes l = prf_f(st.k1, "l", xor_attrs(attrs));
    m.h = prf_f(st.k1, "h", l);
    m.v = prf_f(st.k1, "v", m.h);
    m.stag = prf_f(st.k_t, "stag", w);
    m.theta = xor_bytes(m.stag, prf_f(m.h, "theta", w));
    m.wtag_exp = prf_fp<C>(m.v, "wtag", w);
    m.z = prf_fp<C>(st.k_z, "z", w);
    m.xtrap = prf_fp<C>(st.k_x, "xtrap", w);
    return m;
}

// Same chain for a keyword already in the key tables.
template <class C>
KeywordMaterial<C> derive_known_keyword(const OwnerState<C>& st, const Bytes& w) {
    auto hit = st.key_tables.s_h.find(w);
    auto vit = st.key_tables.s_v.find(w);
    if (hit == st.key_tables.s_h.end() || vit == st.key_tables.s_v.end())
        throw ConfigError("unknown keyword");
    KeywordMaterial<C> m;
    m.h = hit->second;
    m.v = vit->second;
    m.stag = prf_f(st.k_t, "stag", w);
    m.theta = xor_bytes(m.stag, prf_f(m.h, "theta", w));
    m.wtag_exp = prf_fp<C>(m.v, "wtag", w);
    m.z = prf_fp<C>(st.k_z, "z", w);
    m.xtrap = prf_fp<C>(st.k_x, "xtrap", w);
    return m;
}

template <class C>
G1<C> make_xtag(const OwnerState<C>& st, const Scalar<C>& xtrap, const Bytes& ind) {
    Scalar<C> x = prf_fp<C>(st.k2, "x", ind);
    return G1<C>::generator().mul((xtrap * x).value());
}

}  // namespace detail

// Builds the encrypted database and populates the owner's key tables,
// locator, and per-keyword slot cursors. Each keyword's list holds its real
// documents at slots 1..|DB(w)| followed by alpha padding slots.
template <class C>
EncryptedDatabase<C> edb_setup(OwnerState<C>& st, const PlainDatabase& db,
                               std::uint64_t alpha) {
    db.validate();
    st.key_tables = {};
    st.attr_of_kw.clear();
    st.kw_of_attr.clear();
    st.locator.clear();
    st.next_free_slot.clear();
    st.alpha = alpha;
    st.attr_of_kw = db.attr_of_kw;
    st.kw_of_attr = db.kw_of_attr();

    EncryptedDatabase<C> edb;
    const G1<C> g1 = G1<C>::generator();
    std::uint32_t kw_index = 0;
    for (const auto& [w, attrs] : db.attr_of_kw) {
        auto m = detail::derive_keyword(st, w, attrs);
        Bytes ctag = hash_h(g1.mul(m.wtag_exp.value()).to_bytes());
        if (!edb.cset.emplace(ctag, m.theta).second)
            throw CryptoError("keyword gate collision");

        Scalar<C> z_inv = m.z.inv();
        std::vector<Bytes> docs = db.docs_of(w);
        std::uint64_t c = 1;
        auto insert_entry = [&](const Bytes& ind, bool real) {
            Scalar<C> x = prf_fp<C>(st.k2, "x", ind);
            TsetEntry<C> entry;
            entry.y = x * z_inv;
            entry.e = sym_encrypt(m.v, ind);
            Bytes label = tset_label(m.stag, c);
            if (!edb.tset.emplace(label, std::move(entry)).second)
                throw CryptoError("index label collision");
            edb.xset.insert(g1.mul((m.xtrap * x).value()).to_bytes());
            if (real)
                st.locator[{w, ind}] = c;
            ++c;
        };
        for (const Bytes& ind : docs)
            insert_entry(ind, true);
        for (std::uint64_t s = 0; s < alpha; ++s)
            insert_entry(make_dummy_id(kw_index, static_cast<std::uint32_t>(s)), false);

        st.key_tables.s_h[w] = m.h;
        st.key_tables.s_v[w] = m.v;
        st.key_tables.count[w] = c;  // one past the last written slot
        st.next_free_slot[w] = c - alpha;
        ++kw_index;
    }
    return edb;
}

// Issues the authorization dictionary (server side) and credentials (client
// side) for a client holding the given attributes. The returned credentials
// carry no client secret; the client merges its own key in afterwards.
template <class C>
std::pair<ClientDictionary<C>, ClientCredentials<C>> register_client(
    OwnerState<C>& st, const std::set<Bytes>& attrs, const G1<C>& client_pk) {
    Bytes pk_bytes = client_pk.to_bytes();
    if (client_pk.is_infinity())
        throw ConfigError("invalid client key");
    if (st.registered.count(pk_bytes))
        throw ConfigError("client already registered");

    std::set<Bytes> authorized;
    for (const Bytes& a : attrs) {
        auto it = st.kw_of_attr.find(a);
        if (it == st.kw_of_attr.end())
            throw ConfigError("unknown attribute");
        authorized.insert(it->second.begin(), it->second.end());
    }
    if (authorized.empty())
        throw ConfigError("attribute set authorizes no keywords");

    ClientCredentials<C> creds;
    creds.k_x = st.k_x;
    creds.k_z = st.k_z;
    creds.client_pk = client_pk;
    creds.owner_pk = st.pk_o;

    ClientDictionary<C> dict;
    dict.client_pk = client_pk;

    Scalar<C> gamma;
    std::map<Bytes, Scalar<C>> xtrap_of;
    for (const Bytes& w : authorized) {
        Bytes v = st.key_tables.s_v.at(w);
        gamma = gamma + prf_fp<C>(v, "wtag", w);
        creds.per_kw[w] = {st.key_tables.s_h.at(w), v};
        creds.freq_hint[w] = st.key_tables.count.at(w);
        xtrap_of[w] = prf_fp<C>(st.k_x, "xtrap", w);
    }
    for (const auto& [key, c] : st.locator) {
        const auto& [w, ind] = key;
        (void)c;
        auto it = xtrap_of.find(w);
        if (it == xtrap_of.end())
            continue;
        dict.ctoken.insert(hash_h(detail::make_xtag(st, it->second, ind).to_bytes()));
    }

    dict.sigma = client_pk.mul((gamma * st.sk_o).value());
    st.registered[pk_bytes] = {authorized, gamma};
    return {std::move(dict), std::move(creds)};
}

// Generates the wire message adding or deleting one (keyword, document)
// pair and advances the owner's bookkeeping.
template <class C>
UpdateMessage<C> make_update(OwnerState<C>& st, UpdateOp op, const Bytes& w,
                             const Bytes& ind) {
    if (ind.empty() || ind.size() > MAX_DOC_ID_BYTES || is_dummy_id(ind))
        throw ConfigError("bad document id");
    auto m = detail::derive_known_keyword<C>(st, w);
    UpdateMessage<C> msg;
    msg.op = op;

    if (op == UpdateOp::Add) {
        if (st.locator.count({w, ind}))
            throw ConfigError("pair already present");
        std::uint64_t c = st.next_free_slot.at(w);
        if (c >= st.key_tables.count.at(w))
            throw CapacityError("padding slots exhausted; rebuild the database");
        Scalar<C> x = prf_fp<C>(st.k2, "x", ind);
        msg.label = tset_label(m.stag, c);
        msg.y = x * m.z.inv();
        msg.e = sym_encrypt(m.v, ind);
        msg.xtag = G1<C>::generator().mul((m.xtrap * x).value());
        st.next_free_slot[w] = c + 1;
        st.locator[{w, ind}] = c;
    } else {
        auto it = st.locator.find({w, ind});
        if (it == st.locator.end())
            throw ConfigError("pair not found");
        msg.label = tset_label(m.stag, it->second);
        msg.xtag = detail::make_xtag(st, m.xtrap, ind);
        st.locator.erase(it);  // the slot is never reused
    }
    return msg;
}

template <class C>
struct RevocationResult {
    RevocationMessage<C> msg;
    // refreshed credentials for the remaining keywords (keyword scope only)
    std::optional<ClientCredentials<C>> reissued;
};

// Full revocation removes the client's dictionary; keyword scope replaces
// the accumulator signature and strips the keyword's cross-check hashes. A
// keyword revocation that would empty the authorization escalates to full.
template <class C>
RevocationResult<C> make_revocation(OwnerState<C>& st, const G1<C>& client_pk,
                                    const std::optional<Bytes>& keyword) {
    Bytes pk_bytes = client_pk.to_bytes();
    auto rit = st.registered.find(pk_bytes);
    if (rit == st.registered.end())
        throw ConfigError("client not registered");

    RevocationResult<C> out;
    out.msg.client_pk = client_pk;
    if (!keyword) {
        out.msg.scope = RevocationScope::Full;
        st.registered.erase(rit);
        return out;
    }

    const Bytes& w = *keyword;
    RegisteredClient<C>& reg = rit->second;
    if (!reg.keywords.count(w))
        throw ConfigError("keyword not authorized for this client");

    Scalar<C> gamma2 = reg.gamma - prf_fp<C>(st.key_tables.s_v.at(w), "wtag", w);
    if (gamma2.is_zero()) {
        out.msg.scope = RevocationScope::Full;
        st.registered.erase(rit);
        return out;
    }

    out.msg.scope = RevocationScope::Keyword;
    out.msg.sigma_new = client_pk.mul((gamma2 * st.sk_o).value());
    auto m = detail::derive_known_keyword(st, w);
    for (const auto& [key, c] : st.locator) {
        (void)c;
        if (key.first == w)
            out.msg.remove.push_back(
                hash_h(detail::make_xtag(st, m.xtrap, key.second).to_bytes()));
    }
    reg.keywords.erase(w);
    reg.gamma = gamma2;

    ClientCredentials<C> creds;
    creds.k_x = st.k_x;
    creds.k_z = st.k_z;
    creds.client_pk = client_pk;
    creds.owner_pk = st.pk_o;
    for (const Bytes& kw : reg.keywords) {
        creds.per_kw[kw] = {st.key_tables.s_h.at(kw), st.key_tables.s_v.at(kw)};
        creds.freq_hint[kw] = st.key_tables.count.at(kw);
    }
    out.reissued = std::move(creds);
    return out;
}

// Cross-check hashes for a document added after a client registered,
// letting the owner extend that client's dictionary explicitly.
template <class C>
CtokenSupplement<C> make_supplement(OwnerState<C>& st, const G1<C>& client_pk,
                                    const Bytes& w, const Bytes& ind) {
    Bytes pk_bytes = client_pk.to_bytes();
    auto rit = st.registered.find(pk_bytes);
    if (rit == st.registered.end())
        throw ConfigError("client not registered");
    if (!rit->second.keywords.count(w))
        throw ConfigError("keyword not authorized for this client");
    if (!st.locator.count({w, ind}))
        throw ConfigError("pair not found");
    auto m = detail::derive_known_keyword(st, w);
    CtokenSupplement<C> msg;
    msg.client_pk = client_pk;
    msg.add.push_back(hash_h(detail::make_xtag(st, m.xtrap, ind).to_bytes()));
    return msg;
}

// ---------------------------------------------------------------------------
// Owner state persistence, sealed under a passphrase-derived key.

template <class C>
Bytes serialize_owner_state(const OwnerState<C>& st) {
    Bytes out;
    wire::put_fixed(out, st.k1, C::KEY_BYTES);
    wire::put_fixed(out, st.k2, C::KEY_BYTES);
    wire::put_fixed(out, st.k_t, C::KEY_BYTES);
    wire::put_fixed(out, st.k_x, C::KEY_BYTES);
    wire::put_fixed(out, st.k_z, C::KEY_BYTES);
    wire::put_scalar<C>(out, st.sk_o);
    wire::put_point(out, st.pk_o);
    append_u64(out, st.alpha);

    append_u32(out, static_cast<std::uint32_t>(st.key_tables.s_h.size()));
    for (const auto& [w, h] : st.key_tables.s_h) {
        wire::put_blob(out, w);
        wire::put_fixed(out, h, C::KEY_BYTES);
        wire::put_fixed(out, st.key_tables.s_v.at(w), C::KEY_BYTES);
        append_u64(out, st.key_tables.count.at(w));
        append_u64(out, st.next_free_slot.at(w));
    }
    append_u32(out, static_cast<std::uint32_t>(st.attr_of_kw.size()));
    for (const auto& [w, attrs] : st.attr_of_kw) {
        wire::put_blob(out, w);
        append_u32(out, static_cast<std::uint32_t>(attrs.size()));
        for (const Bytes& a : attrs)
            wire::put_blob(out, a);
    }
    append_u32(out, static_cast<std::uint32_t>(st.locator.size()));
    for (const auto& [key, c] : st.locator) {
        wire::put_blob(out, key.first);
        wire::put_blob(out, key.second);
        append_u64(out, c);
    }
    append_u32(out, static_cast<std::uint32_t>(st.registered.size()));
    for (const auto& [pk, reg] : st.registered) {
        wire::put_fixed(out, pk, G1<C>::BYTES);
        wire::put_scalar<C>(out, reg.gamma);
        append_u32(out, static_cast<std::uint32_t>(reg.keywords.size()));
        for (const Bytes& w : reg.keywords)
            wire::put_blob(out, w);
    }
    return out;
}

template <class C>
OwnerState<C> deserialize_owner_state(const Bytes& in) {
    ByteReader r(in);
    OwnerState<C> st;
    st.k1 = r.bytes(C::KEY_BYTES);
    st.k2 = r.bytes(C::KEY_BYTES);
    st.k_t = r.bytes(C::KEY_BYTES);
    st.k_x = r.bytes(C::KEY_BYTES);
    st.k_z = r.bytes(C::KEY_BYTES);
    st.sk_o = wire::take_scalar<C>(r);
    st.pk_o = wire::take_point<G2<C>>(r);
    st.alpha = r.u64();

    for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
        Bytes w = wire::take_blob(r);
        st.key_tables.s_h[w] = r.bytes(C::KEY_BYTES);
        st.key_tables.s_v[w] = r.bytes(C::KEY_BYTES);
        st.key_tables.count[w] = r.u64();
        st.next_free_slot[w] = r.u64();
    }
    for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
        Bytes w = wire::take_blob(r);
        std::set<Bytes> attrs;
        for (std::uint32_t j = 0, k = r.u32(); j < k; ++j)
            attrs.insert(wire::take_blob(r));
        st.attr_of_kw.emplace(std::move(w), std::move(attrs));
    }
    st.kw_of_attr.clear();
    for (const auto& [w, attrs] : st.attr_of_kw)
        for (const Bytes& a : attrs)
            st.kw_of_attr[a].insert(w);
    for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
        Bytes w = wire::take_blob(r);
        Bytes ind = wire::take_blob(r);
        std::uint64_t c = r.u64();
        st.locator[{std::move(w), std::move(ind)}] = c;
    }
    for (std::uint32_t i = 0, n = r.u32(); i < n; ++i) {
        Bytes pk = r.bytes(G1<C>::BYTES);
        RegisteredClient<C> reg;
        reg.gamma = wire::take_scalar<C>(r);
        for (std::uint32_t j = 0, k = r.u32(); j < k; ++j)
            reg.keywords.insert(wire::take_blob(r));
        st.registered.emplace(std::move(pk), std::move(reg));
    }
    wire::finish(r);
    return st;
}

inline Bytes passphrase_key(const std::string& passphrase, const Bytes& salt,
                            std::uint32_t iters) {
    Bytes key(32);
    if (PKCS5_PBKDF2_HMAC(passphrase.data(), static_cast<int>(passphrase.size()),
                          salt.data(), static_cast<int>(salt.size()),
                          static_cast<int>(iters), EVP_sha256(),
                          static_cast<int>(key.size()), key.data()) != 1)
        throw CryptoError("key derivation failed");
    return key;
}

template <class C>
Bytes seal_owner_state(const OwnerState<C>& st, const std::string& passphrase) {
    Bytes out;
    wire::put_header(out, wire::Tag::OwnerState, wire::curve_id<C>::value);
    Bytes salt = random_bytes(16);
    const std::uint32_t iters = 10000;
    wire::put_fixed(out, salt, 16);
    append_u32(out, iters);
    Bytes key = passphrase_key(passphrase, salt, iters);
    wire::put_blob(out, sym_encrypt(key, serialize_owner_state(st)));
    return out;
}

template <class C>
OwnerState<C> unseal_owner_state(const Bytes& in, const std::string& passphrase) {
    ByteReader r(in);
    wire::take_header(r, wire::Tag::OwnerState, wire::curve_id<C>::value);
    Bytes salt = r.bytes(16);
    std::uint32_t iters = r.u32();
    Bytes ct = wire::take_blob(r);
    wire::finish(r);
    auto plain = sym_decrypt(passphrase_key(passphrase, salt, iters), ct);
    if (!plain)
        throw CryptoError("wrong passphrase or corrupted state file");
    return deserialize_owner_state<C>(*plain);
}

}  // namespace masse
