#pragma once

#include <map>
#include <set>
#include <vector>

#include "masse/datamodel.hpp"
#include "masse/prf.hpp"
#include "masse/rand.hpp"
#include "masse/sym.hpp"

namespace masse {

// Single-client conjunctive baseline. Token material for the pivot keyword
// grows with its posting-list length: every slot needs one cross-token per
// non-pivot term, so token size is count(w1) * (n - 1) group elements.

template <class C>
struct OxtKeys {
    Bytes k_s;  // per-keyword payload keys
    Bytes k_i;  // document blinding exponents
    Bytes k_t;  // tset addressing
    Bytes k_z;  // per-slot masks
    Bytes k_x;  // cross-term traps
};

template <class C>
struct OxtEntry {
    Bytes e;
    Scalar<C> y;

    bool operator==(const OxtEntry& o) const { return e == o.e && y == o.y; }
};

template <class C>
struct OxtDatabase {
    std::unordered_map<Bytes, OxtEntry<C>, BytesHash> tset;
    ByteSet xset;

    bool operator==(const OxtDatabase& o) const {
        return tset == o.tset && xset == o.xset;
    }
};

template <class C>
struct OxtSetupResult {
    OxtDatabase<C> db;
    std::map<Bytes, std::uint64_t> counts;  // kept by the key owner
};

template <class C>
struct OxtToken {
    Bytes stag;
    // xtokens[c-1][j-2] covers pivot slot c and conjunct j
    std::vector<std::vector<G1<C>>> xtokens;
};

template <class C>
OxtKeys<C> oxt_keygen() {
    OxtKeys<C> k;
    k.k_s = random_bytes(C::KEY_BYTES);
    k.k_i = random_bytes(C::KEY_BYTES);
    k.k_t = random_bytes(C::KEY_BYTES);
    k.k_z = random_bytes(C::KEY_BYTES);
    k.k_x = random_bytes(C::KEY_BYTES);
    return k;
}

namespace oxt_detail {

template <class C>
Scalar<C> slot_mask(const OxtKeys<C>& keys, const Bytes& w, std::uint64_t c) {
    Bytes msg = w;
    append_u64(msg, c);
    return prf_fp<C>(keys.k_z, "z", msg);
}

}  // namespace oxt_detail

template <class C>
OxtSetupResult<C> oxt_setup(const OxtKeys<C>& keys, const PlainDatabase& db) {
    db.validate();
    OxtSetupResult<C> out;
    const G1<C> g1 = G1<C>::generator();
    for (const Bytes& w : db.keywords()) {
        Bytes ke = prf_f(keys.k_s, "ke", w);
        Bytes stag = prf_f(keys.k_t, "stag", w);
        Scalar<C> xtrap = prf_fp<C>(keys.k_x, "xtrap", w);
        std::uint64_t c = 0;
        for (const Bytes& ind : db.docs_of(w)) {
            ++c;
            Scalar<C> xind = prf_fp<C>(keys.k_i, "x", ind);
            Scalar<C> z = oxt_detail::slot_mask(keys, w, c);
            OxtEntry<C> entry;
            entry.e = sym_encrypt(ke, ind);
            entry.y = xind * z.inv();
            Bytes label = tset_label(stag, c);
            if (!out.db.tset.emplace(std::move(label), std::move(entry)).second)
                throw CryptoError("tset label collision");
            out.db.xset.insert(g1.mul((xtrap * xind).value()).to_bytes());
        }
        out.counts[w] = c;
    }
    return out;
}

template <class C>
OxtToken<C> oxt_token_gen(const OxtKeys<C>& keys,
                          const std::map<Bytes, std::uint64_t>& counts,
                          const std::vector<Bytes>& q) {
    if (q.empty())
        throw ConfigError("empty query");
    std::set<Bytes> seen(q.begin(), q.end());
    if (seen.size() != q.size())
        throw ConfigError("duplicate keyword in query");
    const Bytes& w1 = q.front();
    auto it = counts.find(w1);
    std::uint64_t w1_count = (it == counts.end()) ? 0 : it->second;

    OxtToken<C> t;
    t.stag = prf_f(keys.k_t, "stag", w1);
    if (q.size() == 1)
        return t;

    const G1<C> g1 = G1<C>::generator();
    std::vector<Scalar<C>> xtraps;
    for (std::size_t j = 1; j < q.size(); ++j)
        xtraps.push_back(prf_fp<C>(keys.k_x, "xtrap", q[j]));
    for (std::uint64_t c = 1; c <= w1_count; ++c) {
        Scalar<C> z = oxt_detail::slot_mask(keys, w1, c);
        std::vector<G1<C>> row;
        row.reserve(xtraps.size());
        for (const Scalar<C>& xt : xtraps)
            row.push_back(g1.mul((z * xt).value()));
        t.xtokens.push_back(std::move(row));
    }
    return t;
}

template <class C>
std::vector<Bytes> oxt_search(const OxtDatabase<C>& db, const OxtToken<C>& t) {
    std::vector<Bytes> results;
    const bool single = t.xtokens.empty();
    for (std::uint64_t c = 1;; ++c) {
        auto it = db.tset.find(tset_label(t.stag, c));
        if (it == db.tset.end())
            break;
        const OxtEntry<C>& entry = it->second;
        if (single) {
            results.push_back(entry.e);
            continue;
        }
        if (c > t.xtokens.size())
            break;
        bool all = true;
        for (const G1<C>& xt : t.xtokens[c - 1]) {
            if (!db.xset.count(xt.mul(entry.y.value()).to_bytes())) {
                all = false;
                break;
            }
        }
        if (all)
            results.push_back(entry.e);
    }
    return results;
}

template <class C>
std::set<Bytes> oxt_decrypt(const OxtKeys<C>& keys, const Bytes& w1,
                            const std::vector<Bytes>& results) {
    Bytes ke = prf_f(keys.k_s, "ke", w1);
    std::set<Bytes> ids;
    for (const Bytes& e : results) {
        auto pt = sym_decrypt(ke, e);
        if (!pt)
            throw CryptoError("undecryptable result");
        ids.insert(*pt);
    }
    return ids;
}

// Convenience wrapper used by equivalence tests and the benchmark gate.
template <class C>
std::set<Bytes> oxt_query(const OxtKeys<C>& keys, const OxtSetupResult<C>& s,
                          const std::vector<Bytes>& q) {
    OxtToken<C> t = oxt_token_gen<C>(keys, s.counts, q);
    return oxt_decrypt<C>(keys, q.front(), oxt_search<C>(s.db, t));
}

template <class C>
Bytes serialize(const OxtDatabase<C>& db) {
    Bytes out;
    wire::put_header(out, wire::Tag::OxtDb, wire::curve_id<C>::value);
    append_u32(out, static_cast<std::uint32_t>(db.tset.size()));
    for (const Bytes& label : wire::sorted_keys(db.tset)) {
        const OxtEntry<C>& entry = db.tset.at(label);
        wire::put_fixed(out, label, 32);
        wire::put_blob(out, entry.e);
        wire::put_scalar<C>(out, entry.y);
    }
    append_u32(out, static_cast<std::uint32_t>(db.xset.size()));
    for (const Bytes& x : wire::sorted_values(db.xset))
        wire::put_fixed(out, x, G1<C>::BYTES);
    return out;
}

template <class C>
OxtDatabase<C> deserialize_oxt_db(const Bytes& in) {
    ByteReader r(in);
    wire::take_header(r, wire::Tag::OxtDb, wire::curve_id<C>::value);
    OxtDatabase<C> db;
    std::uint32_t n = r.u32();
    for (std::uint32_t i = 0; i < n; ++i) {
        Bytes label = r.bytes(32);
        OxtEntry<C> entry;
        entry.e = wire::take_blob(r);
        entry.y = wire::take_scalar<C>(r);
        db.tset.emplace(std::move(label), std::move(entry));
    }
    std::uint32_t m = r.u32();
    for (std::uint32_t i = 0; i < m; ++i)
        db.xset.insert(Bytes(r.bytes(G1<C>::BYTES)));
    wire::finish(r);
    return db;
}

}  // namespace masse
