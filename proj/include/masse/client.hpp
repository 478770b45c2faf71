#pragma once

#include <set>
#include <utility>
#include <vector>

#include "masse/datamodel.hpp"
#include "masse/prf.hpp"
#include "masse/rand.hpp"
#include "masse/sym.hpp"

namespace masse {

struct QuerySpec {
    std::vector<Bytes> keywords;  // front element is the pivot

    void validate() const {
        if (keywords.empty())
            throw ConfigError("empty query");
        std::set<Bytes> dedup(keywords.begin(), keywords.end());
        if (dedup.size() != keywords.size())
            throw ConfigError("duplicate keywords in query");
    }
};

template <class C>
std::pair<Scalar<C>, G1<C>> keygen_client() {
    Scalar<C> sk = random_scalar<C>();
    return {sk, G1<C>::generator().mul(sk.value())};
}

// Merges the client's own secret into owner-issued credentials and caches
// the query-independent half of the pairing check.
template <class C>
void complete_credentials(ClientCredentials<C>& creds, const Scalar<C>& sk) {
    if (G1<C>::generator().mul(sk.value()) != creds.client_pk)
        throw ConfigError("secret key does not match the registered public key");
    creds.client_sk = sk;
    creds.dh = creds.owner_pk.mul(sk.value());
}

// Orders the query so the pivot is the keyword expected to have the
// shortest list, falling back to the given order without hints.
template <class C>
QuerySpec make_query(const std::vector<Bytes>& keywords, const ClientCredentials<C>& creds) {
    QuerySpec q{keywords};
    q.validate();
    std::size_t best = 0;
    bool have_all = true;
    for (std::size_t i = 0; i < keywords.size(); ++i) {
        if (!creds.freq_hint.count(keywords[i])) {
            have_all = false;
            break;
        }
        if (creds.freq_hint.at(keywords[i]) < creds.freq_hint.at(keywords[best]))
            best = i;
    }
    if (have_all && best != 0)
        std::swap(q.keywords[0], q.keywords[best]);
    return q;
}

// Deterministic token over the authorized keyword set: one exponentiation
// for the witness, one per non-pivot keyword, and the aggregate.
template <class C>
SearchToken<C> token_gen(const QuerySpec& q, const ClientCredentials<C>& creds) {
    q.validate();
    if (creds.client_sk.is_zero())
        throw ConfigError("credentials lack the client secret");
    for (const Bytes& w : q.keywords)
        if (!creds.per_kw.count(w))
            throw ConfigError("keyword not authorized");

    const G1<C> g1 = G1<C>::generator();
    const Bytes& w1 = q.keywords.front();
    const auto& kw1 = creds.per_kw.at(w1);

    SearchToken<C> t;
    t.client_pk = creds.client_pk;
    t.dh = creds.dh;
    t.wtag1 = g1.mul(prf_fp<C>(kw1.v, "wtag", w1).value());
    t.f_h1w1 = prf_f(kw1.h, "theta", w1);

    Scalar<C> agg;
    for (const auto& [w, hv] : creds.per_kw) {
        if (w == w1)
            continue;
        agg = agg + prf_fp<C>(hv.v, "wtag", w);
    }
    t.a_xtoken = agg.is_zero() ? G1<C>::infinity() : g1.mul(agg.value());

    Scalar<C> z1 = prf_fp<C>(creds.k_z, "z", w1);
    for (std::size_t j = 1; j < q.keywords.size(); ++j) {
        Scalar<C> xtrap = prf_fp<C>(creds.k_x, "xtrap", q.keywords[j]);
        t.xtokens.push_back(g1.mul((xtrap * z1).value()));
    }
    return t;
}

struct DecryptedResults {
    std::set<Bytes> ids;
    std::size_t dummies_dropped = 0;
    std::size_t undecryptable = 0;
};

// Decrypts under the pivot's key, discarding padding identifiers and
// entries that fail the framing check.
template <class C>
DecryptedResults decrypt_results(const std::vector<Bytes>& results,
                                 const ClientCredentials<C>& creds, const Bytes& pivot) {
    auto it = creds.per_kw.find(pivot);
    if (it == creds.per_kw.end())
        throw ConfigError("keyword not authorized");
    DecryptedResults out;
    for (const Bytes& e : results) {
        auto pt = sym_decrypt(it->second.v, e);
        if (!pt) {
            ++out.undecryptable;
            continue;
        }
        if (is_dummy_id(*pt)) {
            ++out.dummies_dropped;
            continue;
        }
        out.ids.insert(std::move(*pt));
    }
    return out;
}

}  // namespace masse
