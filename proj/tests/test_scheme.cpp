#include <gtest/gtest.h>

#include <atomic>
#include <random>
#include <thread>

#include "masse/client.hpp"
#include "masse/corpus.hpp"
#include "masse/owner.hpp"
#include "masse/oxt.hpp"
#include "masse/server.hpp"

#include "scheme_kat.inc"

using namespace masse;

namespace {

Bytes bs(const std::string& s) { return Bytes(s.begin(), s.end()); }

Bytes seq16(std::uint8_t lo) {
    Bytes b;
    for (int i = 0; i < 16; ++i)
        b.push_back(static_cast<std::uint8_t>(lo + i));
    return b;
}

std::set<Bytes> all_attrs(const PlainDatabase& db) {
    std::set<Bytes> out;
    for (const auto& [a, _] : db.kw_of_attr())
        out.insert(a);
    return out;
}

// Owner, server, and one fully-authorized client over a generated corpus.
template <class C>
struct Deployment {
    PlainDatabase db;       // plaintext mirror, kept in sync with updates
    OwnerState<C> st;
    ServerStore<C> server;
    Scalar<C> sk;
    ClientCredentials<C> creds;
    std::map<Bytes, std::uint64_t> adds_left;

    Deployment(PlainDatabase initial, std::uint64_t alpha) : db(std::move(initial)) {
        st = keygen_owner<C>();
        server.load_edb(edb_setup(st, db, alpha));
        auto [s, pk] = keygen_client<C>();
        sk = s;
        auto [dict, cr] = register_client(st, all_attrs(db), pk);
        server.put_dictionary(dict);
        creds = cr;
        complete_credentials(creds, sk);
        for (const Bytes& w : db.keywords())
            adds_left[w] = alpha;
    }

    std::set<Bytes> run(const std::vector<Bytes>& keywords,
                        std::size_t* dummies = nullptr,
                        std::size_t* undecryptable = nullptr) {
        QuerySpec q = make_query(keywords, creds);
        SearchToken<C> t = token_gen<C>(q, creds);
        SearchResponse resp = server.search(t);
        EXPECT_EQ(resp.status, SearchStatus::Ok);
        DecryptedResults res = decrypt_results(resp.results, creds, q.keywords.front());
        if (dummies)
            *dummies = res.dummies_dropped;
        if (undecryptable)
            *undecryptable = res.undecryptable;
        else
            EXPECT_EQ(res.undecryptable, 0u);
        return res.ids;
    }

    void add(const Bytes& w, const Bytes& ind) {
        server.apply_update(make_update(st, UpdateOp::Add, w, ind));
        server.apply_supplement(make_supplement(st, creds.client_pk, w, ind));
        db.pairs.insert({ind, w});
        --adds_left[w];
    }

    void del(const Bytes& w, const Bytes& ind) {
        server.apply_update(make_update(st, UpdateOp::Del, w, ind));
        db.pairs.erase({ind, w});
    }
};

PlainDatabase orchard_db() {
    PlainDatabase db;
    db.pairs = {{bs("doc-1"), bs("apple")},
                {bs("doc-2"), bs("apple")},
                {bs("doc-2"), bs("berry")},
                {bs("doc-3"), bs("berry")},
                {bs("doc-4"), bs("carrot")}};
    db.attr_of_kw[bs("apple")] = {bs("fruit")};
    db.attr_of_kw[bs("berry")] = {bs("fruit")};
    db.attr_of_kw[bs("carrot")] = {bs("veg")};
    return db;
}

}  // namespace

using C381 = Bls12_381;

TEST(SingleKeyword, ExactPostingsAndPaddingDiscarded) {
    const std::uint64_t alpha = 3;
    CorpusConfig cfg;
    cfg.seed = 42;
    cfg.keywords = 8;
    cfg.docs = 30;
    Deployment<C381> dep(gen_corpus(cfg), alpha);

    for (const Bytes& w : dep.db.keywords()) {
        std::size_t dummies = 0;
        std::set<Bytes> ids = dep.run({w}, &dummies);
        std::vector<Bytes> expect = dep.db.docs_of(w);
        EXPECT_EQ(ids, std::set<Bytes>(expect.begin(), expect.end()));
        EXPECT_EQ(dummies, alpha);
        for (const Bytes& id : ids)
            EXPECT_FALSE(is_dummy_id(id));
    }
}

TEST(Conjunctive, MatchesReferenceIntersectionAndBaseline) {
    for (std::uint64_t alpha : {0ull, 4ull}) {
        CorpusConfig cfg;
        cfg.seed = 100 + alpha;
        cfg.keywords = 10;
        cfg.docs = 40;
        PlainDatabase db = gen_corpus(cfg);
        Deployment<C381> dep(db, alpha);
        OxtKeys<C381> okeys = oxt_keygen<C381>();
        OxtSetupResult<C381> osetup = oxt_setup(okeys, db);

        for (const auto& q : sample_queries(db, 25, 1, 4, 7 * alpha + 1)) {
            std::set<Bytes> expect = conjunction_of(db, q);
            EXPECT_EQ(dep.run(q), expect) << "alpha=" << alpha;
            EXPECT_EQ(oxt_query(okeys, osetup, q), expect) << "alpha=" << alpha;
        }
    }
}

TEST(Conjunctive, DisjointKeywordsYieldNothing) {
    Deployment<C381> dep(orchard_db(), 2);
    EXPECT_TRUE(dep.run({bs("apple"), bs("carrot")}).empty());
    EXPECT_EQ(dep.run({bs("apple"), bs("berry")}), std::set<Bytes>{bs("doc-2")});
}

TEST(Pivot, PrefersShortestPostingList) {
    PlainDatabase db = orchard_db();
    for (int i = 0; i < 6; ++i)
        db.pairs.insert({corpus_doc_id(static_cast<std::size_t>(i)), bs("apple")});
    Deployment<C381> dep(db, 1);
    QuerySpec q = make_query({bs("apple"), bs("berry")}, dep.creds);
    EXPECT_EQ(q.keywords.front(), bs("berry"));
    EXPECT_EQ(dep.run({bs("apple"), bs("berry")}), conjunction_of(db, {bs("apple"), bs("berry")}));
}

TEST(Authorization, CoversOnlyAttributeDerivedKeywords) {
    PlainDatabase db = orchard_db();
    OwnerState<C381> st = keygen_owner<C381>();
    ServerStore<C381> server(edb_setup(st, db, 2));

    auto [sk, pk] = keygen_client<C381>();
    auto [dict, creds] = register_client(st, std::set<Bytes>{bs("veg")}, pk);
    server.put_dictionary(dict);
    complete_credentials(creds, sk);

    EXPECT_EQ(creds.per_kw.size(), 1u);
    EXPECT_THROW(token_gen<C381>(QuerySpec{{bs("apple")}}, creds), ConfigError);
    EXPECT_THROW(token_gen<C381>(QuerySpec{{bs("carrot"), bs("apple")}}, creds), ConfigError);

    QuerySpec q{{bs("carrot")}};
    DecryptedResults res =
        decrypt_results(server.search(token_gen<C381>(q, creds)).results, creds, bs("carrot"));
    EXPECT_EQ(res.ids, std::set<Bytes>{bs("doc-4")});
}

TEST(Authorization, UnknownClientDeniedWithEmptyResponse) {
    Deployment<C381> dep(orchard_db(), 2);

    OwnerState<C381> st2 = keygen_owner<C381>();
    edb_setup(st2, orchard_db(), 2);
    auto [sk2, pk2] = keygen_client<C381>();
    auto [dict2, creds2] = register_client(st2, std::set<Bytes>{bs("fruit")}, pk2);
    (void)dict2;
    complete_credentials(creds2, sk2);

    SearchToken<C381> t = token_gen<C381>(QuerySpec{{bs("apple")}}, creds2);
    SearchResponse resp = dep.server.search(t);
    EXPECT_EQ(resp.status, SearchStatus::Ok);
    EXPECT_TRUE(resp.results.empty());
    auto audit = dep.server.drain_audit();
    ASSERT_EQ(audit.size(), 1u);
    EXPECT_NE(audit[0].find("unknown client"), std::string::npos);
}

TEST(Authorization, ForgedTokensRejected) {
    Deployment<C381> dep(orchard_db(), 2);
    const G1<C381> g1 = G1<C381>::generator();

    auto [skB, pkB] = keygen_client<C381>();
    auto [dictB, credsB] = register_client(dep.st, std::set<Bytes>{bs("veg")}, pkB);
    dep.server.put_dictionary(dictB);
    complete_credentials(credsB, skB);
    dep.server.drain_audit();

    // mismatched secret: token otherwise honest, pairing half replaced
    SearchToken<C381> t1 = token_gen<C381>(QuerySpec{{bs("apple")}}, dep.creds);
    t1.dh = dep.creds.owner_pk.mul(random_scalar<C381>().value());
    SearchResponse r1 = dep.server.search(t1);
    EXPECT_EQ(r1.status, SearchStatus::Ok);
    EXPECT_TRUE(r1.results.empty());

    // pivot outside the forger's authorization, built from stolen keyword keys
    SearchToken<C381> t2;
    t2.client_pk = credsB.client_pk;
    t2.dh = credsB.dh;
    const auto& stolen = dep.creds.per_kw.at(bs("apple"));
    t2.wtag1 = g1.mul(prf_fp<C381>(stolen.v, "wtag", bs("apple")).value());
    t2.f_h1w1 = prf_f(stolen.h, "theta", bs("apple"));
    Scalar<C381> aggB;
    for (const auto& [w, hv] : credsB.per_kw)
        aggB = aggB + prf_fp<C381>(hv.v, "wtag", w);
    t2.a_xtoken = aggB.is_zero() ? G1<C381>::infinity() : g1.mul(aggB.value());
    SearchResponse r2 = dep.server.search(t2);
    EXPECT_EQ(r2.status, SearchStatus::Ok);
    EXPECT_TRUE(r2.results.empty());

    // zero witness: identity wtag with the full accumulator shifted into the
    // aggregate passes the pairing but cannot address any keyword gate
    SearchToken<C381> t3;
    t3.client_pk = dep.creds.client_pk;
    t3.dh = dep.creds.dh;
    t3.wtag1 = G1<C381>::infinity();
    Scalar<C381> gamma;
    for (const auto& [w, hv] : dep.creds.per_kw)
        gamma = gamma + prf_fp<C381>(hv.v, "wtag", w);
    t3.a_xtoken = g1.mul(gamma.value());
    t3.f_h1w1 = prf_f(dep.creds.per_kw.begin()->second.h, "theta",
                      dep.creds.per_kw.begin()->first);
    SearchResponse r3 = dep.server.search(t3);
    EXPECT_EQ(r3.status, SearchStatus::Ok);
    EXPECT_TRUE(r3.results.empty());

    // externally identical denials, internally distinguished for the audit trail
    auto audit = dep.server.drain_audit();
    ASSERT_EQ(audit.size(), 3u);
    EXPECT_NE(audit[0].find("verification failed"), std::string::npos);
    EXPECT_NE(audit[1].find("verification failed"), std::string::npos);
    EXPECT_NE(audit[2].find("no keyword gate"), std::string::npos);
}

TEST(Updates, AdditionVisibilityFollowsSupplement) {
    Deployment<C381> dep(orchard_db(), 2);

    // new document for apple: immediately visible to single-keyword queries
    dep.server.apply_update(make_update(dep.st, UpdateOp::Add, bs("apple"), bs("doc-9")));
    std::set<Bytes> got = dep.run({bs("apple")});
    EXPECT_TRUE(got.count(bs("doc-9")));

    // as a conjunct it stays invisible until the cross-check hash arrives
    dep.server.apply_update(make_update(dep.st, UpdateOp::Add, bs("berry"), bs("doc-1")));
    EXPECT_EQ(dep.run({bs("apple"), bs("berry")}), std::set<Bytes>{bs("doc-2")});
    dep.server.apply_supplement(
        make_supplement(dep.st, dep.creds.client_pk, bs("berry"), bs("doc-1")));
    EXPECT_EQ(dep.run({bs("apple"), bs("berry")}),
              (std::set<Bytes>{bs("doc-1"), bs("doc-2")}));
}

TEST(Updates, DeletionLeavesTraversableHole) {
    Deployment<C381> dep(orchard_db(), 2);

    // apple list: doc-1 at slot 1, doc-2 at slot 2; removing slot 1 leaves a
    // hole the traversal must cross to reach the survivors
    dep.del(bs("apple"), bs("doc-1"));
    EXPECT_EQ(dep.server.tombstone_count(), 1u);
    std::size_t dummies = 0;
    EXPECT_EQ(dep.run({bs("apple")}, &dummies), std::set<Bytes>{bs("doc-2")});
    EXPECT_EQ(dummies, 2u);

    // the freed slot is never reused; additions take fresh padding slots
    dep.add(bs("apple"), bs("doc-7"));
    EXPECT_EQ(dep.run({bs("apple")}, &dummies),
              (std::set<Bytes>{bs("doc-2"), bs("doc-7")}));
    EXPECT_EQ(dummies, 1u);
    EXPECT_EQ(dep.server.tombstone_count(), 1u);
}

TEST(Updates, PaddingBudgetBoundsAdditions) {
    PlainDatabase db;
    db.pairs = {{bs("doc-1"), bs("apple")}};
    db.attr_of_kw[bs("apple")] = {bs("fruit")};
    Deployment<C381> dep(db, 1);

    dep.add(bs("apple"), bs("doc-2"));
    EXPECT_THROW(make_update(dep.st, UpdateOp::Add, bs("apple"), bs("doc-3")),
                 CapacityError);
    EXPECT_EQ(dep.run({bs("apple")}), (std::set<Bytes>{bs("doc-1"), bs("doc-2")}));
}

TEST(Updates, OwnerRefusesInconsistentOps) {
    Deployment<C381> dep(orchard_db(), 2);
    EXPECT_THROW(make_update(dep.st, UpdateOp::Add, bs("apple"), bs("doc-1")),
                 ConfigError);  // already present
    EXPECT_THROW(make_update(dep.st, UpdateOp::Del, bs("apple"), bs("doc-9")),
                 ConfigError);  // not present
    EXPECT_THROW(make_update(dep.st, UpdateOp::Add, bs("ghost"), bs("doc-9")),
                 ConfigError);  // unknown keyword
    EXPECT_THROW(make_update(dep.st, UpdateOp::Add, bs("apple"), make_dummy_id(0, 0)),
                 ConfigError);  // reserved id namespace
}

TEST(Updates, ServerDetectsDesync) {
    Deployment<C381> dep(orchard_db(), 2);

    UpdateMessage<C381> add = make_update(dep.st, UpdateOp::Add, bs("apple"), bs("doc-9"));
    UpdateMessage<C381> broken = add;
    broken.label[0] ^= 1;
    EXPECT_THROW(dep.server.apply_update(broken), ConfigError);
    dep.server.apply_update(add);

    UpdateMessage<C381> del = make_update(dep.st, UpdateOp::Del, bs("apple"), bs("doc-9"));
    dep.server.apply_update(del);
    EXPECT_THROW(dep.server.apply_update(del), ConfigError);  // replay
}

TEST(Updates, RandomMutationSequencesMatchMirror) {
    std::mt19937_64 rng(2026);
    for (int round = 0; round < 8; ++round) {
        CorpusConfig cfg;
        cfg.seed = 500 + static_cast<std::uint64_t>(round);
        cfg.keywords = 6;
        cfg.docs = 20;
        cfg.density = 0.2;
        const std::uint64_t alpha = 4;
        Deployment<C381> dep(gen_corpus(cfg), alpha);
        std::set<Bytes> kwset = dep.db.keywords();
        std::vector<Bytes> kws(kwset.begin(), kwset.end());

        for (int op = 0; op < 8; ++op) {
            bool want_add = rng() % 2 == 0;
            if (want_add) {
                Bytes w = kws[rng() % kws.size()];
                Bytes ind = corpus_doc_id(rng() % (cfg.docs + 10));
                if (dep.adds_left[w] > 0 && !dep.db.pairs.count({ind, w}))
                    dep.add(w, ind);
            } else if (!dep.db.pairs.empty()) {
                auto it = dep.db.pairs.begin();
                std::advance(it, static_cast<long>(rng() % dep.db.pairs.size()));
                auto [ind, w] = *it;
                dep.del(w, ind);
            }
            for (const auto& q : sample_queries(dep.db, 2, 1, 3, rng()))
                EXPECT_EQ(dep.run(q), conjunction_of(dep.db, q))
                    << "round " << round << " op " << op;
        }
    }
}

TEST(Revocation, FullRemovalBlocksFreshAndReplayedTokens) {
    Deployment<C381> dep(orchard_db(), 2);

    auto [skB, pkB] = keygen_client<C381>();
    auto [dictB, credsB] = register_client(dep.st, std::set<Bytes>{bs("fruit")}, pkB);
    dep.server.put_dictionary(dictB);
    complete_credentials(credsB, skB);

    SearchToken<C381> captured = token_gen<C381>(QuerySpec{{bs("apple")}}, credsB);
    EXPECT_FALSE(dep.server.search(captured).results.empty());

    RevocationResult<C381> rev = make_revocation(dep.st, pkB, std::nullopt);
    EXPECT_EQ(rev.msg.scope, RevocationScope::Full);
    EXPECT_FALSE(rev.reissued.has_value());
    dep.server.apply_revocation(rev.msg);
    EXPECT_FALSE(dep.server.has_dictionary(pkB));

    EXPECT_TRUE(dep.server.search(captured).results.empty());
    SearchToken<C381> fresh = token_gen<C381>(QuerySpec{{bs("berry")}}, credsB);
    EXPECT_TRUE(dep.server.search(fresh).results.empty());

    // an unrelated client keeps working
    EXPECT_EQ(dep.run({bs("apple")}), (std::set<Bytes>{bs("doc-1"), bs("doc-2")}));

    // owner forgets the registration; repeat revocation has no target
    EXPECT_THROW(make_revocation(dep.st, pkB, std::nullopt), ConfigError);
    dep.server.apply_revocation(rev.msg);  // idempotent at the server
}

TEST(Revocation, KeywordScopeSwapsAccumulatorAndStripsHashes) {
    Deployment<C381> dep(orchard_db(), 2);

    auto [skB, pkB] = keygen_client<C381>();
    auto [dictB, credsB] = register_client(dep.st, std::set<Bytes>{bs("fruit")}, pkB);
    dep.server.put_dictionary(dictB);
    complete_credentials(credsB, skB);

    EXPECT_EQ(decrypt_results(
                  dep.server.search(token_gen<C381>(QuerySpec{{bs("berry"), bs("apple")}}, credsB)).results,
                  credsB, bs("berry")).ids,
              std::set<Bytes>{bs("doc-2")});

    RevocationResult<C381> rev = make_revocation(dep.st, pkB, std::make_optional(bs("apple")));
    ASSERT_EQ(rev.msg.scope, RevocationScope::Keyword);
    ASSERT_TRUE(rev.reissued.has_value());
    dep.server.apply_revocation(rev.msg);

    // stale credentials fail verification on every pivot
    EXPECT_TRUE(dep.server.search(token_gen<C381>(QuerySpec{{bs("apple")}}, credsB)).results.empty());
    EXPECT_TRUE(dep.server.search(token_gen<C381>(QuerySpec{{bs("berry")}}, credsB)).results.empty());

    ClientCredentials<C381> fresh = *rev.reissued;
    complete_credentials(fresh, skB);
    EXPECT_THROW(token_gen<C381>(QuerySpec{{bs("apple")}}, fresh), ConfigError);
    EXPECT_EQ(decrypt_results(
                  dep.server.search(token_gen<C381>(QuerySpec{{bs("berry")}}, fresh)).results,
                  fresh, bs("berry")).ids,
              (std::set<Bytes>{bs("doc-2"), bs("doc-3")}));

    // smuggling the revoked keyword back in as a conjunct finds nothing:
    // its cross-check hashes are gone from the dictionary
    SearchToken<C381> smuggled = token_gen<C381>(QuerySpec{{bs("berry")}}, fresh);
    Scalar<C381> z1 = prf_fp<C381>(fresh.k_z, "z", bs("berry"));
    Scalar<C381> xtrap = prf_fp<C381>(fresh.k_x, "xtrap", bs("apple"));
    smuggled.xtokens.push_back(G1<C381>::generator().mul((xtrap * z1).value()));
    SearchResponse r = dep.server.search(smuggled);
    EXPECT_EQ(r.status, SearchStatus::Ok);
    EXPECT_TRUE(r.results.empty());
}

TEST(Revocation, LastKeywordEscalatesToFull) {
    Deployment<C381> dep(orchard_db(), 2);

    auto [skB, pkB] = keygen_client<C381>();
    auto [dictB, credsB] = register_client(dep.st, std::set<Bytes>{bs("veg")}, pkB);
    dep.server.put_dictionary(dictB);
    complete_credentials(credsB, skB);
    ASSERT_EQ(credsB.per_kw.size(), 1u);

    RevocationResult<C381> rev = make_revocation(dep.st, pkB, std::make_optional(bs("carrot")));
    EXPECT_EQ(rev.msg.scope, RevocationScope::Full);
    EXPECT_FALSE(rev.reissued.has_value());
    dep.server.apply_revocation(rev.msg);
    EXPECT_FALSE(dep.server.has_dictionary(pkB));
}

TEST(Revocation, ServerIgnoresUnknownTargets) {
    Deployment<C381> dep(orchard_db(), 2);
    auto [sk, pk] = keygen_client<C381>();
    (void)sk;
    RevocationMessage<C381> msg;
    msg.scope = RevocationScope::Full;
    msg.client_pk = pk;
    dep.server.apply_revocation(msg);  // no registered dictionary: warn only
    CtokenSupplement<C381> sup;
    sup.client_pk = pk;
    sup.add.push_back(Bytes(32, 0x5a));
    dep.server.apply_supplement(sup);
    auto audit = dep.server.drain_audit();
    ASSERT_EQ(audit.size(), 2u);
    EXPECT_NE(audit[0].find("ignored"), std::string::npos);
    EXPECT_NE(audit[1].find("ignored"), std::string::npos);
}

TEST(Registration, GuardsAgainstBadInput) {
    Deployment<C381> dep(orchard_db(), 2);
    auto [sk, pk] = keygen_client<C381>();
    (void)sk;
    EXPECT_THROW(register_client(dep.st, std::set<Bytes>{bs("nope")}, pk), ConfigError);
    EXPECT_THROW(register_client(dep.st, std::set<Bytes>{}, pk), ConfigError);
    EXPECT_THROW(register_client(dep.st, std::set<Bytes>{bs("fruit")}, G1<C381>::infinity()),
                 ConfigError);
    register_client(dep.st, std::set<Bytes>{bs("fruit")}, pk);
    EXPECT_THROW(register_client(dep.st, std::set<Bytes>{bs("veg")}, pk), ConfigError);
}

TEST(Credentials, CompletionRequiresMatchingSecret) {
    Deployment<C381> dep(orchard_db(), 2);
    auto [sk, pk] = keygen_client<C381>();
    (void)sk;
    auto [dict, creds] = register_client(dep.st, std::set<Bytes>{bs("fruit")}, pk);
    (void)dict;
    EXPECT_THROW(complete_credentials(creds, random_scalar<C381>()), ConfigError);
}

TEST(Rebuild, SameKeysReproduceStructure) {
    PlainDatabase db = orchard_db();
    OwnerState<C381> st = keygen_owner<C381>();
    EncryptedDatabase<C381> a = edb_setup(st, db, 2);
    EncryptedDatabase<C381> b = edb_setup(st, db, 2);

    EXPECT_EQ(a.xset, b.xset);
    EXPECT_EQ(a.cset, b.cset);
    ASSERT_EQ(a.tset.size(), b.tset.size());
    for (const auto& [label, entry] : a.tset) {
        auto it = b.tset.find(label);
        ASSERT_NE(it, b.tset.end());
        EXPECT_EQ(entry.y, it->second.y);
        // payloads re-encrypt under fresh nonces yet decrypt identically
        Bytes v;
        for (const auto& [w, keys] : st.key_tables.s_v) {
            (void)w;
            v = keys;
            auto p1 = sym_decrypt(v, entry.e);
            auto p2 = sym_decrypt(v, it->second.e);
            if (p1 && p2) {
                EXPECT_EQ(*p1, *p2);
                break;
            }
        }
    }
}

TEST(KnownAnswers, DerivationChainMatchesIndependentOracle) {
    using C = C381;
    PlainDatabase db;
    db.pairs = {{bs("doc-0001"), bs("alpha")}, {bs("doc-0002"), bs("alpha")}};
    db.attr_of_kw[bs("alpha")] = {bs("attr:a"), bs("attr:b")};

    OwnerState<C> st;
    st.k1 = seq16(0x10);
    st.k2 = seq16(0x20);
    st.k_t = seq16(0x30);
    st.k_x = seq16(0x40);
    st.k_z = seq16(0x50);
    st.sk_o = Scalar<C>::from_bytes(from_hex(scheme_kat::SK_O));
    st.pk_o = G2<C>::generator().mul(st.sk_o.value());

    auto m = detail::derive_keyword(st, bs("alpha"), db.attr_of_kw.at(bs("alpha")));
    EXPECT_EQ(to_hex(m.h), scheme_kat::H_KEY);
    EXPECT_EQ(to_hex(m.v), scheme_kat::V_KEY);
    EXPECT_EQ(to_hex(m.stag), scheme_kat::STAG);
    EXPECT_EQ(to_hex(m.theta), scheme_kat::THETA);
    EXPECT_EQ(to_hex(m.wtag_exp.to_bytes()), scheme_kat::WTAG_EXP);
    EXPECT_EQ(to_hex(m.z.to_bytes()), scheme_kat::Z_EXP);
    EXPECT_EQ(to_hex(m.xtrap.to_bytes()), scheme_kat::XTRAP_EXP);

    EncryptedDatabase<C> edb = edb_setup(st, db, 2);
    EXPECT_EQ(st.key_tables.count.at(bs("alpha")), std::stoull(scheme_kat::COUNT));
    EXPECT_EQ(st.next_free_slot.at(bs("alpha")), std::stoull(scheme_kat::NEXT_FREE));

    Bytes ctag = from_hex(scheme_kat::CTAG);
    ASSERT_EQ(edb.cset.size(), 1u);
    ASSERT_TRUE(edb.cset.count(ctag));
    EXPECT_EQ(to_hex(edb.cset.at(ctag)), scheme_kat::THETA);
    EXPECT_EQ(to_hex(hash_h(G1<C>::generator().mul(m.wtag_exp.value()).to_bytes())),
              scheme_kat::CTAG);

    ASSERT_EQ(edb.tset.size(), 4u);
    ASSERT_EQ(edb.xset.size(), 4u);
    for (int i = 0; i < 4; ++i) {
        Bytes label = from_hex(scheme_kat::LABEL[i]);
        ASSERT_TRUE(edb.tset.count(label)) << "slot " << (i + 1);
        EXPECT_EQ(to_hex(edb.tset.at(label).y.to_bytes()), scheme_kat::Y[i]);
        EXPECT_TRUE(edb.xset.count(from_hex(scheme_kat::XTAG[i])));
        auto pt = sym_decrypt(m.v, edb.tset.at(label).e);
        ASSERT_TRUE(pt.has_value());
        if (i < 2)
            EXPECT_EQ(*pt, bs(i == 0 ? "doc-0001" : "doc-0002"));
        else
            EXPECT_EQ(*pt, make_dummy_id(0, static_cast<std::uint32_t>(i - 2)));
    }

    Scalar<C> sk_c = Scalar<C>::from_bytes(from_hex(scheme_kat::SK_C));
    G1<C> client_pk = G1<C>::generator().mul(sk_c.value());
    EXPECT_EQ(to_hex(client_pk.to_bytes()), scheme_kat::CLIENT_PK);
    auto [dict, creds] = register_client(st, std::set<Bytes>{bs("attr:a")}, client_pk);
    (void)creds;
    EXPECT_EQ(to_hex(dict.sigma.to_bytes()), scheme_kat::SIGMA);
    EXPECT_EQ(to_hex(st.registered.at(client_pk.to_bytes()).gamma.to_bytes()),
              scheme_kat::WTAG_EXP);
    EXPECT_EQ(dict.ctoken,
              (ByteSet{from_hex(scheme_kat::CTOKEN_1), from_hex(scheme_kat::CTOKEN_2)}));
}

TEST(KnownAnswers, BaselineChainMatchesIndependentOracle) {
    using C = C381;
    PlainDatabase db;
    db.pairs = {{bs("doc-0001"), bs("alpha")}, {bs("doc-0002"), bs("alpha")}};
    db.attr_of_kw[bs("alpha")] = {bs("attr:a"), bs("attr:b")};

    OxtKeys<C> keys;
    keys.k_s = seq16(0x70);
    keys.k_i = seq16(0x80);
    keys.k_t = seq16(0x90);
    keys.k_z = seq16(0xA0);
    keys.k_x = seq16(0xB0);

    EXPECT_EQ(to_hex(prf_f(keys.k_s, "ke", bs("alpha"))), scheme_kat::B_KE);
    OxtSetupResult<C> s = oxt_setup(keys, db);
    EXPECT_EQ(s.counts.at(bs("alpha")), 2u);
    ASSERT_EQ(s.db.tset.size(), 2u);
    for (int i = 0; i < 2; ++i) {
        Bytes label = from_hex(scheme_kat::B_LABEL[i]);
        ASSERT_TRUE(s.db.tset.count(label));
        EXPECT_EQ(to_hex(s.db.tset.at(label).y.to_bytes()), scheme_kat::B_Y[i]);
        EXPECT_TRUE(s.db.xset.count(from_hex(scheme_kat::B_XTAG[i])));
    }

    // the per-slot mask is what separates the baseline: moving a document to
    // a different slot changes y, unlike the main scheme's slot-free blinding
    OxtToken<C> t = oxt_token_gen<C>(keys, s.counts, {bs("alpha")});
    EXPECT_EQ(to_hex(t.stag), scheme_kat::B_STAG);
}

TEST(Concurrency, SearchesProceedAcrossUpdates) {
    CorpusConfig cfg;
    cfg.seed = 77;
    cfg.keywords = 6;
    cfg.docs = 20;
    Deployment<C381> dep(gen_corpus(cfg), 4);
    std::set<Bytes> kwset = dep.db.keywords();
    std::vector<Bytes> kws(kwset.begin(), kwset.end());

    std::atomic<int> failures{0};
    std::vector<std::thread> readers;
    for (int t = 0; t < 4; ++t) {
        readers.emplace_back([&, t] {
            for (int i = 0; i < 6; ++i) {
                QuerySpec q = make_query({kws[(t + i) % kws.size()]}, dep.creds);
                SearchToken<C381> tok = token_gen<C381>(q, dep.creds);
                if (dep.server.search(tok).status != SearchStatus::Ok)
                    ++failures;
            }
        });
    }
    for (int i = 0; i < 4; ++i) {
        Bytes w = kws[i % kws.size()];
        Bytes ind = corpus_doc_id(100 + static_cast<std::size_t>(i));
        if (dep.adds_left[w] > 0 && !dep.db.pairs.count({ind, w}))
            dep.add(w, ind);
    }
    for (auto& th : readers)
        th.join();
    EXPECT_EQ(failures.load(), 0);
    for (const Bytes& w : kws)
        EXPECT_EQ(dep.run({w}), conjunction_of(dep.db, {w}));
}

TEST(WideParams, EndToEndOnLargerGroup) {
    using C = Bls12_383;
    CorpusConfig cfg;
    cfg.seed = 9;
    cfg.keywords = 4;
    cfg.docs = 12;
    PlainDatabase db = gen_corpus(cfg);
    Deployment<C> dep(db, 2);

    for (const auto& q : sample_queries(db, 5, 1, 3, 321))
        EXPECT_EQ(dep.run(q), conjunction_of(dep.db, q));

    Bytes w = *db.keywords().begin();
    dep.add(w, bs("fresh-doc"));
    EXPECT_TRUE(dep.run({w}).count(bs("fresh-doc")));

    RevocationResult<C> rev = make_revocation(dep.st, dep.creds.client_pk, std::nullopt);
    dep.server.apply_revocation(rev.msg);
    EXPECT_TRUE(dep.server.search(token_gen<C>(QuerySpec{{w}}, dep.creds)).results.empty());
}
