#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "masse/client.hpp"
#include "masse/corpus.hpp"
#include "masse/owner.hpp"
#include "masse/oxt.hpp"
#include "masse/server.hpp"

namespace masse {

// Benchmark corpora are regular: every keyword appears in exactly P
// documents, so per-query work is uniform and the phase costs scale cleanly
// with the corpus parameters.
struct BenchConfig {
    std::size_t keywords = 10;           // D
    std::size_t docs_per_keyword = 20;   // P
    std::size_t attrs_per_keyword = 2;
    std::uint64_t alpha = 16;
    std::vector<std::size_t> query_sizes;  // n values for token/search phases
    std::size_t repetitions = 10;
    std::uint64_t seed = 1;
    bool measure_setup = true;
    bool measure_tokens = true;
    bool measure_search = true;

    void validate() const {
        if (keywords == 0 || docs_per_keyword == 0 || attrs_per_keyword == 0)
            throw ConfigError("benchmark counts must be at least 1");
        if (repetitions == 0)
            throw ConfigError("repetitions must be at least 1");
        for (std::size_t n : query_sizes)
            if (n == 0 || n > keywords)
                throw ConfigError("query size must be in [1, keywords]");
    }
};

// Documents are drawn from a universe of 2P ids, so two keyword lists share
// a quarter of their documents in expectation and conjunctions stay
// non-trivial.
inline PlainDatabase gen_corpus(const BenchConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    PlainDatabase db;
    const std::size_t attr_universe = cfg.attrs_per_keyword * 4;
    std::uniform_int_distribution<std::size_t> attr_pick(0, attr_universe - 1);
    const std::size_t doc_universe = 2 * cfg.docs_per_keyword;

    std::vector<std::size_t> docs(doc_universe);
    for (std::size_t i = 0; i < doc_universe; ++i)
        docs[i] = i;

    for (std::size_t k = 0; k < cfg.keywords; ++k) {
        Bytes kw = corpus_keyword(k);
        std::set<Bytes>& attrs = db.attr_of_kw[kw];
        while (attrs.size() < cfg.attrs_per_keyword)
            attrs.insert(corpus_attr(attr_pick(rng)));
        // Partial Fisher-Yates: the first P entries become this keyword's
        // documents.
        for (std::size_t i = 0; i < cfg.docs_per_keyword; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, doc_universe - 1);
            std::swap(docs[i], docs[pick(rng)]);
            db.pairs.insert({corpus_doc_id(docs[i]), kw});
        }
    }
    return db;
}

// ---------------------------------------------------------------------------
// Timing. Monotonic clock; one warm-up execution excluded from statistics.

struct Timing {
    double mean_ms = 0.0;
    double stddev_ms = 0.0;
};

template <class Fn>
Timing measure(std::size_t reps, Fn&& fn) {
    fn();
    std::vector<double> samples;
    samples.reserve(reps);
    for (std::size_t i = 0; i < reps; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        auto t1 = std::chrono::steady_clock::now();
        samples.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    Timing t;
    for (double s : samples)
        t.mean_ms += s;
    t.mean_ms /= static_cast<double>(samples.size());
    if (samples.size() > 1) {
        double acc = 0.0;
        for (double s : samples)
            acc += (s - t.mean_ms) * (s - t.mean_ms);
        t.stddev_ms = std::sqrt(acc / static_cast<double>(samples.size() - 1));
    }
    return t;
}

// Least-squares fit of y = a + b*x, reporting the coefficient of
// determination.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

inline LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ConfigError("linear fit needs at least two points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0)
        throw ConfigError("linear fit is degenerate (constant x)");
    LinearFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double pred = f.intercept + f.slope * x[i];
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    f.r_squared = ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return f;
}

// ---------------------------------------------------------------------------
// Result rows.

struct BenchRow {
    std::string scheme;  // "masse" | "oxt"
    std::string phase;   // "edbsetup" | "tokengen" | "search"
    std::size_t D = 0;
    std::size_t P = 0;
    std::size_t n = 0;  // query size; 0 for setup rows
    double mean_ms = 0.0;
    double stddev_ms = 0.0;
};

inline std::string csv_header() { return "scheme,phase,D,P,n,mean_ms,stddev_ms"; }

inline std::string to_csv(const BenchRow& r) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s,%s,%zu,%zu,%zu,%.3f,%.3f", r.scheme.c_str(),
                  r.phase.c_str(), r.D, r.P, r.n, r.mean_ms, r.stddev_ms);
    return buf;
}

// ---------------------------------------------------------------------------
// Scheme environments reused across phases of one corpus.

template <class C>
struct MasseEnv {
    OwnerState<C> st;
    ServerStore<C> store;
    ClientCredentials<C> creds;

    MasseEnv(const PlainDatabase& db, std::uint64_t alpha) {
        st = keygen_owner<C>();
        store.load_edb(edb_setup(st, db, alpha));
        auto [sk, pk] = keygen_client<C>();
        std::set<Bytes> attrs;
        for (const auto& [a, kws] : db.kw_of_attr())
            attrs.insert(a);
        auto [dict, cr] = register_client(st, attrs, pk);
        store.put_dictionary(dict);
        creds = cr;
        complete_credentials(creds, sk);
    }
};

template <class C>
struct OxtEnv {
    OxtKeys<C> keys;
    OxtSetupResult<C> setup;

    explicit OxtEnv(const PlainDatabase& db) : keys(oxt_keygen<C>()), setup(oxt_setup(keys, db)) {}
};

// Samples n distinct keywords, deterministic under seed.
inline std::vector<Bytes> bench_query(const PlainDatabase& db, std::size_t n,
                                      std::uint64_t seed) {
    std::set<Bytes> kwset = db.keywords();
    std::vector<Bytes> kws(kwset.begin(), kwset.end());
    if (n > kws.size())
        throw ConfigError("query size exceeds keyword count");
    std::mt19937_64 rng(seed);
    std::shuffle(kws.begin(), kws.end(), rng);
    kws.resize(n);
    return kws;
}

// One corpus, both schemes, all configured phases. The search phase times
// the whole query protocol (token generation plus evaluation); decryption is
// excluded for both schemes.
template <class C>
std::vector<BenchRow> run_suite(const BenchConfig& cfg) {
    cfg.validate();
    PlainDatabase db = gen_corpus(cfg);
    const std::size_t D = cfg.keywords, P = cfg.docs_per_keyword;
    const std::size_t setup_reps = std::min<std::size_t>(cfg.repetitions, 3);
    std::vector<BenchRow> rows;

    if (cfg.measure_setup) {
        Timing tm = measure(setup_reps, [&] {
            OwnerState<C> st = keygen_owner<C>();
            EncryptedDatabase<C> edb = edb_setup(st, db, cfg.alpha);
            (void)edb;
        });
        rows.push_back({"masse", "edbsetup", D, P, 0, tm.mean_ms, tm.stddev_ms});
        Timing to = measure(setup_reps, [&] {
            OxtKeys<C> keys = oxt_keygen<C>();
            OxtDatabase<C> odb = oxt_setup(keys, db).db;
            (void)odb;
        });
        rows.push_back({"oxt", "edbsetup", D, P, 0, to.mean_ms, to.stddev_ms});
    }

    if (cfg.query_sizes.empty())
        return rows;

    MasseEnv<C> masse(db, cfg.alpha);
    OxtEnv<C> oxt(db);

    for (std::size_t n : cfg.query_sizes) {
        std::vector<Bytes> q = bench_query(db, n, cfg.seed ^ (0x9e3779b97f4a7c15ULL * n));
        QuerySpec spec = make_query(q, masse.creds);

        if (cfg.measure_tokens) {
            Timing tg_m = measure(cfg.repetitions, [&] {
                SearchToken<C> t = token_gen<C>(spec, masse.creds);
                (void)t;
            });
            rows.push_back({"masse", "tokengen", D, P, n, tg_m.mean_ms, tg_m.stddev_ms});

            Timing tg_o = measure(cfg.repetitions, [&] {
                OxtToken<C> t = oxt_token_gen(oxt.keys, oxt.setup.counts, q);
                (void)t;
            });
            rows.push_back({"oxt", "tokengen", D, P, n, tg_o.mean_ms, tg_o.stddev_ms});
        }

        if (cfg.measure_search) {
            Timing se_m = measure(cfg.repetitions, [&] {
                SearchToken<C> t = token_gen<C>(spec, masse.creds);
                SearchResponse resp = masse.store.search(t);
                (void)resp;
            });
            rows.push_back({"masse", "search", D, P, n, se_m.mean_ms, se_m.stddev_ms});

            Timing se_o = measure(cfg.repetitions, [&] {
                OxtToken<C> t = oxt_token_gen(oxt.keys, oxt.setup.counts, q);
                std::vector<Bytes> out = oxt_search(oxt.setup.db, t);
                (void)out;
            });
            rows.push_back({"oxt", "search", D, P, n, se_o.mean_ms, se_o.stddev_ms});
        }
    }
    return rows;
}

// Downscaled end-to-end correctness check run before any timing: both
// schemes must match the brute-force intersection on every sampled query.
// Returns an empty string on success, else a description of the mismatch.
template <class C>
std::string bench_gate(std::uint64_t seed) {
    BenchConfig cfg;
    cfg.keywords = 10;
    cfg.docs_per_keyword = 20;
    cfg.alpha = 4;
    cfg.seed = seed;
    PlainDatabase db = gen_corpus(cfg);
    MasseEnv<C> masse(db, cfg.alpha);
    OxtEnv<C> oxt(db);

    std::size_t qi = 0;
    for (const auto& q : sample_queries(db, 25, 1, 4, seed + 1)) {
        ++qi;
        std::set<Bytes> expect = conjunction_of(db, q);

        QuerySpec spec = make_query(q, masse.creds);
        SearchToken<C> t = token_gen<C>(spec, masse.creds);
        SearchResponse resp = masse.store.search(t);
        if (resp.status != SearchStatus::Ok)
            return "gate query " + std::to_string(qi) + ": unexpected response status";
        DecryptedResults res = decrypt_results(resp.results, masse.creds, spec.keywords.front());
        if (res.undecryptable != 0)
            return "gate query " + std::to_string(qi) + ": undecryptable entries";
        if (res.ids != expect)
            return "gate query " + std::to_string(qi) + ": result set diverges from the " +
                   "reference intersection (got " + std::to_string(res.ids.size()) +
                   ", want " + std::to_string(expect.size()) + ")";

        std::set<Bytes> ox = oxt_query(oxt.keys, oxt.setup, q);
        if (ox != expect)
            return "gate query " + std::to_string(qi) + ": baseline diverges from the " +
                   "reference intersection (got " + std::to_string(ox.size()) + ", want " +
                   std::to_string(expect.size()) + ")";
    }
    return "";
}

}  // namespace masse
