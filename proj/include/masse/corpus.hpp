#pragma once

#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "masse/datamodel.hpp"

namespace masse {

// Synthetic corpora for tests and benchmarks. Generation is deterministic
// for a given config, so a corpus can be regenerated from its seed instead
// of being shipped around.
struct CorpusConfig {
    std::uint64_t seed = 1;
    std::size_t keywords = 20;
    std::size_t docs = 100;
    std::size_t attrs_per_keyword = 2;
    double density = 0.15;  // chance a document carries a given keyword
};

inline Bytes corpus_label(const char* prefix, std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%05zu", prefix, i);
    return Bytes(buf, buf + std::char_traits<char>::length(buf));
}

inline Bytes corpus_doc_id(std::size_t i) { return corpus_label("doc-", i); }
inline Bytes corpus_keyword(std::size_t i) { return corpus_label("kw-", i); }
inline Bytes corpus_attr(std::size_t i) { return corpus_label("attr-", i); }

inline PlainDatabase gen_corpus(const CorpusConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    PlainDatabase db;
    const std::size_t universe = cfg.attrs_per_keyword * 4;
    std::uniform_int_distribution<std::size_t> attr_pick(0, universe - 1);
    std::uniform_int_distribution<std::size_t> doc_pick(0, cfg.docs - 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    for (std::size_t k = 0; k < cfg.keywords; ++k) {
        std::set<Bytes> attrs;
        while (attrs.size() < cfg.attrs_per_keyword)
            attrs.insert(corpus_attr(attr_pick(rng)));
        db.attr_of_kw[corpus_keyword(k)] = std::move(attrs);
    }
    for (std::size_t d = 0; d < cfg.docs; ++d)
        for (std::size_t k = 0; k < cfg.keywords; ++k)
            if (coin(rng) < cfg.density)
                db.pairs.insert({corpus_doc_id(d), corpus_keyword(k)});
    for (std::size_t k = 0; k < cfg.keywords; ++k) {
        Bytes kw = corpus_keyword(k);
        if (db.docs_of(kw).empty())
            db.pairs.insert({corpus_doc_id(doc_pick(rng)), kw});
    }
    return db;
}

// Uniform conjunctive queries with between min_n and max_n distinct keywords.
inline std::vector<std::vector<Bytes>> sample_queries(const PlainDatabase& db,
                                                      std::size_t count,
                                                      std::size_t min_n,
                                                      std::size_t max_n,
                                                      std::uint64_t seed) {
    std::set<Bytes> kwset = db.keywords();
    std::vector<Bytes> kws(kwset.begin(), kwset.end());
    if (kws.empty())
        throw ConfigError("corpus has no keywords");
    max_n = std::min(max_n, kws.size());
    min_n = std::min(min_n, max_n);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size_pick(min_n, max_n);
    std::vector<std::vector<Bytes>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<Bytes> pool = kws;
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(size_pick(rng));
        out.push_back(std::move(pool));
    }
    return out;
}

// Reference evaluation: documents carrying every query keyword.
inline std::set<Bytes> conjunction_of(const PlainDatabase& db,
                                      const std::vector<Bytes>& q) {
    if (q.empty())
        return {};
    std::vector<Bytes> first = db.docs_of(q.front());
    std::set<Bytes> out(first.begin(), first.end());
    for (std::size_t j = 1; j < q.size() && !out.empty(); ++j) {
        std::vector<Bytes> dv = db.docs_of(q[j]);
        std::set<Bytes> ds(dv.begin(), dv.end());
        std::set<Bytes> keep;
        std::set_intersection(out.begin(), out.end(), ds.begin(), ds.end(),
                              std::inserter(keep, keep.begin()));
        out = std::move(keep);
    }
    return out;
}

}  // namespace masse
