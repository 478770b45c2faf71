#include "CLI11.hpp"

#include "masse/bench.hpp"

#include "cli_util.hpp"

using namespace masse;

namespace {

// "50..500" expands to doubling steps {50, 100, 200, 400, 500}; a single
// number is a one-point sweep.
std::vector<std::size_t> parse_range(const std::string& s) {
    std::size_t lo = 0, hi = 0;
    auto pos = s.find("..");
    try {
        if (pos == std::string::npos) {
            lo = hi = std::stoul(s);
        } else {
            lo = std::stoul(s.substr(0, pos));
            hi = std::stoul(s.substr(pos + 2));
        }
    } catch (const std::exception&) {
        throw ConfigError("range must be N or LO..HI");
    }
    if (lo == 0 || hi < lo)
        throw ConfigError("range must be N or LO..HI with 1 <= LO <= HI");
    std::vector<std::size_t> out;
    for (std::size_t v = lo; v <= hi; v *= 2)
        out.push_back(v);
    if (out.back() < hi)
        out.push_back(hi);
    return out;
}

int bench_main(int argc, char** argv) {
    CLI::App app{"Benchmark harness: setup/token/search timings for the scheme and "
                 "the cross-tag baseline, written as CSV"};

    std::string keywords_range = "50..200";
    std::string queries_range = "5..20";
    std::size_t docs = 50;
    std::size_t search_docs = 0;
    std::size_t search_keywords = 0;
    std::size_t reps = 3;
    std::uint64_t alpha = 16;
    std::uint64_t seed = 1;
    int lambda = 128;
    std::string out_path;

    app.add_option("--keywords", keywords_range,
                   "setup sweep over keyword counts, N or LO..HI (doubling steps)");
    app.add_option("--docs", docs, "documents per keyword for setup/token sweeps");
    app.add_option("--queries", queries_range,
                   "search sweep over query sizes, N or LO..HI (doubling steps)");
    app.add_option("--search-docs", search_docs,
                   "documents per keyword for the search sweep (default 3/4 of --docs)");
    app.add_option("--search-keywords", search_keywords,
                   "corpus keywords for the search sweep (default max of --keywords)");
    app.add_option("--reps", reps, "timed repetitions per phase (one warm-up excluded)");
    app.add_option("--alpha", alpha, "dummy update slots per keyword");
    app.add_option("--seed", seed, "corpus/query seed");
    app.add_option("--lambda", lambda, "security parameter: 128 or 256");
    app.add_option("--out", out_path, "CSV output file")->required();

    CLI11_PARSE(app, argc, argv);

    std::vector<std::size_t> setup_sweep = parse_range(keywords_range);
    std::vector<std::size_t> query_sweep = parse_range(queries_range);
    const std::size_t token_corpus_d = setup_sweep.back();
    if (search_keywords == 0)
        search_keywords = setup_sweep.back();
    if (search_docs == 0)
        search_docs = docs - docs / 4;

    int rc = 0;
    dispatch_lambda(lambda, [&](auto tag) {
        using C = decltype(tag);

        std::fprintf(stderr, "correctness gate (D=10, P=20)...\n");
        std::string verdict = bench_gate<C>(seed);
        if (!verdict.empty()) {
            std::fprintf(stderr, "correctness gate failed: %s\n", verdict.c_str());
            std::fprintf(stderr, "no timings were recorded\n");
            rc = 2;
            return;
        }

        std::vector<BenchRow> rows;
        auto append = [&rows](std::vector<BenchRow> r) {
            for (auto& row : r)
                rows.push_back(std::move(row));
        };

        for (std::size_t d : setup_sweep) {
            std::fprintf(stderr, "edbsetup D=%zu P=%zu\n", d, docs);
            BenchConfig cfg;
            cfg.keywords = d;
            cfg.docs_per_keyword = docs;
            cfg.alpha = alpha;
            cfg.repetitions = reps;
            cfg.seed = seed + d;
            cfg.measure_tokens = cfg.measure_search = false;
            append(run_suite<C>(cfg));
        }

        {
            std::fprintf(stderr, "tokengen D=%zu P=%zu n in {", token_corpus_d, docs);
            for (std::size_t n : setup_sweep)
                std::fprintf(stderr, " %zu", n);
            std::fprintf(stderr, " }\n");
            BenchConfig cfg;
            cfg.keywords = token_corpus_d;
            cfg.docs_per_keyword = docs;
            cfg.alpha = alpha;
            cfg.query_sizes = setup_sweep;
            cfg.repetitions = reps;
            cfg.seed = seed + 1000003;
            cfg.measure_setup = false;
            cfg.measure_search = false;
            append(run_suite<C>(cfg));
        }

        {
            std::fprintf(stderr, "search D=%zu P=%zu n in {", search_keywords, search_docs);
            for (std::size_t n : query_sweep)
                std::fprintf(stderr, " %zu", n);
            std::fprintf(stderr, " }\n");
            BenchConfig cfg;
            cfg.keywords = search_keywords;
            cfg.docs_per_keyword = search_docs;
            cfg.alpha = alpha;
            cfg.query_sizes = query_sweep;
            cfg.repetitions = reps;
            cfg.seed = seed + 2000003;
            cfg.measure_setup = false;
            cfg.measure_tokens = false;
            append(run_suite<C>(cfg));
        }

        std::string csv = csv_header() + "\n";
        for (const BenchRow& r : rows)
            csv += to_csv(r) + "\n";
        cli::spit(out_path, Bytes(csv.begin(), csv.end()));
        std::fprintf(stderr, "%zu rows -> %s\n", rows.size(), out_path.c_str());
    });
    return rc;
}

}  // namespace

int main(int argc, char** argv) { return cli::run_guarded(bench_main, argc, argv); }
