#include "CLI11.hpp"

#include "masse/client.hpp"
#include "masse/net.hpp"

#include "cli_util.hpp"

using namespace masse;

namespace {

template <class C>
ClientCredentials<C> load_creds(const Bytes& raw, const std::string& sk_path) {
    ClientCredentials<C> creds = deserialize_credentials<C>(raw);
    if (!sk_path.empty()) {
        Scalar<C> sk = Scalar<C>::from_bytes(cli::read_hex_file(sk_path));
        complete_credentials(creds, sk);
    } else if (creds.client_sk.is_zero()) {
        throw ConfigError("credentials lack the client secret; pass --sk");
    }
    return creds;
}

void print_results(const DecryptedResults& res) {
    for (const Bytes& id : res.ids)
        std::printf("%s\n", cli::printable_id(id).c_str());
    std::fprintf(stderr, "%zu match(es), %zu padding entr(ies) dropped", res.ids.size(),
                 res.dummies_dropped);
    if (res.undecryptable)
        std::fprintf(stderr, ", %zu undecryptable", res.undecryptable);
    std::fprintf(stderr, "\n");
}

int client_main(int argc, char** argv) {
    CLI::App app{"Client toolchain: key generation, conjunctive queries, and result "
                 "decryption"};
    app.require_subcommand(1);

    // ---- keygen ----
    auto* keygen = app.add_subcommand("keygen", "generate a client keypair");
    std::string sk_out, pk_out;
    int lambda = 128;
    keygen->add_option("--lambda", lambda, "security parameter: 128 or 256");
    keygen->add_option("--sk-out", sk_out, "secret key output (hex file)")->required();
    keygen->add_option("--pk-out", pk_out, "public key output (hex file)")->required();

    // ---- query ----
    auto* query = app.add_subcommand("query", "run or export a conjunctive query");
    std::string creds_path, sk_path, keywords_csv, token_out, server_addr;
    query->add_option("--creds", creds_path, "credential file from the data owner")
        ->required();
    query->add_option("--sk", sk_path, "client secret key (hex file)");
    query->add_option("--keywords", keywords_csv, "comma-separated keywords; first is "
                      "used as the pivot unless frequency hints say otherwise")
        ->required();
    query->add_option("--token-out", token_out, "write the search token as a frame file");
    query->add_option("--server", server_addr, "run the search against host:port");
    std::string response_out;
    query->add_option("--response-out", response_out,
                      "also save the raw response as a frame file (with --server)");

    // ---- decrypt ----
    auto* decrypt = app.add_subcommand("decrypt", "decrypt a stored search response");
    std::string response_path, pivot;
    decrypt->add_option("--creds", creds_path, "credential file from the data owner")
        ->required();
    decrypt->add_option("--sk", sk_path, "client secret key (hex file)");
    decrypt->add_option("--response", response_path, "response frame file")->required();
    decrypt->add_option("--pivot", pivot, "pivot keyword the query was issued with")
        ->required();

    CLI11_PARSE(app, argc, argv);

    if (keygen->parsed()) {
        dispatch_lambda(lambda, [&](auto tag) {
            using C = decltype(tag);
            auto [sk, pk] = keygen_client<C>();
            cli::write_hex_file(sk_out, sk.to_bytes());
            cli::write_hex_file(pk_out, pk.to_bytes());
            std::printf("group %s: secret -> %s, public -> %s\n", C::NAME, sk_out.c_str(),
                        pk_out.c_str());
        });
        return 0;
    }

    Bytes creds_raw = cli::slurp(creds_path);
    dispatch_lambda(cli::peek_lambda(creds_raw), [&](auto tag) {
        using C = decltype(tag);
        ClientCredentials<C> creds = load_creds<C>(creds_raw, sk_path);

        if (query->parsed()) {
            if (token_out.empty() && server_addr.empty())
                throw ConfigError("choose --token-out, --server, or both");
            QuerySpec q = make_query(cli::split_csv(keywords_csv), creds);
            SearchToken<C> token = token_gen<C>(q, creds);
            std::fprintf(stderr, "pivot %s\n",
                         cli::printable_id(q.keywords.front()).c_str());
            if (!token_out.empty()) {
                cli::spit(token_out, cli::frame_to_bytes(FrameType::SearchReq,
                                                         serialize(token)));
                std::fprintf(stderr, "token -> %s\n", token_out.c_str());
            }
            if (!server_addr.empty()) {
                auto [host, port] = split_addr(server_addr);
                SearchResponse resp = net_search(host, port, token);
                if (!response_out.empty())
                    cli::spit(response_out,
                              cli::frame_to_bytes(FrameType::SearchResp, serialize(resp)));
                if (resp.status != SearchStatus::Ok)
                    throw NetError("server reported a protocol error");
                print_results(decrypt_results(resp.results, creds, q.keywords.front()));
            }
            return;
        }

        if (decrypt->parsed()) {
            Frame f = cli::frame_from_bytes(cli::slurp(response_path));
            if (f.type != FrameType::SearchResp)
                throw FormatError("not a search response frame");
            SearchResponse resp = deserialize_response(f.payload);
            if (resp.status != SearchStatus::Ok)
                throw NetError("stored response carries a protocol error");
            print_results(
                decrypt_results(resp.results, creds, Bytes(pivot.begin(), pivot.end())));
            return;
        }
    });
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return cli::run_guarded(client_main, argc, argv); }
