#include "CLI11.hpp"

#include <csignal>

#include <chrono>
#include <mutex>
#include <thread>

#include "masse/net.hpp"
#include "masse/server.hpp"

#include "cli_util.hpp"

using namespace masse;

namespace {

volatile std::sig_atomic_t g_stop = 0;
void on_signal(int) { g_stop = 1; }

std::string default_dicts_path(const std::string& edb_path) { return edb_path + ".dicts"; }

template <class C>
void load_store(ServerStore<C>& store, const std::string& edb_path,
                const std::string& dicts_path) {
    store.load_edb(deserialize_edb<C>(cli::slurp(edb_path)));
    if (cli::file_exists(dicts_path)) {
        auto side = cli::decode_sidecar<C>(cli::slurp(dicts_path));
        for (auto& d : side.dicts)
            store.put_dictionary(std::move(d));
        store.set_tombstones(std::move(side.tombstones));
    }
}

template <class C>
void persist_dicts(const ServerStore<C>& store, const std::string& dicts_path) {
    cli::StoreSidecar<C> side;
    for (const Bytes& pk : store.dictionary_owners())
        side.dicts.push_back(store.dictionary(G1<C>::from_bytes(pk)));
    side.tombstones = store.tombstones();
    cli::spit(dicts_path, cli::encode_sidecar(side));
}

template <class C>
void persist_edb(const ServerStore<C>& store, const std::string& edb_path) {
    cli::spit(edb_path, serialize(store.snapshot_edb()));
}

template <class C>
void print_summary(const ServerStore<C>& store) {
    EncryptedDatabase<C> edb = store.snapshot_edb();
    std::printf("group %s\n", C::NAME);
    std::printf("tset=%zu xset=%zu cset=%zu tombstones=%zu\n", edb.tset.size(),
                edb.xset.size(), edb.cset.size(), store.tombstone_count());
    std::vector<Bytes> owners = store.dictionary_owners();
    std::printf("dictionaries=%zu\n", owners.size());
    for (const Bytes& pk : owners) {
        std::string hex = to_hex(pk);
        std::printf("  client %s... ctoken=%zu\n", hex.substr(0, 16).c_str(),
                    store.dictionary(G1<C>::from_bytes(pk)).ctoken.size());
    }
}

int server_main(int argc, char** argv) {
    CLI::App app{"Search server: hosts the encrypted database, verifies client "
                 "authorization, and applies owner messages"};
    app.require_subcommand(1);

    std::string edb_path, dicts_path, auth_path, listen_addr;

    auto* serve = app.add_subcommand("serve", "answer queries over a TCP socket");
    serve->add_option("--listen", listen_addr, "bind address host:port")->required();
    serve->add_option("--edb", edb_path, "encrypted database file")->required();
    serve->add_option("--dicts", dicts_path, "dictionary store (default <edb>.dicts)");
    serve->add_option("--auth", auth_path, "hex file with the owner transport key")
        ->required();

    auto* load = app.add_subcommand("load", "apply owner frame files offline");
    std::vector<std::string> frame_files;
    load->add_option("--edb", edb_path, "encrypted database file")->required();
    load->add_option("--dicts", dicts_path, "dictionary store (default <edb>.dicts)");
    load->add_option("--auth", auth_path, "hex file with the owner transport key")
        ->required();
    load->add_option("frames", frame_files, "frame files, applied in order")->required();

    auto* dump = app.add_subcommand("dump", "print stored structure sizes");
    dump->add_option("--edb", edb_path, "encrypted database file")->required();
    dump->add_option("--dicts", dicts_path, "dictionary store (default <edb>.dicts)");

    CLI11_PARSE(app, argc, argv);

    if (dicts_path.empty())
        dicts_path = default_dicts_path(edb_path);

    Bytes edb_raw_head = cli::slurp(edb_path);
    dispatch_lambda(cli::peek_lambda(edb_raw_head), [&](auto tag) {
        using C = decltype(tag);
        ServerStore<C> store;
        load_store(store, edb_path, dicts_path);

        if (dump->parsed()) {
            print_summary(store);
            return;
        }

        if (load->parsed()) {
            Bytes key = cli::read_hex_file(auth_path);
            for (const std::string& path : frame_files) {
                Frame f = cli::frame_from_bytes(cli::slurp(path));
                if (!frame_owner_originated(f.type))
                    throw ConfigError(path + ": not an owner message frame");
                std::optional<Bytes> payload = open_owner_frame(key, f.type, f.payload);
                if (!payload)
                    throw CryptoError(path + ": owner authentication failed");
                switch (f.type) {
                    case FrameType::Update:
                        store.apply_update(deserialize_update<C>(*payload));
                        break;
                    case FrameType::Revoke:
                        store.apply_revocation(deserialize_revocation<C>(*payload));
                        break;
                    case FrameType::RegisterDict:
                        store.put_dictionary(deserialize_dictionary<C>(*payload));
                        break;
                    case FrameType::Supplement:
                        store.apply_supplement(deserialize_supplement<C>(*payload));
                        break;
                    default:
                        break;
                }
                std::printf("applied %s\n", path.c_str());
            }
            persist_edb(store, edb_path);
            persist_dicts(store, dicts_path);
            for (const std::string& note : store.drain_audit())
                std::fprintf(stderr, "note: %s\n", note.c_str());
            return;
        }

        // serve
        auto [host, port] = split_addr(listen_addr);
        NetServer<C> net(store, cli::read_hex_file(auth_path));
        std::mutex persist_mu;
        net.on_mutation = [&](FrameType type) {
            std::lock_guard<std::mutex> lk(persist_mu);
            // deletes touch both files (tset shrinks, a tombstone appears)
            if (type == FrameType::Update)
                persist_edb(store, edb_path);
            persist_dicts(store, dicts_path);
        };
        net.start(host, port);
        std::printf("listening on %s:%u\n", host.c_str(), net.port());
        std::fflush(stdout);

        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        while (!g_stop)
            std::this_thread::sleep_for(std::chrono::milliseconds(100));
        std::printf("shutting down\n");
        net.stop();
        persist_edb(store, edb_path);
        persist_dicts(store, dicts_path);
        for (const std::string& note : store.drain_audit())
            std::fprintf(stderr, "note: %s\n", note.c_str());
    });
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return cli::run_guarded(server_main, argc, argv); }
