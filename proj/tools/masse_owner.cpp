#include "CLI11.hpp"

#include "masse/client.hpp"
#include "masse/corpus.hpp"
#include "masse/net.hpp"
#include "masse/owner.hpp"

#include "cli_util.hpp"

using namespace masse;

namespace {

struct StateFile {
    std::string path;
    std::string passphrase;
};

template <class C>
OwnerState<C> load_state(const StateFile& sf, const Bytes& raw) {
    return unseal_owner_state<C>(raw, sf.passphrase);
}

template <class C>
void save_state(const StateFile& sf, const OwnerState<C>& st) {
    cli::spit(sf.path, seal_owner_state(st, sf.passphrase));
}

// Emit one owner message either to a frame file or straight to a server.
void deliver(const std::string& out_path, const std::string& send_addr,
             const Bytes& transport_key, FrameType type, const Bytes& payload) {
    Bytes sealed = seal_owner_frame(transport_key, type, payload);
    if (!out_path.empty()) {
        cli::spit(out_path, cli::frame_to_bytes(type, sealed));
        std::printf("wrote %s\n", out_path.c_str());
    }
    if (!send_addr.empty()) {
        auto [host, port] = split_addr(send_addr);
        StatusReply ack = net_owner_send(host, port, transport_key, type, payload);
        if (!ack.ok())
            throw NetError("server refused the message: " + ack.text);
        std::printf("server accepted %s\n", send_addr.c_str());
    }
}

int owner_main(int argc, char** argv) {
    CLI::App app{"Data-owner toolchain: database encryption, client registration, "
                 "updates, and revocation"};
    app.require_subcommand(1);

    StateFile sf;
    std::string pass_flag, pass_env;
    auto add_state_opts = [&](CLI::App* cmd, bool state_required) {
        cmd->add_option("--state", sf.path, "sealed owner state file")->required(state_required);
        cmd->add_option("--passphrase", pass_flag, "state passphrase (prefer --passphrase-env)");
        cmd->add_option("--passphrase-env", pass_env,
                        "environment variable holding the state passphrase");
    };

    std::string send_addr, out_path, transport_key_path;
    auto add_delivery_opts = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write the message as a frame file");
        cmd->add_option("--send", send_addr, "send the message to a server at host:port");
        cmd->add_option("--transport-key", transport_key_path,
                        "hex file with the pre-shared server transport key")
            ->required();
    };

    // ---- setup ----
    auto* setup = app.add_subcommand("setup", "encrypt a plaintext database");
    std::string db_path, edb_out, tkey_out;
    std::uint64_t alpha = 16;
    int lambda = 128;
    add_state_opts(setup, true);
    setup->add_option("--db", db_path, "plaintext database description (text)")->required();
    setup->add_option("--edb-out", edb_out, "encrypted database output file")->required();
    setup->add_option("--alpha", alpha, "dummy update slots per keyword (default 16)");
    setup->add_option("--lambda", lambda, "security parameter: 128 or 256");
    setup->add_option("--transport-key-out", tkey_out,
                      "write a fresh pre-shared server transport key (hex)");

    // ---- register ----
    auto* reg = app.add_subcommand("register", "authorize a client by attribute set");
    std::string client_pk_path, creds_out;
    std::string attrs_csv;
    add_state_opts(reg, true);
    reg->add_option("--client-pk", client_pk_path, "client public key (hex file)")->required();
    reg->add_option("--attrs", attrs_csv, "comma-separated attribute list")->required();
    reg->add_option("--creds-out", creds_out, "client credential output file")->required();
    add_delivery_opts(reg);

    // ---- update ----
    auto* upd = app.add_subcommand("update", "add or delete a (keyword, document) pair");
    std::string op, keyword, doc;
    bool supplement = false;
    add_state_opts(upd, true);
    upd->add_option("--op", op, "add or del")->required()->check(CLI::IsMember({"add", "del"}));
    upd->add_option("--keyword", keyword, "keyword")->required();
    upd->add_option("--doc", doc, "document identifier")->required();
    upd->add_flag("--supplement", supplement,
                  "after an add, extend registered clients' conjunction tokens");
    add_delivery_opts(upd);

    // ---- revoke ----
    auto* rev = app.add_subcommand("revoke", "revoke a client fully or for one keyword");
    std::string rev_keyword, reissue_out;
    add_state_opts(rev, true);
    rev->add_option("--client-pk", client_pk_path, "client public key (hex file)")->required();
    rev->add_option("--keyword", rev_keyword, "restrict revocation to this keyword");
    rev->add_option("--creds-out", reissue_out,
                    "output for refreshed credentials (keyword scope)");
    add_delivery_opts(rev);

    // ---- info ----
    auto* info = app.add_subcommand("info", "print a summary of the sealed state");
    add_state_opts(info, true);

    CLI11_PARSE(app, argc, argv);

    if (setup->parsed()) {
        sf.passphrase = cli::resolve_passphrase(pass_flag, pass_env);
        PlainDatabase db = cli::parse_db_text(cli::slurp(db_path));
        dispatch_lambda(lambda, [&](auto tag) {
            using C = decltype(tag);
            OwnerState<C> st = keygen_owner<C>();
            EncryptedDatabase<C> edb = edb_setup(st, db, alpha);
            save_state(sf, st);
            cli::spit(edb_out, serialize(edb));
            PublicParams pp = params_for<C>();
            std::printf("group %s (lambda=%d)\n", pp.curve.c_str(), pp.lambda);
            std::printf("keywords=%zu pairs=%zu alpha=%llu\n", db.keywords().size(),
                        db.pairs.size(), static_cast<unsigned long long>(alpha));
            std::printf("tset=%zu xset=%zu cset=%zu -> %s\n", edb.tset.size(),
                        edb.xset.size(), edb.cset.size(), edb_out.c_str());
        });
        if (!tkey_out.empty()) {
            cli::write_hex_file(tkey_out, random_bytes(32));
            std::printf("transport key -> %s\n", tkey_out.c_str());
        }
        return 0;
    }

    if (info->parsed()) {
        sf.passphrase = cli::resolve_passphrase(pass_flag, pass_env);
        Bytes raw = cli::slurp(sf.path);
        dispatch_lambda(cli::peek_lambda(raw), [&](auto tag) {
            using C = decltype(tag);
            OwnerState<C> st = load_state<C>(sf, raw);
            std::printf("group %s\n", C::NAME);
            std::printf("keywords=%zu registered-clients=%zu alpha=%llu\n",
                        st.key_tables.count.size(), st.registered.size(),
                        static_cast<unsigned long long>(st.alpha));
            std::uint64_t free_slots = 0;
            for (const auto& [w, next] : st.next_free_slot)
                free_slots += st.key_tables.count.at(w) - next;
            std::printf("unused update slots=%llu\n",
                        static_cast<unsigned long long>(free_slots));
        });
        return 0;
    }

    // Remaining verbs need the state, the transport key, and a destination.
    sf.passphrase = cli::resolve_passphrase(pass_flag, pass_env);
    Bytes raw = cli::slurp(sf.path);
    Bytes transport_key = cli::read_hex_file(transport_key_path);
    if (out_path.empty() && send_addr.empty())
        throw ConfigError("choose a destination: --out file, --send host:port, or both");

    dispatch_lambda(cli::peek_lambda(raw), [&](auto tag) {
        using C = decltype(tag);
        OwnerState<C> st = load_state<C>(sf, raw);

        if (reg->parsed()) {
            G1<C> pk = G1<C>::from_bytes(cli::read_hex_file(client_pk_path));
            std::set<Bytes> attrs;
            for (auto& a : cli::split_csv(attrs_csv))
                attrs.insert(a);
            auto [dict, creds] = register_client(st, attrs, pk);
            save_state(sf, st);
            cli::spit(creds_out, serialize(creds));
            std::printf("authorized keywords=%zu ctoken entries=%zu creds -> %s\n",
                        creds.per_kw.size(), dict.ctoken.size(), creds_out.c_str());
            deliver(out_path, send_addr, transport_key, FrameType::RegisterDict,
                    serialize(dict));
            return;
        }

        if (upd->parsed()) {
            Bytes w(keyword.begin(), keyword.end());
            Bytes ind(doc.begin(), doc.end());
            UpdateMessage<C> msg =
                make_update(st, op == "add" ? UpdateOp::Add : UpdateOp::Del, w, ind);
            save_state(sf, st);
            deliver(out_path, send_addr, transport_key, FrameType::Update, serialize(msg));
            if (supplement && msg.op == UpdateOp::Add) {
                std::size_t i = 0;
                for (const auto& [pk_bytes, rc] : st.registered) {
                    if (!rc.keywords.count(w))
                        continue;
                    CtokenSupplement<C> supp =
                        make_supplement(st, G1<C>::from_bytes(pk_bytes), w, ind);
                    std::string supp_out;
                    if (!out_path.empty())
                        supp_out = out_path + ".supplement." + std::to_string(i++);
                    deliver(supp_out, send_addr, transport_key, FrameType::Supplement,
                            serialize(supp));
                }
            }
            return;
        }

        if (rev->parsed()) {
            G1<C> pk = G1<C>::from_bytes(cli::read_hex_file(client_pk_path));
            std::optional<Bytes> kw;
            if (!rev_keyword.empty())
                kw = Bytes(rev_keyword.begin(), rev_keyword.end());
            RevocationResult<C> result = make_revocation(st, pk, kw);
            save_state(sf, st);
            if (result.reissued) {
                if (reissue_out.empty())
                    throw ConfigError(
                        "keyword revocation refreshes credentials; pass --creds-out");
                cli::spit(reissue_out, serialize(*result.reissued));
                std::printf("refreshed credentials -> %s\n", reissue_out.c_str());
            }
            deliver(out_path, send_addr, transport_key, FrameType::Revoke,
                    serialize(result.msg));
            return;
        }
    });
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return cli::run_guarded(owner_main, argc, argv); }
