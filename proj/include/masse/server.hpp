#pragma once

#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "masse/datamodel.hpp"
#include "masse/owner.hpp"
#include "masse/pairing.hpp"
#include "masse/prf.hpp"

namespace masse {

// Holds the encrypted database and per-client authorization dictionaries.
// Searches run concurrently under a shared lock; updates and revocations
// take exclusive access, so no search observes a half-applied change.
template <class C>
class ServerStore {
public:
    ServerStore() = default;

    explicit ServerStore(EncryptedDatabase<C> edb) : edb_(std::move(edb)) {}

    void load_edb(EncryptedDatabase<C> edb) {
        std::unique_lock lock(mu_);
        edb_ = std::move(edb);
        tombstones_.clear();
    }

    void put_dictionary(ClientDictionary<C> dict) {
        std::unique_lock lock(mu_);
        dicts_[dict.client_pk.to_bytes()] = std::move(dict);
    }

    SearchResponse search(const SearchToken<C>& token) const {
        std::shared_lock lock(mu_);
        SearchResponse resp;

        auto dit = dicts_.find(token.client_pk.to_bytes());
        if (dit == dicts_.end()) {
            note("access denied: unknown client");
            return resp;
        }
        const ClientDictionary<C>& dict = dit->second;

        GT<C> lhs = pairing(dict.sigma, G2<C>::generator());
        GT<C> rhs = pairing(token.a_xtoken.add(token.wtag1), token.dh);
        if (lhs != rhs) {
            note("access denied: verification failed");
            return resp;
        }

        auto cit = edb_.cset.find(hash_h(token.wtag1.to_bytes()));
        if (cit == edb_.cset.end()) {
            note("no keyword gate for presented witness");
            return resp;
        }
        if (token.f_h1w1.size() != cit->second.size()) {
            note("malformed witness material");
            return resp;
        }
        Bytes stag = xor_bytes(cit->second, token.f_h1w1);

        const bool single = token.xtokens.empty();
        for (std::uint64_t c = 1;; ++c) {
            Bytes label = tset_label(stag, c);
            if (tombstones_.count(label))
                continue;
            auto tit = edb_.tset.find(label);
            if (tit == edb_.tset.end())
                break;
            const TsetEntry<C>& entry = tit->second;
            if (single) {
                resp.results.push_back(entry.e);
                continue;
            }
            bool all = true;
            for (const G1<C>& xt : token.xtokens) {
                Bytes xb = xt.mul(entry.y.value()).to_bytes();
                if (!edb_.xset.count(xb) || !dict.ctoken.count(hash_h(xb))) {
                    all = false;
                    break;
                }
            }
            if (all)
                resp.results.push_back(entry.e);
        }
        return resp;
    }

    void apply_update(const UpdateMessage<C>& msg) {
        std::unique_lock lock(mu_);
        if (msg.op == UpdateOp::Add) {
            auto it = edb_.tset.find(msg.label);
            if (it == edb_.tset.end())
                throw ConfigError("no slot at the given label (state desync)");
            it->second = {msg.e, msg.y};
            edb_.xset.insert(msg.xtag.to_bytes());
        } else {
            auto it = edb_.tset.find(msg.label);
            if (it == edb_.tset.end())
                throw ConfigError("no entry at the given label (state desync)");
            edb_.tset.erase(it);
            tombstones_.insert(msg.label);
            if (edb_.xset.erase(msg.xtag.to_bytes()) == 0)
                note("delete: cross tag was already absent");
        }
    }

    void apply_revocation(const RevocationMessage<C>& msg) {
        std::unique_lock lock(mu_);
        auto it = dicts_.find(msg.client_pk.to_bytes());
        if (it == dicts_.end()) {
            note("revocation for unknown client ignored");
            return;
        }
        if (msg.scope == RevocationScope::Full) {
            dicts_.erase(it);
            return;
        }
        it->second.sigma = msg.sigma_new;
        for (const Bytes& h : msg.remove)
            it->second.ctoken.erase(h);
    }

    void apply_supplement(const CtokenSupplement<C>& msg) {
        std::unique_lock lock(mu_);
        auto it = dicts_.find(msg.client_pk.to_bytes());
        if (it == dicts_.end()) {
            note("supplement for unknown client ignored");
            return;
        }
        for (const Bytes& h : msg.add)
            it->second.ctoken.insert(h);
    }

    EncryptedDatabase<C> snapshot_edb() const {
        std::shared_lock lock(mu_);
        return edb_;
    }

    std::vector<Bytes> dictionary_owners() const {
        std::shared_lock lock(mu_);
        std::vector<Bytes> out;
        for (const auto& [pk, _] : dicts_)
            out.push_back(pk);
        return out;
    }

    bool has_dictionary(const G1<C>& pk) const {
        std::shared_lock lock(mu_);
        return dicts_.count(pk.to_bytes()) > 0;
    }

    ClientDictionary<C> dictionary(const G1<C>& pk) const {
        std::shared_lock lock(mu_);
        return dicts_.at(pk.to_bytes());
    }

    std::size_t tombstone_count() const {
        std::shared_lock lock(mu_);
        return tombstones_.size();
    }

    // Tombstones are part of the server's durable state: a restarted server
    // that forgot them would stop list traversal at the first deleted slot.
    ByteSet tombstones() const {
        std::shared_lock lock(mu_);
        return tombstones_;
    }

    void set_tombstones(ByteSet t) {
        std::unique_lock lock(mu_);
        tombstones_ = std::move(t);
    }

    std::vector<std::string> drain_audit() {
        std::lock_guard lock(audit_mu_);
        std::vector<std::string> out;
        out.swap(audit_);
        return out;
    }

private:
    void note(std::string entry) const {
        std::lock_guard lock(audit_mu_);
        audit_.push_back(std::move(entry));
    }

    EncryptedDatabase<C> edb_;
    std::map<Bytes, ClientDictionary<C>> dicts_;
    ByteSet tombstones_;
    mutable std::shared_mutex mu_;
    mutable std::mutex audit_mu_;
    mutable std::vector<std::string> audit_;
};

}  // namespace masse
