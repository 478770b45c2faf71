#pragma once

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <openssl/crypto.h>

#include <atomic>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "masse/datamodel.hpp"
#include "masse/server.hpp"

namespace masse {

// Stream protocol: each frame is a 4-byte big-endian length (covering the
// type byte and payload), a 1-byte frame type, then the payload. Search
// requests and responses carry the binary token/response encodings; frames
// originated by the data owner additionally carry a 32-byte HMAC trailer
// keyed with a pre-shared transport key.
enum class FrameType : std::uint8_t {
    SearchReq = 1,
    SearchResp = 2,
    Update = 3,
    Revoke = 4,
    RegisterDict = 5,
    Status = 6,
    Supplement = 7,
};

inline bool frame_type_known(std::uint8_t t) {
    return t >= 1 && t <= static_cast<std::uint8_t>(FrameType::Supplement);
}

inline bool frame_owner_originated(FrameType t) {
    return t == FrameType::Update || t == FrameType::Revoke ||
           t == FrameType::RegisterDict || t == FrameType::Supplement;
}

struct Frame {
    FrameType type = FrameType::Status;
    Bytes payload;
};

inline constexpr std::size_t MAX_FRAME_PAYLOAD = 256u << 20;
inline constexpr std::size_t FRAME_MAC_BYTES = 32;

// Small status reply used for owner-frame acknowledgements, probes, and
// protocol-level failures.
enum class StatusCode : std::uint8_t {
    Ok = 0,
    ProtocolError = 1,
    AuthError = 2,
    Rejected = 3,
};

struct StatusReply {
    StatusCode code = StatusCode::Ok;
    std::string text;

    bool ok() const { return code == StatusCode::Ok; }
};

inline Bytes encode_status(const StatusReply& s) {
    Bytes out;
    append_u8(out, static_cast<std::uint8_t>(s.code));
    Bytes t(s.text.begin(), s.text.end());
    append_u32(out, static_cast<std::uint32_t>(t.size()));
    out.insert(out.end(), t.begin(), t.end());
    return out;
}

inline StatusReply decode_status(const Bytes& in) {
    ByteReader r(in);
    StatusReply s;
    std::uint8_t code = r.u8();
    if (code > static_cast<std::uint8_t>(StatusCode::Rejected))
        throw FormatError("unknown status code");
    s.code = static_cast<StatusCode>(code);
    Bytes t = r.bytes(r.u32());
    s.text.assign(t.begin(), t.end());
    if (!r.done())
        throw FormatError("trailing bytes after status");
    return s;
}

// Owner-frame authentication: the payload is followed by
// HMAC(key, type || payload) so a frame cannot be replayed as another type.
inline Bytes seal_owner_frame(const Bytes& key, FrameType type, const Bytes& payload) {
    Bytes msg;
    append_u8(msg, static_cast<std::uint8_t>(type));
    msg.insert(msg.end(), payload.begin(), payload.end());
    Bytes sealed = payload;
    Bytes mac = hmac_sha256(key, msg);
    sealed.insert(sealed.end(), mac.begin(), mac.end());
    return sealed;
}

inline std::optional<Bytes> open_owner_frame(const Bytes& key, FrameType type,
                                             const Bytes& sealed) {
    if (sealed.size() < FRAME_MAC_BYTES)
        return std::nullopt;
    Bytes payload(sealed.begin(), sealed.end() - FRAME_MAC_BYTES);
    Bytes msg;
    append_u8(msg, static_cast<std::uint8_t>(type));
    msg.insert(msg.end(), payload.begin(), payload.end());
    Bytes want = hmac_sha256(key, msg);
    if (CRYPTO_memcmp(want.data(), sealed.data() + payload.size(), FRAME_MAC_BYTES) != 0)
        return std::nullopt;
    return payload;
}

// Move-only RAII socket.
class Socket {
  public:
    Socket() = default;
    explicit Socket(int fd) : fd_(fd) {}
    Socket(Socket&& o) noexcept : fd_(o.fd_) { o.fd_ = -1; }
    Socket& operator=(Socket&& o) noexcept {
        if (this != &o) {
            close_fd();
            fd_ = o.fd_;
            o.fd_ = -1;
        }
        return *this;
    }
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;
    ~Socket() { close_fd(); }

    bool valid() const { return fd_ >= 0; }
    int fd() const { return fd_; }

    void send_all(const std::uint8_t* data, std::size_t len) {
        while (len > 0) {
            ssize_t n = ::send(fd_, data, len, MSG_NOSIGNAL);
            if (n < 0) {
                if (errno == EINTR)
                    continue;
                throw NetError("send failed");
            }
            data += n;
            len -= static_cast<std::size_t>(n);
        }
    }

    // False on clean EOF before the first byte; throws if the stream ends
    // mid-object.
    bool recv_exact(std::uint8_t* data, std::size_t len) {
        std::size_t got = 0;
        while (got < len) {
            ssize_t n = ::recv(fd_, data + got, len - got, 0);
            if (n < 0) {
                if (errno == EINTR)
                    continue;
                throw NetError("recv failed");
            }
            if (n == 0) {
                if (got == 0)
                    return false;
                throw NetError("connection closed mid-frame");
            }
            got += static_cast<std::size_t>(n);
        }
        return true;
    }

  private:
    void close_fd() {
        if (fd_ >= 0) {
            ::close(fd_);
            fd_ = -1;
        }
    }
    int fd_ = -1;
};

inline void send_frame(Socket& s, FrameType type, const Bytes& payload) {
    if (payload.size() > MAX_FRAME_PAYLOAD)
        throw NetError("frame payload too large");
    Bytes head;
    append_u32(head, static_cast<std::uint32_t>(payload.size() + 1));
    append_u8(head, static_cast<std::uint8_t>(type));
    s.send_all(head.data(), head.size());
    if (!payload.empty())
        s.send_all(payload.data(), payload.size());
}

// nullopt on clean EOF. Oversized or malformed framing throws NetError.
inline std::optional<Frame> recv_frame(Socket& s) {
    std::uint8_t head[4];
    if (!s.recv_exact(head, 4))
        return std::nullopt;
    std::uint32_t len = (std::uint32_t(head[0]) << 24) | (std::uint32_t(head[1]) << 16) |
                        (std::uint32_t(head[2]) << 8) | std::uint32_t(head[3]);
    if (len == 0)
        throw NetError("empty frame");
    if (len - 1 > MAX_FRAME_PAYLOAD)
        throw NetError("frame too large");
    std::uint8_t type;
    if (!s.recv_exact(&type, 1))
        throw NetError("connection closed mid-frame");
    Frame f;
    if (!frame_type_known(type))
        throw NetError("unknown frame type");
    f.type = static_cast<FrameType>(type);
    f.payload.resize(len - 1);
    if (len > 1 && !s.recv_exact(f.payload.data(), f.payload.size()))
        throw NetError("connection closed mid-frame");
    return f;
}

inline std::pair<std::string, std::uint16_t> split_addr(const std::string& addr) {
    auto pos = addr.rfind(':');
    if (pos == std::string::npos || pos + 1 >= addr.size())
        throw ConfigError("address must be host:port");
    std::string host = addr.substr(0, pos);
    unsigned long port = 0;
    try {
        port = std::stoul(addr.substr(pos + 1));
    } catch (const std::exception&) {
        throw ConfigError("invalid port in address");
    }
    if (port > 65535)
        throw ConfigError("invalid port in address");
    return {host.empty() ? std::string("0.0.0.0") : host, static_cast<std::uint16_t>(port)};
}

inline sockaddr_in make_sockaddr(const std::string& host, std::uint16_t port) {
    sockaddr_in sa{};
    sa.sin_family = AF_INET;
    sa.sin_port = htons(port);
    if (inet_pton(AF_INET, host.c_str(), &sa.sin_addr) != 1)
        throw ConfigError("address must be a dotted-quad IPv4 host");
    return sa;
}

inline Socket tcp_listen(const std::string& host, std::uint16_t port,
                         std::uint16_t* bound_port = nullptr) {
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0)
        throw NetError("socket creation failed");
    Socket s(fd);
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in sa = make_sockaddr(host, port);
    if (::bind(fd, reinterpret_cast<sockaddr*>(&sa), sizeof(sa)) != 0)
        throw NetError("bind failed");
    if (::listen(fd, 64) != 0)
        throw NetError("listen failed");
    if (bound_port) {
        sockaddr_in got{};
        socklen_t len = sizeof(got);
        if (::getsockname(fd, reinterpret_cast<sockaddr*>(&got), &len) != 0)
            throw NetError("getsockname failed");
        *bound_port = ntohs(got.sin_port);
    }
    return s;
}

inline Socket tcp_connect(const std::string& host, std::uint16_t port) {
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0)
        throw NetError("socket creation failed");
    Socket s(fd);
    sockaddr_in sa = make_sockaddr(host, port);
    if (::connect(fd, reinterpret_cast<sockaddr*>(&sa), sizeof(sa)) != 0)
        throw NetError("connect failed");
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    return s;
}

// Serves a ServerStore over TCP. One thread per connection; connections are
// shut down on stop() so joins cannot hang. Frames from the owner must carry
// a valid transport MAC; search requests are unauthenticated (the token is
// self-authorizing).
template <class C>
class NetServer {
  public:
    // Invoked after an owner frame mutates the store, from the connection's
    // thread; must be safe to call concurrently.
    std::function<void(FrameType)> on_mutation;

    NetServer(ServerStore<C>& store, Bytes owner_key)
        : store_(store), owner_key_(std::move(owner_key)) {}

    ~NetServer() { stop(); }

    void start(const std::string& host, std::uint16_t port) {
        listen_ = tcp_listen(host, port, &port_);
        stop_.store(false);
        acceptor_ = std::thread([this] { accept_loop(); });
    }

    std::uint16_t port() const { return port_; }

    void stop() {
        bool was = stop_.exchange(true);
        if (was)
            return;
        if (listen_.valid())
            ::shutdown(listen_.fd(), SHUT_RDWR);
        if (acceptor_.joinable())
            acceptor_.join();
        {
            std::lock_guard<std::mutex> lk(mu_);
            for (int fd : live_fds_)
                ::shutdown(fd, SHUT_RDWR);
        }
        for (auto& t : conns_)
            if (t.joinable())
                t.join();
        conns_.clear();
        listen_ = Socket();
    }

    Frame handle(const Frame& req) {
        switch (req.type) {
            case FrameType::SearchReq:
                return handle_search(req.payload);
            case FrameType::Status: {
                StatusReply s{StatusCode::Ok, store_info()};
                return {FrameType::Status, encode_status(s)};
            }
            case FrameType::Update:
            case FrameType::Revoke:
            case FrameType::RegisterDict:
            case FrameType::Supplement:
                return handle_owner(req.type, req.payload);
            case FrameType::SearchResp:
                break;
        }
        return status_frame(StatusCode::ProtocolError, "unexpected frame type");
    }

  private:
    Frame status_frame(StatusCode code, const std::string& text) {
        return {FrameType::Status, encode_status(StatusReply{code, text})};
    }

    Frame handle_search(const Bytes& payload) {
        SearchToken<C> token;
        try {
            token = deserialize_token<C>(payload);
        } catch (const Error&) {
            SearchResponse bad;
            bad.status = SearchStatus::ProtocolError;
            return {FrameType::SearchResp, serialize(bad)};
        }
        return {FrameType::SearchResp, serialize(store_.search(token))};
    }

    Frame handle_owner(FrameType type, const Bytes& sealed) {
        std::optional<Bytes> payload = open_owner_frame(owner_key_, type, sealed);
        if (!payload)
            return status_frame(StatusCode::AuthError, "owner authentication failed");
        try {
            switch (type) {
                case FrameType::Update:
                    store_.apply_update(deserialize_update<C>(*payload));
                    break;
                case FrameType::Revoke:
                    store_.apply_revocation(deserialize_revocation<C>(*payload));
                    break;
                case FrameType::RegisterDict:
                    store_.put_dictionary(deserialize_dictionary<C>(*payload));
                    break;
                case FrameType::Supplement:
                    store_.apply_supplement(deserialize_supplement<C>(*payload));
                    break;
                default:
                    break;
            }
        } catch (const FormatError& e) {
            return status_frame(StatusCode::ProtocolError, e.what());
        } catch (const Error& e) {
            return status_frame(StatusCode::Rejected, e.what());
        }
        if (on_mutation)
            on_mutation(type);
        return status_frame(StatusCode::Ok, "");
    }

    std::string store_info() {
        EncryptedDatabase<C> snap = store_.snapshot_edb();
        std::string s = "tset=" + std::to_string(snap.tset.size());
        s += " xset=" + std::to_string(snap.xset.size());
        s += " cset=" + std::to_string(snap.cset.size());
        s += " dictionaries=" + std::to_string(store_.dictionary_owners().size());
        s += " tombstones=" + std::to_string(store_.tombstone_count());
        return s;
    }

    void accept_loop() {
        while (!stop_.load()) {
            pollfd pfd{listen_.fd(), POLLIN, 0};
            int rc = ::poll(&pfd, 1, 200);
            if (rc <= 0)
                continue;
            int fd = ::accept(listen_.fd(), nullptr, nullptr);
            if (fd < 0)
                continue;
            {
                std::lock_guard<std::mutex> lk(mu_);
                if (stop_.load()) {
                    ::close(fd);
                    return;
                }
                live_fds_.insert(fd);
                conns_.emplace_back([this, fd] { serve_conn(fd); });
            }
        }
    }

    void serve_conn(int fd) {
        Socket sock(fd);
        try {
            while (!stop_.load()) {
                std::optional<Frame> req = recv_frame(sock);
                if (!req)
                    break;
                Frame resp = handle(*req);
                send_frame(sock, resp.type, resp.payload);
            }
        } catch (const NetError& e) {
            // Framing violations get a terse status if the socket still
            // accepts writes, then the connection drops.
            try {
                Frame resp = status_frame(StatusCode::ProtocolError, e.what());
                send_frame(sock, resp.type, resp.payload);
            } catch (const NetError&) {
            }
        }
        std::lock_guard<std::mutex> lk(mu_);
        live_fds_.erase(fd);
    }

    ServerStore<C>& store_;
    Bytes owner_key_;
    Socket listen_;
    std::uint16_t port_ = 0;
    std::atomic<bool> stop_{true};
    std::thread acceptor_;
    std::mutex mu_;
    std::set<int> live_fds_;
    std::vector<std::thread> conns_;
};

// Client-side conveniences. Each call opens a fresh connection.
inline Frame roundtrip(const std::string& host, std::uint16_t port, FrameType type,
                       const Bytes& payload) {
    Socket s = tcp_connect(host, port);
    send_frame(s, type, payload);
    std::optional<Frame> resp = recv_frame(s);
    if (!resp)
        throw NetError("server closed connection without replying");
    return *resp;
}

template <class C>
SearchResponse net_search(const std::string& host, std::uint16_t port,
                          const SearchToken<C>& token) {
    Frame resp = roundtrip(host, port, FrameType::SearchReq, serialize(token));
    if (resp.type == FrameType::Status) {
        StatusReply s = decode_status(resp.payload);
        throw NetError("server refused search: " + s.text);
    }
    if (resp.type != FrameType::SearchResp)
        throw NetError("unexpected reply to search request");
    return deserialize_response(resp.payload);
}

inline StatusReply net_owner_send(const std::string& host, std::uint16_t port,
                                  const Bytes& owner_key, FrameType type,
                                  const Bytes& payload) {
    if (!frame_owner_originated(type))
        throw ConfigError("not an owner frame type");
    Frame resp = roundtrip(host, port, type, seal_owner_frame(owner_key, type, payload));
    if (resp.type != FrameType::Status)
        throw NetError("unexpected reply to owner message");
    return decode_status(resp.payload);
}

inline StatusReply net_probe(const std::string& host, std::uint16_t port) {
    Frame resp = roundtrip(host, port, FrameType::Status, Bytes{});
    if (resp.type != FrameType::Status)
        throw NetError("unexpected reply to status request");
    return decode_status(resp.payload);
}

}  // namespace masse
