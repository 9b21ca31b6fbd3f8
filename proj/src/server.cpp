#include "slicetour/server.hpp"

#include <chrono>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "slicetour/error.hpp"

namespace slicetour {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

constexpr std::size_t kMaxQueuedMessages = 512;

constexpr std::string_view kStubPage = R"(<!doctype html>
<html><head><meta charset="utf-8"><title>slicetour</title></head>
<body><p>slicetour stream server. Connect a viewer to the websocket endpoint
<code>/session</code>.</p></body></html>
)";

std::string_view mime_type(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".html" || ext == ".htm") return "text/html";
    if (ext == ".js" || ext == ".mjs") return "application/javascript";
    if (ext == ".css") return "text/css";
    if (ext == ".json") return "application/json";
    if (ext == ".png") return "image/png";
    if (ext == ".svg") return "image/svg+xml";
    if (ext == ".wasm") return "application/wasm";
    return "application/octet-stream";
}

} // namespace

class WsConnection;

struct StreamServer::Impl {
    Impl(std::shared_ptr<Session> s, ServerOptions o)
        : session(std::move(s)), options(std::move(o)), acceptor(ioc), tick_timer(ioc),
          heartbeat_timer(ioc) {}

    void start_accept();
    void schedule_tick();
    void schedule_heartbeat();
    void attach(const std::shared_ptr<WsConnection>& c);
    void detach(Session::ClientId id);
    std::shared_ptr<http::response<http::string_body>> static_response(
        const http::request<http::string_body>& req) const;

    std::shared_ptr<Session> session;
    ServerOptions options;
    net::io_context ioc;
    tcp::acceptor acceptor;
    net::steady_timer tick_timer;
    net::steady_timer heartbeat_timer;
    std::chrono::steady_clock::time_point next_tick;
    std::map<Session::ClientId, std::shared_ptr<WsConnection>> connections;
    Session::ClientId next_id = 1;
};

class WsConnection : public std::enable_shared_from_this<WsConnection> {
public:
    WsConnection(tcp::socket&& socket, StreamServer::Impl& server, Session::ClientId id)
        : ws_(std::move(socket)), server_(server), id_(id) {}

    Session::ClientId id() const { return id_; }

    void start(http::request<http::string_body> req) {
        ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        ws_.set_option(websocket::stream_base::decorator(
            [](websocket::response_type& res) { res.set(http::field::server, "slicetour"); }));
        ws_.async_accept(req, beast::bind_front_handler(&WsConnection::on_accept, shared_from_this()));
    }

    void send(std::shared_ptr<const std::string> msg) {
        if (closed_) return;
        queue_.push_back(std::move(msg));
        if (queue_.size() > kMaxQueuedMessages) {
            // viewer cannot keep up; drop the connection rather than the frames
            close();
            return;
        }
        if (!writing_) do_write();
    }

    void ping() {
        if (pinging_ || closed_) return;
        pinging_ = true;
        ws_.async_ping({}, [self = shared_from_this()](beast::error_code) { self->pinging_ = false; });
    }

    void close() {
        if (closed_) return;
        closed_ = true;
        beast::error_code ec;
        beast::get_lowest_layer(ws_).socket().close(ec);
    }

private:
    void on_accept(beast::error_code ec) {
        if (ec) return;
        server_.attach(shared_from_this());
        send(std::make_shared<const std::string>(server_.session->hello()));
        do_read();
    }

    void do_read() {
        ws_.async_read(buffer_, beast::bind_front_handler(&WsConnection::on_read, shared_from_this()));
    }

    void on_read(beast::error_code ec, std::size_t) {
        if (ec) {
            closed_ = true;
            server_.detach(id_);
            return;
        }
        const auto text = beast::buffers_to_string(buffer_.data());
        buffer_.consume(buffer_.size());
        if (auto error = server_.session->submit(text, id_)) {
            send(std::make_shared<const std::string>(std::move(*error)));
        }
        do_read();
    }

    void do_write() {
        writing_ = true;
        ws_.text(true);
        ws_.async_write(net::buffer(*queue_.front()),
                        beast::bind_front_handler(&WsConnection::on_write, shared_from_this()));
    }

    void on_write(beast::error_code ec, std::size_t) {
        if (ec) {
            closed_ = true;
            writing_ = false;
            server_.detach(id_);
            return;
        }
        queue_.pop_front();
        if (queue_.empty() || closed_) {
            writing_ = false;
            return;
        }
        do_write();
    }

    websocket::stream<beast::tcp_stream> ws_;
    StreamServer::Impl& server_;
    Session::ClientId id_;
    beast::flat_buffer buffer_;
    std::deque<std::shared_ptr<const std::string>> queue_;
    bool writing_ = false;
    bool pinging_ = false;
    bool closed_ = false;
};

class HttpSession : public std::enable_shared_from_this<HttpSession> {
public:
    HttpSession(tcp::socket&& socket, StreamServer::Impl& server)
        : stream_(std::move(socket)), server_(server) {}

    void run() {
        stream_.expires_after(std::chrono::seconds(30));
        http::async_read(stream_, buffer_, req_,
                         beast::bind_front_handler(&HttpSession::on_read, shared_from_this()));
    }

private:
    void on_read(beast::error_code ec, std::size_t) {
        if (ec) return;
        if (websocket::is_upgrade(req_)) {
            if (req_.target() == "/session") {
                stream_.expires_never();
                const auto id = server_.next_id++;
                std::make_shared<WsConnection>(stream_.release_socket(), server_, id)->start(std::move(req_));
                return;
            }
            auto res = std::make_shared<http::response<http::string_body>>(http::status::not_found, req_.version());
            res->set(http::field::content_type, "text/plain");
            res->body() = "unknown websocket endpoint; use /session\n";
            res->prepare_payload();
            respond(std::move(res));
            return;
        }
        respond(server_.static_response(req_));
    }

    void respond(std::shared_ptr<http::response<http::string_body>> res) {
        res->keep_alive(false);
        http::async_write(stream_, *res,
                          [self = shared_from_this(), res](beast::error_code, std::size_t) {
                              beast::error_code ignored;
                              self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
                          });
    }

    beast::tcp_stream stream_;
    StreamServer::Impl& server_;
    beast::flat_buffer buffer_;
    http::request<http::string_body> req_;
};

void StreamServer::Impl::attach(const std::shared_ptr<WsConnection>& c) { connections[c->id()] = c; }

void StreamServer::Impl::detach(Session::ClientId id) { connections.erase(id); }

std::shared_ptr<http::response<http::string_body>> StreamServer::Impl::static_response(
    const http::request<http::string_body>& req) const {
    auto res = std::make_shared<http::response<http::string_body>>(http::status::ok, req.version());
    res->set(http::field::server, "slicetour");
    std::string target(req.target());
    if (const auto q = target.find('?'); q != std::string::npos) target.resize(q);
    if (req.method() != http::verb::get && req.method() != http::verb::head) {
        res->result(http::status::method_not_allowed);
    } else if (target.find("..") != std::string::npos || target.empty() || target[0] != '/') {
        res->result(http::status::bad_request);
    } else {
        if (target.back() == '/') target += "index.html";
        const auto path = options.static_dir / target.substr(1);
        std::ifstream in(path, std::ios::binary);
        if (!options.static_dir.empty() && in) {
            std::ostringstream body;
            body << in.rdbuf();
            res->set(http::field::content_type, std::string(mime_type(path)));
            res->body() = body.str();
        } else if (target == "/index.html") {
            res->set(http::field::content_type, "text/html");
            res->body() = std::string(kStubPage);
        } else {
            res->result(http::status::not_found);
            res->set(http::field::content_type, "text/plain");
            res->body() = "not found\n";
        }
    }
    res->prepare_payload();
    if (req.method() == http::verb::head) res->body().clear();
    return res;
}

void StreamServer::Impl::start_accept() {
    acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
        if (ec) return;  // acceptor closed
        std::make_shared<HttpSession>(std::move(socket), *this)->run();
        start_accept();
    });
}

void StreamServer::Impl::schedule_tick() {
    const auto period = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(1.0 / options.fps));
    next_tick += period;
    const auto now = std::chrono::steady_clock::now();
    if (next_tick < now) next_tick = now;  // fell behind; do not burst
    tick_timer.expires_at(next_tick);
    tick_timer.async_wait([this](beast::error_code ec) {
        if (ec) return;
        auto tick = session->tick();
        for (auto& reply : tick.replies) {
            if (auto it = connections.find(reply.to); it != connections.end()) {
                it->second->send(std::make_shared<const std::string>(std::move(reply.text)));
            }
        }
        if (tick.frame) {
            const auto text = std::make_shared<const std::string>(serialize(*tick.frame));
            // copy: send() may detach a connection while we iterate
            const auto targets = connections;
            for (const auto& [id, c] : targets) c->send(text);
        }
        schedule_tick();
    });
}

void StreamServer::Impl::schedule_heartbeat() {
    heartbeat_timer.expires_after(std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(options.heartbeat_seconds)));
    heartbeat_timer.async_wait([this](beast::error_code ec) {
        if (ec) return;
        const auto targets = connections;
        for (const auto& [id, c] : targets) c->ping();
        schedule_heartbeat();
    });
}

StreamServer::StreamServer(std::shared_ptr<Session> session, ServerOptions options)
    : impl_(std::make_unique<Impl>(std::move(session), std::move(options))) {
    auto& o = impl_->options;
    if (!(o.fps > 0.0)) throw DomainError("fps must be positive");
    if (!(o.heartbeat_seconds > 0.0)) throw DomainError("heartbeat interval must be positive");
    beast::error_code ec;
    const auto address = net::ip::make_address(o.host, ec);
    if (ec) throw IoError("invalid host address '" + o.host + "'");
    const tcp::endpoint endpoint{address, o.port};
    auto& acc = impl_->acceptor;
    const auto fail = [&](const char* what) {
        throw IoError(std::string("cannot ") + what + " " + o.host + ":" + std::to_string(o.port) +
                      ": " + ec.message());
    };
    acc.open(endpoint.protocol(), ec);
    if (ec) fail("open");
    acc.set_option(net::socket_base::reuse_address(true), ec);
    acc.bind(endpoint, ec);
    if (ec) fail("bind");
    acc.listen(net::socket_base::max_listen_connections, ec);
    if (ec) fail("listen on");
}

StreamServer::~StreamServer() = default;

unsigned short StreamServer::port() const { return impl_->acceptor.local_endpoint().port(); }

std::string StreamServer::endpoint() const {
    return "ws://" + impl_->options.host + ":" + std::to_string(port()) + "/session";
}

void StreamServer::run() {
    impl_->start_accept();
    impl_->next_tick = std::chrono::steady_clock::now();
    impl_->schedule_tick();
    impl_->schedule_heartbeat();
    impl_->ioc.run();
}

void StreamServer::stop() {
    net::post(impl_->ioc, [impl = impl_.get()] {
        beast::error_code ec;
        impl->acceptor.close(ec);
        impl->tick_timer.cancel();
        impl->heartbeat_timer.cancel();
        for (auto& [id, c] : impl->connections) c->close();
        impl->connections.clear();
        impl->ioc.stop();
    });
}

} // namespace slicetour
