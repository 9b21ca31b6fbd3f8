#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "slicetour/session.hpp"

namespace slicetour {

struct ServerOptions {
    static constexpr unsigned short kDefaultPort = 8390;

    std::string host = "127.0.0.1";
    unsigned short port = kDefaultPort;  // 0 picks a free port
    double fps = 25.0;
    double heartbeat_seconds = 10.0;
    std::filesystem::path static_dir;  // viewer assets; empty serves a stub page
};

// Websocket endpoint at /session plus static files over plain HTTP on the
// same port. All connections share one Session: each receives every frame,
// and controls from any of them are applied at the next frame boundary.
// Replies (ack/error) go only to the sender.
class StreamServer {
public:
    // Binds immediately; throws IoError if the address is unavailable.
    StreamServer(std::shared_ptr<Session> session, ServerOptions options);
    ~StreamServer();

    StreamServer(const StreamServer&) = delete;
    StreamServer& operator=(const StreamServer&) = delete;

    unsigned short port() const;
    std::string endpoint() const;  // ws://host:port/session

    // Serves until stop() is called. Runs on the calling thread.
    void run();
    // Safe to call from any thread.
    void stop();

    struct Impl;

private:
    std::unique_ptr<Impl> impl_;
};

} // namespace slicetour
