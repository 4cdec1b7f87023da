#pragma once

#include <memory>
#include <string>

#include "aifnav/bridge/session.hpp"

namespace aifnav::bridge {

// HTTP front end over a SessionManager. Routes live under /api/v1; see
// docs/bridge-protocol.md for payloads.
class Server {
public:
    Server();
    ~Server();

    SessionManager& sessions();

    // Binds and serves on the calling thread until stop().
    bool listen(const std::string& host, int port);
    // Binds to a free port and returns it; serve() then blocks.
    int bind_any(const std::string& host);
    bool serve();
    void stop();
    bool running() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace aifnav::bridge
