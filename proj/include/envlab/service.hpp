#pragma once

#include <map>
#include <memory>
#include <string>

#include "json.hpp"

namespace envlab::service {

using Query = std::map<std::string, std::string>;

struct Response {
    int status = 200;
    nlohmann::json body;
};

constexpr int kMaxSamples = 65536;
constexpr int kDefaultPort = 8642;

// GET /api/envelope: a, b, r, c, d, n, include_lines, line_count and an
// optional kind (one_circle, two_circle, offset_circle, caustic). Without a
// kind, c = d = 0 picks one_circle for r = 1 and two_circle otherwise.
Response envelope(const Query& q);
// GET /api/standard: model (swallowtail | butterfly), y, z, n.
Response standard(const Query& q);
// GET /api/health.
Response health();

// Routes a path to its handler; 404 for anything else.
Response dispatch(const std::string& path, const Query& q);

struct ServerConfig {
    std::string host = "127.0.0.1";
    int port = kDefaultPort;
    std::string cors_origin = "*";
};

// Defaults overridden by ENVLAB_PORT and ENVLAB_CORS_ORIGIN.
ServerConfig config_from_env();

class Server {
public:
    explicit Server(ServerConfig cfg);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    // Binds the configured port, or any free port when it is 0. Returns the
    // bound port, or -1 on failure.
    int bind();
    // Blocks until stop() is called.
    bool listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace envlab::service
