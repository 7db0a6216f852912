#include "envlab/service.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>

#include "envlab/error.hpp"
#include "envlab/families.hpp"
#include "envlab/render.hpp"
#include "httplib.h"

namespace envlab::service {

namespace {

struct BadRequest {
    std::string reason;
    std::string message;
};

Response error_response(int status, const std::string& reason, const std::string& message) {
    return {status, {{"error", message}, {"reason", reason}}};
}

std::optional<std::string> get(const Query& q, const std::string& key) {
    const auto it = q.find(key);
    if (it == q.end()) return std::nullopt;
    return it->second;
}

long parse_int(const Query& q, const std::string& key, std::optional<long> fallback) {
    const auto s = get(q, key);
    if (!s) {
        if (fallback) return *fallback;
        throw BadRequest{"missing_parameter", "missing parameter '" + key + "'"};
    }
    long v = 0;
    const auto [ptr, ec] = std::from_chars(s->data(), s->data() + s->size(), v);
    if (ec != std::errc() || ptr != s->data() + s->size())
        throw BadRequest{"invalid_parameter", "parameter '" + key + "' must be an integer"};
    return v;
}

double parse_real(const Query& q, const std::string& key, double fallback) {
    const auto s = get(q, key);
    if (!s) return fallback;
    char* end = nullptr;
    const double v = std::strtod(s->c_str(), &end);
    if (s->empty() || *end != '\0' || !std::isfinite(v))
        throw BadRequest{"invalid_parameter", "parameter '" + key + "' must be a finite number"};
    return v;
}

bool parse_bool(const Query& q, const std::string& key) {
    const auto s = get(q, key);
    if (!s) return false;
    if (*s == "1" || *s == "true") return true;
    if (*s == "0" || *s == "false") return false;
    throw BadRequest{"invalid_parameter", "parameter '" + key + "' must be true or false"};
}

int parse_samples(const Query& q) {
    const long n = parse_int(q, "n", 2048);
    if (n < 64) throw BadRequest{"invalid_parameter", "parameter 'n' must be at least 64"};
    return static_cast<int>(std::min<long>(n, kMaxSamples));
}

Response from_error(const Error& e) {
    switch (e.code()) {
        case ErrorCode::InvalidSlope:
            return error_response(422, "excluded_slope", e.what());
        case ErrorCode::InvalidParameter:
        case ErrorCode::InvalidKind:
            return error_response(400, "invalid_parameter", e.what());
        default:
            return error_response(500, std::string(to_string(e.code())), e.what());
    }
}

template <class F>
Response guarded(F&& f) {
    try {
        return f();
    } catch (const BadRequest& b) {
        return error_response(400, b.reason, b.message);
    } catch (const Error& e) {
        return from_error(e);
    } catch (const std::exception& e) {
        return error_response(500, "internal", e.what());
    }
}

}  // namespace

Response envelope(const Query& q) {
    return guarded([&]() -> Response {
        const std::string kind = get(q, "kind").value_or("");
        const double r = parse_real(q, "r", 1.0);
        const double c = parse_real(q, "c", 0.0);
        const double d = parse_real(q, "d", 0.0);
        SceneOptions opt;
        opt.samples = parse_samples(q);
        opt.lines = parse_bool(q, "include_lines");
        const long lc = parse_int(q, "line_count", 72);
        if (lc < 1 || lc > 4096) throw BadRequest{"invalid_parameter", "parameter 'line_count' must lie in [1, 4096]"};
        opt.line_count = static_cast<int>(lc);

        LineFamily fam;
        if (kind == "caustic") {
            fam = caustic_ray_family(r);
        } else {
            const long a = parse_int(q, "a", std::nullopt);
            const long b = parse_int(q, "b", std::nullopt);
            if (b == 0) throw BadRequest{"invalid_parameter", "parameter 'b' must be non-zero"};
            const RationalSlope slope(a, b);
            if (kind == "one_circle") fam = one_circle(slope);
            else if (kind == "two_circle") fam = two_circle(slope, r);
            else if (kind == "offset_circle") fam = offset_circle(slope, r, c, d);
            else if (!kind.empty()) throw BadRequest{"invalid_parameter", "unknown kind '" + kind + "'"};
            else if (c != 0.0 || d != 0.0) fam = offset_circle(slope, r, c, d);
            else if (r == 1.0) fam = one_circle(slope);
            else fam = two_circle(slope, r);
        }
        const Scene scene = envelope_scene(fam, opt);
        return {200, scene_json(scene, opt.lines)};
    });
}

Response standard(const Query& q) {
    return guarded([&]() -> Response {
        const std::string model = get(q, "model").value_or("");
        StandardModel m;
        if (model == "swallowtail") m = StandardModel::Swallowtail;
        else if (model == "butterfly") m = StandardModel::Butterfly;
        else throw BadRequest{"unknown_model", "model must be swallowtail or butterfly"};
        SceneOptions opt;
        opt.samples = parse_samples(q);
        const Scene scene = standard_scene(m, parse_real(q, "y", 0.0), parse_real(q, "z", 0.0), opt);
        return {200, scene_json(scene)};
    });
}

Response health() { return {200, {{"ok", true}}}; }

Response dispatch(const std::string& path, const Query& q) {
    if (path == "/api/envelope") return envelope(q);
    if (path == "/api/standard") return standard(q);
    if (path == "/api/health") return health();
    return error_response(404, "not_found", "no such endpoint: " + path);
}

ServerConfig config_from_env() {
    ServerConfig cfg;
    if (const char* p = std::getenv("ENVLAB_PORT")) {
        const int v = std::atoi(p);
        if (v > 0 && v < 65536) cfg.port = v;
    }
    if (const char* o = std::getenv("ENVLAB_CORS_ORIGIN"); o && *o) cfg.cors_origin = o;
    return cfg;
}

struct Server::Impl {
    ServerConfig cfg;
    httplib::Server http;
};

Server::Server(ServerConfig cfg) : impl_(std::make_unique<Impl>()) {
    impl_->cfg = std::move(cfg);
    auto& http = impl_->http;
    const std::string origin = impl_->cfg.cors_origin;
    http.set_default_headers({{"Access-Control-Allow-Origin", origin},
                              {"Access-Control-Allow-Methods", "GET, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
    http.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    http.Get(R"(/api/.*)", [](const httplib::Request& req, httplib::Response& res) {
        Query q;
        for (const auto& [k, v] : req.params) q.emplace(k, v);
        const Response r = dispatch(req.path, q);
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    });
}

Server::~Server() { stop(); }

int Server::bind() {
    auto& http = impl_->http;
    if (impl_->cfg.port == 0) return http.bind_to_any_port(impl_->cfg.host);
    return http.bind_to_port(impl_->cfg.host, impl_->cfg.port) ? impl_->cfg.port : -1;
}

bool Server::listen() { return impl_->http.listen_after_bind(); }

void Server::stop() {
    if (impl_) impl_->http.stop();
}

}  // namespace envlab::service
