#pragma once

#include "gridforge/app/codec.hpp"
#include "gridforge/env/env.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace gridforge::app {

inline constexpr std::chrono::minutes kSessionIdleLimit{30};

struct Response {
    int status = 200;
    json body;
};

// The JSON-over-HTTP protocol, independent of the transport so tests can call
// it directly. Requests for one session are serialized; different sessions
// run in parallel.
class Service {
public:
    using Clock = std::function<std::chrono::steady_clock::time_point()>;

    explicit Service(Clock clock = [] { return std::chrono::steady_clock::now(); });

    Response handle(const std::string& method, const std::string& path, const std::string& body);

    [[nodiscard]] std::size_t session_count() const;

private:
    struct Session;

    Response validate(const json& req);
    Response create(const json& req);
    Response dispatch(Session& s, const std::string& op, const json& req);
    std::shared_ptr<Session> find(const std::string& id);
    void expire();

    Clock clock_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t next_id_ = 1;
};

// Blocks serving the protocol over HTTP until the process is stopped.
// Returns false if the port could not be bound.
bool serve_http(Service& service, const std::string& host, int port);

} // namespace gridforge::app
