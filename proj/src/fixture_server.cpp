#include "phishscan/fixture_server.hpp"
#include "phishscan/errors.hpp"

#include <httplib.h>

namespace phishscan {

FixtureServer::FixtureServer() : server_(std::make_unique<httplib::Server>()) {}

FixtureServer::~FixtureServer() { stop(); }

void FixtureServer::start(const std::string& directory, int port) {
    if (!server_->set_mount_point("/", directory))
        throw ConfigError("fixture directory not mountable: " + directory);

    // only SO_REUSEADDR: the httplib default adds SO_REUSEPORT, which lets a
    // second server silently share the port instead of failing the bind
    server_->set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR,
                   reinterpret_cast<const void*>(&yes), sizeof(yes));
    });

    server_->set_logger([this](const httplib::Request& req,
                               const httplib::Response& res) {
        std::lock_guard<std::mutex> lock(log_mutex_);
        log_.push_back(req.method + " " + req.path + " " +
                       std::to_string(res.status));
    });

    if (port == 0) {
        port_ = server_->bind_to_any_port("127.0.0.1");
        if (port_ < 0) throw ConfigError("could not bind fixture server");
    } else {
        if (!server_->bind_to_port("127.0.0.1", port))
            throw ConfigError("port in use: " + std::to_string(port));
        port_ = port;
    }

    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
}

void FixtureServer::stop() {
    if (thread_.joinable()) {
        server_->stop();
        thread_.join();
    }
}

std::string FixtureServer::base_url() const {
    return "http://127.0.0.1:" + std::to_string(port_);
}

std::vector<std::string> FixtureServer::access_log() const {
    std::lock_guard<std::mutex> lock(log_mutex_);
    return log_;
}

} // namespace phishscan
