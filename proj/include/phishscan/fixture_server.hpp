#ifndef PHISHSCAN_FIXTURE_SERVER_HPP
#define PHISHSCAN_FIXTURE_SERVER_HPP

#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace httplib {
class Server;
}

namespace phishscan {

// Localhost static file server for the fixture tree. Directory-style
// paths serve index.html; every request lands in the access log.
class FixtureServer {
public:
    FixtureServer();
    ~FixtureServer();

    FixtureServer(const FixtureServer&) = delete;
    FixtureServer& operator=(const FixtureServer&) = delete;

    // port 0 binds an ephemeral port; throws ConfigError when taken
    void start(const std::string& directory, int port = 0);
    void stop();

    int port() const { return port_; }
    std::string base_url() const;
    std::vector<std::string> access_log() const;

private:
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    int port_ = 0;
    mutable std::mutex log_mutex_;
    std::vector<std::string> log_;
};

} // namespace phishscan

#endif
