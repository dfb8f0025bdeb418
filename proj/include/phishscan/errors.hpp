#ifndef PHISHSCAN_ERRORS_HPP
#define PHISHSCAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace phishscan {

struct UrlParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IngestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TrainingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fetch failures carry a coarse kind so a scan can degrade instead of abort.
struct FetchError : std::runtime_error {
    enum class Kind { connection, timeout, http_status, too_many_redirects, bad_url };
    FetchError(Kind k, const std::string& msg, int status = 0)
        : std::runtime_error(msg), kind(k), status_code(status) {}
    Kind kind;
    int status_code;
};

struct TranscribeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace phishscan

#endif
