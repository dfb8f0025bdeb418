#ifndef PHISHSCAN_CONTENT_FETCHER_HPP
#define PHISHSCAN_CONTENT_FETCHER_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace phishscan {

struct FetchLimits {
    int timeout_ms = 10000;
    std::size_t max_bytes = 2 * 1024 * 1024;
    int max_redirects = 5;
    bool insecure_tls = false; // localhost fixture override
};

struct FetchMeta {
    int status_code = 0;
    std::size_t bytes_read = 0;
    long elapsed_ms = 0;
    bool truncated = false;
};

struct FetchResult {
    std::string body;
    FetchMeta meta;
};

// Single GET, <= max_redirects redirects, no subresource fetching, no
// script execution. Throws FetchError on timeout / connect / non-2xx.
FetchResult fetch_page(const std::string& url, const FetchLimits& limits);

// First <body>...</body> span (whole document if absent), script/style
// spans removed, tags stripped, the five basic entities decoded,
// whitespace collapsed.
std::string extract_body_text(std::string_view markup);

struct MediaUrls {
    std::vector<std::string> images;
    std::vector<std::string> videos;
};

// Union of src/href attribute values and bare tokens, filtered by media
// extension, resolved against base_url, deduplicated in first-seen order.
MediaUrls extract_media_urls(std::string_view markup, const std::string& base_url);

std::string resolve_url(const std::string& base, const std::string& ref);

struct PageContent {
    std::string base_url;
    std::string body_text;
    std::vector<std::string> image_urls;
    std::vector<std::string> video_urls;
    FetchMeta fetch;
};

PageContent fetch_and_parse(const std::string& url, const FetchLimits& limits);

} // namespace phishscan

#endif
