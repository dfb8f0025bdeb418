#include "phishscan/content_fetcher.hpp"
#include "phishscan/errors.hpp"
#include "phishscan/url_features.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <unordered_set>

#include <httplib.h>

namespace phishscan {

namespace {

constexpr const char* kUserAgent = "phishscan/1.0";

const std::unordered_set<std::string> kImageExtensions{
    ".png", ".jpg", ".jpeg", ".gif", ".bmp", ".webp", ".svg"};
const std::unordered_set<std::string> kVideoExtensions{
    ".mp4", ".webm", ".avi", ".mov", ".mkv"};

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

bool iequals_at(std::string_view text, std::size_t pos, std::string_view token) {
    if (pos + token.size() > text.size()) return false;
    for (std::size_t i = 0; i < token.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(text[pos + i])) != token[i])
            return false;
    return true;
}

// case-insensitive find of "<token" followed by a delimiter
std::size_t find_tag_open(std::string_view text, std::string_view name,
                          std::size_t from) {
    for (std::size_t i = from; i + name.size() + 1 < text.size(); ++i) {
        if (text[i] != '<') continue;
        if (!iequals_at(text, i + 1, name)) continue;
        char after = text[i + 1 + name.size()];
        if (after == '>' || after == ' ' || after == '\t' || after == '\n' ||
            after == '\r' || after == '/')
            return i;
    }
    return std::string_view::npos;
}

std::size_t find_tag_close(std::string_view text, std::string_view name,
                           std::size_t from) {
    for (std::size_t i = from; i + name.size() + 1 < text.size(); ++i) {
        if (text[i] != '<' || text[i + 1] != '/') continue;
        if (iequals_at(text, i + 2, name)) return i;
    }
    return std::string_view::npos;
}

// kinds of extension-bearing reference
enum class MediaKind { none, image, video };

MediaKind classify_extension(const std::string& url) {
    std::string u = lower(url);
    if (auto q = u.find_first_of("?#"); q != std::string::npos) u.resize(q);
    auto slash = u.find_last_of('/');
    auto dot = u.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return MediaKind::none;
    std::string ext = u.substr(dot);
    if (kImageExtensions.count(ext)) return MediaKind::image;
    if (kVideoExtensions.count(ext)) return MediaKind::video;
    return MediaKind::none;
}

struct SplitUrl {
    std::string scheme_host; // scheme://host[:port]
    std::string dir;         // path up to and including the last '/'
};

SplitUrl split_base(const std::string& base) {
    auto scheme_end = base.find("://");
    std::size_t path_start = scheme_end == std::string::npos
                                 ? 0
                                 : base.find('/', scheme_end + 3);
    SplitUrl out;
    if (path_start == std::string::npos) {
        out.scheme_host = base;
        out.dir = "/";
    } else {
        out.scheme_host = base.substr(0, path_start);
        std::string path = base.substr(path_start);
        if (auto q = path.find_first_of("?#"); q != std::string::npos)
            path.resize(q);
        auto last_slash = path.find_last_of('/');
        out.dir = path.substr(0, last_slash + 1);
    }
    return out;
}

} // namespace

std::string resolve_url(const std::string& base, const std::string& ref) {
    if (ref.find("://") != std::string::npos) return ref;
    SplitUrl b = split_base(base);
    if (ref.rfind("//", 0) == 0) {
        auto scheme_end = base.find("://");
        std::string scheme = scheme_end == std::string::npos
                                 ? "http"
                                 : base.substr(0, scheme_end);
        return scheme + ":" + ref;
    }
    if (!ref.empty() && ref.front() == '/') return b.scheme_host + ref;
    return b.scheme_host + b.dir + ref;
}

FetchResult fetch_page(const std::string& url, const FetchLimits& limits) {
    auto start = std::chrono::steady_clock::now();
    auto elapsed_ms = [&start] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    };

    std::string current = url;
    for (int hop = 0; hop <= limits.max_redirects; ++hop) {
        ParsedUrl parsed;
        try {
            parsed = ParsedUrl::parse(current);
        } catch (const UrlParseError& e) {
            throw FetchError(FetchError::Kind::bad_url, e.what());
        }
        if (parsed.scheme != "http" && parsed.scheme != "https")
            throw FetchError(FetchError::Kind::bad_url,
                             "unsupported scheme: " + parsed.scheme);

        std::string origin = parsed.scheme + "://" + parsed.host +
                             (parsed.port ? ":" + std::to_string(*parsed.port) : "");
        httplib::Client client(origin);
        client.set_follow_location(false);
        client.set_connection_timeout(0, limits.timeout_ms * 1000LL);
        client.set_read_timeout(0, limits.timeout_ms * 1000LL);
        client.set_default_headers({{"User-Agent", kUserAgent}});
        if (limits.insecure_tls) client.enable_server_certificate_verification(false);

        std::string body;
        bool truncated = false;
        auto res = client.Get(parsed.path, [&](const char* data, size_t len) {
            if (body.size() < limits.max_bytes) {
                size_t take = std::min(len, limits.max_bytes - body.size());
                body.append(data, take);
                if (take < len) truncated = true;
            } else {
                truncated = true;
            }
            return true; // keep draining so the response completes cleanly
        });

        if (!res) {
            auto err = res.error();
            auto kind = (err == httplib::Error::ConnectionTimeout ||
                         err == httplib::Error::Read)
                            ? FetchError::Kind::timeout
                            : FetchError::Kind::connection;
            throw FetchError(kind, "fetch failed for " + current + ": " +
                                        httplib::to_string(err));
        }

        if (res->status >= 300 && res->status < 400 &&
            res->has_header("Location")) {
            if (hop == limits.max_redirects)
                throw FetchError(FetchError::Kind::too_many_redirects,
                                 "redirect limit exceeded at " + current,
                                 res->status);
            current = resolve_url(current, res->get_header_value("Location"));
            continue;
        }
        if (res->status < 200 || res->status >= 300)
            throw FetchError(FetchError::Kind::http_status,
                             "HTTP " + std::to_string(res->status) + " for " +
                                 current,
                             res->status);

        FetchResult out;
        out.body = std::move(body);
        out.meta.status_code = res->status;
        out.meta.bytes_read = out.body.size();
        out.meta.truncated = truncated;
        out.meta.elapsed_ms = elapsed_ms();
        return out;
    }
    throw FetchError(FetchError::Kind::too_many_redirects,
                     "redirect limit exceeded for " + url);
}

std::string extract_body_text(std::string_view markup) {
    // isolate the first <body> span
    std::string_view doc = markup;
    if (auto open = find_tag_open(markup, "body", 0);
        open != std::string_view::npos) {
        auto content_start = markup.find('>', open);
        if (content_start != std::string_view::npos) {
            ++content_start;
            auto close = find_tag_close(markup, "body", content_start);
            doc = close == std::string_view::npos
                      ? markup.substr(content_start)
                      : markup.substr(content_start, close - content_start);
        }
    }

    // drop script/style spans wholesale, strip remaining tags
    std::string text;
    text.reserve(doc.size());
    std::size_t i = 0;
    while (i < doc.size()) {
        char c = doc[i];
        if (c == '<') {
            for (std::string_view blocked : {"script", "style"}) {
                if (iequals_at(doc, i + 1, blocked)) {
                    auto close = find_tag_close(doc, blocked, i);
                    if (close == std::string_view::npos) { i = doc.size(); }
                    else {
                        auto end = doc.find('>', close);
                        i = end == std::string_view::npos ? doc.size() : end + 1;
                    }
                    goto next;
                }
            }
            {
                auto end = doc.find('>', i);
                i = end == std::string_view::npos ? doc.size() : end + 1;
                text.push_back(' ');
            }
        next:;
        } else if (c == '>') {
            text.push_back(' ');
            ++i;
        } else {
            text.push_back(c);
            ++i;
        }
    }

    // decode the five basic entities
    std::string decoded;
    decoded.reserve(text.size());
    for (std::size_t p = 0; p < text.size();) {
        if (text[p] == '&') {
            struct { const char* entity; char ch; } table[] = {
                {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'},
                {"&quot;", '"'}, {"&#39;", '\''},
            };
            bool matched = false;
            for (const auto& [entity, ch] : table) {
                std::size_t len = std::char_traits<char>::length(entity);
                if (text.compare(p, len, entity) == 0) {
                    decoded.push_back(ch);
                    p += len;
                    matched = true;
                    break;
                }
            }
            if (matched) continue;
        }
        decoded.push_back(text[p]);
        ++p;
    }

    // collapse whitespace runs
    std::string out;
    out.reserve(decoded.size());
    bool in_space = true; // leading whitespace dropped
    for (char c : decoded) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!in_space) out.push_back(' ');
            in_space = true;
        } else {
            out.push_back(c);
            in_space = false;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

MediaUrls extract_media_urls(std::string_view markup, const std::string& base_url) {
    std::vector<std::string> candidates;

    // (a) src/href attribute values
    for (std::string_view attr : {"src", "href"}) {
        std::size_t pos = 0;
        while ((pos = [&] {
                    for (std::size_t i = pos; i + attr.size() < markup.size(); ++i)
                        if (iequals_at(markup, i, attr)) return i;
                    return std::string_view::npos;
                }()) != std::string_view::npos) {
            std::size_t p = pos + attr.size();
            while (p < markup.size() && std::isspace(static_cast<unsigned char>(markup[p]))) ++p;
            if (p >= markup.size() || markup[p] != '=') { pos += attr.size(); continue; }
            ++p;
            while (p < markup.size() && std::isspace(static_cast<unsigned char>(markup[p]))) ++p;
            if (p >= markup.size()) break;
            std::string value;
            if (markup[p] == '"' || markup[p] == '\'') {
                char quote = markup[p++];
                auto end = markup.find(quote, p);
                if (end == std::string_view::npos) break;
                value = std::string(markup.substr(p, end - p));
                pos = end + 1;
            } else {
                std::size_t end = p;
                while (end < markup.size() && !std::isspace(static_cast<unsigned char>(markup[end])) &&
                       markup[end] != '>')
                    ++end;
                value = std::string(markup.substr(p, end - p));
                pos = end;
            }
            if (!value.empty()) candidates.push_back(value);
        }
    }

    // (b) bare tokens; attribute punctuation acts as a delimiter so quoted
    // values resurface as clean tokens and deduplicate against pass (a)
    {
        std::string token;
        auto flush = [&] {
            if (!token.empty()) candidates.push_back(token);
            token.clear();
        };
        for (char c : markup) {
            if (std::isspace(static_cast<unsigned char>(c)) || c == '"' ||
                c == '\'' || c == '<' || c == '>' || c == '=' || c == '(' ||
                c == ')' || c == ',' || c == ';')
                flush();
            else
                token.push_back(c);
        }
        flush();
    }

    MediaUrls out;
    std::unordered_set<std::string> seen;
    for (const auto& cand : candidates) {
        MediaKind kind = classify_extension(cand);
        if (kind == MediaKind::none) continue;
        std::string absolute = resolve_url(base_url, cand);
        if (absolute.find("://") == std::string::npos) continue;
        // dedup on the query/fragment-stripped form: the token pass can emit
        // a clipped variant of an attribute value (splitting inside a query)
        std::string key = absolute;
        if (auto q = key.find_first_of("?#"); q != std::string::npos) key.resize(q);
        if (!seen.insert(key).second) continue;
        (kind == MediaKind::image ? out.images : out.videos).push_back(absolute);
    }
    return out;
}

PageContent fetch_and_parse(const std::string& url, const FetchLimits& limits) {
    FetchResult fetched = fetch_page(url, limits);
    PageContent page;
    page.base_url = url;
    page.fetch = fetched.meta;
    page.body_text = extract_body_text(fetched.body);
    MediaUrls media = extract_media_urls(fetched.body, url);
    page.image_urls = std::move(media.images);
    page.video_urls = std::move(media.videos);
    return page;
}

} // namespace phishscan
