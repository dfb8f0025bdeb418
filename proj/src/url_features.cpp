#include "phishscan/url_features.hpp"
#include "phishscan/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace phishscan {

namespace {

struct SchemaSpec {
    const char* name;
    FeatureGroup group;
    bool live;
};

// Modeled on the Mendeley phishing dataset layout: 56 lexical URL features
// first, then 24 page-content features, then 7 external-service features.
// Only the lexical features computable from the URL string alone are live.
const SchemaSpec kBuiltinSchema[] = {
    {"url_length", FeatureGroup::url_lexical, true},
    {"hostname_length", FeatureGroup::url_lexical, true},
    {"ip_literal", FeatureGroup::url_lexical, true},
    {"nb_dots", FeatureGroup::url_lexical, true},
    {"nb_hyphens", FeatureGroup::url_lexical, true},
    {"nb_at", FeatureGroup::url_lexical, true},
    {"nb_qm", FeatureGroup::url_lexical, true},
    {"nb_and", FeatureGroup::url_lexical, true},
    {"nb_eq", FeatureGroup::url_lexical, true},
    {"nb_underscore", FeatureGroup::url_lexical, true},
    {"nb_tilde", FeatureGroup::url_lexical, true},
    {"nb_percent", FeatureGroup::url_lexical, true},
    {"nb_slash", FeatureGroup::url_lexical, true},
    {"nb_star", FeatureGroup::url_lexical, true},
    {"nb_colon", FeatureGroup::url_lexical, true},
    {"nb_comma", FeatureGroup::url_lexical, true},
    {"nb_semicolon", FeatureGroup::url_lexical, true},
    {"nb_dollar", FeatureGroup::url_lexical, true},
    {"nb_space", FeatureGroup::url_lexical, true},
    {"nb_subdomains", FeatureGroup::url_lexical, true},
    {"nb_digits", FeatureGroup::url_lexical, true},
    {"https_token", FeatureGroup::url_lexical, true},
    {"explicit_port", FeatureGroup::url_lexical, true},
    {"nb_www", FeatureGroup::url_lexical, false},
    {"nb_com", FeatureGroup::url_lexical, false},
    {"nb_dslash", FeatureGroup::url_lexical, false},
    {"http_in_path", FeatureGroup::url_lexical, false},
    {"ratio_digits_url", FeatureGroup::url_lexical, false},
    {"ratio_digits_host", FeatureGroup::url_lexical, false},
    {"punycode", FeatureGroup::url_lexical, false},
    {"tld_in_path", FeatureGroup::url_lexical, false},
    {"tld_in_subdomain", FeatureGroup::url_lexical, false},
    {"abnormal_subdomain", FeatureGroup::url_lexical, false},
    {"prefix_suffix", FeatureGroup::url_lexical, false},
    {"random_domain", FeatureGroup::url_lexical, false},
    {"shortening_service", FeatureGroup::url_lexical, false},
    {"path_extension", FeatureGroup::url_lexical, false},
    {"nb_redirection", FeatureGroup::url_lexical, false},
    {"nb_external_redirection", FeatureGroup::url_lexical, false},
    {"length_words_raw", FeatureGroup::url_lexical, false},
    {"char_repeat", FeatureGroup::url_lexical, false},
    {"shortest_words_raw", FeatureGroup::url_lexical, false},
    {"shortest_word_host", FeatureGroup::url_lexical, false},
    {"shortest_word_path", FeatureGroup::url_lexical, false},
    {"longest_words_raw", FeatureGroup::url_lexical, false},
    {"longest_word_host", FeatureGroup::url_lexical, false},
    {"longest_word_path", FeatureGroup::url_lexical, false},
    {"avg_words_raw", FeatureGroup::url_lexical, false},
    {"avg_word_host", FeatureGroup::url_lexical, false},
    {"avg_word_path", FeatureGroup::url_lexical, false},
    {"phish_hints", FeatureGroup::url_lexical, false},
    {"domain_in_brand", FeatureGroup::url_lexical, false},
    {"brand_in_subdomain", FeatureGroup::url_lexical, false},
    {"brand_in_path", FeatureGroup::url_lexical, false},
    {"suspicious_tld", FeatureGroup::url_lexical, false},
    {"statistical_report", FeatureGroup::url_lexical, false},
    {"nb_hyperlinks", FeatureGroup::page_content, false},
    {"ratio_int_hyperlinks", FeatureGroup::page_content, false},
    {"ratio_ext_hyperlinks", FeatureGroup::page_content, false},
    {"ratio_null_hyperlinks", FeatureGroup::page_content, false},
    {"nb_ext_css", FeatureGroup::page_content, false},
    {"ratio_int_redirection", FeatureGroup::page_content, false},
    {"ratio_ext_redirection", FeatureGroup::page_content, false},
    {"ratio_int_errors", FeatureGroup::page_content, false},
    {"ratio_ext_errors", FeatureGroup::page_content, false},
    {"login_form", FeatureGroup::page_content, false},
    {"external_favicon", FeatureGroup::page_content, false},
    {"links_in_tags", FeatureGroup::page_content, false},
    {"submit_email", FeatureGroup::page_content, false},
    {"ratio_int_media", FeatureGroup::page_content, false},
    {"ratio_ext_media", FeatureGroup::page_content, false},
    {"sfh", FeatureGroup::page_content, false},
    {"iframe", FeatureGroup::page_content, false},
    {"popup_window", FeatureGroup::page_content, false},
    {"safe_anchor", FeatureGroup::page_content, false},
    {"onmouseover", FeatureGroup::page_content, false},
    {"right_clic", FeatureGroup::page_content, false},
    {"empty_title", FeatureGroup::page_content, false},
    {"domain_in_title", FeatureGroup::page_content, false},
    {"domain_with_copyright", FeatureGroup::page_content, false},
    {"whois_registered_domain", FeatureGroup::external_service, false},
    {"domain_registration_length", FeatureGroup::external_service, false},
    {"domain_age", FeatureGroup::external_service, false},
    {"web_traffic", FeatureGroup::external_service, false},
    {"dns_record", FeatureGroup::external_service, false},
    {"google_index", FeatureGroup::external_service, false},
    {"page_rank", FeatureGroup::external_service, false},
};

} // namespace

FeatureSchema::FeatureSchema(std::vector<FeatureDef> entries)
    : entries_(std::move(entries)) {}

const FeatureSchema& FeatureSchema::builtin() {
    static const FeatureSchema schema = [] {
        std::vector<FeatureDef> defs;
        for (const auto& s : kBuiltinSchema)
            defs.push_back({s.name, s.group, s.live});
        return FeatureSchema(std::move(defs));
    }();
    return schema;
}

FeatureSchema FeatureSchema::from_header(const std::vector<std::string>& names) {
    if (names.empty())
        throw IngestError("empty feature header");
    std::unordered_map<std::string, const SchemaSpec*> known;
    for (const auto& s : kBuiltinSchema) known[s.name] = &s;

    std::vector<FeatureDef> defs;
    defs.reserve(names.size());
    std::unordered_map<std::string, int> seen;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (seen.count(names[i]))
            throw IngestError("duplicate feature name: " + names[i]);
        seen[names[i]] = static_cast<int>(i);
        if (auto it = known.find(names[i]); it != known.end()) {
            defs.push_back({names[i], it->second->group, it->second->live});
        } else {
            // Unknown column: assign group by position (56 / 24 / 7 layout).
            FeatureGroup g = i < 56 ? FeatureGroup::url_lexical
                           : i < 80 ? FeatureGroup::page_content
                                    : FeatureGroup::external_service;
            defs.push_back({names[i], g, false});
        }
    }
    return FeatureSchema(std::move(defs));
}

int FeatureSchema::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].name == name) return static_cast<int>(i);
    return -1;
}

std::vector<int> FeatureSchema::live_indices() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].live_computable) out.push_back(static_cast<int>(i));
    return out;
}

std::size_t FeatureSchema::count(FeatureGroup g) const {
    return static_cast<std::size_t>(std::count_if(
        entries_.begin(), entries_.end(),
        [g](const FeatureDef& d) { return d.group == g; }));
}

ParsedUrl ParsedUrl::parse(const std::string& url) {
    ParsedUrl out;
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos || scheme_end == 0)
        throw UrlParseError("missing scheme in url: " + url);
    out.scheme = url.substr(0, scheme_end);
    for (char c : out.scheme)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.')
            throw UrlParseError("invalid scheme character in url: " + url);

    std::size_t rest = scheme_end + 3;
    auto path_start = url.find('/', rest);
    std::string authority = path_start == std::string::npos
                                ? url.substr(rest)
                                : url.substr(rest, path_start - rest);
    out.path = path_start == std::string::npos ? "/" : url.substr(path_start);

    // drop userinfo if present
    if (auto at = authority.rfind('@'); at != std::string::npos)
        authority = authority.substr(at + 1);

    if (!authority.empty() && authority.front() == '[') {
        // bracketed IPv6 literal
        auto close = authority.find(']');
        if (close == std::string::npos)
            throw UrlParseError("unterminated IPv6 host in url: " + url);
        out.host = authority.substr(0, close + 1);
        authority = authority.substr(close + 1);
        if (!authority.empty()) {
            if (authority.front() != ':')
                throw UrlParseError("malformed authority in url: " + url);
            authority.erase(authority.begin());
        } else {
            authority.clear();
        }
    } else if (auto colon = authority.find(':'); colon != std::string::npos) {
        out.host = authority.substr(0, colon);
        authority = authority.substr(colon + 1);
    } else {
        out.host = authority;
        authority.clear();
    }

    if (!authority.empty()) {
        int port = 0;
        for (char c : authority) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw UrlParseError("non-numeric port in url: " + url);
            port = port * 10 + (c - '0');
            if (port > 65535)
                throw UrlParseError("port out of range in url: " + url);
        }
        out.port = port;
    }

    if (out.host.empty())
        throw UrlParseError("missing host in url: " + url);
    return out;
}

bool ParsedUrl::host_is_ip_literal() const {
    if (host.size() >= 2 && host.front() == '[' && host.back() == ']')
        return true; // IPv6
    int parts = 0;
    std::size_t pos = 0;
    while (pos <= host.size()) {
        auto dot = host.find('.', pos);
        std::string label = host.substr(pos, dot == std::string::npos
                                                 ? std::string::npos
                                                 : dot - pos);
        if (label.empty() || label.size() > 3) return false;
        int v = 0;
        for (char c : label) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
            v = v * 10 + (c - '0');
        }
        if (v > 255) return false;
        ++parts;
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    return parts == 4;
}

UrlFeatureVector extract_lexical_features(const std::string& url,
                                          const FeatureSchema& schema) {
    ParsedUrl parsed = ParsedUrl::parse(url);

    auto count_char = [&url](char c) {
        return static_cast<double>(std::count(url.begin(), url.end(), c));
    };

    int host_labels = parsed.host.empty() ? 0
        : 1 + static_cast<int>(std::count(parsed.host.begin(), parsed.host.end(), '.'));
    int subdomains = parsed.host_is_ip_literal() ? 0 : std::max(0, host_labels - 2);

    double digits = 0;
    for (char c : url)
        if (std::isdigit(static_cast<unsigned char>(c))) digits += 1;

    std::string path_lower = parsed.path;
    std::transform(path_lower.begin(), path_lower.end(), path_lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });

    UrlFeatureVector out;
    out.values.assign(schema.size(), 0.0);
    out.imputed.assign(schema.size(), false);
    for (std::size_t i = 0; i < schema.size(); ++i) {
        const FeatureDef& d = schema.at(i);
        if (!d.live_computable) {
            out.imputed[i] = true; // sentinel 0, recorded as imputed
            continue;
        }
        double v = 0;
        if (d.name == "url_length") v = static_cast<double>(url.size());
        else if (d.name == "hostname_length") v = static_cast<double>(parsed.host.size());
        else if (d.name == "ip_literal") v = parsed.host_is_ip_literal() ? 1 : 0;
        else if (d.name == "nb_dots") v = count_char('.');
        else if (d.name == "nb_hyphens") v = count_char('-');
        else if (d.name == "nb_at") v = count_char('@');
        else if (d.name == "nb_qm") v = count_char('?');
        else if (d.name == "nb_and") v = count_char('&');
        else if (d.name == "nb_eq") v = count_char('=');
        else if (d.name == "nb_underscore") v = count_char('_');
        else if (d.name == "nb_tilde") v = count_char('~');
        else if (d.name == "nb_percent") v = count_char('%');
        else if (d.name == "nb_slash") v = count_char('/');
        else if (d.name == "nb_star") v = count_char('*');
        else if (d.name == "nb_colon") v = count_char(':');
        else if (d.name == "nb_comma") v = count_char(',');
        else if (d.name == "nb_semicolon") v = count_char(';');
        else if (d.name == "nb_dollar") v = count_char('$');
        else if (d.name == "nb_space") v = count_char(' ');
        else if (d.name == "nb_subdomains") v = subdomains;
        else if (d.name == "nb_digits") v = digits;
        else if (d.name == "https_token") v = path_lower.find("https") != std::string::npos ? 1 : 0;
        else if (d.name == "explicit_port") v = parsed.port.has_value() ? 1 : 0;
        else { out.imputed[i] = true; continue; } // live column we cannot name
        out.values[i] = v;
    }
    return out;
}

std::vector<double> chi2_scores(const std::vector<UrlFeatureVector>& dataset) {
    if (dataset.empty())
        throw std::invalid_argument("chi2_scores: empty dataset");
    const std::size_t d = dataset.front().values.size();
    std::size_t n_class[2] = {0, 0};
    for (const auto& row : dataset) {
        if (row.values.size() != d)
            throw std::invalid_argument("chi2_scores: inconsistent row length");
        if (!row.label)
            throw std::invalid_argument("chi2_scores: unlabeled sample");
        n_class[static_cast<std::size_t>(*row.label)]++;
    }
    if (n_class[0] == 0 || n_class[1] == 0)
        throw std::domain_error("chi2_scores: dataset contains a single class");

    const double n = static_cast<double>(dataset.size());
    std::vector<double> scores(d, 0.0);
    for (std::size_t f = 0; f < d; ++f) {
        double observed[2] = {0, 0};
        for (const auto& row : dataset) {
            double v = row.values[f];
            if (v < 0)
                throw std::domain_error("chi2_scores: negative value in feature " +
                                        std::to_string(f));
            observed[static_cast<std::size_t>(*row.label)] += v;
        }
        double total = observed[0] + observed[1];
        double score = 0;
        for (int c = 0; c < 2; ++c) {
            double expected = total * (static_cast<double>(n_class[c]) / n);
            if (expected == 0) continue; // 0/0 convention
            double diff = observed[c] - expected;
            score += diff * diff / expected;
        }
        scores[f] = score;
    }
    return scores;
}

FeatureSelection select_top_k(const std::vector<double>& scores, int k) {
    if (k <= 0 || static_cast<std::size_t>(k) > scores.size())
        throw std::invalid_argument("select_top_k: k out of range");
    std::vector<int> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    order.resize(static_cast<std::size_t>(k));
    return FeatureSelection{std::move(order), scores};
}

std::string FeatureSelection::to_json() const {
    nlohmann::json j;
    j["k"] = selected_indices.size();
    j["indices"] = selected_indices;
    j["scores"] = scores;
    return j.dump(2);
}

FeatureSelection FeatureSelection::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    FeatureSelection sel;
    sel.selected_indices = j.at("indices").get<std::vector<int>>();
    sel.scores = j.at("scores").get<std::vector<double>>();
    return sel;
}

void FeatureSelection::save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path);
    f << to_json() << '\n';
}

FeatureSelection FeatureSelection::load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return from_json(ss.str());
}

} // namespace phishscan
