#include "phishscan/fixtures.hpp"
#include "phishscan/errors.hpp"
#include "phishscan/media_transcribers.hpp"
#include "phishscan/rng.hpp"
#include "phishscan/synthetic.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace phishscan {

namespace {

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path.string());
    f << content;
}

void write_file(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
    fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path.string());
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::string> pick_distinct(const std::vector<std::string>& pool,
                                       std::size_t count, SplitMix64& rng) {
    std::vector<std::string> shuffled = pool;
    for (std::size_t i = shuffled.size(); i > 1; --i)
        std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
    shuffled.resize(std::min(count, shuffled.size()));
    return shuffled;
}

struct SitePlan {
    FixtureCategory category;
    std::string directory;
    std::string title;
    std::vector<std::string> body_segments;
    std::vector<std::string> image_payloads;
    std::vector<std::string> video_payloads;
    int expected_label;
};

std::string render_index(const SitePlan& plan) {
    std::ostringstream html;
    html << "<html>\n<head><title>" << plan.title << "</title>\n"
         << "<style>body { font-family: serif; }</style>\n"
         << "<script>function noop() { return 1 < 2; }</script>\n"
         << "</head>\n<body>\n";
    for (std::size_t i = 0; i < plan.body_segments.size(); ++i) {
        if (i == 0)
            html << "<h1>" << plan.body_segments[i] << "</h1>\n";
        else
            html << "<p>" << plan.body_segments[i] << "</p>\n";
    }
    for (std::size_t i = 0; i < plan.image_payloads.size(); ++i)
        html << "<img src=\"media/img" << i << ".png\" alt=\"\">\n";
    for (std::size_t i = 0; i < plan.video_payloads.size(); ++i)
        html << "<video src=\"media/vid" << i << ".mp4\"></video>\n";
    html << "</body>\n</html>\n";
    return html.str();
}

std::string join_segments(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (p.empty()) continue;
        if (!out.empty()) out += ' ';
        out += p;
    }
    return out;
}

FixtureSite write_site(const std::string& root, const SitePlan& plan) {
    fs::path dir = fs::path(root) / plan.directory;
    write_file(dir / "index.html", render_index(plan));

    std::string body_text = join_segments(plan.body_segments);
    write_file(dir / "sidecars" / "body.txt", body_text);

    std::vector<std::string> merged_parts{body_text};
    for (std::size_t i = 0; i < plan.image_payloads.size(); ++i) {
        write_file(dir / "media" / ("img" + std::to_string(i) + ".png"),
                   mockmedia::encode(MediaKindTag::image, plan.image_payloads[i]));
        write_file(dir / "sidecars" / ("ocr_" + std::to_string(i) + ".txt"),
                   plan.image_payloads[i]);
        merged_parts.push_back(plan.image_payloads[i]);
    }
    for (std::size_t i = 0; i < plan.video_payloads.size(); ++i) {
        write_file(dir / "media" / ("vid" + std::to_string(i) + ".mp4"),
                   mockmedia::encode(MediaKindTag::video, plan.video_payloads[i]));
        write_file(dir / "sidecars" / ("video_" + std::to_string(i) + ".txt"),
                   plan.video_payloads[i]);
        merged_parts.push_back(plan.video_payloads[i]);
    }
    write_file(dir / "sidecars" / "merged.txt", join_segments(merged_parts));

    FixtureSite site;
    site.category = plan.category;
    site.directory = plan.directory;
    site.root = root;
    site.expected_label = plan.expected_label;
    site.image_count = plan.image_payloads.size();
    site.video_count = plan.video_payloads.size();
    return site;
}

} // namespace

const char* to_string(FixtureCategory c) {
    switch (c) {
    case FixtureCategory::text_only: return "text_only";
    case FixtureCategory::image_only: return "image_only";
    case FixtureCategory::video_only: return "video_only";
    case FixtureCategory::combined: return "combined";
    case FixtureCategory::benign_text: return "benign_text";
    case FixtureCategory::benign_media: return "benign_media";
    }
    return "unknown";
}

std::vector<FixtureSite> generate_fixtures(const std::string& output_dir,
                                           std::uint64_t seed) {
    fs::create_directories(output_dir);
    SplitMix64 rng(mix_seed(seed, 6000));

    const auto& phish = phishing_phrases();
    const auto& benign = benign_phrases();

    std::vector<SitePlan> plans;
    {
        SitePlan p;
        p.category = FixtureCategory::text_only;
        p.directory = "text-only";
        p.title = "Seasonal updates";
        p.body_segments = pick_distinct(phish, 3, rng);
        p.expected_label = 1;
        plans.push_back(std::move(p));
    }
    {
        SitePlan p;
        p.category = FixtureCategory::image_only;
        p.directory = "image-only";
        p.title = "Weekly gallery";
        p.body_segments = {"fresh pictures added this week"};
        p.image_payloads = pick_distinct(phish, 3, rng);
        p.expected_label = 1;
        plans.push_back(std::move(p));
    }
    {
        SitePlan p;
        p.category = FixtureCategory::video_only;
        p.directory = "video-only";
        p.title = "Clip archive";
        p.body_segments = {"press play to watch the latest clips"};
        p.video_payloads = pick_distinct(phish, 2, rng);
        p.expected_label = 1;
        plans.push_back(std::move(p));
    }
    {
        SitePlan p;
        p.category = FixtureCategory::combined;
        p.directory = "combined";
        p.title = "Community bulletin";
        p.body_segments = pick_distinct(phish, 1, rng);
        p.image_payloads = pick_distinct(phish, 2, rng);
        p.video_payloads = pick_distinct(phish, 1, rng);
        p.expected_label = 1;
        plans.push_back(std::move(p));
    }
    {
        SitePlan p;
        p.category = FixtureCategory::benign_text;
        p.directory = "benign-text";
        p.title = "Neighborhood notes";
        p.body_segments = pick_distinct(benign, 3, rng);
        p.expected_label = 0;
        plans.push_back(std::move(p));
    }
    {
        SitePlan p;
        p.category = FixtureCategory::benign_media;
        p.directory = "benign-media";
        p.title = "Shared album";
        p.body_segments = pick_distinct(benign, 1, rng);
        p.image_payloads = pick_distinct(benign, 1, rng);
        p.video_payloads = pick_distinct(benign, 1, rng);
        p.expected_label = 0;
        plans.push_back(std::move(p));
    }

    std::vector<FixtureSite> sites;
    nlohmann::json manifest = nlohmann::json::array();
    for (const auto& plan : plans) {
        FixtureSite site = write_site(output_dir, plan);
        manifest.push_back({{"category", to_string(site.category)},
                            {"directory", site.directory},
                            {"expected_label", site.expected_label},
                            {"images", site.image_count},
                            {"videos", site.video_count}});
        sites.push_back(std::move(site));
    }
    write_file(fs::path(output_dir) / "manifest.json", manifest.dump(2) + "\n");
    return sites;
}

std::vector<FixtureSite> load_fixtures(const std::string& output_dir) {
    auto manifest = nlohmann::json::parse(
        read_file((fs::path(output_dir) / "manifest.json").string()));
    std::vector<FixtureSite> sites;
    for (const auto& entry : manifest) {
        FixtureSite site;
        std::string cat = entry.at("category").get<std::string>();
        for (auto c : {FixtureCategory::text_only, FixtureCategory::image_only,
                       FixtureCategory::video_only, FixtureCategory::combined,
                       FixtureCategory::benign_text, FixtureCategory::benign_media})
            if (cat == to_string(c)) site.category = c;
        site.directory = entry.at("directory").get<std::string>();
        site.root = output_dir;
        site.expected_label = entry.at("expected_label").get<int>();
        site.image_count = entry.at("images").get<std::size_t>();
        site.video_count = entry.at("videos").get<std::size_t>();
        sites.push_back(std::move(site));
    }
    return sites;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace phishscan
