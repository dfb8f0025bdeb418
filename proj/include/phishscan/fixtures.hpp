#ifndef PHISHSCAN_FIXTURES_HPP
#define PHISHSCAN_FIXTURES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace phishscan {

enum class FixtureCategory {
    text_only,
    image_only,
    video_only,
    combined,
    benign_text,
    benign_media,
};

const char* to_string(FixtureCategory c);

struct FixtureSite {
    FixtureCategory category;
    std::string directory;   // path component under the fixture root
    std::string root;        // absolute output directory
    int expected_label;      // 0 legitimate, 1 phishing
    std::size_t image_count = 0;
    std::size_t video_count = 0;

    std::string index_path() const { return root + "/" + directory + "/index.html"; }
    std::string sidecar(const std::string& name) const {
        return root + "/" + directory + "/sidecars/" + name;
    }
};

// Writes all six fixture sites (four phishing categories plus two benign)
// under output_dir. Identical seeds produce byte-identical trees. Sidecar
// files hold the exact text the scan pipeline should recover.
std::vector<FixtureSite> generate_fixtures(const std::string& output_dir,
                                           std::uint64_t seed);

// Reads back a tree previously written by generate_fixtures.
std::vector<FixtureSite> load_fixtures(const std::string& output_dir);

std::string read_file(const std::string& path);

} // namespace phishscan

#endif
