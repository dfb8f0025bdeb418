#ifndef PHISHSCAN_MEDIA_TRANSCRIBERS_HPP
#define PHISHSCAN_MEDIA_TRANSCRIBERS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "phishscan/content_fetcher.hpp"

namespace phishscan {

inline constexpr std::size_t kMediaMaxBytes = 20 * 1024 * 1024;

enum class MediaKindTag : std::uint8_t { image = 0x01, video = 0x02 };

struct MediaBlob {
    std::string source_url;
    MediaKindTag kind;
    std::vector<std::uint8_t> bytes;
    bool truncated = false;
};

// Deterministic stand-in media file: "MCKM" + kind byte + u32le payload
// length + UTF-8 payload. Lets end-to-end tests run without real OCR/STT.
namespace mockmedia {

std::vector<std::uint8_t> encode(MediaKindTag kind, std::string_view payload);

struct Decoded {
    MediaKindTag kind;
    std::string payload;
};

Decoded decode(const std::vector<std::uint8_t>& bytes); // throws TranscribeError

} // namespace mockmedia

// OCR contract: image bytes -> text.
class ImageTranscriber {
public:
    virtual ~ImageTranscriber() = default;
    virtual std::string transcribe(const MediaBlob& blob) = 0;
};

// Video contract, two stages: video bytes -> audio bytes -> text.
class VideoTranscriber {
public:
    virtual ~VideoTranscriber() = default;
    virtual std::vector<std::uint8_t> extract_audio(const MediaBlob& blob) = 0;
    virtual std::string recognize_speech(const std::vector<std::uint8_t>& audio) = 0;
    std::string transcribe(const MediaBlob& blob);
};

class MockImageTranscriber : public ImageTranscriber {
public:
    std::string transcribe(const MediaBlob& blob) override;
};

class MockVideoTranscriber : public VideoTranscriber {
public:
    std::vector<std::uint8_t> extract_audio(const MediaBlob& blob) override;
    std::string recognize_speech(const std::vector<std::uint8_t>& audio) override;
};

struct TranscriptBundle {
    std::string body_text;
    std::vector<std::pair<std::string, std::string>> ocr_texts;         // (url, text)
    std::vector<std::pair<std::string, std::string>> video_transcripts; // (url, text)
    std::vector<std::pair<std::string, std::string>> failures;          // (url, error kind)
};

using MediaFetchFn =
    std::function<std::vector<std::uint8_t>(const std::string& url,
                                            std::size_t max_bytes)>;

MediaFetchFn http_media_fetcher(const FetchLimits& limits);

// Fetches and transcribes every media URL in listed order; failures are
// per-item, never fatal.
TranscriptBundle collect_transcripts(const PageContent& page,
                                     const MediaFetchFn& fetch,
                                     ImageTranscriber& images,
                                     VideoTranscriber& videos,
                                     std::size_t media_max_bytes = kMediaMaxBytes);

} // namespace phishscan

#endif
