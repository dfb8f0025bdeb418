#include "phishscan/media_transcribers.hpp"
#include "phishscan/errors.hpp"

#include <cstring>

namespace phishscan {

namespace mockmedia {

namespace {
constexpr char kMagic[4] = {'M', 'C', 'K', 'M'};
}

std::vector<std::uint8_t> encode(MediaKindTag kind, std::string_view payload) {
    std::vector<std::uint8_t> out;
    out.reserve(9 + payload.size());
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(static_cast<std::uint8_t>(kind));
    std::uint32_t len = static_cast<std::uint32_t>(payload.size());
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<std::uint8_t>((len >> (8 * i)) & 0xff));
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

Decoded decode(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 9)
        throw TranscribeError("mock container too short");
    if (std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw TranscribeError("mock container has wrong magic");
    std::uint8_t kind = bytes[4];
    if (kind != 0x01 && kind != 0x02)
        throw TranscribeError("mock container has unknown kind byte");
    std::uint32_t len = 0;
    for (int i = 0; i < 4; ++i)
        len |= static_cast<std::uint32_t>(bytes[5 + static_cast<std::size_t>(i)])
               << (8 * i);
    if (bytes.size() - 9 != len)
        throw TranscribeError("mock container length mismatch");
    Decoded out;
    out.kind = static_cast<MediaKindTag>(kind);
    out.payload.assign(bytes.begin() + 9, bytes.end());
    return out;
}

} // namespace mockmedia

std::string VideoTranscriber::transcribe(const MediaBlob& blob) {
    if (blob.kind != MediaKindTag::video)
        throw TranscribeError("kind mismatch: expected video blob");
    return recognize_speech(extract_audio(blob));
}

std::string MockImageTranscriber::transcribe(const MediaBlob& blob) {
    if (blob.kind != MediaKindTag::image)
        throw TranscribeError("kind mismatch: expected image blob");
    auto decoded = mockmedia::decode(blob.bytes);
    if (decoded.kind != MediaKindTag::image)
        throw TranscribeError("container kind is not image");
    return decoded.payload;
}

std::vector<std::uint8_t> MockVideoTranscriber::extract_audio(const MediaBlob& blob) {
    auto decoded = mockmedia::decode(blob.bytes);
    if (decoded.kind != MediaKindTag::video)
        throw TranscribeError("container kind is not video");
    return std::vector<std::uint8_t>(decoded.payload.begin(), decoded.payload.end());
}

std::string MockVideoTranscriber::recognize_speech(
    const std::vector<std::uint8_t>& audio) {
    return std::string(audio.begin(), audio.end());
}

MediaFetchFn http_media_fetcher(const FetchLimits& limits) {
    return [limits](const std::string& url, std::size_t max_bytes) {
        FetchLimits media_limits = limits;
        media_limits.max_bytes = max_bytes;
        FetchResult res = fetch_page(url, media_limits);
        return std::vector<std::uint8_t>(res.body.begin(), res.body.end());
    };
}

TranscriptBundle collect_transcripts(const PageContent& page,
                                     const MediaFetchFn& fetch,
                                     ImageTranscriber& images,
                                     VideoTranscriber& videos,
                                     std::size_t media_max_bytes) {
    TranscriptBundle bundle;
    bundle.body_text = page.body_text;

    auto process = [&](const std::string& url, MediaKindTag kind) {
        MediaBlob blob;
        blob.source_url = url;
        blob.kind = kind;
        try {
            blob.bytes = fetch(url, media_max_bytes);
        } catch (const FetchError& e) {
            bundle.failures.emplace_back(url, std::string("fetch: ") + e.what());
            return;
        }
        try {
            if (kind == MediaKindTag::image)
                bundle.ocr_texts.emplace_back(url, images.transcribe(blob));
            else
                bundle.video_transcripts.emplace_back(url, videos.transcribe(blob));
        } catch (const TranscribeError& e) {
            bundle.failures.emplace_back(url, std::string("transcribe: ") + e.what());
        }
    };

    for (const auto& url : page.image_urls) process(url, MediaKindTag::image);
    for (const auto& url : page.video_urls) process(url, MediaKindTag::video);
    return bundle;
}

} // namespace phishscan
