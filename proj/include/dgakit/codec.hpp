#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "dgakit/error.hpp"

namespace dgakit {

inline constexpr std::size_t kMaxDomainLength = 63;
inline constexpr std::size_t kVocabularySize = 40;

class CodecError : public DataError {
public:
    CodecError(std::string code, const std::string& message, std::string input)
        : DataError(std::move(code), message), input_(std::move(input)) {}

    // The offending domain (or decoded prefix) for audit trails.
    const std::string& input() const noexcept { return input_; }

private:
    std::string input_;
};

// The 40-character domain alphabet. Index 0 is reserved for padding and never
// maps to a character; letters a-z occupy 1-26, digits 27-36, then the four
// URL remnants '-', '.', '_', '~'.
class Vocabulary {
public:
    static const Vocabulary& canonical() {
        static const Vocabulary v{
            "abcdefghijklmnopqrstuvwxyz"
            "0123456789"
            "-._~"};
        return v;
    }

    // 1-based index, or 0 when the character is not in the alphabet.
    int index_of(char c) const noexcept {
        return lookup_[static_cast<unsigned char>(c)];
    }

    bool contains(char c) const noexcept { return index_of(c) != 0; }

    char char_at(int index) const {
        if (index < 1 || index > static_cast<int>(chars_.size())) {
            throw CodecError("InvalidIndex",
                             "vocabulary index " + std::to_string(index) +
                                 " outside [1," + std::to_string(chars_.size()) + "]",
                             std::to_string(index));
        }
        return chars_[static_cast<std::size_t>(index - 1)];
    }

    const std::string& chars() const noexcept { return chars_; }

private:
    explicit Vocabulary(std::string chars) : chars_(std::move(chars)) {
        lookup_.fill(0);
        for (std::size_t i = 0; i < chars_.size(); ++i) {
            lookup_[static_cast<unsigned char>(chars_[i])] = static_cast<int>(i + 1);
        }
    }

    std::string chars_;
    std::array<int, 256> lookup_{};
};

inline const Vocabulary& build_vocabulary() { return Vocabulary::canonical(); }

// A domain as the fixed-length integer sequence the models consume. Padding
// zeros always form a contiguous prefix.
struct EncodedDomain {
    std::array<std::uint8_t, kMaxDomainLength> indices{};
    std::string original;

    std::size_t domain_length() const noexcept {
        std::size_t lead = 0;
        while (lead < kMaxDomainLength && indices[lead] == 0) ++lead;
        return kMaxDomainLength - lead;
    }
};

inline std::string lowercase_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

inline EncodedDomain encode_domain(std::string_view domain, const Vocabulary& vocab) {
    const std::string folded = lowercase_ascii(domain);
    if (folded.empty()) {
        throw CodecError("EmptyDomain", "domain is empty after normalization", folded);
    }
    if (folded.size() > kMaxDomainLength) {
        throw CodecError("TooLong",
                         "domain has " + std::to_string(folded.size()) +
                             " characters, maximum is " + std::to_string(kMaxDomainLength),
                         folded);
    }
    EncodedDomain out;
    out.original = folded;
    const std::size_t pad = kMaxDomainLength - folded.size();
    for (std::size_t i = 0; i < folded.size(); ++i) {
        const int idx = vocab.index_of(folded[i]);
        if (idx == 0) {
            throw CodecError("InvalidCharacter",
                             "character '" + std::string(1, folded[i]) +
                                 "' at position " + std::to_string(i) +
                                 " is not a valid domain character",
                             folded);
        }
        out.indices[pad + i] = static_cast<std::uint8_t>(idx);
    }
    return out;
}

inline std::string decode_domain(const EncodedDomain& enc, const Vocabulary& vocab) {
    std::string out;
    out.reserve(kMaxDomainLength);
    bool in_payload = false;
    for (std::size_t i = 0; i < kMaxDomainLength; ++i) {
        const int idx = enc.indices[i];
        if (idx == 0) {
            if (in_payload) {
                throw CodecError("InvalidIndex",
                                 "padding zero at position " + std::to_string(i) +
                                     " after payload started",
                                 out);
            }
            continue;
        }
        if (idx > static_cast<int>(kVocabularySize)) {
            throw CodecError("InvalidIndex",
                             "index " + std::to_string(idx) + " at position " +
                                 std::to_string(i) + " outside [1,40]",
                             out);
        }
        in_payload = true;
        out.push_back(vocab.char_at(idx));
    }
    return out;
}

// True when the string encodes without error; cheaper than try/catch in the
// corpus-loading hot path.
inline bool is_encodable(std::string_view domain, const Vocabulary& vocab) {
    if (domain.empty() || domain.size() > kMaxDomainLength) return false;
    for (char c : domain) {
        char f = (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
        if (!vocab.contains(f)) return false;
    }
    return true;
}

}  // namespace dgakit
