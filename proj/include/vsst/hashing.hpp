#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iterator>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "vsst/bignat.hpp"
#include "vsst/errors.hpp"

namespace vsst {

using Digest = std::array<std::uint8_t, 32>;

using HashFunction = std::function<Digest(const std::vector<std::uint8_t>&)>;

inline Digest sha256(const std::vector<std::uint8_t>& data) {
    Digest out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != out.size())
        throw Error("sha-256 digest computation failed");
    return out;
}

// Values are hashed in their minimal big-endian byte form; zero is one 0x00
// byte so that it hashes differently from the empty message.
inline std::vector<std::uint8_t> be_bytes(const BigNat& v) {
    std::vector<std::uint8_t> out;
    if (v == 0) {
        out.push_back(0);
        return out;
    }
    boost::multiprecision::export_bits(v, std::back_inserter(out), 8);
    return out;
}

inline std::string digest_hex(const Digest& d) {
    static const char* alphabet = "0123456789abcdef";
    std::string s;
    s.reserve(d.size() * 2);
    for (std::uint8_t b : d) {
        s.push_back(alphabet[b >> 4]);
        s.push_back(alphabet[b & 0xf]);
    }
    return s;
}

// Digest of the secret catches a wrong reconstruction; per-share digests point
// at the shareholder whose contribution was wrong.  Simple, linear in n, and
// the yardstick the space-efficient schemes are measured against.
struct HashCommitments {
    std::string hash_name = "sha-256";
    Digest secret_digest{};
    std::vector<Digest> share_digests;
};

inline HashCommitments hash_commit(const BigNat& secret, const std::vector<BigNat>& shares,
                                   const HashFunction& hash = sha256) {
    HashCommitments out;
    out.secret_digest = hash(be_bytes(secret));
    out.share_digests.reserve(shares.size());
    for (const BigNat& s : shares) out.share_digests.push_back(hash(be_bytes(s)));
    return out;
}

inline bool hash_verify_secret(const BigNat& candidate, const HashCommitments& c,
                               const HashFunction& hash = sha256) {
    return hash(be_bytes(candidate)) == c.secret_digest;
}

// index is the 1-based shareholder position.
inline bool hash_verify_share(std::uint32_t index, const BigNat& candidate,
                              const HashCommitments& c, const HashFunction& hash = sha256) {
    if (index < 1 || index > c.share_digests.size())
        throw IndexOutOfRange("shareholder " + std::to_string(index) + " of " +
                              std::to_string(c.share_digests.size()));
    return hash(be_bytes(candidate)) == c.share_digests[index - 1];
}

}  // namespace vsst
