#include "skforge/digest.hpp"

#include <openssl/evp.h>

#include "skforge/errors.hpp"

namespace skforge {

Digest sha256(std::span<const std::uint8_t> data) {
    Digest out{};
    unsigned len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, out.data(), &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw Error("sha256 failed");
    }
    EVP_MD_CTX_free(ctx);
    return out;
}

std::string hex(const Digest& d) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(64);
    for (std::uint8_t b : d) {
        s += digits[b >> 4];
        s += digits[b & 0xf];
    }
    return s;
}

}  // namespace skforge
