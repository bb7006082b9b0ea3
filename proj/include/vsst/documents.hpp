#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vsst/bignat.hpp"
#include "vsst/errors.hpp"
#include "vsst/feldman.hpp"
#include "vsst/field.hpp"
#include "vsst/hashing.hpp"
#include "vsst/vss.hpp"

namespace vsst {

// Text documents are line-oriented "key: value" records. Keys appear in a
// fixed order, list entries repeat their key, and values are lowercase hex
// for field elements and decimal for small counts, so render/parse round
// trips are bit-exact.

inline constexpr unsigned document_format_version = 1;

struct ShareDocument {
    FieldPtr field;
    std::uint32_t threshold = 0;
    std::uint32_t total = 0;
    std::vector<std::pair<std::uint32_t, BigNat>> shares;  // (index, value)
};

namespace detail {

class LineWriter {
public:
    void put(std::string_view key, std::string_view value) {
        out_ += key;
        out_ += ": ";
        out_ += value;
        out_ += '\n';
    }
    void put(std::string_view key, const BigNat& v) { put(key, to_hex(v)); }
    void put(std::string_view key, std::uint64_t v) { put(key, std::to_string(v)); }
    std::string take() { return std::move(out_); }

private:
    std::string out_;
};

// Sequential reader: documents have a fixed key order, so each take() names
// the key it expects and anything else is a malformed document.
class LineReader {
public:
    explicit LineReader(std::string_view text) {
        std::size_t pos = 0;
        std::size_t lineno = 0;
        while (pos < text.size()) {
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            std::string_view line = text.substr(pos, end - pos);
            pos = end + 1;
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (line.empty()) continue;
            const std::size_t sep = line.find(": ");
            if (sep == std::string_view::npos)
                throw ParseError("line " + std::to_string(lineno) +
                                 ": expected 'key: value'");
            lines_.emplace_back(line.substr(0, sep), line.substr(sep + 2));
        }
    }

    bool at(std::string_view key) const {
        return next_ < lines_.size() && lines_[next_].first == key;
    }

    std::string_view take(std::string_view key) {
        if (next_ >= lines_.size())
            throw ParseError("missing '" + std::string(key) + "' line");
        if (lines_[next_].first != key)
            throw ParseError("expected '" + std::string(key) + "', found '" +
                             std::string(lines_[next_].first) + "'");
        return lines_[next_++].second;
    }

    void finish() const {
        if (next_ < lines_.size())
            throw ParseError("unexpected trailing line '" +
                             std::string(lines_[next_].first) + "'");
    }

private:
    std::vector<std::pair<std::string_view, std::string_view>> lines_;
    std::size_t next_ = 0;
};

inline std::uint64_t parse_count(std::string_view s, std::string_view what) {
    if (s.empty()) throw ParseError(std::string(what) + ": empty number");
    std::uint64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            throw ParseError(std::string(what) + ": bad decimal '" + std::string(s) + "'");
        if (v > (UINT64_MAX - static_cast<unsigned>(c - '0')) / 10)
            throw ParseError(std::string(what) + ": number out of range");
        v = v * 10 + static_cast<unsigned>(c - '0');
    }
    return v;
}

inline void render_field(LineWriter& w, const FieldPtr& f) {
    if (f->kind() == FieldKind::prime) {
        w.put("field_kind", "prime");
        w.put("field_modulus", f->modulus());
    } else {
        w.put("field_kind", "binary");
        w.put("field_degree", std::uint64_t{f->degree()});
        w.put("field_reduction", f->reduction_polynomial());
    }
}

inline FieldPtr parse_field(LineReader& r) {
    const std::string_view kind = r.take("field_kind");
    try {
        if (kind == "prime") return FieldSpec::prime(from_hex(r.take("field_modulus")));
        if (kind == "binary") {
            const auto degree =
                static_cast<unsigned>(parse_count(r.take("field_degree"), "field_degree"));
            return FieldSpec::binary(degree, from_hex(r.take("field_reduction")));
        }
    } catch (const BadParams& e) {
        throw ParseError(std::string("invalid field: ") + e.what());
    }
    throw ParseError("unknown field_kind '" + std::string(kind) + "'");
}

inline void check_element(const BigNat& v, const FieldPtr& f, std::string_view what) {
    if (v >= f->size())
        throw ParseError(std::string(what) + " " + to_hex(v) + " not a field element");
}

}  // namespace detail

inline std::string render_share_document(const ShareDocument& doc) {
    detail::LineWriter w;
    w.put("doc", "shares");
    w.put("format_version", std::uint64_t{document_format_version});
    detail::render_field(w, doc.field);
    w.put("threshold", std::uint64_t{doc.threshold});
    w.put("total", std::uint64_t{doc.total});
    for (const auto& [index, value] : doc.shares)
        w.put("share", std::to_string(index) + " " + to_hex(value));
    return w.take();
}

inline ShareDocument parse_share_document(std::string_view text) {
    detail::LineReader r(text);
    if (r.take("doc") != "shares") throw ParseError("not a share document");
    if (detail::parse_count(r.take("format_version"), "format_version") !=
        document_format_version)
        throw ParseError("unsupported format_version");
    ShareDocument doc;
    doc.field = detail::parse_field(r);
    doc.threshold =
        static_cast<std::uint32_t>(detail::parse_count(r.take("threshold"), "threshold"));
    doc.total = static_cast<std::uint32_t>(detail::parse_count(r.take("total"), "total"));
    while (r.at("share")) {
        const std::string_view entry = r.take("share");
        const std::size_t sep = entry.find(' ');
        if (sep == std::string_view::npos)
            throw ParseError("share line needs '<index> <hex>'");
        const auto index = static_cast<std::uint32_t>(
            detail::parse_count(entry.substr(0, sep), "share index"));
        if (index == 0) throw ParseError("share index 0 is reserved");
        for (const auto& existing : doc.shares)
            if (existing.first == index)
                throw ParseError("share index " + std::to_string(index) + " repeated");
        const BigNat value = from_hex(entry.substr(sep + 1));
        detail::check_element(value, doc.field, "share value");
        doc.shares.emplace_back(index, value);
    }
    r.finish();
    if (doc.shares.empty()) throw ParseError("share document carries no shares");
    return doc;
}

inline std::string render_bundle_document(const VerificationBundle& b) {
    detail::LineWriter w;
    w.put("doc", "bundle");
    w.put("format_version", std::uint64_t{document_format_version});
    w.put("scheme", scheme_name(b.scheme));
    w.put("verifier_index", std::uint64_t{b.verifier_index});
    detail::render_field(w, b.field);
    w.put("domain_bits", std::uint64_t{b.domain_bits});
    w.put("base", b.base);
    for (const BigNat& c : b.coefficients) w.put("coefficient", c);
    return w.take();
}

inline VerificationBundle parse_bundle_document(std::string_view text) {
    detail::LineReader r(text);
    if (r.take("doc") != "bundle") throw ParseError("not a bundle document");
    if (detail::parse_count(r.take("format_version"), "format_version") !=
        document_format_version)
        throw ParseError("unsupported format_version");
    VerificationBundle b;
    b.scheme = scheme_from_name(std::string(r.take("scheme")));
    b.verifier_index = static_cast<std::uint32_t>(
        detail::parse_count(r.take("verifier_index"), "verifier_index"));
    b.field = detail::parse_field(r);
    b.domain_bits = static_cast<std::size_t>(
        detail::parse_count(r.take("domain_bits"), "domain_bits"));
    b.base = from_hex(r.take("base"));
    detail::check_element(b.base, b.field, "base");
    while (r.at("coefficient")) {
        const BigNat c = from_hex(r.take("coefficient"));
        detail::check_element(c, b.field, "coefficient");
        b.coefficients.push_back(c);
    }
    r.finish();
    if (b.coefficients.empty()) throw ParseError("bundle carries no coefficients");
    return b;
}

inline std::string render_params_document(const FieldPtr& f) {
    detail::LineWriter w;
    w.put("doc", "field-params");
    w.put("format_version", std::uint64_t{document_format_version});
    detail::render_field(w, f);
    return w.take();
}

inline FieldPtr parse_params_document(std::string_view text) {
    detail::LineReader r(text);
    if (r.take("doc") != "field-params") throw ParseError("not a params document");
    if (detail::parse_count(r.take("format_version"), "format_version") !=
        document_format_version)
        throw ParseError("unsupported format_version");
    FieldPtr f = detail::parse_field(r);
    r.finish();
    return f;
}

inline std::string render_feldman_document(const FeldmanParams& params) {
    detail::LineWriter w;
    w.put("doc", "feldman-params");
    w.put("format_version", std::uint64_t{document_format_version});
    w.put("p", params.p);
    w.put("q", params.q);
    w.put("generator", params.generator);
    for (const BigNat& c : params.commitments) w.put("commitment", c);
    return w.take();
}

inline FeldmanParams parse_feldman_document(std::string_view text) {
    detail::LineReader r(text);
    if (r.take("doc") != "feldman-params") throw ParseError("not a feldman document");
    if (detail::parse_count(r.take("format_version"), "format_version") !=
        document_format_version)
        throw ParseError("unsupported format_version");
    FeldmanParams params;
    params.p = from_hex(r.take("p"));
    params.q = from_hex(r.take("q"));
    params.generator = from_hex(r.take("generator"));
    while (r.at("commitment")) params.commitments.push_back(from_hex(r.take("commitment")));
    r.finish();
    if (params.commitments.empty()) throw ParseError("feldman document has no commitments");
    return params;
}

inline std::string render_hash_document(const HashCommitments& c) {
    detail::LineWriter w;
    w.put("doc", "hash-commitments");
    w.put("format_version", std::uint64_t{document_format_version});
    w.put("hash", c.hash_name);
    w.put("secret_digest", digest_hex(c.secret_digest));
    for (std::size_t i = 0; i < c.share_digests.size(); ++i)
        w.put("share_digest",
              std::to_string(i + 1) + " " + digest_hex(c.share_digests[i]));
    return w.take();
}

namespace detail {

inline Digest parse_digest(std::string_view hex, std::string_view what) {
    if (hex.size() != 64)
        throw ParseError(std::string(what) + ": digest must be 64 hex digits");
    Digest d{};
    for (std::size_t i = 0; i < d.size(); ++i) {
        const BigNat byte = from_hex(hex.substr(2 * i, 2));
        d[i] = static_cast<std::uint8_t>(byte);
    }
    return d;
}

}  // namespace detail

inline HashCommitments parse_hash_document(std::string_view text) {
    detail::LineReader r(text);
    if (r.take("doc") != "hash-commitments") throw ParseError("not a hash document");
    if (detail::parse_count(r.take("format_version"), "format_version") !=
        document_format_version)
        throw ParseError("unsupported format_version");
    HashCommitments c;
    c.hash_name = std::string(r.take("hash"));
    if (c.hash_name != "sha-256")
        throw ParseError("unsupported hash '" + c.hash_name + "'");
    c.secret_digest = detail::parse_digest(r.take("secret_digest"), "secret_digest");
    std::size_t expected = 1;
    while (r.at("share_digest")) {
        const std::string_view entry = r.take("share_digest");
        const std::size_t sep = entry.find(' ');
        if (sep == std::string_view::npos)
            throw ParseError("share_digest line needs '<index> <hex>'");
        if (detail::parse_count(entry.substr(0, sep), "share_digest index") != expected)
            throw ParseError("share digests must be listed 1..n in order");
        c.share_digests.push_back(detail::parse_digest(entry.substr(sep + 1), "share_digest"));
        ++expected;
    }
    r.finish();
    if (c.share_digests.empty()) throw ParseError("hash document has no share digests");
    return c;
}

// Reads just the "doc:" tag so callers can dispatch on document type.
inline std::string document_kind(std::string_view text) {
    detail::LineReader r(text);
    return std::string(r.take("doc"));
}

}  // namespace vsst
