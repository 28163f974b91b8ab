#pragma once

#include "parazone/seq.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace parazone {

/// Printable names indexed by (dense) symbol id.
using Labels = std::vector<std::string>;

struct ParsedSeq {
    Seq seq;
    Labels labels;
};

struct ParsedESeq {
    ESeq eseq;
    Labels labels;
};

// Text format: '(' and ')' delimit special blocks. When the text contains
// whitespace, tokens are whitespace-separated words; otherwise every
// character is one symbol ("(12)1(34)313424"). Endpoint tokens are written
// "L:a" / "R:a". Parsed symbols get ids 0..n-1 in order of first occurrence.

ParsedSeq parse_seq_text(std::string_view text);
ParsedESeq parse_eseq_text(std::string_view text);

// JSON format: {"tokens": [...], "blocks": [[start, length], ...]}.

ParsedSeq parse_seq_json(const nlohmann::json& j);
ParsedESeq parse_eseq_json(const nlohmann::json& j);

/// Accepts either format, choosing JSON when the text starts with '{'.
ParsedSeq parse_seq(std::string_view text);
ParsedESeq parse_eseq(std::string_view text);

/// Name of the i-th symbol (0-based) in the default scheme:
/// 1..9, A..Z, a..z, then decimal numbers.
std::string default_symbol_name(std::size_t index);

/// Without labels, symbols are renamed canonically (first-occurrence
/// order) and printed compactly when every name is a single character.
std::string format_seq(const Seq& s, const Labels* labels = nullptr);
std::string format_eseq(const ESeq& e, const Labels* labels = nullptr);

nlohmann::json seq_to_json(const Seq& s, const Labels* labels = nullptr);
nlohmann::json eseq_to_json(const ESeq& e, const Labels* labels = nullptr);

std::string read_file(const std::string& path);

}  // namespace parazone
