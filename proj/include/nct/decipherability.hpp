#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nct/code.hpp"
#include "nct/source.hpp"

namespace nct {

/// No pooled codeword is a prefix of (or equal to) another pooled codeword.
bool is_prefix_free(const Code& code);

/// Sardinas–Patterson on the pooled codeword set. A code holding lambda is UD
/// only when lambda is its sole codeword. Throws UnsupportedMultiCodeword when
/// some symbol has more than one codeword.
bool is_uniquely_decipherable(const Code& code);

inline constexpr std::size_t kDefaultBruteForceBudget = 12;

/// Shortest (then lexicographically least) digit string of length at most
/// `max_len` with two factorizations into pooled codewords, if any.
/// Positions are distinct: a codeword shared by two symbols is ambiguous.
std::optional<Codeword> find_ambiguity(const Code& code,
                                       std::size_t max_len = kDefaultBruteForceBudget);

/// Exhaustive oracle: every string of length <= max_len factors at most once.
bool brute_force_ud(const Code& code, std::size_t max_len = kDefaultBruteForceBudget);

/// Extended notion for card f(s_i) >= 1: every factorization of every string of
/// length <= max_len decodes to the same symbol sequence. Returns the first
/// offending string, if any.
std::optional<Codeword> find_symbol_ambiguity(const Code& code,
                                              std::size_t max_len = kDefaultBruteForceBudget);
bool brute_force_ud_extended(const Code& code, std::size_t max_len = kDefaultBruteForceBudget);

/// Canonical prefix-free codewords with exactly the given lengths (input
/// order preserved). Lengths are assigned in ascending (stable) order, each
/// taking the lexicographically next word not below an assigned one.
/// Errors: InvalidRadix for r < 2, KraftViolated when the Kraft sum exceeds 1.
std::vector<Codeword> instantaneous_codewords(std::span<const std::size_t> lengths,
                                              std::uint32_t radix);

/// Same, packaged as a Code over `symbols` (defaults to s1..sn).
Code construct_instantaneous(std::span<const std::size_t> lengths, std::uint32_t radix,
                             std::span<const std::string> symbols = {});

/// r-ary Huffman code for the source, symbols in source order. Merges the r
/// lightest nodes (ties: earliest created; leaves are created in symbol order),
/// labelling children by pop order. Pads with zero-weight placeholders so that
/// n = 1 (mod r-1). A single-symbol source gets the empty codeword.
Code huffman(const Source& src, std::uint32_t radix);

}  // namespace nct
