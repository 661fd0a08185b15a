#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bpb/space.hpp"

namespace bpb {

/// Parsed form of the line-oriented space-spec document:
///
///   bpbspace 1
///   kind diamond
///   eps 0.5
///
/// Polytopal specs list vertices explicitly; direct sums list catalog
/// part names. Coordinates print with full precision so that
/// parse(print(s)) == s.
struct SpaceSpec {
    std::string kind;
    CatalogParams params;
    std::vector<Vec> vertices;  // kind == "polytopal" only
    int dim = 0;

    NormedSpace build() const;
    std::string print() const;
    std::uint64_t hash() const;  // FNV-1a of the canonical text

    static SpaceSpec parse(std::istream& in);
    static SpaceSpec parse_string(const std::string& text);
    static SpaceSpec parse_file(const std::string& path);

    /// Spec of the dual space: sum kinds swap, polytopal kinds go to the
    /// polar vertex list, lp goes to the Holder conjugate.
    SpaceSpec dual() const;

    bool operator==(const SpaceSpec&) const = default;
};

}  // namespace bpb
