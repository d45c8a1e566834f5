#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "memorec/model.hpp"

namespace memorec {

/// SEs/IEs pair classes with structural features (IEs adds inherited ones).
/// SEc pairs packages with classes; IEc puts every class under one artificial package.
enum class EncodingScheme { SEs, IEs, SEc, IEc };

inline constexpr std::array<EncodingScheme, 4> kAllSchemes = {
    EncodingScheme::SEs, EncodingScheme::IEs, EncodingScheme::SEc, EncodingScheme::IEc};

/// Context name used by IEc.
inline constexpr std::string_view kArtificialPackage = "__root";

std::string_view toString(EncodingScheme scheme) noexcept;
std::optional<EncodingScheme> parseScheme(std::string_view name) noexcept;

/// True when the scheme's items are structural features (class contexts).
constexpr bool recommendsFeatures(EncodingScheme scheme) noexcept {
    return scheme == EncodingScheme::SEs || scheme == EncodingScheme::IEs;
}

struct ItemPair {
    std::string context;
    std::string item;

    std::string render() const { return context + "#" + item; }
    auto operator<=>(const ItemPair&) const = default;
};

struct EncodedMetamodel {
    std::string metamodelId;
    EncodingScheme scheme = EncodingScheme::SEs;
    std::vector<ItemPair> pairs;  // multiset, one entry per source declaration
    // Every context declared by the metamodel, including ones with no items.
    std::vector<std::string> contexts;

    bool operator==(const EncodedMetamodel&) const = default;
};

EncodedMetamodel encode(const Metamodel& m, EncodingScheme scheme);

/// Feature names declared by the strict transitive supertypes of `c`, first
/// occurrence order, each name once.
std::vector<std::string> inheritedFeatures(const MetaClass& c, const ClassIndex& index);

/// Items paired with `context`, pair order, duplicates removed.
std::vector<std::string> contextItems(const EncodedMetamodel& encoded, std::string_view context);
std::vector<std::string> contextItems(const Metamodel& m, EncodingScheme scheme,
                                      std::string_view context);

/// One `context#item` per line, sorted.
std::string dumpPairs(const EncodedMetamodel& encoded);

}  // namespace memorec
