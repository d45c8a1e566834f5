#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace memorec {

enum class FeatureKind { Attribute, Reference };

struct StructuralFeature {
    std::string name;
    FeatureKind kind = FeatureKind::Attribute;
    std::optional<std::string> typeName;  // metadata only, never recommended

    bool operator==(const StructuralFeature&) const = default;
};

struct MetaClass {
    std::string name;
    std::vector<StructuralFeature> ownedFeatures;  // declaration order
    std::vector<std::string> superTypeNames;       // resolvable within the owning metamodel
    bool isAbstract = false;

    bool operator==(const MetaClass&) const = default;
};

struct MetaPackage {
    std::string name;
    std::vector<MetaClass> classes;  // declaration order, names unique
    std::vector<MetaPackage> subPackages;

    bool operator==(const MetaPackage&) const = default;
};

/// A parsed metamodel. Immutable once returned by a parser; `id` is the
/// SHA-256 of the source bytes.
struct Metamodel {
    std::string id;
    std::string sourceUri;
    std::vector<MetaPackage> rootPackages;

    bool operator==(const Metamodel&) const = default;
};

/// Equality of the package trees only; ids and source URIs are ignored.
bool structurallyEqual(const Metamodel& a, const Metamodel& b);

/// Parses the supported Ecore XMI subset. Unsupported elements are ignored,
/// supertypes that do not resolve inside the document are dropped and reported
/// through `warnings` when provided.
Metamodel parseEcoreXmi(std::string_view bytes, std::string sourceUri,
                        std::vector<std::string>* warnings = nullptr);

Metamodel parseJsonModel(std::string_view bytes, std::string sourceUri,
                         std::vector<std::string>* warnings = nullptr);

/// Renders the JSON model format; `parseJsonModel` of the result is
/// structurally equal to `m`.
std::string toJsonModel(const Metamodel& m);

struct ClassEntry {
    std::string packageName;  // simple name of the directly containing package
    const MetaClass* metaClass = nullptr;
};

/// Depth-first over root packages: a package's classes, then its subpackages.
std::vector<ClassEntry> allClasses(const Metamodel& m);

/// Same traversal order as `allClasses`, one entry per package.
std::vector<const MetaPackage*> allPackages(const Metamodel& m);

/// Class name to class. When a name occurs in several packages the first one in
/// `allClasses` order wins.
using ClassIndex = std::unordered_map<std::string, const MetaClass*>;
ClassIndex buildClassIndex(const Metamodel& m);

/// Resolves an Ecore-style reference (`#//Name`, `#//Pkg/Name`,
/// `other.ecore#//Name` or a bare name) to its final segment. Returns an empty
/// string for type-prefix tokens such as `ecore:EClass`.
std::string referenceName(std::string_view token);

}  // namespace memorec
