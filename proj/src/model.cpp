#include "memorec/model.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_set>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "memorec/error.hpp"
#include "memorec/hash.hpp"
#include "model_internal.hpp"

namespace memorec {

namespace {

namespace pt = boost::property_tree;

std::string_view localName(std::string_view qualified) {
    const auto colon = qualified.rfind(':');
    return colon == std::string_view::npos ? qualified : qualified.substr(colon + 1);
}

std::optional<std::string> attribute(const pt::ptree& node, const char* name) {
    const auto attrs = node.get_child_optional("<xmlattr>");
    if (!attrs) return std::nullopt;
    const auto it = attrs->find(name);
    if (it == attrs->not_found()) return std::nullopt;
    std::string value = it->second.data();
    if (value.empty()) return std::nullopt;
    return value;
}

std::vector<std::string> referenceList(std::string_view attr) {
    std::vector<std::string> names;
    std::istringstream in{std::string(attr)};
    std::string token;
    while (in >> token) {
        auto name = referenceName(token);
        if (!name.empty()) names.push_back(std::move(name));
    }
    return names;
}

std::optional<StructuralFeature> readFeature(const pt::ptree& node, const std::string& owner,
                                             std::vector<std::string>* warnings) {
    const auto type = attribute(node, "xsi:type");
    if (!type) return std::nullopt;
    const auto kind = localName(*type);
    StructuralFeature feature;
    if (kind == "EAttribute") {
        feature.kind = FeatureKind::Attribute;
    } else if (kind == "EReference") {
        feature.kind = FeatureKind::Reference;
    } else {
        return std::nullopt;
    }
    auto name = attribute(node, "name");
    if (!name) {
        detail::warn(warnings, "unnamed structural feature in class " + owner + " skipped");
        return std::nullopt;
    }
    feature.name = std::move(*name);
    if (const auto eType = attribute(node, "eType")) {
        const auto names = referenceList(*eType);
        if (!names.empty()) feature.typeName = names.back();
    }
    return feature;
}

MetaPackage readPackage(const pt::ptree& node, std::vector<std::string>* warnings) {
    MetaPackage package;
    auto name = attribute(node, "name");
    if (!name) throw Error(ErrorCode::SchemaViolation, "EPackage without a name");
    package.name = std::move(*name);

    for (const auto& [tag, child] : node) {
        if (tag == "eSubpackages") {
            package.subPackages.push_back(readPackage(child, warnings));
            continue;
        }
        if (tag != "eClassifiers") continue;
        const auto type = attribute(child, "xsi:type");
        if (!type || localName(*type) != "EClass") continue;

        MetaClass metaClass;
        auto className = attribute(child, "name");
        if (!className) {
            detail::warn(warnings, "unnamed EClass in package " + package.name + " skipped");
            continue;
        }
        metaClass.name = std::move(*className);
        metaClass.isAbstract = attribute(child, "abstract").value_or("false") == "true";
        if (const auto supers = attribute(child, "eSuperTypes")) {
            metaClass.superTypeNames = referenceList(*supers);
        }
        for (const auto& [featureTag, featureNode] : child) {
            if (featureTag != "eStructuralFeatures") continue;
            if (auto feature = readFeature(featureNode, metaClass.name, warnings)) {
                metaClass.ownedFeatures.push_back(std::move(*feature));
            }
        }
        package.classes.push_back(std::move(metaClass));
    }
    return package;
}

void collectClasses(const MetaPackage& package, std::vector<ClassEntry>& out) {
    for (const auto& c : package.classes) out.push_back({package.name, &c});
    for (const auto& sub : package.subPackages) collectClasses(sub, out);
}

void collectPackages(const MetaPackage& package, std::vector<const MetaPackage*>& out) {
    out.push_back(&package);
    for (const auto& sub : package.subPackages) collectPackages(sub, out);
}

void forEachPackage(MetaPackage& package, const std::function<void(MetaPackage&)>& fn) {
    fn(package);
    for (auto& sub : package.subPackages) forEachPackage(sub, fn);
}

}  // namespace

std::string referenceName(std::string_view token) {
    const auto hash = token.find('#');
    if (hash != std::string_view::npos) {
        token = token.substr(hash + 1);
    } else if (token.find(':') != std::string_view::npos) {
        return {};
    }
    const auto slash = token.rfind('/');
    if (slash != std::string_view::npos) token = token.substr(slash + 1);
    return std::string(token);
}

bool structurallyEqual(const Metamodel& a, const Metamodel& b) {
    return a.rootPackages == b.rootPackages;
}

std::vector<ClassEntry> allClasses(const Metamodel& m) {
    std::vector<ClassEntry> out;
    for (const auto& p : m.rootPackages) collectClasses(p, out);
    return out;
}

std::vector<const MetaPackage*> allPackages(const Metamodel& m) {
    std::vector<const MetaPackage*> out;
    for (const auto& p : m.rootPackages) collectPackages(p, out);
    return out;
}

ClassIndex buildClassIndex(const Metamodel& m) {
    ClassIndex index;
    for (const auto& entry : allClasses(m)) index.emplace(entry.metaClass->name, entry.metaClass);
    return index;
}

namespace detail {

void finalizeMetamodel(Metamodel& m, std::vector<std::string>* warnings) {
    std::unordered_set<std::string> known;
    for (auto& root : m.rootPackages) {
        forEachPackage(root, [&](MetaPackage& package) {
            std::unordered_set<std::string> seen;
            std::vector<MetaClass> kept;
            for (auto& c : package.classes) {
                if (!seen.insert(c.name).second) {
                    warn(warnings, "duplicate class " + c.name + " in package " + package.name +
                                       " skipped");
                    continue;
                }
                known.insert(c.name);
                kept.push_back(std::move(c));
            }
            package.classes = std::move(kept);
        });
    }

    for (auto& root : m.rootPackages) {
        forEachPackage(root, [&](MetaPackage& package) {
            for (auto& c : package.classes) {
                std::vector<std::string> resolved;
                for (auto& s : c.superTypeNames) {
                    if (!known.contains(s)) {
                        warn(warnings, "supertype " + s + " of " + c.name + " not found, dropped");
                        continue;
                    }
                    if (std::find(resolved.begin(), resolved.end(), s) == resolved.end()) {
                        resolved.push_back(std::move(s));
                    }
                }
                c.superTypeNames = std::move(resolved);
            }
        });
    }

    // Cycle check over the name graph; every occurrence of a name contributes edges.
    std::unordered_map<std::string, std::vector<std::string>> edges;
    for (const auto& entry : allClasses(m)) {
        auto& out = edges[entry.metaClass->name];
        out.insert(out.end(), entry.metaClass->superTypeNames.begin(),
                   entry.metaClass->superTypeNames.end());
    }
    enum class Mark { Unvisited, Active, Done };
    std::unordered_map<std::string, Mark> marks;
    std::function<void(const std::string&)> visit = [&](const std::string& name) {
        auto& mark = marks[name];
        if (mark == Mark::Done) return;
        if (mark == Mark::Active) {
            throw Error(ErrorCode::CyclicInheritance, "inheritance cycle through class " + name);
        }
        mark = Mark::Active;
        for (const auto& s : edges[name]) visit(s);
        marks[name] = Mark::Done;
    };
    for (const auto& entry : allClasses(m)) visit(entry.metaClass->name);
}

}  // namespace detail

Metamodel parseEcoreXmi(std::string_view bytes, std::string sourceUri,
                        std::vector<std::string>* warnings) {
    pt::ptree tree;
    try {
        std::istringstream in{std::string(bytes)};
        pt::read_xml(in, tree, pt::xml_parser::no_comments);
    } catch (const pt::xml_parser_error& e) {
        throw Error(ErrorCode::MalformedXml, e.what());
    }

    const pt::ptree* root = nullptr;
    std::string rootName;
    for (const auto& [tag, child] : tree) {
        if (!tag.empty() && tag.front() == '<') continue;
        root = &child;
        rootName = tag;
        break;
    }
    if (root == nullptr) throw Error(ErrorCode::MalformedXml, "document has no root element");
    if (localName(rootName) != "EPackage") {
        throw Error(ErrorCode::UnsupportedRoot, "root element is " + rootName);
    }

    Metamodel m;
    m.id = contentHash(bytes);
    m.sourceUri = std::move(sourceUri);
    m.rootPackages.push_back(readPackage(*root, warnings));
    detail::finalizeMetamodel(m, warnings);
    return m;
}

}  // namespace memorec
