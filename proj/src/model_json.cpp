#include "memorec/model_json.hpp"

#include "memorec/error.hpp"
#include "memorec/hash.hpp"
#include "model_internal.hpp"

namespace memorec {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void violation(const std::string& message) {
    throw Error(ErrorCode::SchemaViolation, message);
}

std::string requireName(const json& node, const std::string& where) {
    if (!node.is_object()) violation(where + " is not an object");
    const auto it = node.find("name");
    if (it == node.end()) violation(where + " is missing \"name\"");
    if (!it->is_string() || it->get<std::string>().empty()) {
        violation(where + " has an invalid \"name\"");
    }
    return it->get<std::string>();
}

const json* optionalArray(const json& node, const char* key, const std::string& where) {
    const auto it = node.find(key);
    if (it == node.end() || it->is_null()) return nullptr;
    if (!it->is_array()) violation(where + ": \"" + key + "\" must be an array");
    return &*it;
}

StructuralFeature readFeature(const json& node, const std::string& where) {
    StructuralFeature feature;
    feature.name = requireName(node, where);
    const auto kind = node.find("kind");
    if (kind == node.end() || !kind->is_string()) violation(where + " is missing \"kind\"");
    if (*kind == "attribute") {
        feature.kind = FeatureKind::Attribute;
    } else if (*kind == "reference") {
        feature.kind = FeatureKind::Reference;
    } else {
        violation(where + " has unknown kind " + kind->dump());
    }
    if (const auto type = node.find("type"); type != node.end() && !type->is_null()) {
        if (!type->is_string()) violation(where + ": \"type\" must be a string");
        feature.typeName = type->get<std::string>();
    }
    return feature;
}

MetaClass readClass(const json& node, const std::string& where) {
    MetaClass c;
    c.name = requireName(node, where);
    const std::string here = where + " " + c.name;
    if (const auto abs = node.find("abstract"); abs != node.end() && !abs->is_null()) {
        if (!abs->is_boolean()) violation(here + ": \"abstract\" must be a boolean");
        c.isAbstract = abs->get<bool>();
    }
    if (const auto* supers = optionalArray(node, "supertypes", here)) {
        for (const auto& s : *supers) {
            if (!s.is_string()) violation(here + ": supertypes must be strings");
            auto name = referenceName(s.get<std::string>());
            if (!name.empty()) c.superTypeNames.push_back(std::move(name));
        }
    }
    if (const auto* features = optionalArray(node, "features", here)) {
        for (const auto& f : *features) c.ownedFeatures.push_back(readFeature(f, here + " feature"));
    }
    return c;
}

MetaPackage readPackage(const json& node, const std::string& where) {
    MetaPackage p;
    p.name = requireName(node, where);
    const std::string here = "package " + p.name;
    if (const auto* classes = optionalArray(node, "classes", here)) {
        for (const auto& c : *classes) p.classes.push_back(readClass(c, here + " class"));
    }
    if (const auto* subs = optionalArray(node, "subpackages", here)) {
        for (const auto& s : *subs) p.subPackages.push_back(readPackage(s, here + " subpackage"));
    }
    return p;
}

ordered_json featureToJson(const StructuralFeature& f) {
    ordered_json out;
    out["name"] = f.name;
    out["kind"] = f.kind == FeatureKind::Attribute ? "attribute" : "reference";
    if (f.typeName) out["type"] = *f.typeName;
    return out;
}

ordered_json packageToJson(const MetaPackage& p) {
    ordered_json out;
    out["name"] = p.name;
    out["classes"] = ordered_json::array();
    for (const auto& c : p.classes) {
        ordered_json jc;
        jc["name"] = c.name;
        jc["abstract"] = c.isAbstract;
        jc["supertypes"] = c.superTypeNames;
        jc["features"] = ordered_json::array();
        for (const auto& f : c.ownedFeatures) jc["features"].push_back(featureToJson(f));
        out["classes"].push_back(std::move(jc));
    }
    out["subpackages"] = ordered_json::array();
    for (const auto& s : p.subPackages) out["subpackages"].push_back(packageToJson(s));
    return out;
}

}  // namespace

ordered_json metamodelToJson(const Metamodel& m) {
    ordered_json out;
    out["source"] = m.sourceUri;
    out["packages"] = ordered_json::array();
    for (const auto& p : m.rootPackages) out["packages"].push_back(packageToJson(p));
    return out;
}

Metamodel metamodelFromJson(const json& doc, std::string id, std::string sourceUri,
                            std::vector<std::string>* warnings) {
    if (!doc.is_object()) violation("model document is not an object");
    const auto packages = doc.find("packages");
    if (packages == doc.end()) violation("model document is missing \"packages\"");
    if (!packages->is_array()) violation("\"packages\" must be an array");
    if (const auto source = doc.find("source");
        source != doc.end() && !source->is_null() && !source->is_string()) {
        violation("\"source\" must be a string");
    }

    Metamodel m;
    m.id = std::move(id);
    m.sourceUri = std::move(sourceUri);
    for (const auto& p : *packages) m.rootPackages.push_back(readPackage(p, "package"));
    detail::finalizeMetamodel(m, warnings);
    return m;
}

Metamodel parseJsonModel(std::string_view bytes, std::string sourceUri,
                         std::vector<std::string>* warnings) {
    json doc;
    try {
        doc = json::parse(bytes.begin(), bytes.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedJson, e.what());
    }
    return metamodelFromJson(doc, contentHash(bytes), std::move(sourceUri), warnings);
}

std::string toJsonModel(const Metamodel& m) {
    return metamodelToJson(m).dump(2) + "\n";
}

}  // namespace memorec
