#include "memorec/encoder.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "memorec/error.hpp"

namespace memorec {

std::string_view toString(EncodingScheme scheme) noexcept {
    switch (scheme) {
        case EncodingScheme::SEs: return "SEs";
        case EncodingScheme::IEs: return "IEs";
        case EncodingScheme::SEc: return "SEc";
        case EncodingScheme::IEc: return "IEc";
    }
    return "?";
}

std::optional<EncodingScheme> parseScheme(std::string_view name) noexcept {
    for (auto s : kAllSchemes) {
        if (toString(s) == name) return s;
    }
    return std::nullopt;
}

std::vector<std::string> inheritedFeatures(const MetaClass& c, const ClassIndex& index) {
    std::vector<std::string> names;
    std::unordered_set<std::string> seenNames;
    std::unordered_set<std::string> done;
    std::unordered_set<std::string> onPath{c.name};

    std::function<void(const std::string&)> visit = [&](const std::string& superName) {
        if (onPath.contains(superName)) {
            throw Error(ErrorCode::CyclicInheritance, "inheritance cycle through class " + superName);
        }
        if (done.contains(superName)) return;
        const auto it = index.find(superName);
        if (it == index.end()) return;
        onPath.insert(superName);
        for (const auto& f : it->second->ownedFeatures) {
            if (seenNames.insert(f.name).second) names.push_back(f.name);
        }
        for (const auto& next : it->second->superTypeNames) visit(next);
        onPath.erase(superName);
        done.insert(superName);
    };
    for (const auto& s : c.superTypeNames) visit(s);
    return names;
}

EncodedMetamodel encode(const Metamodel& m, EncodingScheme scheme) {
    EncodedMetamodel out;
    out.metamodelId = m.id;
    out.scheme = scheme;

    auto addContext = [&out](const std::string& name) {
        if (std::find(out.contexts.begin(), out.contexts.end(), name) == out.contexts.end()) {
            out.contexts.push_back(name);
        }
    };

    const auto classes = allClasses(m);
    switch (scheme) {
        case EncodingScheme::SEs:
        case EncodingScheme::IEs: {
            const auto index = buildClassIndex(m);
            for (const auto& [pkg, c] : classes) {
                addContext(c->name);
                for (const auto& f : c->ownedFeatures) out.pairs.push_back({c->name, f.name});
                if (scheme == EncodingScheme::IEs) {
                    for (auto& name : inheritedFeatures(*c, index)) {
                        out.pairs.push_back({c->name, std::move(name)});
                    }
                }
            }
            break;
        }
        case EncodingScheme::SEc:
            for (const auto* p : allPackages(m)) addContext(p->name);
            for (const auto& [pkg, c] : classes) out.pairs.push_back({pkg, c->name});
            break;
        case EncodingScheme::IEc:
            if (!m.rootPackages.empty()) addContext(std::string(kArtificialPackage));
            for (const auto& [pkg, c] : classes) {
                out.pairs.push_back({std::string(kArtificialPackage), c->name});
            }
            break;
    }
    return out;
}

std::vector<std::string> contextItems(const EncodedMetamodel& encoded, std::string_view context) {
    if (std::find(encoded.contexts.begin(), encoded.contexts.end(), context) ==
        encoded.contexts.end()) {
        throw Error(ErrorCode::UnknownContext, "no context named " + std::string(context));
    }
    std::vector<std::string> items;
    std::unordered_set<std::string_view> seen;
    for (const auto& p : encoded.pairs) {
        if (p.context == context && seen.insert(p.item).second) items.push_back(p.item);
    }
    return items;
}

std::vector<std::string> contextItems(const Metamodel& m, EncodingScheme scheme,
                                      std::string_view context) {
    return contextItems(encode(m, scheme), context);
}

std::string dumpPairs(const EncodedMetamodel& encoded) {
    std::vector<std::string> lines;
    lines.reserve(encoded.pairs.size());
    for (const auto& p : encoded.pairs) lines.push_back(p.render());
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

}  // namespace memorec
